import math

import pytest

import symfair as sf
from symfair.sim import SimConfig, _split_blocks, emit_csv, run_simulation

M4 = 10**4


def test_random_instance_zero_max_value():
    inst = sf.random_instance(3, 4, 0, seed=1)
    assert all(v == 0 for row in inst.values for v in row)
    assert sf.is_symef1(inst, sf.Partition.of({0, 1, 2, 3}, set(), set()))


def test_random_instance_deterministic_in_seed():
    a = sf.random_instance(3, 5, M4, sf.replication_seed(42, 3, 5, M4, 7))
    b = sf.random_instance(3, 5, M4, sf.replication_seed(42, 3, 5, M4, 7))
    c = sf.random_instance(3, 5, M4, sf.replication_seed(42, 3, 5, M4, 8))
    assert a == b
    assert a != c


def test_random_instance_mean_matches_uniform_model():
    total = count = 0
    for r in range(2000):
        inst = sf.random_instance(3, 5, M4, sf.replication_seed(0, 3, 5, M4, r))
        total += sum(sum(row) for row in inst.values)
        count += 15
    mean = total / count
    assert abs(mean - M4 / 2) / (M4 / 2) < 0.02


def test_two_agent_cells_are_always_satisfiable():
    cfg = SimConfig(n_list=(2,), m_list=(4, 9), M_list=(M4,), replications=120, master_seed=5)
    for report in run_simulation(cfg, workers=1):
        assert report.pct_symef1 == 100.0
        assert report.excluded == 0


def test_reports_are_worker_count_invariant():
    cfg = SimConfig(n_list=(3,), m_list=(5,), M_list=(100,), replications=80, master_seed=9)
    serial = run_simulation(cfg, workers=1)[0]
    parallel = run_simulation(cfg, workers=2)[0]
    for field in (
        "n",
        "m",
        "M",
        "replications",
        "pct_symef1",
        "pct_case1",
        "pct_case2",
        "pct_case3",
        "pct_exact_fallback",
        "excluded",
    ):
        assert getattr(serial, field) == getattr(parallel, field)
    # wall_seconds is a timing and is intentionally left uncompared.


def test_case_percentages_sum_over_heuristic_successes():
    cfg = SimConfig(n_list=(3,), m_list=(6,), M_list=(M4,), replications=150, master_seed=11)
    report = run_simulation(cfg, workers=1)[0]
    assert math.isclose(
        report.pct_case1 + report.pct_case2 + report.pct_case3, 100.0, abs_tol=1e-9
    )
    assert 0.0 <= report.pct_exact_fallback <= 100.0


def test_incidence_rises_with_item_count():
    reps = 250
    cfg = SimConfig(n_list=(3,), m_list=(5, 6, 7, 8), M_list=(M4,), replications=reps, master_seed=13)
    reports = run_simulation(cfg, workers=2)
    for lo, hi in zip(reports, reports[1:]):
        p = lo.pct_symef1 / 100.0
        sigma = math.sqrt(max(p * (1 - p), 1e-9) / reps)
        assert hi.pct_symef1 >= lo.pct_symef1 - 2 * 100 * sigma


def test_emit_csv_formatting():
    assert emit_csv([]) == (
        "n,m,M,replications,pct_symef1,pct_case1,pct_case2,pct_case3,"
        "pct_exact_fallback,wall_seconds\n"
    )
    report = sf.SimReport(
        n=3, m=5, M=M4, replications=10, pct_symef1=78.5, pct_case1=83.25,
        pct_case2=16.75, pct_case3=0.0, pct_exact_fallback=36.0, wall_seconds=1.5,
    )
    text = emit_csv([report])
    assert text.splitlines() == [
        "n,m,M,replications,pct_symef1,pct_case1,pct_case2,pct_case3,"
        "pct_exact_fallback,wall_seconds",
        "3,5,10000,10,78.500,83.250,16.750,0.000,36.000,1.500",
    ]


def test_emit_csv_row_per_grid_cell():
    # The published grid shape: two full 7-item rows of m plus a shorter block
    # for five agents gives 20 data rows.
    reports = []
    for n, m_list, reps in ((3, (5, 6, 7, 8, 9, 10, 15), 4), (4, (5, 6, 7, 8, 9, 10, 15), 4), (5, (6, 7, 8, 9, 10, 15), 2)):
        for m in m_list:
            reports.append(
                sf.SimReport(n=n, m=m, M=M4, replications=reps, pct_symef1=0.0,
                             pct_case1=0.0, pct_case2=0.0, pct_case3=0.0,
                             pct_exact_fallback=0.0, wall_seconds=0.0)
            )
    lines = emit_csv(reports).splitlines()
    assert len(lines) == 1 + 20


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(n_list=(), m_list=(5,), M_list=(10,), replications=1, master_seed=0)
    with pytest.raises(ValueError):
        SimConfig(n_list=(2,), m_list=(5,), M_list=(10,), replications=0, master_seed=0)
    with pytest.raises(ValueError):
        SimConfig(n_list=(2,), m_list=(0,), M_list=(10,), replications=1, master_seed=0)


def test_split_blocks_cover_range():
    for total in (1, 7, 80):
        for workers in (1, 2, 5):
            blocks = _split_blocks(total, workers)
            covered = [r for lo, hi in blocks for r in range(lo, hi)]
            assert covered == list(range(total))
