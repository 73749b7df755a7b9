"""Monte-Carlo study of how often random instances admit symEF1 partitions.

For each (n, m, M) cell the runner draws valuation matrices with i.i.d.
uniform integer entries in {0..M}, tries the greedy builder first and falls
back to the complete search only when the greedy pass fails, mirroring how the
expensive decision procedure is best used in practice. Each replication's
generator is seeded by hashing (master_seed, n, m, M, r), so results do not
depend on worker count or execution order.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .core import Instance
from .exact import ExactStatus, SearchLimits, exact_symef1
from .heuristic import greedy_symef1


@dataclass(frozen=True)
class SimConfig:
    n_list: tuple[int, ...]
    m_list: tuple[int, ...]
    M_list: tuple[int, ...]
    replications: int
    master_seed: int
    limits: SearchLimits = field(default_factory=SearchLimits)

    def __post_init__(self) -> None:
        if not (self.n_list and self.m_list and self.M_list):
            raise ValueError("n, m, and M lists must be nonempty")
        if any(v < 1 for v in self.n_list + self.m_list) or any(v < 0 for v in self.M_list):
            raise ValueError("n and m must be positive, M nonnegative")
        if self.replications < 1:
            raise ValueError("need at least one replication")


@dataclass
class SimReport:
    """One CSV row; ``excluded`` counts budget-exceeded replications, which are
    logged separately and left out of every percentage."""

    n: int
    m: int
    M: int
    replications: int
    pct_symef1: float
    pct_case1: float
    pct_case2: float
    pct_case3: float
    pct_exact_fallback: float
    wall_seconds: float
    excluded: int = 0


def replication_seed(master_seed: int, n: int, m: int, M: int, r: int) -> list[int]:
    """Entropy pool mixing the cell coordinates into the master seed."""
    return [master_seed, n, m, M, r]


def random_instance(n: int, m: int, M: int, seed) -> Instance:
    """Uniform i.i.d. integer matrix in {0..M}; deterministic in the seed."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    rng = np.random.default_rng(seed)
    matrix = rng.integers(0, M + 1, size=(n, m))
    return Instance.from_rows(matrix.tolist())


def _run_block(args) -> tuple[int, int, int, int, int, int, int]:
    """Replications [r_lo, r_hi) of one cell; returns summed counters only."""
    n, m, M, master_seed, r_lo, r_hi, limits = args
    found = fallback = excluded = successes = 0
    case1 = case2 = case3 = 0
    for r in range(r_lo, r_hi):
        inst = random_instance(n, m, M, replication_seed(master_seed, n, m, M, r))
        result = greedy_symef1(inst)
        if result.found:
            found += 1
            successes += 1
            case1 += result.stats.placed_case1
            case2 += result.stats.placed_case2
            case3 += result.stats.placed_case3
        else:
            fallback += 1
            outcome = exact_symef1(inst, limits)
            if outcome.status is ExactStatus.FOUND:
                found += 1
            elif outcome.status is ExactStatus.BUDGET_EXCEEDED:
                excluded += 1
    return found, fallback, excluded, successes, case1, case2, case3


def run_simulation(
    cfg: SimConfig,
    workers: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[SimReport]:
    """One report per (n, m, M) cell, in cross-product order.

    Replications run in parallel blocks; the counters are integer sums, so the
    aggregate is identical for any worker count or block split.
    """
    if workers is None:
        import os

        workers = os.cpu_count() or 1
    reports = []
    for n, m, M in product(cfg.n_list, cfg.m_list, cfg.M_list):
        t0 = time.perf_counter()
        blocks = _split_blocks(cfg.replications, workers)
        args = [(n, m, M, cfg.master_seed, lo, hi, cfg.limits) for lo, hi in blocks]
        if workers > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_block, args))
        else:
            parts = [_run_block(a) for a in args]
        found, fallback, excluded, successes, case1, case2, case3 = (
            tuple(sum(col) for col in zip(*parts))
        )
        wall = time.perf_counter() - t0
        completed = cfg.replications - excluded
        placed = m * successes
        report = SimReport(
            n=n,
            m=m,
            M=M,
            replications=cfg.replications,
            pct_symef1=_pct(found, completed),
            pct_case1=_pct(case1, placed),
            pct_case2=_pct(case2, placed),
            pct_case3=_pct(case3, placed),
            pct_exact_fallback=_pct(fallback, completed),
            wall_seconds=wall,
            excluded=excluded,
        )
        reports.append(report)
        if progress is not None:
            progress(
                f"n={n} m={m} M={M}: symEF1 {report.pct_symef1:.3f}% "
                f"fallback {report.pct_exact_fallback:.3f}% "
                f"excluded {excluded} ({wall:.1f}s)"
            )
        if excluded:
            print(
                f"warning: n={n} m={m} M={M}: {excluded} replications exceeded "
                "the search budget and were excluded",
                file=sys.stderr,
            )
    return reports


def emit_csv(reports: Sequence[SimReport]) -> str:
    header = (
        "n,m,M,replications,pct_symef1,pct_case1,pct_case2,pct_case3,"
        "pct_exact_fallback,wall_seconds"
    )
    lines = [header]
    for r in reports:
        lines.append(
            f"{r.n},{r.m},{r.M},{r.replications},{r.pct_symef1:.3f},"
            f"{r.pct_case1:.3f},{r.pct_case2:.3f},{r.pct_case3:.3f},"
            f"{r.pct_exact_fallback:.3f},{r.wall_seconds:.3f}"
        )
    return "\n".join(lines) + "\n"


def _pct(count: int, denom: int) -> float:
    return 100.0 * count / denom if denom else 0.0


def _split_blocks(total: int, workers: int) -> list[tuple[int, int]]:
    # A few blocks per worker keeps the pool busy when block runtimes differ.
    target = max(1, min(total, workers * 4))
    size = (total + target - 1) // target
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]
