"""Complete decision procedures: existence search, enumeration, MNW, LP export.

The existence search assigns items to bundles depth first, visiting each
unordered partition at most once (an item may only open the first empty
bundle). It is exact: with the node and time budgets left at their defaults it
either returns a witness partition or proves that none exists.

Soundness of the prune at a node with remaining items R_i (agent i's total
value of unassigned items) and best remaining item r_i: any completion has

    final v_i(A_k)            <= v_i(A_k) + R_i     for the tracked bundle k,
    final min_k v_i(A_k)      <= floor(total_i / n),
    final v_i(A_l) - max item >= v_i(A_l) - max(current max of A_l, r_i).

If the smallest upper bound on the left falls below the largest lower bound on
the right for some agent, no completion can be symEF1 and the subtree is cut.
Disabling the prune never changes a verdict, only node counts.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum

from .core import Assignment, Instance, Partition, is_symef1


class BudgetExceededError(RuntimeError):
    """Search stopped by the node or time budget before finishing."""


@dataclass(frozen=True)
class SearchLimits:
    node_budget: int = 10_000_000
    time_budget: float = 10.0

    def __post_init__(self) -> None:
        if self.node_budget < 1 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


class ExactStatus(Enum):
    FOUND = "found"
    PROVED_INFEASIBLE = "proved_infeasible"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class ExactOutcome:
    status: ExactStatus
    partition: Partition | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status is ExactStatus.FOUND


# Refuse blind full enumerations beyond this many raw item-to-bundle maps.
ENUMERATION_GUARD = 10**8


def _search_order(inst: Instance) -> list[int]:
    # High-impact items first: descending total value, ties by index.
    totals = [sum(inst.values[i][j] for i in range(inst.n)) for j in range(inst.m)]
    return sorted(range(inst.m), key=lambda j: (-totals[j], j))


class _Searcher:
    """Shared depth-first engine for the existence search and the enumerator."""

    def __init__(self, inst: Instance, limits: SearchLimits, prune: bool):
        self.inst = inst
        self.n = inst.n
        self.m = inst.m
        self.limits = limits
        self.prune = prune
        self.order = _search_order(inst)
        # cols[d][i]: agent i's value for the item assigned at depth d.
        self.cols = [[inst.values[i][j] for i in range(inst.n)] for j in self.order]
        # suffix_sum[i][d] / suffix_max[i][d]: over items at depths >= d.
        self.suffix_sum = [[0] * (self.m + 1) for _ in range(self.n)]
        self.suffix_max = [[0] * (self.m + 1) for _ in range(self.n)]
        for i in range(self.n):
            for d in range(self.m - 1, -1, -1):
                v = self.cols[d][i]
                self.suffix_sum[i][d] = self.suffix_sum[i][d + 1] + v
                self.suffix_max[i][d] = max(self.suffix_max[i][d + 1], v)
        self.avg_cap = [inst.agent_total(i) // self.n for i in range(self.n)]
        self.sums = [[0] * self.n for _ in range(self.n)]
        self.maxes = [[0] * self.n for _ in range(self.n)]
        self.bundles: list[list[int]] = [[] for _ in range(self.n)]
        self.nodes = 0
        self.deadline = time.monotonic() + limits.time_budget

    def feasible(self, depth: int) -> bool:
        # Exact symEF1 test when depth == m (both suffix terms are then 0).
        for i in range(self.n):
            sums = self.sums[i]
            maxes = self.maxes[i]
            remaining = self.suffix_sum[i][depth]
            rmax = self.suffix_max[i][depth]
            reachable_min = min(sums) + remaining
            if reachable_min > self.avg_cap[i]:
                reachable_min = self.avg_cap[i]
            worst = None
            for l in range(self.n):
                mx = maxes[l]
                if rmax > mx:
                    mx = rmax
                need = sums[l] - mx
                if worst is None or need > worst:
                    worst = need
            if reachable_min < worst:
                return False
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limits.node_budget:
            raise BudgetExceededError(f"node budget {self.limits.node_budget} exhausted")
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError(f"time budget {self.limits.time_budget}s exhausted")

    def current_partition(self) -> Partition:
        return Partition(
            tuple(frozenset(self.order[d] for d in bundle) for bundle in self.bundles)
        )

    def dfs_exists(self, depth: int, used: int) -> bool:
        if depth == self.m:
            return True
        col = self.cols[depth]
        limit = used + 1 if used < self.n else self.n
        # Emptiest bundle first: the first descent then fills round-robin
        # fashion, which lands on a witness quickly when one exists.
        for k in sorted(range(limit), key=lambda b: (len(self.bundles[b]), b)):
            self._tick()
            if self._place_and_recurse(depth, used, k, col, self.dfs_exists):
                return True
        return False

    def dfs_enumerate(self, depth: int, used: int, out: set[Partition]) -> bool:
        if depth == self.m:
            out.add(canonical_partition(self.current_partition()))
            return False
        col = self.cols[depth]
        limit = used + 1 if used < self.n else self.n
        for k in range(limit):
            self._tick()
            self._place_and_recurse(
                depth, used, k, col, lambda d, u: self.dfs_enumerate(d, u, out)
            )
        return False

    def _place_and_recurse(self, depth, used, k, col, recurse) -> bool:
        sums = self.sums
        maxes = self.maxes
        prev_max = [0] * self.n
        for i in range(self.n):
            v = col[i]
            sums[i][k] += v
            prev_max[i] = maxes[i][k]
            if v > maxes[i][k]:
                maxes[i][k] = v
        self.bundles[k].append(depth)
        ok = self.feasible(depth + 1) if (self.prune or depth + 1 == self.m) else True
        hit = ok and recurse(depth + 1, used + 1 if k == used else used)
        if not hit:
            self.bundles[k].pop()
            for i in range(self.n):
                sums[i][k] -= col[i]
                maxes[i][k] = prev_max[i]
        return hit


def exact_symef1(
    inst: Instance, limits: SearchLimits | None = None, prune: bool = True
) -> ExactOutcome:
    """Decide symEF1 existence; complete within the given budgets."""
    searcher = _Searcher(inst, limits or SearchLimits(), prune)
    try:
        if searcher.dfs_exists(0, 0):
            partition = searcher.current_partition()
            assert is_symef1(inst, partition)
            return ExactOutcome(ExactStatus.FOUND, partition, searcher.nodes)
        return ExactOutcome(ExactStatus.PROVED_INFEASIBLE, None, searcher.nodes)
    except BudgetExceededError:
        return ExactOutcome(ExactStatus.BUDGET_EXCEEDED, None, searcher.nodes)


def enumerate_symef1(
    inst: Instance,
    limits: SearchLimits | None = None,
    prune: bool = True,
    force: bool = False,
) -> set[Partition]:
    """All symEF1 partitions as canonical forms; exhaustive or an exception.

    Refuses instances with n^m beyond the guard unless ``force`` is set;
    raises :class:`BudgetExceededError` when a budget runs out mid-search.
    """
    if not force and inst.n**inst.m > ENUMERATION_GUARD:
        raise ValueError(
            f"n^m = {inst.n}^{inst.m} exceeds the enumeration guard; pass force=True"
        )
    searcher = _Searcher(inst, limits or SearchLimits(), prune)
    out: set[Partition] = set()
    searcher.dfs_enumerate(0, 0, out)
    return out


def canonical_partition(partition: Partition) -> Partition:
    """Order-free form: bundles sorted by smallest element, empty bundles last."""
    nonempty = sorted((b for b in partition.bundles if b), key=min)
    empties = len(partition.bundles) - len(nonempty)
    return Partition(tuple(nonempty) + (frozenset(),) * empties)


def naive_enumerate_symef1(inst: Instance) -> set[Partition]:
    """Independent oracle: walk every item-to-bundle map, no pruning or symmetry.

    Kept deliberately separate from the search engine so the two can check
    each other; only the canonical form helper is shared.
    """
    n, m = inst.n, inst.m
    values = inst.values
    out: set[Partition] = set()
    assignment = [0] * m
    sums = [[0] * n for _ in range(n)]
    maxes = [[0] * n for _ in range(n)]

    def leaf_ok() -> bool:
        for i in range(n):
            row = sums[i]
            mrow = maxes[i]
            worst = max(row[l] - mrow[l] for l in range(n))
            if min(row) < worst:
                return False
        return True

    def walk(j: int) -> None:
        if j == m:
            if leaf_ok():
                bundles = [set() for _ in range(n)]
                for item, k in enumerate(assignment):
                    bundles[k].add(item)
                out.add(canonical_partition(Partition(tuple(frozenset(b) for b in bundles))))
            return
        for k in range(n):
            assignment[j] = k
            prev = [maxes[i][k] for i in range(n)]
            for i in range(n):
                v = values[i][j]
                sums[i][k] += v
                if v > maxes[i][k]:
                    maxes[i][k] = v
            walk(j + 1)
            for i in range(n):
                sums[i][k] -= values[i][j]
                maxes[i][k] = prev[i]

    walk(0)
    return out


def max_nash_welfare(
    inst: Instance, limits: SearchLimits | None = None, force: bool = False
) -> Assignment:
    """Exhaustive maximum Nash welfare over item-to-agent assignments.

    Primary objective is the number of agents with positive value, secondary
    the product over those agents, so giving everything to one agent never
    beats serving two. Ties go to the lexicographically smallest assignment
    vector (agent index per item, items in natural order).
    """
    n, m = inst.n, inst.m
    if not force and n**m > ENUMERATION_GUARD:
        raise ValueError(
            f"n^m = {inst.n}^{inst.m} exceeds the enumeration guard; pass force=True"
        )
    limits = limits or SearchLimits()
    deadline = time.monotonic() + limits.time_budget
    values = inst.values
    totals = [0] * n
    assignment = [0] * m
    best_key: tuple[int, int] | None = None
    best_assignment: list[int] | None = None
    leaves = 0

    def walk(j: int) -> None:
        nonlocal best_key, best_assignment, leaves
        if j == m:
            leaves += 1
            if leaves % 4096 == 0:
                if leaves > limits.node_budget:
                    raise BudgetExceededError("node budget exhausted")
                if time.monotonic() > deadline:
                    raise BudgetExceededError("time budget exhausted")
            served = sum(1 for t in totals if t > 0)
            product = math.prod(t for t in totals if t > 0)
            key = (served, product)
            if best_key is None or key > best_key:
                best_key = key
                best_assignment = assignment.copy()
            return
        for a in range(n):
            assignment[j] = a
            totals[a] += values[a][j]
            walk(j + 1)
            totals[a] -= values[a][j]
        assignment[j] = 0

    walk(0)
    assert best_assignment is not None
    bundles = [set() for _ in range(n)]
    for item, agent in enumerate(best_assignment):
        bundles[agent].add(item)
    partition = Partition(tuple(frozenset(b) for b in bundles))
    return Assignment(partition, tuple(range(n)))


def export_ip(inst: Instance) -> str:
    """CPLEX-LP text of the symEF1 feasibility program.

    Binary x_<k>_<j> puts item j in bundle k; binary y_<i>_<j>_<l> lets agent i
    discount item j when eyeing bundle l. Rows: each item in exactly one
    bundle; at most one discounted item per (agent, bundle); discounts only on
    present items; and for every agent and ordered bundle pair k != l, bundle k
    must be worth at least bundle l minus the discounted item. Indices are
    1-based. The objective is the constant 0: any feasible point is an answer.
    """
    n, m = inst.n, inst.m
    x = lambda k, j: f"x_{k}_{j}"
    y = lambda i, j, l: f"y_{i}_{j}_{l}"
    lines = ["Minimize"]
    lines.append(f" obj: 0 {x(1, 1)}" if m > 0 else " obj:")
    lines.append("Subject To")
    for j in range(1, m + 1):
        terms = " + ".join(x(k, j) for k in range(1, n + 1))
        lines.append(f" assign_{j}: {terms} = 1")
    for i in range(1, n + 1):
        for l in range(1, n + 1):
            if m == 0:
                continue
            terms = " + ".join(y(i, j, l) for j in range(1, m + 1))
            lines.append(f" cap_{i}_{l}: {terms} <= 1")
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            for l in range(1, n + 1):
                lines.append(f" link_{i}_{j}_{l}: {y(i, j, l)} - {x(l, j)} <= 0")
    for i in range(1, n + 1):
        row = inst.values[i - 1]
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                if k == l:
                    continue
                terms = []
                for j in range(1, m + 1):
                    v = row[j - 1]
                    if v == 0:
                        continue
                    terms.append(f"+ {v} {x(k, j)}")
                    terms.append(f"- {v} {x(l, j)}")
                    terms.append(f"+ {v} {y(i, j, l)}")
                if not terms:
                    terms = [f"+ 0 {x(k, 1)}"] if m > 0 else []
                if not terms:
                    continue
                body = " ".join(terms).lstrip("+ ")
                lines.append(f" ef1_{i}_{k}_{l}: {body} >= 0")
    names = [x(k, j) for k in range(1, n + 1) for j in range(1, m + 1)]
    names += [
        y(i, j, l)
        for i in range(1, n + 1)
        for j in range(1, m + 1)
        for l in range(1, n + 1)
    ]
    if names:
        lines.append("Binary")
        lines.extend(f" {name}" for name in names)
    lines.append("End")
    return "\n".join(lines) + "\n"
