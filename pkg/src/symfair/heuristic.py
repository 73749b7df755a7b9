"""Greedy construction of symEF1 partitions by guarded local moves.

Items are offered one at a time to a partial partition that is kept symEF1
over the allocated items after every accepted move. For each item three
escalating repairs are tried, committing the first that keeps the invariant:

  case 1  insert the item into some bundle;
  case 2  relocate one allocated item to another bundle, then insert;
  case 3  swap two allocated items across bundles, then insert.

A pass over the pending items repeats while it makes progress, so an item
rejected earlier is retried after the partition has changed. The procedure is
incomplete: some reachable states admit no single-swap repair even though a
symEF1 completion exists, and then the result reports failure rather than an
answer.

Bundles, donor/recipient pairs, and swap candidates are scanned in ascending
index order, so runs are reproducible for a fixed item order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Instance, Partition


@dataclass
class HeuristicStats:
    """How many items each repair placed, and whether any item was left over."""

    placed_case1: int = 0
    placed_case2: int = 0
    placed_case3: int = 0
    failed: bool = False

    def placed_total(self) -> int:
        return self.placed_case1 + self.placed_case2 + self.placed_case3


@dataclass(frozen=True)
class HeuristicResult:
    partition: Partition | None
    stats: HeuristicStats

    @property
    def found(self) -> bool:
        return self.partition is not None


class _State:
    """Partial partition with per-agent bundle sums and maxima kept incrementally.

    The symEF1 test over allocated items then costs O(n^2); add is O(n) and
    remove is O(n * bundle size) because a removed maximum forces a rescan.
    """

    __slots__ = ("values", "n", "bundles", "sums", "maxes")

    def __init__(self, inst: Instance, bundles: Sequence[Iterable[int]]):
        self.values = inst.values
        self.n = inst.n
        self.bundles = [set(b) for b in bundles]
        if len(self.bundles) != inst.n:
            raise ValueError("need exactly one bundle per agent")
        self.sums = [[0] * inst.n for _ in range(inst.n)]
        self.maxes = [[0] * inst.n for _ in range(inst.n)]
        for k, bundle in enumerate(self.bundles):
            for i in range(inst.n):
                row = self.values[i]
                self.sums[i][k] = sum(row[j] for j in bundle)
                self.maxes[i][k] = max((row[j] for j in bundle), default=0)

    def add(self, k: int, j: int) -> None:
        self.bundles[k].add(j)
        for i in range(self.n):
            v = self.values[i][j]
            self.sums[i][k] += v
            if v > self.maxes[i][k]:
                self.maxes[i][k] = v

    def remove(self, k: int, j: int) -> None:
        self.bundles[k].discard(j)
        for i in range(self.n):
            row = self.values[i]
            v = row[j]
            self.sums[i][k] -= v
            if v == self.maxes[i][k]:
                self.maxes[i][k] = max((row[u] for u in self.bundles[k]), default=0)

    def symef1_now(self) -> bool:
        for i in range(self.n):
            sums = self.sums[i]
            maxes = self.maxes[i]
            worst = max(sums[l] - maxes[l] for l in range(self.n))
            if min(sums) < worst:
                return False
        return True

    def snapshot(self) -> tuple:
        return (
            [set(b) for b in self.bundles],
            [list(r) for r in self.sums],
            [list(r) for r in self.maxes],
        )

    def matches(self, snap: tuple) -> bool:
        return self.bundles == snap[0] and self.sums == snap[1] and self.maxes == snap[2]

    def to_partition(self) -> Partition:
        return Partition(tuple(frozenset(b) for b in self.bundles))


def _try_case1(state: _State, j: int) -> bool:
    for k in range(state.n):
        state.add(k, j)
        if state.symef1_now():
            return True
        state.remove(k, j)
    return False


def _try_case2(state: _State, j: int) -> bool:
    for k in range(state.n):
        for l in range(state.n):
            if l == k:
                continue
            for jk in sorted(state.bundles[k]):
                state.remove(k, jk)
                state.add(k, j)
                state.add(l, jk)
                if state.symef1_now():
                    return True
                state.remove(l, jk)
                state.remove(k, j)
                state.add(k, jk)
    return False


def _try_case3(state: _State, j: int) -> bool:
    for k in range(state.n):
        for l in range(state.n):
            if l == k:
                continue
            for jk in sorted(state.bundles[k]):
                for jl in sorted(state.bundles[l]):
                    state.remove(k, jk)
                    state.remove(l, jl)
                    state.add(k, j)
                    state.add(k, jl)
                    state.add(l, jk)
                    if state.symef1_now():
                        return True
                    state.remove(l, jk)
                    state.remove(k, jl)
                    state.remove(k, j)
                    state.add(l, jl)
                    state.add(k, jk)
    return False


def extend_allocation(
    inst: Instance,
    bundles: Sequence[Iterable[int]],
    pending: Sequence[int],
) -> HeuristicResult:
    """Run the repair loop from a given partial state.

    The starting bundles must already be symEF1 over their items; ``pending``
    lists the unallocated items in the order they will be offered. Stats count
    only items placed here.
    """
    state = _State(inst, bundles)
    allocated = set().union(*state.bundles, set())
    pending = list(pending)
    if allocated | set(pending) != set(range(inst.m)) or allocated & set(pending):
        raise ValueError("bundles plus pending must partition the item set")
    if not state.symef1_now():
        raise ValueError("starting bundles are not symEF1 over their items")

    stats = HeuristicStats()
    progress = True
    while pending and progress:
        progress = False
        for j in list(pending):
            if _try_case1(state, j):
                stats.placed_case1 += 1
            elif _try_case2(state, j):
                stats.placed_case2 += 1
            elif _try_case3(state, j):
                stats.placed_case3 += 1
            else:
                continue
            pending.remove(j)
            progress = True

    if pending:
        stats.failed = True
        return HeuristicResult(None, stats)
    return HeuristicResult(state.to_partition(), stats)


def greedy_symef1(inst: Instance, item_order: Sequence[int] | None = None) -> HeuristicResult:
    """Build a symEF1 partition greedily from scratch, or report failure."""
    if item_order is None:
        item_order = default_item_order(inst)
    if sorted(item_order) != list(range(inst.m)):
        raise ValueError("item_order must be a permutation of the items")
    empty = [frozenset() for _ in range(inst.n)]
    return extend_allocation(inst, empty, list(item_order))


def default_item_order(inst: Instance) -> tuple[int, ...]:
    return tuple(range(inst.m))


def order_items(inst: Instance, mode: str = "index", seed: int | None = None) -> tuple[int, ...]:
    """Item orders exposed on the command line; success can depend on order."""
    if mode == "index":
        return default_item_order(inst)
    if mode == "desc-total-value":
        totals = [sum(inst.values[i][j] for i in range(inst.n)) for j in range(inst.m)]
        return tuple(sorted(range(inst.m), key=lambda j: (-totals[j], j)))
    if mode == "random":
        order = list(range(inst.m))
        random.Random(seed).shuffle(order)
        return tuple(order)
    raise ValueError(f"unknown item order {mode!r}")
