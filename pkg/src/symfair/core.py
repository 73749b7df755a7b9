"""Exact integer model of fair-division instances and the fairness predicates.

An instance is an n x m matrix of nonnegative integer valuations. A partition
splits the items into n bundles without naming owners; the symmetric fairness
checks ask whether every agent would accept every bundle, so no assignment
enters the definitions. All arithmetic is exact (Python integers), which keeps
every verdict free of rounding ties.

Items and agents are 0-based in code. The text file formats are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed instance or partition text."""


@dataclass(frozen=True)
class Instance:
    """n agents, m items, and an n x m matrix of nonnegative integer values."""

    n: int
    m: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("an instance needs at least one agent")
        if self.m < 0:
            raise ValueError("item count cannot be negative")
        if len(self.values) != self.n:
            raise ValueError(f"expected {self.n} value rows, got {len(self.values)}")
        for row in self.values:
            if len(row) != self.m:
                raise ValueError(f"expected {self.m} columns, got {len(row)}")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValueError(f"values must be nonnegative integers, got {v!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Instance":
        values = tuple(tuple(row) for row in rows)
        n = len(values)
        m = len(values[0]) if values else 0
        return cls(n, m, values)

    def agent_total(self, i: int) -> int:
        return sum(self.values[i])


@dataclass(frozen=True)
class Partition:
    """n disjoint bundles of item indices. Empty bundles are allowed.

    Bundle order is significant for equality; use ``exact.canonical_partition``
    when partitions should compare as unordered families.
    """

    bundles: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        total = 0
        for b in self.bundles:
            for j in b:
                if isinstance(j, bool) or not isinstance(j, int) or j < 0:
                    raise ValueError(f"item indices must be nonnegative integers, got {j!r}")
            total += len(b)
            seen.update(b)
        if len(seen) != total:
            raise ValueError("bundles are not pairwise disjoint")

    @classmethod
    def of(cls, *bundles: Iterable[int]) -> "Partition":
        return cls(tuple(frozenset(b) for b in bundles))

    @property
    def items(self) -> frozenset[int]:
        return frozenset().union(*self.bundles) if self.bundles else frozenset()

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bundles)


@dataclass(frozen=True)
class Assignment:
    """A partition plus an owner for each bundle: ``owner[k]`` is an agent index."""

    partition: Partition
    owner: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.partition.bundles)
        if sorted(self.owner) != list(range(n)):
            raise ValueError("owner must be a permutation of the bundle indices")


@dataclass(frozen=True)
class BundleStats:
    """Derived per-bundle view for one agent: total, best item, worst item."""

    value: int
    max_item: int
    min_item: int


def bundle_value(inst: Instance, i: int, items: Iterable[int]) -> int:
    """Agent i's additive value for a set of items (0 for the empty set)."""
    row = inst.values[_check_agent(inst, i)]
    total = 0
    for j in items:
        _check_item(inst, j)
        total += row[j]
    return total


def max_item_value(inst: Instance, i: int, items: Iterable[int]) -> int:
    """Largest single-item value in the set for agent i; 0 for the empty set."""
    row = inst.values[_check_agent(inst, i)]
    return max((row[_check_item(inst, j)] for j in items), default=0)


def min_item_value(inst: Instance, i: int, items: Iterable[int]) -> int:
    """Smallest single-item value in the set for agent i; 0 for the empty set."""
    row = inst.values[_check_agent(inst, i)]
    return min((row[_check_item(inst, j)] for j in items), default=0)


def bundle_stats(inst: Instance, i: int, items: Iterable[int]) -> BundleStats:
    items = list(items)
    return BundleStats(
        value=bundle_value(inst, i, items),
        max_item=max_item_value(inst, i, items),
        min_item=min_item_value(inst, i, items),
    )


def is_ef1_satisfied(inst: Instance, i: int, k: int, partition: Partition) -> bool:
    """Would agent i accept bundle k? True iff for every other bundle, i's envy
    disappears after removing i's best item from that bundle."""
    _check_agent(inst, i)
    validate_partition(inst, partition)
    if not 0 <= k < len(partition.bundles):
        raise IndexError(f"bundle index {k} out of range")
    vals = [bundle_value(inst, i, b) for b in partition.bundles]
    maxes = [max_item_value(inst, i, b) for b in partition.bundles]
    return all(vals[k] >= vals[l] - maxes[l] for l in range(len(vals)))


def first_symef1_violation(
    inst: Instance, partition: Partition
) -> tuple[int, int, int, int, int] | None:
    """First (i, k, l, lhs, rhs) with v_i(A_k) < v_i(A_l) - max item of A_l, or None.

    Scan order is ascending i, then k, then l, so the witness is deterministic.
    """
    validate_partition(inst, partition)
    n = len(partition.bundles)
    for i in range(inst.n):
        vals = [bundle_value(inst, i, b) for b in partition.bundles]
        maxes = [max_item_value(inst, i, b) for b in partition.bundles]
        for k in range(n):
            for l in range(n):
                rhs = vals[l] - maxes[l]
                if vals[k] < rhs:
                    return (i, k, l, vals[k], rhs)
    return None


def first_symefx_violation(
    inst: Instance, partition: Partition
) -> tuple[int, int, int, int, int] | None:
    """Like :func:`first_symef1_violation` but removing the *worst* item instead."""
    validate_partition(inst, partition)
    n = len(partition.bundles)
    for i in range(inst.n):
        vals = [bundle_value(inst, i, b) for b in partition.bundles]
        mins = [min_item_value(inst, i, b) for b in partition.bundles]
        for k in range(n):
            for l in range(n):
                rhs = vals[l] - mins[l]
                if vals[k] < rhs:
                    return (i, k, l, vals[k], rhs)
    return None


def first_ef1_violation(
    inst: Instance, partition: Partition
) -> tuple[int, int, int, int, int] | None:
    """EF1 check for the diagonal assignment (agent k receives bundle k)."""
    validate_partition(inst, partition)
    for i in range(inst.n):
        vals = [bundle_value(inst, i, b) for b in partition.bundles]
        maxes = [max_item_value(inst, i, b) for b in partition.bundles]
        for l in range(len(vals)):
            rhs = vals[l] - maxes[l]
            if vals[i] < rhs:
                return (i, i, l, vals[i], rhs)
    return None


def is_symef1(inst: Instance, partition: Partition) -> bool:
    """True iff every agent is EF1-satisfied with every bundle."""
    return first_symef1_violation(inst, partition) is None


def is_symefx(inst: Instance, partition: Partition) -> bool:
    """True iff every agent accepts every bundle even after removing only the
    envied bundle's least-valued item."""
    return first_symefx_violation(inst, partition) is None


def is_balanced(partition: Partition) -> bool:
    """True iff bundle cardinalities differ by at most one."""
    sizes = partition.sizes()
    return not sizes or max(sizes) - min(sizes) <= 1


def nash_welfare(inst: Instance, assignment: Assignment) -> int:
    """Product over bundles of the owning agent's value for that bundle."""
    validate_partition(inst, assignment.partition)
    return math.prod(
        bundle_value(inst, assignment.owner[k], b)
        for k, b in enumerate(assignment.partition.bundles)
    )


def items_distinct(inst: Instance) -> bool:
    """True iff every item is valued by someone and no two items have identical
    value columns."""
    cols = [tuple(inst.values[i][j] for i in range(inst.n)) for j in range(inst.m)]
    if any(not any(c) for c in cols):
        return False
    return len(set(cols)) == inst.m


def validate_partition(inst: Instance, partition: Partition) -> None:
    """Raise ValueError unless the partition has n bundles covering {0..m-1}."""
    if len(partition.bundles) != inst.n:
        raise ValueError(
            f"partition has {len(partition.bundles)} bundles, instance has {inst.n} agents"
        )
    if partition.items != frozenset(range(inst.m)):
        raise ValueError("partition does not cover the instance's items exactly")


def _check_agent(inst: Instance, i: int) -> int:
    if not 0 <= i < inst.n:
        raise IndexError(f"agent index {i} out of range")
    return i


def _check_item(inst: Instance, j: int) -> int:
    if not 0 <= j < inst.m:
        raise IndexError(f"item index {j} out of range")
    return j


# ---------------------------------------------------------------------------
# Text formats.
#
# Instance file: first non-comment line is "n m", followed by n rows of m
# nonnegative integers. Lines starting with '#' and blank lines are ignored.
#
# Partition file: exactly n lines; line k holds the 1-based item indices of
# bundle k, and an empty line is an empty bundle.
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> Instance:
    header: tuple[int, int] | None = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: expected header 'n m'")
            n = _parse_int(tokens[0], lineno)
            m = _parse_int(tokens[1], lineno)
            if n < 1:
                raise ParseError(f"line {lineno}: agent count must be at least 1")
            if m < 0:
                raise ParseError(f"line {lineno}: item count cannot be negative")
            header = (n, m)
            continue
        n, m = header
        if len(rows) >= n:
            raise ParseError(f"line {lineno}: more than {n} value rows")
        if len(tokens) != m:
            raise ParseError(f"line {lineno}: expected {m} values, got {len(tokens)}")
        row = []
        for tok in tokens:
            v = _parse_int(tok, lineno)
            if v < 0:
                raise ParseError(f"line {lineno}: negative value {v}")
            row.append(v)
        rows.append(tuple(row))
    if header is None:
        raise ParseError("empty instance file")
    n, m = header
    if m == 0 and not rows:
        rows = [()] * n  # zero-column rows are blank lines, which get skipped
    if len(rows) != n:
        raise ParseError(f"expected {n} value rows, found {len(rows)}")
    return Instance(n, m, tuple(rows))


def parse_partition(text: str, n: int | None = None, m: int | None = None) -> Partition:
    """Parse a partition file; validate bundle count and item range when given."""
    lines = text.splitlines()
    if n is not None and len(lines) != n:
        raise ParseError(f"expected {n} bundle lines, found {len(lines)}")
    bundles = []
    seen: set[int] = set()
    for lineno, line in enumerate(lines, start=1):
        bundle = set()
        for tok in line.split():
            j = _parse_int(tok, lineno)
            if j < 1:
                raise ParseError(f"line {lineno}: item indices are 1-based, got {j}")
            if m is not None and j > m:
                raise ParseError(f"line {lineno}: item index {j} exceeds item count {m}")
            if j - 1 in seen:
                raise ParseError(f"line {lineno}: item {j} appears twice")
            seen.add(j - 1)
            bundle.add(j - 1)
        bundles.append(frozenset(bundle))
    if m is not None and seen != set(range(m)):
        missing = sorted(set(range(m)) - seen)
        raise ParseError(f"partition does not cover items: missing {[j + 1 for j in missing]}")
    return Partition(tuple(bundles))


def format_partition(partition: Partition) -> str:
    """Render a partition in the n-line, 1-based file format."""
    lines = [" ".join(str(j + 1) for j in sorted(b)) for b in partition.bundles]
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: not an integer: {token!r}") from None
