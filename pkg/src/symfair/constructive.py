"""Closed-form symEF1 constructions for structured valuations.

Two constructions are exact and fast: a single agent's round-robin partition
(every agent accepts any bundle of their own round-robin split), and the
blockwise union of per-group round robins when agents split into groups with
identical rows and pairwise disjoint supports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance, Partition
from .tuples import ranking


@dataclass(frozen=True)
class GroupStructure:
    """Agents grouped by identical value rows, with each group's nonzero items."""

    groups: tuple[tuple[int, ...], ...]
    supports: tuple[frozenset[int], ...]


def agent_round_robin(inst: Instance, i: int) -> Partition:
    """Partition from agent i picking for all n bundles in turn.

    Bundle l receives agent i's l-th favourite item of every round, so bundle
    indices are ordered from best to worst in agent i's eyes.
    """
    order = ranking(inst, i)
    bundles = [set() for _ in range(inst.n)]
    for rank, item in enumerate(order):
        bundles[rank % inst.n].add(item)
    return Partition(tuple(frozenset(b) for b in bundles))


def detect_groups(inst: Instance) -> GroupStructure | None:
    """Group agents by exact row equality; None unless supports are disjoint.

    Disjointness fails exactly when two agents with different rows both place
    nonzero value on a common item, in which case the grouped construction
    does not apply.
    """
    row_to_agents: dict[tuple[int, ...], list[int]] = {}
    for i in range(inst.n):
        row_to_agents.setdefault(inst.values[i], []).append(i)
    groups = []
    supports = []
    claimed: set[int] = set()
    for row, agents in row_to_agents.items():
        support = frozenset(j for j in range(inst.m) if row[j] > 0)
        if support & claimed:
            return None
        claimed.update(support)
        groups.append(tuple(agents))
        supports.append(support)
    return GroupStructure(tuple(groups), tuple(supports))


def grouped_allocation(inst: Instance, structure: GroupStructure) -> Partition:
    """Index-wise union of each group's round robin over its own support.

    Items no group values go to bundle 1; they change no inequality, and a
    fixed rule keeps the output deterministic.
    """
    _validate_structure(inst, structure)
    n = inst.n
    bundles = [set() for _ in range(n)]
    for agents, support in zip(structure.groups, structure.supports):
        rep = inst.values[agents[0]]
        order = sorted(support, key=lambda j: (-rep[j], j))
        for rank, item in enumerate(order):
            bundles[rank % n].add(item)
    unsupported = set(range(inst.m)) - set().union(*structure.supports, set())
    bundles[0].update(unsupported)
    return Partition(tuple(frozenset(b) for b in bundles))


def _validate_structure(inst: Instance, structure: GroupStructure) -> None:
    agents = [i for group in structure.groups for i in group]
    if sorted(agents) != list(range(inst.n)):
        raise ValueError("groups do not partition the agents")
    if len(structure.supports) != len(structure.groups):
        raise ValueError("each group needs exactly one support set")
    claimed: set[int] = set()
    for group, support in zip(structure.groups, structure.supports):
        rows = {inst.values[i] for i in group}
        if len(rows) != 1:
            raise ValueError("agents within a group must have identical rows")
        row = next(iter(rows))
        if support != frozenset(j for j in range(inst.m) if row[j] > 0):
            raise ValueError("support does not match the group's nonzero items")
        if support & claimed:
            raise ValueError("supports of distinct groups overlap")
        claimed.update(support)
