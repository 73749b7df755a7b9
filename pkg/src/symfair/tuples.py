"""Rankings, same-round item blocks, and the conflict graph they induce.

Each agent's items are sorted by descending value and cut into consecutive
blocks of size n (the last block may be shorter). A partition *separates*
these blocks when no bundle holds two items from the same block of any agent.
Separation is sufficient for symEF1, so an exact n-coloring of the conflict
graph (one vertex per item, one edge per same-block pair) certifies existence
and directly yields a witness partition. The converse does not hold: some
instances are symEF1-solvable with a graph that is not n-colorable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Instance, Partition

Ranking = tuple[int, ...]
IndexedTuples = tuple[tuple[frozenset[int], ...], ...]


@dataclass(frozen=True)
class ItemGraph:
    """Simple undirected graph on the m items; edges are same-block conflicts."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not 0 <= u < v < self.num_vertices:
                raise ValueError(f"bad edge ({u}, {v}) for {self.num_vertices} vertices")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for neighbors in adj:
            neighbors.sort()
        return adj


def ranking(inst: Instance, i: int) -> Ranking:
    """Agent i's items sorted by descending value, ties by ascending index."""
    row = inst.values[i]
    return tuple(sorted(range(inst.m), key=lambda j: (-row[j], j)))


def indexed_tuples(inst: Instance) -> IndexedTuples:
    """Per agent, the ceil(m/n) consecutive blocks of the agent's ranking.

    Block t holds the items the agent would grab in round t if it picked for
    all n bundles itself; every block except possibly the last has n items.
    """
    n = inst.n
    per_agent = []
    for i in range(inst.n):
        order = ranking(inst, i)
        blocks = tuple(frozenset(order[t : t + n]) for t in range(0, inst.m, n))
        per_agent.append(blocks)
    return tuple(per_agent)


def build_item_graph(inst: Instance) -> ItemGraph:
    """Union over agents of all within-block item pairs, deduplicated."""
    edges: set[tuple[int, int]] = set()
    for blocks in indexed_tuples(inst):
        for block in blocks:
            members = sorted(block)
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    edges.add((members[a], members[b]))
    return ItemGraph(inst.m, tuple(sorted(edges)))


def components(g: ItemGraph) -> tuple[int, tuple[int, ...]]:
    """Connected components: (count, per-vertex 0-based label)."""
    adj = g.adjacency()
    labels = [-1] * g.num_vertices
    count = 0
    for start in range(g.num_vertices):
        if labels[start] != -1:
            continue
        stack = [start]
        labels[start] = count
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if labels[v] == -1:
                    labels[v] = count
                    stack.append(v)
        count += 1
    return count, tuple(labels)


def k_color(g: ItemGraph, k: int) -> tuple[int, ...] | None:
    """Exact k-coloring via backtracking, or None once the search space is exhausted.

    Vertices are picked by maximum saturation (distinct neighbor colors), ties
    by degree then lowest index. Color symmetry is broken by never opening
    color c+1 while color c is unused, so the first vertex colored always gets
    color 1. Colors are 1-based in the result.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = g.num_vertices
    if m == 0:
        return ()
    adj = g.adjacency()
    degree = [len(a) for a in adj]
    colors = [0] * m
    neighbor_colors: list[set[int]] = [set() for _ in range(m)]

    def pick() -> int:
        best = -1
        best_key = (-1, -1, 0)
        for v in range(m):
            if colors[v] == 0:
                key = (len(neighbor_colors[v]), degree[v], -v)
                if key > best_key:
                    best_key = key
                    best = v
        return best

    def extend(colored: int, used: int) -> bool:
        if colored == m:
            return True
        v = pick()
        limit = min(used + 1, k)
        for c in range(1, limit + 1):
            if c in neighbor_colors[v]:
                continue
            colors[v] = c
            touched = [u for u in adj[v] if colors[u] == 0 and c not in neighbor_colors[u]]
            for u in touched:
                neighbor_colors[u].add(c)
            if extend(colored + 1, max(used, c)):
                return True
            for u in touched:
                neighbor_colors[u].discard(c)
            colors[v] = 0
        return False

    if extend(0, 0):
        return tuple(colors)
    return None


def coloring_to_partition(coloring: tuple[int, ...], n: int) -> Partition:
    """Bundle l = color class l; colors beyond the used ones give empty bundles."""
    if coloring and max(coloring) > n:
        raise ValueError(f"coloring uses {max(coloring)} colors but only {n} bundles exist")
    bundles = [set() for _ in range(n)]
    for item, color in enumerate(coloring):
        bundles[color - 1].add(item)
    return Partition(tuple(frozenset(b) for b in bundles))


def separates_tuples(partition: Partition, tuples_: IndexedTuples) -> bool:
    """True iff no bundle holds two items from the same block of any agent."""
    owner: dict[int, int] = {}
    for k, bundle in enumerate(partition.bundles):
        for j in bundle:
            owner[j] = k
    for blocks in tuples_:
        for block in blocks:
            seen: set[int] = set()
            for j in block:
                k = owner[j]
                if k in seen:
                    return False
                seen.add(k)
    return True


def count_lower_bound(g: ItemGraph, n: int) -> int | None:
    """(n!)^(C-1) distinct symEF1 partitions once the graph is n-colorable.

    C is the component count. Returns None when no n-coloring exists (the
    bound then says nothing). Exact integer arithmetic throughout.
    """
    if k_color(g, n) is None:
        return None
    c, _ = components(g)
    return math.factorial(n) ** max(c - 1, 0)


def graph_to_dot(g: ItemGraph) -> str:
    """DOT text with 1-based vertex labels, one statement per line."""
    lines = ["graph G {"]
    lines.extend(f"  {v + 1};" for v in range(g.num_vertices))
    lines.extend(f"  {u + 1} -- {v + 1};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
