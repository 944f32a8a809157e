"""Simple vertex-weighted graphs and the connected-pairs objective.

Solution quality throughout the package is the number of unordered vertex
pairs that remain connected after deletions, summed over components:
``sum_C C(|C|, 2)``.  A vertex of weight ``w`` stands for ``w`` unit
vertices: the vertex itself plus a pendant path of ``w - 1`` fresh
vertices hanging off it.  Component sizes therefore add up weights, and
:func:`expand_weights` materialises the unit-vertex view when a solver or
file format needs it.  Graphs read from disk are always unit-weight; the
weighted and undeletable variants only arise inside solvers (contracted
cycles) and the instance generators.

Vertices are 0-indexed internally.  File formats are 1-indexed; the
translation happens in :mod:`cncut.fileio`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb


class DisjointSets:
    """Union-find with path halving, used for all component bookkeeping."""

    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with per-vertex weight and deletable flag."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    weight: tuple[int, ...]
    deletable: tuple[bool, ...]

    @staticmethod
    def from_edges(
        n: int,
        edges,
        weight=None,
        deletable=None,
    ) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        if weight is None:
            weight = (1,) * n
        else:
            weight = tuple(weight)
            if len(weight) != n or any(w < 1 for w in weight):
                raise ValueError("weights must be positive, one per vertex")
        if deletable is None:
            deletable = (True,) * n
        else:
            deletable = tuple(bool(d) for d in deletable)
            if len(deletable) != n:
                raise ValueError("deletable flags must cover every vertex")
        return Graph(
            n=n,
            adjacency=tuple(tuple(sorted(s)) for s in adj),
            weight=weight,
            deletable=deletable,
        )

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_unit(self) -> bool:
        return all(w == 1 for w in self.weight)

    def total_weight(self) -> int:
        return sum(self.weight)


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by minimum vertex."""
    dsu = DisjointSets(g.n)
    for u, v in g.edges():
        dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted((tuple(sorted(vs)) for vs in groups.values()), key=lambda c: c[0])


def pairs(g: Graph) -> int:
    """Connected pairs of unit vertices: sum over components of C(weight sum, 2)."""
    dsu = DisjointSets(g.n)
    for u in range(g.n):
        for v in g.adjacency[u]:
            if u < v:
                dsu.union(u, v)
    sizes: dict[int, int] = {}
    for v in range(g.n):
        r = dsu.find(v)
        sizes[r] = sizes.get(r, 0) + g.weight[v]
    return sum(comb(s, 2) for s in sizes.values())


def expand_weights(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Replace each weight-w vertex by itself plus a pendant path of w - 1 units.

    Returns the unit-weight graph and a role map sending each new vertex to
    the original vertex it descends from.  Original vertices keep their
    indices; pendant vertices are appended after them and are deletable.
    """
    new_edges = g.edges()
    roles = list(range(g.n))
    deletable = list(g.deletable)
    nxt = g.n
    for v in range(g.n):
        prev = v
        for _ in range(g.weight[v] - 1):
            new_edges.append((prev, nxt))
            roles.append(v)
            deletable.append(True)
            prev = nxt
            nxt += 1
    expanded = Graph.from_edges(nxt, new_edges, deletable=tuple(deletable))
    return expanded, tuple(roles)


def induced_subgraph(g: Graph, keep) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep`` plus the old-to-new index map."""
    kept = sorted(set(keep))
    old_to_new = {v: i for i, v in enumerate(kept)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u in kept
        for v in g.adjacency[u]
        if u < v and v in old_to_new
    ]
    sub = Graph.from_edges(
        len(kept),
        edges,
        weight=tuple(g.weight[v] for v in kept),
        deletable=tuple(g.deletable[v] for v in kept),
    )
    return sub, old_to_new


def delete_vertices(g: Graph, removed) -> tuple[Graph, dict[int, int]]:
    """Remove a vertex set; every removed vertex must be deletable."""
    removed = set(removed)
    for v in removed:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
        if not g.deletable[v]:
            raise ValueError(f"vertex {v} is not deletable")
    return induced_subgraph(g, set(range(g.n)) - removed)


@dataclass(frozen=True)
class Solution:
    """A deletion set with its exactly recomputed objective value.

    ``optimal`` is set only by exact solvers; the approximation scheme
    leaves it False.  ``pair_count`` always comes from a fresh pairs
    recomputation on the input graph minus ``deleted``, never from solver
    internals.
    """

    deleted: frozenset[int]
    pair_count: int
    optimal: bool


def make_solution(g: Graph, deleted, optimal: bool) -> Solution:
    deleted = frozenset(deleted)
    remaining, _ = delete_vertices(g, deleted)
    return Solution(deleted=deleted, pair_count=pairs(remaining), optimal=optimal)


@dataclass(frozen=True)
class Instance:
    """A graph with a deletion budget and an optional pair-count target."""

    graph: Graph
    budget: int
    pair_bound: int | None = None

    def __post_init__(self) -> None:
        if not (0 <= self.budget <= self.graph.n):
            raise ValueError("budget must lie in [0, n]")
        if self.pair_bound is not None:
            ceiling = comb(self.graph.total_weight(), 2)
            if not (0 <= self.pair_bound <= ceiling):
                raise ValueError("pair bound must lie in [0, C(total weight, 2)]")


@dataclass(frozen=True)
class ParameterReport:
    """Cheap structural statistics: cycle rank, max degree, components, size."""

    feedback_edge_count: int
    max_degree: int
    component_count: int
    expanded_n: int


def parameter_report(g: Graph) -> ParameterReport:
    # m - n + c is invariant under weight expansion: each pendant path adds
    # equally many vertices and edges and no cycles.
    comp = len(components(g)) if g.n else 0
    return ParameterReport(
        feedback_edge_count=g.edge_count - g.n + comp,
        max_degree=max((g.degree(v) for v in range(g.n)), default=0),
        component_count=comp,
        expanded_n=g.total_weight(),
    )
