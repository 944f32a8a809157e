"""Solver driven by modular structure: vertex sets with a uniform outside view.

A module is a vertex set whose members are indistinguishable from outside
(every external vertex sees all of it or none of it).  The decomposition
tree splits a graph into components (parallel), co-components (series), or
the maximal proper modules of a prime graph, and records the quotient on
the children.  Cross edges between two adjacent children are complete
bipartite, which collapses the deletion problem at each node:

  - a child can be deleted wholly (charged at the parent), and
  - among kept children, a connected group of the quotient with every
    child keeping at least one survivor always forms one component, so
    only the number of deletions inside the group matters, not their
    placement;
  - a kept child isolated in the quotient contributes its own budget
    function, computed recursively.

Budget functions use exact-deletion semantics: f(t) is the best pair count
after deleting exactly t vertices inside the node, with f(t) = infinity
for t >= |node|; whole-node deletion is always the parent's decision.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .budget import INFINITY, combine, recover_split
from .errors import CapExceeded
from .graph import (
    DisjointSets,
    Graph,
    Instance,
    Solution,
    components,
    induced_subgraph,
    make_solution,
)

DEFAULT_WIDTH_CAP = 20


@dataclass(frozen=True)
class MDNode:
    """One node of the modular decomposition tree.

    ``vertices`` are original graph ids, sorted.  ``quotient_edges`` pair
    child indexes: empty for parallel nodes, complete for series nodes.
    """

    kind: str  # "leaf" | "parallel" | "series" | "prime"
    vertices: tuple[int, ...]
    children: tuple["MDNode", ...]
    quotient_edges: tuple[tuple[int, int], ...]

    def fanout(self) -> int:
        return len(self.children)


def _complement_local(g: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if v not in g.adjacency[u]
    ]
    return Graph.from_edges(g.n, edges)


def _splitter_closure(g: Graph, seed: set[int]) -> set[int]:
    """Grow a set until no outside vertex sees part of it: the least module
    containing the seed."""
    cur = set(seed)
    changed = True
    while changed:
        changed = False
        for w in range(g.n):
            if w in cur:
                continue
            nb = set(g.adjacency[w])
            seen = {v in nb for v in cur}
            if len(seen) == 2:
                cur.add(w)
                changed = True
    return cur


def _maximal_modules_of_prime(g: Graph) -> list[tuple[int, ...]]:
    """Maximal proper modules of a connected, co-connected graph.

    Two vertices share one exactly when the least module containing the
    pair is proper.
    """
    dsu = DisjointSets(g.n)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if len(_splitter_closure(g, {u, v})) < g.n:
                dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted((tuple(sorted(c)) for c in groups.values()), key=lambda c: c[0])


def _is_module(g: Graph, member: set[int]) -> bool:
    for w in range(g.n):
        if w in member:
            continue
        hits = sum(1 for v in g.adjacency[w] if v in member)
        if hits not in (0, len(member)):
            return False
    return True


def modular_decomposition(g: Graph) -> MDNode:
    """Decomposition tree over original vertex ids; deterministic shape."""

    def build(vertices: tuple[int, ...]) -> MDNode:
        if len(vertices) == 1:
            return MDNode("leaf", vertices, (), ())
        sub, old_to_new = induced_subgraph(g, vertices)
        new_to_old = {i: v for v, i in old_to_new.items()}
        comps = components(sub)
        if len(comps) > 1:
            parts = [tuple(sorted(new_to_old[v] for v in c)) for c in comps]
            kind, edges_needed = "parallel", False
        else:
            co = components(_complement_local(sub))
            if len(co) > 1:
                parts = [tuple(sorted(new_to_old[v] for v in c)) for c in co]
                kind, edges_needed = "series", True
            else:
                local = _maximal_modules_of_prime(sub)
                parts = [tuple(sorted(new_to_old[v] for v in c)) for c in local]
                kind, edges_needed = "prime", None
                assert len(parts) >= 4, "a prime quotient has at least four parts"
        parts.sort(key=lambda p: p[0])
        for p in parts:
            assert _is_module(sub, {old_to_new[v] for v in p})
        children = tuple(build(p) for p in parts)
        m = len(parts)
        if kind == "parallel":
            quotient = ()
        elif kind == "series":
            quotient = tuple((i, j) for i in range(m) for j in range(i + 1, m))
        else:
            quotient = tuple(
                (i, j)
                for i in range(m)
                for j in range(i + 1, m)
                if parts[j][0] in g.adjacency[parts[i][0]]
            )
        return MDNode(kind, vertices, children, quotient)

    if g.n == 0:
        return MDNode("parallel", (), (), ())
    return build(tuple(range(g.n)))


def modular_width(node: MDNode) -> int:
    """Largest fan-out anywhere in the tree (what the solver is exponential in)."""
    width = node.fanout()
    for c in node.children:
        width = max(width, modular_width(c))
    return width


def _quotient_components(kept: list[int], edges) -> list[list[int]]:
    pos = {c: i for i, c in enumerate(kept)}
    dsu = DisjointSets(len(kept))
    for i, j in edges:
        if i in pos and j in pos:
            dsu.union(pos[i], pos[j])
    groups: dict[int, list[int]] = {}
    for c in kept:
        groups.setdefault(dsu.find(pos[c]), []).append(c)
    return sorted(groups.values(), key=lambda grp: grp[0])


def _group_function(total: int, child_count: int, k: int) -> list:
    """Pairs after t deletions inside a kept quotient group: one component
    while every child keeps a survivor, unusable beyond that."""
    return [
        comb(total - t, 2) if t <= total - child_count else INFINITY
        for t in range(k + 1)
    ]


def _node_menu(node: MDNode, mask: int, k: int, child_values):
    """Menu of budget-function value lists for kept children under a guess.

    Order: quotient groups by smallest child index; singletons recurse,
    larger groups use the closed form.  Returns (menu, descriptors) where
    each descriptor is ("child", index) or ("group", child indexes).
    """
    kept = [i for i in range(node.fanout()) if not mask >> i & 1]
    menu: list[list] = []
    descriptors = []
    for group in _quotient_components(kept, node.quotient_edges):
        if len(group) == 1:
            menu.append(child_values[group[0]])
            descriptors.append(("child", group[0]))
        else:
            total = sum(len(node.children[i].vertices) for i in group)
            menu.append(_group_function(total, len(group), k))
            descriptors.append(("group", tuple(group)))
    return menu, descriptors


def _node_values(node: MDNode, k: int, memo: dict) -> list:
    key = node.vertices
    if key in memo:
        return memo[key]
    if node.kind == "leaf":
        out = [0] + [INFINITY] * k
        memo[key] = out
        return out
    child_values = [_node_values(c, k, memo) for c in node.children]
    sizes = [len(c.vertices) for c in node.children]
    best = [INFINITY] * (k + 1)
    for mask in range(1 << node.fanout()):
        cost = sum(sizes[i] for i in range(node.fanout()) if mask >> i & 1)
        if cost > k or cost == len(node.vertices):
            continue
        menu, _ = _node_menu(node, mask, k, child_values)
        combined = combine(menu, k - cost, track_splits=False)
        for t in range(cost, k + 1):
            value = combined.values[t - cost]
            if value < best[t]:
                best[t] = value
    memo[key] = best
    return best


def _node_witness(node: MDNode, t: int, target, k: int, memo: dict) -> list[int]:
    """Deleted original vertices realizing value ``target`` at exactly ``t``.

    Replays the guess scan in mask order and takes the first achiever, so
    the output is deterministic.
    """
    if node.kind == "leaf":
        assert t == 0 and target == 0
        return []
    child_values = [_node_values(c, k, memo) for c in node.children]
    sizes = [len(c.vertices) for c in node.children]
    for mask in range(1 << node.fanout()):
        cost = sum(sizes[i] for i in range(node.fanout()) if mask >> i & 1)
        if cost > t or cost == len(node.vertices):
            continue
        menu, descriptors = _node_menu(node, mask, k, child_values)
        combined = combine(menu, k - cost)
        if combined.values[t - cost] != target:
            continue
        split = recover_split(combined, t - cost)
        deleted: list[int] = []
        for i in range(node.fanout()):
            if mask >> i & 1:
                deleted.extend(node.children[i].vertices)
        for part, (tag, what) in zip(split, descriptors):
            if tag == "child":
                child = node.children[what]
                deleted.extend(
                    _node_witness(child, part, child_values[what][part], k, memo)
                )
            else:
                keep = {node.children[i].vertices[0] for i in what}
                pool = sorted(
                    v
                    for i in what
                    for v in node.children[i].vertices
                    if v not in keep
                )
                deleted.extend(pool[:part])
        return sorted(deleted)
    raise AssertionError("witness target not reproducible at this node")


def solve_mw(inst: Instance, width_cap: int = DEFAULT_WIDTH_CAP) -> Solution:
    g, k = inst.graph, inst.budget
    if not g.is_unit():
        raise ValueError("the modular solver expects unit weights; expand first")
    if not all(g.deletable):
        raise ValueError("the modular solver expects every vertex deletable")
    if g.n == 0:
        return make_solution(g, (), optimal=True)
    tree = modular_decomposition(g)
    width = modular_width(tree)
    if width > width_cap:
        raise CapExceeded("modular fan-out", width, width_cap)
    memo: dict = {}
    values = _node_values(tree, k, memo)
    candidates: list[tuple[int, tuple[int, ...]]] = []
    finite = [(values[t], t) for t in range(k + 1) if values[t] < INFINITY]
    if finite:
        target, t = min(finite)
        witness = _node_witness(tree, t, target, k, memo)
        candidates.append((target, tuple(witness)))
    if k >= g.n:
        candidates.append((0, tuple(range(g.n))))
    value, witness = min(candidates)
    solution = make_solution(g, witness, optimal=True)
    assert solution.pair_count == value, "winning guess must be scored exactly"
    return solution
