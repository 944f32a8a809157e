"""Exact solver driven by the set of high-degree vertices.

Let X be the vertices of degree >= 3.  In a graph whose spanning trees
have few leaves, X is small, so we can afford to guess the intersection
of an optimal deletion set with X outright: for each guess D we delete D,
protect the remaining X-vertices, and are left with components that are
either bare paths/cycles (no X inside) or, after contracting every cycle
that runs through a protected vertex, weighted trees.  A cycle through a
protected vertex can be assumed untouched: deleting a piece of it merely
reroutes connectivity through the protected part, never improving the
objective, so the whole cycle collapses into one undeletable vertex
carrying its total weight.  Each component yields a budget function
(exact deletions -> best pair count); components combine by exact budget
splits, and guesses merge by minimum with lexicographic witnesses.

The weighted-tree table is indexed by (vertex, budget, open component
size); the open size includes vertex weights, so one pass costs
O(n * budget * total_weight^2).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .budget import INFINITY, combine, recover_split
from .errors import CapExceeded
from .graph import Graph, Instance, Solution, induced_subgraph, make_solution

DEFAULT_BRANCH_CAP = 25


def path_budget_values(length: int, kmax: int) -> list:
    """Best pair counts for deleting exactly j vertices from a bare path."""
    out = []
    for j in range(kmax + 1):
        if j > length:
            out.append(INFINITY)
            continue
        q, r = divmod(length - j, j + 1)
        out.append(r * comb(q + 1, 2) + (j + 1 - r) * comb(q, 2))
    return out


def path_budget_witness(length: int, j: int) -> tuple[int, ...]:
    """Positions (0-based along the path) of one optimal exact-j deletion.

    Short runs come first so the deleted set is lexicographically least.
    """
    if j > length:
        raise ValueError("cannot delete more vertices than the path has")
    q, r = divmod(length - j, j + 1)
    sizes = [q] * (j + 1 - r) + [q + 1] * r
    deleted = []
    acc = 0
    for t in range(j):
        acc += sizes[t]
        deleted.append(acc + t)
    return tuple(deleted)


def cycle_budget_values(length: int, kmax: int) -> list:
    """Like the path case but for a bare cycle.

    With no deletion the cycle is one component; otherwise some vertex is
    deleted and by symmetry we may assume it is the first, leaving a path
    of length - 1 for the remaining budget.
    """
    path_vals = path_budget_values(length - 1, max(kmax - 1, 0))
    out = [comb(length, 2)]
    for j in range(1, kmax + 1):
        out.append(path_vals[j - 1] if j - 1 < len(path_vals) else INFINITY)
    return out


def cycle_budget_witness(length: int, j: int) -> tuple[int, ...]:
    if j == 0:
        return ()
    rest = path_budget_witness(length - 1, j - 1)
    return (0,) + tuple(p + 1 for p in rest)


@dataclass(frozen=True)
class ContractedComponent:
    """One component after the guess: a bare path, a bare cycle, or a tree.

    ``graph`` is local; ``orig_ids`` maps local vertices to input vertices.
    Contracted vertices map to None in ``orig_ids`` and carry the original
    cycle vertices in ``contraction_map``.
    """

    kind: str  # "path" | "cycle" | "tree"
    graph: Graph
    orig_ids: tuple
    contraction_map: dict


def _component_order_path(g: Graph) -> list[int]:
    ends = [v for v in range(g.n) if g.degree(v) <= 1]
    if g.n == 1:
        return [0]
    start = min(ends)
    order = [start]
    prev = None
    cur = start
    while len(order) < g.n:
        nxt = [w for w in g.adjacency[cur] if w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _component_order_cycle(g: Graph) -> list[int]:
    start = 0
    nxt = min(g.adjacency[start])
    order = [start, nxt]
    prev, cur = start, nxt
    while len(order) < g.n:
        step = [w for w in g.adjacency[cur] if w != prev][0]
        prev, cur = cur, step
        order.append(cur)
    return order


def _find_cycle(adj: dict) -> list | None:
    """Any cycle in the graph given as {v: set(neighbours)}, or None.

    Iterative DFS; colour 1 marks the active root-to-v path, so a non-tree
    edge into colour 1 closes a cycle recoverable from parent pointers.
    """
    color = {v: 0 for v in adj}
    parent: dict = {}
    for root in sorted(adj):
        if color[root]:
            continue
        parent[root] = None
        color[root] = 1
        stack = [(root, iter(sorted(adj[root])))]
        while stack:
            v, neighbours = stack[-1]
            advanced = False
            for w in neighbours:
                if w == parent[v]:
                    continue
                if color[w] == 1:
                    cycle = [v]
                    x = v
                    while x != w:
                        x = parent[x]
                        cycle.append(x)
                    return cycle
                if color[w] == 0:
                    parent[w] = v
                    color[w] = 1
                    stack.append((w, iter(sorted(adj[w]))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return None


def contract_safe_cycles(g: Graph, protected: frozenset[int]) -> list[ContractedComponent]:
    """Split into components; contract cycles through protected vertices.

    In every component that contains a protected vertex, each cycle must run
    through one (all other vertices have degree <= 2, and a cycle avoiding
    protected vertices would be a whole component by itself).  Those cycles
    collapse to a single undeletable vertex whose weight is the cycle's
    total; parallel edges produced by the collapse merge, which preserves
    connectivity semantics.  Components without protected vertices stay as
    bare paths or cycles.
    """
    comps: list[ContractedComponent] = []
    visited = [False] * g.n
    for start in range(g.n):
        if visited[start]:
            continue
        stack, members = [start], []
        visited[start] = True
        while stack:
            v = stack.pop()
            members.append(v)
            for w in g.adjacency[v]:
                if not visited[w]:
                    visited[w] = True
                    stack.append(w)
        members.sort()
        sub, old_to_new = induced_subgraph(g, members)
        orig_ids = tuple(members)
        has_protected = any(v in protected for v in members)
        if not has_protected:
            degs = [sub.degree(v) for v in range(sub.n)]
            assert all(d <= 2 for d in degs), "unprotected component with a degree-3 vertex"
            if sub.n >= 3 and all(d == 2 for d in degs):
                comps.append(ContractedComponent("cycle", sub, orig_ids, {}))
            else:
                comps.append(ContractedComponent("path", sub, orig_ids, {}))
            continue

        # mutable view: adjacency sets, weights, deletable flags, id map
        adj = {v: set(sub.adjacency[v]) for v in range(sub.n)}
        weight = {v: sub.weight[v] for v in range(sub.n)}
        deletable = {
            v: sub.deletable[v] and orig_ids[v] not in protected for v in range(sub.n)
        }
        origin: dict[int, tuple] = {v: (orig_ids[v],) for v in range(sub.n)}
        next_id = sub.n
        contraction: dict[int, tuple] = {}
        while True:
            cycle = _find_cycle(adj)
            if cycle is None:
                break
            assert any(
                not deletable[v] for v in cycle
            ), "cycle without a protected vertex inside a mixed component"
            z = next_id
            next_id += 1
            cyc = set(cycle)
            neighbours = set()
            for v in cycle:
                neighbours |= adj[v] - cyc
            for v in cycle:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
            adj[z] = set(neighbours)
            for w in neighbours:
                adj[w].add(z)
            weight[z] = sum(weight[v] for v in cycle)
            deletable[z] = False
            merged: tuple = ()
            for v in cycle:
                merged += origin[v]
            origin[z] = merged
            contraction[z] = merged
            for v in cycle:
                del weight[v], deletable[v], origin[v]

        ids = sorted(adj)
        local = {v: i for i, v in enumerate(ids)}
        edges = [(local[u], local[v]) for u in ids for v in adj[u] if local[u] < local[v]]
        tree = Graph.from_edges(
            len(ids),
            edges,
            weight=tuple(weight[v] for v in ids),
            deletable=tuple(deletable[v] for v in ids),
        )
        tree_orig = tuple(origin[v][0] if v < sub.n else None for v in ids)
        tree_contraction = {local[z]: members_of for z, members_of in contraction.items() if z in local}
        comps.append(ContractedComponent("tree", tree, tree_orig, tree_contraction))
    return comps


def tree_budget_function(t: Graph, kmax: int):
    """Budget function of a weighted tree with undeletable marks.

    Returns (values, witnesses): for each exact budget j, the minimum pair
    count and one deleting set (local vertex tuple).  Every table cell keeps
    its deleted set; ties settle by lexicographic order of those sets, so
    the result is deterministic.
    """
    if t.n == 0:
        return [0] + [INFINITY] * kmax, {0: ()}
    # root at 0; parent/children via DFS (the graph is a tree)
    parent = {0: None}
    order = [0]
    stack = [0]
    while stack:
        v = stack.pop()
        for w in t.adjacency[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    children: dict[int, list[int]] = {v: [] for v in range(t.n)}
    for v in order[1:]:
        children[parent[v]].append(v)

    # alive[v]: {(budget, open_size): (closed_pairs, deleted)}
    # dead[v]:  {budget: (closed_pairs, deleted)}  - only if v is deletable
    alive: dict[int, dict] = {}
    dead: dict[int, dict] = {}

    def better(store, key, value, deleted):
        cur = store.get(key)
        if cur is None or value < cur[0] or (value == cur[0] and deleted < cur[1]):
            store[key] = (value, deleted)

    for v in reversed(order):
        a: dict = {(0, t.weight[v]): (0, ())}
        d: dict = {}
        if t.deletable[v] and kmax >= 1:
            d[1] = (0, (v,))
        for c in children[v]:
            ca, cd = alive[c], dead[c]
            na: dict = {}
            nd: dict = {}
            for (b1, s1), (p1, del1) in a.items():
                for (b2, s2), (p2, del2) in ca.items():
                    if b1 + b2 <= kmax:
                        better(na, (b1 + b2, s1 + s2), p1 + p2, tuple(sorted(del1 + del2)))
                for b2, (p2, del2) in cd.items():
                    if b1 + b2 <= kmax:
                        better(na, (b1 + b2, s1), p1 + p2, tuple(sorted(del1 + del2)))
            for b1, (p1, del1) in d.items():
                for (b2, s2), (p2, del2) in ca.items():
                    if b1 + b2 <= kmax:
                        closed = p1 + p2 + comb(s2, 2)
                        better(nd, b1 + b2, closed, tuple(sorted(del1 + del2)))
                for b2, (p2, del2) in cd.items():
                    if b1 + b2 <= kmax:
                        better(nd, b1 + b2, p1 + p2, tuple(sorted(del1 + del2)))
            a, d = na, nd
        alive[v], dead[v] = a, d

    values = [INFINITY] * (kmax + 1)
    witnesses: dict[int, tuple] = {}
    for (b, s), (p, deleted) in alive[0].items():
        total = p + comb(s, 2)
        if total < values[b] or (total == values[b] and deleted < witnesses.get(b, deleted + (t.n,))):
            values[b] = total
            witnesses[b] = deleted
    for b, (p, deleted) in dead[0].items():
        if p < values[b] or (p == values[b] and deleted < witnesses.get(b, deleted + (t.n,))):
            values[b] = p
            witnesses[b] = deleted
    return values, witnesses


def _component_budget_function(comp: ContractedComponent, kmax: int):
    """(values, witness function j -> original-vertex tuple) for one component."""
    g = comp.graph
    if comp.kind == "path":
        order = _component_order_path(g)
        values = path_budget_values(g.n, kmax)

        def path_witness(j: int) -> tuple:
            return tuple(sorted(comp.orig_ids[order[p]] for p in path_budget_witness(g.n, j)))

        return values, path_witness
    if comp.kind == "cycle":
        order = _component_order_cycle(g)
        values = cycle_budget_values(g.n, kmax)

        def cycle_witness(j: int) -> tuple:
            return tuple(sorted(comp.orig_ids[order[p]] for p in cycle_budget_witness(g.n, j)))

        return values, cycle_witness

    values, tables = tree_budget_function(g, kmax)

    def tree_witness(j: int) -> tuple:
        local = tables[j]
        out = []
        for v in local:
            orig = comp.orig_ids[v]
            assert orig is not None, "contracted vertices are never deletable"
            out.append(orig)
        return tuple(sorted(out))

    return values, tree_witness


def solve_maxleaf(inst: Instance, branch_cap: int = DEFAULT_BRANCH_CAP) -> Solution:
    g, k = inst.graph, inst.budget
    if not g.is_unit():
        raise ValueError("the branching solver expects unit weights; expand first")
    if not all(g.deletable):
        raise ValueError("the branching solver expects every vertex deletable")
    high = [v for v in range(g.n) if g.degree(v) >= 3]
    if len(high) > branch_cap:
        raise CapExceeded("high-degree vertex count", len(high), branch_cap)

    best: tuple | None = None  # (value, sorted deleted tuple)
    for guess_size in range(min(k, len(high)) + 1):
        for guess in combinations(high, guess_size):
            deleted_guess = set(guess)
            survivors = [v for v in range(g.n) if v not in deleted_guess]
            sub, old_to_new = induced_subgraph(g, survivors)
            new_to_old = {i: v for v, i in old_to_new.items()}
            protected = frozenset(
                old_to_new[v] for v in high if v not in deleted_guess
            )
            comps = contract_safe_cycles(sub, protected)
            rest = k - guess_size
            parts = [_component_budget_function(c, rest) for c in comps]
            combined = combine([values for values, _ in parts], rest)
            arg, val = 0, combined(0)
            for b in range(1, rest + 1):
                if combined(b) < val:
                    arg, val = b, combined(b)
            if val == INFINITY:
                continue
            assert combined.is_non_increasing_while_finite()
            split = recover_split(combined, arg)
            deleted = set(guess)
            for (values, witness), b in zip(parts, split):
                deleted.update(new_to_old[v] for v in witness(b))
            value = int(val)
            key = (value, tuple(sorted(deleted)))
            if best is None or key < best:
                best = key
    assert best is not None
    solution = make_solution(g, best[1], optimal=True)
    assert solution.pair_count == best[0], "assembled witness must realize the reported value"
    return solution
