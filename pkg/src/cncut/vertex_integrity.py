"""Exact solver driven by a small separator with small leftover components.

A graph has integrity p when some separator U of at most p vertices leaves
components of size at most p - |U|.  The solver finds the least such p by
branching (inside any oversized component, a connected piece of
p - |U| + 1 vertices must lose one to the separator), then guesses how an
optimal deletion set treats U: which part S it deletes, and how the kept
separator vertices group into blocks, one block per component of the
final graph.  Every leftover component is small, so all its deletion
subsets can be enumerated into a menu recording, per subset: its size,
how many survivors attach to each block, and the pairs in fragments that
touch no block.  A staged DP over components then picks one menu entry
each, with state (budget spent, attachments accumulated per block).

For a wrong guess the assembled objective can overshoot (a guessed block
may actually fall apart into several components, and C(a + b, 2) >=
C(a, 2) + C(b, 2)); it never undershoots the value of the assembled
deletion set.  The correct guess is scored exactly, so the minimum over
guesses is the optimum, and the winning witness is re-scored from
scratch anyway.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .budget import INFINITY
from .errors import CapExceeded
from .graph import DisjointSets, Graph, Instance, Solution, components, induced_subgraph, make_solution

DEFAULT_SEPARATOR_CAP = 12
DEFAULT_COMPONENT_CAP = 12


@dataclass(frozen=True)
class ViDecomposition:
    """Separator U plus the components of G - U; |U| + max component <= p."""

    separator: tuple[int, ...]
    leftover: tuple[tuple[int, ...], ...]
    p: int


def _components_minus(g: Graph, removed: set[int]) -> list[tuple[int, ...]]:
    dsu = DisjointSets(g.n)
    for u in range(g.n):
        if u in removed:
            continue
        for v in g.adjacency[u]:
            if u < v and v not in removed:
                dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        if v not in removed:
            groups.setdefault(dsu.find(v), []).append(v)
    return sorted((tuple(sorted(c)) for c in groups.values()), key=lambda c: c[0])


def compute_vi_separator(g: Graph, p: int) -> ViDecomposition | None:
    """A separator witnessing integrity at most p, or None.

    Branches on a connected piece of p - |U| + 1 vertices grown by BFS from
    the smallest index of the first oversized component; any valid extension
    of U must meet that piece.  Depth is bounded by p, so the search is
    exhaustive and deterministic.  The same partial separator is reachable
    along many branch orders, hence the visited cache.
    """
    visited: set[frozenset[int]] = set()

    def search(u: set[int]) -> tuple[int, ...] | None:
        frozen = frozenset(u)
        if frozen in visited:
            return None
        visited.add(frozen)
        comps = _components_minus(g, u)
        limit = p - len(u)
        oversized = [c for c in comps if len(c) > limit]
        if not oversized:
            return tuple(sorted(u))
        if len(u) >= p:
            return None
        comp = oversized[0]
        inside = set(comp)
        start = comp[0]
        piece = [start]
        taken = {start}
        queue = [start]
        while queue and len(piece) < limit + 1:
            v = queue.pop(0)
            for w in g.adjacency[v]:
                if w in inside and w not in taken:
                    taken.add(w)
                    piece.append(w)
                    queue.append(w)
                    if len(piece) == limit + 1:
                        break
        for v in piece:
            result = search(u | {v})
            if result is not None:
                return result
        return None

    found = search(set())
    if found is None:
        return None
    return ViDecomposition(
        separator=found, leftover=tuple(_components_minus(g, set(found))), p=p
    )


def minimal_vi_decomposition(
    g: Graph,
    separator_cap: int = DEFAULT_SEPARATOR_CAP,
    component_cap: int = DEFAULT_COMPONENT_CAP,
) -> ViDecomposition:
    for p in range(1, g.n + 1):
        dec = compute_vi_separator(g, p)
        if dec is not None:
            if len(dec.separator) > separator_cap:
                raise CapExceeded("separator size", len(dec.separator), separator_cap)
            biggest = max((len(c) for c in dec.leftover), default=0)
            if biggest > component_cap:
                raise CapExceeded("leftover component size", biggest, component_cap)
            return dec
    return ViDecomposition(separator=(), leftover=(), p=0)  # empty graph


def _set_partitions(units: list) -> list[list[list]]:
    """All partitions of ``units`` in restricted-growth order."""
    out: list[list[list]] = []

    def place(i: int, blocks: list[list]) -> None:
        if i == len(units):
            out.append([list(b) for b in blocks])
            return
        for b in blocks:
            b.append(units[i])
            place(i + 1, blocks)
            b.pop()
        blocks.append([units[i]])
        place(i + 1, blocks)
        blocks.pop()

    place(0, [])
    return out


def enumerate_guesses(g: Graph, separator, max_deletions: int):
    """All (S, blocks): S the deleted part of U, blocks a grouping of the rest.

    Kept separator vertices that are adjacent (transitively, within G[U - S])
    must share a final component, so partitions place whole units.
    """
    sep = tuple(sorted(separator))
    guesses = []
    for mask in range(1 << len(sep)):
        s = frozenset(sep[i] for i in range(len(sep)) if mask >> i & 1)
        if len(s) > max_deletions:
            continue
        kept = [v for v in sep if v not in s]
        if not kept:
            guesses.append((s, ()))
            continue
        sub, old_to_new = induced_subgraph(g, kept)
        new_to_old = {i: v for v, i in old_to_new.items()}
        units = [
            tuple(sorted(new_to_old[v] for v in unit)) for unit in components(sub)
        ]
        for grouping in _set_partitions(units):
            blocks = tuple(
                sorted(
                    (tuple(sorted(v for unit in part for v in unit)) for part in grouping),
                    key=lambda b: b[0],
                )
            )
            guesses.append((s, blocks))
    return guesses


def component_menu(g: Graph, blocks, kept_separator, comp):
    """Deletion menu of one leftover component under a fixed guess.

    Entries are (deleted subset, size, attachments per block, loose pairs),
    in mask order over the sorted component.  A subset is invalid (omitted)
    when the survivors would connect two blocks.
    """
    comp = tuple(sorted(comp))
    kept = tuple(sorted(kept_separator))
    block_of = {}
    for i, b in enumerate(blocks):
        for v in b:
            block_of[v] = i
    entries = []
    for mask in range(1 << len(comp)):
        deleted = tuple(comp[i] for i in range(len(comp)) if mask >> i & 1)
        survivors = [v for v in comp if v not in set(deleted)]
        alive = kept + tuple(survivors)
        index = {v: i for i, v in enumerate(alive)}
        dsu = DisjointSets(len(alive))
        for v in alive:
            for w in g.adjacency[v]:
                if w in index and v < w:
                    dsu.union(index[v], index[w])
        touched: dict[int, set[int]] = {}
        members: dict[int, int] = {}
        for v in alive:
            r = dsu.find(index[v])
            if v in block_of:
                touched.setdefault(r, set()).add(block_of[v])
            else:
                members[r] = members.get(r, 0) + 1
        if any(len(t) > 1 for t in touched.values()):
            continue
        attach = [0] * len(blocks)
        loose = 0
        for r, size in members.items():
            t = touched.get(r)
            if t:
                attach[tuple(t)[0]] += size
            else:
                loose += comb(size, 2)
        entries.append((deleted, len(deleted), tuple(attach), loose))
    return entries


def _assignment_stages(menus, n_blocks: int, max_budget: int):
    """Staged DP over components; returns the state dict after each stage.

    States are (budget, attachment vector) -> (loose pairs so far, back),
    where back = (previous state key, menu entry index).
    """
    stages = [{(0, (0,) * n_blocks): (0, None)}]
    for menu in menus:
        nxt: dict = {}
        for key in sorted(stages[-1]):
            budget, attach = key
            acc = stages[-1][key][0]
            for idx, (_, d, extra, loose) in enumerate(menu):
                nb = budget + d
                if nb > max_budget:
                    continue
                nk = (nb, tuple(a + e for a, e in zip(attach, extra)))
                val = acc + loose
                cur = nxt.get(nk)
                if cur is None or val < cur[0]:
                    nxt[nk] = (val, (key, idx))
        stages.append(nxt)
    return stages


def _extract(stages, menus, block_sizes, budget: int):
    best_val = INFINITY
    best_key = None
    for key in sorted(stages[-1]):
        b, attach = key
        if b != budget:
            continue
        value = stages[-1][key][0] + sum(
            comb(n + y, 2) for n, y in zip(block_sizes, attach)
        )
        if value < best_val:
            best_val, best_key = value, key
    if best_key is None:
        return INFINITY, None
    chosen = []
    key = best_key
    for stage in range(len(menus), 0, -1):
        _, back = stages[stage][key]
        key, idx = back
        chosen.append(idx)
    chosen.reverse()
    return best_val, chosen


def optimize_assignment(menus, block_sizes, budget: int):
    """Best exact-budget selection of one entry per menu: (value, entry indices)."""
    stages = _assignment_stages(menus, len(block_sizes), budget)
    return _extract(stages, menus, block_sizes, budget)


def solve_vi(
    inst: Instance,
    separator_cap: int = DEFAULT_SEPARATOR_CAP,
    component_cap: int = DEFAULT_COMPONENT_CAP,
) -> Solution:
    g, k = inst.graph, inst.budget
    if not g.is_unit():
        raise ValueError("the integrity solver expects unit weights; expand first")
    if not all(g.deletable):
        raise ValueError("the integrity solver expects every vertex deletable")
    if g.n == 0:
        return make_solution(g, (), optimal=True)
    dec = minimal_vi_decomposition(g, separator_cap, component_cap)
    best: tuple | None = None
    for s, blocks in enumerate_guesses(g, dec.separator, min(k, len(dec.separator))):
        kept = tuple(v for v in dec.separator if v not in s)
        block_sizes = [len(b) for b in blocks]
        menus = [component_menu(g, blocks, kept, comp) for comp in dec.leftover]
        stages = _assignment_stages(menus, len(blocks), k - len(s))
        for budget in range(0, k - len(s) + 1):
            value, chosen = _extract(stages, menus, block_sizes, budget)
            if chosen is None:
                continue
            deleted = set(s)
            for menu, idx in zip(menus, chosen):
                deleted.update(menu[idx][0])
            key = (value, tuple(sorted(deleted)))
            if best is None or key < best:
                best = key
    assert best is not None, "the empty guess with empty menus is always feasible"
    solution = make_solution(g, best[1], optimal=True)
    assert solution.pair_count == best[0], "winning guess must be scored exactly"
    return solution
