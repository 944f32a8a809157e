"""Exhaustive reference solver.

Enumerates deletion sets size by size so callers get, for each size j,
the minimum pair count, the number of size-j sets attaining it, and one
witness.  Counts are what the counting DP is checked against, so sizes
are never merged.  Subset enumeration follows itertools.combinations
order, which makes every reported witness the lexicographically smallest
optimum of its size.
"""
from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import CapExceeded
from .graph import DisjointSets, Graph, Instance, Solution, make_solution

DEFAULT_ENUMERATION_CAP = 10**8


def _pairs_after_deletion(g: Graph, removed: tuple[int, ...]) -> int:
    # Inlined union-find over surviving vertices; this is the hot loop.
    dead = set(removed)
    dsu = DisjointSets(g.n)
    for u in range(g.n):
        if u in dead:
            continue
        for v in g.adjacency[u]:
            if u < v and v not in dead:
                dsu.union(u, v)
    sizes: dict[int, int] = {}
    for v in range(g.n):
        if v not in dead:
            r = dsu.find(v)
            sizes[r] = sizes.get(r, 0) + g.weight[v]
    return sum(s * (s - 1) // 2 for s in sizes.values())


def minimum_by_size(
    g: Graph, max_size: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[tuple[int, int, tuple[int, ...]]]:
    """For each j in [0, max_size]: (min pairs, count of minimizing size-j sets, witness)."""
    if not g.is_unit():
        raise ValueError("the exhaustive solver expects unit weights; expand first")
    candidates = [v for v in range(g.n) if g.deletable[v]]
    total = sum(comb(len(candidates), j) for j in range(0, max_size + 1))
    if total > cap:
        raise CapExceeded("enumeration size", total, cap)
    rows = []
    for j in range(0, max_size + 1):
        best = None
        count = 0
        witness: tuple[int, ...] = ()
        for subset in combinations(candidates, j):
            value = _pairs_after_deletion(g, subset)
            if best is None or value < best:
                best, count, witness = value, 1, subset
            elif value == best:
                count += 1
        if best is None:  # j exceeds the deletable supply
            best, count, witness = rows[-1][0], 0, rows[-1][2]
        rows.append((best, count, witness))
    return rows


def solve_bruteforce(
    inst: Instance, cap: int = DEFAULT_ENUMERATION_CAP
) -> tuple[int, int, Solution]:
    """Optimum over sizes <= budget, count of minimizing size-budget sets, witness.

    Sizes are scanned in increasing order; once the optimum hits zero the
    remaining intermediate sizes are skipped (deletion never increases the
    objective), but size == budget is still enumerated so the count keeps
    its exact-size meaning.
    """
    g, k = inst.graph, inst.budget
    if not g.is_unit():
        raise ValueError("the exhaustive solver expects unit weights; expand first")
    candidates = [v for v in range(g.n) if g.deletable[v]]
    total = sum(comb(len(candidates), j) for j in range(0, k + 1))
    if total > cap:
        raise CapExceeded("enumeration size", total, cap)

    def scan(j: int) -> tuple[int, int, tuple[int, ...]]:
        best = None
        count = 0
        witness: tuple[int, ...] = ()
        for subset in combinations(candidates, j):
            value = _pairs_after_deletion(g, subset)
            if best is None or value < best:
                best, count, witness = value, 1, subset
            elif value == best:
                count += 1
        if best is None:
            return _pairs_after_deletion(g, tuple(candidates)), 0, tuple(candidates)
        return best, count, witness

    opt = None
    opt_witness: tuple[int, ...] = ()
    count_at_budget = 0
    stopped_early = False
    for j in range(0, k + 1):
        value, count, witness = scan(j)
        if opt is None or value < opt:
            opt, opt_witness = value, witness
        if j == k:
            count_at_budget = count
        elif opt == 0:
            stopped_early = True
            break
    if stopped_early:
        _, count_at_budget, _ = scan(k)
    solution = make_solution(g, opt_witness, optimal=True)
    assert solution.pair_count == opt
    return opt, count_at_budget, solution
