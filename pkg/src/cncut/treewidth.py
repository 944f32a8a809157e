"""Deletion DP over nice tree decompositions, exact or with rounded sizes.

The state at a node is a pseudo-signature (Z, k, P, c): the kept bag
vertices Z, the number of deleted vertices already forgotten, a partition
P of Z into blocks (bag vertices connected through surviving forgotten
vertices share a block), and per block an upper estimate of how many
forgotten survivors hang off it (bag vertices not included).  Per
signature the table keeps the minimum accumulated pair mass of fully
forgotten components, plus backpointers.

Estimates live on a multiplicative grid {0} union powers of (1+delta) and
are re-rounded upward on every change (forget grows a block by one,
introduce and join merge blocks by summing).  With delta = eps'/(2h) for
tree height h the compounded overshoot stays within the approximation
budget; the exact mode swaps in an identity grid over the integers and
the same code computes exact optima.  Either way the reported pair count
is recomputed from the witness, never read off the table.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .graph import DisjointSets, Graph, Instance, Solution, make_solution
from .tdecomp import NiceTreeDecomposition, TreeDecomposition, heuristic_td, nicify, validate_td

DEFAULT_EXACT_WIDTH_CAP = 8
DEFAULT_APX_WIDTH_CAP = 12

_GRID_SANITY = 10_000_000  # grid entries; growing past this means a bug


class RoundedSizeGrid:
    """{0} union powers of (1+delta), addressed by token = list index.

    Token 0 is the zero element, token j+1 holds (1+delta)^j.  The list
    extends lazily, so round_up is total for non-negative inputs; the
    published range bound ((1+eps')*n) is a property of the callers, not
    enforced here.  With ``exact`` the powers are Fractions, for tests
    that need exact arithmetic; the solver uses floats, whose rounding
    slop only shifts choices among near-tied witnesses.
    """

    def __init__(self, delta, limit, exact: bool = False):
        if delta <= 0:
            raise ValueError("delta must be positive")
        one = Fraction(1) if exact else 1.0
        self.delta = Fraction(delta) if exact else float(delta)
        self.growth = one + self.delta
        self.values = [one * 0, one]
        while self.values[-1] < limit:
            self._extend()

    def _extend(self) -> None:
        if len(self.values) >= _GRID_SANITY:
            raise RuntimeError("size grid grew unreasonably large")
        self.values.append(self.values[-1] * self.growth)

    def round_up(self, x):
        """Token of the least grid element >= x."""
        if x < 0:
            raise ValueError("sizes are non-negative")
        if x == 0:
            return 0
        while self.values[-1] < x:
            self._extend()
        return bisect_left(self.values, x, lo=1)

    def value(self, token: int):
        return self.values[token]


class IdentityGrid:
    """Exact mode: tokens are the integer sizes themselves."""

    def round_up(self, x):
        if not isinstance(x, int):
            raise TypeError("exact mode sizes stay integral")
        if x < 0:
            raise ValueError("sizes are non-negative")
        return x

    def value(self, token: int) -> int:
        return token


def round_up(grid, x):
    """Least grid element at least x, as a token; see the grid classes."""
    return grid.round_up(x)


def _half_pairs(x):
    if isinstance(x, int):
        return x * (x - 1) // 2
    return x * (x - 1) / 2


def _canon_blocks(blocks) -> tuple:
    return tuple(sorted(blocks))


def _tw_tables(g: Graph, nice: NiceTreeDecomposition, budget: int, grid):
    """Bottom-up signature tables, one dict per node.

    table[idx][(z, k, blocks)] = (best accumulated pairs, backpointer)
    where z is the kept bag tuple, k counts deleted vertices already
    forgotten, and blocks pair sorted vertex tuples with size tokens.
    """
    tables: list[dict] = []
    for idx, node in enumerate(nice.nodes):
        table: dict = {}

        def better(sig, dhat, back):
            cur = table.get(sig)
            if cur is None or dhat < cur[0]:
                table[sig] = (dhat, back)

        if node.kind == "leaf":
            table[((), 0, ())] = (0, None)
        elif node.kind == "introduce":
            v = node.vertex
            nb = set(g.adjacency[v])
            for sig in sorted(tables[node.children[0]]):
                dhat = tables[node.children[0]][sig][0]
                z, k, blocks = sig
                better((z, k, blocks), dhat, (sig, True))  # delete v
                touching = [bl for bl in blocks if nb.intersection(bl[0])]
                rest = [bl for bl in blocks if not nb.intersection(bl[0])]
                verts = tuple(sorted({v}.union(*(bl[0] for bl in touching))))
                token = grid.round_up(sum(grid.value(bl[1]) for bl in touching))
                keep_sig = (
                    tuple(sorted(z + (v,))),
                    k,
                    _canon_blocks(rest + [(verts, token)]),
                )
                better(keep_sig, dhat, (sig, False))
        elif node.kind == "forget":
            v = node.vertex
            for sig in sorted(tables[node.children[0]]):
                dhat = tables[node.children[0]][sig][0]
                z, k, blocks = sig
                if v not in z:
                    if k + 1 <= budget:
                        better((z, k + 1, blocks), dhat, (sig,))
                    continue
                z2 = tuple(x for x in z if x != v)
                (block,) = [bl for bl in blocks if v in bl[0]]
                rest = [bl for bl in blocks if v not in bl[0]]
                remaining = tuple(x for x in block[0] if x != v)
                if remaining:
                    token = grid.round_up(grid.value(block[1]) + 1)
                    better(
                        (z2, k, _canon_blocks(rest + [(remaining, token)])),
                        dhat,
                        (sig,),
                    )
                else:
                    closed = _half_pairs(grid.value(block[1]) + 1)
                    better((z2, k, _canon_blocks(rest)), dhat + closed, (sig,))
        else:  # join
            left, right = node.children
            by_z: dict = {}
            for sig in sorted(tables[right]):
                by_z.setdefault(sig[0], []).append(sig)
            for sig1 in sorted(tables[left]):
                z, k1, blocks1 = sig1
                d1 = tables[left][sig1][0]
                for sig2 in by_z.get(z, ()):
                    _, k2, blocks2 = sig2
                    if k1 + k2 > budget:
                        continue
                    d2 = tables[right][sig2][0]
                    pos = {x: i for i, x in enumerate(z)}
                    dsu = DisjointSets(len(z))
                    for verts, _ in blocks1 + blocks2:
                        for a in verts[1:]:
                            dsu.union(pos[verts[0]], pos[a])
                    members: dict[int, set] = {}
                    totals: dict[int, object] = {}
                    for verts, token in blocks1 + blocks2:
                        r = dsu.find(pos[verts[0]])
                        members.setdefault(r, set()).update(verts)
                        totals[r] = totals.get(r, 0) + grid.value(token)
                    merged = [
                        (tuple(sorted(members[r])), grid.round_up(totals[r]))
                        for r in members
                    ]
                    better(
                        (z, k1 + k2, _canon_blocks(merged)),
                        d1 + d2,
                        (sig1, sig2),
                    )
        tables.append(table)
    return tables


def _collect_witness(nice: NiceTreeDecomposition, tables, idx: int, sig, out: set) -> None:
    node = nice.nodes[idx]
    back = tables[idx][sig][1]
    if node.kind == "leaf":
        return
    if node.kind == "introduce":
        child_sig, deleted = back
        if deleted:
            out.add(node.vertex)
        _collect_witness(nice, tables, node.children[0], child_sig, out)
    elif node.kind == "forget":
        _collect_witness(nice, tables, node.children[0], back[0], out)
    else:
        _collect_witness(nice, tables, node.children[0], back[0], out)
        _collect_witness(nice, tables, node.children[1], back[1], out)


def effective_epsilon_prime(eps) -> Fraction:
    """eps/4, kept strictly below 1/4 so the proof constants stay valid."""
    eps = Fraction(str(eps)) if not isinstance(eps, Fraction) else eps
    if eps <= 0:
        raise ValueError("eps must be positive")
    return min(eps, Fraction(96, 100)) / 4


def solve_tw(
    inst: Instance,
    mode: str = "exact",
    eps=None,
    td: TreeDecomposition | None = None,
    width_cap: int | None = None,
) -> Solution:
    g, budget = inst.graph, inst.budget
    if mode not in ("exact", "apx"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "apx" and eps is None:
        raise ValueError("apx mode needs eps")
    if not g.is_unit():
        raise ValueError("the decomposition solver expects unit weights; expand first")
    if not all(g.deletable):
        raise ValueError("the decomposition solver expects every vertex deletable")
    if g.n == 0:
        return make_solution(g, (), optimal=mode == "exact")
    if td is None:
        td = heuristic_td(g)
    else:
        validate_td(td, g)
    cap = width_cap if width_cap is not None else (
        DEFAULT_EXACT_WIDTH_CAP if mode == "exact" else DEFAULT_APX_WIDTH_CAP
    )
    if td.width > cap:
        raise CapExceeded("decomposition width", td.width, cap)
    nice = nicify(td)
    if mode == "exact":
        grid = IdentityGrid()
    else:
        eps_prime = effective_epsilon_prime(eps)
        delta = eps_prime / (2 * max(1, nice.height))
        grid = RoundedSizeGrid(float(delta), limit=(1 + float(eps_prime)) * g.n)
    tables = _tw_tables(g, nice, budget, grid)
    root = tables[nice.root]
    best = None
    for sig in sorted(root):
        key = (root[sig][0], sig[1], sig)
        if best is None or key < best:
            best = key
    assert best is not None, "the keep-everything signature survives all pruning"
    estimate, _, sig = best
    witness: set[int] = set()
    _collect_witness(nice, tables, nice.root, sig, witness)
    assert len(witness) == sig[1], "every deleted vertex is forgotten exactly once"
    solution = make_solution(g, witness, optimal=mode == "exact")
    if mode == "exact":
        assert solution.pair_count == estimate, "identity grid must be exact"
    return solution


def solve_tw_exact(inst: Instance, td: TreeDecomposition | None = None,
                   width_cap: int | None = None) -> Solution:
    return solve_tw(inst, mode="exact", td=td, width_cap=width_cap)


def solve_tw_apx(inst: Instance, eps, td: TreeDecomposition | None = None,
                 width_cap: int | None = None) -> Solution:
    return solve_tw(inst, mode="apx", eps=eps, td=td, width_cap=width_cap)
