"""Bin-packing hardness instances.

Restricted unary bin packing: items with positive values must be split
across k bins, each item into one of its two allowed bins, so that every
bin sums to exactly sum(values) / k.  ``reduce_rubp`` rebuilds such an
instance as a weighted critical-node-cut instance whose cheapest cuts
mirror the packings: one clique of heavy vertices per bin, and for every
bin pair two parallel paths between the cliques whose cut points encode
how the pair's shared load splits.

Roles in the reduced graph (1-based indices, matching the file formats):

``("clique", i, t)``
    t-th heavy vertex of bin i's clique.
``("pad", i, j, q)``
    q-th vertex of the all-heavy path between bins i < j; its job is to
    let both sides of a cut weigh exactly the same.
``("stop", i, j, q)``
    heavy checkpoint on the counting path, one per subset sum q of the
    items shared by bins i and j.
``("tick", i, j, q)``
    unit vertex q of the counting path; the ticks left on bin i's side
    of a cut count the shared load bin i absorbed.

Weights are realized on expansion as pendant paths, so deleting a heavy
vertex strands its path as a small separate component.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .errors import CapExceeded
from .graph import Graph, Instance, delete_vertices, expand_weights, pairs, parameter_report

DEFAULT_ASSIGNMENT_CAP = 10_000_000
DEFAULT_EXPANSION_CAP = 1_000_000


@dataclass(frozen=True)
class RubpInstance:
    """Items as (value, (bin1, bin2)) with 1-based, ordered, distinct bins."""

    bins: int
    items: tuple[tuple[int, tuple[int, int]], ...]

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise ValueError("need at least one bin")
        for value, (b1, b2) in self.items:
            if value < 1:
                raise ValueError("item values are positive")
            if not (1 <= b1 < b2 <= self.bins):
                raise ValueError(f"allowed bins ({b1}, {b2}) must be ordered and in range")

    def total(self) -> int:
        return sum(value for value, _ in self.items)


def rubp_brute(
    r: RubpInstance, cap: int = DEFAULT_ASSIGNMENT_CAP
) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Decide a packing instance by depth-first assignment with sum pruning.

    Returns (decision, partition); the partition lists chosen item indices
    per bin, or is None for no-instances.
    """
    if r.bins ** len(r.items) > cap:
        raise CapExceeded("assignment count", r.bins ** len(r.items), cap)
    total = r.total()
    if total % r.bins:
        return False, None
    target = total // r.bins
    sums = [0] * r.bins
    chosen: list[list[int]] = [[] for _ in range(r.bins)]

    def place(idx: int) -> bool:
        if idx == len(r.items):
            # sums never exceed target and add up to bins * target, so
            # reaching the end means every bin is exact
            return True
        value, allowed = r.items[idx]
        for b in allowed:
            if sums[b - 1] + value <= target:
                sums[b - 1] += value
                chosen[b - 1].append(idx)
                if place(idx + 1):
                    return True
                sums[b - 1] -= value
                chosen[b - 1].pop()
        return False

    if place(0):
        return True, tuple(tuple(part) for part in chosen)
    return False, None


def partition_values(r: RubpInstance, partition) -> tuple[tuple[int, ...], ...]:
    """Value view of an index partition, for display."""
    return tuple(tuple(sorted(r.items[idx][0] for idx in part)) for part in partition)


def subset_sums(values) -> tuple[int, ...]:
    """All distinct subset sums as a sorted tuple (a set, not a multiset)."""
    mask = 1
    for v in values:
        mask |= mask << v
    return tuple(q for q in range(mask.bit_length()) if mask >> q & 1)


@dataclass(frozen=True)
class RubpReduction:
    """Reduced instance in weighted and expanded (unit) form.

    ``roles`` names each weighted vertex; original vertices keep their
    indices in the expanded graph, and ``expanded_origin`` sends every
    expanded vertex to the weighted vertex it descends from.
    """

    source: RubpInstance
    weighted: Instance
    expanded: Instance
    expanded_origin: tuple[int, ...]
    roles: tuple[tuple, ...]
    constants: dict


def reduce_rubp(r: RubpInstance, expansion_cap: int = DEFAULT_EXPANSION_CAP) -> RubpReduction:
    """Build the cut instance equivalent to the packing instance ``r``.

    Deleting one stop and one pad vertex per bin pair can split the graph
    into one component per bin; the components can all be squeezed down to
    the same weight exactly when the shared items admit a perfect split,
    which is what the pair bound detects.
    """
    k = r.bins
    total = r.total()
    if total == 0:
        raise ValueError("no items: nothing to reduce")
    if total % k:
        raise ValueError(f"item sum {total} is not divisible by bin count {k}")
    bin_sum = total // k
    clique_size = 6 * k * k
    heavy = k * bin_sum + 1
    clique_weight = 36 * k**4 * bin_sum * heavy
    bin_weight = clique_weight + (k - 1) * 2 * bin_sum * heavy + bin_sum
    budget = 2 * comb(k, 2)
    pair_bound = k * comb(bin_weight, 2) + 2 * comb(k, 2) * comb(heavy - 1, 2)
    expanded_n = k * bin_weight + 2 * comb(k, 2) * heavy
    if expanded_n > expansion_cap:
        raise CapExceeded("expanded vertex count", expanded_n, expansion_cap)

    shared: dict[tuple[int, int], list[int]] = {
        pair: [] for pair in combinations(range(1, k + 1), 2)
    }
    for value, pair in r.items:
        shared[pair].append(value)
    for pair, values in shared.items():
        if sum(values) > 2 * bin_sum:
            raise ValueError(
                f"items shared by bins {pair} sum to {sum(values)}, "
                f"more than twice the bin sum {bin_sum}"
            )

    roles: list[tuple] = []
    weight: list[int] = []
    edges: list[tuple[int, int]] = []

    def add(role: tuple, w: int) -> int:
        roles.append(role)
        weight.append(w)
        return len(roles) - 1

    clique: dict[int, list[int]] = {}
    for i in range(1, k + 1):
        members = [
            add(("clique", i, t), clique_weight // clique_size)
            for t in range(1, clique_size + 1)
        ]
        edges.extend(combinations(members, 2))
        clique[i] = members

    for (i, j), values in sorted(shared.items()):
        span = sum(values)
        sums = subset_sums(values)
        pad = [
            add(("pad", i, j, q), heavy)
            for q in range(0, 4 * bin_sum - len(sums) + 2)
        ]
        edges.extend(zip(pad, pad[1:]))
        edges.extend((u, pad[0]) for u in clique[i])
        edges.extend((pad[-1], u) for u in clique[j])

        stop = {q: add(("stop", i, j, q), heavy) for q in sums}
        tick = {q: add(("tick", i, j, q), 1) for q in range(1, span + 1)}
        edges.extend((u, stop[0]) for u in clique[i])
        edges.extend((stop[span], u) for u in clique[j])
        for q in range(0, span + 1):
            if q in stop:
                if q != 0:
                    edges.append((tick[q], stop[q]))
                if q != span:
                    edges.append((stop[q], tick[q + 1]))
            else:
                edges.append((tick[q], tick[q + 1]))

    g = Graph.from_edges(len(roles), edges, weight=tuple(weight))
    expanded_graph, origin = expand_weights(g)
    # the closed-form count must match the built graph exactly
    assert expanded_graph.n == expanded_n
    constants = {
        "bin_sum": bin_sum,
        "clique_size": clique_size,
        "heavy_weight": heavy,
        "clique_weight": clique_weight,
        "bin_weight": bin_weight,
        "budget": budget,
        "pair_bound": pair_bound,
    }
    return RubpReduction(
        source=r,
        weighted=Instance(graph=g, budget=budget, pair_bound=pair_bound),
        expanded=Instance(graph=expanded_graph, budget=budget, pair_bound=pair_bound),
        expanded_origin=origin,
        roles=tuple(roles),
        constants=constants,
    )


def _check_partition(r: RubpInstance, partition) -> None:
    if len(partition) != r.bins:
        raise ValueError("partition needs one part per bin")
    placed = sorted(idx for part in partition for idx in part)
    if placed != list(range(len(r.items))):
        raise ValueError("partition must place every item index exactly once")
    if r.total() % r.bins:
        raise ValueError("item sum is not divisible by bin count")
    target = r.total() // r.bins
    for b, part in enumerate(partition, start=1):
        load = 0
        for idx in part:
            value, pair = r.items[idx]
            if b not in pair:
                raise ValueError(f"item {idx} is not allowed in bin {b}")
            load += value
        if load != target:
            raise ValueError(f"bin {b} sums to {load}, expected {target}")


def rubp_witness(red: RubpReduction, partition) -> frozenset[int]:
    """Deletion set realizing the pair bound, built from a valid packing.

    For each bin pair, delete the stop at the shared load the lower bin
    takes and the pad vertex that rebalances the leftover.  Verified by
    exact recomputation on the expanded graph before returning.
    """
    r = red.source
    _check_partition(r, partition)
    bin_sum = red.constants["bin_sum"]
    where = {idx: b for b, part in enumerate(partition, start=1) for idx in part}
    index = {role: v for v, role in enumerate(red.roles)}
    deleted: set[int] = set()
    for i, j in combinations(range(1, r.bins + 1), 2):
        pair_items = [
            (idx, value) for idx, (value, pair) in enumerate(r.items) if pair == (i, j)
        ]
        low_load = sum(value for idx, value in pair_items if where[idx] == i)
        sums = subset_sums([value for _, value in pair_items])
        below = sum(1 for q in sums if q < low_load)
        deleted.add(index[("stop", i, j, low_load)])
        deleted.add(index[("pad", i, j, 2 * bin_sum - below)])
    assert len(deleted) == red.constants["budget"]
    remaining, _ = delete_vertices(red.expanded.graph, deleted)
    assert pairs(remaining) <= red.constants["pair_bound"]
    return frozenset(deleted)


@dataclass(frozen=True)
class RubpParamReport:
    """Structural bounds certifying the reduced graph's intended shape."""

    clique_degree: int
    degree_formula: int
    feedback_edges: int
    feedback_bound: int
    spine_is_forest: bool


def check_rubp_param_bounds(red: RubpReduction) -> RubpParamReport:
    """Verify the expanded graph's degree and cycle-structure guarantees.

    Every clique vertex keeps degree clique_size + 2(bins - 1); the
    feedback edge count stays within bins * C(c, 2) + 4 * C(bins, 2) * c
    for c = clique_size; and dropping the clique edges together with the
    clique-to-path attachments leaves a forest.  Any failed assertion
    here means the construction itself is broken.
    """
    g = red.expanded.graph
    k = red.source.bins
    c = red.constants["clique_size"]
    weighted_n = len(red.roles)

    degree_formula = c + 2 * (k - 1)
    clique_roots = {
        v for v in range(weighted_n) if red.roles[v][0] == "clique"
    }
    degrees = {g.degree(v) for v in clique_roots}
    assert degrees == {degree_formula}

    feedback_bound = k * comb(c, 2) + 4 * comb(k, 2) * c
    feedback_edges = parameter_report(g).feedback_edge_count
    assert feedback_edges <= feedback_bound

    def is_attachment(u: int, v: int) -> bool:
        if u >= weighted_n or v >= weighted_n:
            return False
        heads = {red.roles[u][0], red.roles[v][0]}
        return "clique" in heads and heads <= {"clique", "pad", "stop"}

    spine = [(u, v) for u, v in g.edges() if not is_attachment(u, v)]
    assert g.edge_count - len(spine) == feedback_bound
    remainder = Graph.from_edges(g.n, spine)
    spine_is_forest = parameter_report(remainder).feedback_edge_count == 0
    assert spine_is_forest

    return RubpParamReport(
        clique_degree=degree_formula,
        degree_formula=degree_formula,
        feedback_edges=feedback_edges,
        feedback_bound=feedback_bound,
        spine_is_forest=spine_is_forest,
    )


def restricted_min_pairs(red: RubpReduction) -> int:
    """Least pair count over cuts of the intended shape: one heavy vertex
    from each of the two connecting paths of every bin pair.

    Optimal cuts of the reduced graph are confined to this family, so a
    minimum above the pair bound certifies a no-instance.  This is a
    structure-assisted sanity check, not an exhaustive search.
    """
    per_pair: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
    for v, role in enumerate(red.roles):
        head = role[0]
        if head in ("pad", "stop"):
            pads, stops = per_pair.setdefault((role[1], role[2]), ([], []))
            (pads if head == "pad" else stops).append(v)
    g = red.expanded.graph
    best = None
    choices = [
        [(p, s) for p in pads for s in stops] for pads, stops in per_pair.values()
    ]
    for combo in product(*choices):
        removed = {v for pick in combo for v in pick}
        value = pairs(delete_vertices(g, removed)[0])
        if best is None or value < best:
            best = value
    assert best is not None
    return best
