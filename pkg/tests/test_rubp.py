"""Bin-packing reduction: brute oracle, construction shape, witnesses."""
from math import comb

import pytest

from cncut.errors import CapExceeded
from cncut.fileio import format_bin_packing, parse_bin_packing
from cncut.graph import components, delete_vertices, pairs
from cncut.rubp import (
    RubpInstance,
    check_rubp_param_bounds,
    partition_values,
    reduce_rubp,
    restricted_min_pairs,
    rubp_brute,
    rubp_witness,
    subset_sums,
)


def both_bins(*values) -> RubpInstance:
    return RubpInstance(bins=2, items=tuple((v, (1, 2)) for v in values))


def test_brute_balanced_pair():
    yes, partition = rubp_brute(both_bins(1, 1))
    assert yes
    assert partition_values(both_bins(1, 1), partition) == ((1,), (1,))


def test_brute_single_item_cannot_split():
    assert rubp_brute(both_bins(2)) == (False, None)


def test_brute_finds_mixed_split():
    r = both_bins(1, 1, 2, 2)
    yes, partition = rubp_brute(r)
    assert yes
    assert all(sum(r.items[i][0] for i in part) == 3 for part in partition)


def test_brute_respects_allowed_bins():
    r = RubpInstance(bins=3, items=((1, (1, 2)), (1, (2, 3)), (1, (1, 3))))
    yes, partition = rubp_brute(r)
    assert yes
    for b, part in enumerate(partition, start=1):
        assert all(b in r.items[i][1] for i in part)
    # same values, but nothing may reach the third bin
    assert rubp_brute(RubpInstance(bins=3, items=((1, (1, 2)),) * 3)) == (False, None)


def test_brute_assignment_cap():
    with pytest.raises(CapExceeded):
        rubp_brute(both_bins(*[1] * 24))


def test_subset_sums_are_sets():
    assert subset_sums([1, 1]) == (0, 1, 2)
    assert subset_sums([]) == (0,)
    assert subset_sums([2, 3]) == (0, 2, 3, 5)


def test_reduction_constants():
    red = reduce_rubp(both_bins(1, 1))
    assert red.constants == {
        "bin_sum": 1,
        "clique_size": 24,
        "heavy_weight": 3,
        "clique_weight": 1728,
        "bin_weight": 1735,
        "budget": 2,
        "pair_bound": 3_008_492,
    }
    # closed-form vertex count against the built graph
    assert red.expanded.graph.n == 2 * 1735 + 2 * 1 * 3 == 3476
    assert red.weighted.graph.total_weight() == 3476


def test_reduction_path_shapes():
    red = reduce_rubp(both_bins(1, 1))
    kinds = {}
    for role in red.roles:
        kinds[role[0]] = kinds.get(role[0], 0) + 1
    # subset sums of {1, 1} are {0, 1, 2}: pads span 4B - |sums| + 2 slots
    assert kinds == {"clique": 48, "pad": 3, "stop": 3, "tick": 2}
    ticks = [role for role in red.roles if role[0] == "tick"]
    assert ticks == [("tick", 1, 2, 1), ("tick", 1, 2, 2)]


def test_reduction_guards():
    with pytest.raises(ValueError):
        reduce_rubp(both_bins(1))  # sum 1 not divisible by 2
    with pytest.raises(ValueError):
        reduce_rubp(RubpInstance(bins=2, items=()))
    # three units all shared by one pair overload it: 3 > 2 * bin_sum = 2
    with pytest.raises(ValueError):
        reduce_rubp(RubpInstance(bins=3, items=((1, (1, 2)),) * 3))


def test_reduction_expansion_cap():
    with pytest.raises(CapExceeded):
        reduce_rubp(both_bins(1, 1), expansion_cap=1000)


def test_witness_splits_into_bin_components():
    r = both_bins(1, 1)
    red = reduce_rubp(r)
    _, partition = rubp_brute(r)
    witness = rubp_witness(red, partition)
    assert len(witness) == 2
    left, _ = delete_vertices(red.expanded.graph, witness)
    assert pairs(left) == red.constants["pair_bound"]
    sizes = sorted(len(c) for c in components(left))
    # one component per bin plus one pendant remnant per deleted heavy vertex
    assert sizes == [2, 2, 1735, 1735]


def test_witness_rejects_bad_partitions():
    r = both_bins(1, 1)
    red = reduce_rubp(r)
    with pytest.raises(ValueError):
        rubp_witness(red, ((0, 1), ()))  # bin sums off
    with pytest.raises(ValueError):
        rubp_witness(red, ((0,), (0,)))  # item placed twice
    wide = RubpInstance(bins=3, items=((1, (1, 2)), (1, (2, 3)), (1, (1, 3))))
    with pytest.raises(ValueError):
        rubp_witness(reduce_rubp(wide), ((1,), (0,), (2,)))  # item 1 not allowed in bin 1


def test_param_bounds_on_example():
    red = reduce_rubp(both_bins(1, 1))
    report = check_rubp_param_bounds(red)
    assert report.clique_degree == 26
    assert report.feedback_bound == 2 * comb(24, 2) + 4 * 24 == 648
    assert report.feedback_edges <= report.feedback_bound
    assert report.spine_is_forest


def test_restricted_search_certifies_no_instance():
    red = reduce_rubp(both_bins(2))
    assert restricted_min_pairs(red) > red.constants["pair_bound"]


def test_forward_soundness_small_sweep():
    # every two-bin instance with at most three items of value 1 or 2
    seen_yes = 0
    for values in [(1, 1), (2, 2), (1, 1, 2), (2, 2, 2), (1, 2), (2,)]:
        r = both_bins(*values)
        yes, partition = rubp_brute(r)
        if sum(values) % 2:
            assert not yes
            continue
        red = reduce_rubp(r)
        if yes:
            seen_yes += 1
            witness = rubp_witness(red, partition)
            assert len(witness) == red.constants["budget"]
    assert seen_yes == 3


def test_file_round_trip_feeds_reducer():
    text = format_bin_packing(2, [(1, (1, 2)), (1, (1, 2))])
    bins, items = parse_bin_packing(text)
    red = reduce_rubp(RubpInstance(bins=bins, items=tuple(items)))
    assert red.constants["pair_bound"] == 3_008_492
