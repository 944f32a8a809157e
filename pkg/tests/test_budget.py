from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cncut.budget import INFINITY, BudgetFunction, combine, convolve, recover_split

PROPERTY_SETTINGS = settings(
    max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def exhaustive_combine(seqs, k):
    """Reference: try every exact split of every budget."""
    out = []
    for b in range(k + 1):
        best = INFINITY
        for split in product(range(b + 1), repeat=len(seqs)):
            if sum(split) != b:
                continue
            total = 0
            for f, ba in zip(seqs, split):
                v = f[ba] if ba < len(f) else INFINITY
                if v == INFINITY:
                    total = INFINITY
                    break
                total += v
            if total < best:
                best = total
        out.append(best)
    return tuple(out)


def test_combine_two_functions_example():
    f = combine([(3, 1, 0), (2, 2, 1)], 2)
    assert f.values == (5, 3, 2)


def test_combine_exact_split_infinities():
    f = combine([(INFINITY, 0), (INFINITY, 0)], 2)
    assert f.values == (INFINITY, INFINITY, 0)


def test_combine_empty_is_zero():
    f = combine([], 3)
    assert f.values == (0, 0, 0, 0)
    assert recover_split(f, 2) == []


def test_recover_split_matches_value():
    fs = [(3, 1, 0), (2, 2, 1)]
    f = combine(fs, 2)
    split = recover_split(f, 2)
    assert sum(split) == 2
    assert sum(fs[i][b] for i, b in enumerate(split)) == f(2)


def test_recover_split_prefers_earliest_function_smallest():
    # both splits of budget 1 are optimal; the first function takes 0
    f = combine([(0, 0), (0, 0)], 1)
    assert recover_split(f, 1) == [0, 1]


def test_recover_split_requires_tracking():
    f = combine([(1, 0)], 1, track_splits=False)
    with pytest.raises(ValueError):
        recover_split(f, 1)


def test_recover_split_infeasible_budget():
    f = combine([(INFINITY, 0)], 0)
    with pytest.raises(ValueError):
        recover_split(f, 0)


def test_convolve_is_truncated():
    out = convolve((0, 1), (0, 5), 3)
    assert len(out) == 4
    assert out[3] == INFINITY


@given(data=st.data())
@PROPERTY_SETTINGS
def test_combine_matches_exhaustive(data):
    k = data.draw(st.integers(0, 6))
    n_fns = data.draw(st.integers(1, 4))
    entry = st.one_of(st.integers(0, 30), st.just(INFINITY))
    seqs = [
        tuple(data.draw(st.lists(entry, min_size=1, max_size=k + 1)))
        for _ in range(n_fns)
    ]
    f = combine(seqs, k)
    assert f.values == exhaustive_combine(seqs, k)
    for b in range(k + 1):
        if f(b) != INFINITY:
            split = recover_split(f, b)
            assert sum(split) == b
            assert sum(seqs[i][ba] for i, ba in enumerate(split)) == f(b)


@given(data=st.data())
@PROPERTY_SETTINGS
def test_combine_associative_in_effect(data):
    k = data.draw(st.integers(0, 5))
    entry = st.one_of(st.integers(0, 9), st.just(INFINITY))
    seqs = [
        tuple(data.draw(st.lists(entry, min_size=k + 1, max_size=k + 1)))
        for _ in range(3)
    ]
    left = combine([combine(seqs[:2], k).values, seqs[2]], k)
    right = combine([seqs[0], combine(seqs[1:], k).values], k)
    flat = combine(seqs, k)
    assert left.values == right.values == flat.values


def test_budget_function_monotonicity_probe():
    assert BudgetFunction((5, 3, 3, INFINITY)).is_non_increasing_while_finite()
    assert not BudgetFunction((1, 2)).is_non_increasing_while_finite()
