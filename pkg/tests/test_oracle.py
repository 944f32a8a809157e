import pytest

from cncut.errors import CapExceeded
from cncut.graph import Graph, Instance
from cncut.oracle import minimum_by_size, solve_bruteforce


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_p5_budget1():
    opt, count, sol = solve_bruteforce(Instance(path(5), 1))
    assert opt == 2
    assert sol.pair_count == 2
    assert sol.deleted == frozenset({2})
    assert count == 1


def test_p3_budget1_zero_with_unique_witness():
    opt, count, sol = solve_bruteforce(Instance(path(3), 1))
    assert opt == 0
    assert count == 1
    assert sol.deleted == frozenset({1})


def test_budget_zero():
    opt, count, sol = solve_bruteforce(Instance(path(4), 0))
    assert (opt, count) == (6, 1)
    assert sol.deleted == frozenset()


def test_count_is_for_exact_size():
    # triangle, budget 1: every single deletion leaves one edge = 1 pair
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    opt, count, sol = solve_bruteforce(Instance(g, 1))
    assert opt == 1
    assert count == 3
    assert sol.deleted == frozenset({0})


def test_early_exit_still_counts_at_budget():
    # opt hits 0 at size 1 but the size-2 count must still be exact:
    # P3 minus any 2 vertices leaves <= 1 vertex, all 3 pairs hit 0
    opt, count, _ = solve_bruteforce(Instance(path(3), 2))
    assert opt == 0
    assert count == 3


def test_minimum_by_size_rows():
    rows = minimum_by_size(path(4), 3)
    assert [r[0] for r in rows] == [6, 1, 0, 0]
    assert rows[1][1] == 2  # deleting either middle vertex leaves 1 pair
    assert rows[1][2] == (1,)


def test_minimum_by_size_respects_undeletable():
    g = Graph.from_edges(3, [(0, 1), (1, 2)], deletable=(True, False, True))
    rows = minimum_by_size(g, 2)
    assert rows[0][0] == 3
    assert rows[1][0] == 1  # best is removing an endpoint, middle is protected
    assert rows[2][0] == 0  # both endpoints gone, the middle sits alone


def test_enumeration_cap():
    g = Graph.from_edges(40, [])
    with pytest.raises(CapExceeded):
        solve_bruteforce(Instance(g, 20), cap=1000)


def test_weighted_input_rejected():
    g = Graph.from_edges(2, [(0, 1)], weight=(2, 1))
    with pytest.raises(ValueError):
        solve_bruteforce(Instance(g, 1))
