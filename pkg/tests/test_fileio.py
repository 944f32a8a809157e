import pytest

from cncut.errors import FormatError
from cncut.fileio import (
    format_bin_packing,
    format_graph,
    format_multicolored,
    parse_bin_packing,
    parse_graph,
    parse_instance,
    parse_multicolored,
)
from cncut.generate import random_graph
from cncut.graph import Graph


def test_parse_simple_graph():
    text = "c a comment\np cnc 3 2\ne 1 2\ne 2 3\n"
    g, budget, bound = parse_graph(text)
    assert g.n == 3
    assert sorted(g.edges()) == [(0, 1), (1, 2)]
    assert budget is None and bound is None


def test_parse_instance_with_budget_line():
    inst = parse_instance("p cnc 3 1\nb 1 0\ne 1 3\n")
    assert inst.budget == 1
    assert inst.pair_bound == 0


def test_roundtrip_identity():
    g = Graph.from_edges(5, [(0, 4), (1, 2), (0, 1)])
    text = format_graph(g, budget=2, bound=3)
    reparsed, budget, bound = parse_graph(text)
    assert reparsed == g
    assert (budget, bound) == (2, 3)
    assert format_graph(reparsed, budget=budget, bound=bound) == text


@pytest.mark.parametrize(
    "bad",
    [
        "p cnc 3\ne 1 2\n",          # malformed header
        "e 1 2\np cnc 3 1\n",        # edge before header
        "p cnc 3 2\ne 1 2\ne 1 2\n",  # duplicate edge
        "p cnc 3 1\ne 2 1\n",        # endpoints out of order
        "p cnc 3 1\ne 1 4\n",        # index out of range
        "p cnc 3 1\ne 1 1\n",        # loop
        "p cnc 3 2\ne 1 2\n",        # edge count mismatch
        "p cnc 3 0\nz 1\n",          # unknown line type
        "p cnc 3 0\nb 1\n",          # malformed budget line
    ],
)
def test_parse_errors(bad):
    with pytest.raises(FormatError):
        parse_graph(bad)


def test_missing_budget_line_for_instance():
    with pytest.raises(FormatError):
        parse_instance("p cnc 2 1\ne 1 2\n")


def test_bin_packing_roundtrip():
    text = "r 2\na 1 1 2\na 1 2 1\n"
    bins, items = parse_bin_packing(text)
    assert bins == 2
    assert items == [(1, (1, 2)), (1, (1, 2))]
    assert parse_bin_packing(format_bin_packing(bins, items))[1] == items


def test_bin_packing_errors():
    with pytest.raises(FormatError):
        parse_bin_packing("a 1 1 2\n")
    with pytest.raises(FormatError):
        parse_bin_packing("r 2\na 0 1 2\n")
    with pytest.raises(FormatError):
        parse_bin_packing("r 2\na 1 1 1\n")
    with pytest.raises(FormatError):
        parse_bin_packing("r 2\na 1 1 3\n")


def test_multicolored_roundtrip():
    k, n, edges = parse_multicolored("m 2 2\ne 1 1 2 2\ne 2 1 1 2\n")
    assert (k, n) == (2, 2)
    assert sorted(edges) == [(1, 1, 2, 2), (1, 2, 2, 1)]
    text = format_multicolored(k, n, edges)
    assert parse_multicolored(text)[2] == sorted(edges)


def test_multicolored_errors():
    with pytest.raises(FormatError):
        parse_multicolored("m 2 2\ne 1 1 1 2\n")  # same class
    with pytest.raises(FormatError):
        parse_multicolored("m 2 2\ne 1 1 2 3\n")  # index out of range
    with pytest.raises(FormatError):
        parse_multicolored("m 2 2\ne 1 1 2 2\ne 2 2 1 1\n")  # duplicate


def test_random_graph_deterministic():
    a = random_graph(12, 0.4, seed=7)
    b = random_graph(12, 0.4, seed=7)
    assert a == b
    assert format_graph(a) == format_graph(b)
    assert random_graph(12, 0.4, seed=8) != a
