"""Decomposition parsing, validation, heuristic construction, nice form."""
import pytest

from cncut.errors import FormatError
from cncut.generate import random_graph
from cncut.graph import Graph
from cncut.tdecomp import (
    TreeDecomposition,
    format_td,
    heuristic_td,
    nicify,
    parse_td,
    read_td,
    validate_td,
)


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


SAMPLE = """c a three-bag path decomposition
s td 3 2 4
b 1 1 2
b 2 2 3
b 3 3 4
1 2
2 3
"""


def test_parse_sample():
    td = parse_td(SAMPLE)
    assert td.n == 4
    assert td.bags == (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}))
    assert td.edges == ((0, 1), (1, 2))
    assert td.width == 1
    validate_td(td, path(4))


def test_format_round_trip():
    td = parse_td(SAMPLE)
    assert parse_td(format_td(td)) == td


@pytest.mark.parametrize(
    "text",
    [
        "b 1 1\n",  # bag before header
        "s td 1 1 1\ns td 1 1 1\nb 1 1\n",  # duplicate header
        "s td 2 1 1\nb 1 1\n1 2\n",  # bag 2 missing
        "s td 1 1 1\nb 1 1\nb 1 1\n",  # duplicate bag
        "s td 1 1 2\nb 1 1 2\n",  # bag above declared size
        "s td 1 1 1\nb 1 2\n",  # vertex out of range
        "s td 2 1 1\nb 1 1\nb 2 1\n1 3\n",  # edge endpoint out of range
        "s td 1 1 1\nb 1 x\n",  # not a number
    ],
)
def test_parse_rejects(text):
    with pytest.raises(FormatError):
        parse_td(text)


def test_validate_rejects_missing_edge_cover():
    td = TreeDecomposition(
        bags=(frozenset({0, 1}), frozenset({2, 3})), edges=((0, 1),), n=4
    )
    with pytest.raises(FormatError, match="covered by no bag"):
        validate_td(td, path(4))


def test_validate_rejects_uncovered_vertex():
    td = TreeDecomposition(bags=(frozenset({0, 1}),), edges=(), n=3)
    with pytest.raises(FormatError, match="in no bag"):
        validate_td(td, Graph.from_edges(3, [(0, 1)]))


def test_validate_rejects_disconnected_occurrences():
    td = TreeDecomposition(
        bags=(frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})),
        edges=((0, 1), (1, 2)),
        n=3,
    )
    with pytest.raises(FormatError, match="not connected"):
        validate_td(td, complete(3))


def test_validate_rejects_wrong_edge_count():
    td = TreeDecomposition(bags=(frozenset({0}), frozenset({0})), edges=(), n=1)
    with pytest.raises(FormatError, match="tree edges"):
        validate_td(td, Graph.from_edges(1, []))


def test_read_td_validates():
    with pytest.raises(FormatError):
        read_td("s td 1 1 2\nb 1 1\n", path(2))


def test_heuristic_on_tree_has_width_one():
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert heuristic_td(g).width == 1


def test_heuristic_on_complete_graph():
    assert heuristic_td(complete(4)).width == 3


def test_heuristic_on_disconnected_graph():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    td = heuristic_td(g)
    validate_td(td, g)
    assert td.width == 1


def test_heuristic_valid_on_random_graphs():
    for seed in range(50):
        g = random_graph(9, (0.2, 0.5)[seed % 2], seed=2000 + seed)
        td = heuristic_td(g)  # validates internally
        assert 0 <= td.width < g.n


def test_nicify_single_bag_triangle():
    td = TreeDecomposition(bags=(frozenset({0, 1, 2}),), edges=(), n=3)
    nice = nicify(td)
    kinds = [nd.kind for nd in nice.nodes]
    assert kinds == ["leaf", "introduce", "introduce", "introduce",
                     "forget", "forget", "forget"]
    assert nice.nodes[nice.root].bag == frozenset()
    assert nice.nodes[0].bag == frozenset()


def test_nicify_structure_on_random_graphs():
    for seed in range(50):
        g = random_graph(8, 0.35, seed=2100 + seed)
        td = heuristic_td(g)
        nice = nicify(td)
        assert nice.width == td.width
        assert nice.nodes[nice.root].bag == frozenset()
        assert nice.root == len(nice.nodes) - 1
        assert nice.heights[nice.root] == 0
        forgotten = []
        for idx, nd in enumerate(nice.nodes):
            assert all(c < idx for c in nd.children)
            for c in nd.children:
                assert nice.heights[c] == nice.heights[idx] + 1
            if nd.kind == "forget":
                forgotten.append(nd.vertex)
        # every vertex leaves the tree exactly once
        assert sorted(forgotten) == sorted(set(forgotten))
        assert set(forgotten) == set(range(g.n))


def test_nicify_empty_graph():
    nice = nicify(TreeDecomposition(bags=(frozenset(),), edges=(), n=0))
    assert [nd.kind for nd in nice.nodes] == ["leaf"]
