import random

import pytest

from cncut.budget import INFINITY
from cncut.errors import CapExceeded
from cncut.generate import random_graph
from cncut.graph import Graph, Instance, pairs
from cncut.maxleaf import (
    contract_safe_cycles,
    cycle_budget_values,
    path_budget_values,
    path_budget_witness,
    solve_maxleaf,
    tree_budget_function,
)
from cncut.oracle import minimum_by_size, solve_bruteforce


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_path_budget_small():
    assert path_budget_values(4, 2) == [6, 1, 0]
    assert path_budget_values(1, 1) == [0, 0]
    assert path_budget_values(2, 3) == [1, 0, 0, INFINITY]


def test_path_budget_witness_realizes_value():
    for length in range(1, 8):
        g = path(length)
        vals = path_budget_values(length, length)
        for j in range(length + 1):
            positions = path_budget_witness(length, j)
            assert len(positions) == j
            rows = minimum_by_size(g, length)
            assert vals[j] == rows[j][0]


def test_cycle_budget_small():
    assert cycle_budget_values(4, 1) == [6, 3]
    assert cycle_budget_values(3, 2) == [3, 1, 0]


def test_contract_pure_cycle_untouched():
    comps = contract_safe_cycles(cycle(5), protected=frozenset())
    assert len(comps) == 1
    assert comps[0].kind == "cycle"
    assert comps[0].graph.n == 5


def test_contract_tree_untouched():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    comps = contract_safe_cycles(g, protected=frozenset({0}))
    assert len(comps) == 1
    assert comps[0].kind == "tree"
    assert comps[0].contraction_map == {}


def test_contract_triangle_with_stem():
    # triangle 0-1-2 plus a stem 0-3; vertex 0 is protected
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    comps = contract_safe_cycles(g, protected=frozenset({0}))
    assert len(comps) == 1
    comp = comps[0]
    assert comp.kind == "tree"
    assert comp.graph.n == 2
    z = [v for v in range(2) if comp.orig_ids[v] is None][0]
    assert comp.graph.weight[z] == 3
    assert not comp.graph.deletable[z]
    assert sorted(comp.contraction_map[z]) == [0, 1, 2]
    # sizes agree with the uncontracted component
    assert pairs(comp.graph) == pairs(g)


def test_contract_theta_leaves_dangling_interior():
    # two degree-3 vertices joined by three paths: the first cycle found
    # swallows four vertices; the last path's interior vertex ends up a
    # deletable pendant on the contracted blob (parallel edges merge)
    g = Graph.from_edges(5, [(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)])
    comps = contract_safe_cycles(g, protected=frozenset({0, 4}))
    assert len(comps) == 1
    comp = comps[0]
    assert comp.kind == "tree"
    assert comp.graph.n == 2
    z = [v for v in range(2) if comp.orig_ids[v] is None][0]
    assert comp.graph.weight[z] == 4
    assert not comp.graph.deletable[z]
    assert comp.graph.deletable[1 - z]
    assert pairs(comp.graph) == pairs(g)


def test_tree_budget_single_undeletable_weight4():
    g = Graph.from_edges(1, [], weight=(4,), deletable=(False,))
    values, _ = tree_budget_function(g, 1)
    assert values == [6, INFINITY]


def test_tree_budget_star():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    values, witnesses = tree_budget_function(g, 2)
    assert values[0] == 6
    assert values[1] == 0
    assert witnesses[1] == (0,)


def test_tree_budget_matches_oracle_on_random_trees():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 8)
        edges = [(rng.randint(0, i - 1), i) for i in range(1, n)]
        g = Graph.from_edges(n, edges)
        values, witnesses = tree_budget_function(g, n)
        rows = minimum_by_size(g, n)
        for j in range(n + 1):
            assert values[j] == rows[j][0]
            assert len(witnesses[j]) == j


def test_solve_p5():
    sol = solve_maxleaf(Instance(path(5), 1))
    assert sol.pair_count == 2
    assert sol.deleted == frozenset({2})


def test_solve_cycle4():
    sol = solve_maxleaf(Instance(cycle(4), 1))
    assert sol.pair_count == 3


def test_solve_star_plus_edge():
    # star K1,3 with an extra edge closing a triangle
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    sol = solve_maxleaf(Instance(g, 1))
    opt, _, _ = solve_bruteforce(Instance(g, 1))
    assert sol.pair_count == opt


def test_branch_cap():
    g = Graph.from_edges(
        10, [(u, v) for u in range(10) for v in range(u + 1, 10)]
    )
    with pytest.raises(CapExceeded):
        solve_maxleaf(Instance(g, 1), branch_cap=3)


def test_matches_oracle_on_random_graphs():
    rng = random.Random(2024)
    for trial in range(60):
        n = rng.randint(1, 9)
        p = rng.choice([0.2, 0.4, 0.6])
        g = random_graph(n, p, seed=trial)
        k = rng.randint(0, n)
        inst = Instance(g, k)
        opt, _, _ = solve_bruteforce(inst)
        sol = solve_maxleaf(inst)
        assert sol.pair_count == opt, (trial, n, p, k)
        assert len(sol.deleted) <= k
