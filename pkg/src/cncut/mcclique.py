"""Multicolored-clique hardness instances.

The source problem: k color classes of n vertices each (n a power of
two), edges across classes only; decide whether picking one vertex per
class yields a clique.  ``reduce_mc`` restates the question as a unit
weight critical-node-cut instance.  Every class vertex is encoded by
log2(n) bits; a core clique holds one vertex per (class, bit position,
bit value); deleting the encodings of a clique isolates exactly one
adjacency vertex per class pair plus a fixed crowd of dummies, and
nothing else can detach that many vertices from the big component.

Roles:

``("core", i, w, z)``
    bit value z at position w of class i's encoding.
``("hub", q)``
    member of the hub clique tying all surviving cores together; there
    is one more hub than the deletion budget, so one always survives.
``("adjacency", c1, i1, c2, i2)``
    per-edge vertex wired to the 2 log2(n) cores encoding its endpoints.
``("dummy", c1, c2, w1, w2, z1, z2, t)``
    t-th filler vertex on the core pair (c1, w1, z1) x (c2, w2, z2);
    group size exceeds the edge count so isolating dummies only pays
    when deletions spread over the classes as an encoding would.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .errors import CapExceeded
from .graph import Graph, Instance, delete_vertices, pairs

DEFAULT_CHOICE_CAP = 10_000_000
DEFAULT_VERTEX_CAP = 1_000_000


@dataclass(frozen=True)
class McInstance:
    """k classes of n vertices; edges (c1, i1, c2, i2) with c1 < c2, 1-based."""

    colors: int
    size: int
    edges: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self) -> None:
        if self.colors < 1 or self.size < 1:
            raise ValueError("need at least one class and one vertex per class")
        seen = set()
        for c1, i1, c2, i2 in self.edges:
            if not (1 <= c1 < c2 <= self.colors):
                raise ValueError(f"edge classes ({c1}, {c2}) must be ordered and distinct")
            if not (1 <= i1 <= self.size and 1 <= i2 <= self.size):
                raise ValueError("vertex index out of range")
            if (c1, i1, c2, i2) in seen:
                raise ValueError("duplicate edge")
            seen.add((c1, i1, c2, i2))

    def has_edge(self, c1: int, i1: int, c2: int, i2: int) -> bool:
        if c1 > c2:
            c1, i1, c2, i2 = c2, i2, c1, i1
        return (c1, i1, c2, i2) in self.edges


def mc_brute(
    m: McInstance, cap: int = DEFAULT_CHOICE_CAP
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide by trying every choice of one vertex index per class."""
    if m.size**m.colors > cap:
        raise CapExceeded("choice count", m.size**m.colors, cap)
    for choice in product(range(1, m.size + 1), repeat=m.colors):
        if all(
            m.has_edge(c1, choice[c1 - 1], c2, choice[c2 - 1])
            for c1, c2 in combinations(range(1, m.colors + 1), 2)
        ):
            return True, choice
    return False, None


def _bit(index: int, position: int) -> int:
    # bit `position` (1-based) of the 0-based vertex index
    return (index - 1) >> (position - 1) & 1


@dataclass(frozen=True)
class McReduction:
    source: McInstance
    instance: Instance
    roles: tuple[tuple, ...]
    constants: dict


def reduce_mc(m: McInstance, vertex_cap: int = DEFAULT_VERTEX_CAP) -> McReduction:
    """Build the unit-weight cut instance equivalent to the clique question."""
    n = m.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"class size {n} must be a power of two, at least two")
    k = m.colors
    bits = n.bit_length() - 1
    group = len(m.edges) + 1
    total = 2 * k * bits + (k * bits + 1) + len(m.edges) + 4 * comb(k, 2) * bits**2 * group
    if total > vertex_cap:
        raise CapExceeded("reduced vertex count", total, vertex_cap)

    roles: list[tuple] = []
    edges: list[tuple[int, int]] = []

    def add(role: tuple) -> int:
        roles.append(role)
        return len(roles) - 1

    core = {
        (i, w, z): add(("core", i, w, z))
        for i in range(1, k + 1)
        for w in range(1, bits + 1)
        for z in (0, 1)
    }
    edges.extend(combinations(core.values(), 2))
    hubs = [add(("hub", q)) for q in range(1, k * bits + 2)]
    edges.extend(combinations(hubs, 2))
    edges.extend((h, g) for h in hubs for g in core.values())

    for c1, i1, c2, i2 in sorted(m.edges):
        h = add(("adjacency", c1, i1, c2, i2))
        for w in range(1, bits + 1):
            edges.append((h, core[(c1, w, _bit(i1, w))]))
            edges.append((h, core[(c2, w, _bit(i2, w))]))

    for c1, c2 in combinations(range(1, k + 1), 2):
        for w1, w2, z1, z2 in product(range(1, bits + 1), range(1, bits + 1), (0, 1), (0, 1)):
            for t in range(1, group + 1):
                d = add(("dummy", c1, c2, w1, w2, z1, z2, t))
                edges.append((d, core[(c1, w1, z1)]))
                edges.append((d, core[(c2, w2, z2)]))

    assert len(roles) == total
    g = Graph.from_edges(total, edges)
    # every non-clique vertex hangs off the cores only, so cores plus hubs
    # form a vertex cover of size 3 * k * bits + 1
    covered = set(core.values()) | set(hubs)
    assert all(u in covered or v in covered for u, v in g.edges())

    budget = k * bits
    big = total - budget - comb(k, 2) - group * comb(k, 2) * bits**2
    pair_bound = comb(big, 2)
    constants = {
        "bits": bits,
        "dummy_group_size": group,
        "budget": budget,
        "pair_bound": pair_bound,
    }
    return McReduction(
        source=m,
        instance=Instance(graph=g, budget=budget, pair_bound=pair_bound),
        roles=tuple(roles),
        constants=constants,
    )


def mc_witness(red: McReduction, choice) -> frozenset[int]:
    """Deletion set from a multicolored clique: the chosen vertices' encodings.

    Verified by exact recomputation before returning.
    """
    m = red.source
    choice = tuple(choice)
    if len(choice) != m.colors:
        raise ValueError("need one chosen vertex per class")
    if any(not 1 <= j <= m.size for j in choice):
        raise ValueError("chosen vertex index out of range")
    for c1, c2 in combinations(range(1, m.colors + 1), 2):
        if not m.has_edge(c1, choice[c1 - 1], c2, choice[c2 - 1]):
            raise ValueError(f"classes {c1} and {c2} pick non-adjacent vertices")
    index = {role: v for v, role in enumerate(red.roles)}
    bits = red.constants["bits"]
    deleted = frozenset(
        index[("core", i, w, _bit(choice[i - 1], w))]
        for i in range(1, m.colors + 1)
        for w in range(1, bits + 1)
    )
    assert len(deleted) == red.constants["budget"]
    remaining, _ = delete_vertices(red.instance.graph, deleted)
    assert pairs(remaining) <= red.constants["pair_bound"]
    return deleted
