"""Tree decompositions: file format, validation, heuristic, nice form.

The file format is the PACE-2017 .td layout: an `s td <bags> <max bag
size> <n>` header, one `b <id> <vertices...>` line per bag, then tree
edges between bag ids, everything 1-based, `c` lines ignored.

The heuristic eliminates a minimum-fill vertex at a time (ties to the
smallest index) and connects each elimination bag to the bag of the
earliest-eliminated remaining neighbour, chaining components so the
result is always one tree.

Nicification roots the tree, binarizes joins with balanced split (the
height feeds the approximation grid, so shallow is better), and morphs
between neighbouring bags by forgetting before introducing.  No
rebalancing beyond that: heights are whatever the input shape gives.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError
from .graph import DisjointSets, Graph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]
    n: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_td(td: TreeDecomposition, g: Graph) -> None:
    """Check the three axioms and the tree shape; raise FormatError if broken."""
    t = len(td.bags)
    if t == 0:
        raise FormatError("a decomposition needs at least one bag")
    if td.n != g.n:
        raise FormatError(f"decomposition is for {td.n} vertices, graph has {g.n}")
    for a, b in td.edges:
        if not (0 <= a < t and 0 <= b < t) or a == b:
            raise FormatError(f"bad tree edge {a}-{b}")
    if len(td.edges) != t - 1:
        raise FormatError(f"{t} bags need {t - 1} tree edges, got {len(td.edges)}")
    dsu = DisjointSets(t)
    for a, b in td.edges:
        dsu.union(a, b)
    if len({dsu.find(i) for i in range(t)}) != 1:
        raise FormatError("tree edges do not connect the bags")
    for bag in td.bags:
        for v in bag:
            if not (0 <= v < g.n):
                raise FormatError(f"bag vertex {v} out of range")
    holding: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, bag in enumerate(td.bags):
        for v in bag:
            holding[v].append(i)
    for v in range(g.n):
        if not holding[v]:
            raise FormatError(f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags):
            raise FormatError(f"edge {u}-{v} is covered by no bag")
    # occurrences of each vertex must form a subtree
    neighbours: dict[int, list[int]] = {i: [] for i in range(t)}
    for a, b in td.edges:
        neighbours[a].append(b)
        neighbours[b].append(a)
    for v in range(g.n):
        inside = set(holding[v])
        seen = {holding[v][0]}
        queue = [holding[v][0]]
        while queue:
            cur = queue.pop()
            for nxt in neighbours[cur]:
                if nxt in inside and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if seen != inside:
            raise FormatError(f"bags holding vertex {v} are not connected")


def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: expected 's td <bags> <size> <n>'")
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed header numbers") from None
        elif parts[0] == "b":
            if header is None:
                raise FormatError(f"line {lineno}: bag before header")
            try:
                idx = int(parts[1])
                members = [int(x) for x in parts[2:]]
            except (ValueError, IndexError):
                raise FormatError(f"line {lineno}: malformed bag line") from None
            if not (1 <= idx <= header[0]):
                raise FormatError(f"line {lineno}: bag id {idx} out of range")
            if idx in bags:
                raise FormatError(f"line {lineno}: duplicate bag {idx}")
            if any(not (1 <= v <= header[2]) for v in members):
                raise FormatError(f"line {lineno}: bag vertex out of range")
            if len(members) > header[1]:
                raise FormatError(f"line {lineno}: bag larger than the declared bound")
            bags[idx] = frozenset(v - 1 for v in members)
        else:
            if header is None:
                raise FormatError(f"line {lineno}: edge before header")
            try:
                a, b = (int(x) for x in parts)
            except ValueError:
                raise FormatError(f"line {lineno}: malformed edge line") from None
            if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                raise FormatError(f"line {lineno}: edge endpoint out of range")
            edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    if set(bags) != set(range(1, header[0] + 1)):
        raise FormatError("every bag id must get exactly one 'b' line")
    return TreeDecomposition(
        bags=tuple(bags[i] for i in range(1, header[0] + 1)),
        edges=tuple(edges),
        n=header[2],
    )


def read_td(text: str, g: Graph) -> TreeDecomposition:
    td = parse_td(text)
    validate_td(td, g)
    return td


def format_td(td: TreeDecomposition) -> str:
    size = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {size} {td.n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def heuristic_td(g: Graph) -> TreeDecomposition:
    if g.n == 0:
        return TreeDecomposition(bags=(frozenset(),), edges=(), n=0)
    work = {v: set(g.adjacency[v]) for v in range(g.n)}
    order: list[int] = []
    elim_bag: dict[int, frozenset[int]] = {}
    position: dict[int, int] = {}
    while work:
        best = None
        for v in sorted(work):
            nb = work[v]
            fill = sum(
                1
                for i, a in enumerate(sorted(nb))
                for b in sorted(nb)[i + 1 :]
                if b not in work[a]
            )
            if best is None or fill < best[0]:
                best = (fill, v)
        v = best[1]
        nb = sorted(work[v])
        elim_bag[v] = frozenset([v] + nb)
        position[v] = len(order)
        order.append(v)
        for i, a in enumerate(nb):
            for b in nb[i + 1 :]:
                work[a].add(b)
                work[b].add(a)
        for a in nb:
            work[a].discard(v)
        del work[v]
    bag_index = {v: i for i, v in enumerate(order)}
    edges = []
    roots = []
    for v in order:
        later = [u for u in elim_bag[v] if u != v and position[u] > position[v]]
        if later:
            parent = min(later, key=lambda u: position[u])
            edges.append((bag_index[v], bag_index[parent]))
        else:
            roots.append(bag_index[v])
    for a, b in zip(roots, roots[1:]):  # disconnected graph: chain the roots
        edges.append((a, b))
    td = TreeDecomposition(
        bags=tuple(elim_bag[v] for v in order), edges=tuple(edges), n=g.n
    )
    validate_td(td, g)
    return td


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: frozenset[int]
    vertex: int | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: tuple[NiceNode, ...]  # children always precede parents
    root: int
    heights: tuple[int, ...]  # distance from the root, per node

    @property
    def height(self) -> int:
        return max(self.heights)

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1


def nicify(td: TreeDecomposition) -> NiceTreeDecomposition:
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex, children) -> int:
        if kind == "leaf":
            assert not bag
        elif kind == "introduce":
            assert vertex in bag and bag - {vertex} == nodes[children[0]].bag
        elif kind == "forget":
            assert vertex not in bag and bag | {vertex} == nodes[children[0]].bag
        else:
            assert all(nodes[c].bag == bag for c in children) and len(children) == 2
        nodes.append(NiceNode(kind, frozenset(bag), vertex, tuple(children)))
        return len(nodes) - 1

    def fresh_chain(target: frozenset[int]) -> int:
        node = add("leaf", frozenset(), None, ())
        bag: set[int] = set()
        for v in sorted(target):
            bag.add(v)
            node = add("introduce", frozenset(bag), v, (node,))
        return node

    def morph(node: int, target: frozenset[int]) -> int:
        bag = set(nodes[node].bag)
        for v in sorted(bag - target):
            bag.remove(v)
            node = add("forget", frozenset(bag), v, (node,))
        for v in sorted(target - bag):
            bag.add(v)
            node = add("introduce", frozenset(bag), v, (node,))
        return node

    neighbours: dict[int, list[int]] = {i: [] for i in range(len(td.bags))}
    for a, b in td.edges:
        neighbours[a].append(b)
        neighbours[b].append(a)

    def build(t: int, parent: int) -> int:
        children = [c for c in neighbours[t] if c != parent]
        bag = td.bags[t]
        if not children:
            return fresh_chain(bag)
        tops = [morph(build(c, t), bag) for c in sorted(children)]
        while len(tops) > 1:  # balanced pairwise joins
            nxt = []
            for i in range(0, len(tops) - 1, 2):
                nxt.append(add("join", bag, None, (tops[i], tops[i + 1])))
            if len(tops) % 2:
                nxt.append(tops[-1])
            tops = nxt
        return tops[0]

    top = morph(build(0, -1), frozenset())
    heights = [0] * len(nodes)
    stack = [top]
    while stack:
        i = stack.pop()
        for c in nodes[i].children:
            heights[c] = heights[i] + 1
            stack.append(c)
    return NiceTreeDecomposition(nodes=tuple(nodes), root=top, heights=tuple(heights))
