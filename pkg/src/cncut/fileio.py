"""Plain-text instance formats (all 1-indexed, UTF-8, LF).

Graph files::

    c comment
    p cnc <n> <m>
    b <budget> <pair bound>     (optional, at most once)
    e <u> <v>                   (1 <= u < v <= n, no duplicates)

Bin-packing inputs (items with a value and an allowed pair of bins)::

    r <bins>
    a <value> <bin1> <bin2>

Multicolored-clique inputs (k classes of n vertices, cross edges only)::

    m <k> <n>
    e <class1> <index1> <class2> <index2>

Writers emit a canonical ordering so identical data produces identical
bytes: header, budget line, then edges sorted.
"""
from __future__ import annotations

from .errors import FormatError
from .graph import Graph, Instance


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: {what} is not an integer: {tok!r}") from None


def parse_graph(text: str) -> tuple[Graph, int | None, int | None]:
    """Parse a graph file; returns (graph, budget, pair bound), latter two optional."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    budget = bound = None
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: repeated problem line")
            if len(toks) != 4 or toks[1] != "cnc":
                raise FormatError(f"line {lineno}: expected 'p cnc <n> <m>'")
            n = _int(toks[2], lineno, "vertex count")
            m = _int(toks[3], lineno, "edge count")
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative size in problem line")
        elif kind == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: expected 'e <u> <v>'")
            u = _int(toks[1], lineno, "endpoint")
            v = _int(toks[2], lineno, "endpoint")
            if not (1 <= u < v <= n):
                raise FormatError(f"line {lineno}: edge ({u}, {v}) must satisfy 1 <= u < v <= n")
            if (u, v) in seen:
                raise FormatError(f"line {lineno}: duplicate edge ({u}, {v})")
            seen.add((u, v))
            edges.append((u - 1, v - 1))
        elif kind == "b":
            if n is None:
                raise FormatError(f"line {lineno}: budget before problem line")
            if budget is not None:
                raise FormatError(f"line {lineno}: repeated budget line")
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: expected 'b <k> <x>'")
            budget = _int(toks[1], lineno, "budget")
            bound = _int(toks[2], lineno, "pair bound")
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")
    if n is None:
        raise FormatError("missing problem line")
    if len(edges) != m:
        raise FormatError(f"problem line promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges), budget, bound


def format_graph(g: Graph, budget: int | None = None, bound: int | None = None) -> str:
    if not g.is_unit():
        raise ValueError("graph files carry unit weights only; expand first")
    lines = [f"p cnc {g.n} {g.edge_count}"]
    if budget is not None:
        if bound is None:
            raise ValueError("a budget line needs both budget and pair bound")
        lines.append(f"b {budget} {bound}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    g, budget, bound = parse_graph(text)
    if budget is None:
        raise FormatError("instance file is missing its 'b <k> <x>' line")
    return Instance(graph=g, budget=budget, pair_bound=bound)


def parse_bin_packing(text: str):
    """Parse a bin-packing file into (bins, items) with items (value, (b1, b2))."""
    bins = None
    items: list[tuple[int, tuple[int, int]]] = []
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "r":
            if bins is not None:
                raise FormatError(f"line {lineno}: repeated header")
            if len(toks) != 2:
                raise FormatError(f"line {lineno}: expected 'r <bins>'")
            bins = _int(toks[1], lineno, "bin count")
            if bins < 1:
                raise FormatError(f"line {lineno}: need at least one bin")
        elif kind == "a":
            if bins is None:
                raise FormatError(f"line {lineno}: item before header")
            if len(toks) != 4:
                raise FormatError(f"line {lineno}: expected 'a <value> <bin1> <bin2>'")
            value = _int(toks[1], lineno, "item value")
            b1 = _int(toks[2], lineno, "bin")
            b2 = _int(toks[3], lineno, "bin")
            if value < 1:
                raise FormatError(f"line {lineno}: item values are positive")
            if not (1 <= b1 <= bins and 1 <= b2 <= bins and b1 != b2):
                raise FormatError(f"line {lineno}: bins must be distinct and within range")
            items.append((value, (min(b1, b2), max(b1, b2))))
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")
    if bins is None:
        raise FormatError("missing 'r <bins>' header")
    return bins, items


def format_bin_packing(bins: int, items) -> str:
    lines = [f"r {bins}"]
    lines.extend(f"a {value} {b1} {b2}" for value, (b1, b2) in items)
    return "\n".join(lines) + "\n"


def parse_multicolored(text: str):
    """Parse a multicolored-clique file into (k, n, edges) with 1-based endpoints."""
    header = None
    edges: list[tuple[int, int, int, int]] = []
    seen = set()
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "m":
            if header is not None:
                raise FormatError(f"line {lineno}: repeated header")
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: expected 'm <k> <n>'")
            header = (_int(toks[1], lineno, "class count"), _int(toks[2], lineno, "class size"))
            if header[0] < 1 or header[1] < 1:
                raise FormatError(f"line {lineno}: class count and size must be positive")
        elif kind == "e":
            if header is None:
                raise FormatError(f"line {lineno}: edge before header")
            if len(toks) != 5:
                raise FormatError(f"line {lineno}: expected 'e <class1> <idx1> <class2> <idx2>'")
            c1 = _int(toks[1], lineno, "class")
            i1 = _int(toks[2], lineno, "index")
            c2 = _int(toks[3], lineno, "class")
            i2 = _int(toks[4], lineno, "index")
            k, n = header
            if not (1 <= c1 <= k and 1 <= c2 <= k) or c1 == c2:
                raise FormatError(f"line {lineno}: endpoints must lie in distinct classes")
            if not (1 <= i1 <= n and 1 <= i2 <= n):
                raise FormatError(f"line {lineno}: vertex index out of range")
            if c1 > c2:
                c1, i1, c2, i2 = c2, i2, c1, i1
            key = (c1, i1, c2, i2)
            if key in seen:
                raise FormatError(f"line {lineno}: duplicate edge")
            seen.add(key)
            edges.append(key)
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")
    if header is None:
        raise FormatError("missing 'm <k> <n>' header")
    return header[0], header[1], edges


def format_multicolored(k: int, n: int, edges) -> str:
    lines = [f"m {k} {n}"]
    lines.extend(f"e {c1} {i1} {c2} {i2}" for c1, i1, c2, i2 in sorted(edges))
    return "\n".join(lines) + "\n"
