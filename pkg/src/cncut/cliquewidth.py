"""Labeled-expression solver: count and minimize pairs over every budget.

Expressions build a graph from labeled pieces:

    v(i)        one new vertex carrying label i
    u(A, B)     disjoint union of two sub-expressions
    j(i, j, A)  all edges between label-i and label-j vertices (i != j)
    r(i, j, A)  every label-i vertex becomes label-j

Labels are 1-based and must cover 1..max used.  Expressions must be
irredundant: a join may never see an already-present edge between its two
classes, and evaluation raises on violations instead of silently skipping
the duplicate.

The solver decides, for every deletion budget, the minimum pair count and
how many budget-sized deletion sets attain it.  Per sub-expression it
tracks signatures: a surviving component only matters through the set of
labels it carries (a join merges, all at once, every component holding
either endpoint label), so components aggregate per label set into
(label mask, survivor count, pair count) triples.  Two components with
equal masks evolve identically forever, which makes the aggregation
lossless.  Deletion happens at introduction time: each vertex is kept or
dropped, so the table per node maps (budget, signature) to the number of
deletion sets producing it, and signatures stay small.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .budget import INFINITY
from .errors import CapExceeded, FormatError
from .graph import Graph, Solution, make_solution

DEFAULT_WIDTH_CAP = 4
DEFAULT_SIZE_CAP = 14


# --- expression trees ---


@dataclass(frozen=True)
class Intro:
    label: int
    vertex: int


@dataclass(frozen=True)
class Union:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Join:
    a: int
    b: int
    child: "Node"


@dataclass(frozen=True)
class Rename:
    a: int
    b: int
    child: "Node"


Node = Intro | Union | Join | Rename


@dataclass(frozen=True)
class CwExpression:
    root: Node
    n: int
    width: int
    source: str


_TOKEN_CHARS = {"(", ")", ","}


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _TOKEN_CHARS:
            tokens.append((c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append((text[i:j], i))
            i = j
        elif c in "vujr":
            tokens.append((c, i))
            i += 1
        else:
            raise FormatError(f"unexpected character {c!r} at offset {i}")
    return tokens


def parse_cw(text: str) -> CwExpression:
    """Parse the nested-call expression syntax; vertices are numbered in
    source order starting at 0."""
    tokens = _tokenize(text)
    pos = 0
    counter = [0]
    labels: set[int] = set()

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of expression")
        tok, off = tokens[pos]
        if expected is not None and tok != expected:
            raise FormatError(f"expected {expected!r} at offset {off}, got {tok!r}")
        pos += 1
        return tok, off

    def take_label():
        tok, off = take()
        if not tok.isdigit():
            raise FormatError(f"expected a label at offset {off}, got {tok!r}")
        value = int(tok)
        if value < 1:
            raise FormatError(f"labels are 1-based, got {value} at offset {off}")
        labels.add(value)
        return value

    def expr() -> Node:
        tok, off = take()
        if tok == "v":
            take("(")
            lab = take_label()
            take(")")
            node = Intro(lab, counter[0])
            counter[0] += 1
            return node
        if tok == "u":
            take("(")
            left = expr()
            take(",")
            right = expr()
            take(")")
            return Union(left, right)
        if tok in ("j", "r"):
            take("(")
            a = take_label()
            take(",")
            b = take_label()
            take(",")
            child = expr()
            take(")")
            if a == b:
                raise FormatError(f"labels must differ at offset {off}")
            return Join(a, b, child) if tok == "j" else Rename(a, b, child)
        raise FormatError(f"expected an operation at offset {off}, got {tok!r}")

    root = expr()
    if pos != len(tokens):
        raise FormatError(f"trailing input at offset {tokens[pos][1]}")
    width = max(labels)
    if labels != set(range(1, width + 1)):
        missing = sorted(set(range(1, width + 1)) - labels)
        raise FormatError(f"labels must cover 1..{width}, missing {missing}")
    return CwExpression(root=root, n=counter[0], width=width, source=text)


def format_cw(expr: CwExpression) -> str:
    def render(node: Node) -> str:
        if isinstance(node, Intro):
            return f"v({node.label})"
        if isinstance(node, Union):
            return f"u({render(node.left)},{render(node.right)})"
        op = "j" if isinstance(node, Join) else "r"
        return f"{op}({node.a},{node.b},{render(node.child)})"

    return render(expr.root)


def evaluate_cw(expr: CwExpression) -> tuple[Graph, tuple[int, ...]]:
    """Build the concrete graph; returns it with each vertex's final label.

    Raises FormatError on a redundant join (an i-j edge that already
    exists) or a join over two classes that are both empty is fine; only
    duplicate edges are rejected.
    """
    adjacency: dict[int, set[int]] = {v: set() for v in range(expr.n)}

    def walk(node: Node) -> dict[int, int]:
        if isinstance(node, Intro):
            return {node.vertex: node.label}
        if isinstance(node, Union):
            left = walk(node.left)
            right = walk(node.right)
            left.update(right)
            return left
        labels = walk(node.child)
        if isinstance(node, Rename):
            return {v: node.b if lab == node.a else lab for v, lab in labels.items()}
        side_a = [v for v, lab in labels.items() if lab == node.a]
        side_b = [v for v, lab in labels.items() if lab == node.b]
        for u in side_a:
            for w in side_b:
                if w in adjacency[u]:
                    raise FormatError(
                        f"redundant join: edge {min(u, w)}-{max(u, w)} already exists"
                    )
                adjacency[u].add(w)
                adjacency[w].add(u)
        return labels

    final = walk(expr.root)
    g = Graph.from_edges(
        expr.n,
        [(u, w) for u in range(expr.n) for w in adjacency[u] if u < w],
    )
    return g, tuple(final[v] for v in range(expr.n))


# --- signature push-forward ---


def _sig_canon(entries) -> tuple:
    merged: dict[int, list[int]] = {}
    for mask, alpha, beta in entries:
        cur = merged.setdefault(mask, [0, 0])
        cur[0] += alpha
        cur[1] += beta
    return tuple(
        (mask, alpha, beta) for mask, (alpha, beta) in sorted(merged.items())
    )


def _sig_union(s1: tuple, s2: tuple) -> tuple:
    return _sig_canon(list(s1) + list(s2))


def _sig_join(sig: tuple, a: int, b: int) -> tuple:
    bit_a, bit_b = 1 << (a - 1), 1 << (b - 1)
    alpha_a = sum(alpha for mask, alpha, _ in sig if mask & bit_a)
    alpha_b = sum(alpha for mask, alpha, _ in sig if mask & bit_b)
    if alpha_a == 0 or alpha_b == 0:
        return sig
    both = bit_a | bit_b
    touched_mask = 0
    touched_alpha = 0
    rest = []
    for mask, alpha, beta in sig:
        if mask & both:
            touched_mask |= mask
            touched_alpha += alpha
        else:
            rest.append((mask, alpha, beta))
    rest.append((touched_mask, touched_alpha, comb(touched_alpha, 2)))
    return _sig_canon(rest)


def _sig_rename(sig: tuple, a: int, b: int) -> tuple:
    bit_a, bit_b = 1 << (a - 1), 1 << (b - 1)
    return _sig_canon(
        ((mask & ~bit_a) | bit_b if mask & bit_a else mask, alpha, beta)
        for mask, alpha, beta in sig
    )


def _sig_value(sig: tuple) -> int:
    return sum(beta for _, _, beta in sig)


def _sig_size(sig: tuple) -> int:
    return sum(alpha for _, alpha, _ in sig)


# --- counting tables ---


def _node_size(node: Node) -> int:
    if isinstance(node, Intro):
        return 1
    if isinstance(node, Union):
        return _node_size(node.left) + _node_size(node.right)
    return _node_size(node.child)


def _build_tables(root: Node, kmax: int) -> dict[int, dict]:
    """Bottom-up tables: id(node) -> {(budget, signature): subset count}."""
    tables: dict[int, dict] = {}

    def walk(node: Node) -> dict:
        if isinstance(node, Intro):
            table = {(0, ((1 << (node.label - 1), 1, 0),)): 1}
            if kmax >= 1:
                table[(1, ())] = 1
        elif isinstance(node, Union):
            left = walk(node.left)
            right = walk(node.right)
            table = {}
            for (k1, s1), c1 in left.items():
                for (k2, s2), c2 in right.items():
                    if k1 + k2 > kmax:
                        continue
                    key = (k1 + k2, _sig_union(s1, s2))
                    table[key] = table.get(key, 0) + c1 * c2
        else:
            inner = walk(node.child)
            push = _sig_join if isinstance(node, Join) else _sig_rename
            table = {}
            for (k, sig), c in inner.items():
                key = (k, push(sig, node.a, node.b))
                table[key] = table.get(key, 0) + c
        size = _node_size(node)
        for k in range(0, min(kmax, size) + 1):
            total = sum(c for (kk, _), c in table.items() if kk == k)
            assert total == comb(size, k), "every deletion subset appears once"
        tables[id(node)] = table
        return table

    walk(root)
    return tables


@dataclass(frozen=True)
class CwRow:
    """Best pair count at one exact budget: the number of optimal deletion
    sets of that size, and one of them."""

    budget: int
    best_pairs: int
    optimum_count: int
    witness: tuple[int, ...]


def count_cw(
    expr: CwExpression,
    kmax: int | None = None,
    width_cap: int = DEFAULT_WIDTH_CAP,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> list[CwRow]:
    if expr.width > width_cap:
        raise CapExceeded("expression width", expr.width, width_cap)
    if expr.n > size_cap:
        raise CapExceeded("expression size", expr.n, size_cap)
    evaluate_cw(expr)  # reject redundant joins up front
    if kmax is None:
        kmax = expr.n
    kmax = min(kmax, expr.n)
    tables = _build_tables(expr.root, kmax)
    table = tables[id(expr.root)]
    rows = []
    for k in range(kmax + 1):
        best = INFINITY
        count = 0
        best_sig = None
        for (kk, sig) in sorted(table):
            if kk != k:
                continue
            value = _sig_value(sig)
            if value < best:
                best, count, best_sig = value, table[(kk, sig)], sig
            elif value == best:
                count += table[(kk, sig)]
        witness = tuple(sorted(_backtrack(expr.root, tables, k, best_sig)))
        rows.append(
            CwRow(budget=k, best_pairs=int(best), optimum_count=count, witness=witness)
        )
    return rows


def _backtrack(node: Node, tables: dict, k: int, sig: tuple) -> list[int]:
    """First-in-sorted-order deletion set reaching (k, sig) at this node."""
    if isinstance(node, Intro):
        return [node.vertex] if k == 1 else []
    if isinstance(node, Union):
        left = tables[id(node.left)]
        right = tables[id(node.right)]
        for (k1, s1) in sorted(left):
            if k1 > k:
                continue
            for (k2, s2) in sorted(right):
                if k2 != k - k1:
                    continue
                if _sig_union(s1, s2) == sig:
                    return _backtrack(node.left, tables, k1, s1) + _backtrack(
                        node.right, tables, k2, s2
                    )
        raise AssertionError("union signature not reproducible")
    inner = tables[id(node.child)]
    push = _sig_join if isinstance(node, Join) else _sig_rename
    for (kk, s) in sorted(inner):
        if kk == k and push(s, node.a, node.b) == sig:
            return _backtrack(node.child, tables, kk, s)
    raise AssertionError("signature not reproducible through this operation")


def solve_cw(
    expr: CwExpression,
    budget: int,
    width_cap: int = DEFAULT_WIDTH_CAP,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> Solution:
    """Best deletion set of size at most ``budget`` on the evaluated graph."""
    if expr.width > width_cap:
        raise CapExceeded("expression width", expr.width, width_cap)
    if expr.n > size_cap:
        raise CapExceeded("expression size", expr.n, size_cap)
    if not (0 <= budget <= expr.n):
        raise ValueError("budget must lie in [0, n]")
    g, _ = evaluate_cw(expr)
    tables = _build_tables(expr.root, budget)
    table = tables[id(expr.root)]
    best = None
    for (k, sig) in sorted(table):
        key = (_sig_value(sig), k, sig)
        if best is None or key < best:
            best = key
    value, k, sig = best
    witness = sorted(_backtrack(expr.root, tables, k, sig))
    solution = make_solution(g, witness, optimal=True)
    assert solution.pair_count == value, "signature value must match a recount"
    return solution
