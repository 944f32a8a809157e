"""Budget functions and their exact-split combination.

A budget function maps a deletion budget b in [0, k] to the best objective
achievable by spending exactly b deletions inside one part of a graph.
Independent parts combine by a min-plus convolution: the combined value at
b is the cheapest way to split b across the parts, each part paying its
own function.  Folding the parts one at a time gives the classic table
T[a][b] = min over b' of T[a-1][b-b'] + f_a(b') in O(parts * k^2).

Infinity is the float("inf") sentinel, never a large integer: finite
entries stay exact Python ints, and any sum involving the sentinel is the
sentinel again.

Combining the empty list yields the identically-zero function (empty sum;
leftover budget permitted).  For non-empty lists the split is exact, so
e.g. combining [inf, 0] with [inf, 0] gives [inf, inf, 0].
"""
from __future__ import annotations

from dataclasses import dataclass

INFINITY = float("inf")


@dataclass(frozen=True)
class BudgetFunction:
    """Values indexed by budget 0..k; ``split_tables`` is an opaque witness aid."""

    values: tuple
    split_tables: tuple | None = None

    @property
    def max_budget(self) -> int:
        return len(self.values) - 1

    def __call__(self, b: int):
        return self.values[b]

    def is_non_increasing_while_finite(self) -> bool:
        prev = None
        for v in self.values:
            if v == INFINITY:
                continue
            if prev is not None and v > prev:
                return False
            prev = v
        return True


def _as_values(f) -> tuple:
    values = tuple(f.values if isinstance(f, BudgetFunction) else f)
    for v in values:
        if v != INFINITY and (not isinstance(v, int) or v < 0):
            raise ValueError(f"budget function entries are non-negative ints or inf, got {v!r}")
    return values


def convolve(f, g, k: int) -> tuple:
    """Min-plus convolution over exact splits, truncated to budgets 0..k.

    Entries beyond either input's domain count as infinity.
    """
    f = tuple(f)
    g = tuple(g)
    out = []
    for b in range(k + 1):
        best = INFINITY
        for bp in range(min(b, len(g) - 1) + 1):
            if b - bp >= len(f):
                continue
            left, right = f[b - bp], g[bp]
            if left == INFINITY or right == INFINITY:
                continue
            if left + right < best:
                best = left + right
        out.append(best)
    return tuple(out)


def combine(fs, k: int, track_splits: bool = True) -> BudgetFunction:
    """Combine budget functions over exact splits of every budget 0..k.

    With ``track_splits`` the result keeps suffix tables (suffix a is the
    combination of fs[a:]) so :func:`recover_split` can walk forwards and
    hand the smallest budget to the earliest function on ties.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    seqs = [_as_values(f) for f in fs]
    if not seqs:
        zeros = (0,) * (k + 1)
        return BudgetFunction(values=zeros, split_tables=((), (zeros,)) if track_splits else None)
    suffixes: list[tuple] = [(0,) + (INFINITY,) * k]
    for f in reversed(seqs):
        suffixes.append(convolve(suffixes[-1], f, k))
    suffixes.reverse()  # suffixes[a] combines seqs[a:]
    tables = (tuple(seqs), tuple(suffixes)) if track_splits else None
    return BudgetFunction(values=suffixes[0], split_tables=tables)


def recover_split(combined: BudgetFunction, b: int) -> list[int]:
    """One exact split realizing combined(b): per-function budgets, in order.

    Ties resolve by giving the smallest budget to the earliest function.
    Requires the combine call to have tracked splits.
    """
    if combined.split_tables is None:
        raise ValueError("combine() was called without split tracking")
    seqs, suffixes = combined.split_tables
    if not (0 <= b < len(combined.values)):
        raise ValueError(f"budget {b} outside the combined domain")
    target = combined.values[b]
    if target == INFINITY:
        raise ValueError(f"no feasible split at budget {b}")
    if not seqs:
        return []
    split: list[int] = []
    remaining = b
    for a, f in enumerate(seqs):
        for ba in range(remaining + 1):
            part = f[ba] if ba < len(f) else INFINITY
            rest = suffixes[a + 1][remaining - ba]
            if part != INFINITY and rest != INFINITY and part + rest == target:
                split.append(ba)
                remaining -= ba
                target = rest
                break
        else:  # pragma: no cover - contradicts combined(b) being finite
            raise AssertionError("split reconstruction failed")
    return split
