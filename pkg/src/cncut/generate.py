"""Seeded random instance generation.

The seed fully determines the output: the RNG is a private
random.Random(seed) and edges are probed in the fixed order
(0,1), (0,2), ..., (n-2, n-1), so the same call produces byte-identical
files across runs and platforms.
"""
from __future__ import annotations

import random

from .graph import Graph


def random_graph(n: int, p: float, seed: int) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if not (0.0 <= p <= 1.0):
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)
