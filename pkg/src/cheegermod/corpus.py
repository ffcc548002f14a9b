"""Built-in test corpus: every small connected graph plus named fixtures."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from . import generators as gen
from .graph import Graph

__all__ = ["connected_graphs", "corpus", "named_fixtures"]


@lru_cache(maxsize=None)
def connected_graphs(n):
    """All connected graphs on ``n`` vertices, one per isomorphism class.

    Each edge set is a bitmask; its canonical form is the minimum mask over
    all vertex permutations.
    """
    if n == 1:
        return (Graph.from_edges(1, []),)
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(len(pairs))) & 1).astype(bool)
    canon = masks.copy()
    for perm in permutations(range(n)):
        target = np.array([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs])
        canon = np.minimum(canon, bits @ (np.int64(1) << target))
    out = []
    for mask in np.unique(canon):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if g.is_connected():
            out.append(g)
    return tuple(out)


def named_fixtures():
    """Named graphs used across the suites; ``two-triangles`` is the only disconnected one."""
    fx = {
        "dumbbell": gen.two_triangles_bridge(),
        "two-triangles": gen.two_triangles(),
        "K2": gen.complete(2),
        "K3": gen.complete(3),
        "K4": gen.complete(4),
        "K5": gen.complete(5),
    }
    for k in range(2, 16):
        fx[f"star-{k}"] = gen.star(k)
    for k in (3, 4, 5, 6, 8, 10, 12, 16, 24, 32, 48, 64):
        fx[f"cycle-{k}"] = gen.cycle(k)
    for k in (3, 4, 5, 8, 12, 16, 32, 64):
        fx[f"path-{k}"] = gen.path(k)
    for k in range(2, 9):
        fx[f"grid-{k}"] = gen.grid(k)
    for k in (3, 4, 5, 6):
        fx[f"torus-{k}"] = gen.torus_grid(k)
    for d in range(0, 5):
        fx[f"apollonian-{d}"] = gen.apollonian(d, seed=0)
    for k in (10, 16, 32, 64):
        fx[f"cubic-{k}"] = gen.random_cubic(k, seed=0)
    return fx


def corpus(max_n=None, connected=True, small_up_to=6):
    """``(name, graph)`` pairs: all connected graphs on 2..``small_up_to``
    vertices followed by the named fixtures, filtered by ``max_n``."""
    out = []
    for n in range(2, small_up_to + 1):
        for i, g in enumerate(connected_graphs(n)):
            out.append((f"conn{n}-{i}", g))
    for name, g in named_fixtures().items():
        if connected and not g.is_connected():
            continue
        out.append((name, g))
    if max_n is not None:
        out = [(name, g) for name, g in out if g.n <= max_n]
    return out
