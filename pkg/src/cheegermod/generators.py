"""Deterministic generators for the graph families used in tests and experiments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "FAMILIES",
    "GeneratorSpec",
    "apollonian",
    "complete",
    "cycle",
    "generate",
    "grid",
    "path",
    "random_cubic",
    "star",
    "torus_grid",
    "two_triangles",
    "two_triangles_bridge",
]

FAMILIES = (
    "star",
    "cycle",
    "path",
    "grid",
    "torus-grid",
    "apollonian",
    "complete",
    "random-cubic",
    "two-triangles-bridge",
)

RANDOMIZED = ("apollonian", "random-cubic")


@dataclass(frozen=True)
class GeneratorSpec:
    """``family`` plus its size parameter; ``seed`` only matters for randomized families."""

    family: str
    size: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")


def star(m):
    """K_{1,m}: vertex 0 is the center."""
    if m < 1:
        raise ValueError("star needs m >= 1")
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def path(n):
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(k, cols=None):
    """k x cols grid, row-major ids; ``2k(k-1)`` edges when square."""
    cols = k if cols is None else cols
    if k < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    ids = np.arange(k * cols).reshape(k, cols)
    horiz = np.column_stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()])
    vert = np.column_stack([ids[:-1, :].ravel(), ids[1:, :].ravel()])
    return Graph.from_edges(k * cols, np.vstack([horiz, vert]))


def torus_grid(k):
    """k x k grid with wraparound; k >= 3 keeps it simple."""
    if k < 3:
        raise ValueError("torus-grid needs k >= 3")
    ids = np.arange(k * k).reshape(k, k)
    horiz = np.column_stack([ids.ravel(), np.roll(ids, -1, axis=1).ravel()])
    vert = np.column_stack([ids.ravel(), np.roll(ids, -1, axis=0).ravel()])
    return Graph.from_edges(k * k, np.vstack([horiz, vert]))


def two_triangles_bridge():
    """Dumbbell: triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


def two_triangles():
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])


def apollonian(depth, seed=0):
    """Random Apollonian network with ``(3**depth - 1) // 2`` inserted vertices.

    Starts from triangle 0-1-2; each insertion picks an interior face
    uniformly at random, adds a vertex joined to its three corners and
    replaces the face by three. That is the vertex count of the complete
    depth-``depth`` subdivision; the result is a planar triangulation with
    ``m = 3n - 6``.
    """
    if depth < 0:
        raise ValueError("apollonian needs depth >= 0")
    inserts = (3**depth - 1) // 2
    rng = np.random.default_rng(seed)
    faces = np.empty((1 + 2 * inserts, 3), dtype=np.int64)
    faces[0] = (0, 1, 2)
    nfaces = 1
    edges = np.empty((3 + 3 * inserts, 2), dtype=np.int64)
    edges[:3] = [(0, 1), (0, 2), (1, 2)]
    picks = rng.integers(0, np.arange(1, 1 + 2 * inserts, 2)) if inserts else []
    for i, f in enumerate(picks):
        v = 3 + i
        a, b, c = faces[f]
        edges[3 + 3 * i:6 + 3 * i] = [(a, v), (b, v), (c, v)]
        faces[f] = (a, b, v)
        faces[nfaces] = (a, v, c)
        faces[nfaces + 1] = (v, b, c)
        nfaces += 2
    return Graph.from_edges(3 + inserts, edges)


def random_cubic(n, seed=0, max_tries=10_000):
    """Uniform simple 3-regular graph via the pairing model with full restarts."""
    if n < 4 or (3 * n) % 2:
        raise ValueError(f"random-cubic needs even n >= 4 (3n even), got n={n}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), 3)
    for _ in range(max_tries):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        if (lo == hi).any():
            continue
        if np.unique(lo * n + hi).size != lo.size:
            continue
        return Graph.from_edges(n, np.column_stack([lo, hi]))
    raise RuntimeError(f"no simple pairing found in {max_tries} tries")


def generate(spec, size=None, seed=None):
    """Build a graph from a :class:`GeneratorSpec` or ``(family, size, seed)``.

    Sizes: ``star`` leaves, ``path``/``cycle``/``complete``/``random-cubic``
    vertices, ``grid``/``torus-grid`` side length, ``apollonian`` depth;
    ``two-triangles-bridge`` ignores the size.
    """
    if not isinstance(spec, GeneratorSpec):
        spec = GeneratorSpec(spec, 0 if size is None else int(size), 0 if seed is None else int(seed))
    f, k = spec.family, spec.size
    if f == "star":
        return star(k)
    if f == "cycle":
        return cycle(k)
    if f == "path":
        return path(k)
    if f == "grid":
        return grid(k)
    if f == "torus-grid":
        return torus_grid(k)
    if f == "complete":
        return complete(k)
    if f == "apollonian":
        return apollonian(k, seed=spec.seed)
    if f == "random-cubic":
        return random_cubic(k, seed=spec.seed)
    return two_triangles_bridge()
