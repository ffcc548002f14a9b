"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own numerics: Laplacians
are assembled entry by entry from the edge list, cuts and partitions are
enumerated with itertools and scored with Fractions.
"""
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from cheegermod import generators as gen
from cheegermod.graph import Graph


def dense_laplacian(g, variant):
    n = g.n
    L = np.zeros((n, n))
    deg = [0] * n
    for u, v in g.edges.tolist():
        L[u, v] -= 1.0
        L[v, u] -= 1.0
        deg[u] += 1
        deg[v] += 1
    for v in range(n):
        L[v, v] = deg[v]
    if variant == "normalized":
        s = np.array([1.0 / np.sqrt(d) for d in deg])
        L = s[:, None] * L * s[None, :]
    return L


def oracle_lambda2(g, variant="normalized"):
    return float(np.linalg.eigvalsh(dense_laplacian(g, variant))[1])


def oracle_cheeger(g):
    """Minimum of |E(S, V-S)| / min(deg S, deg V-S) over every proper subset."""
    edges = [tuple(e) for e in g.edges.tolist()]
    deg = g.degrees.tolist()
    total = sum(deg)
    best = None
    for r in range(1, g.n):
        for s in combinations(range(g.n), r):
            s = set(s)
            vol = sum(deg[v] for v in s)
            den = min(vol, total - vol)
            cut = sum((u in s) != (v in s) for u, v in edges)
            val = Fraction(cut, den)
            best = val if best is None or val < best else best
    return best


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def oracle_score(g, blocks):
    m = g.m
    edges = g.edges.tolist()
    deg = g.degrees.tolist()
    q = Fraction(0)
    for b in blocks:
        b = set(b)
        inside = sum(1 for u, v in edges if u in b and v in b)
        d = sum(deg[v] for v in b)
        q += Fraction(inside, m) - Fraction(d, 2 * m) ** 2
    return q


def oracle_modularity(g):
    return max(oracle_score(g, p) for p in set_partitions(range(g.n)))


@st.composite
def simple_graphs(draw, min_n=1, max_n=12, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    if connected:
        perm = draw(st.permutations(range(n)))
        tree = [(perm[i], perm[draw(st.integers(0, i - 1))]) for i in range(1, n)]
        keys = {tuple(sorted(e)) for e in chosen}
        chosen = list(keys | {tuple(sorted(e)) for e in tree})
    return Graph.from_edges(n, chosen)


@pytest.fixture
def dumbbell():
    return gen.two_triangles_bridge()


@pytest.fixture
def two_triangles():
    return gen.two_triangles()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# filled by the acceptance tests, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
