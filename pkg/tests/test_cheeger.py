from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheegermod import generators as gen
from cheegermod.cheeger import (
    cheeger_constant_exact,
    crossing_edges,
    cut_ratio,
    sweep_cut,
    verify_cheeger_sandwich,
)
from cheegermod.corpus import corpus
from cheegermod.graph import Graph, GraphError
from cheegermod.spectral import LaplacianOperator, SolverConfig, lambda2

from conftest import oracle_cheeger, oracle_lambda2, simple_graphs

DENSE = SolverConfig(dense_cutoff=10_000)


def test_sweep_k2():
    cut = sweep_cut(gen.complete(2), [1.0, -1.0])
    assert cut.side_s.tolist() == [0]
    assert cut.cut_size == 1 and len(cut.crossing_edges) == 1
    assert cut.ratio == 1
    assert cut.certificate_bound == pytest.approx(2.0)


def test_sweep_c4():
    g = gen.cycle(4)
    cut = sweep_cut(g, [1.0, 0.0, -1.0, 0.0], check=True)
    # prefixes in sweep order 0,1,3,2: ratios 2/2, 2/4, 2/2
    assert cut.side_s.tolist() == [0, 1]
    assert cut.cut_size == 2 and cut.volume == 4
    assert cut.exact_ratio == Fraction(1, 2)
    assert cut.ratio <= np.sqrt(2) and cut.rayleigh_certificate == pytest.approx(1.0)


def test_sweep_dumbbell_with_fiedler(dumbbell):
    x = lambda2(LaplacianOperator(dumbbell, "normalized"), DENSE).vector
    cut = sweep_cut(dumbbell, x)
    assert cut.side_s.tolist() in ([0, 1, 2], [3, 4, 5])
    assert cut.exact_ratio == Fraction(1, 7)
    assert cut.crossing_edges.tolist() == [[2, 3]]
    assert oracle_cheeger(dumbbell) == Fraction(1, 7)


def test_sweep_errors(two_triangles):
    with pytest.raises(GraphError, match="constant"):
        sweep_cut(gen.cycle(5), np.ones(5))
    with pytest.raises(GraphError, match="constant"):
        g = gen.star(3)
        sweep_cut(g, np.sqrt(g.degrees.astype(float)))
    with pytest.raises(GraphError, match="disconnected"):
        sweep_cut(two_triangles, np.arange(6.0))
    with pytest.raises(GraphError, match="isolated"):
        sweep_cut(Graph.from_edges(3, [(0, 1)]), [1.0, 0, -1])
    with pytest.raises(ValueError):
        sweep_cut(gen.cycle(4), [1.0, 2.0])


def test_pick_min_tie_prefers_balanced():
    from cheegermod.cheeger import _pick_min

    assert _pick_min(np.array([1, 2, 3]), np.array([2, 4, 4])) == 1
    assert _pick_min(np.array([2, 1]), np.array([4, 2])) == 0
    assert _pick_min(np.array([3, 1, 1]), np.array([3, 2, 2])) == 1


def test_sweep_c6_linear_vector():
    g = gen.cycle(6)
    cut = sweep_cut(g, [3.0, 2.0, 1.0, -1.0, -2.0, -3.0])
    assert cut.volume == 6
    assert cut.exact_ratio == Fraction(1, 3)


@pytest.mark.parametrize("g, expected", [
    (gen.path(3), Fraction(1)),
    (gen.two_triangles_bridge(), Fraction(1, 7)),
    (gen.complete(4), Fraction(2, 3)),
])
def test_exact_examples(g, expected):
    assert oracle_cheeger(g) == expected
    cut = cheeger_constant_exact(g)
    assert cut.exact_ratio == expected
    assert cut_ratio(g, cut.side_s) == expected
    assert cut.rayleigh_certificate is None


def test_exact_dumbbell_side(dumbbell):
    cut = cheeger_constant_exact(dumbbell)
    assert cut.side_s.tolist() in ([0, 1, 2], [3, 4, 5])


def test_exact_limits():
    with pytest.raises(GraphError, match="limited"):
        cheeger_constant_exact(gen.cycle(21))
    with pytest.raises(GraphError):
        cheeger_constant_exact(gen.two_triangles())


@settings(max_examples=40, deadline=None)
@given(simple_graphs(min_n=2, max_n=9, connected=True))
def test_exact_matches_itertools_oracle(g):
    cut = cheeger_constant_exact(g)
    assert cut.exact_ratio == oracle_cheeger(g)
    side = set(cut.side_s.tolist())
    assert 0 < len(side) < g.n
    assert g.degree_of(cut.side_s) <= g.total_degree - g.degree_of(cut.side_s)
    want = sorted(tuple(e) for e in g.edges.tolist() if (e[0] in side) != (e[1] in side))
    assert sorted(map(tuple, cut.crossing_edges.tolist())) == want


@settings(max_examples=60, deadline=None)
@given(simple_graphs(min_n=2, max_n=14, connected=True), st.integers(0, 2**32 - 1))
def test_sweep_certificate_and_dominance(g, seed):
    x = np.random.default_rng(seed).standard_normal(g.n)
    cut = sweep_cut(g, x, check=True)
    assert cut.ratio <= cut.certificate_bound + 1e-9
    assert cheeger_constant_exact(g).exact_ratio <= cut.exact_ratio
    assert len(crossing_edges(g, cut.side_s)) == cut.cut_size
    assert cut.side_s.size and cut.side_s.size < g.n


def test_sweep_certificate_uses_deflated_quotient():
    g = gen.grid(4)
    rng = np.random.default_rng(3)
    k = LaplacianOperator(g, "normalized").kernel_direction()
    x = rng.standard_normal(g.n)
    a = sweep_cut(g, x)
    b = sweep_cut(g, x + 5.0 * k)
    assert a.rayleigh_certificate == pytest.approx(b.rayleigh_certificate, rel=1e-9)
    assert a.side_s.tolist() == b.side_s.tolist()


@pytest.mark.parametrize("g, lam, h", [
    (gen.path(3), 1.0, 1.0),
    (gen.cycle(4), 1.0, 0.5),
])
def test_sandwich_examples(g, lam, h):
    rep = verify_cheeger_sandwich(g)
    assert rep.lambda2 == pytest.approx(lam, abs=1e-12)
    assert rep.h_exact == pytest.approx(h)
    assert rep.lower == pytest.approx(lam / 2)
    assert rep.upper == pytest.approx(np.sqrt(2 * lam))
    assert rep.holds


def test_sandwich_c4_lower_bound_is_tight():
    rep = verify_cheeger_sandwich(gen.cycle(4))
    assert rep.h_exact == pytest.approx(rep.lower, abs=1e-12)


def test_sandwich_uses_dense_even_above_cutoff():
    g = gen.grid(4)
    rep = verify_cheeger_sandwich(g, SolverConfig(dense_cutoff=2))
    assert rep.lambda2 == pytest.approx(oracle_lambda2(g), abs=1e-12)


def test_sandwich_corpus_small():
    for name, g in corpus(max_n=10):
        assert verify_cheeger_sandwich(g).holds, name
