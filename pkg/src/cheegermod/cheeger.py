"""Degree-weighted sweep cuts and the exact Cheeger constant for small graphs.

The ratio of a cut ``S`` is ``|E(S, V-S)| / min(deg(S), deg(V-S))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import GraphError
from .spectral import LaplacianOperator, SolverConfig, lambda2

__all__ = [
    "CutResult",
    "SandwichReport",
    "cheeger_constant_exact",
    "crossing_edges",
    "cut_ratio",
    "sweep_cut",
    "verify_cheeger_sandwich",
]

EXACT_LIMIT = 20


@dataclass(frozen=True, eq=False)
class CutResult:
    """``side_s`` is the side of smaller degree (``S`` itself on ties)."""

    side_s: np.ndarray
    crossing_edges: np.ndarray
    cut_size: int
    volume: int  # min(deg(S), deg(V - S))
    rayleigh_certificate: float | None = None

    @property
    def ratio(self):
        return self.cut_size / self.volume

    @property
    def exact_ratio(self):
        return Fraction(self.cut_size, self.volume)

    @property
    def certificate_bound(self):
        if self.rayleigh_certificate is None:
            return None
        return float(np.sqrt(2.0 * max(self.rayleigh_certificate, 0.0)))


def crossing_edges(g, side):
    """Edges of ``g`` with exactly one endpoint in ``side``."""
    mask = np.zeros(g.n, dtype=bool)
    mask[np.asarray(side, dtype=np.int64)] = True
    e = g.edges
    return e[mask[e[:, 0]] != mask[e[:, 1]]]


def cut_ratio(g, side):
    """Exact degree-weighted ratio of the cut ``(side, V - side)``."""
    side = np.asarray(side, dtype=np.int64)
    vol = g.degree_of(side)
    den = min(vol, g.total_degree - vol)
    if den == 0:
        raise GraphError("cut with an empty (zero-degree) side has no ratio")
    return Fraction(len(crossing_edges(g, side)), den)


def _require_cuttable(g):
    if g.n < 2:
        raise GraphError("need at least two vertices to cut")
    if (g.degrees == 0).any():
        raise GraphError("graph has isolated vertices")
    if not g.is_connected():
        raise GraphError("graph is disconnected; split components first")


def _pick_min(cuts, vols):
    """Index of the smallest ``cuts/vols``; ties go to the larger ``vols``, then lower index."""
    r = cuts / vols
    cand = np.flatnonzero(r <= r.min() * (1 + 1e-9) + 1e-300)
    best = int(cand[0])
    for i in cand[1:]:
        i = int(i)
        lhs = int(cuts[i]) * int(vols[best])
        rhs = int(cuts[best]) * int(vols[i])
        if lhs < rhs or (lhs == rhs and vols[i] > vols[best]):
            best = i
    return best


def _sweep_arrays(g, order):
    n = g.n
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    e = g.edges
    pu, pv = pos[e[:, 0]], pos[e[:, 1]]
    lo, hi = np.minimum(pu, pv), np.maximum(pu, pv)
    # prefix of size k (first k vertices of order) cuts the edge iff lo < k <= hi
    diff = np.zeros(n + 1, dtype=np.int64)
    np.add.at(diff, lo + 1, 1)
    np.add.at(diff, hi + 1, -1)
    cuts = np.cumsum(diff)[1:n]
    vol = np.cumsum(g.degrees[order])[: n - 1]
    return cuts, vol


def sweep_cut(g, x, check=False):
    """Best prefix cut of the vertices sorted by ``x[v] / sqrt(deg v)`` descending.

    ``x`` lives in the normalized-Laplacian domain. The returned cut satisfies
    ``ratio <= sqrt(2 * rho)`` where ``rho`` is the normalized Rayleigh
    quotient of ``x`` after projecting out the kernel, reported as
    ``rayleigh_certificate``. With ``check=True`` every prefix's crossing
    count is recomputed from scratch.
    """
    _require_cuttable(g)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({g.n},)")
    op = LaplacianOperator(g, "normalized")
    k = op.kernel_direction()
    xd = x - (x @ k) * k
    if np.linalg.norm(xd) <= 1e-12 * max(np.linalg.norm(x), 1e-300):
        raise GraphError("sweep vector is constant on the degree-weighted scale")
    rho = float(xd @ op.matvec(xd)) / float(xd @ xd)

    y = x / np.sqrt(g.degrees)
    order = np.lexsort((np.arange(g.n), -y))
    cuts, vol = _sweep_arrays(g, order)
    if check:
        for i in range(g.n - 1):
            assert len(crossing_edges(g, order[: i + 1])) == cuts[i]
    den = np.minimum(vol, g.total_degree - vol)
    best = _pick_min(cuts, den)
    prefix = order[: best + 1]
    if vol[best] > g.total_degree - vol[best]:
        prefix = order[best + 1:]
    side = np.sort(prefix)
    return CutResult(side, crossing_edges(g, side), int(cuts[best]), int(den[best]), rho)


def cheeger_constant_exact(g, limit=EXACT_LIMIT, chunk=1 << 16):
    """Exact minimum ratio over all proper subsets, by enumeration.

    Vertex ``n-1`` is pinned outside ``S`` so each cut is visited once.
    """
    if g.n > limit:
        raise GraphError(f"exhaustive Cheeger search limited to n <= {limit}, got {g.n}")
    _require_cuttable(g)
    n, e, deg = g.n, g.edges, g.degrees
    total = g.total_degree
    bits = (np.int64(1) << np.arange(n - 1, dtype=np.int64))
    best = None
    for start in range(1, 1 << (n - 1), chunk):
        masks = np.arange(start, min(start + chunk, 1 << (n - 1)), dtype=np.int64)
        member = (masks[:, None] & bits[None, :]) != 0
        member = np.hstack([member, np.zeros((masks.size, 1), dtype=bool)])
        vol = member.astype(np.int64) @ deg
        cut = (member[:, e[:, 0]] != member[:, e[:, 1]]).sum(axis=1)
        den = np.minimum(vol, total - vol)
        i = _pick_min(cut, den)
        cand = (int(cut[i]), int(den[i]), int(masks[i]))
        if best is None:
            best = cand
        else:
            lhs, rhs = cand[0] * best[1], best[0] * cand[1]
            if lhs < rhs or (lhs == rhs and cand[1] > best[1]):
                best = cand
    c, d, mask = best
    side = np.flatnonzero((mask >> np.arange(n)) & 1)
    if g.degree_of(side) > total - g.degree_of(side):
        side = np.setdiff1d(np.arange(n), side)
    return CutResult(side, crossing_edges(g, side), c, d, None)


@dataclass(frozen=True)
class SandwichReport:
    lambda2: float
    lower: float
    h_exact: float
    upper: float
    holds: bool


def verify_cheeger_sandwich(g, cfg=None, tol=1e-9):
    """Check ``lambda2/2 <= h(G) <= sqrt(2 lambda2)`` with a dense eigensolve."""
    cfg = cfg or SolverConfig()
    if g.n > EXACT_LIMIT:
        raise GraphError(f"sandwich check limited to n <= {EXACT_LIMIT}")
    dense = SolverConfig(cfg.tolerance, cfg.max_iterations, max(g.n, 2), cfg.seed, cfg.method)
    lam = lambda2(LaplacianOperator(g, "normalized"), dense).lambda2
    h = cheeger_constant_exact(g).ratio
    lower, upper = lam / 2.0, float(np.sqrt(2.0 * lam))
    return SandwichReport(lam, lower, h, upper, bool(lower - tol <= h <= upper + tol))
