"""Graph Laplacians and second-eigenpair solvers.

Two variants are supported: the combinatorial Laplacian ``L = D - A`` and the
normalized Laplacian ``D^{-1/2} L D^{-1/2}``. Small graphs go through a dense
symmetric eigendecomposition; larger ones through a Lanczos (default) or
shifted power iteration on the orthogonal complement of the known kernel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .graph import GraphError

__all__ = [
    "LaplacianOperator",
    "SolverConfig",
    "SpectralEstimate",
    "check_lambda2_ordering",
    "fiedler_vector",
    "lambda2",
    "laplacian_matvec",
    "rayleigh_quotient",
]

VARIANTS = ("combinatorial", "normalized")


@dataclass(frozen=True)
class SolverConfig:
    """Eigensolver knobs.

    ``max_iterations=None`` means ``10 * n + 1000`` matrix-vector products.
    ``method`` picks the iterative solver: ``"lanczos"`` or ``"power"``.
    """

    tolerance: float = 1e-8
    max_iterations: int | None = None
    dense_cutoff: int = 64
    seed: int = 0
    method: str = "lanczos"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.dense_cutoff < 2:
            raise ValueError("dense_cutoff must be >= 2")
        if self.method not in ("lanczos", "power"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")

    def iteration_budget(self, n):
        return 10 * n + 1000 if self.max_iterations is None else self.max_iterations


@dataclass(frozen=True, eq=False)
class SpectralEstimate:
    lambda2: float
    vector: np.ndarray
    rayleigh: float
    residual: float
    iterations: int
    solver: str  # "dense", "iterative" or "components"
    converged: bool = True


class LaplacianOperator:
    """Matrix-free Laplacian of ``graph`` (``variant`` combinatorial or normalized)."""

    def __init__(self, graph, variant="normalized"):
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if variant == "normalized" and graph.n and (graph.degrees == 0).any():
            v = int(np.flatnonzero(graph.degrees == 0)[0])
            raise GraphError(f"normalized Laplacian undefined: vertex {v} is isolated")
        self.graph = graph
        self.variant = variant
        self.n = graph.n
        self._adj = graph.adjacency
        self._deg = graph.degrees.astype(np.float64)
        if variant == "normalized":
            self._dis = 1.0 / np.sqrt(self._deg)

    def matvec(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.variant == "combinatorial":
            return self._deg * x - self._adj @ x
        return x - self._dis * (self._adj @ (self._dis * x))

    __matmul__ = matvec

    def kernel_direction(self):
        """Unit vector spanning the kernel on a connected graph."""
        if self.variant == "combinatorial":
            k = np.ones(self.n)
        else:
            k = np.sqrt(self._deg)
        return k / np.linalg.norm(k)

    def spectral_upper_bound(self):
        """A number no smaller than the largest eigenvalue."""
        if self.variant == "normalized":
            return 2.0
        return 2.0 * float(self._deg.max()) if self.n else 0.0

    def to_dense(self):
        a = self._adj.toarray()
        if self.variant == "combinatorial":
            return np.diag(self._deg) - a
        return np.eye(self.n) - self._dis[:, None] * a * self._dis[None, :]


def laplacian_matvec(op, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (op.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({op.n},)")
    return op.matvec(x)


def rayleigh_quotient(op, x):
    x = np.asarray(x, dtype=np.float64)
    return float(x @ op.matvec(x)) / float(x @ x)


def _finish(op, x, iterations, solver, lam=None, converged=True):
    k = op.kernel_direction()
    x = x - (x @ k) * k
    x = x / np.linalg.norm(x)
    # sign convention: first entry above half the max magnitude is positive
    i = int(np.argmax(np.abs(x) > 0.5 * np.abs(x).max()))
    if x[i] < 0:
        x = -x
    y = op.matvec(x)
    rho = float(x @ y)
    residual = float(np.linalg.norm(y - rho * x))
    x.setflags(write=False)
    return SpectralEstimate(
        lambda2=max(rho if lam is None else float(lam), 0.0),
        vector=x,
        rayleigh=rho,
        residual=residual,
        iterations=iterations,
        solver=solver,
        converged=converged,
    )


def _component_estimate(op, labels):
    # any vector constant on components is in the kernel; split comp 0 vs rest
    inside = labels == 0
    if op.variant == "normalized":
        w = op._deg
    else:
        w = np.ones(op.n)
    y = np.where(inside, 1.0 / w[inside].sum(), -1.0 / w[~inside].sum())
    x = y * np.sqrt(w) if op.variant == "normalized" else y
    x = x / np.linalg.norm(x)
    x.setflags(write=False)
    r = float(np.linalg.norm(op.matvec(x)))
    return SpectralEstimate(0.0, x, 0.0, r, 0, "components", True)


def _dense(op):
    vals, vecs = np.linalg.eigh(op.to_dense())
    return _finish(op, vecs[:, 1], 0, "dense", lam=vals[1])


def _lanczos(op, cfg, x0, krylov_dim=300):
    """Explicitly restarted Lanczos with full reorthogonalization.

    Every Krylov vector is kept orthogonal to the kernel direction so the
    smallest Ritz value approximates the second eigenvalue.
    """
    n = op.n
    k = op.kernel_direction()
    budget = cfg.iteration_budget(n)
    dim = max(2, min(n - 1, krylov_dim))
    x = x0
    used = 0
    while True:
        Q = np.empty((dim, n))
        alpha = np.empty(dim)
        beta = np.empty(dim)
        q = x - (x @ k) * k
        q /= np.linalg.norm(q)
        j = 0
        for j in range(dim):
            Q[j] = q
            w = op.matvec(q)
            used += 1
            alpha[j] = q @ w
            # two passes of classical Gram-Schmidt; the kernel is projected out
            # on every pass since rounding feeds it back in
            for _ in range(2):
                w -= (w @ k) * k
                w -= Q[:j + 1].T @ (Q[:j + 1] @ w)
            b = np.linalg.norm(w)
            beta[j] = b
            if b < 1e-13 or used >= budget:
                break
            if j % 10 == 9:
                theta, s = eigh_tridiagonal(alpha[:j + 1], beta[:j], select="i", select_range=(0, 0))
                if abs(b * s[-1, 0]) < 0.1 * cfg.tolerance:
                    break
            q = w / b
        size = j + 1
        if size == 1:
            theta, s = np.array([alpha[0]]), np.ones((1, 1))
        else:
            theta, s = eigh_tridiagonal(alpha[:size], beta[:size - 1], select="i", select_range=(0, 0))
        x = s[:, 0] @ Q[:size]
        est = _finish(op, x, used, "iterative")
        if est.residual <= cfg.tolerance:
            return est
        if used >= budget:
            return _finish(op, x, used, "iterative", converged=False)


def _power(op, cfg, x0):
    """Power iteration on ``c I - Op`` restricted to the kernel complement."""
    k = op.kernel_direction()
    c = op.spectral_upper_bound()
    budget = cfg.iteration_budget(op.n)
    x = x0 - (x0 @ k) * k
    x /= np.linalg.norm(x)
    for it in range(1, budget + 1):
        y = op.matvec(x)
        rho = x @ y
        if np.linalg.norm(y - rho * x) <= cfg.tolerance:
            return _finish(op, x, it, "iterative")
        x = c * x - y
        x -= (x @ k) * k
        x /= np.linalg.norm(x)
    return _finish(op, x, budget, "iterative", converged=False)


def lambda2(op, cfg=None):
    """Estimate the second-smallest eigenvalue of ``op`` and its eigenvector.

    Disconnected graphs short-circuit to ``lambda2 = 0`` with a component
    indicator. Non-convergence is reported through ``converged=False``.
    """
    cfg = cfg or SolverConfig()
    n = op.n
    if n < 2:
        raise GraphError("lambda2 needs at least two vertices")
    ncomp, labels = op.graph.components()
    if ncomp > 1:
        return _component_estimate(op, labels)
    if n <= cfg.dense_cutoff:
        return _dense(op)
    rng = np.random.default_rng(cfg.seed)
    x0 = rng.standard_normal(n)
    if cfg.method == "power":
        return _power(op, cfg, x0)
    return _lanczos(op, cfg, x0)


def fiedler_vector(op, cfg=None):
    """Unit vector orthogonal to the kernel direction attaining ``lambda2``."""
    return lambda2(op, cfg).vector


@dataclass(frozen=True)
class OrderingReport:
    lambda2_normalized: float
    lambda2_combinatorial: float
    holds: bool


def check_lambda2_ordering(g, cfg=None, tol=1e-9):
    """Compare second eigenvalues of the normalized and combinatorial Laplacians."""
    cfg = cfg or SolverConfig()
    if (g.degrees == 0).any():
        raise GraphError("ordering check needs a graph without isolated vertices")
    ln = lambda2(LaplacianOperator(g, "normalized"), cfg).lambda2
    lc = lambda2(LaplacianOperator(g, "combinatorial"), cfg).lambda2
    return OrderingReport(ln, lc, bool(ln <= lc + tol))
