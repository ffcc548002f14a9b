"""scikit-learn compatible clustering wrapper around the separator."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .modularity import Partition, assemble_bound, score_partition
from .partitioner import SeparatorConfig, run_separator
from .spectral import SolverConfig
from .validation import check_adjacency, check_epsilon

__all__ = ["CheegerModularityClustering"]


class CheegerModularityClustering(ClusterMixin, BaseEstimator):
    """Cluster a graph by recursive degree-weighted Cheeger cuts.

    Components are cut until each holds less than ``epsilon / 2`` of the total
    degree internally. ``X`` is a :class:`~cheegermod.graph.Graph` or a
    symmetric 0/1 adjacency matrix (dense or sparse).

    Parameters
    ----------
    epsilon : float, default=0.1
        Target weight bound in (0, 1).
    tol : float, default=1e-8
        Eigen-residual tolerance.
    max_iter : int or None, default=None
        Matrix-vector product budget per eigensolve; ``None`` means ``10n + 1000``.
    dense_cutoff : int, default=64
        Components with at most this many vertices use a dense eigensolver.
    solver : {"lanczos", "power"}, default="lanczos"
    random_state : int, default=0
        Seed of the eigensolver start vectors.

    Attributes
    ----------
    labels_ : ndarray of shape (n_vertices,)
    n_clusters_ : int
    deleted_edges_ : ndarray of shape (n_deleted, 2)
    modularity_ : float
        Score of ``labels_``, a lower bound on the graph's modularity.
    edge_contribution_, degree_tax_ : float
    run_ : SeparatorRun
    """

    def __init__(self, epsilon=0.1, tol=1e-8, max_iter=None, dense_cutoff=64,
                 solver="lanczos", random_state=0):
        self.epsilon = epsilon
        self.tol = tol
        self.max_iter = max_iter
        self.dense_cutoff = dense_cutoff
        self.solver = solver
        self.random_state = random_state

    def _config(self):
        spectral = SolverConfig(
            tolerance=self.tol,
            max_iterations=self.max_iter,
            dense_cutoff=self.dense_cutoff,
            seed=int(self.random_state),
            method=self.solver,
        )
        return SeparatorConfig(check_epsilon(self.epsilon), spectral, charge_audit=True)

    def fit(self, X, y=None):
        g = check_adjacency(X)
        if g.m == 0:
            raise ValueError("cannot cluster a graph without edges")
        run = run_separator(g, self._config())
        bound = assemble_bound(run, g)
        self.run_ = run
        self.labels_ = run.labels
        self.n_clusters_ = len(run.components)
        self.deleted_edges_ = run.deleted_edges
        self.modularity_ = bound.score
        self.edge_contribution_ = float(bound.edge_contribution)
        self.degree_tax_ = bound.degree_tax
        self.n_features_in_ = g.n
        return self

    def score(self, X, y=None):
        """Modularity of the fitted labels on ``X``."""
        check_is_fitted(self, "labels_")
        g = check_adjacency(X)
        if g.n != self.labels_.size:
            raise ValueError(f"X has {g.n} vertices, fitted on {self.labels_.size}")
        return score_partition(g, Partition(self.labels_)).score

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.pairwise = True
        return tags
