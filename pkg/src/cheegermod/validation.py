"""Input validation for the estimator API."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .graph import Graph, GraphError

__all__ = ["check_adjacency", "check_epsilon"]


def check_adjacency(X):
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a :class:`Graph` as-is, or a square symmetric 0/1 adjacency
    matrix (dense array or scipy sparse) with an empty diagonal.
    """
    if isinstance(X, Graph):
        return X
    if sp.issparse(X):
        A = sp.csr_matrix(X)
    else:
        A = np.asarray(X)
        if A.dtype == object:
            raise TypeError("adjacency must be numeric")
        if A.ndim != 2:
            raise ValueError(f"expected a 2-D adjacency matrix, got {A.ndim}-D input")
        A = sp.csr_matrix(A)
    n, n2 = A.shape
    if n != n2:
        raise ValueError(f"adjacency must be square, got shape {A.shape}")
    A.eliminate_zeros()
    if A.nnz and not np.all(A.data == 1):
        raise ValueError("adjacency entries must be 0 or 1 (unweighted graph)")
    if A.diagonal().any():
        v = int(np.flatnonzero(A.diagonal())[0])
        raise GraphError(f"self-loop at vertex {v}")
    if (A != A.T).nnz:
        raise ValueError("adjacency matrix is not symmetric")
    coo = sp.triu(A, k=1).tocoo()
    return Graph.from_edges(n, np.column_stack([coo.row, coo.col]))


def check_epsilon(epsilon):
    eps = float(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return eps
