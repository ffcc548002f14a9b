"""Immutable simple undirected graphs in compressed adjacency form.

Vertex ids are dense 0-based integers. Neighbor lists are stored in one
contiguous ``indices`` array delimited by ``indptr`` offsets and kept sorted,
so two graphs with the same edge set are byte-identical.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

__all__ = [
    "Graph",
    "GraphError",
    "GraphFormatError",
    "InducedSubgraph",
    "induce",
    "load_graph",
    "save_graph",
    "vertex_weights",
]


class GraphError(ValueError):
    """Raised for structurally invalid graphs (loops, multi-edges, bad ids)."""


class GraphFormatError(GraphError):
    """Parse failure while reading a graph file; carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


def _frozen(a, dtype=np.int64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


class Graph:
    """Simple undirected graph.

    Build with :meth:`from_edges`; the constructor expects an already
    canonical CSR pair and only validates it.
    """

    __slots__ = ("n", "indptr", "indices", "degrees", "__dict__")

    def __init__(self, n, indptr, indices):
        self.n = int(n)
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise GraphError("indptr must have n + 1 entries starting at 0")
        self.degrees = _frozen(np.diff(self.indptr))
        if self.indices.size % 2:
            raise GraphError("odd adjacency length; graph is not symmetric")

    @classmethod
    def from_edges(cls, n, edges):
        """Build a graph on ``n`` vertices from an iterable of ``(u, v)`` pairs.

        Self-loops and repeated edges raise :class:`GraphError` naming the
        offending edge; nothing is silently repaired.
        """
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        n = int(n)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
                raise GraphError(f"edge ({bad[0]}, {bad[1]}) has a vertex outside 0..{n - 1}")
            loops = e[:, 0] == e[:, 1]
            if loops.any():
                u = e[loops][0, 0]
                raise GraphError(f"self-loop ({u}, {u})")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            keys = lo * n + hi
            uniq, counts = np.unique(keys, return_counts=True)
            if (counts > 1).any():
                k = uniq[counts > 1][0]
                raise GraphError(f"duplicate edge ({k // n}, {k % n})")
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
        else:
            src = dst = np.zeros(0, dtype=np.int64)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst)

    @property
    def m(self):
        return self.indices.size // 2

    @property
    def total_degree(self):
        return self.indices.size

    @property
    def max_degree(self):
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree_of(self, vertices):
        """deg(S): the degree sum over a vertex subset."""
        return int(self.degrees[np.asarray(vertices, dtype=np.int64)].sum())

    @cached_property
    def edges(self):
        """``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return _frozen(np.column_stack([src[keep], self.indices[keep]]).reshape(-1, 2))

    @cached_property
    def adjacency(self):
        """Adjacency as a scipy CSR matrix of float64 ones."""
        data = np.ones(self.indices.size)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def components(self):
        """Connected component labels, numbered in order of their smallest vertex."""
        if self.n == 0:
            return 0, np.zeros(0, dtype=np.int64)
        k, labels = connected_components(self.adjacency, directed=False)
        return int(k), labels.astype(np.int64)

    def is_connected(self):
        return self.components()[0] <= 1

    def isolated_vertices(self):
        return np.flatnonzero(self.degrees == 0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.n, self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def to_bytes(self):
        return self.indptr.tobytes() + self.indices.tobytes()

    def check(self):
        """Assert every structural invariant; returns ``self``."""
        idx, ptr = self.indices, self.indptr
        if int(self.degrees.sum()) != 2 * self.m:
            raise GraphError("handshake violated")
        src = np.repeat(np.arange(self.n), self.degrees)
        if (src == idx).any():
            raise GraphError("self-loop present")
        if self.n and idx.size:
            # sorted strictly within each row
            same_row = src[1:] == src[:-1]
            if (idx[1:][same_row] <= idx[:-1][same_row]).any():
                raise GraphError("neighbor lists not strictly ascending")
        a = self.adjacency
        if (a != a.T).nnz:
            raise GraphError("adjacency is not symmetric")
        return self


def vertex_weights(g):
    """Degree-proportional weights ``deg(v) / deg(V)``; they sum to one."""
    if g.m == 0:
        raise GraphError("vertex weights are undefined on an edgeless graph")
    return g.degrees / float(g.total_degree)


@dataclass(frozen=True, eq=False)
class InducedSubgraph:
    """Subgraph of ``parent`` induced by ``vertices`` (sorted root ids).

    ``local`` is a :class:`Graph` on ``0..len(vertices)-1``; local id ``i``
    corresponds to root vertex ``vertices[i]``.
    """

    parent: Graph
    vertices: np.ndarray
    local: Graph = field(repr=False)

    @property
    def internal_degree(self):
        return self.local.total_degree

    @property
    def internal_edges(self):
        """Edges in root ids."""
        return self.vertices[self.local.edges]

    def induce(self, vertices):
        """Induce again on a subset of this subgraph's (root) vertices."""
        vertices = np.unique(np.asarray(vertices, dtype=np.int64))
        if not np.isin(vertices, self.vertices).all():
            raise GraphError("subset is not contained in this subgraph")
        return induce(self.parent, vertices)

    def __len__(self):
        return self.vertices.size


def induce(g, vertices):
    """Induced subgraph on ``vertices`` (any order; duplicates collapse)."""
    vertices = np.unique(np.asarray(vertices, dtype=np.int64).ravel())
    if vertices.size and (vertices[0] < 0 or vertices[-1] >= g.n):
        raise GraphError(f"vertex id out of range 0..{g.n - 1}")
    local_id = np.full(g.n, -1, dtype=np.int64)
    local_id[vertices] = np.arange(vertices.size)
    deg = g.degrees[vertices]
    starts = g.indptr[vertices]
    # gather every neighbor slot of the chosen rows
    offs = np.repeat(starts - np.concatenate([[0], np.cumsum(deg)[:-1]]), deg)
    slots = np.arange(deg.sum()) + offs
    nbr = local_id[g.indices[slots]]
    row = np.repeat(np.arange(vertices.size), deg)
    keep = nbr >= 0
    row, nbr = row[keep], nbr[keep]
    indptr = np.zeros(vertices.size + 1, dtype=np.int64)
    np.cumsum(np.bincount(row, minlength=vertices.size), out=indptr[1:])
    local = Graph(vertices.size, indptr, nbr)
    return InducedSubgraph(g, _frozen(vertices), local)


# --------------------------------------------------------------------------
# File formats
# --------------------------------------------------------------------------

FORMATS = ("edge-list", "metis")


def _text(source):
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _parse_edge_list(text):
    edges = []
    n_declared = None
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                try:
                    n_declared = int(parts[1])
                except ValueError:
                    raise GraphFormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {raw!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(
                f"duplicate edge {key} (first seen at line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append(key)
    n = max((v for e in edges for v in e), default=-1) + 1
    if n_declared is not None:
        if n_declared < n:
            raise GraphFormatError(f"declared n={n_declared} but vertex {n - 1} used")
        n = n_declared
    return Graph.from_edges(n, edges)


def _parse_metis(text):
    lines = text.splitlines()
    rows = [(i, l) for i, l in enumerate(lines, start=1) if not l.lstrip().startswith("%")]
    while rows and not rows[0][1].strip():
        rows.pop(0)
    if not rows:
        raise GraphFormatError("missing 'n m' header", 1)
    hdr_no, hdr = rows[0]
    parts = hdr.split()
    if len(parts) < 2:
        raise GraphFormatError("header must be 'n m'", hdr_no)
    if len(parts) > 2 and parts[2] not in ("0", "000"):
        raise GraphFormatError("weighted METIS graphs are not supported", hdr_no)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("header must be two integers", hdr_no) from None
    body = rows[1:]
    while len(body) > n and not body[-1][1].strip():
        body.pop()
    if len(body) > n:
        raise GraphFormatError(f"more than n={n} vertex lines", body[n][0])
    edges = []
    seen = set()
    for v, (lineno, line) in enumerate(body):
        nbrs = []
        for tok in line.split():
            try:
                u = int(tok) - 1
            except ValueError:
                raise GraphFormatError(f"non-integer neighbor {tok!r}", lineno) from None
            if not 0 <= u < n:
                raise GraphFormatError(f"neighbor {tok} outside 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {v}", lineno)
            nbrs.append(u)
        if len(set(nbrs)) != len(nbrs):
            raise GraphFormatError(f"duplicate neighbor in list of vertex {v}", lineno)
        for u in nbrs:
            key = (min(u, v), max(u, v))
            if key in seen:
                seen.discard(key)
                continue
            seen.add(key)
            edges.append((key, lineno))
    if seen:
        (a, b) = min(seen)
        raise GraphFormatError(f"edge ({a}, {b}) listed in only one direction")
    if len(edges) != m:
        raise GraphFormatError(f"header declares m={m} but {len(edges)} edges found", hdr_no)
    return Graph.from_edges(n, [e for e, _ in edges])


def load_graph(source, format="edge-list"):
    """Parse a graph from bytes, text, or a file-like object.

    ``edge-list``: one ``u v`` pair per line, 0-based, ``#`` comments. A
    ``# n N`` comment line fixes the vertex count (needed for trailing
    isolated vertices).
    ``metis``: header ``n m`` then line ``i`` lists the 1-based neighbors of
    vertex ``i``; ``%`` comments; missing trailing lines are isolated vertices.
    """
    text = _text(source)
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "metis":
        return _parse_metis(text)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def save_graph(g, format="edge-list"):
    """Serialize ``g``; ``load_graph(save_graph(g, f), f) == g``."""
    out = io.StringIO()
    if format == "edge-list":
        e = g.edges
        if g.n and (e.size == 0 or e.max() < g.n - 1):
            out.write(f"# n {g.n}\n")
        for u, v in e:
            out.write(f"{u} {v}\n")
    elif format == "metis":
        out.write(f"{g.n} {g.m}\n")
        lines = [" ".join(str(u + 1) for u in g.neighbors(v)) for v in range(g.n)]
        while lines and not lines[-1]:
            lines.pop()
        for line in lines:
            out.write(line + "\n")
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    return out.getvalue().encode("utf-8")
