"""Newman-Girvan modularity: scoring, the exact oracle and separator bounds.

For a partition into blocks ``A``::

    score = sum_A |E(A)| / m  -  sum_A (deg(A) / 2m)^2
          = edge_contribution - degree_tax

All tallies are integers, so every score is available exactly as a
:class:`fractions.Fraction` with denominator ``4 m^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graph import GraphError
from .partitioner import SeparatorConfig, run_separator

__all__ = [
    "BoundReport",
    "ModularityReport",
    "Partition",
    "assemble_bound",
    "brute_force_modularity",
    "modularity_lower_bound",
    "restricted_growth_strings",
    "score_partition",
]

ORACLE_CAP = 10


class Partition:
    """Dense block-id labeling of the vertices.

    Any integer labels are accepted and renumbered ``0..k-1`` in order of
    first appearance.
    """

    def __init__(self, labels):
        labels = np.asarray(labels).ravel()
        _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
        rank = np.empty(first.size, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(first.size)
        self.labels = rank[inv.ravel()]
        self.labels.setflags(write=False)
        self.n_blocks = int(first.size)

    @classmethod
    def from_blocks(cls, blocks, n=None):
        blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
        size = sum(b.size for b in blocks)
        n = size if n is None else n
        lab = np.full(n, -1, dtype=np.int64)
        for i, b in enumerate(blocks):
            if (lab[b] != -1).any():
                raise ValueError("blocks overlap")
            lab[b] = i
        if (lab < 0).any() or size != n:
            raise ValueError("blocks do not cover every vertex")
        return cls(lab)

    @classmethod
    def single_block(cls, n):
        return cls(np.zeros(n, dtype=np.int64))

    def blocks(self):
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(np.bincount(self.labels, minlength=self.n_blocks))[:-1]
        return np.split(order, bounds)

    def tallies(self, g):
        """Per-block internal edge counts and degree sums."""
        if self.labels.size != g.n:
            raise ValueError(f"partition labels {self.labels.size} vertices, graph has {g.n}")
        e = g.edges
        lu, lv = self.labels[e[:, 0]], self.labels[e[:, 1]]
        internal = np.bincount(lu[lu == lv], minlength=self.n_blocks)
        degsum = np.bincount(self.labels, weights=g.degrees, minlength=self.n_blocks).astype(np.int64)
        return internal.astype(np.int64), degsum

    def __len__(self):
        return self.n_blocks


@dataclass(frozen=True)
class ModularityReport:
    score: float
    edge_contribution: float
    degree_tax: float
    block_terms: tuple
    exact_score: Fraction
    exact_edge_contribution: Fraction
    exact_degree_tax: Fraction
    edgeless: bool = False


def _report(internal, degsum, m):
    ec = Fraction(int(internal.sum()), m)
    tax = Fraction(int((degsum.astype(object) ** 2).sum()), 4 * m * m)
    score = ec - tax
    terms = tuple(
        float(Fraction(int(e), m) - Fraction(int(d) ** 2, 4 * m * m))
        for e, d in zip(internal, degsum)
    )
    return ModularityReport(float(score), float(ec), float(tax), terms, score, ec, tax)


def score_partition(g, p):
    """Modularity score of partition ``p`` (a :class:`Partition` or label array)."""
    if not isinstance(p, Partition):
        p = Partition(p)
    internal, degsum = p.tallies(g)
    if g.m == 0:
        zero = Fraction(0)
        return ModularityReport(0.0, 0.0, 0.0, (0.0,) * len(p), zero, zero, zero, edgeless=True)
    return _report(internal, degsum, g.m)


@lru_cache(maxsize=None)
def restricted_growth_strings(n):
    """All set partitions of ``n`` items as a ``(Bell(n), n)`` int8 array.

    Row ``r`` satisfies ``r[0] = 0`` and ``r[i] <= max(r[:i]) + 1``; rows come
    out in lexicographic order.
    """
    if n == 0:
        out = np.zeros((1, 0), dtype=np.int8)
        out.setflags(write=False)
        return out
    rows = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        reps = top.astype(np.int64) + 2
        idx = np.repeat(np.arange(rows.shape[0]), reps)
        starts = np.cumsum(reps) - reps
        nxt = (np.arange(idx.size) - np.repeat(starts, reps)).astype(np.int8)
        rows = np.hstack([rows[idx], nxt[:, None]])
        top = np.maximum(top[idx], nxt)
    rows.setflags(write=False)
    return rows


def brute_force_modularity(g, cap=ORACLE_CAP):
    """Exact ``max`` over all set partitions; returns ``(Fraction, Partition)``.

    Scores are compared as integers scaled by ``4 m^2``; ties keep the
    lexicographically first restricted growth string.
    """
    if g.n > cap:
        raise GraphError(f"brute-force modularity limited to n <= {cap}, got {g.n}")
    if g.m == 0:
        return Fraction(0), Partition.single_block(g.n)
    rgs = restricted_growth_strings(g.n).astype(np.int64)
    e, deg, m = g.edges, g.degrees, g.m
    same = rgs[:, e[:, 0]] == rgs[:, e[:, 1]]
    total = np.zeros(rgs.shape[0], dtype=np.int64)
    # 4m * sum_A |E(A)| - sum_A deg(A)^2, exact in int64 for n <= cap
    total += 4 * m * same.sum(axis=1)
    for b in range(g.n):
        d = (rgs == b) @ deg
        total -= d * d
    best = int(np.argmax(total))
    return Fraction(int(total[best]), 4 * m * m), Partition(rgs[best])


@dataclass(frozen=True)
class BoundReport:
    """Decomposition of the score of a separator's partition."""

    edge_contribution: Fraction  # 1 - |D|/m
    degree_tax: float
    max_weight: float
    tax_bound_holds: bool  # tax <= max_A w(A)
    score: float
    identity_holds: bool
    report: ModularityReport


def assemble_bound(run, g):
    """Score the separator's components as a partition and check the bookkeeping.

    Verifies ``EC = 1 - |D|/m`` and ``score = EC - tax`` exactly, and the
    degree-tax bound ``sum w(A)^2 <= max w(A)``.
    """
    p = Partition.from_blocks(run.components, g.n)
    rep = score_partition(g, p)
    if g.m == 0:
        raise GraphError("no bound for an edgeless graph")
    ec = Fraction(g.m - len(run.deleted_edges), g.m)
    _, degsum = p.tallies(g)
    w = degsum / g.total_degree
    identity = rep.exact_edge_contribution == ec and rep.exact_score == ec - rep.exact_degree_tax
    max_w = Fraction(int(degsum.max()), g.total_degree)
    return BoundReport(
        edge_contribution=ec,
        degree_tax=rep.degree_tax,
        max_weight=float(w.max()),
        tax_bound_holds=bool(rep.exact_degree_tax <= max_w),
        score=rep.score,
        identity_holds=bool(identity),
        report=rep,
    )


def modularity_lower_bound(g, cfg=None):
    """Score of the separator's partition: a certified lower bound on modularity."""
    if g.m == 0:
        return score_partition(g, Partition.single_block(g.n))
    run = run_separator(g, cfg or SeparatorConfig())
    return assemble_bound(run, g).report
