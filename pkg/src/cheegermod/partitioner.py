"""Recursive degree-weighted edge separator.

Every component whose internal degree is at least ``(epsilon/2) * deg(V)`` is
cut along a sweep cut of its normalized Fiedler vector. The deleted edges
are charged to the side of smaller degree, split among its vertices in
proportion to their degree in the component being cut. A vertex is charged
only when its component's degree at least halves, so no vertex is charged
more than ``floor(log2(1/epsilon)) + 2`` times.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cheeger import sweep_cut
from .graph import GraphError, induce
from .spectral import LaplacianOperator, SolverConfig, lambda2

__all__ = [
    "AuditReport",
    "ChargeLedger",
    "SeparatorConfig",
    "SeparatorRun",
    "StepRecord",
    "audit_run",
    "charge_bound",
    "exact_epsilon",
    "run_separator",
    "single_cut_step",
]

log = logging.getLogger(__name__)

# components this small are re-solved densely when the iterative solver stalls
DENSE_FALLBACK = 2000


def exact_epsilon(epsilon):
    """The decimal value of ``epsilon`` as written, so 0.2 is exactly 1/5."""
    return Fraction(repr(float(epsilon)))


def charge_bound(epsilon):
    """Maximum number of times any vertex may be charged: ``floor(log2(1/eps)) + 2``."""
    inv = 1 / exact_epsilon(epsilon)
    k = inv.numerator // inv.denominator
    return k.bit_length() - 1 + 2


@dataclass(frozen=True)
class SeparatorConfig:
    epsilon: float = 0.1
    spectral: SolverConfig = field(default_factory=SolverConfig)
    charge_audit: bool = True

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    def is_heavy(self, internal_degree, m):
        """``internal_degree >= (eps/2) * 2m``, compared exactly."""
        return internal_degree >= exact_epsilon(self.epsilon) * m


@dataclass(frozen=True)
class StepRecord:
    step: int
    kind: str  # "split" or "cut"
    size: int
    degree: int
    pieces: int
    deleted: int
    rayleigh: float | None = None
    lambda2: float | None = None
    residual: float | None = None
    solver: str | None = None
    converged: bool | None = None
    cut_ratio: float | None = None
    certificate: float | None = None
    charged: int = 0


class ChargeLedger:
    """Per-vertex list of ``(step, charge)`` entries plus nonzero-charge counts."""

    def __init__(self, n, keep_entries=True):
        self.counts = np.zeros(n, dtype=np.int64)
        self.totals = np.zeros(n)
        self.keep_entries = keep_entries
        self.entries = {} if keep_entries else None

    def charge(self, step, vertices, amounts):
        nz = amounts > 0
        vertices, amounts = vertices[nz], amounts[nz]
        self.counts[vertices] += 1
        self.totals[vertices] += amounts
        if self.keep_entries:
            for v, a in zip(vertices.tolist(), amounts.tolist()):
                self.entries.setdefault(v, []).append((step, a))

    @property
    def total(self):
        return float(self.totals.sum())

    def max_count(self):
        return int(self.counts.max()) if self.counts.size else 0


@dataclass(eq=False)
class SeparatorRun:
    """Outcome of :func:`run_separator`.

    ``components`` are sorted root-vertex arrays ordered by smallest vertex;
    ``deleted_edges`` is the set D as a sorted ``(k, 2)`` array.
    """

    n: int
    m: int
    epsilon: float
    components: list
    deleted_edges: np.ndarray
    ledger: ChargeLedger
    trace: list

    @property
    def labels(self):
        lab = np.empty(self.n, dtype=np.int64)
        for i, c in enumerate(self.components):
            lab[c] = i
        return lab

    @property
    def n_deleted(self):
        return int(len(self.deleted_edges))

    def internal_degrees(self, g):
        lab = self.labels
        e = g.edges
        inside = lab[e[:, 0]] == lab[e[:, 1]]
        return 2 * np.bincount(lab[e[inside, 0]], minlength=len(self.components))

    def root_weights(self, g):
        """``deg_G(V(G_i)) / deg(V)`` per component."""
        vol = np.bincount(self.labels, weights=g.degrees, minlength=len(self.components))
        return vol / g.total_degree


def _split(sub):
    """Connected components of an induced subgraph, as root-vertex arrays."""
    k, lab = sub.local.components()
    order = np.argsort(lab, kind="stable")
    bounds = np.cumsum(np.bincount(lab, minlength=k))[:-1]
    return [sub.vertices[p] for p in np.split(order, bounds)]


def _solve(local, cfg):
    op = LaplacianOperator(local, "normalized")
    est = lambda2(op, cfg)
    if not est.converged:
        log.warning("eigensolver stalled on a component of %d vertices (residual %.3g)",
                    local.n, est.residual)
        if local.n <= DENSE_FALLBACK:
            dense = SolverConfig(cfg.tolerance, cfg.max_iterations, local.n, cfg.seed, cfg.method)
            est = lambda2(op, dense)
    return est


def single_cut_step(gsub, cfg, vector=None):
    """One application of the cut procedure to an induced subgraph.

    Returns ``(blocks, deleted, charges, record)``: the resulting components
    (root ids), deleted edges (root ids), a ``(vertices, amounts)`` pair of
    charges and a :class:`StepRecord` with ``step=-1``. A disconnected input
    is just split into its components. ``vector`` overrides the Fiedler
    vector (local ids), mainly for tests.
    """
    spectral = cfg.spectral if isinstance(cfg, SeparatorConfig) else (cfg or SolverConfig())
    local = gsub.local
    no_charge = (np.zeros(0, dtype=np.int64), np.zeros(0))
    if local.n < 2 or local.m == 0:
        blocks = [np.array([v]) for v in gsub.vertices]
        rec = StepRecord(-1, "split", local.n, gsub.internal_degree, len(blocks), 0)
        return blocks, np.zeros((0, 2), dtype=np.int64), no_charge, rec
    if not local.is_connected():
        blocks = _split(gsub)
        rec = StepRecord(-1, "split", local.n, gsub.internal_degree, len(blocks), 0)
        return blocks, np.zeros((0, 2), dtype=np.int64), no_charge, rec

    est = None
    if vector is None:
        est = _solve(local, spectral)
        vector = est.vector
    cut = sweep_cut(local, vector)
    s_local = cut.side_s
    deleted = gsub.vertices[cut.crossing_edges]
    deg = local.degrees
    # side_s already has the smaller degree (S itself on ties)
    charged = s_local
    amounts = cut.cut_size * deg[charged] / float(deg[charged].sum())
    keep = np.ones(local.n, dtype=bool)
    keep[s_local] = False
    blocks = _split(induce(gsub.parent, gsub.vertices[s_local])) + \
        _split(induce(gsub.parent, gsub.vertices[keep]))
    blocks.sort(key=lambda b: int(b[0]))
    rec = StepRecord(
        -1, "cut", local.n, gsub.internal_degree, len(blocks), cut.cut_size,
        rayleigh=cut.rayleigh_certificate,
        lambda2=None if est is None else est.lambda2,
        residual=None if est is None else est.residual,
        solver=None if est is None else est.solver,
        converged=None if est is None else est.converged,
        cut_ratio=cut.ratio,
        certificate=cut.certificate_bound,
        charged=int(charged.size),
    )
    return blocks, deleted, (gsub.vertices[charged], amounts), rec


def run_separator(g, cfg=None):
    """Repeat :func:`single_cut_step` until every component is light.

    Isolated vertices become singleton blocks up front. The worklist is
    processed largest internal degree first (ties: smallest vertex id).
    """
    cfg = cfg or SeparatorConfig()
    if g.m == 0:
        raise GraphError("separator needs at least one edge")
    ledger = ChargeLedger(g.n, keep_entries=cfg.charge_audit)
    trace = []
    deleted = []
    final = [np.array([v]) for v in g.isolated_vertices()]

    def push(heap, block):
        sub = induce(g, block)
        # blocks are disjoint, so (degree, first vertex) never ties
        heapq.heappush(heap, (-sub.internal_degree, int(block[0]), sub))

    heap = []
    active = np.flatnonzero(g.degrees > 0)
    push(heap, active)
    step = 0
    while heap:
        negdeg, _, sub = heapq.heappop(heap)
        if not cfg.is_heavy(-negdeg, g.m):
            final.append(sub.vertices)
            # everything left is lighter still
            final.extend(item[2].vertices for item in heap)
            break
        blocks, dele, (cv, ca), rec = single_cut_step(sub, cfg)
        trace.append(_with_step(rec, step))
        if ca.size:
            ledger.charge(step, cv, ca)
        if len(dele):
            deleted.append(dele)
        step += 1
        for b in blocks:
            push(heap, b)

    final = [np.sort(b) for b in final]
    final.sort(key=lambda b: int(b[0]))
    d = np.vstack(deleted) if deleted else np.zeros((0, 2), dtype=np.int64)
    if len(d):
        d = np.sort(d, axis=1)
        d = d[np.lexsort((d[:, 1], d[:, 0]))]
    return SeparatorRun(g.n, g.m, cfg.epsilon, final, d, ledger, trace)


def _with_step(rec, step):
    return StepRecord(**{**rec.__dict__, "step": step})


@dataclass
class AuditReport:
    checks: dict
    details: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return [k for k, ok in self.checks.items() if not ok]


def audit_run(run, g, cfg=None, tol=1e-9):
    """Recompute every guarantee of a run from scratch; never raises on failure."""
    cfg = cfg or SeparatorConfig(run.epsilon)
    checks, details = {}, {}
    n, m = g.n, g.m

    # partition of V into connected blocks
    seen = np.zeros(n, dtype=np.int64)
    for c in run.components:
        seen[c] += 1
    checks["partition"] = bool((seen == 1).all())
    lab = np.full(n, -1, dtype=np.int64)
    for i, c in enumerate(run.components):
        lab[c] = i
    checks["connected_blocks"] = all(len(c) == 1 or induce(g, c).local.is_connected()
                                     for c in run.components) if checks["partition"] else False

    # D is exactly the set of edges between different blocks
    e = g.edges
    crossing = e[lab[e[:, 0]] != lab[e[:, 1]]] if checks["partition"] else e[:0]
    d = np.asarray(run.deleted_edges, dtype=np.int64).reshape(-1, 2)
    d_keys = np.sort(np.minimum(d[:, 0], d[:, 1]) * n + np.maximum(d[:, 0], d[:, 1]))
    c_keys = np.sort(crossing[:, 0] * n + crossing[:, 1])
    checks["deleted_edges"] = bool(
        np.unique(d_keys).size == d_keys.size and np.array_equal(d_keys, c_keys))

    internal = 2 * np.bincount(lab[e[lab[e[:, 0]] == lab[e[:, 1]], 0]],
                               minlength=len(run.components)) if checks["partition"] else np.zeros(0)
    checks["edge_conservation"] = bool(len(d) + internal.sum() // 2 == m)
    checks["stopping_rule"] = all(not cfg.is_heavy(int(x), m) for x in internal)

    bound = charge_bound(run.epsilon)
    ledger = run.ledger
    if ledger.keep_entries:
        counts = np.zeros(n, dtype=np.int64)
        sums = np.zeros(n)
        for v, items in ledger.entries.items():
            counts[v] = sum(1 for _, a in items if a > 0)
            sums[v] = sum(a for _, a in items)
        checks["ledger_consistent"] = bool(np.array_equal(counts, ledger.counts)
                                           and np.allclose(sums, ledger.totals, atol=tol))
    else:
        counts = ledger.counts
    details["max_charge_count"] = int(counts.max()) if n else 0
    details["charge_bound"] = bound
    checks["charge_count"] = bool((counts <= bound).all())
    details["charge_total"] = float(ledger.totals.sum())
    checks["charge_sum"] = bool(abs(ledger.totals.sum() - len(d)) <= tol * max(1, len(d)))

    certs = [(r.cut_ratio, r.certificate) for r in run.trace if r.kind == "cut"]
    checks["certificates"] = all(r <= c + tol for r, c in certs)
    checks["step_count"] = len(run.trace) <= 2 * m

    details["deleted"] = int(len(d))
    details["deleted_fraction"] = len(d) / m
    if checks["partition"]:
        w = np.bincount(lab, weights=g.degrees, minlength=len(run.components)) / g.total_degree
        details["max_root_weight"] = float(w.max())
        eps = exact_epsilon(run.epsilon)
        if len(d) <= eps * m / 2:
            degsum = np.bincount(lab, weights=g.degrees, minlength=len(run.components))
            checks["weight_bound"] = all(int(x) < eps * g.total_degree for x in degsum)
    return AuditReport(checks, details)
