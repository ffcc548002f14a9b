"""Family-scaling experiments and the verification suites behind the CLI."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from .cheeger import sweep_cut, verify_cheeger_sandwich
from .corpus import corpus
from .generators import GeneratorSpec, generate
from .modularity import assemble_bound, brute_force_modularity, modularity_lower_bound
from .partitioner import SeparatorConfig, audit_run, run_separator
from .spectral import LaplacianOperator, SolverConfig, check_lambda2_ordering, lambda2

__all__ = [
    "CSV_COLUMNS",
    "ExperimentSpec",
    "SUITES",
    "experiment_rows",
    "rows_to_csv",
    "run_suite",
]

SCHEMA_VERSION = 1
CSV_COLUMNS = (
    "schema_version", "family", "size", "seed", "n", "m", "max_degree", "epsilon",
    "deleted", "deleted_fraction", "degree_tax", "score", "lambda2", "components",
    "wall_time_s",
)


@dataclass(frozen=True)
class ExperimentSpec:
    family: str
    sizes: tuple
    epsilons: tuple = (0.1,)
    seeds: tuple = (0,)
    spectral: SolverConfig = field(default_factory=SolverConfig)
    timing: bool = False

    def __post_init__(self):
        if not self.sizes or not self.epsilons or not self.seeds:
            raise ValueError("experiment needs at least one size, epsilon and seed")


def experiment_rows(spec):
    """One row per (size, seed, epsilon), in that nesting order."""
    for size in spec.sizes:
        for seed in spec.seeds:
            g = generate(GeneratorSpec(spec.family, int(size), int(seed)))
            active = g.isolated_vertices().size == 0 and g.is_connected()
            lam = lambda2(LaplacianOperator(g, "normalized"), spec.spectral).lambda2 if active else 0.0
            for eps in spec.epsilons:
                t0 = time.perf_counter()
                run = run_separator(g, SeparatorConfig(float(eps), spec.spectral, charge_audit=False))
                bound = assemble_bound(run, g)
                elapsed = time.perf_counter() - t0
                yield {
                    "schema_version": SCHEMA_VERSION,
                    "family": spec.family,
                    "size": int(size),
                    "seed": int(seed),
                    "n": g.n,
                    "m": g.m,
                    "max_degree": g.max_degree,
                    "epsilon": float(eps),
                    "deleted": run.n_deleted,
                    "deleted_fraction": run.n_deleted / g.m,
                    "degree_tax": bound.degree_tax,
                    "score": bound.score,
                    "lambda2": lam,
                    "components": len(run.components),
                    "wall_time_s": f"{elapsed:.3f}" if spec.timing else "",
                }


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


# ---------------------------------------------------------------- suites

def _suite_cheeger(cfg):
    for name, g in corpus(max_n=16):
        rep = verify_cheeger_sandwich(g, cfg)
        yield name, rep.holds


def _suite_lambda_order(cfg):
    for name, g in corpus(max_n=64):
        yield name, check_lambda2_ordering(g, cfg).holds


def _suite_oracle(cfg):
    sep = SeparatorConfig(0.1, cfg)
    for name, g in corpus(max_n=8, connected=False):
        best, _ = brute_force_modularity(g)
        low = modularity_lower_bound(g, sep).exact_score
        yield name, low <= best


def _suite_sweep(cfg):
    rng = np.random.default_rng(cfg.seed)
    for name, g in corpus(max_n=64):
        ok = True
        for _ in range(20):
            cut = sweep_cut(g, rng.standard_normal(g.n))
            ok &= cut.ratio <= cut.certificate_bound + 1e-9
        yield name, bool(ok)


def _suite_audit(cfg):
    for name, g in corpus(connected=False):
        for eps in (0.05, 0.1, 0.2):
            run = run_separator(g, SeparatorConfig(eps, cfg))
            yield f"{name}@{eps}", audit_run(run, g).passed


SUITES = {
    "cheeger": _suite_cheeger,
    "lambda-order": _suite_lambda_order,
    "oracle": _suite_oracle,
    "sweep": _suite_sweep,
    "audit": _suite_audit,
}


def run_suite(name, cfg=None):
    """Run a named suite; returns ``(passed, failed_names)``."""
    cfg = cfg or SolverConfig()
    passed, failed = 0, []
    for item, ok in SUITES[name](cfg):
        if ok:
            passed += 1
        else:
            failed.append(item)
    return passed, failed
