"""``cheegermod`` command line.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import SUITES, ExperimentSpec, experiment_rows, rows_to_csv, run_suite
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import FORMATS, GraphError, load_graph, save_graph
from .modularity import Partition, assemble_bound, brute_force_modularity, score_partition
from .partitioner import SeparatorConfig, audit_run, charge_bound, run_separator
from .spectral import SolverConfig

REPORT_VERSION = 1


class UsageError(Exception):
    pass


def _solver(args):
    return SolverConfig(
        tolerance=args.tol,
        max_iterations=args.max_iters,
        dense_cutoff=args.dense_cutoff,
        seed=args.seed,
        method=args.method,
    )


def _guess_format(path, fmt):
    if fmt:
        return fmt
    if path != "-" and Path(path).suffix in (".metis", ".graph"):
        return "metis"
    return "edge-list"


def _read_graph(args):
    fmt = _guess_format(args.graph, args.format)
    if args.graph == "-":
        data = sys.stdin.buffer.read()
    else:
        data = Path(args.graph).read_bytes()
    return load_graph(data, fmt)


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _floats(values):
    return [float(v) for v in values.split(",") if v.strip()]


def _ints(values):
    return [int(v) for v in values.split(",") if v.strip()]


def cmd_generate(args):
    size = args.size
    if size is None and args.family != "two-triangles-bridge":
        raise UsageError(f"family {args.family} needs a size")
    g = generate(GeneratorSpec(args.family, size or 0, args.seed))
    fmt = args.format or "edge-list"
    data = save_graph(g, fmt)
    stats = f"n={g.n} m={g.m} max_degree={g.max_degree}\n"
    if args.out:
        Path(args.out).write_bytes(data)
        sys.stdout.write(stats)
    else:
        sys.stdout.buffer.write(data)
        sys.stderr.write(stats)
    return 0


def cmd_score(args):
    g = _read_graph(args)
    labels = []
    text = Path(args.partition_file).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            labels.append(int(line))
        except ValueError:
            raise UsageError(f"{args.partition_file}:{lineno}: expected an integer block id") from None
    if len(labels) != g.n:
        raise UsageError(f"partition file lists {len(labels)} vertices, graph has {g.n}")
    rep = score_partition(g, Partition(labels))
    print(f"score={rep.score!r} exact={rep.exact_score}")
    print(f"edge_contribution={rep.edge_contribution!r} degree_tax={rep.degree_tax!r}")
    if rep.edgeless:
        print("edgeless graph: modularity is 0 by convention")
    return 0


def cmd_oracle(args):
    g = _read_graph(args)
    if g.n > args.max_n:
        raise UsageError(f"graph has {g.n} vertices; oracle limited to --max-n {args.max_n}")
    best, part = brute_force_modularity(g, cap=args.max_n)
    print(f"modularity={float(best)!r} exact={best}")
    print("partition=" + " ".join(map(str, part.labels.tolist())))
    return 0


def cmd_bound(args):
    g = _read_graph(args)
    if g.m == 0:
        print("score=0.0 (edgeless graph)")
        return 0
    cfg = SeparatorConfig(args.epsilon, _solver(args))
    run = run_separator(g, cfg)
    b = assemble_bound(run, g)
    print(f"epsilon={args.epsilon!r} deleted={run.n_deleted} m={g.m} components={len(run.components)}")
    print(f"edge_contribution={float(b.edge_contribution)!r} exact={b.edge_contribution}")
    print(f"degree_tax={b.degree_tax!r} max_weight={b.max_weight!r} tax_bound={b.tax_bound_holds}")
    print(f"score={b.score!r} exact={b.report.exact_score}")
    print(f"identity={b.identity_holds}")
    if args.audit:
        rep = audit_run(run, g, cfg)
        for k, ok in rep.checks.items():
            print(f"audit {k}: {'pass' if ok else 'FAIL'}")
        return 0 if rep.passed and b.identity_holds else 1
    return 0 if b.identity_holds else 1


def run_report(run, g, cfg, audit=None):
    """JSON-ready description of a separator run."""
    led = run.ledger
    rep = {
        "report_version": REPORT_VERSION,
        "n": g.n,
        "m": g.m,
        "epsilon": run.epsilon,
        "components": [c.tolist() for c in run.components],
        "deleted_edges": run.deleted_edges.tolist(),
        "ledger": {
            "charge_bound": charge_bound(run.epsilon),
            "max_count": led.max_count(),
            "total": led.total,
            "counts": led.counts.tolist(),
        },
        "trace": [dict(r.__dict__) for r in run.trace],
    }
    if audit is not None:
        rep["audit"] = {"passed": audit.passed, "checks": audit.checks, "details": audit.details}
    return rep


def cmd_partition(args):
    g = _read_graph(args)
    cfg = SeparatorConfig(args.epsilon, _solver(args), charge_audit=args.audit)
    run = run_separator(g, cfg)
    audit = audit_run(run, g, cfg) if args.audit else None
    _emit(json.dumps(run_report(run, g, cfg, audit), sort_keys=True, indent=1) + "\n", args.out)
    return 1 if audit is not None and not audit.passed else 0


def cmd_experiment(args):
    spec = ExperimentSpec(
        family=args.family,
        sizes=tuple(_ints(args.sizes)),
        epsilons=tuple(_floats(args.epsilon)),
        seeds=tuple(_ints(args.seeds)),
        spectral=_solver(args),
        timing=args.timing,
    )
    _emit(rows_to_csv(experiment_rows(spec)), args.out)
    return 0


def cmd_verify(args):
    cfg = _solver(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        passed, failed = run_suite(name, cfg)
        print(f"{name}: {passed} passed, {len(failed)} failed")
        for item in failed:
            print(f"  FAIL {item}")
        status |= bool(failed)
    return status


def build_parser():
    p = argparse.ArgumentParser(prog="cheegermod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=1e-8, help="eigen-residual tolerance")
        sp.add_argument("--max-iters", type=int, default=None)
        sp.add_argument("--dense-cutoff", type=int, default=64)
        sp.add_argument("--method", choices=("lanczos", "power"), default="lanczos")

    def graph_arg(sp):
        sp.add_argument("graph", help="graph file, or - for stdin")
        sp.add_argument("--format", choices=FORMATS, default=None)

    sp = sub.add_parser("generate", help="write a generated graph")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("size", type=int, nargs="?")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=FORMATS, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("score", help="modularity of a given partition")
    graph_arg(sp)
    sp.add_argument("--partition-file", required=True, help="one block id per line")
    sp.set_defaults(func=cmd_score)

    sp = sub.add_parser("oracle", help="exact modularity by enumeration")
    graph_arg(sp)
    sp.add_argument("--max-n", type=int, default=10)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bound", help="modularity lower bound from the separator")
    graph_arg(sp)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--audit", action="store_true")
    solver_flags(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("partition", help="run the separator, print a JSON report")
    graph_arg(sp)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--audit", action="store_true")
    sp.add_argument("--out")
    solver_flags(sp)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("experiment", help="family sweep to CSV")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--sizes", required=True, help="comma separated")
    sp.add_argument("--epsilon", default="0.1", help="comma separated")
    sp.add_argument("--seeds", default="0", help="comma separated graph seeds")
    sp.add_argument("--timing", action="store_true", help="fill the wall_time_s column")
    sp.add_argument("--out")
    solver_flags(sp)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("verify", help="run a built-in property suite")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    solver_flags(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"cheegermod: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
