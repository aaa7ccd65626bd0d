"""``mutprio`` command line interface."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import adequacy, harness, mdg, metrics
from .model import parse_ordering, read_costs, read_matrix, validate_bundle, write_ordering
from .rng import derive_seed
from .stats import DEFAULT_ALPHA, compare

log = logging.getLogger("mutprio")


def _analyze(args) -> None:
    kill = read_matrix(args.kill, "kill")
    report = adequacy.indistinguishable_groups(kill)
    Path(args.out).write_text(json.dumps(report.to_json(kill), indent=2) + "\n", encoding="utf-8")


def _evaluate(args) -> None:
    kill = read_matrix(args.kill, "kill")
    faults = read_matrix(args.faults, "fault") if args.faults else None
    costs = read_costs(args.costs) if args.costs else None
    validate_bundle(kill, faults=faults, costs=costs)
    names = [m.strip().lower() for m in args.metrics.split(",") if m.strip()]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["run", "metric", "value"])
        for run, path in enumerate(args.ordering):
            ordering = parse_ordering(Path(path).read_text(encoding="utf-8"), kill.tests)
            values = metrics.evaluate(ordering, names, kill, faults, costs, strict=not args.lenient)
            for name in names:
                w.writerow([run, name, f"{values[name.upper()]:.12g}"])


def _prioritize(args) -> None:
    spec = harness.TechniqueSpec(
        args.technique,
        args.weight,
        population_size=args.pop,
        crossover_rate=args.cx,
        mutation_rate=args.mut,
        max_evaluations=args.evals,
    )
    kill = read_matrix(args.kill, "kill") if args.kill else None
    coverage = read_matrix(args.coverage, "coverage") if args.coverage else None
    if kill is not None:
        validate_bundle(kill, coverage)
    tests = kill.tests if kill is not None else coverage.tests if coverage is not None else None
    if tests is None:
        raise ValueError("give --kill (or --coverage for scv)")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for r in range(args.runs):
        ordering, front = harness.prioritize(spec, kill, derive_seed(args.seed, 0, r), coverage)
        (out / f"run_{r:03d}.csv").write_text(write_ordering(ordering, tests), encoding="utf-8")
        if front is not None:
            (out / f"front_{r:03d}.csv").write_text(harness.front_csv(front, tests), encoding="utf-8")


def _read_metric_values(path, metric: str) -> list[float]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if rows and ("metric" not in rows[0] or "value" not in rows[0]):
        raise ValueError(f"{path}: expected 'metric' and 'value' columns")
    values = [float(r["value"]) for r in rows if r["metric"].lower() == metric.lower()]
    if not values:
        raise ValueError(f"{path}: no rows for metric {metric!r}")
    return values


def _compare(args) -> None:
    a = _read_metric_values(args.a, args.metric)
    b = _read_metric_values(args.b, args.metric)
    verdict = compare(a, b, args.alpha)
    Path(args.out).write_text(json.dumps(verdict.to_json(), indent=2) + "\n", encoding="utf-8")


def _mdg(args) -> None:
    kill = read_matrix(args.kill, "kill")
    fault_tests: frozenset[int] = frozenset()
    if args.faults:
        faults = read_matrix(args.faults, "fault")
        validate_bundle(kill, faults=faults)
        fault_tests = faults.detecting_tests(args.fault)
    graph = mdg.build_mdg(kill, fault_tests)
    Path(args.out).write_text(mdg.render_dot(graph), encoding="utf-8")


def _experiment(args) -> None:
    config = harness.load_config(args.config)
    report = harness.run_experiment(config)
    harness.emit_reports(report, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mutprio", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-mutants", help="group equivalent and duplicated mutants")
    p.add_argument("--kill", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_analyze)

    p = sub.add_parser("evaluate", help="score orderings with APFD-family metrics")
    p.add_argument("--ordering", required=True, nargs="+")
    p.add_argument("--kill", required=True)
    p.add_argument("--faults")
    p.add_argument("--costs")
    p.add_argument("--metrics", default="apfd")
    p.add_argument("--lenient", action="store_true", help="drop undetected faults instead of failing")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_evaluate)

    p = sub.add_parser("prioritize", help="order tests with one technique")
    p.add_argument("--technique", required=True, type=str.lower,
                   choices=["grk", "grd", "hyb", "scv", "rnd", "mok", "mod"])
    p.add_argument("--weight", type=float)
    p.add_argument("--kill")
    p.add_argument("--coverage")
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pop", type=int, default=100)
    p.add_argument("--cx", type=float, default=0.9)
    p.add_argument("--mut", type=float, default=0.2)
    p.add_argument("--evals", type=int, default=100_000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_prioritize)

    p = sub.add_parser("compare", help="Mann-Whitney U and A12 between two metric files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--metric", default="apfd")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_compare)

    p = sub.add_parser("mdg", help="render a mutant distinguishment graph as DOT")
    p.add_argument("--kill", required=True)
    p.add_argument("--faults")
    p.add_argument("--fault", help="fault column to highlight (default: any fault)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_mdg)

    p = sub.add_parser("experiment", help="run a full seeded experiment from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (OSError, ValueError, KeyError, IndexError) as exc:
        print(f"mutprio: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
