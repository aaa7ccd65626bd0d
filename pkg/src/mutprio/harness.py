"""Repeated seeded runs per technique, metric collection and reports.

Run ``r`` of the technique at position ``k`` in the config draws from the
stream ``derive_seed(base_seed, k, r)``, so every run is reproducible in
isolation and no two runs share random numbers.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import greedy, metrics, moo
from .model import (
    CostVector,
    CoverageMatrix,
    FaultMatrix,
    KillMatrix,
    Ordering,
    read_costs,
    read_matrix,
    validate_bundle,
    write_ordering,
)
from .rng import SplitMix64, derive_seed
from .stats import DEFAULT_ALPHA, Verdict, compare

log = logging.getLogger(__name__)

MOO_TECHNIQUES = ("MOK", "MOD")


@dataclass(frozen=True)
class TechniqueSpec:
    technique: str
    weight: float | None = None
    population_size: int = 100
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    max_evaluations: int = 100_000
    stream: int | None = None  # seed stream index; defaults to the position in the config

    def __post_init__(self):
        tech = self.technique.upper()
        object.__setattr__(self, "technique", tech)
        if tech not in greedy.TECHNIQUES + MOO_TECHNIQUES:
            raise ValueError(f"unknown technique {self.technique!r}")
        if tech in MOO_TECHNIQUES:
            self.moo_config(0)  # validates the parameters
        else:
            greedy.GreedyConfig(tech, self.weight)

    @property
    def is_moo(self) -> bool:
        return self.technique in MOO_TECHNIQUES

    @property
    def label(self) -> str:
        return greedy.technique_label(self.technique, self.weight)

    def moo_config(self, seed: int) -> moo.MooConfig:
        return moo.MooConfig(
            self.population_size, self.crossover_rate, self.mutation_rate,
            self.max_evaluations, seed,
        )


_SPEC_KEYS = {
    "technique": "technique",
    "weight": "weight",
    "pop": "population_size",
    "populationSize": "population_size",
    "cx": "crossover_rate",
    "crossoverRate": "crossover_rate",
    "mut": "mutation_rate",
    "mutationRate": "mutation_rate",
    "evals": "max_evaluations",
    "maxEvaluations": "max_evaluations",
    "stream": "stream",
}


def technique_from_config(entry: str | Mapping[str, Any]) -> TechniqueSpec:
    if isinstance(entry, str):
        return TechniqueSpec(entry)
    unknown = set(entry) - set(_SPEC_KEYS)
    if unknown:
        raise ValueError(f"unknown technique keys: {sorted(unknown)}")
    return TechniqueSpec(**{_SPEC_KEYS[k]: v for k, v in entry.items()})


@dataclass
class ExperimentConfig:
    techniques: list[TechniqueSpec]
    kill: Path
    faults: Path | None = None
    coverage: Path | None = None
    costs: Path | None = None
    runs_greedy: int = 100
    runs_moo: int = 30
    base_seed: int = 0
    metrics: tuple[str, ...] = ("apfd",)
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not self.techniques:
            raise ValueError("config lists no techniques")
        if self.runs_greedy < 1 or self.runs_moo < 1:
            raise ValueError("run counts must be at least 1")
        self.metrics = tuple(m.lower() for m in self.metrics)
        for m in self.metrics:
            if m.upper() not in metrics.METRICS:
                raise ValueError(f"unknown metric {m!r}")

    def runs_for(self, spec: TechniqueSpec) -> int:
        return self.runs_moo if spec.is_moo else self.runs_greedy


_CONFIG_KEYS = {
    "techniques": "techniques",
    "kill": "kill",
    "faults": "faults",
    "coverage": "coverage",
    "costs": "costs",
    "runsGreedy": "runs_greedy",
    "runsMoo": "runs_moo",
    "baseSeed": "base_seed",
    "metrics": "metrics",
    "alpha": "alpha",
}


def config_from_mapping(data: Mapping[str, Any], base_dir: Path | None = None) -> ExperimentConfig:
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {_CONFIG_KEYS[k]: v for k, v in data.items()}
    if "kill" not in kwargs:
        raise ValueError("config needs a 'kill' matrix path")
    kwargs["techniques"] = [technique_from_config(t) for t in kwargs.get("techniques") or []]
    for key in ("kill", "faults", "coverage", "costs"):
        if kwargs.get(key) is not None:
            path = Path(kwargs[key])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            kwargs[key] = path
    if "metrics" in kwargs:
        kwargs["metrics"] = tuple(kwargs["metrics"])
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    """Read a JSON or TOML experiment config; input paths are relative to it."""
    path = Path(path)
    if path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    return config_from_mapping(data, path.parent)


@dataclass(frozen=True)
class Bundle:
    kill: KillMatrix
    faults: FaultMatrix | None = None
    coverage: CoverageMatrix | None = None
    costs: CostVector | None = None

    def __post_init__(self):
        validate_bundle(self.kill, self.coverage, self.faults, self.costs)


def load_bundle(config: ExperimentConfig) -> Bundle:
    return Bundle(
        read_matrix(config.kill, "kill"),
        read_matrix(config.faults, "fault") if config.faults else None,
        read_matrix(config.coverage, "coverage") if config.coverage else None,
        read_costs(config.costs) if config.costs else None,
    )


def prioritize(
    spec: TechniqueSpec,
    kill: KillMatrix | None,
    seed: int,
    coverage: CoverageMatrix | None = None,
) -> tuple[Ordering, moo.ParetoFront | None]:
    """Produce one ordering; MOO techniques also return their front."""
    if not spec.is_moo:
        config = greedy.GreedyConfig(spec.technique, spec.weight, seed)
        return greedy.prioritize_greedy(kill, config, coverage), None
    if kill is None:
        raise ValueError(f"{spec.technique} needs a kill matrix")
    front = moo.nsga2(kill, spec.moo_config(seed))
    pick = moo.select_mok if spec.technique == "MOK" else moo.select_mod
    chosen = pick(front, SplitMix64(derive_seed(seed, 1)))
    return Ordering(chosen.sequence, {"technique": spec.label, "seed": seed}), front


@dataclass
class TechniqueResult:
    label: str
    orderings: list[Ordering] = field(default_factory=list)
    fronts: list[moo.ParetoFront] = field(default_factory=list)
    samples: dict[str, list[float]] = field(default_factory=dict)
    millis: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class PairVerdict:
    a: str
    b: str
    metric: str
    verdict: Verdict


@dataclass
class ExperimentReport:
    tests: tuple[str, ...]
    results: list[TechniqueResult]
    comparisons: list[PairVerdict]

    def result(self, label: str) -> TechniqueResult:
        for r in self.results:
            if r.label == label:
                return r
        raise KeyError(label)


def _unique_labels(specs: Sequence[TechniqueSpec]) -> list[str]:
    labels, seen = [], {}
    for spec in specs:
        base = spec.label
        seen[base] = seen.get(base, 0) + 1
        labels.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
    return labels


def run_experiment(config: ExperimentConfig, bundle: Bundle | None = None) -> ExperimentReport:
    bundle = bundle or load_bundle(config)
    results = []
    for k, (spec, label) in enumerate(zip(config.techniques, _unique_labels(config.techniques))):
        stream = k if spec.stream is None else spec.stream
        res = TechniqueResult(label, samples={m: [] for m in config.metrics})
        for r in range(config.runs_for(spec)):
            seed = derive_seed(config.base_seed, stream, r)
            start = time.perf_counter()
            ordering, front = prioritize(spec, bundle.kill, seed, bundle.coverage)
            res.millis.append((time.perf_counter() - start) * 1000.0)
            res.orderings.append(ordering)
            if front is not None:
                res.fronts.append(front)
            values = metrics.evaluate(
                ordering, config.metrics, bundle.kill, bundle.faults, bundle.costs
            )
            for m in config.metrics:
                res.samples[m].append(values[m.upper()])
        log.info("%s: %d runs, mean %.1f ms", label, len(res.millis),
                 sum(res.millis) / len(res.millis))
        results.append(res)

    comparisons = []
    for ra, rb in combinations(results, 2):
        for m in config.metrics:
            verdict = compare(ra.samples[m], rb.samples[m], config.alpha)
            comparisons.append(PairVerdict(ra.label, rb.label, m, verdict))
    return ExperimentReport(bundle.kill.tests, results, comparisons)


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def front_csv(front: moo.ParetoFront, tests: Sequence[str]) -> str:
    lines = ["member,apmk,apmd,ordering"]
    for i, (ordering, fit) in enumerate(front.members):
        lines.append(f"{i},{_fmt(fit.apmk)},{_fmt(fit.apmd)},{';'.join(ordering.names(tests))}")
    return "\n".join(lines) + "\n"


def emit_reports(report: ExperimentReport, out_dir) -> list[Path]:
    """Write ordering, front, metrics, comparison and timing files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for res in report.results:
        odir = out / "orderings" / res.label
        odir.mkdir(parents=True, exist_ok=True)
        for r, ordering in enumerate(res.orderings):
            path = odir / f"run_{r:03d}.csv"
            path.write_text(write_ordering(ordering, report.tests), encoding="utf-8")
            written.append(path)
        if res.fronts:
            fdir = out / "fronts" / res.label
            fdir.mkdir(parents=True, exist_ok=True)
            for r, front in enumerate(res.fronts):
                path = fdir / f"run_{r:03d}.csv"
                path.write_text(front_csv(front, report.tests), encoding="utf-8")
                written.append(path)

    path = out / "metrics.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["technique", "run", "metric", "value"])
        for res in report.results:
            for metric, values in res.samples.items():
                for r, v in enumerate(values):
                    w.writerow([res.label, r, metric, _fmt(v)])
    written.append(path)

    path = out / "timing.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["technique", "run", "millis"])
        for res in report.results:
            for r, ms in enumerate(res.millis):
                w.writerow([res.label, r, f"{ms:.3f}"])
    written.append(path)

    path = out / "comparisons.json"
    payload = [
        {"a": c.a, "b": c.b, "metric": c.metric, **c.verdict.to_json()} for c in report.comparisons
    ]
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    written.append(path)
    return written
