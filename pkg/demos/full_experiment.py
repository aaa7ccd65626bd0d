"""
A seeded experiment end to end
==============================

Write a small bundle to disk, describe the experiment in a config file and
run it the way the ``mutprio experiment`` command does. Running it twice
gives byte-identical ordering files.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

import mutprio as mp
from mutprio import harness

rng = np.random.default_rng(21)
n_tests = 30
tests = tuple(f"t{i}" for i in range(n_tests))
kill = mp.KillMatrix(tests, tuple(f"m{j}" for j in range(120)), rng.random((n_tests, 120)) < 0.15)
faults = rng.random((n_tests, 3)) < 0.07
faults[rng.integers(n_tests, size=3), np.arange(3)] = True
coverage = rng.random((n_tests, 50)) < 0.25

work = Path(tempfile.mkdtemp(prefix="mutprio-demo-"))
(work / "kill.csv").write_text(mp.write_matrix(kill))
(work / "faults.csv").write_text(mp.write_matrix(mp.FaultMatrix(tests, ("f1", "f2", "f3"), faults)))
(work / "coverage.csv").write_text(
    mp.write_matrix(mp.CoverageMatrix(tests, tuple(f"s{j}" for j in range(50)), coverage))
)
(work / "experiment.json").write_text(json.dumps({
    "techniques": ["RND", "SCV", "GRK", "GRD", {"technique": "HYB", "weight": 0.5},
                   {"technique": "MOK", "pop": 20, "evals": 2000}],
    "kill": "kill.csv", "faults": "faults.csv", "coverage": "coverage.csv",
    "runsGreedy": 20, "runsMoo": 5, "baseSeed": 7, "metrics": ["apfd", "apmk"],
}, indent=2))

###############################################################################
config = harness.load_config(work / "experiment.json")
report = harness.run_experiment(config)
harness.emit_reports(report, work / "out")

for res in report.results:
    print(f"{res.label:8s} mean APFD {np.mean(res.samples['apfd']):.3f}  "
          f"mean {np.mean(res.millis):.1f} ms per run")
for pair in report.comparisons:
    if pair.metric == "apfd" and pair.b == "RND":
        print(f"{pair.a} vs RND: {pair.verdict.outcome} (A12 {pair.verdict.a12:.2f})")

###############################################################################
harness.emit_reports(harness.run_experiment(config), work / "again")
first = sorted((work / "out" / "orderings").rglob("*.csv"))
same = all(p.read_bytes() == (work / "again" / p.relative_to(work / "out")).read_bytes() for p in first)
print(f"{len(first)} ordering files, identical on rerun: {same}")
print("outputs in", work)
