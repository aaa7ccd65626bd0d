"""Prefix curves and area-under-curve prioritization metrics.

All AUC metrics share one template: for a prefix curve ``v`` over an
ordering of ``n`` tests, the score is ``mean(v) - 1/(2n)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .model import CostVector, FaultMatrix, KillMatrix, Ordering, as_sequence

log = logging.getLogger(__name__)

MetricName = Literal["APFD", "APFDC", "APMK", "APMD"]
METRICS: tuple[str, ...] = ("APFD", "APFDC", "APMK", "APMD")


class UndetectedFault(ValueError):
    pass


class DegenerateDenominator(ValueError):
    """The full suite achieves nothing, so the prefix curve cannot be normalized."""


@dataclass(frozen=True)
class MetricValue:
    metric: str
    value: float
    provenance: dict = field(default_factory=dict, compare=False)

    def __float__(self):
        return self.value


def _provenance(ordering) -> dict:
    return dict(ordering.provenance) if isinstance(ordering, Ordering) else {}


def _sequence_for(ordering, n_tests: int) -> np.ndarray:
    seq = as_sequence(ordering)
    if len(seq) != n_tests:
        raise ValueError(f"ordering covers {len(seq)} tests, matrix has {n_tests}")
    return np.asarray(seq, dtype=np.intp)


def apxx(curve: Sequence[float]) -> float:
    values = np.asarray(curve, dtype=float)
    if values.size == 0:
        raise ValueError("empty prefix curve")
    n = values.size
    return float(values.sum() / n - 1.0 / (2 * n))


def first_positions(cells: np.ndarray, seq: np.ndarray) -> np.ndarray:
    """1-based rank of the first test in ``seq`` with a true cell, per column.

    Columns with no true cell get ``n + 1``.
    """
    n = len(seq)
    rank = np.empty(n, dtype=np.intp)
    rank[seq] = np.arange(1, n + 1)
    marked = np.where(cells, rank[:, None], n + 1)
    return marked.min(axis=0)


def _prefix_counts(cells: np.ndarray, seq: np.ndarray) -> np.ndarray:
    """How many columns are hit by the first i tests, for i = 1..n."""
    n = len(seq)
    pos = first_positions(cells, seq)
    pos = pos[pos <= n]
    return np.cumsum(np.bincount(pos - 1, minlength=n)[:n])


def _detected_faults(faults: FaultMatrix, strict: bool) -> np.ndarray:
    detected = faults.cells.any(axis=0)
    if detected.all():
        return faults.cells
    missing = [f for f, d in zip(faults.faults, detected) if not d]
    if strict:
        raise UndetectedFault(f"faults detected by no test: {missing}")
    log.warning("dropping undetected faults %s", missing)
    if not detected.any():
        raise UndetectedFault("no fault is detected by any test")
    return faults.cells[:, detected]


def pfd_curve(ordering, faults: FaultMatrix, strict: bool = True) -> np.ndarray:
    """Fraction of faults detected by each prefix of ``ordering``."""
    seq = _sequence_for(ordering, faults.n_tests)
    cells = _detected_faults(faults, strict)
    return _prefix_counts(cells, seq) / cells.shape[1]


def apfd(ordering, faults: FaultMatrix, strict: bool = True) -> MetricValue:
    return MetricValue("APFD", apxx(pfd_curve(ordering, faults, strict)), _provenance(ordering))


def apfd_by_positions(positions: Sequence[int], n: int) -> float:
    """APFD from the 1-based first-detection position of each fault."""
    tf = np.asarray(positions, dtype=float)
    if tf.size == 0:
        raise ValueError("no fault positions given")
    if n < 1 or tf.min() < 1 or tf.max() > n:
        raise ValueError(f"fault positions must lie in 1..{n}")
    m = tf.size
    return float(1.0 - tf.sum() / (n * m) + 1.0 / (2 * n))


def apfd_c(ordering, faults: FaultMatrix, costs: CostVector, strict: bool = True) -> MetricValue:
    """Cost-cognizant APFD: each fault earns the cost remaining after its
    first detection, counting half the detecting test's own cost."""
    if costs.tests != faults.tests:
        raise ValueError("cost vector and fault matrix list different tests")
    seq = _sequence_for(ordering, faults.n_tests)
    cells = _detected_faults(faults, strict)
    c = costs.cost[seq]
    tail = np.cumsum(c[::-1])[::-1]  # tail[k] = sum of c[k:]
    tf = first_positions(cells, seq) - 1
    num = float(np.sum(tail[tf] - 0.5 * c[tf]))
    value = num / (cells.shape[1] * float(c.sum()))
    return MetricValue("APFDC", value, _provenance(ordering))


def pmd_counts(ext: np.ndarray, seq: Iterable[int]) -> np.ndarray:
    """Unique-d-vector counts over M' after each prefix of ``seq``.

    ``ext`` holds one column per member of M' (original included).
    Runs partition refinement: each test splits every class by its bit.
    """
    seq = list(seq)
    width = ext.shape[1]
    labels = np.zeros(width, dtype=np.intp)
    out = np.empty(len(seq), dtype=np.intp)
    for i, t in enumerate(seq):
        key = labels * 2 + ext[t]
        counts = np.bincount(key)
        unique = int(np.count_nonzero(counts == 1))
        out[i] = unique
        if unique == width:
            out[i:] = width
            break
        labels = (np.cumsum(counts > 0) - 1)[key]
    return out


def _extended(kill: KillMatrix) -> np.ndarray:
    ext = np.zeros((kill.n_tests, kill.n_mutants + 1), dtype=np.intp)
    ext[:, :-1] = kill.cells
    return ext


def pmk_curve(ordering, kill: KillMatrix) -> np.ndarray:
    seq = _sequence_for(ordering, kill.n_tests)
    counts = _prefix_counts(kill.cells, seq)
    total = counts[-1]
    if total == 0:
        raise DegenerateDenominator("no mutant is killed by the full suite")
    return counts / total


def pmd_curve(ordering, kill: KillMatrix) -> np.ndarray:
    seq = _sequence_for(ordering, kill.n_tests)
    counts = pmd_counts(_extended(kill), seq)
    total = counts[-1]
    if total == 0:
        raise DegenerateDenominator("the full suite leaves no d-vector unique")
    return counts / total


def apmk(ordering, kill: KillMatrix) -> MetricValue:
    return MetricValue("APMK", apxx(pmk_curve(ordering, kill)), _provenance(ordering))


def apmd(ordering, kill: KillMatrix) -> MetricValue:
    return MetricValue("APMD", apxx(pmd_curve(ordering, kill)), _provenance(ordering))


class MutationFitness:
    """Evaluates (APMK, APMD) for many orderings of one kill matrix.

    Precomputes the normalizing totals once; ``evaluations`` counts calls.
    When the full suite leaves no member of M' unique the APMD objective is
    undefined and is held at 0, so the search optimizes APMK alone.
    """

    def __init__(self, kill: KillMatrix):
        self.kill = kill
        self.n = kill.n_tests
        self.cells = kill.cells
        self.ext = _extended(kill)
        self.killed_total = int(np.count_nonzero(kill.cells.any(axis=0)))
        if self.killed_total == 0:
            raise DegenerateDenominator("no mutant is killed by the full suite")
        self.unique_total = int(pmd_counts(self.ext, range(self.n))[-1])
        self.evaluations = 0

    def __call__(self, seq: Sequence[int]) -> tuple[float, float]:
        self.evaluations += 1
        arr = np.asarray(seq, dtype=np.intp)
        n = self.n
        kill_auc = _prefix_counts(self.cells, arr).sum() / (self.killed_total * n)
        half = 1.0 / (2 * n)
        if not self.unique_total:
            return float(kill_auc - half), 0.0
        dist_auc = pmd_counts(self.ext, arr).sum() / (self.unique_total * n)
        return float(kill_auc - half), float(dist_auc - half)


def evaluate(
    ordering,
    metrics: Iterable[str],
    kill: KillMatrix | None = None,
    faults: FaultMatrix | None = None,
    costs: CostVector | None = None,
    strict: bool = True,
) -> dict[str, float]:
    """Compute the named metrics for one ordering."""
    out = {}
    for name in metrics:
        key = name.upper().replace("_", "")
        if key == "APFD":
            _require(faults, "faults", key)
            out[key] = apfd(ordering, faults, strict).value
        elif key == "APFDC":
            _require(faults, "faults", key)
            _require(costs, "costs", key)
            out[key] = apfd_c(ordering, faults, costs, strict).value
        elif key == "APMK":
            _require(kill, "kill matrix", key)
            out[key] = apmk(ordering, kill).value
        elif key == "APMD":
            _require(kill, "kill matrix", key)
            out[key] = apmd(ordering, kill).value
        else:
            raise ValueError(f"unknown metric {name!r}; choose from {', '.join(METRICS)}")
    return out


def _require(value, what: str, metric: str) -> None:
    if value is None:
        raise ValueError(f"{metric} needs a {what}")
