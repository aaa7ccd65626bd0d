"""Nonparametric comparison of metric samples from repeated runs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple, Sequence

import numpy as np

Outcome = Literal["superior", "equal", "inferior"]
DEFAULT_ALPHA = 0.001


@dataclass(frozen=True)
class SampleSet:
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("empty sample set")

    def __len__(self):
        return len(self.values)


def _values(sample) -> np.ndarray:
    vals = sample.values if isinstance(sample, SampleSet) else sample
    arr = np.asarray(vals, dtype=float)
    if arr.size == 0:
        raise ValueError("empty sample")
    return arr


class MannWhitneyResult(NamedTuple):
    u: float
    p: float


def rankdata(values: Sequence[float]) -> np.ndarray:
    """1-based ranks, ties sharing the mean of the ranks they span."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="mergesort")
    sorted_x = x[order]
    ranks = np.empty(x.size)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and sorted_x[j + 1] == sorted_x[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def mann_whitney_u(a, b) -> MannWhitneyResult:
    """U statistic for ``a`` and its two-sided p-value.

    The p-value uses the normal approximation with tie-corrected variance and
    a 0.5 continuity correction. When every pooled value is identical the
    variance is zero and p is reported as 1.
    """
    x, y = _values(a), _values(b)
    n1, n2 = x.size, y.size
    ranks = rankdata(np.concatenate([x, y]))
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2.0)
    mu = n1 * n2 / 2.0
    n = n1 + n2
    _, ties = np.unique(np.concatenate([x, y]), return_counts=True)
    tie_term = float((ties**3 - ties).sum())
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1))) if n > 1 else 0.0
    if var <= 0:
        return MannWhitneyResult(u, 1.0)
    z = (abs(u - mu) - 0.5) / math.sqrt(var)
    p = math.erfc(max(z, 0.0) / math.sqrt(2.0))
    return MannWhitneyResult(u, min(p, 1.0))


def a12(a, b) -> float:
    """Probability that a value drawn from ``a`` beats one from ``b`` (ties count half)."""
    x, y = _values(a), _values(b)
    greater = np.count_nonzero(x[:, None] > y[None, :])
    equal = np.count_nonzero(x[:, None] == y[None, :])
    return (greater + 0.5 * equal) / (x.size * y.size)


def _paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("correlation needs at least two pairs")
    return x, y


def pearson(x, y) -> float:
    """Product-moment correlation; NaN when either side has zero variance."""
    x, y = _paired(x, y)
    # test constancy exactly; the float mean can leave residue on constant data
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return math.nan
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def spearman(x, y) -> float:
    """Pearson correlation of mid-ranks; NaN when either side is constant."""
    x, y = _paired(x, y)
    return pearson(rankdata(x), rankdata(y))


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    p_value: float
    a12: float
    u: float = math.nan

    @property
    def symbol(self) -> str:
        return {"superior": "+", "equal": "=", "inferior": "-"}[self.outcome]

    def to_json(self) -> dict:
        return {"U": self.u, "p": self.p_value, "a12": self.a12, "verdict": self.outcome}


def compare(a, b, alpha: float = DEFAULT_ALPHA) -> Verdict:
    """Superior / equal / inferior verdict of ``a`` against ``b``."""
    u, p = mann_whitney_u(a, b)
    effect = a12(a, b)
    if p < alpha and effect > 0.5:
        outcome = "superior"
    elif p < alpha and effect < 0.5:
        outcome = "inferior"
    else:
        outcome = "equal"
    return Verdict(outcome, p, effect, u)


@dataclass(frozen=True)
class SuperiorityRow:
    superior: int
    equal: int
    inferior: int
    mean_a12: float


def superiority_row(verdicts: Iterable[Verdict]) -> SuperiorityRow:
    """Count +/=/- verdicts over several subjects and average their A12."""
    verdicts = list(verdicts)
    if not verdicts:
        raise ValueError("no verdicts")
    counts = {"superior": 0, "equal": 0, "inferior": 0}
    for v in verdicts:
        counts[v.outcome] += 1
    return SuperiorityRow(
        counts["superior"], counts["equal"], counts["inferior"],
        float(np.mean([v.a12 for v in verdicts])),
    )
