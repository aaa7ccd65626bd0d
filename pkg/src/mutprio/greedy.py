"""Additional-greedy prioritizers: RND, SCV, GRK, GRD and HYB-w.

Every technique repeatedly picks, among the tests not yet ordered, one that
maximizes its gain over the tests picked since the last reset:

* GRK: mutants newly killed (kappa)
* GRD: members of M' newly given a unique d-vector (delta)
* HYB-w: ``w * kappa + (1 - w) * delta``
* SCV: statements newly covered

When no remaining test has positive gain the baseline is cleared and the
greedy loop restarts on the remaining tests. Ties are broken by listing the
argmax candidates in canonical test order and drawing one with a single
SplitMix64 draw per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Sequence

import numpy as np

from . import adequacy
from .model import CoverageMatrix, KillMatrix, Ordering
from .rng import SplitMix64

TECHNIQUES = ("RND", "SCV", "GRK", "GRD", "HYB")


@dataclass(frozen=True)
class GreedyConfig:
    technique: str
    weight: float | None = None
    seed: int = 0

    def __post_init__(self):
        tech = self.technique.upper()
        object.__setattr__(self, "technique", tech)
        if tech not in TECHNIQUES:
            raise ValueError(f"unknown greedy technique {self.technique!r}")
        if tech == "HYB":
            if self.weight is None or not 0.0 <= self.weight <= 1.0:
                raise ValueError("HYB needs a weight in [0, 1]")
        elif self.weight is not None:
            raise ValueError(f"{tech} takes no weight")

    @property
    def label(self) -> str:
        return technique_label(self.technique, self.weight)


def technique_label(technique: str, weight: float | None = None) -> str:
    if technique.upper() != "HYB":
        return technique.upper()
    pct = weight * 100
    if abs(pct - round(pct)) < 1e-9:
        return f"HYB-{int(round(pct)):03d}"
    return f"HYB-{weight:g}"


def additional_gain_kill(kill: KillMatrix, selected: Collection[int], candidate: int) -> int:
    """Mutants killed by ``candidate`` but by none of ``selected``."""
    if candidate in selected:
        raise ValueError("candidate is already selected")
    already = kill.cells[list(selected)].any(axis=0)
    return int(np.count_nonzero(kill.cells[candidate] & ~already))


def additional_gain_distinguish(kill: KillMatrix, selected: Sequence[int], candidate: int) -> int:
    """Increase in unique d-vectors over M' when ``candidate`` joins ``selected``."""
    if candidate in selected:
        raise ValueError("candidate is already selected")
    before = adequacy.unique_count(kill, list(selected))
    return adequacy.unique_count(kill, list(selected) + [candidate]) - before


class _KillGain:
    """Per-test count of not-yet-hit columns, updated as tests are picked."""

    def __init__(self, cells: np.ndarray):
        self.cells = cells
        self.by_column = np.ascontiguousarray(cells.T)
        self.totals = cells.sum(axis=1)
        self.reset()

    def reset(self):
        self.hit = np.zeros(self.cells.shape[1], dtype=bool)
        self.gain = self.totals.copy()

    def select(self, t: int):
        new = np.flatnonzero(self.cells[t] & ~self.hit)
        if new.size:
            self.hit[new] = True
            self.gain -= self.by_column[new].sum(axis=0)


def _split_gain(ones: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    """Singletons produced when classes of ``sizes`` split into ``ones`` / rest."""
    return (ones == 1).astype(np.intp) + ((sizes - ones) == 1) - (sizes == 1)


class _DistinguishGain:
    """Per-test delta over M', kept current by partition refinement.

    Only classes actually split by a picked test are revisited, so a step
    costs O(unordered tests x members of split classes).
    """

    def __init__(self, kill: KillMatrix):
        n, m = kill.cells.shape
        # member-major layout: row j holds member j's kill bits over all tests
        self.all_members = np.zeros((m + 1, n), dtype=np.uint8)
        self.all_members[:m] = kill.cells.T
        self.totals = kill.cells.sum(axis=1)
        self.alive = np.arange(n)
        self.members = self.all_members
        self.reset()

    def reset(self):
        width = self.all_members.shape[0]
        self.labels = np.zeros(width, dtype=np.intp)
        self.next_label = 1
        self.gain = _split_gain(self.totals[None, :], np.array([[width]]))[0]

    def compact(self, remaining: np.ndarray):
        """Drop ordered tests from the working columns once half are gone."""
        count = int(np.count_nonzero(remaining))
        if count and count * 2 <= self.alive.size:
            self.alive = np.flatnonzero(remaining)
            self.members = np.ascontiguousarray(self.all_members[:, self.alive])

    def select(self, t: int):
        bits = self.all_members[:, t]
        sizes = np.bincount(self.labels)
        ones = np.bincount(self.labels, weights=bits, minlength=sizes.size).astype(np.intp)
        split = (ones > 0) & (ones < sizes)
        if not split.any():
            return
        cols = np.flatnonzero(split[self.labels])
        col_bits = bits[cols].astype(bool)
        killed, spared = cols[col_bits], cols[~col_bits]
        # stable sort by class keeps every class's members contiguous
        killed = killed[np.argsort(self.labels[killed], kind="stable")]
        spared = spared[np.argsort(self.labels[spared], kind="stable")]
        k_lab, s_lab = self.labels[killed], self.labels[spared]
        k_starts = np.flatnonzero(np.r_[True, k_lab[1:] != k_lab[:-1]])
        s_starts = np.flatnonzero(np.r_[True, s_lab[1:] != s_lab[:-1]])
        classes = k_lab[k_starts]

        o_one = np.add.reduceat(self.members[killed], k_starts, axis=0, dtype=np.int32)
        o_zero = np.add.reduceat(self.members[spared], s_starts, axis=0, dtype=np.int32)
        s_one = ones[classes][:, None]
        s_zero = (sizes[classes] - ones[classes])[:, None]
        self.gain[self.alive] += (
            _split_gain(o_one, s_one)
            + _split_gain(o_zero, s_zero)
            - _split_gain(o_one + o_zero, s_one + s_zero)
        ).sum(axis=0)

        fresh = np.arange(self.next_label, self.next_label + classes.size)
        self.next_label += classes.size
        remap = np.zeros(sizes.size, dtype=np.intp)
        remap[classes] = fresh
        self.labels[killed] = remap[k_lab]


def _additional_greedy(
    n: int,
    kill_gain: _KillGain | None,
    dist_gain: _DistinguishGain | None,
    weight: float,
    rng: SplitMix64,
) -> list[int]:
    remaining = np.ones(n, dtype=bool)
    order: list[int] = []
    fresh = True
    while len(order) < n:
        score = _score(kill_gain, dist_gain, weight)
        best = score[remaining].max()
        if best <= 0 and not fresh:
            for g in (kill_gain, dist_gain):
                if g is not None:
                    g.reset()
            fresh = True
            continue
        candidates = np.flatnonzero(remaining & (score == best))
        t = int(candidates[rng.below(candidates.size)])
        order.append(t)
        remaining[t] = False
        fresh = False
        for g in (kill_gain, dist_gain):
            if g is not None:
                g.select(t)
        if dist_gain is not None:
            dist_gain.compact(remaining)
    return order


def _score(kill_gain, dist_gain, weight: float) -> np.ndarray:
    if dist_gain is None:
        return kill_gain.gain.astype(float)
    if kill_gain is None:
        return dist_gain.gain.astype(float)
    return weight * kill_gain.gain + (1 - weight) * dist_gain.gain


def prioritize_greedy(
    kill: KillMatrix | None,
    config: GreedyConfig,
    coverage: CoverageMatrix | None = None,
) -> Ordering:
    """Order every test with the technique named in ``config``."""
    tech = config.technique
    rng = SplitMix64(config.seed)
    provenance = {"technique": config.label, "seed": config.seed}
    if tech == "HYB":
        provenance["weight"] = config.weight

    if tech == "SCV":
        if coverage is None:
            raise ValueError("SCV needs a coverage matrix")
        seq = _additional_greedy(coverage.n_tests, _KillGain(coverage.cells), None, 1.0, rng)
        return Ordering(tuple(seq), provenance)
    if kill is None:
        raise ValueError(f"{tech} needs a kill matrix")
    n = kill.n_tests
    if tech == "RND":
        return Ordering(tuple(rng.permutation(n)), provenance)
    if tech == "GRK":
        seq = _additional_greedy(n, _KillGain(kill.cells), None, 1.0, rng)
    elif tech == "GRD":
        seq = _additional_greedy(n, None, _DistinguishGain(kill), 0.0, rng)
    else:
        seq = _additional_greedy(n, _KillGain(kill.cells), _DistinguishGain(kill), config.weight, rng)
    return Ordering(tuple(seq), provenance)
