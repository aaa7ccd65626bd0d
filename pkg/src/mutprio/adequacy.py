"""d-vectors, kill and distinguishment predicates, and mutant grouping.

Distinguishment is always judged over M' = mutants + the original program.
The original's d-vector is the all-zero vector, so it is handled as one
extra all-zero column rather than as a special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .model import KillMatrix

ORIGINAL = -1
"""Member id used for the original program inside groups of M'."""

GroupKind = Literal["original-equivalent", "duplicated", "singleton"]


def _test_indices(kill: KillMatrix, tests: Iterable[int]) -> np.ndarray:
    idx = np.fromiter((int(t) for t in tests), dtype=np.intp)
    if idx.size and (idx.min() < 0 or idx.max() >= kill.n_tests):
        raise IndexError(f"test index out of range 0..{kill.n_tests - 1}")
    return idx


def _check_mutant(kill: KillMatrix, mutant: int) -> None:
    if mutant != ORIGINAL and not 0 <= mutant < kill.n_mutants:
        raise IndexError(f"mutant index {mutant} out of range 0..{kill.n_mutants - 1}")


def extended_cells(kill: KillMatrix) -> np.ndarray:
    """Kill cells with the original's all-zero column appended last."""
    return np.hstack([kill.cells, np.zeros((kill.n_tests, 1), dtype=bool)])


def dvector(kill: KillMatrix, tests: Sequence[int], mutant: int) -> tuple[bool, ...]:
    """Kill outcomes of ``mutant`` (or ORIGINAL) over ``tests`` in the given order."""
    idx = _test_indices(kill, tests)
    _check_mutant(kill, mutant)
    if mutant == ORIGINAL:
        return (False,) * idx.size
    return tuple(bool(b) for b in kill.cells[idx, mutant])


def kills(kill: KillMatrix, tests: Iterable[int], mutant: int) -> bool:
    idx = _test_indices(kill, tests)
    _check_mutant(kill, mutant)
    if mutant == ORIGINAL:
        return False
    return bool(kill.cells[idx, mutant].any())


def _member(j: int, n_mutants: int) -> int:
    return ORIGINAL if j == n_mutants else j


def _partition(kill: KillMatrix, idx: np.ndarray) -> list[tuple[int, ...]]:
    ext = extended_cells(kill)[idx]
    if idx.size == 0:
        return [(ORIGINAL,) + tuple(range(kill.n_mutants))]
    _, inverse = np.unique(ext.T, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    groups: dict[int, list[int]] = {}
    for j, label in enumerate(inverse.tolist()):
        groups.setdefault(label, []).append(_member(j, kill.n_mutants))
    return sorted((tuple(sorted(g)) for g in groups.values()), key=_group_key)


def _group_key(group: Sequence[int]) -> tuple[int, int]:
    # original's group first, then by lowest mutant index
    return (0, 0) if ORIGINAL in group else (1, min(group))


@dataclass(frozen=True)
class DistinguishmentState:
    classes: tuple[tuple[int, ...], ...]

    @property
    def unique_count(self) -> int:
        return sum(1 for c in self.classes if len(c) == 1)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.classes)


def distinguishment_state(kill: KillMatrix, tests: Sequence[int]) -> DistinguishmentState:
    """Partition M' by equality of d-vectors over ``tests``."""
    idx = _test_indices(kill, tests)
    return DistinguishmentState(tuple(_partition(kill, idx)))


def unique_count(kill: KillMatrix, tests: Sequence[int]) -> int:
    """Number of members of M' whose d-vector over ``tests`` is unique."""
    idx = _test_indices(kill, tests)
    if idx.size == 0:
        return 1 if kill.n_mutants == 0 else 0
    ext = extended_cells(kill)[idx]
    _, counts = np.unique(ext.T, axis=0, return_counts=True)
    return int(np.count_nonzero(counts == 1))


def killed_count(kill: KillMatrix, tests: Iterable[int]) -> int:
    idx = _test_indices(kill, tests)
    return int(np.count_nonzero(kill.cells[idx].any(axis=0)))


def is_k_adequate(kill: KillMatrix, tests: Iterable[int]) -> bool:
    """True when every mutant is killed by at least one of ``tests``."""
    idx = _test_indices(kill, tests)
    return bool(kill.cells[idx].any(axis=0).all())


def is_d_adequate(kill: KillMatrix, tests: Iterable[int]) -> bool:
    """True when every pair of members of M' has distinct d-vectors."""
    idx = _test_indices(kill, tests)
    return unique_count(kill, idx) == kill.n_mutants + 1


@dataclass(frozen=True)
class MutantGroup:
    members: tuple[int, ...]
    kind: GroupKind

    def names(self, kill: KillMatrix, original_name: str = "original") -> list[str]:
        return [original_name if m == ORIGINAL else kill.mutants[m] for m in self.members]


@dataclass(frozen=True)
class MutantGroupReport:
    groups: tuple[MutantGroup, ...]

    @property
    def equivalent(self) -> tuple[int, ...]:
        """Mutants no test kills (the original's group minus the original)."""
        for g in self.groups:
            if ORIGINAL in g.members:
                return tuple(m for m in g.members if m != ORIGINAL)
        return ()

    @property
    def duplicated(self) -> list[tuple[int, ...]]:
        return [g.members for g in self.groups if g.kind == "duplicated"]

    def to_json(self, kill: KillMatrix) -> dict:
        return {
            "groups": [
                {"members": g.names(kill), "classification": g.kind} for g in self.groups
            ]
        }


def indistinguishable_groups(kill: KillMatrix) -> MutantGroupReport:
    """Group M' by full-suite d-vector equality and classify each group.

    A group of two or more that holds the original is ``original-equivalent``
    (its mutants are equivalent with respect to the suite), other groups of
    two or more are ``duplicated``, and groups of one are ``singleton``.
    """
    groups = []
    for members in _partition(kill, np.arange(kill.n_tests)):
        if len(members) == 1:
            kind = "singleton"
        elif ORIGINAL in members:
            kind = "original-equivalent"
        else:
            kind = "duplicated"
        groups.append(MutantGroup(members, kind))
    return MutantGroupReport(tuple(groups))
