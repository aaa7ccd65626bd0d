"""Domain types, CSV ingestion and cross-matrix validation.

Every matrix is a dense boolean ``numpy`` array whose rows follow the
canonical test order, i.e. the row order of the file it was read from.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Literal, NamedTuple, Sequence

import numpy as np

log = logging.getLogger(__name__)

MatrixKind = Literal["kill", "coverage", "fault"]


class MatrixFormatError(ValueError):
    """Raised when a matrix or cost file does not follow the CSV format."""


class DuplicateName(MatrixFormatError):
    pass


class RaggedRow(MatrixFormatError):
    pass


class InvalidCell(MatrixFormatError):
    pass


class EmptyMatrix(MatrixFormatError):
    pass


class TestSetMismatch(ValueError):
    """Two inputs of one bundle do not describe the same tests."""

    __test__ = False  # keep pytest from collecting it


class TestId(NamedTuple):
    name: str
    index: int


class MutantId(NamedTuple):
    name: str
    index: int


def _frozen_bool(cells: Any) -> np.ndarray:
    arr = np.array(cells, dtype=bool)
    if arr.ndim != 2:
        raise RaggedRow(f"cells must form a rectangular 2-D matrix, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_names(names: Sequence[str], what: str) -> tuple[str, ...]:
    names = tuple(str(n) for n in names)
    seen: set[str] = set()
    for name in names:
        if not name:
            raise MatrixFormatError(f"empty {what} name")
        if name in seen:
            raise DuplicateName(f"duplicate {what} name {name!r}")
        seen.add(name)
    return names


@dataclass(frozen=True, eq=False)
class _BinaryMatrix:
    tests: tuple[str, ...]
    columns: tuple[str, ...]
    cells: np.ndarray

    column_label = "column"

    def __post_init__(self):
        object.__setattr__(self, "tests", _check_names(self.tests, "test"))
        object.__setattr__(self, "columns", _check_names(self.columns, self.column_label))
        cells = _frozen_bool(self.cells)
        if not self.tests or not self.columns:
            raise EmptyMatrix("a matrix needs at least one test and one column")
        if cells.shape != (len(self.tests), len(self.columns)):
            raise RaggedRow(
                f"cells shape {cells.shape} does not match "
                f"{len(self.tests)} tests x {len(self.columns)} {self.column_label}s"
            )
        object.__setattr__(self, "cells", cells)

    @property
    def n_tests(self) -> int:
        return len(self.tests)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def test_ids(self) -> list[TestId]:
        return [TestId(name, i) for i, name in enumerate(self.tests)]

    def test_index(self, name: str) -> int:
        try:
            return self.tests.index(name)
        except ValueError:
            raise KeyError(f"unknown test {name!r}") from None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.tests == other.tests
            and self.columns == other.columns
            and np.array_equal(self.cells, other.cells)
        )

    def __repr__(self):
        return f"{type(self).__name__}({self.cells.shape[0]} tests x {self.cells.shape[1]} {self.column_label}s)"


class KillMatrix(_BinaryMatrix):
    """Test x mutant matrix; ``cells[i, j]`` is true when test i kills mutant j.

    Each column is the mutant's d-vector over the whole suite.
    """

    column_label = "mutant"

    @property
    def mutants(self) -> tuple[str, ...]:
        return self.columns

    @property
    def n_mutants(self) -> int:
        return len(self.columns)

    def mutant_ids(self) -> list[MutantId]:
        return [MutantId(name, j) for j, name in enumerate(self.columns)]


class CoverageMatrix(_BinaryMatrix):
    column_label = "statement"

    @property
    def statements(self) -> tuple[str, ...]:
        return self.columns


class FaultMatrix(_BinaryMatrix):
    column_label = "fault"

    @property
    def faults(self) -> tuple[str, ...]:
        return self.columns

    def detecting_tests(self, fault: str | None = None) -> frozenset[int]:
        """Indices of tests detecting ``fault``, or any fault when None."""
        if fault is None:
            return frozenset(np.flatnonzero(self.cells.any(axis=1)).tolist())
        if fault not in self.columns:
            raise KeyError(f"unknown fault {fault!r}")
        j = self.columns.index(fault)
        return frozenset(np.flatnonzero(self.cells[:, j]).tolist())


_KINDS: dict[str, type[_BinaryMatrix]] = {
    "kill": KillMatrix,
    "coverage": CoverageMatrix,
    "fault": FaultMatrix,
}


@dataclass(frozen=True, eq=False)
class CostVector:
    tests: tuple[str, ...]
    cost: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "tests", _check_names(self.tests, "test"))
        cost = np.array(self.cost, dtype=float)
        if cost.shape != (len(self.tests),):
            raise RaggedRow("one cost per test required")
        if not len(self.tests):
            raise EmptyMatrix("empty cost vector")
        if not np.all(np.isfinite(cost)) or np.any(cost <= 0):
            raise ValueError("test costs must be positive and finite")
        cost.setflags(write=False)
        object.__setattr__(self, "cost", cost)


@dataclass(frozen=True)
class Ordering:
    """A permutation of test indices plus how it was produced."""

    sequence: tuple[int, ...]
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        seq = tuple(int(i) for i in self.sequence)
        if sorted(seq) != list(range(len(seq))):
            raise ValueError(f"not a permutation of 0..{len(seq) - 1}: {seq}")
        object.__setattr__(self, "sequence", seq)

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def names(self, tests: Sequence[str]) -> list[str]:
        return [tests[i] for i in self.sequence]


def as_sequence(ordering: Ordering | Iterable[int]) -> tuple[int, ...]:
    if isinstance(ordering, Ordering):
        return ordering.sequence
    return Ordering(tuple(ordering)).sequence


# -- CSV ------------------------------------------------------------------


def _rows(text: str) -> list[list[str]]:
    lines = [line.rstrip("\r") for line in io.StringIO(text).read().split("\n")]
    return [[cell.strip() for cell in line.split(",")] for line in lines if line.strip()]


def parse_matrix(text: str, kind: MatrixKind = "kill"):
    """Parse ``test,<col>,...`` CSV text into the matrix type for ``kind``."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown matrix kind {kind!r}") from None
    rows = _rows(text)
    if len(rows) < 2:
        raise EmptyMatrix("matrix needs a header row and at least one test row")
    header, body = rows[0], rows[1:]
    columns = header[1:]
    if not columns:
        raise EmptyMatrix("header names no columns")
    tests = []
    cells = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise RaggedRow(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        tests.append(row[0])
        values = []
        for cell in row[1:]:
            if cell not in ("0", "1"):
                raise InvalidCell(f"line {lineno}: cell {cell!r} is not 0 or 1")
            values.append(cell == "1")
        cells.append(values)
    return cls(tuple(tests), tuple(columns), np.array(cells, dtype=bool))


def write_matrix(matrix: _BinaryMatrix) -> str:
    lines = [",".join(("test",) + matrix.columns)]
    for name, row in zip(matrix.tests, matrix.cells):
        lines.append(",".join([name] + ["1" if v else "0" for v in row]))
    return "\n".join(lines) + "\n"


def parse_costs(text: str) -> CostVector:
    rows = _rows(text)
    if not rows or rows[0] != ["test", "cost"]:
        raise MatrixFormatError("cost file header must be 'test,cost'")
    tests, costs = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise RaggedRow(f"line {lineno}: expected 2 fields, got {len(row)}")
        try:
            costs.append(float(row[1]))
        except ValueError:
            raise InvalidCell(f"line {lineno}: cost {row[1]!r} is not a number") from None
        tests.append(row[0])
    return CostVector(tuple(tests), np.array(costs))


def write_costs(costs: CostVector) -> str:
    lines = ["test,cost"] + [f"{t},{c!r}" for t, c in zip(costs.tests, costs.cost.tolist())]
    return "\n".join(lines) + "\n"


def parse_ordering(text: str, tests: Sequence[str]) -> Ordering:
    """Read a ``rank,test`` CSV back into an Ordering over ``tests``."""
    rows = _rows(text)
    if not rows or rows[0] != ["rank", "test"]:
        raise MatrixFormatError("ordering header must be 'rank,test'")
    index = {name: i for i, name in enumerate(tests)}
    ranked = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise RaggedRow(f"line {lineno}: expected 2 fields")
        if row[1] not in index:
            raise KeyError(f"line {lineno}: unknown test {row[1]!r}")
        ranked.append((int(row[0]), index[row[1]]))
    ranked.sort()
    if [r for r, _ in ranked] != list(range(1, len(ranked) + 1)):
        raise MatrixFormatError("ranks must run 1..n without gaps")
    return Ordering(tuple(i for _, i in ranked))


def write_ordering(ordering: Ordering, tests: Sequence[str]) -> str:
    lines = ["rank,test"] + [f"{r},{tests[i]}" for r, i in enumerate(ordering.sequence, start=1)]
    return "\n".join(lines) + "\n"


def read_matrix(path, kind: MatrixKind = "kill"):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), kind)


def read_costs(path) -> CostVector:
    with open(path, encoding="utf-8") as fh:
        return parse_costs(fh.read())


# -- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    undetected_faults: list[str] = field(default_factory=list)
    unkilled_mutants: list[str] = field(default_factory=list)
    zero_kill_tests: list[str] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not (self.undetected_faults or self.unkilled_mutants or self.zero_kill_tests)

    def warnings(self) -> list[str]:
        out = [f"fault {f} is detected by no test" for f in self.undetected_faults]
        out += [f"mutant {m} is killed by no test" for m in self.unkilled_mutants]
        out += [f"test {t} kills no mutant" for t in self.zero_kill_tests]
        return out


def validate_bundle(
    kill: KillMatrix,
    coverage: CoverageMatrix | None = None,
    faults: FaultMatrix | None = None,
    costs: CostVector | None = None,
) -> ValidationReport:
    """Cross-check a set of inputs describing one suite.

    Raises TestSetMismatch when the inputs disagree on test names or order;
    everything else is reported as a warning.
    """
    others = {"coverage": coverage, "faults": faults, "costs": costs}
    for label, other in others.items():
        if other is None:
            continue
        if set(other.tests) != set(kill.tests):
            missing = sorted(set(kill.tests) - set(other.tests))
            extra = sorted(set(other.tests) - set(kill.tests))
            raise TestSetMismatch(
                f"{label} tests differ from kill matrix tests: missing {missing}, extra {extra}"
            )
        if other.tests != kill.tests:
            raise TestSetMismatch(f"{label} lists the kill matrix tests in a different order")

    report = ValidationReport()
    report.unkilled_mutants = [
        kill.columns[j] for j in np.flatnonzero(~kill.cells.any(axis=0))
    ]
    report.zero_kill_tests = [kill.tests[i] for i in np.flatnonzero(~kill.cells.any(axis=1))]
    if faults is not None:
        report.undetected_faults = [
            faults.columns[j] for j in np.flatnonzero(~faults.cells.any(axis=0))
        ]
    for msg in report.warnings():
        log.warning(msg)
    return report
