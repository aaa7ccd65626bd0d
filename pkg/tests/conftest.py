import numpy as np
import pytest

from mutprio.model import FaultMatrix, KillMatrix

# Working example: rows t1..t3 over mutants m1..m4.
FIX_A_ROWS = [
    [1, 1, 1, 1],
    [0, 0, 1, 1],
    [0, 1, 0, 1],
]
FIX_A_CSV = "test,m1,m2,m3,m4\nt1,1,1,1,1\nt2,0,0,1,1\nt3,0,1,0,1\n"


def kill_matrix(rows, prefix="m") -> KillMatrix:
    rows = np.asarray(rows, dtype=bool)
    n, m = rows.shape
    return KillMatrix(
        tuple(f"t{i + 1}" for i in range(n)), tuple(f"{prefix}{j + 1}" for j in range(m)), rows
    )


def fault_matrix(rows) -> FaultMatrix:
    rows = np.asarray(rows, dtype=bool)
    n, m = rows.shape
    return FaultMatrix(tuple(f"t{i + 1}" for i in range(n)), tuple(f"f{j + 1}" for j in range(m)), rows)


def random_rows(rng, n, m, density=0.4, killable=True):
    rows = rng.random((n, m)) < density
    if killable and not rows.any():
        rows[rng.integers(n), rng.integers(m)] = True
    return rows


@pytest.fixture
def fix_a() -> KillMatrix:
    return kill_matrix(FIX_A_ROWS)


@pytest.fixture
def fix_a_faults() -> FaultMatrix:
    return fault_matrix([[0], [0], [1]])


# One PASS/FAIL line per acceptance criterion, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
