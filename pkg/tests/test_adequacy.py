from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import FIX_A_ROWS, kill_matrix, random_rows
from mutprio.adequacy import (
    ORIGINAL,
    distinguishment_state,
    dvector,
    indistinguishable_groups,
    is_d_adequate,
    is_k_adequate,
    killed_count,
    kills,
    unique_count,
)
from strategies import kill_matrices, matrix_and_subset

T1, T2, T3 = 0, 1, 2
M1, M2, M3, M4 = 0, 1, 2, 3


class TestWorkingExampleReconstruction:
    """The fixture matrix must satisfy every constraint it was built from."""

    def test_first_test_kills_all_four(self):
        assert all(FIX_A_ROWS[T1])

    def test_full_suite_distinguishes_all_five(self):
        assert oracles.unique_count(FIX_A_ROWS, [T1, T2, T3]) == 5

    def test_graph_edge_labels(self):
        # Root -> A labeled t1: exactly one class is killed by t1 alone
        vecs = oracles.columns_over(FIX_A_ROWS, [T1, T2, T3])
        kill_sets = [frozenset(t for t in range(3) if v[t]) for v in vecs]
        assert kill_sets.count(frozenset({T1})) == 1
        # A -> B labeled t3: some class is killed by exactly t1 and t3
        assert frozenset({T1, T3}) in kill_sets


def test_dvector_examples(fix_a):
    assert dvector(fix_a, [T1, T2, T3], M4) == (True, True, True)
    assert dvector(fix_a, [T2], M1) == (False,)
    assert dvector(fix_a, [T3, T1], M2) == (True, True)
    assert dvector(fix_a, [T1, T2], ORIGINAL) == (False, False)


def test_kills_examples(fix_a):
    assert all(kills(fix_a, [T1], m) for m in range(4))
    assert not kills(fix_a, [T2, T3], M1)
    assert not kills(fix_a, [T1, T2, T3], ORIGINAL)


def test_distinguishment_state_examples(fix_a):
    full = distinguishment_state(fix_a, [T1, T2, T3])
    assert full.size == 5 and full.unique_count == 5
    empty = distinguishment_state(fix_a, [])
    assert empty.classes == ((ORIGINAL, M1, M2, M3, M4),)
    assert empty.unique_count == 0
    one = distinguishment_state(fix_a, [T1])
    assert sorted(map(sorted, one.classes)) == sorted([[ORIGINAL], [M1, M2, M3, M4]])
    assert one.unique_count == 1


def test_adequacy_examples(fix_a):
    assert is_k_adequate(fix_a, [T1])
    assert not is_k_adequate(fix_a, [T2])
    assert is_d_adequate(fix_a, [T1, T2, T3])
    assert not is_d_adequate(fix_a, [T1])


def test_out_of_range_index(fix_a):
    with pytest.raises(IndexError):
        unique_count(fix_a, [5])
    with pytest.raises(IndexError):
        kills(fix_a, [0], 9)


@settings(max_examples=300, deadline=None)
@given(matrix_and_subset())
def test_unique_count_matches_pairwise_oracle(case):
    km, subset = case
    rows = km.cells.tolist()
    assert unique_count(km, subset) == oracles.unique_count(rows, subset)
    assert killed_count(km, subset) == oracles.killed(rows, subset)
    assert is_k_adequate(km, subset) == oracles.k_adequate(rows, subset)
    assert is_d_adequate(km, subset) == oracles.d_adequate(rows, subset)


@settings(max_examples=300, deadline=None)
@given(matrix_and_subset())
def test_d_adequacy_subsumes_k_adequacy(case):
    km, subset = case
    if is_d_adequate(km, subset):
        assert is_k_adequate(km, subset)


@settings(max_examples=200, deadline=None)
@given(matrix_and_subset(), st.data())
def test_monotone_under_superset(case, data):
    km, subset = case
    extra = data.draw(st.lists(st.integers(0, km.n_tests - 1), unique=True))
    bigger = sorted(set(subset) | set(extra))
    assert unique_count(km, bigger) >= unique_count(km, subset)
    assert killed_count(km, bigger) >= killed_count(km, subset)


@settings(max_examples=100, deadline=None)
@given(matrix_and_subset(max_tests=4))
def test_invariant_under_test_order(case):
    km, subset = case
    counts = {unique_count(km, list(p)) for p in permutations(subset)}
    assert len(counts) == 1


def test_classes_partition_m_prime():
    rng = np.random.default_rng(0)
    for _ in range(50):
        km = kill_matrix(random_rows(rng, 8, 12))
        state = distinguishment_state(km, list(range(8)))
        members = sorted(x for c in state.classes for x in c)
        assert members == [ORIGINAL] + list(range(12))


def test_groups_working_example(fix_a):
    report = indistinguishable_groups(fix_a)
    assert [g.kind for g in report.groups] == ["singleton"] * 5
    assert report.equivalent == ()
    assert report.duplicated == []


def test_groups_classification():
    # m1 unkilled, m2 == m3, m4 unique
    km = kill_matrix([[0, 1, 1, 0], [0, 0, 0, 1]])
    report = indistinguishable_groups(km)
    kinds = {tuple(g.members): g.kind for g in report.groups}
    assert kinds[(ORIGINAL, 0)] == "original-equivalent"
    assert kinds[(1, 2)] == "duplicated"
    assert kinds[(3,)] == "singleton"
    assert report.equivalent == (0,)
    assert report.duplicated == [(1, 2)]
    js = report.to_json(km)
    assert js["groups"][0] == {"members": ["original", "m1"], "classification": "original-equivalent"}


@settings(max_examples=200, deadline=None)
@given(kill_matrices())
def test_groups_match_brute_force(km):
    rows = km.cells.tolist()
    vecs = oracles.columns_over(rows, range(km.n_tests))
    report = indistinguishable_groups(km)
    for g in report.groups:
        ids = [km.n_mutants if x == ORIGINAL else x for x in g.members]
        assert len({vecs[i] for i in ids}) == 1
    reps = [vecs[km.n_mutants if g.members[0] == ORIGINAL else g.members[0]] for g in report.groups]
    assert len(set(reps)) == len(reps)
