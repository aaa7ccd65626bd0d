"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st

from conftest import kill_matrix


@st.composite
def bool_rows(draw, max_tests=6, max_cols=6, min_tests=1, killable=False):
    n = draw(st.integers(min_tests, max_tests))
    m = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.booleans(), min_size=m, max_size=m), min_size=n, max_size=n))
    if killable and not any(any(r) for r in rows):
        rows[0][0] = True
    return rows


@st.composite
def kill_matrices(draw, **kw):
    return kill_matrix(np.array(draw(bool_rows(**kw)), dtype=bool))


@st.composite
def matrix_and_subset(draw, **kw):
    km = draw(kill_matrices(**kw))
    subset = draw(st.lists(st.integers(0, km.n_tests - 1), unique=True))
    return km, subset
