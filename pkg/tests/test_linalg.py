import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_rank, kernel_vectors
from thinsum.errors import ParameterError, SpecMismatch
from thinsum.exactfield import FieldSpec
from thinsum.linalg import KernelWitness, SparseMatrix, kernel_witness, mat_vec, rank

Q = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)
GF5 = FieldSpec.prime(5)


def M(field, rows, **kw):
    return SparseMatrix.from_rows(field, rows, **kw)


def values(x):
    return {k: str(v) for k, v in x.items()}


def test_rank_identity():
    assert rank(M(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_rank_proportional_rows():
    assert rank(M(Q, [[1, 2], [2, 4]])) == 1


def test_rank_random_gf5_against_minors():
    rng = random.Random(11)
    for _ in range(15):
        rows = [[rng.randrange(5) if rng.random() < 0.6 else 0 for _ in range(4)] for _ in range(6)]
        m = M(GF5, rows)
        assert rank(m) == brute_rank(m)


def test_kernel_identity_gf2():
    assert kernel_witness(M(GF2, [[1, 0], [0, 1]])) is None


def test_kernel_equal_columns():
    w = kernel_witness(M(GF2, [[1, 1], [1, 1]]))
    assert values(w.assignment) == {"c1": "1", "c2": "1"}


def test_kernel_three_columns_gf2():
    # columns (1,0,1), (0,1,1), (1,1,0)
    m = M(GF2, [[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    brute = kernel_vectors(m)
    assert [values(x) for x in brute] == [{"c1": "1", "c2": "1", "c3": "1"}]
    w = kernel_witness(m)
    assert values(w.assignment) == values(brute[0])
    assert all(v.is_zero() for v in mat_vec(m, w.assignment).values())


def test_witness_is_canonical():
    # first free column is c2: x = (-2, 1, 0)
    m = M(Q, [[1, 2, 0], [0, 0, 1]])
    assert values(kernel_witness(m).assignment) == {"c1": "-2", "c2": "1", "c3": "0"}


def test_pivot_rule_prefers_earlier_rows():
    # both rows could pivot column 1; the rule picks r1, leaving c3 free with x = (-1/2, ?, 1)
    m = M(Q, [[2, 0, 1], [4, 1, 2]])
    assert values(kernel_witness(m).assignment) == {"c1": "-1/2", "c2": "0", "c3": "1"}


def test_mat_vec_examples():
    ident = M(Q, [[1, 0], [0, 1]])
    x = {"c1": Q.value(3, 4), "c2": Q.value(-2)}
    assert mat_vec(ident, x) == {"r1": x["c1"], "r2": x["c2"]}
    m = M(GF2, [[1, 1], [0, 1], [1, 0]])
    assert values(mat_vec(m, {"c1": GF2.zero(), "c2": GF2.zero()})) == {"r1": "0", "r2": "0", "r3": "0"}
    assert values(mat_vec(m, {"c1": GF2.one(), "c2": GF2.one()})) == {"r1": "0", "r2": "1", "r3": "1"}


def test_mat_vec_errors():
    m = M(GF2, [[1, 1]])
    with pytest.raises(SpecMismatch):
        mat_vec(m, {"c1": GF5.one(), "c2": GF5.one()})
    with pytest.raises(ParameterError):
        mat_vec(m, {"c1": GF2.one()})


def test_empty_matrices():
    no_cols = SparseMatrix(Q, ["r1", "r2"], [], {})
    assert rank(no_cols) == 0
    assert kernel_witness(no_cols) is None
    no_rows = SparseMatrix(Q, [], ["a", "b"], {})
    assert rank(no_rows) == 0
    assert values(kernel_witness(no_rows).assignment) == {"a": "1", "b": "0"}


def test_matrix_invariants():
    with pytest.raises(ParameterError):
        SparseMatrix(Q, ["r"], ["c"], {("r", "c"): Q.zero()})
    with pytest.raises(ParameterError):
        SparseMatrix(Q, ["r"], ["c"], {("r", "d"): Q.one()})
    with pytest.raises(ParameterError):
        SparseMatrix(Q, ["r", "r"], ["c"], {})
    with pytest.raises(SpecMismatch):
        SparseMatrix(Q, ["r"], ["c"], {("r", "c"): GF5.one()})


def test_witness_checked_on_construction():
    m = M(GF2, [[1, 1], [0, 1]])
    with pytest.raises(ParameterError):
        KernelWitness(m, {"c1": GF2.one(), "c2": GF2.zero()})
    with pytest.raises(ParameterError):
        KernelWitness(m, {"c1": GF2.zero(), "c2": GF2.zero()})


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    field = draw(st.sampled_from([GF2, FieldSpec.prime(3), GF5, Q]))
    n_rows = draw(st.integers(0, max_rows))
    n_cols = draw(st.integers(0, max_cols))
    if field.p is None:
        cell = st.integers(-3, 3).map(field.value)
    else:
        cell = st.integers(0, field.p - 1).map(field.value)
    cell = st.one_of(st.just(field.zero()), cell)
    rows = [[draw(cell) for _ in range(n_cols)] for _ in range(n_rows)]
    return SparseMatrix.from_rows(field, rows, col_ids=[f"c{j + 1}" for j in range(n_cols)])


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_kernel_iff_full_rank(m):
    w = kernel_witness(m)
    assert (w is None) == (rank(m) == len(m.col_ids))
    if w is not None:
        assert any(not v.is_zero() for v in w.assignment.values())
        assert all(v.is_zero() for v in mat_vec(m, w.assignment).values())


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=5, max_cols=4))
def test_rank_matches_minor_oracle(m):
    assert rank(m) == brute_rank(m)
