import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import hall_condition, kernel_vectors, valid_injections
from thinsum import solver
from thinsum.errors import InternalContractViolation, ParameterError
from thinsum.exchange import InjectionMap
from thinsum.linalg import SparseMatrix, kernel_witness, mat_vec
from thinsum.solver import (
    build_augmented_matroid,
    generate_instance,
    hall_matching_oracle,
    matroid_route,
    solve_variable_equation_matching,
    verify_injection,
)
from zoo import GF2, GF3, GF5, Q

THREE_BY_TWO = SparseMatrix.from_rows(GF2, [[1, 1], [0, 1], [1, 0]])


def identity(field, n):
    return SparseMatrix.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)])


def test_augmented_identity():
    fam = build_augmented_matroid(identity(Q, 2))
    assert len(fam.matroid.ground) == 4 and fam.matroid.rank_total == 2
    assert fam.rows_form_base and fam.cols_independent
    assert fam.matroid.is_base(fam.col_elements)


def test_augmented_vectors():
    fam = build_augmented_matroid(THREE_BY_TWO)
    assert fam.row_elements == ("row:r1", "row:r2", "row:r3")
    assert fam.col_elements == ("col:c1", "col:c2")
    for r in THREE_BY_TWO.row_ids:
        vector = fam.vectors["row:" + r]
        assert all(vector.get(i, GF2.zero()) == (GF2.one() if i == r else GF2.zero()) for i in THREE_BY_TWO.row_ids)
    for c in THREE_BY_TWO.col_ids:
        vector = fam.vectors["col:" + c]
        assert all(vector.get(i, GF2.zero()) == THREE_BY_TWO.entry(i, c) for i in THREE_BY_TWO.row_ids)
    assert fam.untag("col:c2") == "c2" and fam.tags["row:r1"] == ("row", "r1")


def test_augmented_three_by_two():
    fam = build_augmented_matroid(THREE_BY_TWO)
    assert len(fam.matroid.ground) == 5 and fam.matroid.rank_total == 3
    assert fam.cols_independent == (not kernel_vectors(THREE_BY_TWO))
    assert fam.cols_independent


def test_augmented_dependent_columns():
    fam = build_augmented_matroid(SparseMatrix.from_rows(GF2, [[1, 1], [1, 1]]))
    assert not fam.cols_independent


def test_ids_colliding_after_tagging():
    m = SparseMatrix(Q, [1, "1"], ["c"], {(1, "c"): Q.one()})
    with pytest.raises(ParameterError):
        build_augmented_matroid(m)


@pytest.mark.parametrize("n", range(1, 6))
def test_identity_maps_to_itself(n):
    m = identity(GF5, n)
    out = solve_variable_equation_matching(m)
    assert out.kind == "injection"
    assert dict(out.injection) == {f"c{j}": f"r{j}" for j in range(1, n + 1)}
    assert hall_matching_oracle(m) == dict(out.injection)


def test_equal_columns_give_witness():
    out = solve_variable_equation_matching(SparseMatrix.from_rows(GF2, [[1, 1], [1, 1]]))
    assert out.kind == "kernel_witness"
    assert {c: str(v) for c, v in out.witness.assignment.items()} == {"c1": "1", "c2": "1"}


def test_three_by_two_in_valid_set():
    valid = valid_injections(THREE_BY_TWO)
    assert sorted(sorted(v.items()) for v in valid) == [
        [("c1", "r1"), ("c2", "r2")],
        [("c1", "r3"), ("c2", "r1")],
        [("c1", "r3"), ("c2", "r2")],
    ]
    for route in ("dual", "direct"):
        out = solve_variable_equation_matching(THREE_BY_TWO, route=route)
        assert dict(out.injection) in valid
    assert dict(hall_matching_oracle(THREE_BY_TWO)) in valid


def test_hall_zero_column():
    m = SparseMatrix.from_rows(Q, [[1, 0], [2, 0], [0, 0]])
    assert hall_matching_oracle(m) is None


def test_support_matching_does_not_imply_trivial_kernel():
    m = SparseMatrix.from_rows(GF2, [[1, 1], [1, 1]])
    assert hall_matching_oracle(m) is not None
    assert kernel_witness(m) is not None
    assert matroid_route(m) is None


def test_verify_injection_examples():
    m = identity(Q, 2)
    assert verify_injection(m, {"c1": "r1", "c2": "r2"})
    assert not verify_injection(m, {"c1": "r2", "c2": "r1"})
    assert not verify_injection(m, {"c1": "r1"})
    assert not verify_injection(m, {"c1": "r1", "c2": "r1"})
    assert not verify_injection(m, {"c1": "r1", "c2": "r9"})


def test_solver_output_verifies_on_random_instances():
    rng = random.Random(3)
    for k in range(200):
        field = [GF2, GF3, GF5, Q][k % 4]
        n_cols = rng.randint(1, 5)
        m = generate_instance(field, rng.randint(n_cols, 7), n_cols, rng.choice(["1/4", "1/2", 1]), k)
        out = solve_variable_equation_matching(m)
        assert out.kind == "injection" and verify_injection(m, out.injection)


def test_corrupted_exchange_is_caught(monkeypatch):
    def bad(m, j, b, route):
        # map each column onto a row along a zero entry
        return InjectionMap({"col:c1": "row:r2", "col:c2": "row:r1"})

    monkeypatch.setattr(solver, "independent_into_base_injection", bad)
    with pytest.raises(InternalContractViolation):
        solve_variable_equation_matching(identity(Q, 2))


def test_generate_deterministic():
    a = generate_instance(GF5, 6, 4, "1/3", 42)
    b = generate_instance(GF5, 6, 4, "1/3", 42)
    assert a == b
    assert a != generate_instance(GF5, 6, 4, "1/3", 43)


def test_generate_trivial_kernel():
    rng = random.Random(0)
    for k in range(100):
        field = [GF2, GF5, Q][k % 3]
        n_cols = rng.randint(1, 6)
        m = generate_instance(field, rng.randint(n_cols, 8), n_cols, rng.choice([0.2, 0.5, 0.9]), k)
        assert kernel_witness(m) is None


def test_generate_dense_rationals():
    m = generate_instance(Q, 5, 4, 1, 9)
    assert len(m.entries) == 20


def test_generate_density_target():
    m = generate_instance(GF5, 10, 5, 0.5, 1)
    assert len(m.entries) >= 25


@pytest.mark.parametrize("args", [(3, 4, 0.5), (3, 2, 0), (3, 2, 1.5), (0, 0, 0.5)])
def test_generate_parameter_errors(args):
    with pytest.raises(ParameterError):
        generate_instance(Q, *args, seed=1)


@st.composite
def small_matrices(draw):
    field = draw(st.sampled_from([GF2, GF3, Q]))
    n_cols = draw(st.integers(1, 4))
    n_rows = draw(st.integers(1, 5))
    values = st.integers(-2, 2) if field.p is None else st.integers(0, field.p - 1)
    sparse = st.one_of(st.just(0), st.just(0), values)
    rows = [[draw(sparse) for _ in range(n_cols)] for _ in range(n_rows)]
    return SparseMatrix.from_rows(field, rows)


@settings(max_examples=300, deadline=None)
@given(small_matrices())
def test_routes_agree(m):
    trivial = kernel_witness(m) is None
    phi = matroid_route(m)
    hall = hall_matching_oracle(m)
    brute = valid_injections(m)
    assert (phi is not None) == trivial
    assert (hall is not None) == bool(brute)
    if trivial:
        assert hall is not None
        assert dict(phi) in brute and dict(hall) in brute
        assert hall_condition(m)
    out = solve_variable_equation_matching(m)
    if out.witness is not None:
        w = out.witness.assignment
        assert any(not v.is_zero() for v in w.values())
        assert all(v.is_zero() for v in mat_vec(m, w).values())
    else:
        assert verify_injection(m, out.injection)


def test_every_column_subset_touches_enough_rows():
    rng = random.Random(8)
    for k in range(40):
        n_cols = rng.randint(1, 6)
        m = generate_instance(GF2, rng.randint(n_cols, 7), n_cols, 0.3, k)
        assert solve_variable_equation_matching(m).kind == "injection"
        for size in range(1, n_cols + 1):
            for cs in itertools.combinations(m.col_ids, size):
                assert len({r for (r, c) in m.entries if c in cs}) >= size
