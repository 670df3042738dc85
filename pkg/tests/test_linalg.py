import pytest

from app.algebra.linalg import (
    ExactMatrix,
    intersect,
    kernel,
    linalg,
    quotient_basis,
    rank,
    rank_of,
    solve,
    span_basis,
)
from app.algebra.scalar import ONE, parse_scalar
from app.core.exceptions import InvalidParams, NoSolution


def test_rank_over_rational_functions():
    m = ExactMatrix.from_rows([["a", 1], [1, "1/a"]])
    assert rank(m) == 1
    assert rank(ExactMatrix.from_rows([["a", 1], [1, "a"]])) == 2


def test_binary_kernel():
    m = ExactMatrix.from_rows([[1, 1, 0], [1, 1, 0]])
    basis = kernel(m)
    assert len(basis) == 2
    assert {0: ONE, 1: ONE} in basis


def test_kernel_vectors_are_annihilated():
    m = ExactMatrix.from_rows([["a", "a+1", 1], [1, 0, "a"]])
    for v in kernel(m):
        image = m @ ExactMatrix.from_row_vectors([v], 3).transpose()
        assert image.is_zero()


def test_solve():
    m = ExactMatrix.from_rows([[1, "a"], [0, 1]])
    x = solve(m, {0: ONE, 1: ONE})
    assert x == {0: parse_scalar("a+1"), 1: ONE}


def test_solve_inconsistent():
    m = ExactMatrix.from_rows([[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve(m, {0: ONE})


def test_rref_is_reduced():
    m = ExactMatrix.from_rows([[1, 1, 1], [0, 1, "a"], [1, 0, "a+1"]])
    reduced = linalg("rref", m)
    assert reduced.rows == 2
    assert reduced.get(0, 0) == ONE and reduced.get(0, 1) == 0
    assert reduced.get(1, 1) == ONE


def test_span_quotient_and_intersection():
    e0, e1, e2 = {0: ONE}, {1: ONE}, {2: ONE}
    assert len(span_basis([e0, e1, {0: ONE, 1: ONE}])) == 2
    assert quotient_basis([e0, e1, e2], [e0]) == [e1, e2]
    common = intersect([e0, e1], [e1, e2])
    assert rank_of(common) == 1
    assert rank_of(common + [e1]) == 1


def test_unknown_operation_is_an_input_error():
    with pytest.raises(InvalidParams) as exc:
        linalg("lu", ExactMatrix.identity(2))
    assert exc.value.exit_code == 2
