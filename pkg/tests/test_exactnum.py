import pytest
from fractions import Fraction

from artifact.exactnum import (ONE, ZERO, MalformedScalar, Matrix, NoSolutionError,
                               NonUniqueSolutionError, RationalFunction, normalize,
                               parse_scalar, q, solve)


def test_normalize_cancels_common_factor():
    # (q^2 - 1)/(q - 1)
    assert normalize([-1, 0, 1], [-1, 1]) == q + 1
    assert normalize([-1, 0, 1], [-1, 1]).denominator == {0: 1}


def test_normalize_zero_numerator():
    z = normalize([0], [0, 0, 0, 1])
    assert z == ZERO and z.is_zero()
    assert str(z) == "0"


def test_normalize_removes_content():
    assert normalize([0, 2], [2]) == q
    assert str(normalize([0, 2], [2])) == "q"


def test_normalize_idempotent():
    f = normalize([3, 0, -6], [9, 3])
    assert normalize(f.numerator, f.denominator) == f


def test_zero_denominator_rejected():
    with pytest.raises(MalformedScalar):
        normalize([1], [0])
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_laurent_arithmetic():
    a = q ** -1 - q ** 3
    assert a * q == 1 - q ** 4
    assert (q ** -2) * (q ** 2) == ONE
    assert str(a) == "q^-1 - q^3"


@pytest.mark.parametrize("text,value", [
    ("q^-1 - q^3", q ** -1 - q ** 3),
    ("(q^2 - 1)/(q - 1)", q + 1),
    ("2*q^-2 + 3", 2 * q ** -2 + 3),
    ("-q", -q),
    ("1/(q^2-1)", ONE / (q * q - 1)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["q^", "2 +", "(q", "x", "1/0", "q^-"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(MalformedScalar):
        parse_scalar(bad)


def test_str_roundtrip_on_rational_function():
    f = (q ** 3 - 2 * q + 5) / (q ** 2 + q + 1) * q ** -4
    assert parse_scalar(str(f)) == f


def test_fraction_coefficients():
    assert RationalFunction(Fraction(1, 2)) * 2 == ONE


def test_solve_identity():
    y = [q, ONE - q]
    assert solve(Matrix.identity(2), y) == y


def test_solve_diagonal():
    assert solve(Matrix.diagonal([q, q ** -1]), [ONE, ONE]) == [q ** -1, q]


def test_solve_cramer_two_by_two():
    # hand computation: det = q^2 - 1, x = (q, -1)/det
    x = solve(Matrix([[q, 1], [1, q]]), [ONE, ZERO])
    det = q * q - 1
    assert x == [q / det, -ONE / det]


def test_solve_singular_inconsistent():
    with pytest.raises(NoSolutionError):
        solve(Matrix([[1, 1], [1, 1]]), [ONE, ZERO])


def test_solve_singular_consistent_reports_kernel():
    with pytest.raises(NonUniqueSolutionError) as info:
        solve(Matrix([[1, 1], [2, 2]]), [ONE, 2 * ONE])
    err = info.value
    assert err.kernel
    A = Matrix([[1, 1], [2, 2]])
    assert A.apply(err.particular) == [ONE, 2 * ONE]


def test_matrix_inverse_both_sides():
    M = Matrix([[q, 1, 0], [0, q ** -1, 2], [1, 0, q + 1]])
    Mi = M.inverse()
    assert (M @ Mi).is_identity() and (Mi @ M).is_identity()


def test_matrix_product_associative():
    A = Matrix([[q, 1], [0, 2]])
    B = Matrix([[1, q ** -1], [q, 0]])
    C = Matrix([[0, 1], [1, q * q]])
    assert (A @ B) @ C == A @ (B @ C)
