from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from arakelov_fermat.errors import DimensionMismatch, InconsistentSystem
from arakelov_fermat.exact_linalg import RationalMatrix, as_rational, dot, solve_affine

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def systems(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(small, min_size=m, max_size=m))
    return RationalMatrix.from_rows(rows), b


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/6") == Fraction(1, 2)


def test_ragged_and_mismatched():
    with pytest.raises(DimensionMismatch):
        RationalMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        solve_affine(RationalMatrix.identity(2), [1])
    with pytest.raises(DimensionMismatch):
        dot([1], [1, 2])


def test_unique_solution():
    M = RationalMatrix.from_rows([[2, 1], [1, 3]])
    x, ker = solve_affine(M, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert ker == []


def test_kernel_is_normalized():
    M = RationalMatrix.from_rows([[0, 2, 4], [0, 1, 2]])
    x, ker = solve_affine(M, [2, 1])
    assert M.apply(x) == [2, 1]
    assert len(ker) == 2
    for v in ker:
        assert M.apply(v) == [0, 0]
        assert next(a for a in v if a) == 1


def test_inconsistent_certificate():
    M = RationalMatrix.from_rows([[1, 1], [2, 2]])
    b = [1, 3]
    with pytest.raises(InconsistentSystem) as err:
        solve_affine(M, b)
    y = err.value.certificate
    assert M.transpose().apply(y) == [0, 0]
    assert dot(y, b) == 1


@given(systems())
def test_matches_sympy(system):
    M, b = system
    A = sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[i, j]))
    aug = A.row_join(sympy.Matrix([sympy.Rational(x) for x in b]))
    consistent = A.rank() == aug.rank()
    try:
        x, ker = solve_affine(M, b)
    except InconsistentSystem as exc:
        assert not consistent
        y = exc.certificate
        assert all(v == 0 for v in M.transpose().apply(y))
        assert dot(y, b) == 1
        return
    assert consistent
    assert M.apply(x) == list(map(Fraction, b))
    assert len(ker) == M.cols - A.rank()
    for v in ker:
        assert all(a == 0 for a in M.apply(v))
    if ker:
        K = sympy.Matrix([[sympy.Rational(a) for a in v] for v in ker])
        assert K.rank() == len(ker)


@given(systems(), small)
def test_adding_kernel_keeps_solution(system, t):
    M, b = system
    try:
        x, ker = solve_affine(M, b)
    except InconsistentSystem:
        return
    for v in ker:
        shifted = [a + t * c for a, c in zip(x, v)]
        assert M.apply(shifted) == M.apply(x)
