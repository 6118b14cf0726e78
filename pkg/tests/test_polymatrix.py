from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acyclic_spectra.exactpoly import ONE, X, ZERO, Poly, divides, parse_poly
from acyclic_spectra.polymatrix import (
    PolyMatrix,
    characteristic_matrix,
    det,
    det_via_cycle_covers,
    determinantal_divisor,
    format_polymatrix,
    format_rational_matrix,
    invariant_factor_multiplicities,
    parse_polymatrix,
    parse_rational_matrix,
    principal_submatrix,
    smith_normal_form,
    submatrix,
)
from acyclic_spectra.spectra import example36_matrix

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
entry = st.lists(small, max_size=3).map(Poly)


@st.composite
def square_polymatrices(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return PolyMatrix([[draw(entry) for _ in range(n)] for _ in range(n)])


@st.composite
def symmetric_rationals(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(small)
    return a


EX36 = characteristic_matrix(example36_matrix().entries)


def test_example36_determinant_both_routes():
    want = parse_poly("x^10 - 9x^8 + 24x^6 - 20x^4")
    assert det(EX36) == want
    assert det_via_cycle_covers(EX36, cap=10) == want


def test_example36_smith_form():
    res = smith_normal_form(EX36)
    assert res.invariant_factors == (ONE,) * 6 + (
        X,
        X,
        parse_poly("x^3 - 2x"),
        parse_poly("x^5 - 7x^3 + 10x"),
    )
    assert res.P @ EX36 @ res.Q == res.S
    assert invariant_factor_multiplicities(res) == {
        1: parse_poly("x^2 - 5"),
        2: parse_poly("x^2 - 2"),
        4: X,
    }
    assert res.determinantal_divisor(9) == parse_poly("x^5 - 2x^3")


@given(square_polymatrices())
def test_cycle_covers_match_elimination(m):
    assert det_via_cycle_covers(m) == det(m)


@given(square_polymatrices(max_n=4))
def test_smith_form_invariants(m):
    res = smith_normal_form(m)
    assert res.P @ m @ res.Q == res.S
    assert res.S.is_diagonal()
    e = res.invariant_factors
    assert all(f.lc == 1 for f in e)
    assert all(divides(a, b) for a, b in zip(e, e[1:]))
    for k in range(1, m.rows + 1):
        assert res.determinantal_divisor(k) == determinantal_divisor(m, k, strategy="minors")


@given(symmetric_rationals())
def test_characteristic_matrix_full_rank(a):
    m = characteristic_matrix(a)
    res = smith_normal_form(m)
    assert res.rank == len(a)
    mults = invariant_factor_multiplicities(res)
    assert sum(mult * g.degree for mult, g in mults.items()) == len(a)


def test_rectangular_and_singular():
    m = PolyMatrix([[X, ONE, ZERO], [X**2, X, ZERO]])
    res = smith_normal_form(m)
    assert res.invariant_factors == (ONE,)
    assert res.determinantal_divisor(2) == ZERO
    assert res.P @ m @ res.Q == res.S
    with pytest.raises(ValueError):
        invariant_factor_multiplicities(res)


def test_cycle_cover_cap(monkeypatch):
    with pytest.raises(ValueError):
        det_via_cycle_covers(EX36)
    monkeypatch.setenv("ACYCLIC_SPECTRA_MAX_N", "10")
    assert det_via_cycle_covers(EX36) == det(EX36)


def test_minor_strategy_cap():
    with pytest.raises(ValueError):
        determinantal_divisor(EX36, 3, strategy="minors")
    assert determinantal_divisor(EX36, 9) == parse_poly("x^5 - 2x^3")


def test_submatrix_labels_are_one_based():
    m = PolyMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert submatrix(m, [1], [3]) == PolyMatrix([[4, 5], [7, 8]])
    assert principal_submatrix(m, [3, 1]) == PolyMatrix([[1, 3], [7, 9]])
    with pytest.raises(IndexError):
        submatrix(m, [0], [1])
    with pytest.raises(IndexError):
        principal_submatrix(m, [4])


def test_matrix_algebra():
    m = PolyMatrix([[X, 1], [0, X]])
    assert m @ PolyMatrix.identity(2) == m
    assert m.transpose() == PolyMatrix([[X, 0], [1, X]])
    assert not m.is_symmetric()
    assert PolyMatrix.diagonal([1, X]).diagonal_entries() == [ONE, X]
    with pytest.raises(ValueError):
        PolyMatrix([[1, 2], [3]])


@given(square_polymatrices(max_n=3))
def test_polymatrix_file_round_trip(m):
    assert parse_polymatrix(format_polymatrix(m)) == m


@given(symmetric_rationals())
def test_rational_matrix_round_trip(a):
    assert parse_rational_matrix(format_rational_matrix(a)) == a


def test_file_format_errors():
    with pytest.raises(ValueError):
        parse_polymatrix("2 2\nx\n1\n1\n")
    with pytest.raises(ValueError):
        parse_rational_matrix("2\n1 2\n")
    assert parse_polymatrix("# comment\n1 1\nx^2 - 1/2  # trailing\n") == PolyMatrix([[parse_poly("x^2 - 1/2")]])

