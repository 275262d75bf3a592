from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cgalg.exact import (
    DELTA,
    MU,
    DivisionByZeroPoly,
    MultiPoly,
    NonInvertibleSeries,
    NotDivisible,
    TruncSeries,
    nullspace,
    parse_rational,
    poly_exact_div,
    poly_matrix_det,
    rank,
    rat_str,
    rref,
    series_arith,
)
from conftest import to_sympy
from oracles import leibniz_det

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=5).map(MultiPoly)


def test_rat_str_round_trip():
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(2) == "2/1"
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7


@given(small)
def test_rat_str_parse(x):
    assert parse_rational(rat_str(x)) == x


def test_poly_printing():
    assert str(DELTA ** 2 - MU ** 2) == "δ^2-μ^2"
    assert str(2 * DELTA + 1) == "2δ+1"
    assert str(MultiPoly()) == "0"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly()


@given(polys, polys)
def test_product_matches_sympy(a, b):
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))


@given(polys, polys)
def test_exact_division_round_trip(a, b):
    if not b:
        with pytest.raises(DivisionByZeroPoly):
            poly_exact_div(a, b)
        return
    assert poly_exact_div(a * b, b) == a


def test_not_divisible_carries_remainder():
    with pytest.raises(NotDivisible) as exc:
        poly_exact_div(DELTA ** 2 + 1, DELTA + 1)
    assert exc.value.remainder


@given(polys, small, small)
def test_subs_is_evaluation_homomorphism(a, x, y):
    b = a * a + DELTA
    assert b.evaluate(x, y) == a.evaluate(x, y) ** 2 + x


@given(polys)
def test_json_round_trip(a):
    assert MultiPoly.from_json(a.to_json()) == a


@given(st.integers(0, 4).flatmap(lambda n: st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(rows):
    assert poly_matrix_det(rows) == MultiPoly.coerce(leibniz_det(rows))


def test_det_needs_pivoting():
    rows = [[0, DELTA], [MU, 1]]
    assert poly_matrix_det(rows) == -DELTA * MU


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_rank_and_nullspace(rows):
    m = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert rank(rows) == m.rank()
    basis = nullspace(rows, 4)
    assert len(basis) == 4 - m.rank()
    for x in basis:
        assert all(sum(a * b for a, b in zip(r, x)) == 0 for r in rows)
    reduced, pivots = rref(rows)
    assert len(reduced) == len(pivots)


def test_series_reciprocal():
    one_minus_x = TruncSeries.from_terms({0: 1, 1: -1}, 10)
    geo = one_minus_x.reciprocal()
    # order n keeps x^0 .. x^n
    assert list(geo) == [1] * 11
    assert series_arith(geo, one_minus_x, "mul") == TruncSeries.one(10)
    with pytest.raises(NonInvertibleSeries):
        TruncSeries.from_terms({1: 1}, 10).reciprocal()
