from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cgalg.exact import DELTA, MU, MultiPoly
from cgalg.partitions import d
from cgalg.shapovalov import (
    FactorizationMismatch,
    KacFactorization,
    KacMatrix,
    KacReport,
    LevelMismatch,
    delta_factor,
    factor_check,
    kac_determinant,
    kac_matrix,
    kac_report,
    predicted_factorization,
    shapovalov_form,
    shapovalov_form_pbw,
    structure_checks,
)
from cgalg.singular import delta_for_singular
from cgalg.verma import BasisLabel, enumerate_basis
from conftest import SD, SM, to_sympy
from oracles import Oracle, leibniz_det


def test_level_two_matrix():
    k = kac_matrix("1/2", 2)
    assert [list(r) for r in k.entries] == [[2 * MU ** 2, MU], [MU, -DELTA]]
    assert kac_determinant("1/2", 2) == -2 * DELTA * MU ** 2 - MU ** 2


def test_trivial_levels():
    assert kac_determinant("1/2", 0) == 1
    assert str(factor_check("1/2", 1)) == "-1 · μ^1"
    assert str(factor_check("1/2", 2)) == "-1 · μ^2 · (2δ+1)^1"


@pytest.mark.parametrize("ell,m", [("1/2", 4), ("3/2", 4), ("5/2", 3)])
def test_form_matches_oracle(ell, m):
    o = Oracle({"1/2": 1, "3/2": 3, "5/2": 5}[ell])
    basis = enumerate_basis(ell, m)
    for v in basis:
        for w in basis:
            want = sp.expand(o.form((v.h, v.k, v.m), (w.h, w.k, w.m), SD, SM))
            assert to_sympy(shapovalov_form(ell, v, w)) == want


@pytest.mark.parametrize("ell,m", [("1/2", 6), ("3/2", 5), ("5/2", 4)])
def test_form_matches_enveloping_algebra_route(ell, m):
    basis = enumerate_basis(ell, m)
    for v in basis:
        for w in basis:
            assert shapovalov_form(ell, v, w) == shapovalov_form_pbw(ell, v, w)


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        shapovalov_form("1/2", BasisLabel(0, (), 1), BasisLabel(1, (), 2))


@pytest.mark.parametrize("ell,m", [("1/2", 5), ("3/2", 4), ("5/2", 4)])
def test_determinant_matches_leibniz_and_sympy(ell, m):
    k = kac_matrix(ell, m)
    det = kac_determinant(ell, m)
    assert det == leibniz_det(k.entries)
    want = sp.Matrix([[to_sympy(x) for x in r] for r in k.entries]).det()
    assert to_sympy(det) == sp.expand(want)


@pytest.mark.parametrize("ell,top", [("1/2", 10), ("3/2", 8), ("5/2", 6)])
def test_factorization_grid(ell, top):
    for m in range(top + 1):
        fac = factor_check(ell, m)
        assert fac.constant and fac.reconstruct() == kac_determinant(ell, m)


@pytest.mark.parametrize("ell,top", [("1/2", 8), ("3/2", 6), ("5/2", 5)])
def test_structure_checks(ell, top):
    for m in range(top + 1):
        rep = structure_checks(ell, m)
        assert not rep["failures"]


@pytest.mark.parametrize("ell", ["1/2", "3/2"])
@given(q=st.integers(1, 3), data=st.data())
def test_determinant_vanishes_on_existence_values(ell, q, data):
    m = data.draw(st.integers(2 * q, 2 * q + 2))
    mu = data.draw(st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool))
    det = kac_determinant(ell, m)
    assert det.evaluate(delta_for_singular(ell, q), mu) == 0
    assert det.evaluate(delta_for_singular(ell, q) + Fraction(1, 7), mu) != 0


def test_total_delta_degree_matches_factor_exponents():
    for m in range(9):
        det = kac_determinant("3/2", m)
        assert det.degree_delta() == sum(k for _, k in predicted_factorization("3/2", m).delta_factors)
        assert sum(d("3/2", m - 2 * (j + 1)) for j in range(m // 2)) == det.degree_delta()


def test_factor_check_rejects_wrong_determinant():
    with pytest.raises(FactorizationMismatch):
        factor_check("1/2", 2, det=MU ** 2 * (DELTA * 2 + 3))
    with pytest.raises(FactorizationMismatch):
        factor_check("1/2", 2, det=MU ** 2 * (DELTA * 2 + 1) * DELTA)


def test_delta_factor():
    assert delta_factor("3/2", 1) == DELTA * 2 + 2


def test_json_round_trips():
    rep = kac_report("3/2", 4)
    back = KacReport.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    assert KacMatrix.from_json(rep.matrix.to_json()).entries == rep.matrix.entries
    fac = rep.factorization
    assert KacFactorization.from_json("3/2", 4, fac.to_json()).reconstruct() == fac.reconstruct()
    assert isinstance(rep.determinant, MultiPoly)
