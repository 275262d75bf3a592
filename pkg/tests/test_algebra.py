from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from cgalg.algebra import CGA, Generator, HalfInt, IndexOutOfRange, TriangularClass, commutator, omega
from oracles import Oracle

ells = st.sampled_from(["1/2", "3/2", "5/2", "7/2"])


def _vec_bracket(alg, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in alg.bracket(a, b).items():
                out[g] = out.get(g, 0) + ca * cb * c
    return {g: c for g, c in out.items() if c}


@pytest.mark.parametrize("text", ["0", "1", "2", "-1/2", "1/3", "x"])
def test_rejects_non_odd_half_integers(text):
    with pytest.raises(ValueError, match="odd half-integer"):
        HalfInt.parse(text)


def test_half_int_fields():
    h = HalfInt.parse("5/2")
    assert (h.lower, h.upper, h.slug, str(h)) == (2, 3, "5_2", "5/2")


@pytest.mark.parametrize("ell", ["1/2", "3/2", "5/2"])
def test_brackets_match_oracle(ell):
    alg = CGA(ell)
    o = Oracle(alg.ell.twice_value)
    for a, b in product(alg.gens, repeat=2):
        got = {str(g): c for g, c in alg.bracket(a, b).items()}
        assert got == o.bracket(str(a), str(b)), (a, b)


@pytest.mark.parametrize("ell", ["1/2", "3/2", "5/2"])
def test_jacobi_identity(ell):
    alg = CGA(ell)
    for a, b, c in product(alg.gens, repeat=3):
        A, B, Cc = {a: 1}, {b: 1}, {c: 1}
        total: dict = {}
        for x, y, z in ((A, B, Cc), (B, Cc, A), (Cc, A, B)):
            for g, v in _vec_bracket(alg, x, _vec_bracket(alg, y, z)).items():
                total[g] = total.get(g, 0) + v
        assert not {g: v for g, v in total.items() if v}, (a, b, c)


@given(ells, st.data())
def test_omega_is_anti_automorphism(ell, data):
    alg = CGA(ell)
    a = data.draw(st.sampled_from(alg.gens))
    b = data.draw(st.sampled_from(alg.gens))
    assert alg.omega(alg.omega(a)) == a
    lhs = {alg.omega(g): c for g, c in alg.bracket(a, b).items()}
    assert lhs == alg.bracket(alg.omega(b), alg.omega(a))


@given(ells, st.data())
def test_antisymmetry(ell, data):
    alg = CGA(ell)
    a = data.draw(st.sampled_from(alg.gens))
    b = data.draw(st.sampled_from(alg.gens))
    assert alg.bracket(a, b) == {g: -c for g, c in alg.bracket(b, a).items()}


def test_known_brackets():
    alg = CGA("1/2")
    assert alg.bracket(Generator("D"), Generator("H")) == {Generator("H"): 2}
    assert alg.bracket(Generator("C"), Generator("H")) == {Generator("D"): 1}
    assert alg.bracket(alg.P(0), alg.P(1)) == {Generator("M"): alg.I(0)}
    assert alg.I(0) == -1 and alg.I(1) == 1
    assert commutator("3/2", "D", "P0") == {alg_p(3, 0): 3}
    assert omega("3/2", "P1") == Generator("P", 2)


def alg_p(t, n):
    return CGA(HalfInt(t)).P(n)


@pytest.mark.parametrize("ell", ["1/2", "3/2", "5/2", "7/2"])
def test_structure_constants_symmetry(ell):
    alg = CGA(ell)
    t = alg.ell.twice_value
    for m in range(t + 1):
        assert alg.I(m) == -alg.I(t - m)
        assert alg.I(m) != 0


def test_triangular_classes():
    alg = CGA("3/2")
    assert set(alg.raising) == {Generator("H"), alg.P(0), alg.P(1)}
    assert set(alg.lowering) == {Generator("C"), alg.P(2), alg.P(3)}
    assert alg.triangular_class(Generator("D")) is TriangularClass.CARTAN
    with pytest.raises(IndexOutOfRange):
        alg.P(4)


def test_generator_parse():
    assert Generator.parse("P3") == Generator("P", 3)
    assert str(Generator.parse("C")) == "C"
    assert CGA("1/2").I(1) == Fraction(1)
