"""Acceptance criteria 1-8, each at exact tolerance.

Every criterion prints one ``criterion N: PASS|FAIL`` line (also when run as a
script: ``python tests/test_acceptance.py``).
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from cgalg.algebra import CGA
from cgalg.partitions import d, d_closed_form, d_enum, d_series, delta_degree_identity, odd_partition_identity
from cgalg.pbw import normal_order
from cgalg.shapovalov import factor_check, kac_determinant, structure_checks
from cgalg.singular import (
    delta_for_singular,
    descendant_span,
    null_space,
    quotient_null_space,
    verify_singular,
)
from cgalg.suite import action_checks, commutator_checks
from cgalg.verma import label_of_mono, mu_weight

KAC_GRID = [("1/2", 10), ("3/2", 8), ("5/2", 6)]
SINGULAR_GRID = [(ell, q) for ell in ("1/2", "3/2", "5/2") for q in (1, 2, 3)]


def criterion_1():
    bad = []
    for ell, top in KAC_GRID:
        for m in range(top + 1):
            fac = factor_check(ell, m)  # raises on a non-zero remainder
            if not fac.constant or fac.reconstruct() != kac_determinant(ell, m):
                bad.append(f"{ell}/{m}")
    return not bad, f"{sum(t + 1 for _, t in KAC_GRID)} levels factor exactly" if not bad else f"failed {bad}"


def criterion_2():
    bad = []
    for m in range(11):
        fac = factor_check("1/2", m)
        e_expected = m * (m + 2) // 4 if m % 2 == 0 else (m + 1) ** 2 // 4
        if fac.mu_exponent != e_expected:
            bad.append(f"m={m} mu^{fac.mu_exponent}")
        if [k for _, k in fac.delta_factors] != [m // 2 - j for j in range(m // 2)]:
            bad.append(f"m={m} delta exponents")
    return not bad, "exponents match for m <= 10" if not bad else ", ".join(bad)


def criterion_3():
    bad = []
    for ell, q in SINGULAR_GRID:
        rep = verify_singular(ell, q, mu=1, raise_on_failure=False)
        if not rep.verified or rep.delta_used != Fraction(q - 1) - Fraction(CGA(ell).ell.upper ** 2, 2):
            bad.append(f"{ell},{q}")
    return not bad, "9 singular vectors verified" if not bad else f"failed {bad}"


def criterion_4():
    rng = random.Random(20240613)
    bad = []
    for ell, q in SINGULAR_GRID:
        dq = delta_for_singular(ell, q)
        if null_space(ell, dq, 1, 2 * q).dimension != 1:
            bad.append(f"{ell},{q} on-condition")
        for m in (1, 3, 5, 7):
            if null_space(ell, dq, 1, m).dimension != 0:
                bad.append(f"{ell},{q} odd m={m}")
        n = 0
        while n < 20:
            delta = Fraction(rng.randint(-400, 400), rng.randint(1, 12))
            if delta == dq:
                continue
            n += 1
            if null_space(ell, delta, 1, 2 * q).dimension != 0:
                bad.append(f"{ell},{q} delta={delta}")
    return not bad, "kernel dimensions exact on the grid" if not bad else ", ".join(bad[:5])


def criterion_5():
    bad = []
    for ell in ("1/2", "3/2"):
        for q in (1, 2):
            for m in range(1, 2 * q + 5):
                if quotient_null_space(ell, q, 1, m).dimension != 0:
                    bad.append(f"{ell},{q},m={m} quotient")
                if m >= 2 * q and len(descendant_span(ell, q, 1, m)) != d(ell, m - 2 * q):
                    bad.append(f"{ell},{q},m={m} span")
    return not bad, "quotients have no singular vectors" if not bad else ", ".join(bad)


def criterion_6():
    bad = [(ell, m) for ell in ("1/2", "3/2", "5/2", "7/2") for m in range(31)
           if not d_closed_form(ell, m) == d_enum(ell, m) == d_series(ell, m)]
    return not bad, "four floor formulas agree for m <= 30" if not bad else f"failed {bad[:5]}"


def criterion_7():
    bad = []
    for ell in ("1/2", "3/2", "5/2"):
        alg = CGA(ell)
        for res in (commutator_checks(alg), action_checks(alg, 6)):
            if not res.ok:
                bad.append(f"{ell} {res.name}: {res.detail}")
    for ell, top in KAC_GRID:
        for m in range(top + 1):
            rep = structure_checks(ell, m, raise_on_failure=False)
            if not (rep["symmetric"] and rep["delta_degree_bound"] and rep["mu_monomial"]):
                bad.append(f"{ell}/{m} entry structure")
    for ell in ("1/2", "3/2", "5/2", "7/2"):
        for m in range(31):
            if not (odd_partition_identity(ell, m) and delta_degree_identity(ell, m)):
                bad.append(f"{ell}/{m} partition identity")
    return not bad, "all oracle and entry-wise checks hold" if not bad else "; ".join(bad[:5])


def criterion_8():
    alg = CGA("5/2")
    got = []
    for word in (["C"] + ["P3"] * 6, ["C"] + ["P3"] * 3 + ["P4"], ["P4", "P5"]):
        (mono, _), = normal_order(alg, word).items()
        lab = label_of_mono(alg, mono)
        got.append((lab.m, mu_weight(lab)))
    return got == [(8, 6), (8, 4), (8, 2)], f"(level, weight) = {got}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def _run(fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    n = fn.__name__.split("_")[1]
    return ok, f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail}; {time.perf_counter() - t0:.2f}s)"


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn, capsys):
    ok, line = _run(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
