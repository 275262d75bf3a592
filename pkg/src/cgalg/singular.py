"""Singular vectors, their uniqueness, quotient modules and the classification.

The singular vector at level ``2q`` is ``(alpha mu C - P_{l+1/2}^2)^q |hw>`` with
``alpha = 2 ((l - 1/2)!)^2``; it exists exactly when
``2 delta - 2(q - 1) + (l + 1/2)^2 = 0``.

Three independent routes produce it:

* :func:`build_singular` expands the product with the lowering action;
* :func:`null_space` solves the raising conditions by rational elimination;
* :func:`recurrence_coefficients` propagates the coefficient recurrences
  obtained from ``H|u> = 0`` and ``P_{l-1/2-a}|u> = 0`` label by label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import CGA, Generator, HalfInt
from .exact import MU, MultiPoly, NotDivisible, nullspace, parse_rational, poly_exact_div, rat_str, rref
from .verma import (
    BasisLabel,
    HighestWeight,
    VermaVector,
    act,
    act_lowering,
    apply_word,
    basis_vector,
    enumerate_basis,
    hwv,
    level_shift,
)


class ZeroMu(ValueError):
    pass


class LevelTooLow(ValueError):
    pass


class InconsistentRecurrence(ArithmeticError):
    pass


class VerificationFailed(AssertionError):
    def __init__(self, report: "SingularReport"):
        bad = [(g, r) for g, r in report.checks if r]
        super().__init__(f"singular vector check failed: {bad[0][0]} residual {bad[0][1]}")
        self.report = report
        self.residual = bad[0][1]


def alpha(ell) -> int:
    """``2 ((l - 1/2)!)^2``."""
    return 2 * factorial(HalfInt.parse(ell).lower) ** 2


def delta_for_singular(ell, q: int) -> Fraction:
    """``(q - 1) - (l + 1/2)^2 / 2``."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    up = HalfInt.parse(ell).upper
    return Fraction(q - 1) - Fraction(up * up, 2)


def _check_mu(mu):
    if isinstance(mu, MultiPoly):
        if not mu:
            raise ZeroMu("mu must be non-zero")
        return mu
    mu = parse_rational(mu)
    if mu == 0:
        raise ZeroMu("mu must be non-zero")
    return mu


def build_singular(ell, q: int, mu=MU) -> VermaVector:
    """Expand ``(alpha mu C - P_{l+1/2}^2)^q |hw>`` in the level-``2q`` basis."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    mu = _check_mu(mu)
    alg = CGA(ell)
    hw = HighestWeight(0, mu)  # lowering actions do not see delta
    p = alg.P(alg.ell.upper)
    a_mu = mu * alpha(alg.ell)
    u = hwv(alg.ell)
    for _ in range(q):
        u = act_lowering(alg, hw, Generator("C"), u).scale(a_mu) - act_lowering(
            alg, hw, p, act_lowering(alg, hw, p, u)
        )
    return u


@dataclass
class SingularReport:
    ell: HalfInt
    q: int
    level: int
    vector: VermaVector
    checks: list
    delta_used: object
    alpha_ell: int
    mu: object = None

    @property
    def verified(self) -> bool:
        return all(not r for _, r in self.checks)

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "q": self.q,
            "level": self.level,
            "delta_used": _scalar_json(self.delta_used),
            "mu": _scalar_json(self.mu),
            "alpha_ell": rat_str(self.alpha_ell),
            "vector": self.vector.to_json(),
            "checks": [{"generator": g, "residual": r.to_json(), "level": r.level} for g, r in self.checks],
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data) -> "SingularReport":
        level = int(data["level"])
        return cls(
            ell=HalfInt.parse(data["ell"]),
            q=int(data["q"]),
            level=level,
            vector=VermaVector.from_json(data["vector"], level),
            checks=[(c["generator"], VermaVector.from_json(c["residual"], int(c["level"]))) for c in data["checks"]],
            delta_used=_scalar_from_json(data["delta_used"]),
            alpha_ell=int(parse_rational(data["alpha_ell"])),
            mu=_scalar_from_json(data["mu"]),
        )

    def __eq__(self, other):
        if not isinstance(other, SingularReport):
            return NotImplemented
        return self.to_json() == other.to_json()


def _scalar_json(x):
    if x is None:
        return None
    if isinstance(x, MultiPoly):
        return {"poly": x.to_json()}
    return rat_str(x)


def _scalar_from_json(x):
    if x is None:
        return None
    if isinstance(x, dict):
        return MultiPoly.from_json(x["poly"])
    return parse_rational(x)


def verify_singular(ell, q: int, mu=1, delta=None, raise_on_failure: bool = True) -> SingularReport:
    """Apply every raising generator (and D) to the level-``2q`` candidate.

    ``delta`` defaults to the existence value; pass another to see the failure.
    """
    alg = CGA(ell)
    mu = _check_mu(mu)
    delta = delta_for_singular(alg.ell, q) if delta is None else delta
    if not isinstance(delta, MultiPoly):
        delta = parse_rational(delta)
    hw = HighestWeight(delta, mu)
    u = build_singular(alg.ell, q, mu)
    checks = [(str(g), act(alg, hw, g, u)) for g in alg.raising]
    d_res = act(alg, hw, Generator("D"), u) - u.scale(delta - 2 * q)
    checks.append(("D-eigenvalue", VermaVector(2 * q, d_res.entries)))
    report = SingularReport(alg.ell, q, 2 * q, u, checks, delta, alpha(alg.ell), mu)
    if raise_on_failure and not report.verified:
        raise VerificationFailed(report)
    return report


def h_ladder_expected(ell, q: int) -> VermaVector:
    """``-(q/2) alpha mu (2 delta - 2(q-1) + (l+1/2)^2) |u_{2(q-1)}>`` with symbolic weights."""
    alg = CGA(ell)
    up = alg.ell.upper
    factor = (MultiPoly.delta() * 2 + (up * up - 2 * (q - 1))) * MU * (Fraction(-q, 2) * alpha(alg.ell))
    lower = hwv(alg.ell) if q == 1 else build_singular(alg.ell, q - 1, MU)
    return lower.scale(factor)


# -- elimination ------------------------------------------------------------

@dataclass
class KernelResult:
    ell: HalfInt
    level: int
    dimension: int
    basis: list
    delta: Fraction | None = None
    mu: Fraction | None = None
    quotient_q: int | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "level": self.level,
            "dimension": self.dimension,
            "delta": _scalar_json(self.delta),
            "mu": _scalar_json(self.mu),
            "quotient_q": self.quotient_q,
            "basis": [v.to_json() for v in self.basis],
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data) -> "KernelResult":
        level = int(data["level"])
        return cls(
            ell=HalfInt.parse(data["ell"]),
            level=level,
            dimension=int(data["dimension"]),
            basis=[VermaVector.from_json(v, level) for v in data["basis"]],
            delta=_scalar_from_json(data["delta"]),
            mu=_scalar_from_json(data["mu"]),
            quotient_q=data["quotient_q"],
            notes=dict(data.get("notes", {})),
        )

    def __eq__(self, other):
        if not isinstance(other, KernelResult):
            return NotImplemented
        return self.to_json() == other.to_json()


def raising_blocks(alg: CGA, hw: HighestWeight, m: int) -> list:
    """``[(generator, target_basis, matrix)]``: each raising map out of level ``m``."""
    basis = enumerate_basis(alg.ell, m)
    blocks = []
    for g in alg.raising:
        target_level = m + level_shift(alg, g)
        target = enumerate_basis(alg.ell, target_level)
        if not target:
            continue
        index = {lab: i for i, lab in enumerate(target)}
        rows = [[Fraction(0)] * len(basis) for _ in target]
        for col, lab in enumerate(basis):
            for out_lab, c in act(alg, hw, g, basis_vector(lab)).items():
                rows[index[out_lab]][col] = Fraction(c)
        blocks.append((g, target, rows))
    return blocks


def null_space(ell, delta, mu, m: int) -> KernelResult:
    """Exact kernel of all raising generators on level ``m``."""
    if m < 1:
        raise ValueError("level must be >= 1")
    alg = CGA(ell)
    mu = _check_mu(mu)
    delta = parse_rational(delta)
    hw = HighestWeight(delta, mu)
    basis = enumerate_basis(alg.ell, m)
    rows = [row for _, _, block in raising_blocks(alg, hw, m) for row in block]
    kernel = nullspace(rows, len(basis))
    vectors = [VermaVector.from_coords(m, basis, x) for x in kernel]
    return KernelResult(alg.ell, m, len(vectors), vectors, delta, mu)


def _reduce(x: list, reduced_rows: list, pivots: list) -> list:
    x = list(x)
    for row, p in zip(reduced_rows, pivots):
        if x[p]:
            f = x[p]
            x = [a - f * b for a, b in zip(x, row)]
    return x


def descendant_vectors(ell, q: int, mu, m: int) -> list:
    """``X |u_{2q}>`` for every lowering basis monomial ``X`` of degree ``m - 2q``."""
    if m < 2 * q:
        raise LevelTooLow(f"level {m} is below the singular level {2 * q}")
    alg = CGA(ell)
    mu = _check_mu(mu)
    hw = HighestWeight(0, mu)
    u = build_singular(alg.ell, q, mu)
    return [apply_word(alg, hw, lab.word(alg), u) for lab in enumerate_basis(alg.ell, m - 2 * q)]


def descendant_span(ell, q: int, mu, m: int) -> list:
    """Independent basis (reduced row echelon) of the submodule at level ``m``."""
    vectors = descendant_vectors(ell, q, mu, m)
    basis = enumerate_basis(HalfInt.parse(ell), m)
    reduced, _ = rref([v.coords(basis) for v in vectors])
    return [VermaVector.from_coords(m, basis, row) for row in reduced]


def complement_pivots(ell, q: int, mu, m: int) -> tuple:
    """Pivot labels of the submodule when eliminating from the largest ``h`` down.

    The quotient basis ``h <= q - 1`` is a complement exactly when these pivots
    are the labels with ``h >= q``.  Returns ``(pivot_labels, expected_labels)``.
    """
    basis = enumerate_basis(HalfInt.parse(ell), m)
    vectors = descendant_vectors(ell, q, mu, m)
    order = list(range(len(basis) - 1, -1, -1))
    _, pivots = rref([v.coords(basis) for v in vectors], column_order=order)
    got = sorted((basis[p] for p in pivots), key=lambda b: b.sort_key)
    expected = [lab for lab in basis if lab.h >= q]
    return got, expected


def _submodule_rref(ell, q, mu, m):
    if m < 2 * q:
        return [], []
    basis = enumerate_basis(HalfInt.parse(ell), m)
    return rref([v.coords(basis) for v in descendant_vectors(ell, q, mu, m)])


def quotient_null_space(ell, q: int, mu, m: int) -> KernelResult:
    """Singular vectors of the quotient by the submodule generated at level ``2q``."""
    if m < 1:
        raise ValueError("level must be >= 1")
    alg = CGA(ell)
    mu = _check_mu(mu)
    delta = delta_for_singular(alg.ell, q)
    hw = HighestWeight(delta, mu)
    basis = enumerate_basis(alg.ell, m)
    sub_rows, sub_piv = _submodule_rref(alg.ell, q, mu, m)
    stacked = []
    for g, target, block in raising_blocks(alg, hw, m):
        t_rows, t_piv = _submodule_rref(alg.ell, q, mu, target[0].m)
        # reduce every column image modulo the target submodule
        cols = [[block[i][c] for i in range(len(target))] for c in range(len(basis))]
        cols = [_reduce(col, t_rows, t_piv) for col in cols]
        stacked += [[cols[c][i] for c in range(len(basis))] for i in range(len(target))]
    preimage = nullspace(stacked, len(basis))
    containing = len(rref(preimage + sub_rows)[1]) if (preimage or sub_rows) else 0
    if containing != len(preimage):
        raise AssertionError("submodule is not contained in the preimage; the span is not invariant")
    reps = [_reduce(x, sub_rows, sub_piv) for x in preimage]
    reduced, _ = rref(reps) if reps else ([], [])
    vectors = [VermaVector.from_coords(m, basis, row) for row in reduced]
    notes = {"submodule_dimension": len(sub_rows), "preimage_dimension": len(preimage)}
    if m >= 2 * q:
        got, expected = complement_pivots(alg.ell, q, mu, m)
        notes["complement_ok"] = got == expected
    return KernelResult(alg.ell, m, len(vectors), vectors, delta, mu, quotient_q=q, notes=notes)


# -- recurrences ------------------------------------------------------------

def _label(h, k, m):
    try:
        return BasisLabel(h, tuple(k), m)
    except ValueError:
        return None


def _bump(k: tuple, j: int, d: int) -> tuple | None:
    """``k + d e_j``; ``e_0`` is the zero vector (k_0 is implied by the level)."""
    if j == 0:
        return k
    k = list(k)
    k[j - 1] += d
    return tuple(k) if k[j - 1] >= 0 else None


def h_equation(alg: CGA, m: int, delta, mu, target: BasisLabel) -> dict:
    """Coefficient of ``target`` (level m-2) in ``H|u_m> = 0`` as {source label: coeff}."""
    ell = alg.ell
    up = ell.upper
    h, k = target.h, target.k
    eq: dict = {}
    src = _label(h + 1, k, m)
    if src:
        eq[src] = (m - h - 2 - delta) * (h + 1)
    src = _label(h, k, m)
    if src:
        k0 = src.k0
        eq[src] = mu * (Fraction(k0 * (k0 - 1), 2) * factorial(up) ** 2)
    for j in range(1, ell.lower + 1):
        kk = _bump(k, j - 1, -1)
        kk = _bump(kk, j, 1) if kk is not None else None
        src = _label(h, kk, m) if kk is not None else None
        if src:
            coeff = -(k[j - 1] + 1) * (up + j)
            eq[src] = eq.get(src, 0) + coeff
    return eq


def p_equation(alg: CGA, m: int, a: int, mu, target: BasisLabel) -> dict:
    """Coefficient of ``target`` (level m-2a-1) in ``P_{l-1/2-a}|u_m> = 0``."""
    ell = alg.ell
    top = ell.upper + a
    h, k = target.h, target.k
    eq: dict = {}
    for n in range(0, a + 1):
        kk = _bump(k, a - n, 1)
        src = _label(h + n, kk, m) if kk is not None else None
        if not src:
            continue
        mult = src.kfull[a - n]
        coeff = (-1) ** n * mult * alg.I(ell.lower - a + n) * factorial(n) * comb(h + n, n) * comb(top, n)
        if coeff:
            eq[src] = eq.get(src, 0) + mu * coeff
    for n in range(a + 1, top + 1):
        kk = _bump(k, n - a - 1, -1)
        src = _label(h + n, kk, m) if kk is not None else None
        if not src:
            continue
        coeff = (-1) ** n * factorial(n) * comb(h + n, n) * comb(top, n)
        if coeff:
            eq[src] = eq.get(src, 0) + coeff
    return eq


def _all_equations(alg: CGA, m: int, delta, mu) -> list:
    eqs = []
    for target in enumerate_basis(alg.ell, m - 2):
        eqs.append(("H", target, h_equation(alg, m, delta, mu, target)))
    for a in range(alg.ell.lower + 1):
        for target in enumerate_basis(alg.ell, m - 2 * a - 1):
            eqs.append((f"P{alg.ell.lower - a}", target, p_equation(alg, m, a, mu, target)))
    return [(name, t, {lab: MultiPoly.coerce(c) for lab, c in eq.items() if c}) for name, t, eq in eqs]


def _residual(eq: dict, known: dict) -> MultiPoly:
    total = MultiPoly()
    for lab, c in eq.items():
        total = total + c * known[lab]
    return total


def recurrence_coefficients(ell, q: int, delta=None) -> dict:
    """All coefficients ``a_{h,k}`` of the level-``2q`` singular vector (symbolic mu).

    Starts from ``a_{q,0} = (alpha mu)^q``, fixes ``a_{h,0}`` from the
    ``P_{l-1/2}`` recurrence, then repeatedly solves any recurrence with a
    single undetermined coefficient.  Every recurrence must hold at the end;
    a ``delta`` off the existence value raises :class:`InconsistentRecurrence`.
    """
    alg = CGA(ell)
    delta = delta_for_singular(alg.ell, q) if delta is None else parse_rational(delta)
    m = 2 * q
    n = alg.ell.lower
    zero_k = (0,) * n
    a_mu = MU * alpha(alg.ell)
    known = {BasisLabel(q, zero_k, m): a_mu ** q}

    # a_{h,0} from (m - 2h) I mu a_{h,0} = (h + 1)(l + 1/2) a_{h+1,0}
    i_top = alg.I(n)
    for h in range(q - 1, -1, -1):
        rhs = known[BasisLabel(h + 1, zero_k, m)] * ((h + 1) * alg.ell.upper)
        known[BasisLabel(h, zero_k, m)] = poly_exact_div(rhs, MU * ((m - 2 * h) * i_top))
    # closed form (-alpha mu)^(h-q) binom(q, h) a_{q,0}
    for h in range(q + 1):
        expected = a_mu ** h * ((-1) ** (q - h) * comb(q, h))
        if known[BasisLabel(h, zero_k, m)] != expected:
            raise InconsistentRecurrence(f"a_{{{h},0}} disagrees with the closed form")

    eqs = _all_equations(alg, m, delta, MU)
    labels = enumerate_basis(alg.ell, m)
    progress = True
    while progress and len(known) < len(labels):
        progress = False
        for name, target, eq in eqs:
            unknown = [lab for lab in eq if lab not in known]
            if len(unknown) != 1:
                continue
            x = unknown[0]
            rest = MultiPoly()
            for lab, c in eq.items():
                if lab != x:
                    rest = rest + c * known[lab]
            try:
                known[x] = poly_exact_div(-rest, eq[x])
            except NotDivisible as exc:
                raise InconsistentRecurrence(
                    f"{name} recurrence at {target} gives a non-polynomial coefficient for {x}"
                ) from exc
            progress = True
    missing = [lab for lab in labels if lab not in known]
    if missing:
        raise InconsistentRecurrence(f"recurrences leave {missing} undetermined")
    for name, target, eq in eqs:
        r = _residual(eq, known)
        if r:
            raise InconsistentRecurrence(f"{name} recurrence at {target} fails: residual {r}")
    return {lab: known[lab] for lab in labels if known[lab]}


def a_e1_two_routes(ell, q: int, h: int, delta) -> tuple:
    """The two expressions for ``a_{h,e_1} / (alpha mu a_{h,0})`` at level ``2q``.

    One comes from the H recurrence, the other from the ``P_{l-3/2}``
    recurrence with ``k_1 = 0``; they agree iff delta takes the existence value.
    """
    ell = HalfInt.parse(ell)
    delta = parse_rational(delta)
    lo = Fraction(ell.lower)
    up2 = Fraction(ell.upper) ** 2
    from_h = lo * (q - h) * (q - h - 1)
    from_p = (q - h) * (h + delta - 2 * (q - 1) + (q - h - Fraction(1, 2)) * up2) / (Fraction(ell.upper) + 1)
    return from_h, from_p


# -- classification ---------------------------------------------------------

@dataclass(frozen=True)
class IrreducibleVerma:
    ell: HalfInt
    delta: Fraction
    mu: Fraction

    def __str__(self):
        return f"Verma module V^({self.delta},{self.mu}) is irreducible"


@dataclass(frozen=True)
class ReducibleAt:
    ell: HalfInt
    delta: Fraction
    mu: Fraction
    q: int

    @property
    def singular_level(self) -> int:
        return 2 * self.q

    def __str__(self):
        return (f"Verma module reducible: singular vector at level {2 * self.q}; "
                f"the quotient by its submodule is irreducible")


def classify(ell, delta, mu):
    """Irreducible highest-weight module with weights ``(delta, mu)``, ``mu != 0``."""
    ell = HalfInt.parse(ell)
    mu = _check_mu(mu)
    delta = parse_rational(delta)
    q = delta + Fraction(ell.upper ** 2, 2) + 1
    if q.denominator == 1 and q >= 1:
        return ReducibleAt(ell, delta, mu, int(q))
    return IrreducibleVerma(ell, delta, mu)
