"""Shapovalov form, Kac matrices and the factorized Kac determinant.

The form is fixed by ``(|hw>, |hw>) = 1`` and ``(A x, B y) = (x, omega(A) B y)``.
For basis vectors ``v = X|hw>`` the entry ``(v, w)`` is the highest-weight
coefficient of ``omega(X) w``; ``omega(X)`` is a product of raising generators,
so only the closed-form raising actions are needed.

The determinant at level ``m`` is expected to factor as::

    C * mu^e(l, m) * prod_{j=0}^{floor(m/2)-1} (2 delta - 2j + (l + 1/2)^2)^d(l, m - 2(j+1))

with a non-zero rational ``C`` that depends on the basis order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import CGA, HalfInt
from .exact import DELTA, MU, MultiPoly, NotDivisible, parse_rational, poly_exact_div, poly_matrix_det, rat_str
from .partitions import d, e
from .pbw import normal_order, uea_omega
from .singular import delta_for_singular, descendant_vectors
from .verma import BasisLabel, HighestWeight, apply_word, basis_vector, enumerate_basis, evaluate_on_hwv, mu_weight

BASIS_ORDER = "ascending lexicographic on (h, k_1, ..., k_{l-1/2})"


class LevelMismatch(ValueError):
    pass


class FactorizationMismatch(ArithmeticError):
    def __init__(self, message: str, remainder: MultiPoly):
        super().__init__(message)
        self.remainder = remainder


class StructureViolation(AssertionError):
    pass


@lru_cache(maxsize=None)
def shapovalov_form(ell, v: BasisLabel, w: BasisLabel) -> MultiPoly:
    """``(v, w)`` with symbolic delta and mu."""
    if v.m != w.m:
        raise LevelMismatch(f"{v} and {w} lie on different levels")
    alg = CGA(ell)
    word = tuple(alg.omega(g) for g in reversed(v.word(alg)))
    out = apply_word(alg, HighestWeight.symbolic(), word, basis_vector(w, MultiPoly.const(1)))
    n = alg.ell.lower
    return MultiPoly.coerce(out.coeff(BasisLabel(0, (0,) * n, 0)))


def shapovalov_form_pbw(ell, v: BasisLabel, w: BasisLabel) -> MultiPoly:
    """Same form computed by normal ordering ``omega(X_v) X_w`` in the enveloping algebra."""
    if v.m != w.m:
        raise LevelMismatch(f"{v} and {w} lie on different levels")
    alg = CGA(ell)
    x = uea_omega(normal_order(alg, v.word(alg))) * normal_order(alg, w.word(alg))
    values = evaluate_on_hwv(alg, HighestWeight.symbolic(), x.terms)
    n = alg.ell.lower
    return MultiPoly.coerce(values.get(BasisLabel(0, (0,) * n, 0), 0))


@dataclass
class KacMatrix:
    ell: HalfInt
    level: int
    basis: tuple
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.basis)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def subs(self, delta=None, mu=None) -> list:
        return [[x.subs(delta, mu) for x in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "level": self.level,
            "basis_order": BASIS_ORDER,
            "basis": [b.to_json() for b in self.basis],
            "matrix": [[x.to_json() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "KacMatrix":
        return cls(
            HalfInt.parse(data["ell"]),
            int(data["level"]),
            tuple(BasisLabel.from_json(b) for b in data["basis"]),
            tuple(tuple(MultiPoly.from_json(x) for x in row) for row in data["matrix"]),
        )


def kac_matrix(ell, m: int) -> KacMatrix:
    """Gram matrix of the form on level ``m``; the upper triangle is mirrored."""
    ell = HalfInt.parse(ell)
    basis = enumerate_basis(ell, m)
    n = len(basis)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = shapovalov_form(ell, basis[i], basis[j])
    return KacMatrix(ell, m, basis, tuple(tuple(r) for r in rows))


def kac_determinant(ell, m: int) -> MultiPoly:
    return poly_matrix_det(kac_matrix(ell, m).entries)


def delta_factor(ell, j: int) -> MultiPoly:
    """``2 delta - 2j + (l + 1/2)^2``."""
    up = HalfInt.parse(ell).upper
    return DELTA * 2 + (up * up - 2 * j)


@dataclass
class KacFactorization:
    ell: HalfInt
    level: int
    mu_exponent: int
    delta_factors: list
    constant: Fraction | None = None

    def reconstruct(self) -> MultiPoly:
        if self.constant is None:
            raise ValueError("constant not determined")
        out = MU ** self.mu_exponent * self.constant
        for j, k in self.delta_factors:
            out = out * delta_factor(self.ell, j) ** k
        return out

    def __str__(self):
        parts = [str(self.constant if self.constant is not None else "C")]
        if self.mu_exponent:
            parts.append(f"μ^{self.mu_exponent}")
        for j, k in self.delta_factors:
            if k:
                parts.append(f"({delta_factor(self.ell, j)})^{k}")
        return " · ".join(parts)

    def to_json(self) -> dict:
        return {
            "constant": None if self.constant is None else rat_str(self.constant),
            "mu_exponent": self.mu_exponent,
            "delta_factors": [{"j": j, "exponent": k, "factor": delta_factor(self.ell, j).to_json()}
                              for j, k in self.delta_factors],
        }

    @classmethod
    def from_json(cls, ell, level, data) -> "KacFactorization":
        c = data["constant"]
        return cls(HalfInt.parse(ell), int(level), int(data["mu_exponent"]),
                   [(int(f["j"]), int(f["exponent"])) for f in data["delta_factors"]],
                   None if c is None else parse_rational(c))


def predicted_factorization(ell, m: int) -> KacFactorization:
    ell = HalfInt.parse(ell)
    factors = [(j, d(ell, m - 2 * (j + 1))) for j in range(m // 2)]
    return KacFactorization(ell, m, e(ell, m), factors)


def factor_check(ell, m: int, det: MultiPoly | None = None) -> KacFactorization:
    """Divide out the predicted factors; the quotient must be a non-zero constant."""
    ell = HalfInt.parse(ell)
    det = kac_determinant(ell, m) if det is None else det
    pred = predicted_factorization(ell, m)
    rest = det
    try:
        rest = poly_exact_div(rest, MU ** pred.mu_exponent)
        for j, k in pred.delta_factors:
            rest = poly_exact_div(rest, delta_factor(ell, j) ** k)
    except NotDivisible as exc:
        raise FactorizationMismatch(f"level {m}: predicted factor does not divide", exc.remainder) from exc
    if not rest or not rest.is_constant():
        raise FactorizationMismatch(f"level {m}: cofactor {rest} is not a non-zero constant", rest)
    pred.constant = rest.constant_value()
    if pred.reconstruct() != det:
        raise FactorizationMismatch(f"level {m}: reconstruction differs", det - pred.reconstruct())
    return pred


def structure_checks(ell, m: int, raise_on_failure: bool = True) -> dict:
    """Entry-wise checks on the level-``m`` Kac matrix.

    Both triangles are computed independently. Checks symmetry, the delta-degree
    bound ``min(h_v, h_w)``, that each non-zero entry is a single power of mu
    ``(rho_v + rho_w)/2`` times a delta polynomial, and that descendants of every
    singular vector at level ``2q <= m`` are null at the matching delta.
    """
    ell = HalfInt.parse(ell)
    basis = enumerate_basis(ell, m)
    n = len(basis)
    full = [[shapovalov_form(ell, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    failures = []
    for i, v in enumerate(basis):
        for j, w in enumerate(basis):
            x = full[i][j]
            if x != full[j][i]:
                failures.append(f"asymmetric at ({i},{j})")
            if not x:
                continue
            if x.degree_delta() > min(v.h, w.h):
                failures.append(f"delta-degree {x.degree_delta()} > min(h) at ({i},{j})")
            rho = mu_weight(v) + mu_weight(w)
            if rho % 2 or x.mu_exponents() != {rho // 2}:
                failures.append(f"mu support {sorted(x.mu_exponents())} != {{{rho / 2}}} at ({i},{j})")
    null_checked = 0
    for q in range(1, m // 2 + 1):
        dq = delta_for_singular(ell, q)
        kq = [[x.subs(delta=dq) for x in row] for row in full]
        for vec in descendant_vectors(ell, q, MU, m):
            c = vec.coords(basis)
            for i in range(n):
                s = MultiPoly()
                for j in range(n):
                    if c[j]:
                        s = s + kq[i][j] * c[j]
                if s:
                    failures.append(f"descendant of the level-{2 * q} singular vector is not null (row {i})")
                    break
            null_checked += 1
    report = {
        "symmetric": not any(f.startswith("asym") for f in failures),
        "delta_degree_bound": not any(f.startswith("delta") for f in failures),
        "mu_monomial": not any(f.startswith("mu") for f in failures),
        "singular_null": not any(f.startswith("desc") for f in failures),
        "null_vectors_checked": null_checked,
        "failures": failures,
    }
    if raise_on_failure and failures:
        raise StructureViolation("; ".join(failures))
    return report


@dataclass
class KacReport:
    matrix: KacMatrix
    determinant: MultiPoly
    factorization: KacFactorization | None
    structure: dict | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = self.matrix.to_json()
        out["determinant"] = self.determinant.to_json()
        out["factorization"] = None if self.factorization is None else self.factorization.to_json()
        out["structure_checks"] = self.structure
        return out

    @classmethod
    def from_json(cls, data) -> "KacReport":
        matrix = KacMatrix.from_json(data)
        fac = data["factorization"]
        return cls(
            matrix,
            MultiPoly.from_json(data["determinant"]),
            None if fac is None else KacFactorization.from_json(data["ell"], data["level"], fac),
            data.get("structure_checks"),
        )


def kac_report(ell, m: int, factor: bool = True, structure: bool = True) -> KacReport:
    mat = kac_matrix(ell, m)
    det = poly_matrix_det(mat.entries)
    fac = factor_check(ell, m, det) if factor else None
    checks = structure_checks(ell, m, raise_on_failure=False) if structure else None
    return KacReport(mat, det, fac, checks)
