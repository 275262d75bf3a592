"""Verma modules: level bases, explicit raising actions, lowering actions.

A basis vector at level ``m`` is ``|h, k; m> = C^h P_{l+1/2}^{k_0} ... P_{2l}^{k_{l-1/2}} |hw>``
with ``k = (k_1, ..., k_{l-1/2})`` and ``k_0`` fixed by the level.

Scalars (``delta``, ``mu`` and vector coefficients) may be rationals or
:class:`~cgalg.exact.MultiPoly`; the code only uses ring operations, so the
symbolic and numeric cases share one path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .algebra import CGA, Generator, TriangularClass
from .exact import DELTA, MU, MultiPoly, parse_rational
from .pbw import UEAElement, _mul_word_into


@dataclass(frozen=True)
class HighestWeight:
    """Eigenvalues of D and M on the highest-weight vector."""

    delta: object
    mu: object

    @classmethod
    def symbolic(cls) -> "HighestWeight":
        return cls(DELTA, MU)

    @classmethod
    def numeric(cls, delta, mu) -> "HighestWeight":
        return cls(parse_rational(delta), parse_rational(mu))

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.delta, MultiPoly) or isinstance(self.mu, MultiPoly)


@dataclass(frozen=True, order=True)
class BasisLabel:
    h: int
    k: tuple
    m: int

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if self.h < 0 or any(x < 0 for x in self.k) or self.k0 < 0:
            raise ValueError(f"invalid basis label h={self.h} k={self.k} m={self.m}")

    @property
    def k0(self) -> int:
        return self.m - 2 * self.h - sum((2 * j + 1) * kj for j, kj in enumerate(self.k, start=1))

    @property
    def kfull(self) -> tuple:
        """``(k_0, k_1, ..., k_{l-1/2})``."""
        return (self.k0,) + self.k

    @property
    def sort_key(self) -> tuple:
        return (self.h,) + self.k

    def word(self, alg: CGA) -> tuple:
        """The generator word ``C^h P_{l+1/2}^{k_0} ... P_{2l}^{k_last}``."""
        up = alg.ell.upper
        word = [Generator("C")] * self.h
        for j, kj in enumerate(self.kfull):
            word += [alg.P(up + j)] * kj
        return tuple(word)

    def mono(self, alg: CGA) -> tuple:
        return tuple(sorted(alg.position[g] for g in self.word(alg)))

    def to_json(self) -> dict:
        return {"h": self.h, "k": list(self.k), "m": self.m}

    @classmethod
    def from_json(cls, data) -> "BasisLabel":
        return cls(int(data["h"]), tuple(data["k"]), int(data["m"]))

    def __str__(self):
        return f"|{self.h},{list(self.k)};{self.m}>"


def _shifted(label: BasisLabel, dh: int, dk: dict, m: int) -> BasisLabel:
    k = list(label.k)
    for j, d in dk.items():
        if j >= 1:
            k[j - 1] += d
    return BasisLabel(label.h + dh, tuple(k), m)


def mu_weight(label: BasisLabel) -> int:
    """``m - 2 (h + sum_j j k_j)``: the number of P letters in the monomial."""
    return label.m - 2 * (label.h + sum(j * kj for j, kj in enumerate(label.k, start=1)))


@lru_cache(maxsize=None)
def enumerate_basis(ell, m: int) -> tuple:
    """All labels at level ``m`` in ascending lexicographic order on (h, k_1, ...)."""
    alg = CGA(ell)
    if m < 0:
        return ()
    n = alg.ell.lower
    labels = []

    def fill(j, remaining, ks):
        # ks collects k_n for n = n_max .. j+1, outermost first
        if j == 0:
            labels.append(tuple(reversed(ks)))
            return
        for kj in range(remaining // (2 * j + 1) + 1):
            fill(j - 1, remaining - (2 * j + 1) * kj, ks + [kj])

    for h in range(m // 2 + 1):
        before = len(labels)
        fill(n, m - 2 * h, [])
        for idx in range(before, len(labels)):
            labels[idx] = BasisLabel(h, labels[idx], m)
    return tuple(sorted(labels, key=lambda b: b.sort_key))


class VermaVector:
    """A homogeneous vector: level plus a sparse map label -> scalar."""

    __slots__ = ("level", "_entries")

    def __init__(self, level: int, entries: Mapping[BasisLabel, object] | None = None):
        self.level = level
        clean = {}
        for lab, c in (entries or {}).items():
            if lab.m != level:
                raise ValueError(f"label {lab} is not at level {level}")
            if c:
                clean[lab] = c
        self._entries = clean

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def coeff(self, label: BasisLabel):
        return self._entries.get(label, 0)

    def __bool__(self):
        return bool(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        if not self and not other:
            return True
        return self.level == other.level and self._entries == other._entries

    def __add__(self, other: "VermaVector") -> "VermaVector":
        if not other:
            return self
        if not self:
            return other
        if self.level != other.level:
            raise ValueError(f"level mismatch {self.level} vs {other.level}")
        out = dict(self._entries)
        for lab, c in other._entries.items():
            out[lab] = out[lab] + c if lab in out else c
        return VermaVector(self.level, out)

    def __neg__(self):
        return VermaVector(self.level, {lab: -c for lab, c in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "VermaVector":
        return VermaVector(self.level, {lab: c * s for lab, c in self._entries.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "VermaVector":
        return VermaVector(self.level, {lab: fn(c) for lab, c in self._entries.items()})

    def subs(self, delta=None, mu=None) -> "VermaVector":
        """Specialize MultiPoly coefficients."""
        return self.map_coeffs(lambda c: c.subs(delta, mu) if isinstance(c, MultiPoly) else c)

    def coords(self, basis: Iterable[BasisLabel]) -> list:
        return [self._entries.get(b, 0) for b in basis]

    @classmethod
    def from_coords(cls, level: int, basis, coords) -> "VermaVector":
        return cls(level, dict(zip(basis, coords)))

    def __repr__(self):
        if not self._entries:
            return f"0 (level {self.level})"
        items = sorted(self._entries.items(), key=lambda t: t[0].sort_key)
        return " + ".join(f"({c}){lab}" for lab, c in items)

    def to_json(self) -> list:
        items = sorted(self._entries.items(), key=lambda t: t[0].sort_key)
        return [{"label": lab.to_json(), "coeff": MultiPoly.coerce(c).to_json()} for lab, c in items]

    @classmethod
    def from_json(cls, data, level: int | None = None) -> "VermaVector":
        entries = {}
        for item in data:
            lab = BasisLabel.from_json(item["label"])
            entries[lab] = MultiPoly.from_json(item["coeff"])
        if level is None:
            levels = {lab.m for lab in entries}
            if len(levels) > 1:
                raise ValueError("mixed levels")
            level = levels.pop() if levels else 0
        return cls(level, entries)


def hwv(ell, coeff=1) -> VermaVector:
    n = CGA(ell).ell.lower
    return VermaVector(0, {BasisLabel(0, (0,) * n, 0): coeff})


def _accumulate(out: dict, lab: BasisLabel, c):
    if lab in out:
        out[lab] = out[lab] + c
    else:
        out[lab] = c


def act(alg: CGA, hw: HighestWeight, g, v: VermaVector) -> VermaVector:
    """Closed-form action of a raising or Cartan generator on ``v``."""
    g = alg.gen(g)
    cls = alg.triangular_class(g)
    if cls is TriangularClass.LOWERING:
        raise ValueError(f"{g} is a lowering generator; use act_lowering")
    ell = alg.ell
    m = v.level
    if g.kind == "M":
        return v.scale(hw.mu)
    if g.kind == "D":
        return v.scale(hw.delta - m)
    out: dict = {}
    up = ell.upper
    if g.kind == "H":
        fac2 = factorial(up) ** 2
        for lab, c in v.items():
            h, kf = lab.h, lab.kfull
            if h:
                _accumulate(out, _shifted(lab, -1, {}, m - 2), c * ((m - h - 1 - hw.delta) * h))
            k0 = kf[0]
            if k0 >= 2:
                _accumulate(out, _shifted(lab, 0, {}, m - 2), c * (hw.mu * (Fraction(k0 * (k0 - 1), 2) * fac2)))
            for j in range(1, ell.lower + 1):
                if kf[j]:
                    target = _shifted(lab, 0, {j - 1: 1, j: -1}, m - 2)
                    _accumulate(out, target, c * (-kf[j] * (up + j)))
        return VermaVector(m - 2, out)
    # g = P_{l-1/2-a}
    a = ell.lower - g.index
    new_m = m - 2 * a - 1
    top = up + a  # equals 2l - index
    for lab, c in v.items():
        h, kf = lab.h, lab.kfull
        for n in range(0, min(a, h) + 1):
            kk = kf[a - n]
            if not kk:
                continue
            coeff = (-1) ** n * kk * alg.I(ell.lower - a + n) * factorial(n) * comb(h, n) * comb(top, n)
            target = _shifted(lab, -n, {a - n: -1}, new_m)
            _accumulate(out, target, c * (hw.mu * coeff))
        for n in range(a + 1, min(h, top) + 1):
            coeff = (-1) ** n * factorial(n) * comb(h, n) * comb(top, n)
            target = _shifted(lab, -n, {n - a - 1: 1}, new_m)
            _accumulate(out, target, c * coeff)
    return VermaVector(new_m, out)


def label_of_mono(alg: CGA, mono: tuple) -> BasisLabel:
    """Label of a monomial built only from lowering generators."""
    gens = alg.gens
    up, n = alg.ell.upper, alg.ell.lower
    h = 0
    kf = [0] * (n + 1)
    for i in mono:
        g = gens[i]
        if g.kind == "C":
            h += 1
        elif g.kind == "P" and g.index >= up:
            kf[g.index - up] += 1
        else:
            raise ValueError(f"{g} is not lowering")
    m = 2 * h + sum((2 * j + 1) * kj for j, kj in enumerate(kf))
    return BasisLabel(h, tuple(kf[1:]), m)


def evaluate_on_hwv(alg: CGA, hw: HighestWeight, terms: Mapping[tuple, object]) -> dict:
    """Apply normal-ordered monomials to the highest-weight vector.

    Any raising letter (always rightmost in canonical order) kills the vector;
    ``M`` gives ``mu``; ``D`` (leftmost) acts on the lowering part, giving
    ``delta - level``.  Returns ``{label: scalar}`` possibly across levels.
    """
    gens = alg.gens
    out: dict = {}
    for mono, c in terms.items():
        if any(alg.triangular_class(gens[i]) is TriangularClass.RAISING for i in mono):
            continue
        n_m = sum(1 for i in mono if gens[i].kind == "M")
        n_d = sum(1 for i in mono if gens[i].kind == "D")
        lowering = tuple(i for i in mono if gens[i].kind not in ("M", "D"))
        lab = label_of_mono(alg, lowering)
        s = c
        if n_m:
            s = s * hw.mu ** n_m
        if n_d:
            s = s * (hw.delta - lab.m) ** n_d
        if s:
            _accumulate(out, lab, s)
    return {lab: s for lab, s in out.items() if s}


def apply_element(alg: CGA, hw: HighestWeight, x: UEAElement, v: VermaVector, level: int | None = None) -> VermaVector:
    """Act with an arbitrary (homogeneous) element via PBW normal ordering."""
    out: dict = {}
    for lab, c in v.items():
        prod: dict = {}
        base = {lab.mono(alg): Fraction(1)}
        for wx, cx in x.items():
            for w, cw in _mul_word_into(alg, wx, base).items():
                prod[w] = prod.get(w, 0) + cx * cw
        for lab2, s in evaluate_on_hwv(alg, hw, prod).items():
            _accumulate(out, lab2, c * s)
    out = {lab: s for lab, s in out.items() if s}
    if level is None:
        levels = {lab.m for lab in out}
        if len(levels) > 1:
            raise ValueError("element is not homogeneous")
        level = levels.pop() if levels else v.level
    return VermaVector(level, out)


def level_shift(alg: CGA, g) -> int:
    """Change of level under the action of ``g``."""
    g = alg.gen(g)
    t = alg.ell.twice_value
    if g.kind in ("D", "M"):
        return 0
    if g.kind == "C":
        return 2
    if g.kind == "H":
        return -2
    return 2 * g.index - t


def act_lowering(alg: CGA, hw: HighestWeight, g, v: VermaVector) -> VermaVector:
    """Action of a lowering generator, re-expanded in the basis by normal ordering."""
    g = alg.gen(g)
    if alg.triangular_class(g) is not TriangularClass.LOWERING:
        raise ValueError(f"{g} is not a lowering generator")
    code = (alg.position[g],)
    new_level = v.level + level_shift(alg, g)
    out: dict = {}
    for lab, c in v.items():
        terms = _mul_word_into(alg, code, {lab.mono(alg): Fraction(1)})
        for lab2, s in evaluate_on_hwv(alg, hw, terms).items():
            _accumulate(out, lab2, c * s)
    return VermaVector(new_level, out)


def act_any(alg: CGA, hw: HighestWeight, g, v: VermaVector) -> VermaVector:
    g = alg.gen(g)
    if alg.triangular_class(g) is TriangularClass.LOWERING:
        return act_lowering(alg, hw, g, v)
    return act(alg, hw, g, v)


def apply_word(alg: CGA, hw: HighestWeight, word, v: VermaVector) -> VermaVector:
    """Apply generators right to left (``word`` read as a product)."""
    for g in reversed(tuple(word)):
        v = act_any(alg, hw, g, v)
    return v


def basis_vector(label: BasisLabel, coeff=1) -> VermaVector:
    return VermaVector(label.m, {label: coeff})
