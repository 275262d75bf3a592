"""PBW normal ordering in the universal enveloping algebra.

Canonical order, left to right: ``M, D, C, P_{2l}, ..., P_1, P_0, H``.
Lowering generators sit to the left of raising ones, so a normal-ordered
monomial acting on a highest-weight vector vanishes as soon as it contains a
raising generator.

Monomials are stored internally as non-decreasing tuples of positions in the
canonical order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .algebra import CGA, Generator, IndexOutOfRange
from .exact import parse_rational, rat_str


class MixedAlgebra(ValueError):
    pass


@lru_cache(maxsize=None)
def _bracket_table(alg: CGA) -> dict:
    """(i, j) -> ((k, coeff), ...) for positions in canonical order."""
    table = {}
    for i, a in enumerate(alg.gens):
        for j, b in enumerate(alg.gens):
            table[i, j] = tuple((alg.position[g], c) for g, c in alg.bracket(a, b).items())
    return table


@lru_cache(maxsize=None)
def _left_mul(alg: CGA, g: int, mono: tuple) -> Mapping[tuple, Fraction]:
    """Normal form of ``g * mono`` for an already sorted ``mono``."""
    if not mono or g <= mono[0]:
        return {(g,) + mono: Fraction(1)}
    x, rest = mono[0], mono[1:]
    out: dict = {}
    # g x rest = x (g rest) + [g, x] rest
    for w, c in _left_mul(alg, g, rest).items():
        for w2, c2 in _left_mul(alg, x, w).items():
            out[w2] = out.get(w2, 0) + c * c2
    for y, c in _bracket_table(alg)[g, x]:
        for w, c2 in _left_mul(alg, y, rest).items():
            out[w] = out.get(w, 0) + c * c2
    return {w: c for w, c in out.items() if c}


class UEAElement:
    """A finite sum of normal-ordered monomials with rational coefficients."""

    __slots__ = ("alg", "_terms")

    def __init__(self, alg: CGA, terms: Mapping[tuple, object] | None = None):
        self.alg = alg
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if list(mono) != sorted(mono):
                    raise ValueError(f"monomial {mono} is not in canonical order")
                clean[tuple(mono)] = c
        self._terms = clean

    @classmethod
    def one(cls, alg: CGA) -> "UEAElement":
        return cls(alg, {(): 1})

    @classmethod
    def generator(cls, alg: CGA, g) -> "UEAElement":
        return cls(alg, {(alg.position[alg.gen(g)],): 1})

    @classmethod
    def from_words(cls, alg: CGA, words: Iterable[tuple]) -> "UEAElement":
        """Sum of ``coeff * word`` for ``(word, coeff)`` pairs; words need not be sorted."""
        total = cls(alg)
        for word, c in words:
            total = total + normal_order(alg, word) * c
        return total

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def word_terms(self) -> list:
        """``[(tuple of Generator, coeff), ...]`` in a deterministic order."""
        gens = self.alg.gens
        return [(tuple(gens[i] for i in mono), c)
                for mono, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))]

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        if other.alg != self.alg:
            raise MixedAlgebra(f"{self.alg} vs {other.alg}")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == UEAElement.one(self.alg) * other
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.alg == other.alg and self._terms == other._terms

    def __hash__(self):
        return hash((self.alg, frozenset(self._terms.items())))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return UEAElement(self.alg, out)

    def __neg__(self):
        return UEAElement(self.alg, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UEAElement(self.alg, {w: c * other for w, c in self._terms.items()})
        return uea_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for word, c in self.word_terms():
            w = "·".join(str(g) for g in word) or "1"
            parts.append(f"{c}*{w}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"word": [str(g) for g in word], "c": rat_str(c)} for word, c in self.word_terms()]

    @classmethod
    def from_json(cls, alg: CGA, data) -> "UEAElement":
        pos = alg.position
        terms: dict = {}
        for t in data:
            mono = tuple(pos[alg.gen(s)] for s in t["word"])
            if mono in terms:
                raise ValueError(f"duplicate word {t['word']}")
            terms[mono] = parse_rational(t["c"])
        return cls(alg, terms)


def _mul_word_into(alg: CGA, word_codes: tuple, element_terms: Mapping) -> dict:
    """Normal form of ``word * element`` where ``element`` is already normal."""
    current = dict(element_terms)
    for g in reversed(word_codes):
        nxt: dict = {}
        for mono, c in current.items():
            for w, c2 in _left_mul(alg, g, mono).items():
                nxt[w] = nxt.get(w, 0) + c * c2
        current = {w: c for w, c in nxt.items() if c}
    return current


def normal_order(alg: CGA, word: Iterable) -> UEAElement:
    """PBW normal form of a product of generators (given left to right)."""
    codes = tuple(alg.position[alg.gen(g)] for g in word)
    return UEAElement(alg, _mul_word_into(alg, codes, {(): Fraction(1)}))


def uea_mul(a: UEAElement, b: UEAElement) -> UEAElement:
    if a.alg != b.alg:
        raise MixedAlgebra(f"{a.alg} vs {b.alg}")
    out: dict = {}
    for wa, ca in a.items():
        for w, c in _mul_word_into(a.alg, wa, b._terms).items():
            out[w] = out.get(w, 0) + ca * c
    return UEAElement(a.alg, out)


def uea_bracket(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b - b * a


def commutator(alg: CGA, a, b) -> UEAElement:
    """The Lie bracket of two generators as a (degree <= 1) element."""
    return UEAElement(alg, {(alg.position[g],): c for g, c in alg.bracket(a, b).items()})


def uea_omega(a: UEAElement) -> UEAElement:
    """Apply the anti-automorphism: reverse each word and map every letter."""
    alg = a.alg
    gens, pos = alg.gens, alg.position
    out = UEAElement(alg)
    for mono, c in a.items():
        image = tuple(pos[alg.omega(gens[i])] for i in reversed(mono))
        out = out + UEAElement(alg, _mul_word_into(alg, image, {(): Fraction(1)})) * c
    return out


def pbw_degree(alg: CGA, mono: tuple) -> int:
    """Number of C, H and P letters in a monomial (D and M are not counted)."""
    gens = alg.gens
    return sum(1 for i in mono if gens[i].kind in ("C", "H", "P"))


def power_commutator(alg: CGA, which: str, **params) -> UEAElement:
    """Closed-form commutators with powers of a generator.

    ``which`` selects one of:

    - ``"PC"``: ``[P_j, C^h]`` (params ``j``, ``h``)
    - ``"PPk"``: ``[P_j, P_{2l-j}^k]`` (params ``j``, ``k``)
    - ``"HC"``: ``[H, C^h]`` (param ``h``)
    - ``"HPk"``: ``[H, P_n^k]`` (params ``n``, ``k``)
    """
    t = alg.ell.twice_value
    pos = alg.position
    cC, cD, cM = pos[Generator("C")], pos[Generator("D")], pos[Generator("M")]

    def P(n):
        return pos[alg.P(n)]

    terms: dict = {}
    if which == "PC":
        j, h = params["j"], params["h"]
        if not 0 <= j <= t or h < 0:
            raise IndexOutOfRange(f"PC needs 0 <= j <= {t}, h >= 0")
        for n in range(1, min(h, t - j) + 1):
            coeff = (-1) ** n * factorial(n) * comb(h, n) * comb(t - j, n)
            terms[(cC,) * (h - n) + (P(j + n),)] = coeff
    elif which == "PPk":
        j, k = params["j"], params["k"]
        if not 0 <= j <= t or k < 0:
            raise IndexOutOfRange(f"PPk needs 0 <= j <= {t}, k >= 0")
        if k >= 1:
            terms[(cM,) + (P(t - j),) * (k - 1)] = k * alg.I(j)
    elif which == "HC":
        h = params["h"]
        if h < 0:
            raise IndexOutOfRange("HC needs h >= 0")
        if h >= 1:
            # -h C^{h-1} D + h(h-1) C^{h-1}, with C^{h-1} D = D C^{h-1} + 2(h-1) C^{h-1}
            terms[(cD,) + (cC,) * (h - 1)] = -h
            terms[(cC,) * (h - 1)] = Fraction(-h * (h - 1))
    elif which == "HPk":
        n, k = params["n"], params["k"]
        if not 0 <= n <= t or k < 0:
            raise IndexOutOfRange(f"HPk needs 0 <= n <= {t}, k >= 0")
        if k >= 1 and n >= 1:
            terms[(P(n),) * (k - 1) + (P(n - 1),)] = -k * n
        if n == alg.ell.upper and k >= 2:
            key = (cM,) + (P(n),) * (k - 2)
            terms[key] = terms.get(key, 0) + Fraction(k * (k - 1), 2) * factorial(alg.ell.upper) ** 2
    else:
        raise ValueError(f"unknown identity {which!r}")
    return UEAElement(alg, terms)
