"""The centrally extended conformal Galilei algebra for odd half-integer spin.

Basis: ``C, D, H, M, P_0 .. P_{2l}`` with ``M`` central.  Non-zero brackets::

    [D, H] = 2H        [D, C] = -2C          [C, H] = D
    [H, P_n] = -n P_{n-1}
    [D, P_n] = 2(l - n) P_n
    [C, P_n] = (2l - n) P_{n+1}
    [P_m, P_n] = delta_{m+n, 2l} I_m M,   I_m = (-1)^(m+l+1/2) m! (2l-m)!
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True, order=True)
class HalfInt:
    """An odd positive half-integer, stored as twice its value."""

    twice_value: int

    def __post_init__(self):
        t = self.twice_value
        if not isinstance(t, int) or isinstance(t, bool) or t < 1 or t % 2 == 0:
            raise ValueError(f"ℓ must be an odd half-integer, got twice-value {t!r}")

    @classmethod
    def parse(cls, text) -> "HalfInt":
        if isinstance(text, HalfInt):
            return text
        if isinstance(text, Fraction):
            value = text
        else:
            s = str(text).strip()
            if not re.fullmatch(r"[0-9]+(/[0-9]+)?|[0-9]*\.[0-9]+", s):
                raise ValueError(f"ℓ must be an odd half-integer, got {text!r}")
            value = Fraction(s)
        twice = 2 * value
        if twice.denominator != 1 or twice.numerator % 2 == 0 or twice <= 0:
            raise ValueError(f"ℓ must be an odd half-integer, got {text!r}")
        return cls(twice.numerator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def lower(self) -> int:
        """l - 1/2: the index of the last raising P, and the length of k-vectors."""
        return (self.twice_value - 1) // 2

    @property
    def upper(self) -> int:
        """l + 1/2: the index of the first lowering P."""
        return (self.twice_value + 1) // 2

    def __str__(self):
        return f"{self.twice_value}/2"

    @property
    def slug(self) -> str:
        return f"{self.twice_value}_2"


@dataclass(frozen=True)
class Generator:
    kind: str
    index: int | None = None

    def __post_init__(self):
        if self.kind not in ("C", "D", "H", "M", "P"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if (self.kind == "P") != (self.index is not None):
            raise ValueError("an index is required for P and forbidden otherwise")
        if self.index is not None and self.index < 0:
            raise IndexOutOfRange(f"negative P index {self.index}")

    def __str__(self):
        return f"P{self.index}" if self.kind == "P" else self.kind

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "Generator":
        text = text.strip()
        if text in ("C", "D", "H", "M"):
            return cls(text)
        m = re.fullmatch(r"P_?(\d+)", text)
        if not m:
            raise ValueError(f"cannot parse generator {text!r}")
        return cls("P", int(m.group(1)))


class TriangularClass(enum.Enum):
    RAISING = "raising"
    CARTAN = "cartan"
    LOWERING = "lowering"


def structure_I(ell: HalfInt, m: int) -> Fraction:
    """``I_m = (-1)^(m + l + 1/2) m! (2l - m)!``."""
    t = ell.twice_value
    if not 0 <= m <= t:
        raise IndexOutOfRange(f"I_m needs 0 <= m <= {t}, got {m}")
    sign = -1 if (m + ell.upper) % 2 else 1
    return Fraction(sign * factorial(m) * factorial(t - m))


C = Generator("C")
D = Generator("D")
H = Generator("H")
M = Generator("M")


class CGA:
    """The algebra for a fixed spin ``ell``; generators are validated here."""

    def __init__(self, ell):
        self.ell = HalfInt.parse(ell)
        t = self.ell.twice_value
        self.gens = (M, D, C) + tuple(Generator("P", n) for n in range(t, -1, -1)) + (H,)
        self.position = {g: i for i, g in enumerate(self.gens)}

    def __repr__(self):
        return f"CGA(ell={self.ell})"

    def __eq__(self, other):
        return isinstance(other, CGA) and other.ell == self.ell

    def __hash__(self):
        return hash(("CGA", self.ell))

    def P(self, n: int) -> Generator:
        if not 0 <= n <= self.ell.twice_value:
            raise IndexOutOfRange(f"P_{n} does not exist for ell={self.ell}")
        return Generator("P", n)

    def gen(self, g) -> Generator:
        """Parse and validate a generator for this algebra."""
        if isinstance(g, str):
            g = Generator.parse(g)
        if g.kind == "P":
            return self.P(g.index)
        return g

    def I(self, m: int) -> Fraction:
        return structure_I(self.ell, m)

    def bracket(self, a: Generator, b: Generator) -> dict:
        """``[a, b]`` as a mapping generator -> coefficient (at most one term)."""
        a, b = self.gen(a), self.gen(b)
        out = self._bracket_oriented(a, b)
        if out is None:
            out = {g: -c for g, c in (self._bracket_oriented(b, a) or {}).items()}
        return {g: c for g, c in out.items() if c}

    def _bracket_oriented(self, a: Generator, b: Generator):
        t = self.ell.twice_value
        ka, kb = a.kind, b.kind
        if ka == "M" or kb == "M" or a == b:
            return {}
        if (ka, kb) == ("D", "H"):
            return {H: Fraction(2)}
        if (ka, kb) == ("D", "C"):
            return {C: Fraction(-2)}
        if (ka, kb) == ("C", "H"):
            return {D: Fraction(1)}
        if kb == "P":
            n = b.index
            if ka == "H":
                return {self.P(n - 1): Fraction(-n)} if n > 0 else {}
            if ka == "D":
                return {b: Fraction(t - 2 * n)}
            if ka == "C":
                return {self.P(n + 1): Fraction(t - n)} if n < t else {}
            if ka == "P":
                if a.index + n == t:
                    return {M: self.I(a.index)}
                return {}
        return None

    def omega(self, g: Generator) -> Generator:
        """The involutive anti-automorphism: P_j -> P_{2l-j}, C <-> H, D, M fixed."""
        g = self.gen(g)
        if g.kind == "P":
            return self.P(self.ell.twice_value - g.index)
        return {"C": H, "H": C}.get(g.kind, g)

    def triangular_class(self, g: Generator) -> TriangularClass:
        g = self.gen(g)
        if g.kind in ("D", "M"):
            return TriangularClass.CARTAN
        if g.kind == "H" or (g.kind == "P" and g.index <= self.ell.lower):
            return TriangularClass.RAISING
        return TriangularClass.LOWERING

    @cached_property
    def raising(self) -> tuple:
        """Raising generators: H, P_0 .. P_{l-1/2}."""
        return (H,) + tuple(self.P(n) for n in range(self.ell.lower + 1))

    @cached_property
    def lowering(self) -> tuple:
        """Lowering generators: C, P_{l+1/2} .. P_{2l}."""
        return (C,) + tuple(self.P(n) for n in range(self.ell.upper, self.ell.twice_value + 1))


def commutator(ell, a, b) -> dict:
    """Functional form of :meth:`CGA.bracket`."""
    return CGA(ell).bracket(a, b)


def omega(ell, g) -> Generator:
    return CGA(ell).omega(g)


def triangular_class(ell, g) -> TriangularClass:
    return CGA(ell).triangular_class(g)
