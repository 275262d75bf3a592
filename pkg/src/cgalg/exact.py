"""Exact scalars: rationals, polynomials in (delta, mu), truncated series, and
linear algebra over Q and over Q[delta, mu].

Rationals are :class:`fractions.Fraction`; everything else here is built on it.
All objects are immutable once constructed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "MultiPoly"]

__all__ = [
    "Rational",
    "MultiPoly",
    "TruncSeries",
    "NotDivisible",
    "DivisionByZeroPoly",
    "NonInvertibleSeries",
    "DELTA",
    "MU",
    "rat_str",
    "parse_rational",
    "poly_arith",
    "poly_exact_div",
    "poly_matrix_det",
    "series_arith",
    "rref",
    "nullspace",
    "rank",
]


class NotDivisible(ArithmeticError):
    """Raised by :func:`poly_exact_div` when the divisor does not divide."""

    def __init__(self, remainder: "MultiPoly", quotient: "MultiPoly"):
        super().__init__(f"not divisible; remainder {remainder}")
        self.remainder = remainder
        self.quotient = quotient


class DivisionByZeroPoly(ZeroDivisionError):
    pass


class NonInvertibleSeries(ArithmeticError):
    pass


def rat_str(x) -> str:
    """Serialize a rational as ``"num/den"`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip().replace("−", "-"))


Exponent = tuple  # (deg_delta, deg_mu)


class MultiPoly:
    """Sparse polynomial in the two indeterminates delta and mu over Q.

    >>> d, m = MultiPoly.delta(), MultiPoly.mu()
    >>> (d + m) * (d - m)
    δ^2-μ^2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        if terms:
            for (dd, dm), c in terms.items():
                if dd < 0 or dm < 0:
                    raise ValueError(f"negative exponent {(dd, dm)}")
                c = Fraction(c)
                if c:
                    clean[(int(dd), int(dm))] = c
        self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(0, 0): c})

    @classmethod
    def delta(cls) -> "MultiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def mu(cls) -> "MultiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, dd: int, dm: int, c=1) -> "MultiPoly":
        return cls({(dd, dm): c})

    @staticmethod
    def coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        return NotImplemented

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0), Fraction(0))

    def coeff(self, dd: int, dm: int) -> Fraction:
        return self._terms.get((dd, dm), Fraction(0))

    def degree_delta(self) -> int:
        return max((e[0] for e in self._terms), default=-1)

    def degree_mu(self) -> int:
        return max((e[1] for e in self._terms), default=-1)

    def mu_exponents(self) -> set:
        return {e[1] for e in self._terms}

    def sorted_terms(self):
        """Terms in graded lexicographic order, delta > mu, largest first."""
        return sorted(self._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def leading(self):
        return self.sorted_terms()[0]

    # arithmetic
    def __eq__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly({e: c * other for e, c in self._terms.items()})
        other = MultiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZeroPoly("division by zero constant")
            return MultiPoly({e: c / other for e, c in self._terms.items()})
        return poly_exact_div(self, other)

    def subs(self, delta=None, mu=None) -> "MultiPoly":
        """Specialize delta and/or mu to rationals."""
        out: dict = {}
        for (dd, dm), c in self._terms.items():
            if delta is not None:
                c = c * Fraction(delta) ** dd
                dd = 0
            if mu is not None:
                c = c * Fraction(mu) ** dm
                dm = 0
            out[(dd, dm)] = out.get((dd, dm), 0) + c
        return MultiPoly(out)

    def evaluate(self, delta, mu) -> Fraction:
        return self.subs(delta, mu).constant_value()

    # text / json
    def __repr__(self):
        return self.__str__()

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (dd, dm), c in self.sorted_terms():
            mono = ""
            if dd:
                mono += "δ" + (f"^{dd}" if dd > 1 else "")
            if dm:
                mono += "μ" + (f"^{dm}" if dm > 1 else "")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = str(mag) + mono
            parts.append(("-" if c < 0 else "+", body))
        text = "".join(s + b for s, b in parts)
        return text[1:] if text.startswith("+") else text

    def to_json(self) -> list:
        return [{"dd": dd, "dm": dm, "c": rat_str(c)} for (dd, dm), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "MultiPoly":
        out: dict = {}
        for t in data:
            key = (int(t["dd"]), int(t["dm"]))
            if key in out:
                raise ValueError(f"duplicate exponent {key}")
            out[key] = parse_rational(t["c"])
        return cls(out)


DELTA = MultiPoly.delta()
MU = MultiPoly.mu()


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_exact_div(a, b) -> MultiPoly:
    """Return ``q`` with ``a == q * b``; raise :class:`NotDivisible` otherwise."""
    a = MultiPoly.coerce(a)
    b = MultiPoly.coerce(b)
    if not b:
        raise DivisionByZeroPoly("division by the zero polynomial")
    (bd, bm), bc = b.leading()
    quotient: dict = {}
    remainder: dict = {}
    p = a
    while p:
        (pd, pm), pc = p.leading()
        if pd >= bd and pm >= bm:
            t = MultiPoly.monomial(pd - bd, pm - bm, pc / bc)
            quotient[(pd - bd, pm - bm)] = pc / bc
            p = p - t * b
        else:
            remainder[(pd, pm)] = pc
            p = p - MultiPoly.monomial(pd, pm, pc)
    if remainder:
        raise NotDivisible(MultiPoly(remainder), MultiPoly(quotient))
    return MultiPoly(quotient)


def poly_matrix_det(matrix: Sequence[Sequence[Scalar]]) -> MultiPoly:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    n = len(matrix)
    if n == 0:
        return MultiPoly.const(1)
    a = [[MultiPoly.coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return MultiPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                # Sylvester's identity guarantees exactness; NotDivisible here is a bug.
                a[i][j] = poly_exact_div(num, prev)
            a[i][k] = MultiPoly()
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


class TruncSeries:
    """Power series in x truncated after ``x**order``."""

    __slots__ = ("coefficients", "order")

    DEFAULT_ORDER = 64

    def __init__(self, coefficients: Iterable = (), order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = [Fraction(c) for c in coefficients][: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], order: int = DEFAULT_ORDER) -> "TruncSeries":
        coeffs = [0] * (order + 1)
        for power, c in terms.items():
            if 0 <= power <= order:
                coeffs[power] += Fraction(c)
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncSeries":
        return cls([1], order)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def __repr__(self):
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coefficients) if c]
        return f"TruncSeries({' + '.join(terms) or '0'}; O(x^{self.order + 1}))"

    def _check(self, other: "TruncSeries"):
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coefficients, other.coefficients)], self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coefficients, other.coefficients)], self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        n = self.order + 1
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncSeries(out, self.order)

    def reciprocal(self) -> "TruncSeries":
        a = self.coefficients
        if not a[0]:
            raise NonInvertibleSeries("constant term is zero")
        inv = [Fraction(0)] * (self.order + 1)
        inv[0] = 1 / a[0]
        for k in range(1, self.order + 1):
            s = sum((a[i] * inv[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            inv[k] = -s * inv[0]
        return TruncSeries(inv, self.order)


def series_arith(a: TruncSeries, b: TruncSeries | None, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "reciprocal":
        return a.reciprocal()
    raise ValueError(f"unknown op {op!r}")


# -- linear algebra over Q ---------------------------------------------------

def rref(rows: Sequence[Sequence], column_order: Sequence[int] | None = None):
    """Reduced row echelon form over Q.

    ``column_order`` is the order in which columns are tried as pivots (default
    left to right). Returns ``(nonzero_rows, pivot_columns)``.
    """
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = []
    r = 0
    for c in order:
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : A x = 0} over Q, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis
