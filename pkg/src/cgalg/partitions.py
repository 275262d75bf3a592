"""Partition counts attached to the level grading.

``d(l, m)`` is the dimension of level ``m`` (partitions of ``m`` into parts
``{2} U {1, 3, ..., 2l}``), ``e(l, m)`` the total number of P letters over the
level basis, ``O(l, n)`` the number of partitions of ``n`` into odd parts
``<= 2l``.  Each has a generating-function route and an enumeration route.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import HalfInt
from .exact import TruncSeries
from .verma import enumerate_basis, mu_weight


class CountMismatch(AssertionError):
    pass


def _geometric(step: int, order: int) -> TruncSeries:
    """``1 / (1 - x^step)``."""
    return TruncSeries.from_terms({0: 1, step: -1}, order).reciprocal()


@lru_cache(maxsize=None)
def odd_parts_series(ell: HalfInt, order: int) -> TruncSeries:
    out = TruncSeries.one(order)
    for j in range(ell.lower + 1):
        out = out * _geometric(2 * j + 1, order)
    return out


@lru_cache(maxsize=None)
def dimension_series(ell: HalfInt, order: int = TruncSeries.DEFAULT_ORDER) -> TruncSeries:
    """``F(x) = 1/(1-x^2) prod_{j=0}^{l-1/2} 1/(1-x^{2j+1})``."""
    return _geometric(2, order) * odd_parts_series(ell, order)


@lru_cache(maxsize=None)
def weight_series(ell: HalfInt, order: int = TruncSeries.DEFAULT_ORDER) -> TruncSeries:
    """``E(x) = (sum_i x^{2i+1}/(1-x^{2i+1})) F(x)``."""
    s = TruncSeries((), order)
    for i in range(ell.lower + 1):
        s = s + TruncSeries.from_terms({2 * i + 1: 1}, order) * _geometric(2 * i + 1, order)
    return s * dimension_series(ell, order)


def _order_for(m: int) -> int:
    return max(TruncSeries.DEFAULT_ORDER, m)


def d_series(ell, m: int) -> int:
    ell = HalfInt.parse(ell)
    return int(dimension_series(ell, _order_for(m))[m])


def d_enum(ell, m: int) -> int:
    return len(enumerate_basis(HalfInt.parse(ell), m))


def d(ell, m: int) -> int:
    """Dimension of level ``m``; both routes are computed and must agree."""
    if m < 0:
        return 0
    a, b = d_series(ell, m), d_enum(ell, m)
    if a != b:
        raise CountMismatch(f"d({ell}, {m}): series {a} != enumeration {b}")
    return a


def d_closed_form(ell, m: int) -> int:
    """Floor-formula dimension for l in {1/2, 3/2, 5/2, 7/2}."""
    t = HalfInt.parse(ell).twice_value
    if t == 1:
        return (m + 2) // 2
    if t == 3:
        return (m * m + 6 * m + 12) // 12
    if t == 5:
        return (2 * m**3 + 33 * m**2 + 162 * m + 360) // 360
    if t == 7:
        return (m**4 + 36 * m**3 + 442 * m**2 + 2124 * m + 5040) // 5040
    raise ValueError(f"no closed form for ell={ell}")


@lru_cache(maxsize=None)
def _odd_partitions(n: int, largest: int) -> int:
    """Partitions of n into odd parts <= largest (largest odd)."""
    if n == 0:
        return 1
    if largest < 1:
        return 0
    total = 0
    for k in range(n // largest + 1):
        total += _odd_partitions(n - k * largest, largest - 2)
    return total


def O(ell, n: int) -> int:
    """Partitions of ``n`` into odd parts no greater than ``2l`` (``O_0 = 1``)."""
    if n < 0:
        return 0
    return _odd_partitions(n, HalfInt.parse(ell).twice_value)


def e_series(ell, m: int) -> int:
    ell = HalfInt.parse(ell)
    return int(weight_series(ell, _order_for(m))[m])


def e_enum(ell, m: int) -> int:
    return sum(mu_weight(lab) for lab in enumerate_basis(HalfInt.parse(ell), m))


def e(ell, m: int) -> int:
    """Total mu-weight of level ``m``; both routes are computed and must agree."""
    a, b = e_series(ell, m), e_enum(ell, m)
    if a != b:
        raise CountMismatch(f"e({ell}, {m}): series {a} != enumeration {b}")
    return a


def e_half_closed_form(m: int) -> int:
    """``e`` for l = 1/2: m(m+2)/4 for even m, (m+1)^2/4 for odd m."""
    return m * (m + 2) // 4 if m % 2 == 0 else (m + 1) ** 2 // 4


def odd_partition_identity(ell, m: int) -> bool:
    """``d_m = sum_{n=0}^{floor(m/2)} O_{m-2n}``, both sides computed independently."""
    return d_enum(ell, m) == sum(O(ell, m - 2 * n) for n in range(m // 2 + 1))


def delta_degree_identity(ell, m: int) -> bool:
    """``sum_{j=0}^{floor(m/2)-1} d_{m-2(j+1)} = sum_n n O_{m-2n}``."""
    lhs = sum(d(ell, m - 2 * (j + 1)) for j in range(m // 2))
    rhs = sum(n * O(ell, m - 2 * n) for n in range(m // 2 + 1))
    return lhs == rhs


def dims_table(ell, max_level: int) -> list:
    """Rows ``{"m", "d", "e", "O"}`` for ``m = 0 .. max_level``."""
    return [{"m": m, "d": d(ell, m), "e": e(ell, m), "O": O(ell, m)} for m in range(max_level + 1)]
