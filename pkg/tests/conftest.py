import sympy as sp
from hypothesis import HealthCheck, settings

from cgalg.exact import MultiPoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SD, SM = sp.symbols("delta mu")
ELLS = ("1/2", "3/2", "5/2")


def to_sympy(p) -> sp.Expr:
    p = MultiPoly.coerce(p)
    return sp.expand(sum((sp.Rational(c.numerator, c.denominator) * SD**dd * SM**dm
                          for (dd, dm), c in p.items()), sp.Integer(0)))
