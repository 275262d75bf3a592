"""Exact computations for centrally extended conformal Galilei algebras at odd half-integer l.

Verma modules, singular vectors, Kac matrices and their determinants, all over Q
with delta and mu kept symbolic where it matters.
"""

from .algebra import CGA, Generator, HalfInt, commutator, omega, triangular_class
from .exact import DELTA, MU, MultiPoly, Rational
from .partitions import O, d, e
from .shapovalov import factor_check, kac_determinant, kac_matrix, shapovalov_form
from .singular import build_singular, classify, null_space, quotient_null_space, verify_singular
from .verma import BasisLabel, HighestWeight, VermaVector, act, enumerate_basis, mu_weight

__version__ = "0.1.0"

__all__ = [
    "CGA", "Generator", "HalfInt", "commutator", "omega", "triangular_class",
    "DELTA", "MU", "MultiPoly", "Rational",
    "O", "d", "e",
    "factor_check", "kac_determinant", "kac_matrix", "shapovalov_form",
    "build_singular", "classify", "null_space", "quotient_null_space", "verify_singular",
    "BasisLabel", "HighestWeight", "VermaVector", "act", "enumerate_basis", "mu_weight",
]
