"""Exact rational arithmetic, polynomials, and certified sign decisions."""

from .bivariate import BivariatePoly, box_range
from .intervals import Box2, RationalInterval
from .numbers import Rational, format_rational, to_rational
from .poly import UniPoly, poly_gcd, squarefree_decomposition, squarefree_part
from .roots import (
    NonpositiveWitness,
    Sign,
    SturmCounter,
    abs_max_bound,
    cauchy_bound,
    cauchy_index,
    count_real_roots,
    find_common_nonpositive,
    isolate_real_roots,
    isolate_with_multiplicity,
    nonnegative_on,
    refine_root,
    sign_on_interval,
    sturm_chain,
)

__all__ = [
    "BivariatePoly",
    "Box2",
    "NonpositiveWitness",
    "Rational",
    "RationalInterval",
    "Sign",
    "SturmCounter",
    "UniPoly",
    "abs_max_bound",
    "box_range",
    "cauchy_bound",
    "cauchy_index",
    "count_real_roots",
    "find_common_nonpositive",
    "format_rational",
    "isolate_real_roots",
    "isolate_with_multiplicity",
    "nonnegative_on",
    "poly_gcd",
    "refine_root",
    "sign_on_interval",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_chain",
    "to_rational",
]
