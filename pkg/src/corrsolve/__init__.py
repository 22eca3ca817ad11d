"""Exact analysis of algebraic correspondences on P^1 x P^1.

A polynomial p(x, y) defines the curve C = {p = 0} in P^1 x P^1, read as the
multivalued map z -> C(z).  The package decides or semi-decides whether the
correspondence is finite, explores orbits, computes the exceptional locus
Omega, and certifies finiteness by exhibiting f(x) = c * g(y) on C.
"""

from .algebraic import INF, AlgebraicNumber, CurvePoint, as_proj
from .config import DEFAULT_CAPS, Caps
from .correspondence import Correspondence, HypothesisWarning, absolute_factor_count, new_correspondence
from .finiteness import cyclotomic_ratio_test, decide_finiteness, period, separated_search
from .omega import omega
from .orbits import materialize_points, orbit_closure, orbit_over, orbit_size, orbit_size_bound
from .parser import PolySyntaxError, parse, print_canonical
from .theta import certify_finite, check_partials_nonvanishing, places_at_infinity, theta_of_orbit, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "INF", "AlgebraicNumber", "Caps", "Correspondence", "CurvePoint", "DEFAULT_CAPS", "HypothesisWarning",
    "PolySyntaxError", "absolute_factor_count", "as_proj", "certify_finite", "check_partials_nonvanishing",
    "cyclotomic_ratio_test", "decide_finiteness", "materialize_points", "new_correspondence", "omega",
    "orbit_closure", "orbit_over", "orbit_size", "parse", "period", "places_at_infinity", "print_canonical",
    "orbit_size_bound", "separated_search", "theta_of_orbit", "verify_certificate",
]
