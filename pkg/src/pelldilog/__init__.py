"""Certified high-precision checks of Rogers-dilogarithm identities built from Pell units."""

from .contfrac import CFExpansion, Convergent, convergents, expand_rational, expand_surd, pell_unit_cf
from .chebyshev import cheb_eval, cheb_hyperbolic_check
from .dilog import DilogValue, closed_values, li2, rogers
from .errors import ConvergenceError, CrossCheckError, DomainError, ExhaustionError
from .geometry import INFINITY, IdealPolygon, OrthoTerm, annulus_terms, cross_ratio, polygon_orthospectrum, regular_ngon_terms
from .numerics import PrecisionContext, QuadraticSurd, parse_surd, pi, surd_value
from .pell import PellSolution, UnitPower, classify, fibonacci_pair, fundamental_solution, unit_power
from .verify import IdentityJob, VerificationReport, run_suite, tail_bound

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
