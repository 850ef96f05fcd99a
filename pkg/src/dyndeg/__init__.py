"""Dynamical degrees of rational self-maps of projective space.

Exact integer linear algebra for pullback matrices, sparse polynomial
arithmetic, a randomized line-restriction degree oracle, and the concrete
families: monomial maps, matrix inversion maps and the quadratic family
``f_{a,b}``.
"""

__version__ = "0.1.0"

from .fab import FabParams, chi_formula, fab_spec, fx_matrix, fy_matrix, lambda_n, vn_residual, vn_search
from .intpoly import IntPoly, integer_roots
from .irrationality import HypothesisError, IrrationalityVerdict, certify_irrational, henon_delta
from .linalg import IntMatrix, SpectralResult, abs_entries, charpoly, exterior_power, mat_pow, spectral_radius
from .matinv import build_I, build_J, build_K, delta_K, jx_pullback
from .monomial import MonomialMap, degp_matrix, delta_via_limit, dynamical_degrees, log_concavity_check, projectivize
from .oracle import ComposedMap, DegreeReport, RationalMapSpec, degree_sequence, delta_estimate, pullback_step
from .polys import MonoSumPoly, UniPolyF, mono_gcd_reduce, substitute, tuple_reduce_univariate, uni_gcd

__all__ = [
    "__version__",
    "IntMatrix", "IntPoly", "SpectralResult", "MonoSumPoly", "UniPolyF",
    "RationalMapSpec", "ComposedMap", "DegreeReport", "MonomialMap", "FabParams",
    "IrrationalityVerdict", "HypothesisError",
    "charpoly", "mat_pow", "exterior_power", "abs_entries", "spectral_radius", "integer_roots",
    "substitute", "mono_gcd_reduce", "uni_gcd", "tuple_reduce_univariate",
    "pullback_step", "degree_sequence", "delta_estimate",
    "projectivize", "degp_matrix", "dynamical_degrees", "delta_via_limit", "log_concavity_check",
    "build_J", "build_I", "build_K", "jx_pullback", "delta_K",
    "fx_matrix", "fy_matrix", "chi_formula", "lambda_n", "vn_residual", "vn_search", "fab_spec",
    "certify_irrational", "henon_delta",
]
