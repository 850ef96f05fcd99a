"""Irrationality certificates for spectral radii of unimodular integer matrices.

For an automorphism the pullback is an invertible integer matrix, so its
characteristic polynomial is monic with constant term +-1.  A rational root
of such a polynomial is an integer dividing +-1.  When the dominant
eigenvalues are a complex pair ``mu, conj(mu)``, ``rho^2 = mu conj(mu)`` is
an eigenvalue of the second exterior power and the same integrality argument
applies to its characteristic polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .intpoly import IntPoly, exterior_square_charpoly, integer_roots
from .linalg import IntMatrix, SpectralConvergenceError, SpectralResult, charpoly, spectral_radius

__all__ = [
    "HypothesisError",
    "IrrationalityVerdict",
    "certify_irrational",
    "decide",
    "henon_delta",
    "RADIUS_ONE",
    "REAL_IRRATIONAL",
    "COMPLEX_IRRATIONAL",
    "INCONCLUSIVE",
]

RADIUS_ONE = "radius_one"
REAL_IRRATIONAL = "real_dominant_irrational"
COMPLEX_IRRATIONAL = "complex_pair_irrational"
INCONCLUSIVE = "inconclusive"

RETRY_TOL = 1e-20


class HypothesisError(ValueError):
    """The matrix is not unimodular, so it cannot be an automorphism pullback."""


@dataclass(frozen=True)
class IrrationalityVerdict:
    radius: float
    case: str
    lo: Fraction
    hi: Fraction
    certificate: tuple[str, ...] = field(default_factory=tuple)

    @property
    def irrational(self) -> bool:
        return self.case in (REAL_IRRATIONAL, COMPLEX_IRRATIONAL)

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "case": self.case,
            "bracket": [str(self.lo), str(self.hi)],
            "certificate": list(self.certificate),
        }


def _contains_integer(lo: Fraction, hi: Fraction) -> bool:
    return math.floor(hi) >= math.ceil(lo)


def decide(cp: IntPoly, sr: SpectralResult) -> IrrationalityVerdict:
    """Turn a spectral bracket into a verdict using only exact checks.

    Every irrational verdict requires: constant term +-1, integer roots of
    ``cp`` inside {-1, 1}, a bracket lying strictly above 1 and free of
    integers, and in the complex case no integer root of the exterior-square
    polynomial inside the bracket of ``rho^2``.
    """
    trail: list[str] = []
    lo, hi = sr.lo, sr.hi
    if sr.is_one:
        return IrrationalityVerdict(1.0, RADIUS_ONE, lo, hi, (f"charpoly {cp} is a product of cyclotomic factors and powers of t",))

    def inconclusive(reason: str) -> IrrationalityVerdict:
        return IrrationalityVerdict(sr.radius, INCONCLUSIVE, lo, hi, tuple(trail + [reason]))

    if abs(cp[0]) != 1:
        return inconclusive(f"constant term {cp[0]} is not +-1")
    trail.append(f"charpoly monic with constant term {cp[0]}")
    roots = integer_roots(cp)
    if not set(roots) <= {1, -1}:
        return inconclusive(f"integer roots {roots} outside {{-1, 1}}")
    trail.append(f"integer roots of charpoly: {sorted(set(roots))}")
    if lo <= 1:
        return inconclusive(f"radius bracket [{lo}, {hi}] does not lie above 1")
    if _contains_integer(lo, hi):
        return inconclusive(f"radius bracket [{lo}, {hi}] contains an integer")
    trail.append(f"radius bracket [{float(lo):.15g}, {float(hi):.15g}] contains no integer")

    if sr.dominant in ("real", "perron"):
        trail.append("dominant eigenvalue is real; a rational value would be an integer root")
        return IrrationalityVerdict(sr.radius, REAL_IRRATIONAL, lo, hi, tuple(trail))

    if sr.dominant != "complex":
        return inconclusive(f"unknown dominant type {sr.dominant!r}")
    e2 = exterior_square_charpoly(cp)
    sq_lo, sq_hi = lo * lo, hi * hi
    e2_roots = sorted(set(integer_roots(e2)))
    inside = [r for r in e2_roots if sq_lo <= r <= sq_hi]
    if inside:
        return inconclusive(f"integer eigenvalues {inside} of the exterior square lie in the rho^2 bracket")
    trail.append(f"integer eigenvalues of the exterior square {e2_roots} avoid [{float(sq_lo):.15g}, {float(sq_hi):.15g}]")
    trail.append("rho^2 = mu * conj(mu) would be an integer eigenvalue of the exterior square if rho were rational")
    return IrrationalityVerdict(sr.radius, COMPLEX_IRRATIONAL, lo, hi, tuple(trail))


def certify_irrational(m: IntMatrix, tol: float = 1e-12) -> IrrationalityVerdict:
    """Certify that the spectral radius of a unimodular ``m`` is 1 or irrational.

    Raises HypothesisError when ``|det m| != 1``.  An inconclusive first pass
    is retried once with a bracket width of 1e-20.
    """
    m = m if isinstance(m, IntMatrix) else IntMatrix(m)
    d = m.det()
    if abs(d) != 1:
        raise HypothesisError(f"|det| = {abs(d)}, expected 1 for an automorphism pullback")
    cp = charpoly(m)
    verdict = None
    for t in (tol, min(tol, RETRY_TOL)):
        try:
            sr = spectral_radius(m, tol=t)
        except SpectralConvergenceError as exc:
            lo, hi = exc.bracket or (Fraction(0), Fraction(0))
            verdict = IrrationalityVerdict(float((lo + hi) / 2), INCONCLUSIVE, lo, hi, (str(exc),))
            continue
        verdict = decide(cp, sr)
        if verdict.case != INCONCLUSIVE:
            return verdict
    return verdict


def henon_delta(degrees: Sequence[int]) -> int:
    """Dynamical degree of a composition of generalized Henon maps: the
    product of the factor degrees."""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("need at least one Henon factor")
    for d in degrees:
        if int(d) != d or d < 2:
            raise ValueError(f"Henon factor degree must be an integer >= 2, got {d}")
    return math.prod(int(d) for d in degrees)
