"""Monomial maps ``f_A(x) = (prod_j x_j^{a_1j}, ..., prod_j x_j^{a_kj})``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .intpoly import complex_roots
from .linalg import IntMatrix, abs_entries, charpoly, exterior_power, mat_pow, max_norm
from .oracle import RationalMapSpec
from .polys import MonoSumPoly

__all__ = [
    "MonomialMap",
    "projectivize",
    "degp_matrix",
    "eigen_moduli",
    "dynamical_degrees",
    "delta_via_limit",
    "norm_sequence",
    "log_concavity_check",
]


@dataclass(frozen=True)
class MonomialMap:
    A: IntMatrix

    def __post_init__(self):
        A = self.A if isinstance(self.A, IntMatrix) else IntMatrix(self.A)
        object.__setattr__(self, "A", A)
        if A.det() == 0:
            raise ValueError("exponent matrix is singular; f_A is not dominant")

    @property
    def k(self) -> int:
        return self.A.dim

    def power(self, n: int) -> "MonomialMap":
        """``f_A^n = f_{A^n}``."""
        return MonomialMap(mat_pow(self.A, n))


def _as_map(m) -> MonomialMap:
    return m if isinstance(m, MonomialMap) else MonomialMap(IntMatrix(m))


def projectivize(m: MonomialMap | Sequence[Sequence[int]]) -> RationalMapSpec:
    """Homogeneous representative on P^k with coordinates ``x_0 .. x_k``.

    Affine component ``i`` is ``prod_j (x_j / x_0)^{a_ij}``; split it into a
    numerator and denominator monomial, multiply the whole tuple (including
    the constant 0-th coordinate) by the least common denominator, and strip
    any common monomial.
    """
    m = _as_map(m)
    k = m.k
    # exponent vectors over (x_0, ..., x_k), possibly negative
    raw = [[0] * (k + 1)]
    for row in m.A.rows:
        e = [-sum(row)] + list(row)
        raw.append(e)
    lcd = [max(0, -min(e[v] for e in raw)) for v in range(k + 1)]
    comps = [[a + b for a, b in zip(e, lcd)] for e in raw]
    g = [min(e[v] for e in comps) for v in range(k + 1)]
    comps = [[a - b for a, b in zip(e, g)] for e in comps]
    polys = tuple(MonoSumPoly.monomial(e) for e in comps)
    A = m.A.tolist()
    return RationalMapSpec(polys, f"monomial {A}")


def degp_matrix(m: MonomialMap | Sequence[Sequence[int]], p: int) -> IntMatrix:
    """``|wedge^p A|`` in the lexicographic basis of ``p``-subsets."""
    m = _as_map(m)
    if not 1 <= p <= m.k:
        raise ValueError(f"p={p} out of range 1..{m.k}")
    return abs_entries(exterior_power(m.A, p))


def eigen_moduli(A: IntMatrix, dps: int = 30) -> list[mpmath.mpc]:
    """Eigenvalues of ``A`` with multiplicity, sorted by descending modulus
    and then by descending real part."""
    roots = []
    for r, mult in complex_roots(charpoly(A), dps=dps):
        roots.extend([r] * mult)
    return sorted(roots, key=lambda z: (-abs(z), -z.real))


def dynamical_degrees(m: MonomialMap | Sequence[Sequence[int]], tol: float = 1e-12) -> list[float]:
    """``[delta_1, ..., delta_k]`` with ``delta_p = |mu_1 ... mu_p|``.

    The top degree is ``|det A|`` exactly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = _as_map(m)
    dps = max(30, int(-math.log10(tol)) + 15)
    with mpmath.workdps(dps):
        mus = eigen_moduli(m.A, dps)
        out = []
        acc = mpmath.mpf(1)
        for mu in mus:
            acc *= abs(mu)
            out.append(float(acc))
    out[-1] = float(abs(m.A.det()))
    return out


def norm_sequence(m: MonomialMap | Sequence[Sequence[int]], p: int, N: int) -> list[int]:
    """``||wedge^p (A^n)||`` (max absolute entry) for ``n = 1..N``, exactly."""
    m = _as_map(m)
    if not 1 <= p <= m.k:
        raise ValueError(f"p={p} out of range 1..{m.k}")
    out = []
    P = IntMatrix.identity(m.k)
    for _ in range(N):
        P = P @ m.A
        out.append(max_norm(exterior_power(P, p)))
    return out


def delta_via_limit(m: MonomialMap | Sequence[Sequence[int]], p: int, N: int) -> float:
    """``||wedge^p (A^N)||^(1/N)``, the finite-N version of the defining limit."""
    if N < 4:
        raise ValueError("N must be at least 4")
    x = norm_sequence(m, p, N)[-1]
    # N-th root through logs; the integer can be far beyond float range
    root = math.exp(_int_log(x) / N)
    r = round(root)
    if r > 0 and r**N == x:
        return float(r)
    return root


def _int_log(x: int) -> float:
    if x <= 0:
        raise ValueError("log of a non-positive integer")
    b = x.bit_length()
    if b < 1000:
        return math.log(x)
    shift = b - 64
    return math.log(x >> shift) + shift * math.log(2)


def log_concavity_check(deltas: Sequence[float], rtol: float = 1e-9) -> tuple[bool, int | None]:
    """Check ``delta_p^2 >= delta_{p-1} delta_{p+1}`` for every interior ``p``.

    ``deltas`` starts with ``delta_0 = 1``.  Returns ``(ok, first_bad_p)``.
    """
    d = list(deltas)
    for p in range(1, len(d) - 1):
        lhs = d[p] * d[p]
        rhs = d[p - 1] * d[p + 1]
        if lhs < rhs * (1 - rtol):
            return False, p
    return True, None
