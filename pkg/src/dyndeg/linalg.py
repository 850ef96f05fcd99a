"""Exact integer linear algebra.

Square integer matrices, characteristic polynomials (integer
Faddeev-LeVerrier), exterior powers in lexicographic subset order, and
spectral radii with rational brackets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .intpoly import (
    IntPoly,
    exterior_square_charpoly,
    _parse_int,
    cauchy_bound,
    certify_real_root,
    complex_roots,
    integer_roots,
    is_cyclotomic_product,
)

__all__ = [
    "IntMatrix",
    "SpectralResult",
    "SpectralConvergenceError",
    "charpoly",
    "mat_pow",
    "exterior_power",
    "abs_entries",
    "spectral_radius",
    "integer_roots",
    "companion",
    "max_norm",
]


class IntMatrix:
    """Dense square matrix of Python ints.  Immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        if isinstance(rows, IntMatrix):
            rows = rows.rows
        rs = []
        for row in rows:
            r = []
            for x in row:
                if isinstance(x, bool):
                    raise TypeError("boolean entries are not integers")
                if isinstance(x, (np.integer,)):
                    x = int(x)
                if not isinstance(x, int):
                    raise TypeError(f"IntMatrix entries must be integers, got {x!r}")
                r.append(x)
            rs.append(tuple(r))
        n = len(rs)
        if n == 0:
            raise ValueError("empty matrix")
        if any(len(r) != n for r in rs):
            raise ValueError(f"matrix is not square: row lengths {[len(r) for r in rs]}")
        object.__setattr__(self, "rows", tuple(rs))

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(("IntMatrix", self.rows))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_numpy(self, dtype=object) -> np.ndarray:
        return np.array(self.tolist(), dtype=dtype)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.rows])

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def det(self) -> int:
        return _bareiss_det([list(r) for r in self.rows])

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(r, v)) for r in self.rows]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        return cls([[_parse_int(x) for x in row] for row in data])


def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def max_norm(m: IntMatrix) -> int:
    """Largest absolute entry (the norm used for limit estimates)."""
    return max(abs(x) for r in m.rows for x in r)


def companion(p: IntPoly) -> IntMatrix:
    """Companion matrix of a monic polynomial (charpoly of the result is ``p``)."""
    if not p.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return IntMatrix(rows)


def charpoly(m: IntMatrix) -> IntPoly:
    """Monic ``det(tI - m)``.

    Integer Faddeev-LeVerrier: with ``M_0 = 0``, ``M_k = m M_{k-1} + c_{n-k+1} I``
    and ``c_{n-k} = -tr(m M_k) / k``.  The coefficients are integers, so each
    division by ``k`` is exact and no fractions ever appear.
    """
    n = m.dim
    A = m.to_numpy()
    c = [0] * (n + 1)
    c[n] = 1
    Mk = np.zeros((n, n), dtype=object)
    eye = np.identity(n, dtype=int).astype(object)
    for k in range(1, n + 1):
        Mk = A.dot(Mk) + c[n - k + 1] * eye
        tr = int(A.dot(Mk).trace())
        if tr % k:
            raise ArithmeticError("non-integer Faddeev-LeVerrier coefficient")
        c[n - k] = -tr // k
    return IntPoly(c)


def mat_pow(m: IntMatrix, n: int) -> IntMatrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = IntMatrix.identity(m.dim)
    base = m
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def exterior_power(m: IntMatrix, p: int) -> IntMatrix:
    """Matrix of ``p x p`` minors; rows and columns indexed by sorted
    ``p``-subsets of ``range(dim)`` in lexicographic order."""
    n = m.dim
    if not 1 <= p <= n:
        raise ValueError(f"exterior power p={p} out of range 1..{n}")
    subsets = list(itertools.combinations(range(n), p))
    rows = m.rows
    out = []
    for I in subsets:
        sub_rows = [rows[i] for i in I]
        out.append([_bareiss_det([[r[j] for j in J] for r in sub_rows]) for J in subsets])
    return IntMatrix(out)


def abs_entries(m: IntMatrix) -> IntMatrix:
    return IntMatrix([[abs(x) for x in r] for r in m.rows])


# -- spectral radius ------------------------------------------------------------

class SpectralConvergenceError(RuntimeError):
    """The radius could not be pinned down within the requested tolerance."""

    def __init__(self, message: str, bracket: tuple[Fraction, Fraction] | None = None):
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    lo: Fraction
    hi: Fraction
    is_one: bool = False
    method: str = ""
    dominant: str = ""  # "real", "complex", "perron", "unit", "zero"

    @property
    def bracket(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "bracket": [str(self.lo), str(self.hi)],
            "is_one": self.is_one,
            "method": self.method,
            "dominant": self.dominant,
        }


def _collatz_wielandt(m: IntMatrix, tol: Fraction, max_squarings: int):
    """Perron bracket ``min (M x)_i / x_i <= rho <= max (M x)_i / x_i`` with
    ``x = M^(2^j) 1``.  Both bounds hold for any nonnegative matrix and any
    positive ``x``; None if ``x`` never becomes positive or the bracket stays
    wider than ``tol``."""
    ones = [1] * m.dim
    P = m
    best = None
    for _ in range(max_squarings):
        x = P.apply(ones)
        if all(v > 0 for v in x):
            y = m.apply(x)
            ratios = [Fraction(a, b) for a, b in zip(y, x)]
            lo, hi = min(ratios), max(ratios)
            best = (lo, hi)
            if hi - lo <= tol:
                return best
        P = P @ P
    return None


def _dominant_roots(roots, rel=1e-9):
    rho = max(abs(r) for r, _ in roots)
    dom = [(r, k) for r, k in roots if abs(r) >= rho * (1 - rel)]
    return rho, dom


def spectral_radius(m: IntMatrix, tol: float = 1e-12, max_squarings: int = 12) -> SpectralResult:
    """Spectral radius with a rational bracket ``lo <= rho <= hi``, ``hi - lo <= tol``.

    Order of attempts:

    * characteristic polynomial a product of ``t^a`` and cyclotomic factors:
      the radius is exactly 1 (or 0 for nilpotent ``m``);
    * nonnegative ``m``: Collatz-Wielandt bounds on ``m^(2^j) 1``;
    * otherwise roots of the exact characteristic polynomial, located with
      mpmath inside the Cauchy disk.  A real dominant root is then refined by
      exact sign bisection; a complex dominant pair gets a bracket from the
      solver's error estimate at raised precision.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    ftol = Fraction(tol)
    cp = charpoly(m)
    if all(c == 0 for c in cp.coeffs[:-1]):
        return SpectralResult(0.0, Fraction(0), Fraction(0), False, "nilpotent", "zero")
    if is_cyclotomic_product(cp):
        return SpectralResult(1.0, Fraction(1), Fraction(1), True, "cyclotomic", "unit")

    if m.is_nonnegative():
        cw = _collatz_wielandt(m, ftol, max_squarings)
        if cw is not None:
            lo, hi = cw
            return SpectralResult(float((lo + hi) / 2), lo, hi, lo == hi == 1, "collatz-wielandt", "perron")

    return _radius_from_charpoly(cp, tol)


def _radius_from_charpoly(cp: IntPoly, tol: float) -> SpectralResult:
    ftol = Fraction(tol)
    digits = max(30, int(-math.log10(tol)) + 15)
    roots = complex_roots(cp, dps=digits)
    rho, dom = _dominant_roots(roots)
    scale = max(float(rho), 1.0)
    real_dom = [r for r, _ in dom if abs(r.imag) <= 1e-20 * scale or abs(r.imag) < 10 ** (-digits // 2)]
    bound = cauchy_bound(cp)
    if real_dom:
        r = max(real_dom, key=lambda z: abs(z.real))
        x = float(r.real)
        br = certify_real_root(cp, x, ftol) if x >= 0 else None
        if x < 0:
            br = certify_real_root(cp.mirror(), -x, ftol)
        if br is None:
            raise SpectralConvergenceError(f"no sign change near dominant real root {x}", None)
        lo, hi = br
        if hi > bound:
            raise SpectralConvergenceError("bracket escapes the Cauchy disk", br)
        return SpectralResult(float((lo + hi) / 2), lo, hi, lo == hi == 1, "sign-bisection", "real")

    # |mu|^2 = mu * conj(mu) is a real root of the exterior-square charpoly,
    # which is exact over Z, so the bracket can be certified by sign changes
    sq = _certified_square_bracket(cp, float(rho) ** 2, ftol)
    if sq is not None:
        lo, hi = sq
        return SpectralResult(float(rho), lo, hi, False, "exterior-square-bisection", "complex")

    for dps in (digits, 2 * digits, 4 * digits):
        with mpmath.workdps(dps):
            roots = complex_roots(cp, dps=dps)
            rho, _ = _dominant_roots(roots)
            # error of a simple root after polishing is far below 10^(-dps/2)
            err = mpmath.mpf(10) ** (-(dps // 2))
            lo = Fraction(str(mpmath.nstr(rho - err, dps, strip_zeros=False)))
            hi = Fraction(str(mpmath.nstr(rho + err, dps, strip_zeros=False)))
            if hi - lo <= ftol:
                return SpectralResult(float(rho), max(lo, Fraction(0)), hi, False, "mpmath-polyroots", "complex")
    raise SpectralConvergenceError("complex dominant root not resolved within tolerance", (lo, hi))


def _isqrt_frac(x: Fraction, denom: int, up: bool) -> Fraction:
    """``sqrt(x)`` rounded down (or up) to a multiple of ``1/denom``."""
    num = x.numerator * denom * denom
    q, r = divmod(num, x.denominator)
    s = math.isqrt(q)
    if up and (s * s != q or r):
        s += 1
    return Fraction(s, denom)


def _certified_square_bracket(cp: IntPoly, approx_sq: float, tol: Fraction):
    if cp.degree < 2 or cp.degree > 40:
        return None
    e2 = exterior_square_charpoly(cp)
    br = certify_real_root(e2, approx_sq, tol * tol / 16)
    if br is None:
        return None
    lo2, hi2 = br
    denom = 2 ** max(8, int(-math.log2(float(tol))) + 4)
    lo = _isqrt_frac(lo2, denom, up=False)
    hi = _isqrt_frac(hi2, denom, up=True)
    if hi - lo > tol:
        return None
    return lo, hi
