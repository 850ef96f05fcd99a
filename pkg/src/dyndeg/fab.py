"""The birational family ``f_{a,b}(x, y) = (y, (y + a) / (x + b))``.

Picard pullback matrices for the blowups X (two points at infinity) and Y
(additionally the orbit ``q_0, ..., q_n`` of ``q = (-a, 0)``), their
characteristic polynomials, and numerical/modular search for parameters in
``V_n = {(a, b) : f^n(-a, 0) = (-b, -a)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .intpoly import IntPoly, largest_real_root
from .linalg import IntMatrix
from .oracle import RationalMapSpec
from .polys import MonoSumPoly

__all__ = [
    "FabParams",
    "PoleError",
    "LambdaResult",
    "fx_matrix",
    "fy_basis",
    "fy_matrix",
    "FY_DISPLAYED",
    "chi_formula",
    "lambda_n",
    "orbit",
    "vn_residual",
    "vn_search",
    "vn_points_mod_p",
    "fab_spec",
    "henon_spec",
]


@dataclass(frozen=True)
class FabParams:
    a: complex | Fraction
    b: complex | Fraction
    exact: bool = False

    @property
    def is_real(self) -> bool:
        if self.exact:
            return True
        return abs(complex(self.a).imag) < 1e-9 and abs(complex(self.b).imag) < 1e-9

    def to_json(self) -> dict:
        if self.exact:
            return {"a": str(self.a), "b": str(self.b), "exact": True}
        a, b = complex(self.a), complex(self.b)
        return {"a": [a.real, a.imag], "b": [b.real, b.imag], "real": self.is_real}


class PoleError(ArithmeticError):
    """The orbit reached ``x + b = 0`` before the requested number of steps."""

    def __init__(self, step: int):
        super().__init__(f"orbit hits the pole x + b = 0 at step {step}")
        self.step = step


# -- Picard matrices -----------------------------------------------------------------

def fx_matrix() -> IntMatrix:
    """``f_X^*`` in the basis ``(H_X, E_1, E_2)``; columns are images."""
    return IntMatrix([[2, 1, 1], [-1, -1, 0], [-1, -1, -1]])


def fy_basis(n: int) -> list[str]:
    """Labels of the ordered basis of Pic(Y): ``H, E_1, E_2, Q_n, ..., Q_0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ["H", "E1", "E2"] + [f"Q{j}" for j in range(n, -1, -1)]


def fy_matrix(n: int) -> IntMatrix:
    """``f_Y^*`` on Pic(Y) for ``(a, b)`` in ``V_n``, dimension ``n + 4``.

    Column j holds the pullback of basis class j, with ``P = Q_n``:

    * ``H   -> 2H - E_1 - E_2 - P``   (a generic line pulls back to a conic
      through the three indeterminate points ``e_1, e_2, p``)
    * ``E_1 -> [L_inf] = H - E_1 - E_2``
    * ``E_2 -> [x + b = 0] = H - E_2 - P``
    * ``Q_j -> Q_{j-1}`` for ``j >= 1``
    * ``Q_0 -> [y + a = 0] = H - E_1 - P``
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    dim = n + 4
    P = 3
    q0 = dim - 1
    M = [[0] * dim for _ in range(dim)]
    M[0][0], M[1][0], M[2][0] = 2, -1, -1
    M[P][0] -= 1
    M[0][1], M[1][1], M[2][1] = 1, -1, -1
    M[0][2], M[2][2] = 1, -1
    M[P][2] -= 1
    for j in range(3, q0):
        M[j + 1][j] = 1
    M[0][q0], M[1][q0] = 1, -1
    M[P][q0] -= 1
    return IntMatrix(M)


# The 7 x 7 matrix as printed for Pic(Y) (blank entries read as 0).  It does
# not agree with fy_matrix(3): its determinant is 0 and its characteristic
# polynomial is t^7 - t^5 + t^3 - t, not chi_3.
FY_DISPLAYED = IntMatrix([
    [2, 1, 1, 0, 0, 0, 1],
    [-1, -1, 0, 0, 0, 0, -1],
    [-1, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
])


def chi_formula(n: int) -> IntPoly:
    """``t^(n+1) (t^3 - t - 1) + t^3 + t^2 - 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return IntPoly.monomial(n + 1) * IntPoly([-1, -1, 0, 1]) + IntPoly([-1, 0, 1, 1])


@dataclass(frozen=True)
class LambdaResult:
    value: float
    lo: Fraction
    hi: Fraction
    is_one: bool

    def to_json(self) -> dict:
        return {"lambda": self.value, "bracket": [str(self.lo), str(self.hi)], "is_one": self.is_one}


def lambda_n(n: int, tol: float = 1e-12) -> LambdaResult:
    """Largest real root of ``chi_n``.

    ``chi_n(1) = 0`` for every n; when Sturm counting finds no root in
    ``(1, inf)`` the result is exactly 1 and flagged.  Otherwise the bracket
    comes from exact bisection and always lies above 1.
    """
    chi = chi_formula(n)
    br = largest_real_root(chi, tol=Fraction(tol), above=1)
    if br is None:
        return LambdaResult(1.0, Fraction(1), Fraction(1), True)
    lo, hi = br
    return LambdaResult(float((lo + hi) / 2), lo, hi, False)


# -- orbits and V_n ----------------------------------------------------------------

def orbit(a, b, n: int, start=None, exact: bool = False) -> list[tuple]:
    """``[q_0, ..., q_n]`` with ``q_0 = (-a, 0)`` (or ``start``)."""
    if exact:
        a, b = Fraction(a), Fraction(b)
        zero = Fraction(0)
    else:
        a, b = complex(a), complex(b)
        zero = 0j
    x, y = start if start is not None else (-a, zero)
    pts = [(x, y)]
    for step in range(1, n + 1):
        den = x + b
        if den == 0:
            raise PoleError(step)
        x, y = y, (y + a) / den
        pts.append((x, y))
    return pts


def vn_residual(params: FabParams, n: int) -> float:
    """Distance from ``f^n(-a, 0)`` to ``(-b, -a)``; raises PoleError if the
    orbit is undefined."""
    a, b = params.a, params.b
    x, y = orbit(a, b, n, exact=params.exact)[-1]
    return float(abs(complex(x + b)) ** 2 + abs(complex(y + a)) ** 2) ** 0.5


def _F(z: np.ndarray, n: int) -> np.ndarray:
    a, b = z
    x, y = orbit(a, b, n)[-1]
    return np.array([x + b, y + a], dtype=complex)


def vn_search(n: int, seed: int = 0, restarts: int = 64, max_iter: int = 80,
              scale: float = 2.0, tol: float = 1e-9) -> list[FabParams]:
    """Damped Newton on ``F(a, b) = f^n(-a, 0) - (-b, -a)`` over C^2.

    The Jacobian is a complex finite difference.  Each restart uses its own
    generator seeded by ``(seed, restart)``.  Candidates with residual below
    ``tol`` are kept and deduplicated to within 1e-6; imaginary parts below
    1e-9 are dropped.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    found: list[np.ndarray] = []
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        z = scale * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        try:
            Fz = _F(z, n)
            for _ in range(max_iter):
                norm = np.linalg.norm(Fz)
                if norm < tol * 1e-3:
                    break
                Jm = np.empty((2, 2), dtype=complex)
                for k in range(2):
                    h = 1e-7 * max(1.0, abs(z[k]))
                    dz = np.zeros(2, dtype=complex)
                    dz[k] = h
                    Jm[:, k] = (_F(z + dz, n) - Fz) / h
                step = np.linalg.solve(Jm, -Fz)
                lam = 1.0
                while lam > 1e-6:
                    try:
                        trial = z + lam * step
                        Ft = _F(trial, n)
                        if np.linalg.norm(Ft) < norm:
                            break
                    except PoleError:
                        pass
                    lam /= 2
                else:
                    break
                z, Fz = trial, Ft
        except (PoleError, np.linalg.LinAlgError, ZeroDivisionError, OverflowError):
            continue
        if not np.all(np.isfinite(z)):
            continue
        try:
            res = vn_residual(FabParams(complex(z[0]), complex(z[1])), n)
        except PoleError:
            continue
        if res < tol and not any(np.max(np.abs(z - w)) < 1e-6 for w in found):
            found.append(z)
    out = []
    for z in found:
        a, b = complex(z[0]), complex(z[1])
        if abs(a.imag) < 1e-9 and abs(b.imag) < 1e-9:
            a, b = complex(a.real, 0.0), complex(b.real, 0.0)
        out.append(FabParams(a, b))
    return sorted(out, key=lambda p: (complex(p.a).real, complex(p.a).imag, complex(p.b).real, complex(p.b).imag))


def vn_points_mod_p(n: int, p: int, distinct: bool = True) -> list[tuple[int, int]]:
    """All ``(a, b)`` in F_p^2 with ``f^n(-a, 0) = (-b, -a)``, by enumeration.

    Orbits that hit a pole are discarded; with ``distinct`` so are orbits
    whose points ``q_0..q_n`` are not pairwise distinct, or that start at
    ``a = 0`` (where ``q`` is a fixed point).
    """
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(i, -1, p) for i in range(1, p)]
    bs = np.arange(p, dtype=np.int64)
    out = []
    for a in range(1 if distinct else 0, p):
        x = np.full(p, (-a) % p, dtype=np.int64)
        y = np.zeros(p, dtype=np.int64)
        ok = np.ones(p, dtype=bool)
        xs, ys = [x], [y]
        for _ in range(n):
            den = (x + bs) % p
            ok &= den != 0
            x, y = y, ((y + a) % p) * inv[den] % p
            xs.append(x)
            ys.append(y)
        hit = ok & (x == (-bs) % p) & (y == (-a) % p)
        if distinct and hit.any():
            for i in range(len(xs)):
                for j in range(i + 1, len(xs)):
                    hit &= ~((xs[i] == xs[j]) & (ys[i] == ys[j]))
        out.extend((a, int(b)) for b in np.nonzero(hit)[0])
    return out


# -- homogeneous forms for the degree oracle ---------------------------------------------

def fab_spec(a: int, b: int, prime: int | None = None) -> RationalMapSpec:
    """``[x_0 (x_1 + b x_0) : x_2 (x_1 + b x_0) : x_0 (x_2 + a x_0)]``."""
    terms = [
        {(1, 1, 0): 1, (2, 0, 0): b},
        {(0, 1, 1): 1, (1, 0, 1): b},
        {(1, 0, 1): 1, (2, 0, 0): a},
    ]
    comps = tuple(MonoSumPoly(3, t, prime) for t in terms)
    return RationalMapSpec(comps, f"f_(a={a},b={b})" + (f" mod {prime}" if prime else ""))


def henon_spec(prime: int | None = None) -> RationalMapSpec:
    """``h(x, y) = (y, y^2 - x)`` as ``[x_0^2 : x_0 x_2 : x_2^2 - x_0 x_1]``."""
    comps = (
        MonoSumPoly(3, {(2, 0, 0): 1}, prime),
        MonoSumPoly(3, {(1, 0, 1): 1}, prime),
        MonoSumPoly(3, {(0, 0, 2): 1, (1, 1, 0): -1}, prime),
    )
    return RationalMapSpec(comps, "henon y^2 - x")
