"""Entrywise inversion ``J``, matrix inversion ``I`` and ``K = I o J`` on P(M_q).

Variables are the entries ``x_{i,j}`` flattened row-major, so variable
``i * q + j`` is the ``(i, j)`` entry (0-based).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .intpoly import IntPoly, largest_real_root
from .linalg import IntMatrix
from .oracle import ComposedMap, RationalMapSpec
from .polys import MonoSumPoly, mono_gcd_reduce, substitute

__all__ = [
    "MatMapSpec",
    "ReductionError",
    "SYMBOLIC_Q_MAX",
    "build_J",
    "build_I",
    "build_K",
    "compose",
    "jx_pullback",
    "jx_basis",
    "delta_K",
    "k_degree",
    "symmetric_subspace",
    "cyclic_subspace",
    "symmetric_cyclic_subspace",
]

SYMBOLIC_Q_MAX = 4


class ReductionError(RuntimeError):
    """Symbolic composition did not reduce to the expected degree."""


@dataclass(frozen=True)
class MatMapSpec:
    q: int
    family: str  # "J", "I" or "K"
    map: RationalMapSpec | ComposedMap

    @property
    def degree(self) -> int | None:
        return self.map.degree if isinstance(self.map, RationalMapSpec) else None


def _var(q: int, i: int, j: int) -> int:
    return i * q + j


def _check_q(q: int):
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")


def build_J(q: int) -> MatMapSpec:
    """Component ``(i, j)`` is the product of all entries except ``x_{i,j}``."""
    _check_q(q)
    n = q * q
    comps = []
    for v in range(n):
        e = [1] * n
        e[v] = 0
        comps.append(MonoSumPoly.monomial(e))
    return MatMapSpec(q, "J", RationalMapSpec(tuple(comps), f"J_{q}"))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _cofactor(q: int, r: int, c: int) -> MonoSumPoly:
    """``(-1)^(r+c)`` times the minor of the generic matrix without row r, column c."""
    rows = [i for i in range(q) if i != r]
    cols = [j for j in range(q) if j != c]
    n = q * q
    terms = {}
    for perm in itertools.permutations(range(q - 1)):
        e = [0] * n
        for a, b in enumerate(perm):
            e[_var(q, rows[a], cols[b])] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + _perm_sign(perm)
    sign = -1 if (r + c) % 2 else 1
    return MonoSumPoly(n, terms) * sign


def build_I(q: int) -> MatMapSpec:
    """Classical adjoint: component ``(i, j)`` is the ``(j, i)`` cofactor."""
    _check_q(q)
    comps = [_cofactor(q, j, i) for i in range(q) for j in range(q)]
    return MatMapSpec(q, "I", RationalMapSpec(tuple(comps), f"I_{q}"))


def compose(outer: RationalMapSpec, inner: RationalMapSpec, label: str = "") -> RationalMapSpec:
    """Symbolic ``outer o inner`` with the common monomial divided out.

    Only monomial factors are removed, so the result is reduced exactly when
    no non-monomial common factor appears (true for ``I o J``; not for
    ``I o I`` when ``q >= 3``).
    """
    raw = substitute(outer.components, inner.components)
    spec, _ = RationalMapSpec.normalized(raw, label)
    return spec


def k_degree(q: int) -> int:
    return q * q - q + 1


def build_K(q: int, mode: str = "symbolic") -> MatMapSpec:
    """``K = I o J``.

    ``mode="symbolic"`` substitutes the monomials of ``J`` into the cofactors
    of ``I`` and strips the common monomial (``q <= SYMBOLIC_Q_MAX``); the
    resulting degree is checked against ``q^2 - q + 1``.  ``mode="oracle"``
    returns the unexpanded composite for the degree oracle, for any ``q``.
    """
    _check_q(q)
    J = build_J(q).map
    I = build_I(q).map
    if mode == "oracle":
        return MatMapSpec(q, "K", ComposedMap((J, I), f"K_{q}"))
    if mode != "symbolic":
        raise ValueError(f"unknown mode {mode!r}")
    if q > SYMBOLIC_Q_MAX:
        raise ValueError(f"symbolic K is limited to q <= {SYMBOLIC_Q_MAX}; use mode='oracle'")
    raw = substitute(I.components, J.components)
    reduced, _ = mono_gcd_reduce(raw)
    degs = {c.degree for c in reduced}
    if degs != {k_degree(q)}:
        raise ReductionError(f"K_{q} reduced to degrees {sorted(degs)}, expected {k_degree(q)}")
    return MatMapSpec(q, "K", RationalMapSpec(tuple(reduced), f"K_{q}"))


def jx_basis(q: int) -> list[str]:
    return ["H"] + [f"E_{i + 1},{j + 1}" for i in range(q) for j in range(q)]


def jx_pullback(q: int) -> IntMatrix:
    """``J_X^*`` on Pic(X), basis ``(H, E_11, ..., E_qq)`` with ``E`` row-major.

    Column ``H``: ``(q^2 - 1) H - (q^2 - 2) sum E``.
    Column ``E_ij``: ``H - sum of the other E``.
    """
    _check_q(q)
    n = q * q
    dim = n + 1
    rows = [[0] * dim for _ in range(dim)]
    rows[0][0] = n - 1
    for r in range(1, dim):
        rows[r][0] = -(n - 2)
    for c in range(1, dim):
        rows[0][c] = 1
        for r in range(1, dim):
            rows[r][c] = 0 if r == c else -1
    return IntMatrix(rows)


def delta_K(q: int) -> float:
    """Largest root modulus of ``t^2 - (q^2 - 4q + 2) t + 1``; 1 when both
    roots lie on the unit circle."""
    _check_q(q)
    c = q * q - 4 * q + 2
    if abs(c) <= 2:
        return 1.0
    p = IntPoly([1, -abs(c), 1])
    lo, hi = largest_real_root(p, tol=1e-15)
    return float((lo + hi) / 2)


# -- invariant linear subspaces of M_q (for restricted oracle runs) ----------------

def symmetric_subspace(q: int) -> list[list[int]]:
    basis = []
    for i in range(q):
        for j in range(i, q):
            v = [0] * (q * q)
            v[_var(q, i, j)] = 1
            v[_var(q, j, i)] = 1
            basis.append(v)
    return basis


def cyclic_subspace(q: int) -> list[list[int]]:
    """Circulant matrices: entry ``(i, j)`` equals ``a_{(j - i) mod q}``."""
    basis = []
    for s in range(q):
        v = [0] * (q * q)
        for i in range(q):
            v[_var(q, i, (i + s) % q)] = 1
        basis.append(v)
    return basis


def symmetric_cyclic_subspace(q: int) -> list[list[int]]:
    basis = []
    for s in range(q // 2 + 1):
        v = [0] * (q * q)
        for i in range(q):
            v[_var(q, i, (i + s) % q)] = 1
            v[_var(q, i, (i - s) % q)] = 1
        basis.append(v)
    return basis
