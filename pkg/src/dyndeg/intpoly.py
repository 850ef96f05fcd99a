"""Univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored lowest degree first.  Everything that needs to be
exact (sign evaluation, Sturm counts, integer roots, cyclotomic tests) works
over ``int``/``Fraction``; floating point only enters through
:func:`complex_roots`, which locates roots numerically with mpmath.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath


class IntPoly:
    """Immutable polynomial over Z, ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"IntPoly coefficients must be integers, got {c!r}")
            cs.append(int(c))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("t" if i == 1 else f"t^{i}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient ``self / other``; raises if the division leaves a remainder
        or needs non-integer coefficients."""
        q, r = _qdivmod(list(map(Fraction, self.coeffs)), list(map(Fraction, other.coeffs)))
        if any(r) or any(c.denominator != 1 for c in q):
            raise ArithmeticError(f"{other} does not divide {self} over Z")
        return IntPoly(int(c) for c in q)

    def divides(self, other: "IntPoly") -> bool:
        """True when ``self`` divides ``other`` in Z[t]."""
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction | int) -> int:
        v = self(Fraction(x))
        return (v > 0) - (v < 0)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def mirror(self) -> "IntPoly":
        """``p(-t)``."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "IntPoly":
        return cls(_parse_int(c) for c in data)


def _parse_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError(f"not an integer: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v.strip())
    raise ValueError(f"not an integer: {v!r}")


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as IntPoly")


# -- Q[t] helpers on Fraction lists (lowest degree first) -------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lb
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _qgcd(a: list, b: list) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _to_primitive(a: list) -> IntPoly:
    if not a:
        return IntPoly([])
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in a).primitive()


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive GCD over Q (positive leading coefficient)."""
    return _to_primitive(_qgcd(list(map(Fraction, p.coeffs)), list(map(Fraction, q.coeffs))))


def squarefree_part(p: IntPoly) -> IntPoly:
    """Primitive polynomial with the same roots as ``p``, all simple."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return _to_primitive(_qdivmod(list(map(Fraction, p.coeffs)), list(map(Fraction, g.coeffs)))[0])


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: pairs ``(factor, multiplicity)`` with pairwise coprime,
    squarefree, primitive factors whose product is ``p`` up to a constant."""
    if p.degree <= 0:
        return []
    f = list(map(Fraction, p.coeffs))
    df = list(map(Fraction, p.derivative().coeffs))
    a = _qgcd(f, df)
    b = _qdivmod(f, a)[0]
    c = _qdivmod(df, a)[0]
    out = []
    i = 1
    while len(_trim(list(b))) > 1:
        db = [k * x for k, x in enumerate(b)][1:]
        d = [x - y for x, y in _zip_longest(c, db)]
        a = _qgcd(b, d)
        if len(a) > 1:
            out.append((_to_primitive(a), i))
        b = _qdivmod(b, a)[0]
        c = _qdivmod(d, a)[0]
        i += 1
    return out


def _zip_longest(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)


# -- real roots: Sturm sequences and exact bisection --------------------------

def cauchy_bound(p: IntPoly) -> Fraction:
    """All complex roots of ``p`` lie in ``|z| <= 1 + max|a_i / a_n|``."""
    lead = abs(p.leading)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def sturm_sequence(p: IntPoly) -> list[list[Fraction]]:
    p = squarefree_part(p)
    seq = [list(map(Fraction, p.coeffs)), list(map(Fraction, p.derivative().coeffs))]
    while len(_trim(seq[-1])) > 0:
        _, r = _qdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for s in seq:
        v = Fraction(0)
        for c in reversed(s):
            v = v * x + c
        if v:
            signs.append(v > 0)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: IntPoly, lo, hi, seq=None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq if seq is not None else sturm_sequence(p)
    return _sign_changes(seq, Fraction(lo)) - _sign_changes(seq, Fraction(hi))


def largest_real_root(p: IntPoly, tol=Fraction(1, 10**12), above=None):
    """Certified bracket ``(lo, hi)`` around the largest real root of ``p``.

    Returns None when ``p`` has no real root (or none in ``(above, ∞)`` if
    ``above`` is given).  Each bisection step keeps a Sturm-certified root in
    ``(lo, hi]`` and none above ``hi``.
    """
    tol = Fraction(tol)
    seq = sturm_sequence(p)
    B = cauchy_bound(p) + 1
    lo = Fraction(above) if above is not None else -B
    hi = B
    if count_real_roots(p, lo, hi, seq) == 0:
        return None
    sq = IntPoly(int(c) for c in _to_primitive(seq[0]).coeffs)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_real_roots(p, mid, hi, seq) > 0:
            lo = mid
        else:
            hi = mid
        # once the top root is isolated, plain sign bisection is cheaper
        if count_real_roots(p, lo, hi, seq) == 1 and sq.sign_at(lo) * sq.sign_at(hi) < 0:
            lo, hi = bisect_root(sq, lo, hi, tol)
            break
    if sq(hi) == 0:
        lo = hi
    return lo, hi


def bisect_root(p: IntPoly, lo, hi, tol) -> tuple[Fraction, Fraction]:
    """Shrink ``[lo, hi]`` with ``sign p(lo) != sign p(hi)`` to width ``<= tol``
    using exact rational sign evaluation."""
    lo, hi, tol = Fraction(lo), Fraction(hi), Fraction(tol)
    slo = p.sign_at(lo)
    shi = p.sign_at(hi)
    if slo == 0:
        return lo, lo
    if shi == 0:
        return hi, hi
    if slo == shi:
        raise ValueError(f"no sign change of p on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def certify_real_root(p: IntPoly, approx: float, tol, width: float | None = None):
    """Bracket a simple real root of ``squarefree_part(p)`` near ``approx``
    by locating a sign change and bisecting exactly.  Returns None if no sign
    change can be found near ``approx``."""
    sq = squarefree_part(p)
    x = Fraction(approx)
    w = Fraction(width if width is not None else max(abs(approx), 1.0) * 1e-9)
    for _ in range(60):
        lo, hi = x - w, x + w
        if sq.sign_at(lo) * sq.sign_at(hi) < 0 or sq(x) == 0:
            if sq(x) == 0:
                return x, x
            return bisect_root(sq, lo, hi, tol)
        w *= 4
        if w > abs(x) + 10:
            break
    return None


# -- numeric root location ----------------------------------------------------

def complex_roots(p: IntPoly, dps: int = 30) -> list[tuple[mpmath.mpc, int]]:
    """All complex roots with multiplicities.

    The squarefree decomposition is taken exactly first, so the numeric
    solver only ever sees simple roots.
    """
    out = []
    with mpmath.workdps(dps):
        for factor, mult in squarefree_decomposition(p):
            cs = list(reversed(factor.coeffs))
            if factor.degree == 1:
                roots = [mpmath.mpc(mpmath.mpf(-factor.coeffs[0]) / factor.coeffs[1])]
            else:
                roots = mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps + 10 * factor.degree)
            for r in roots:
                out.append((mpmath.mpc(r), mult))
    return out


# -- integer roots, cyclotomic factors ----------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(p: IntPoly) -> list[int]:
    """Integer roots with multiplicity (divisor test on the constant term)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every integer as a root")
    roots = []
    while p.degree > 0 and p.coeffs[0] == 0:
        roots.append(0)
        p = IntPoly(p.coeffs[1:])
    if p.degree <= 0:
        return roots
    B = cauchy_bound(p)
    for d in _divisors(p.coeffs[0]):
        if d > B:
            break
        for r in (d, -d):
            while p.degree > 0 and p(r) == 0:
                roots.append(r)
                p = p.exact_div(IntPoly([-r, 1]))
    return sorted(roots, reverse=True)


def _totient(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by dividing ``t^n - 1`` by the lower ones."""
    p = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in _divisors(n):
        if d < n:
            p = p.exact_div(cyclotomic(d))
    return p


def strip_cyclotomic(p: IntPoly) -> tuple[IntPoly, list[tuple[int, int]]]:
    """Divide out every cyclotomic factor of ``p``.

    Returns the cofactor and a list of ``(n, multiplicity)``.
    """
    found = []
    d = p.degree
    n = 1
    # phi(n) >= sqrt(n / 2), so phi(n) <= d forces n <= 2 d^2
    while n <= 2 * d * d + 2:
        if _totient(n) <= p.degree:
            c = cyclotomic(n)
            k = 0
            while p.degree >= c.degree and c.divides(p):
                p = p.exact_div(c)
                k += 1
            if k:
                found.append((n, k))
        n += 1
    return p, found


def is_cyclotomic_product(p: IntPoly) -> bool:
    """True when every nonzero root of ``p`` is a root of unity (and there is
    at least one).  For a monic integer polynomial this is exactly the
    statement that its nonzero roots all have modulus one."""
    while p.degree > 0 and p.coeffs[0] == 0:
        p = IntPoly(p.coeffs[1:])
    if p.degree <= 0:
        return False
    rest, _ = strip_cyclotomic(p)
    return rest.degree == 0 and abs(rest.coeffs[0]) == 1


# -- symmetric-function tools -------------------------------------------------

def power_sums(p: IntPoly, count: int) -> list[int]:
    """Power sums ``s_1..s_count`` of the roots of monic ``p`` (Newton)."""
    if not p.is_monic():
        raise ValueError("power_sums expects a monic polynomial")
    n = p.degree
    # e_k with sign: p = t^n + a_{n-1} t^{n-1} + ...; a_{n-k} = (-1)^k e_k
    a = [p[n - k] for k in range(n + 1)]  # a[0] = 1
    s = [0] * (count + 1)
    for k in range(1, count + 1):
        acc = -k * a[k] if k <= n else 0
        for i in range(1, min(k, n + 1)):
            acc -= a[i] * s[k - i]
        s[k] = acc
    return s[1:]


def from_power_sums(s: Sequence[int], n: int) -> IntPoly:
    """Monic degree-n polynomial whose roots have the given power sums."""
    a = [1] + [0] * n
    for k in range(1, n + 1):
        acc = s[k - 1]
        for i in range(1, k):
            acc += a[i] * s[k - i - 1]
        if acc % k:
            raise ArithmeticError("power sums are not those of an integer polynomial")
        a[k] = -acc // k
    return IntPoly(reversed(a))


def exterior_square_charpoly(p: IntPoly) -> IntPoly:
    """Characteristic polynomial of the second exterior power, from the
    characteristic polynomial ``p`` alone: roots are ``mu_i * mu_j``, i < j."""
    n = p.degree
    N = n * (n - 1) // 2
    if N == 0:
        return IntPoly([1])
    s = power_sums(p, 2 * N)
    t = [(s[k - 1] ** 2 - s[2 * k - 1]) // 2 for k in range(1, N + 1)]
    return from_power_sums(t, N)
