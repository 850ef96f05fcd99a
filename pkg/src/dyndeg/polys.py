"""Sparse multivariate polynomials and univariate polynomials over F_p.

:class:`MonoSumPoly` is a sum of monomials over Z or a prime field, used for
the homogeneous components of rational maps.  :class:`UniPolyF` is a dense
univariate polynomial over F_p, used for restrictions of maps to a line.
Only two kinds of GCD are provided: the monomial GCD of a tuple of sparse
polynomials and Euclid's algorithm for univariate polynomials.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "MonoSumPoly",
    "UniPolyF",
    "DomainError",
    "substitute",
    "mono_gcd_reduce",
    "uni_gcd",
    "tuple_reduce_univariate",
]


class DomainError(ValueError):
    """Mismatched variable counts or coefficient domains."""


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MonoSumPoly:
    """Sum of monomials ``coeff * x_0^e_0 ... x_{n-1}^e_{n-1}``.

    ``prime=None`` means integer coefficients; otherwise coefficients are
    residues mod ``prime``.  Terms are kept in descending graded-lex order so
    that equal polynomials serialize identically.
    """

    __slots__ = ("nvars", "terms", "prime")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | Iterable = (), prime: int | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DomainError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, 0) + int(c)
        if prime is not None:
            acc = {e: c % prime for e, c in acc.items()}
        clean = tuple(sorted(((e, c) for e, c in acc.items() if c), key=lambda t: _grlex_key(t[0]), reverse=True))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, name, value):
        raise AttributeError("MonoSumPoly is immutable")

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1, prime: int | None = None) -> "MonoSumPoly":
        return cls(len(exps), {tuple(exps): coeff}, prime)

    @classmethod
    def variable(cls, nvars: int, i: int, prime: int | None = None) -> "MonoSumPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, prime)

    @classmethod
    def constant(cls, nvars: int, c: int, prime: int | None = None) -> "MonoSumPoly":
        return cls(nvars, {(0,) * nvars: c}, prime)

    # -- inspection -------------------------------------------------------

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __eq__(self, other):
        if not isinstance(other, MonoSumPoly):
            return NotImplemented
        return (self.nvars, self.terms, self.prime) == (other.nvars, other.terms, other.prime)

    def __hash__(self):
        return hash((self.nvars, self.terms, self.prime))

    def __repr__(self):
        return f"MonoSumPoly({self.nvars}, {dict(self.terms)!r}, prime={self.prime})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MonoSumPoly"):
        if self.nvars != other.nvars:
            raise DomainError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.prime != other.prime:
            raise DomainError(f"coefficient domain mismatch: {self.prime} vs {other.prime}")

    def __add__(self, other: "MonoSumPoly") -> "MonoSumPoly":
        self._check(other)
        return MonoSumPoly(self.nvars, list(self.terms) + list(other.terms), self.prime)

    def __neg__(self):
        return MonoSumPoly(self.nvars, [(e, -c) for e, c in self.terms], self.prime)

    def __sub__(self, other: "MonoSumPoly") -> "MonoSumPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MonoSumPoly(self.nvars, [(e, c * other) for e, c in self.terms], self.prime)
        self._check(other)
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MonoSumPoly(self.nvars, acc, self.prime)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MonoSumPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MonoSumPoly.constant(self.nvars, 1, self.prime)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_monomial(self, exps: Sequence[int]) -> "MonoSumPoly":
        out = []
        for e, c in self.terms:
            d = tuple(a - b for a, b in zip(e, exps))
            if any(x < 0 for x in d):
                raise ArithmeticError(f"monomial {tuple(exps)} does not divide term {e}")
            out.append((d, c))
        return MonoSumPoly(self.nvars, out, self.prime)

    def mod(self, prime: int) -> "MonoSumPoly":
        if self.prime is not None and self.prime != prime:
            raise DomainError(f"cannot move coefficients from F_{self.prime} to F_{prime}")
        return MonoSumPoly(self.nvars, self.terms, prime)

    def evaluate(self, point: Sequence[int]):
        """Value at an integer point (reduced mod ``prime`` when set)."""
        total = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total % self.prime if self.prime is not None else total

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], nvars: int | None = None, prime: int | None = None) -> "MonoSumPoly":
        terms = []
        for t in data:
            exps = t["exponents"]
            coeff = t["coeff"]
            if isinstance(coeff, bool) or not isinstance(coeff, (int, str)):
                raise ValueError(f"malformed coefficient {coeff!r}")
            terms.append((tuple(int(x) for x in exps), int(coeff)))
        if nvars is None:
            if not terms:
                raise ValueError("cannot infer nvars from an empty polynomial")
            nvars = len(terms[0][0])
        return cls(nvars, terms, prime)


def _common_domain(polys: Sequence[MonoSumPoly]) -> tuple[int, int | None]:
    nvars = {p.nvars for p in polys}
    primes = {p.prime for p in polys}
    if len(nvars) != 1:
        raise DomainError(f"arguments use different variable sets: {sorted(nvars)}")
    if len(primes) != 1:
        raise DomainError(f"arguments mix coefficient domains: {sorted(map(str, primes))}")
    return nvars.pop(), primes.pop()


def substitute(components: Sequence[MonoSumPoly], arguments: Sequence[MonoSumPoly]) -> list[MonoSumPoly]:
    """Compose: replace variable ``j`` of every component by ``arguments[j]``.

    Components over Z are carried into the arguments' prime field when the
    arguments live there; any other mix of domains is rejected.
    """
    if not arguments:
        raise DomainError("no arguments")
    nvars, prime = _common_domain(arguments)
    powers: dict[tuple[int, int], MonoSumPoly] = {}

    def power(j: int, k: int) -> MonoSumPoly:
        key = (j, k)
        if key not in powers:
            powers[key] = arguments[j] ** k
        return powers[key]

    out = []
    for comp in components:
        if comp.nvars != len(arguments):
            raise DomainError(f"component has {comp.nvars} variables but {len(arguments)} arguments were given")
        if comp.prime is not None and comp.prime != prime:
            raise DomainError(f"component over F_{comp.prime} cannot take arguments over {prime or 'Z'}")
        total = MonoSumPoly(nvars, {}, prime)
        for e, c in comp.terms:
            term = MonoSumPoly.constant(nvars, c, prime)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            total = total + term
        out.append(total)
    return out


def mono_gcd_reduce(polys: Sequence[MonoSumPoly]) -> tuple[list[MonoSumPoly], MonoSumPoly]:
    """Divide out the largest monomial dividing every term of every polynomial.

    Returns ``(reduced, extracted)`` where ``extracted`` is that monomial.
    Zero polynomials are allowed as long as not all of them are zero.
    """
    if not polys:
        raise ValueError("empty tuple")
    nvars, prime = _common_domain(polys)
    exps = [e for p in polys for e, _ in p.terms]
    if not exps:
        raise ValueError("all polynomials are zero")
    g = tuple(min(e[i] for e in exps) for i in range(nvars))
    extracted = MonoSumPoly.monomial(g, 1, prime)
    if not any(g):
        return list(polys), extracted
    return [p.divide_monomial(g) for p in polys], extracted


# -- univariate polynomials over F_p ------------------------------------------

class UniPolyF:
    """Dense polynomial over F_p, coefficients lowest degree first."""

    __slots__ = ("prime", "coeffs")

    def __init__(self, prime: int, coeffs: Iterable[int]):
        if prime < 3 or prime % 2 == 0 or prime >= 2**62:
            raise ValueError(f"prime must be odd and below 2^62, got {prime}")
        cs = [int(c) % prime for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPolyF is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, UniPolyF):
            return NotImplemented
        return self.prime == other.prime and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prime, self.coeffs))

    def __repr__(self):
        return f"UniPolyF({self.prime}, {list(self.coeffs)})"

    def _same(self, other: "UniPolyF"):
        if self.prime != other.prime:
            raise DomainError(f"prime mismatch: {self.prime} vs {other.prime}")

    def __add__(self, other: "UniPolyF") -> "UniPolyF":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPolyF(self.prime, (x + y for x, y in zip(a, b)))

    def __neg__(self):
        return UniPolyF(self.prime, (-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPolyF(self.prime, (c * other for c in self.coeffs))
        self._same(other)
        if self.is_zero() or other.is_zero():
            return UniPolyF(self.prime, ())
        p = self.prime
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPolyF(p, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPolyF"):
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.prime
        a = list(self.coeffs)
        b = other.coeffs
        inv = pow(b[-1], -1, p)
        if len(a) < len(b):
            return UniPolyF(p, ()), self
        q = [0] * (len(a) - len(b) + 1)
        for i in range(len(a) - len(b), -1, -1):
            c = a[i + len(b) - 1] * inv % p
            q[i] = c
            if c:
                for j, bj in enumerate(b):
                    a[i + j] = (a[i + j] - c * bj) % p
        return UniPolyF(p, q), UniPolyF(p, a[: len(b) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPolyF":
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.prime)
        return self * inv

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.prime
        return acc

    def to_flint(self) -> flint.nmod_poly:
        return flint.nmod_poly(list(self.coeffs), self.prime)

    @classmethod
    def from_flint(cls, poly: flint.nmod_poly) -> "UniPolyF":
        return cls(poly.modulus(), [int(c) for c in poly.coeffs()])


def uni_gcd(a: UniPolyF, b: UniPolyF) -> UniPolyF:
    """Monic GCD by Euclid's algorithm."""
    a._same(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def tuple_reduce_univariate(polys: Sequence[UniPolyF]) -> tuple[list[UniPolyF], int]:
    """Divide every polynomial by the GCD of the whole tuple.

    Returns the reduced tuple and the degree of the removed GCD.  An all-zero
    tuple raises ``ZeroDivisionError`` -- callers treat that as a degenerate
    sample and resample.
    """
    if len(polys) < 2:
        raise ValueError("need at least two polynomials")
    primes = {p.prime for p in polys}
    if len(primes) != 1:
        raise DomainError(f"prime mismatch in tuple: {sorted(primes)}")
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ZeroDivisionError("all-zero tuple")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.degree == 0:
            break
        g = uni_gcd(g, p)
    if g.degree == 0:
        return list(polys), 0
    return [p // g for p in polys], g.degree
