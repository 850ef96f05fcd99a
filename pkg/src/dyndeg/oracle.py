"""Randomized exact degree sequences of rational self-maps of P^k.

The degree of ``f^n`` is read off by restricting to a random line over a
large prime field: the line ``t -> a + b t`` is pushed through ``f`` one step
at a time, and after every step the common univariate factor of the
resulting tuple is divided out.  The common degree that remains is
``deg(f^n)`` unless the line or the prime was unlucky, which is why several
independent (prime, line) trials are combined by majority vote and any
disagreement is reported.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import flint
import numpy as np

from .polys import MonoSumPoly, UniPolyF, mono_gcd_reduce

__all__ = [
    "PRIMES",
    "RationalMapSpec",
    "ComposedMap",
    "ParamLine",
    "DegreeReport",
    "DeltaEstimate",
    "DegenerateSampleError",
    "pullback_step",
    "degree_sequence",
    "delta_estimate",
]

# The 20 largest primes below 2^61.
PRIMES = (
    2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693723,
    2305843009213693693, 2305843009213693669, 2305843009213693613, 2305843009213693561,
    2305843009213693549, 2305843009213693487, 2305843009213693421, 2305843009213693373,
    2305843009213693277, 2305843009213693193, 2305843009213693153, 2305843009213693133,
    2305843009213693123, 2305843009213693109, 2305843009213693093, 2305843009213693013,
)

LINE_RETRIES = 8


class DegenerateSampleError(RuntimeError):
    """The sampled line ran into the indeterminacy locus (all-zero tuple)."""


@dataclass(frozen=True)
class RationalMapSpec:
    """Rational self-map ``[f_0 : ... : f_k]`` of P^k.

    Components are homogeneous of one common degree in ``k + 1`` variables and
    share no monomial factor.  Use :meth:`normalized` to strip a common
    monomial from raw components.
    """

    components: tuple[MonoSumPoly, ...]
    label: str = ""

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) < 2:
            raise ValueError("a self-map of P^k needs k + 1 >= 2 components")
        nv = len(comps)
        for i, c in enumerate(comps):
            if c.nvars != nv:
                raise ValueError(f"component {i} has {c.nvars} variables, expected {nv}")
        if len({c.prime for c in comps}) != 1:
            raise ValueError("components mix coefficient domains")
        if all(c.is_zero() for c in comps):
            raise ValueError("all components are zero")
        degs = [c.degrees() for c in comps]
        if any(len(d) > 1 for d in degs):
            bad = [i for i, d in enumerate(degs) if len(d) > 1]
            raise ValueError(f"components {bad} are not homogeneous")
        flat = {d for ds in degs for d in ds}
        if len(flat) != 1:
            per = [c.degree for c in comps]
            raise ValueError(f"components have unequal degrees {per}")
        _, mono = mono_gcd_reduce(comps)
        if mono.degree != 0:
            raise ValueError(f"components share the monomial factor {mono}; use RationalMapSpec.normalized")

    @classmethod
    def normalized(cls, components: Sequence[MonoSumPoly], label: str = "") -> tuple["RationalMapSpec", MonoSumPoly]:
        reduced, mono = mono_gcd_reduce(list(components))
        return cls(tuple(reduced), label), mono

    @property
    def k(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    @property
    def prime(self) -> int | None:
        return self.components[0].prime

    @property
    def factors(self) -> tuple["RationalMapSpec", ...]:
        return (self,)

    def to_json(self) -> dict:
        out = {
            "kind": "explicit",
            "k": self.k,
            "components": [c.to_json() for c in self.components],
            "field": "Z" if self.prime is None else {"prime": str(self.prime)},
        }
        if self.label:
            out["label"] = self.label
        return out


@dataclass(frozen=True)
class ComposedMap:
    """``factors[-1] o ... o factors[0]``; factors are applied in list order.

    Lets the oracle iterate a composite (for example ``K = I o J``) without
    ever expanding it symbolically.
    """

    factors: tuple[RationalMapSpec, ...]
    label: str = ""

    def __post_init__(self):
        fs = tuple(self.factors)
        object.__setattr__(self, "factors", fs)
        if not fs:
            raise ValueError("empty composition")
        if len({f.k for f in fs}) != 1:
            raise ValueError("factors act on different projective spaces")
        primes = {f.prime for f in fs} - {None}
        if len(primes) > 1:
            raise ValueError("factors fixed to different primes")

    @property
    def k(self) -> int:
        return self.factors[0].k

    @property
    def prime(self) -> int | None:
        primes = {f.prime for f in self.factors} - {None}
        return primes.pop() if primes else None

    @property
    def degree_bound(self) -> int:
        return math.prod(f.degree for f in self.factors)


@dataclass(frozen=True)
class ParamLine:
    """The line ``t -> a + b t`` in F_p^{k+1} (projectively, through [a] and [b])."""

    prime: int
    point_a: tuple[int, ...]
    point_b: tuple[int, ...]

    def __post_init__(self):
        if len(self.point_a) != len(self.point_b):
            raise ValueError("points have different lengths")
        if not self.independent():
            raise ValueError("points are projectively dependent mod p")

    @property
    def k(self) -> int:
        return len(self.point_a) - 1

    def independent(self) -> bool:
        p = self.prime
        a, b = self.point_a, self.point_b
        n = len(a)
        return any((a[i] * b[j] - a[j] * b[i]) % p for i in range(n) for j in range(i + 1, n))

    def polys(self) -> tuple[UniPolyF, ...]:
        return tuple(UniPolyF(self.prime, (x, y)) for x, y in zip(self.point_a, self.point_b))

    @classmethod
    def random(cls, prime: int, k: int, rng: np.random.Generator, subspace: Sequence[Sequence[int]] | None = None) -> "ParamLine":
        """Random line; with ``subspace`` (a list of spanning vectors) the two
        points are random combinations of them, so the line lies inside that
        linear subspace."""
        for _ in range(64):
            if subspace is None:
                a = tuple(int(x) for x in rng.integers(0, prime, size=k + 1))
                b = tuple(int(x) for x in rng.integers(0, prime, size=k + 1))
            else:
                ca = [int(x) for x in rng.integers(0, prime, size=len(subspace))]
                cb = [int(x) for x in rng.integers(0, prime, size=len(subspace))]
                a = tuple(sum(c * v[i] for c, v in zip(ca, subspace)) % prime for i in range(k + 1))
                b = tuple(sum(c * v[i] for c, v in zip(cb, subspace)) % prime for i in range(k + 1))
            line = object.__new__(cls)
            object.__setattr__(line, "prime", prime)
            object.__setattr__(line, "point_a", a)
            object.__setattr__(line, "point_b", b)
            if line.independent():
                return line
        raise DegenerateSampleError("could not sample two independent points")


# -- the pullback step ---------------------------------------------------------

def _eval_components(spec: RationalMapSpec, vals: list, prime: int) -> list:
    """Evaluate every component at ``vals`` (flint polys mod ``prime``).

    Monomials are multiplied along a balanced split of their sorted factor
    list, and the partial products are shared across all terms, which matters
    for maps like ``J`` where every component omits a single variable.
    """
    memo: dict[tuple[int, ...], flint.nmod_poly] = {}

    def prod(idx: tuple[int, ...]):
        if len(idx) == 1:
            return vals[idx[0]]
        r = memo.get(idx)
        if r is None:
            mid = len(idx) // 2
            r = prod(idx[:mid]) * prod(idx[mid:])
            memo[idx] = r
        return r

    one = flint.nmod_poly([1], prime)
    out = []
    for comp in spec.components:
        # group terms by their left half: sum_L prod(L) * (sum_R c prod(R)).
        # Full products are used once, so only the halves are cached.
        groups: dict[tuple[int, ...], flint.nmod_poly] = {}
        for e, c in comp.terms:
            idx = tuple(j for j, k in enumerate(e) for _ in range(k))
            mid = len(idx) // 2
            left, right = idx[:mid], idx[mid:]
            r = prod(right) if right else one
            acc = groups.get(left)
            groups[left] = r * (c % prime) if acc is None else acc + r * (c % prime)
        total = flint.nmod_poly([], prime)
        for left, acc in groups.items():
            total += prod(left) * acc if left else acc
        out.append(total)
    return out


def _reduce_tuple(polys: list) -> tuple[list, int]:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise DegenerateSampleError("all components vanish on the sampled line")
    g = nonzero[0]
    for p in nonzero[1:]:
        if g.degree() == 0:
            break
        g = g.gcd(p)
    if g.degree() <= 0:
        return polys, 0
    return [p // g for p in polys], g.degree()


def _step(m, vals: list, prime: int) -> tuple[list, int]:
    for f in m.factors:
        vals = _eval_components(f, vals, prime)
        vals, _ = _reduce_tuple(vals)
    return vals, max(p.degree() for p in vals)


def pullback_step(m: RationalMapSpec | ComposedMap, current: Sequence[UniPolyF]) -> tuple[tuple[UniPolyF, ...], int]:
    """Substitute the line tuple ``current`` into ``m`` and divide out the
    common factor.  Returns the reduced tuple and its common degree."""
    if len(current) != m.k + 1:
        raise ValueError(f"expected {m.k + 1} polynomials, got {len(current)}")
    primes = {p.prime for p in current}
    if len(primes) != 1:
        raise ValueError("tuple mixes primes")
    prime = primes.pop()
    if m.prime is not None and m.prime != prime:
        raise ValueError(f"map is defined over F_{m.prime}, tuple over F_{prime}")
    vals = [p.to_flint() for p in current]
    vals, deg = _step(m, vals, prime)
    return tuple(UniPolyF.from_flint(v) for v in vals), deg


# -- degree sequences ------------------------------------------------------------

@dataclass
class DegreeReport:
    degrees: list[int]
    trials: int
    agreement: list[bool]
    seed: int
    primes: list[int]
    per_trial: list[list[int]]
    label: str = ""
    line_attempts: list[int] = field(default_factory=list)

    @property
    def N(self) -> int:
        return len(self.degrees) - 1

    @property
    def ratios(self) -> list[float]:
        return [self.degrees[n + 1] / self.degrees[n] for n in range(self.N)]

    @property
    def roots(self) -> list[float]:
        return [self.degrees[n] ** (1.0 / n) for n in range(1, self.N + 1)]

    @property
    def all_agree(self) -> bool:
        return all(self.agreement)

    def submultiplicative(self) -> bool:
        d = self.degrees
        return all(d[m + n] <= d[m] * d[n] for m in range(len(d)) for n in range(len(d) - m))

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "degrees": [str(d) for d in self.degrees],
            "ratios": self.ratios,
            "roots": self.roots,
            "agreement": self.agreement,
            "trials": self.trials,
            "per_trial": [[str(d) for d in row] for row in self.per_trial],
            "provenance": {
                "seed": self.seed,
                "primes": [str(p) for p in self.primes],
                "line_attempts": self.line_attempts,
                "replay": [[str(p), a] for p, a in zip(self.primes, self.line_attempts)],
            },
        }


def _trial_primes(m, trials: int, seed: int) -> list[int]:
    if m.prime is not None:
        return [m.prime] * trials
    order = np.random.default_rng([seed, 0xC0FFEE]).permutation(len(PRIMES))
    return [PRIMES[int(order[i % len(PRIMES)])] for i in range(trials)]


def _run_trial(m, N: int, prime: int, rng, subspace) -> list[int]:
    line = ParamLine.random(prime, m.k, rng, subspace)
    vals = [p.to_flint() for p in line.polys()]
    degrees = [1]
    for _ in range(N):
        vals, d = _step(m, vals, prime)
        degrees.append(d)
    return degrees


def degree_sequence(
    m: RationalMapSpec | ComposedMap,
    N: int,
    trials: int = 5,
    seed: int = 0,
    subspace: Sequence[Sequence[int]] | None = None,
    replay: Sequence[tuple[int, int]] | None = None,
) -> DegreeReport:
    """``deg(f^n)`` for ``n = 0..N`` by majority over independent trials.

    Attempt ``j`` of trial ``t`` draws its line from a generator seeded by
    ``(seed, t, j)``.  A degenerate line is resampled up to 8 times, after
    which the trial moves on to the next prime of the table (maps fixed to
    one prime keep it).  Results depend only on ``(m, N, trials, seed,
    subspace)``.  ``replay`` takes the recorded ``(prime, attempt)`` per trial
    and reruns exactly those samples.
    """
    if N < 1 or trials < 1:
        raise ValueError("need N >= 1 and trials >= 1")
    if replay is not None and len(replay) != trials:
        raise ValueError("replay needs one (prime, attempt) pair per trial")
    primes = _trial_primes(m, trials, seed)
    per_trial: list[list[int]] = []
    used: list[int] = []
    attempts: list[int] = []
    for t in range(trials):
        if replay is not None:
            prime, j = int(replay[t][0]), int(replay[t][1])
            rng = np.random.default_rng([seed, t, j])
            per_trial.append(_run_trial(m, N, prime, rng, subspace))
            used.append(prime)
            attempts.append(j)
            continue
        prime = primes[t]
        j = 0
        result = None
        for switch in range(len(PRIMES) if m.prime is None else 1):
            for _ in range(LINE_RETRIES):
                rng = np.random.default_rng([seed, t, j])
                try:
                    result = _run_trial(m, N, prime, rng, subspace)
                    break
                except DegenerateSampleError:
                    j += 1
            if result is not None:
                break
            if m.prime is None:
                prime = PRIMES[(PRIMES.index(prime) + 1) % len(PRIMES)]
        if result is None:
            raise DegenerateSampleError(f"trial {t}: every sampled line was degenerate")
        per_trial.append(result)
        used.append(prime)
        attempts.append(j)

    degrees, agreement = [], []
    for n in range(N + 1):
        votes = Counter(row[n] for row in per_trial)
        value, _ = max(votes.items(), key=lambda kv: (kv[1], -kv[0]))
        degrees.append(value)
        agreement.append(len(votes) == 1)
    label = getattr(m, "label", "")
    return DegreeReport(degrees, trials, agreement, seed, used, per_trial, label, attempts)


@dataclass(frozen=True)
class DeltaEstimate:
    ratio: float
    root: float
    converged: bool
    bounded_growth: bool

    def to_json(self) -> dict:
        return {"ratio": self.ratio, "root": self.root, "converged": self.converged, "bounded_growth": self.bounded_growth}


def delta_estimate(report: DegreeReport | Sequence[int], rtol: float = 1e-2) -> DeltaEstimate:
    """Last ratio ``d_N / d_{N-1}`` and root ``d_N^(1/N)``.

    ``converged`` is set when the last three ratios agree to ``rtol``.  A
    sequence whose last three entries are equal is reported as bounded
    growth with estimate 1.
    """
    d = list(report.degrees if isinstance(report, DegreeReport) else report)
    if len(d) < 3:
        raise ValueError("need at least three degrees")
    N = len(d) - 1
    if d[-1] == d[-2] == d[-3]:
        return DeltaEstimate(1.0, 1.0, True, True)
    ratios = [d[n + 1] / d[n] for n in range(N)]
    last = ratios[-3:]
    ref = last[-1]
    converged = len(last) == 3 and all(abs(r - ref) <= rtol * ref for r in last)
    return DeltaEstimate(ratios[-1], d[-1] ** (1.0 / N), converged, False)
