import math
from fractions import Fraction

import numpy as np
import pytest
from conftest import int_matrices, random_unimodular
from hypothesis import given

from dyndeg.fab import fy_matrix, henon_spec
from dyndeg.intpoly import IntPoly, exterior_square_charpoly, integer_roots
from dyndeg.irrationality import (
    COMPLEX_IRRATIONAL,
    INCONCLUSIVE,
    RADIUS_ONE,
    REAL_IRRATIONAL,
    HypothesisError,
    certify_irrational,
    decide,
    henon_delta,
)
from dyndeg.linalg import IntMatrix, SpectralResult, charpoly, companion
from dyndeg.matinv import jx_pullback
from dyndeg.oracle import degree_sequence

LEHMER = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
LEHMER_ROOT = 1.17628081825991750
COMPLEX_POLY = IntPoly([1, -2, -2, 1, 1])


def fixtures():
    return {
        "lehmer": (companion(LEHMER), REAL_IRRATIONAL),
        "fy7": (fy_matrix(7), REAL_IRRATIONAL),
        "complex": (companion(COMPLEX_POLY), COMPLEX_IRRATIONAL),
        "identity": (IntMatrix.identity(4), RADIUS_ONE),
        "jx3": (jx_pullback(3), RADIUS_ONE),
        "fy3": (fy_matrix(3), RADIUS_ONE),
    }


def _recheck(m: IntMatrix, v):
    """Re-derive the exact conditions an irrational verdict depends on."""
    cp = charpoly(m)
    assert abs(cp[0]) == 1
    assert set(integer_roots(cp)) <= {1, -1}
    assert 1 < v.lo <= v.hi
    assert math.floor(v.hi) < math.ceil(v.lo)
    if v.case == COMPLEX_IRRATIONAL:
        e2 = exterior_square_charpoly(cp)
        assert not [r for r in integer_roots(e2) if v.lo ** 2 <= r <= v.hi ** 2]


def test_lehmer_companion():
    v = certify_irrational(companion(LEHMER))
    assert v.case == REAL_IRRATIONAL and v.irrational
    assert v.radius == pytest.approx(LEHMER_ROOT, abs=1e-12)
    assert v.lo <= Fraction(LEHMER_ROOT) + Fraction(1, 10**15)
    assert v.certificate


def test_radius_one_cases():
    assert certify_irrational(IntMatrix.identity(3)).case == RADIUS_ONE
    for q in range(2, 7):
        v = certify_irrational(jx_pullback(q))
        assert v.case == RADIUS_ONE and not v.irrational


def test_fy7_is_salem_type():
    v = certify_irrational(fy_matrix(7))
    assert v.case == REAL_IRRATIONAL
    assert v.radius == pytest.approx(LEHMER_ROOT, abs=1e-12)


def test_complex_pair_fixture():
    v = certify_irrational(companion(COMPLEX_POLY))
    assert v.case == COMPLEX_IRRATIONAL
    _recheck(companion(COMPLEX_POLY), v)


@pytest.mark.parametrize("m", [[[2, 0], [0, 1]], [[1, 2], [3, 4]], [[0, 0], [0, 0]], [[3]]])
def test_non_unimodular_raises(m):
    with pytest.raises(HypothesisError):
        certify_irrational(IntMatrix(m))


@given(int_matrices(1, 4, -3, 3))
def test_hypothesis_error_iff_det_not_unit(m):
    if abs(m.det()) != 1:
        with pytest.raises(HypothesisError):
            certify_irrational(m)
    else:
        v = certify_irrational(m)
        if v.irrational:
            _recheck(m, v)


def test_integer_radius_is_never_certified():
    # a forged bracket around 2 must not certify anything
    cp = IntPoly([1, -3, 1])
    forged = SpectralResult(2.0, Fraction(19, 10), Fraction(21, 10), dominant="real")
    assert decide(cp, forged).case == INCONCLUSIVE


@pytest.mark.parametrize(
    "cp, sr",
    [
        # constant term not +-1
        (IntPoly([2, -3, 1]), SpectralResult(2.6, Fraction(26, 10), Fraction(27, 10), dominant="real")),
        # integer root outside {+-1}
        (IntPoly.from_roots([3, 1]), SpectralResult(3.0, Fraction(29, 10), Fraction(31, 10), dominant="real")),
        # bracket touching 1
        (IntPoly([1, -3, 1]), SpectralResult(1.0, Fraction(1), Fraction(11, 10), dominant="real")),
        # unknown dominant type
        (IntPoly([1, -3, 1]), SpectralResult(2.6, Fraction(26, 10), Fraction(27, 10), dominant="?")),
    ],
)
def test_decide_refuses_when_checks_fail(cp, sr):
    assert decide(cp, sr).case == INCONCLUSIVE


def test_decide_complex_refuses_integer_square():
    # roots -1 +- i and +- i: the pair product 2 is an integer eigenvalue of the
    # exterior square; the constant term 2 already blocks the verdict
    cp = IntPoly([2, 2, 1]) * IntPoly([1, 0, 1])
    e2 = exterior_square_charpoly(cp)
    assert 2 in integer_roots(e2)
    sr = SpectralResult(2 ** 0.5, Fraction(14142, 10000), Fraction(14143, 10000), dominant="complex")
    v = decide(cp, sr)
    assert v.case == INCONCLUSIVE and "constant term" in v.certificate[-1]


@given(int_matrices(2, 5, -3, 3))
def test_exterior_square_integer_roots_of_unimodular_are_units(m):
    # a subset product of roots equal to k forces the rest to multiply to +-1/k
    if abs(m.det()) == 1:
        assert set(integer_roots(exterior_square_charpoly(charpoly(m)))) <= {1, -1}


@pytest.mark.parametrize("case", range(100))
def test_fuzzed_conjugations(case):
    rng = np.random.default_rng([2024, case])
    names = sorted(fixtures())
    name = names[case % len(names)]
    M, expected = fixtures()[name]
    U, V = random_unimodular(M.dim, rng, steps=8)
    C = U @ M @ V
    assert charpoly(C) == charpoly(M)
    v = certify_irrational(C)
    assert v.case == expected
    if v.irrational:
        _recheck(C, v)


def test_henon_delta():
    assert henon_delta([2]) == 2
    assert henon_delta([2, 3]) == 6
    assert henon_delta([5, 5, 5]) == 125
    for bad in ([], [1], [2, 1], [2.5]):
        with pytest.raises(ValueError):
            henon_delta(bad)


def test_henon_oracle_matches_delta():
    rep = degree_sequence(henon_spec(), 4, trials=3, seed=0)
    assert rep.degrees[1] == henon_delta([2])
    assert rep.degrees[4] == henon_delta([2] * 4)
