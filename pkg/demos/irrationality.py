"""
Certifying that a dynamical degree is irrational
================================================

For an automorphism the pullback matrix is unimodular, so a rational
spectral radius other than 1 is impossible.  The certifier checks this with
exact arithmetic only.
"""

from dyndeg.fab import fy_matrix
from dyndeg.intpoly import IntPoly
from dyndeg.irrationality import HypothesisError, certify_irrational, henon_delta
from dyndeg.linalg import IntMatrix, companion
from dyndeg.matinv import jx_pullback

lehmer = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
for name, m in [
    ("Lehmer companion", companion(lehmer)),
    ("f_Y^*, n = 7", fy_matrix(7)),
    ("complex pair", companion(IntPoly([1, -2, -2, 1, 1]))),
    ("J_X^*, q = 4", jx_pullback(4)),
]:
    v = certify_irrational(m)
    print(f"{name:18s} {v.case:26s} radius {v.radius:.12f}")
    for line in v.certificate:
        print("    ", line)

# a matrix that cannot come from an automorphism is refused
try:
    certify_irrational(IntMatrix([[2, 1], [1, 1]]).scale(2))
except HypothesisError as exc:
    print("refused:", exc)

# compositions of Henon maps have integer dynamical degree
print("Henon degrees 2, 3, 5 ->", henon_delta([2, 3, 5]))
