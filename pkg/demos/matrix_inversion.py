"""
Matrix inversion and the Hadamard inverse
=========================================

J inverts every entry of a q x q matrix, I inverts the matrix itself.  Both
are involutions of degree q^2 - 1 and q - 1; their composition K = I o J is
where the interesting growth lives.
"""

import math

from dyndeg.linalg import mat_pow, spectral_radius
from dyndeg.matinv import build_I, build_J, build_K, compose, delta_K, jx_pullback
from dyndeg.oracle import degree_sequence

# degrees of the building blocks
for q in (2, 3):
    print(f"q = {q}: deg J = {build_J(q).degree}, deg I = {build_I(q).degree}")

# J o J collapses back to the identity once the common monomial is removed
J = build_J(3).map
print("J o J components:", [str(c) for c in compose(J, J).components])

# on the blowup of the coordinate points J acts by an involution on Pic
M = jx_pullback(3)
print("(J_X^*)^2 == identity:", mat_pow(M, 2) == type(M).identity(M.dim))
print("spectral radius of J_X^*:", spectral_radius(M).radius)

# deg K is q^2 - q + 1, well below the naive (q - 1)(q^2 - 1)
for q in (2, 3, 4):
    print(f"q = {q}: deg K = {build_K(q).degree}")

# dynamical degree of K against the oracle
for q in (3, 4):
    rep = degree_sequence(build_K(q, mode="oracle").map, 4, trials=3, seed=0)
    print(f"q = {q}: degrees {rep.degrees}, ratios {[round(r, 3) for r in rep.ratios]}, delta_K = {delta_K(q):.4f}")

# from q = 5 on the growth is exponential: (7 + 3 sqrt 5) / 2 at q = 5
print("delta_K(5) =", delta_K(5), "=", (7 + 3 * math.sqrt(5)) / 2)
