"""
Monomial maps and their dynamical degrees
=========================================

A monomial map sends x to x^A for an integer matrix A.  Its degrees along
iteration are governed by the eigenvalues of A.
"""

import numpy as np

from dyndeg.linalg import IntMatrix, mat_pow
from dyndeg.monomial import (
    degp_matrix,
    delta_via_limit,
    dynamical_degrees,
    log_concavity_check,
    projectivize,
)
from dyndeg.oracle import degree_sequence

# the worked example: A = [[1, -1], [-2, -3]]
A = IntMatrix([[1, -1], [-2, -3]])
spec = projectivize(A)
print("f_A on P^2:", "[" + " : ".join(map(str, spec.components)) + "]")
print("deg_1 =", spec.degree)
print("Deg_1 =", degp_matrix(A, 1).tolist())

# delta_p is the product of the p largest eigenvalue moduli
deltas = dynamical_degrees(A)
print("delta_1, delta_2 =", deltas)

# the finite-N root of ||wedge^p A^N|| creeps up towards delta_p; the error
# shrinks like log(C) / N, so N = 30 is only good to a couple of percent
for N in (10, 30, 100, 300):
    print(f"N = {N:3d}: {delta_via_limit(A, 1, N):.6f}")

# the line oracle sees the same first degrees without knowing A
rep = degree_sequence(spec, 6, trials=3, seed=0)
print("oracle degrees:", rep.degrees)
print("deg of projectivized A^n:", [projectivize(mat_pow(A, n)).degree for n in range(1, 7)])

# log-concavity across p for a random 4 x 4 example
rng = np.random.default_rng(1)
while True:
    B = IntMatrix(rng.integers(-3, 4, (4, 4)).tolist())
    if B.det():
        break
d = [1.0] + dynamical_degrees(B)
print("delta_0..4 =", [round(x, 4) for x in d], "log-concave:", log_concavity_check(d)[0])
