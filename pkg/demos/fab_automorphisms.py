"""
Automorphisms from the family f(x, y) = (y, (y + a) / (x + b))
===============================================================

Generic parameters give degree growth at the plastic number rate.  When
the orbit of the exceptional image lands on the indeterminacy point after n
steps, blowing up that orbit turns f into an automorphism whose dynamical
degree is the largest root of chi_n.
"""

from dyndeg.fab import chi_formula, fab_spec, fx_matrix, fy_matrix, lambda_n, vn_points_mod_p, vn_search
from dyndeg.linalg import charpoly, mat_pow
from dyndeg.oracle import PRIMES, degree_sequence

# generic parameters over a large prime: degrees follow f_X^*
p = PRIMES[3]
rep = degree_sequence(fab_spec(12345, 67890, p), 10, trials=3, seed=0)
print("oracle:", rep.degrees)
print("f_X^* :", [mat_pow(fx_matrix(), n)[0, 0] for n in range(11)])

# the characteristic polynomial of f_Y^* on Pic(Y)
for n in (0, 3, 7):
    print(f"n = {n}: chi_n = {chi_formula(n)}; charpoly(f_Y^*) agrees: {charpoly(fy_matrix(n)) == chi_formula(n)}")

# chi_n has a root above 1 only from n = 7 on
for n in range(5, 12):
    r = lambda_n(n)
    print(f"lambda_{n} = {r.value:.10f}", "(exactly 1)" if r.is_one else f"in [{float(r.lo):.12f}, {float(r.hi):.12f}]")

# parameters in V_7 over C, found by Newton's method
for c in vn_search(7, seed=0)[:4]:
    print("V_7 candidate:", c.to_json())

# parameters in V_3 over F_1021: the oracle degrees now follow f_Y^*
a, b = vn_points_mod_p(3, 1021)[0]
rep = degree_sequence(fab_spec(a, b, 1021), 8, trials=3, seed=0)
print(f"(a, b) = ({a}, {b}) mod 1021:", rep.degrees)
print("f_Y^* (n = 3):", [mat_pow(fy_matrix(3), m)[0, 0] for m in range(9)])
