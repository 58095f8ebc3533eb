"""The canonical real (Neron-Tate) height as a sum of local terms.

At each finite prime q the naive local height ord_q(x_i) log q is corrected
by a geometric series of duplication contents; at a good odd prime where
the point has unit content the correction vanishes and the naive value is
already canonical.  The archimedean place contributes a rapidly convergent
series with a rigorous tail bound.  This script prints the full local
breakdown and checks the global value against the doubling limit.
"""

import math

from g2heights import (
    Genus2Curve,
    cantor_scalar_mul,
    divisor_from_points,
    is_torsion,
    lambda_canonical,
    lambda_naive,
    neron_tate,
    neron_tate_report,
    tate_limit_oracle,
)

# y^2 = x^5 + 2x^3 + 2x^2 - x + 1, bad primes 2 and 28789
curve = Genus2Curve(1, -1, 2, 2, 0)
P = divisor_from_points([(-1, 1), (0, 1)], curve)
print("curve: y^2 = x^5 + 2x^3 + 2x^2 - x + 1")
print("bad primes:", sorted(curve.bad_primes))
print("P =", P, " torsion:", is_torsion(P, curve))

# Local heights at the bad primes: canonical vs naive.
print("\nlocal heights (coefficient of log q, fourth coordinate):")
for q in sorted(curve.bad_primes):
    naive = lambda_naive(P, 4, q, curve)
    canon = lambda_canonical(P, 4, q, curve)
    print(f"  q = {q:6d}: naive {naive.coefficient}, canonical {canon.coefficient}")

# At a good odd prime the two agree.
for q in (3, 5):
    assert lambda_canonical(P, 4, q, curve).coefficient == lambda_naive(P, 4, q, curve).coefficient
print("canonical = naive at the good primes 3 and 5")

# The global height with its per-place report.
rep = neron_tate_report(P, 1e-8, curve)
print(f"\nglobal height  h(P) = {rep['value']:.10f}  (error <= {rep['error_bound']:.2e})")
for place in rep["places"]:
    print(f"  q = {place['q']}: naive {place['naive']}, correction {place['correction']}")

# Sanity checks: the doubling limit 4^-n log N(2^n P) converges to the same
# value, and the height is a quadratic form.
v = rep["value"]
print("\nTate doubling limit at n = 10:", f"{tate_limit_oracle(P, 10, curve):.10f}")
v2 = neron_tate(cantor_scalar_mul(P, 2, curve), 1e-8, curve)
print("h(2P) / h(P) =", v2 / v)

# Torsion classes have height zero on the nose.
troots = Genus2Curve(0, 60, -112, 65, -14)  # roots 0, 1, 2, 5, 6
T = divisor_from_points([(0, 0), (1, 0)], troots)
print("\n2-torsion class on the roots curve:", T)
print("is_torsion:", is_torsion(T, troots), " h(T) =", neron_tate(T, 1e-8, troots))
assert math.isclose(v2, 4 * v, rel_tol=1e-6)
