"""A tour of the Kummer-surface layer.

The Kummer surface is the quotient J/{+-1} of a genus-2 Jacobian, embedded
in P^3.  Group addition does not descend to it, but duplication and the
"pseudo-addition" of {P+Q, P-Q} do, and multiplication-by-m is realised by
four homogeneous polynomials of degree m^2.  This script walks through all
of those pieces on one small curve.
"""

from fractions import Fraction

from g2heights import (
    Genus2Curve,
    KummerPoint,
    biquadratic_eval,
    build_form_library,
    cantor_add,
    cantor_neg,
    cantor_scalar_mul,
    delta_eval,
    divisor_from_points,
    kummer_map,
    mu_pair_ladder,
    mu_symbolic,
)

# y^2 = x^5 + x^4 - 3x^3 + 2x^2 + x + 2
curve = Genus2Curve(2, 1, 2, -3, 1)
print("curve: y^2 = x^5 + x^4 - 3x^3 + 2x^2 + x + 2")
print("bad primes:", sorted(curve.bad_primes))

# Divisor classes in Mumford representation, built from affine points.
P = divisor_from_points([(-2, 4), (1, 2)], curve)
Q = divisor_from_points([(2, 6), (1, -2)], curve)
print("\nP  =", P)
print("Q  =", Q)

# The Kummer map sends a class to a projective 4-tuple.
kP = kummer_map(P, curve)
kQ = kummer_map(Q, curve)
print("kappa(P) =", kP.coords)
print("kappa(Q) =", kQ.coords)

# The form library instantiates the defining quartic G, the duplication
# quartics delta, and the biquadratic forms B_ij at this curve.  It is
# validated against Cantor arithmetic before use.
lib = build_form_library(curve)

# Duplication: delta(kappa(P)) is projectively kappa(2P).
d = delta_eval(lib, kP).primitive()
k2P = kummer_map(cantor_scalar_mul(P, 2, curve), curve)
print("\ndelta(kappa(P)) =", d.coords)
print("kappa(2P)       =", k2P.coords)

# Pseudo-addition: the biquadratic forms compute the symmetrised coordinates
# of the unordered pair {P+Q, P-Q}:
#   z_i w_j + z_j w_i = 2c * B_ij(kappa(P), kappa(Q)).
z = kummer_map(cantor_add(P, Q, curve), curve).coords
w = kummer_map(cantor_add(P, cantor_neg(Q), curve), curve).coords
B = biquadratic_eval(lib, kP, kQ)
c = Fraction(z[3] * w[3], B[3][3])
checks = [
    Fraction(z[i] * w[j] + z[j] * w[i]) == 2 * c * B[i][j]
    for i in range(4)
    for j in range(4)
]
print("\nbiquadratic identity holds at all 16 entries:", all(checks))

# Multiplication-by-m, two ways.  mu_symbolic builds the four degree-m^2
# polynomials once per curve; mu_pair_ladder evaluates the pair
# (mu_m, mu_{m+1}) at a single point by a Montgomery-style ladder.
x = kP.coords
for m in (3, 7):
    sym = mu_symbolic(m, curve).evaluate(x)
    pivot = KummerPoint(tuple(Fraction(c_, x[3]) for c_ in x), None, "pivot")
    lad, _ = mu_pair_ladder(lib, pivot, m)
    scale = Fraction(x[3]) ** (m * m)
    kmP = kummer_map(cantor_scalar_mul(P, m, curve), curve).coords
    print(f"\nmu_{m}(kappa(P)) projectively equals kappa({m}P):",
          all(sym[i] * kmP[3] == sym[3] * kmP[i] for i in range(4)))
    print(f"ladder and symbolic values agree at m = {m}:",
          tuple(c_ * scale for c_ in lad) == sym)
