"""Canonical p-adic heights, step by step.

The naive p-adic height H_p(P) = log_p(x_4(P)) is defined on a finite-index
subgroup J_p of the rational points (p odd, good reduction).  The canonical
height h_p is the unique quadratic form agreeing with the limit of
H_p(p^n P)/p^(2n); it extends to the whole group through any multiple that
lands in J_p.  This script certifies membership, computes both heights, and
checks the quadratic-form identities.
"""

from g2heights import (
    Genus2Curve,
    canonical_height,
    cantor_add,
    cantor_scalar_mul,
    certify,
    divisor_from_points,
    height_pairing,
    naive_height,
    regulator,
)

curve = Genus2Curve(2, 1, 2, -3, 1)
p, N = 3, 12
print(f"curve: y^2 = x^5 + x^4 - 3x^3 + 2x^2 + x + 2,  p = {p}, precision {N}")

# A point of the subgroup J_3: it reduces to the identity mod 3 and has
# unit duplication content at every prime.
G1 = divisor_from_points([(-2, 4)], curve)
G2 = divisor_from_points([(1, 2)], curve)
P = cantor_add(cantor_scalar_mul(G1, -1, curve), cantor_scalar_mul(G2, -1, curve), curve)
cert = certify(P, p, curve)
print("\nmembership certificate:", cert.to_json())

H = naive_height(P, p, N, curve)
hv = canonical_height(P, p, N, curve)
print("naive height    H_p(P) =", H)
print("canonical height h_p(P) =", hv.value)
print("correction h_p - H_p has valuation", (hv.value - H).val, "(always >= 2)")

# Quadraticity: h_p(2P) = 4 h_p(P), exactly to the certified precision.
h2 = canonical_height(cantor_scalar_mul(P, 2, curve), p, N, curve)
from g2heights import PadicApprox  # noqa: E402  (narrative order)

four = PadicApprox.from_rational(4, p, N + 2)
print("\nh_p(2P) - 4 h_p(P) =", h2.value - hv.value * four)

# The height extends off J_p through a multiple.  D itself is not in J_3:
D = divisor_from_points([(1, 2)], curve)
print("\nD = [(1,2) - inf] is in J_3:", certify(D, p, curve).in_Jp)
hD = canonical_height(D, p, N, curve)
print("h_p(D) via the first J_3 multiple:", hD.value)

# Bilinear pairing and regulator of a point set.
pair = height_pairing(P, D, p, 8, curve)
print("\n<P, D> =", pair)
print("symmetric:", pair.same_value(height_pairing(D, P, p, 8, curve)))
reg = regulator([P, D], p, 6, curve)
print("regulator of {P, D} =", reg)
