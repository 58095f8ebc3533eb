"""Shared fixtures: reference curves, divisors and point inventories.

CURVE_ROOTS  y^2 = x(x-1)(x-2)(x-5)(x-6): all Weierstrass points rational,
             used for theta/torsion cases (good reduction at 7).
CURVE_A      y^2 = x^5 + 2x^3 + 2x^2 - x + 1 with the class
             D = [(-1,1) + (0,1) - 2*inf]; its J_p multipliers at p = 3, 5, 7
             are 6, 4, 4 — small enough for exact-limit oracles.
CURVE_B      y^2 = x^5 + x^4 - 3x^3 + 2x^2 + x + 2 with generators at
             x = -2, 1, 2: its lattice contains many J_p points with tiny
             coordinates (JP3_COMBOS lists twenty for p = 3, distinct up to
             sign, primitive coordinates from 2 to 17 digits).
"""


import pytest

from g2heights.jacobian import (
    Genus2Curve,
    MumfordDivisor,
    cantor_add,
    cantor_neg,
    divisor_from_points,
)

CURVE_ROOTS = (0, 60, -112, 65, -14)
CURVE_A = (1, -1, 2, 2, 0)
CURVE_B = (2, 1, 2, -3, 1)

# generators of CURVE_B's lattice: x-coordinates of small rational points
B_GENS = [(-2, 4), (1, 2), (2, 6)]

# twenty J_3 members a*G1 + b*G2 + c*G3 on CURVE_B, smallest coordinates first
JP3_COMBOS = [
    (-1, -1, 0), (0, 0, -2), (-2, 2, 1), (-1, 3, 1), (-2, 2, -1),
    (-1, -1, -2), (-1, -1, 2), (-1, 3, -1), (-3, 1, 1), (-2, -2, 0),
    (-3, 1, -1), (-1, 3, 3), (-2, -2, -2), (-2, 2, 3), (-2, -2, 2),
    (-3, 1, 3), (-2, 2, -3), (-3, 1, -3), (-1, 3, -3), (-3, -3, 0),
]

# a small J_p member of CURVE_B's lattice for each p
JP_SMALL = {3: (-1, -1, 0), 5: (-3, 2, -1), 7: (-3, 3, 1)}


def combo_divisor(curve, gens, combo):
    """The class sum(c_i * [G_i - inf]) for generators G_i and integers c_i."""
    acc = MumfordDivisor.zero()
    for c, pt in zip(combo, gens):
        G = divisor_from_points([pt], curve)
        if c < 0:
            G, c = cantor_neg(G), -c
        for _ in range(c):
            acc = cantor_add(acc, G, curve)
    return acc


@pytest.fixture(scope="session")
def curve_roots():
    return Genus2Curve(*CURVE_ROOTS)


@pytest.fixture(scope="session")
def curve_a():
    return Genus2Curve(*CURVE_A)


@pytest.fixture(scope="session")
def curve_b():
    return Genus2Curve(*CURVE_B)


@pytest.fixture(scope="session")
def div_a(curve_a):
    return divisor_from_points([(-1, 1), (0, 1)], curve_a)


@pytest.fixture(scope="session")
def jp3_points(curve_b):
    return [combo_divisor(curve_b, B_GENS, t) for t in JP3_COMBOS]


@pytest.fixture(scope="session")
def jp_point(curve_b):
    def get(p):
        return combo_divisor(curve_b, B_GENS, JP_SMALL[p])

    return get
