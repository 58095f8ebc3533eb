"""Membership certification and the naive/canonical p-adic heights."""

from fractions import Fraction

import pytest

from g2heights.arith import PadicApprox
from g2heights.jacobian import (
    MumfordDivisor,
    cantor_scalar_mul,
    divisor_from_points,
)
from g2heights.kummer import KummerPoint, build_form_library, kummer_map, mu_symbolic
from g2heights.padic_height import (
    canonical_height,
    canonical_height_on_Jp,
    certify,
    height_pairing,
    naive_height,
    naive_limit_oracle,
    regulator,
    u_value,
)

from conftest import B_GENS, combo_divisor


def test_certify_examples(curve_roots, curve_b, jp_point):
    O = MumfordDivisor.zero()
    cert = certify(O, 7, curve_roots)
    assert cert.in_J1 and cert.in_all_Uq and cert.in_Jp and cert.gcd_delta == 1
    # a theta point whose kappa is [0:1:3:9]: 7 does not divide x_2 = 1
    D1 = divisor_from_points([(3, 6)], curve_roots)
    assert not certify(D1, 7, curve_roots).in_J1
    # kernel-of-reduction points have a p-unit fourth coordinate
    P = jp_point(3)
    cert = certify(P, 3, curve_b)
    assert cert.in_Jp
    assert kummer_map(P, curve_b).coords[3] % 3 != 0
    with pytest.raises(ValueError):
        certify(O, 2, curve_roots)


def test_certificate_json(curve_b, jp_point):
    d = certify(jp_point(3), 3, curve_b).to_json()
    assert d == {"p": 3, "in_J1": True, "gcd_delta": "1", "in_all_Uq": True, "in_Jp": True}


def test_naive_height(curve_b, jp_point):
    assert naive_height(MumfordDivisor.zero(), 3, 8, curve_b).is_zero()
    P = jp_point(3)
    H = naive_height(P, 3, 8, curve_b)
    x4 = kummer_map(P, curve_b).coords[3]
    assert not H.is_zero() and H.abs_prec == 8
    with pytest.raises(ValueError, match="undefined outside"):
        naive_height(divisor_from_points([(1, 2)], curve_b), 3, 8, curve_b)


def test_u_value(curve_b, jp_point):
    p, M = 3, 14
    lib = build_form_library(curve_b)
    one = PadicApprox.from_rational(1, p, M)
    # the identity gives exactly 1
    assert u_value(KummerPoint((0, 0, 0, 1), (p, M)), p, curve_b).same_value(one)
    P = jp_point(p)
    x = kummer_map(P, curve_b).coords
    a = KummerPoint(x, (p, M)).pivot_normalized()
    u = u_value(a, p, curve_b)
    assert (u - one).val >= 4
    # exact rational oracle: mu_{p,4}(x) / x4^(p^2)
    mu = mu_symbolic(p, curve_b).evaluate(x)
    want = PadicApprox.from_rational(Fraction(mu[3], x[3] ** (p * p)), p, M)
    assert u.same_value(want)
    with pytest.raises(ValueError):
        u_value(KummerPoint(x, (p, M)), p, curve_b)  # not pivot-normalized


def test_canonical_height_on_Jp(curve_b, jp_point):
    p, N = 3, 12
    P = jp_point(p)
    hv = canonical_height_on_Jp(P, p, N, curve_b)
    assert hv.certified_prec == N
    assert hv.trace == tuple(2 * (n + 1) for n in range(hv.n_max + 1))
    # first correction term forces ord >= 2
    H = naive_height(P, p, N, curve_b)
    assert (hv.value - H).val >= 2
    # agreement with the exact-limit oracle
    o = naive_limit_oracle(P, p, 2, curve_b, prec=10)
    d = hv.value - o
    assert d.is_zero() or d.val >= 6
    # identity class
    assert canonical_height_on_Jp(MumfordDivisor.zero(), p, N, curve_b).value.is_zero()


def test_naive_limit_oracle_cauchy(curve_b, jp_point):
    p = 3
    P = jp_point(p)
    terms = [naive_limit_oracle(P, p, n, curve_b, prec=10) for n in range(3)]
    for n in range(2):
        assert (terms[n + 1] - terms[n]).val >= 2 * (n + 1)
    with pytest.raises(ValueError, match="resource guard"):
        naive_limit_oracle(P, 7, 4, curve_b)


def test_precision_stability(curve_b, jp_point):
    P = jp_point(3)
    low = canonical_height_on_Jp(P, 3, 8, curve_b)
    high = canonical_height_on_Jp(P, 3, 14, curve_b)
    assert high.value.truncate(8).same_value(low.value)


def test_canonical_height_extension(curve_b):
    p, N = 3, 10
    D = divisor_from_points([(1, 2)], curve_b)  # not itself in J_3
    assert not certify(D, p, curve_b).in_Jp
    h = canonical_height(D, p, N, curve_b)
    # quadraticity through the multiplier: h(2D) = 4 h(D)
    h2 = canonical_height(cantor_scalar_mul(D, 2, curve_b), p, N, curve_b)
    four = PadicApprox.from_rational(4, p, N + 2)
    assert (h2.value - h.value * four).is_zero()
    with pytest.raises(ValueError, match="no J_p multiple"):
        canonical_height(D, p, N, curve_b, m_max=2)


def test_multiplier_independence(curve_b, jp_point):
    p, N = 3, 10
    P = jp_point(p)
    h1 = canonical_height_on_Jp(P, p, N, curve_b).value
    # the same height through the multiple 2P, rescaled by 1/4
    h2 = canonical_height_on_Jp(cantor_scalar_mul(P, 2, curve_b), p, N, curve_b).value
    quarter = PadicApprox.from_rational(Fraction(1, 4), p, N + 2)
    assert (h2 * quarter).truncate(N).same_value(h1.truncate(N))


def test_torsion_height_is_zero(curve_roots):
    T = divisor_from_points([(0, 0), (1, 0)], curve_roots)
    hv = canonical_height(T, 7, 8, curve_roots)
    assert hv.value.is_zero() and hv.value.abs_prec == 8


def test_pairing_and_regulator(curve_b):
    p, N = 3, 8
    P = combo_divisor(curve_b, B_GENS, (1, 0, 0))
    Q = combo_divisor(curve_b, B_GENS, (0, 1, 0))
    O = MumfordDivisor.zero()
    assert height_pairing(P, O, p, N, curve_b).is_zero()
    pq = height_pairing(P, Q, p, N, curve_b)
    assert pq.same_value(height_pairing(Q, P, p, N, curve_b))
    hP = canonical_height(P, p, N, curve_b).value
    assert height_pairing(P, P, p, N, curve_b).same_value(hP.truncate(N))
    # degenerate Gram matrix for dependent points
    assert regulator([P, cantor_scalar_mul(P, 2, curve_b)], p, 6, curve_b).is_zero()
    assert regulator([P], p, 6, curve_b).same_value(hP.truncate(6))
    with pytest.raises(ValueError):
        regulator([], p, 6, curve_b)


def test_height_value_json(curve_b, jp_point):
    hv = canonical_height_on_Jp(jp_point(3), 3, 8, curve_b)
    d = hv.to_json()
    assert d["p"] == 3 and d["certified_prec"] == 8 and d["n_max"] == hv.n_max
    assert PadicApprox.from_json(d["value"]) == hv.value
