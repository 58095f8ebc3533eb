"""Local real heights and the global Neron-Tate height."""

import math
from fractions import Fraction

import pytest

from g2heights.arith import ord_q
from g2heights.jacobian import (
    MumfordDivisor,
    cantor_add,
    cantor_neg,
    cantor_scalar_mul,
    divisor_from_points,
    kummer_coords_primitive,
)
from g2heights.kummer import mu_symbolic
from g2heights.real_height import (
    archimedean_correction,
    is_torsion,
    lambda_canonical,
    lambda_naive,
    neron_tate,
    neron_tate_report,
    tate_limit_oracle,
)

from conftest import B_GENS, combo_divisor


def test_lambda_naive(curve_a, div_a):
    v = lambda_naive(MumfordDivisor.zero(), 4, 3, curve_a)
    assert v.coefficient == 0 and v.exact
    with pytest.raises(ValueError, match="point on Theta_i"):
        lambda_naive(divisor_from_points([(0, 1)], curve_a), 1, 3, curve_a)
    # kappa(D) = (1, -1, 0, 1): ord_2(x_4) = 0
    assert lambda_naive(div_a, 4, 2, curve_a).coefficient == 0


def test_lambda_canonical_exact_and_modular(curve_a, div_a):
    for q in curve_a.bad_primes:
        exact = lambda_canonical(div_a, 4, q, curve_a, mode="exact")
        modular = lambda_canonical(div_a, 4, q, curve_a, mode="modular")
        assert exact.coefficient == modular.coefficient
        assert exact.exact and modular.exact
    # the known value at q = 2 on this curve
    assert lambda_canonical(div_a, 4, 2, curve_a).coefficient == Fraction(-1, 2)


def test_lambda_canonical_good_prime(curve_a, div_a):
    # at a good odd prime the canonical and naive local heights agree
    for q in (3, 5, 7):
        lc = lambda_canonical(div_a, 4, q, curve_a)
        assert lc.exact and lc.coefficient == lambda_naive(div_a, 4, q, curve_a).coefficient


@pytest.mark.parametrize("m", [2, 3, 5])
def test_multiplication_identity(curve_a, div_a, m):
    # lambda^(mP) - m^2 lambda^(P) = ord_q(mu_{m,i}(x(P)) / x_i(P)^(m^2)) log q
    mD = cantor_scalar_mul(div_a, m, curve_a)
    x = kummer_coords_primitive(div_a, curve_a)
    mu = mu_symbolic(m, curve_a).evaluate(x)
    for q in curve_a.bad_primes:
        for i in (1, 2, 3, 4):
            xm = kummer_coords_primitive(mD, curve_a)
            if x[i - 1] == 0 or xm[i - 1] == 0:
                continue
            lhs = (
                lambda_canonical(mD, i, q, curve_a).coefficient
                - m * m * lambda_canonical(div_a, i, q, curve_a).coefficient
            )
            assert lhs == ord_q(Fraction(mu[i - 1], x[i - 1] ** (m * m)), q)


def test_parallelogram_identity(curve_a, div_a):
    # lambda^(P+Q) + lambda^(P-Q) - 2lambda^(P) - 2lambda^(Q)
    #   = ord_q(B_ii(x(P), x(Q)) / (x_i(P)^2 x_i(Q)^2)) log q
    from g2heights.kummer import KummerPoint, biquadratic_eval, build_form_library

    lib = build_form_library(curve_a)
    P = div_a
    Q = cantor_scalar_mul(div_a, 2, curve_a)
    xP = kummer_coords_primitive(P, curve_a)
    xQ = kummer_coords_primitive(Q, curve_a)
    B = biquadratic_eval(lib, KummerPoint(xP), KummerPoint(xQ))
    s = cantor_add(P, Q, curve_a)
    d = cantor_add(P, cantor_neg(Q), curve_a)
    for q in curve_a.bad_primes:
        for i in (1, 2, 3, 4):
            coords = [kummer_coords_primitive(T, curve_a)[i - 1] for T in (s, d)]
            if 0 in coords or xP[i - 1] == 0 or xQ[i - 1] == 0 or B[i - 1][i - 1] == 0:
                continue
            lhs = (
                lambda_canonical(s, i, q, curve_a).coefficient
                + lambda_canonical(d, i, q, curve_a).coefficient
                - 2 * lambda_canonical(P, i, q, curve_a).coefficient
                - 2 * lambda_canonical(Q, i, q, curve_a).coefficient
            )
            rhs = ord_q(
                Fraction(B[i - 1][i - 1], xP[i - 1] ** 2 * xQ[i - 1] ** 2), q
            )
            assert lhs == rhs


def test_archimedean_correction(curve_a, div_a):
    a0 = archimedean_correction(div_a, 0, curve_a)
    assert a0.value == 0.0 and a0.error_bound > 0
    a12 = archimedean_correction(div_a, 12, curve_a)
    a16 = archimedean_correction(div_a, 16, curve_a)
    assert abs(a16.value - a12.value) <= a12.error_bound
    assert a16.error_bound < 1e-9


def test_is_torsion(curve_roots, curve_a, div_a):
    assert is_torsion(MumfordDivisor.zero(), curve_a)
    T = divisor_from_points([(0, 0), (1, 0)], curve_roots)
    assert is_torsion(T, curve_roots)
    assert not is_torsion(div_a, curve_a)


def test_neron_tate(curve_a, div_a):
    v = neron_tate(div_a, 1e-6, curve_a)
    assert abs(v - tate_limit_oracle(div_a, 10, curve_a)) < 1e-4
    v2 = neron_tate(cantor_scalar_mul(div_a, 2, curve_a), 1e-6, curve_a)
    assert abs(v2 - 4 * v) < 2e-6
    with pytest.raises(ValueError, match="resource guard"):
        tate_limit_oracle(div_a, 13, curve_a)


def test_neron_tate_torsion(curve_roots):
    T = divisor_from_points([(0, 0), (1, 0)], curve_roots)
    assert neron_tate(T, 1e-6, curve_roots) == 0.0


def test_report_schema(curve_a, div_a):
    rep = neron_tate_report(div_a, 1e-6, curve_a)
    assert set(rep) == {"value", "error_bound", "places"}
    finite = [p for p in rep["places"] if p["q"] != "inf"]
    assert {p["q"] for p in finite} >= set(curve_a.bad_primes)
    for p in finite:
        assert p["naive"].endswith(f"log {p['q']}") and isinstance(p["exact"], bool)
    assert rep["places"][-1]["q"] == "inf"


def test_cross_index_global_sum(curve_b):
    # sum over all places of the canonical local height is index-independent
    P = combo_divisor(curve_b, B_GENS, (1, 1, 0))
    x = kummer_coords_primitive(P, curve_b)

    def total(i):
        acc = 0.0
        xi = abs(x[i - 1])
        for q in curve_b.bad_primes:
            acc += lambda_canonical(P, i, q, curve_b).value
        rest = xi
        for q in curve_b.bad_primes:
            while rest % q == 0:
                rest //= q
        acc += math.log(rest)  # naive parts at the remaining good primes
        acc += math.log(max(abs(c) for c in x) / xi)  # archimedean naive part
        acc += archimedean_correction(P, 16, curve_b).value
        return acc

    vals = [total(i) for i in (1, 2, 3, 4) if x[i - 1] != 0]
    assert max(vals) - min(vals) < 1e-9
    assert abs(vals[0] - neron_tate(P, 1e-6, curve_b)) < 1e-6
