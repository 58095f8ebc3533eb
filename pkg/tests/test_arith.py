"""Exact rational services and precision-tracked p-adic arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2heights.arith import PadicApprox, content_and_primitive, iwasawa_log, ord_q

P = 7

nonzero_rationals = st.fractions(
    min_value=-10**6, max_value=10**6, max_denominator=10**6
).filter(lambda x: x != 0)


def test_ord_q():
    assert ord_q(Fraction(98, 3), 7) == 2
    assert ord_q(Fraction(3, 49), 7) == -2
    assert ord_q(5, 7) == 0
    with pytest.raises(ValueError):
        ord_q(0, 7)


def test_content_and_primitive():
    g, prim = content_and_primitive((6, -9, 0, 12))
    assert g == 3 and prim == (2, -3, 0, 4)
    # first nonzero entry is made positive
    assert content_and_primitive((-2, 4, 0, 0))[1] == (1, -2, 0, 0)
    with pytest.raises(ValueError):
        content_and_primitive((0, 0, 0, 0))


def test_padic_roundtrip():
    x = Fraction(22, 15)
    a = PadicApprox.from_rational(x, P, 12)
    assert a.abs_prec == 12
    assert PadicApprox.from_rational(a.lift(), P, 12).same_value(a)
    b = PadicApprox.from_json(a.to_json())
    assert b == a


def test_padic_zero_and_valuation():
    z = PadicApprox.zero(P, 5)
    assert z.is_zero() and z.abs_prec == 5
    with pytest.raises(ValueError):
        z.valuation()
    a = PadicApprox.from_rational(Fraction(49, 3), P, 9)
    assert a.valuation() == 2


def test_exact_cancellation_keeps_precision():
    a = PadicApprox.from_rational(Fraction(5, 3), P, 10)
    d = a - a
    assert d.is_zero() and d.abs_prec == 10


def test_division_and_truncate():
    a = PadicApprox.from_rational(Fraction(5, 3), P, 10)
    b = PadicApprox.from_rational(7, P, 10)
    q = a / b
    assert q.val == -1
    assert q.truncate(3).abs_prec == 3
    with pytest.raises(ZeroDivisionError):
        a / PadicApprox.zero(P, 10)


@given(x=nonzero_rationals, y=nonzero_rationals)
@settings(max_examples=60, deadline=None)
def test_ring_homomorphism(x, y):
    k = 15
    fx = PadicApprox.from_rational(x, P, k)
    fy = PadicApprox.from_rational(y, P, k)
    assert (fx + fy).same_value(PadicApprox.from_rational(x + y, P, k))
    assert (fx * fy).truncate(k).same_value(PadicApprox.from_rational(x * y, P, k))


@given(x=nonzero_rationals.filter(lambda v: ord_q(v, P) == 0))
@settings(max_examples=60, deadline=None)
def test_log_unit_containment(x):
    # log_p maps 1 + p^k Z_p into p^k Z_p
    k = 12
    t = 1 + P**3 * x
    v = iwasawa_log(t, P, k)
    assert v.is_zero() or v.val >= 3


@given(x=nonzero_rationals, y=nonzero_rationals)
@settings(max_examples=40, deadline=None)
def test_log_homomorphism(x, y):
    k = 15
    lx = iwasawa_log(x, P, k)
    ly = iwasawa_log(y, P, k)
    assert (lx + ly).same_value(iwasawa_log(x * y, P, k))


def test_log_branch_and_sign():
    assert iwasawa_log(P, P, 20).is_zero()
    assert iwasawa_log(-1, P, 20).is_zero()
    assert iwasawa_log(1, P, 20).is_zero()
    # ord(log(u)) = ord(u - 1) for u = 1 mod p
    u = 1 + 3 * P**2
    assert iwasawa_log(u, P, 15).val == 2


def test_padic_guards():
    with pytest.raises(ValueError):
        PadicApprox(2, 0, 1, 5)  # p must be odd
    with pytest.raises(ValueError):
        iwasawa_log(0, P, 5)
    with pytest.raises(ValueError):
        iwasawa_log(Fraction(1, 2), P, 0)
