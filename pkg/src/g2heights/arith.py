"""Exact rational arithmetic services and precision-tracked p-adic numbers.

Rationals are plain ``fractions.Fraction`` (or ``int``).  A PadicApprox is a
p-adic number known to a certified absolute precision: it represents
u * p^v + O(p^(v+k)).  All operations are pure; precision propagation is
conservative (never reports more digits than are justified).
"""

from __future__ import annotations

import math
from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


def ord_q(x, q: int) -> int:
    """Exponent of the prime q in the nonzero rational x."""
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    v = 0
    n = x.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = x.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


def content_and_primitive(v):
    """gcd of a 4-tuple of integers and the primitive rescaling.

    The primitive vector is normalised so that its first nonzero entry is
    positive.  Raises on the all-zero vector.
    """
    v = tuple(int(c) for c in v)
    if len(v) != 4:
        raise ValueError("expected a 4-tuple")
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        raise ValueError("all-zero vector has no primitive part")
    prim = tuple(c // g for c in v)
    for c in prim:
        if c:
            if c < 0:
                prim = tuple(-x for x in prim)
            break
    return g, prim


class PadicApprox:
    """A p-adic number u*p^v + O(p^(v+k)) with p an odd prime.

    The distinguished zero (mantissa 0) represents 0 + O(p^val); it carries
    prec = 0.  For nonzero values 0 < mantissa < p^prec and p does not
    divide mantissa.
    """

    __slots__ = ("p", "val", "mantissa", "prec")

    def __init__(self, p, val, mantissa, prec):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd prime")
        if mantissa == 0:
            self.p, self.val, self.mantissa, self.prec = p, val, 0, 0
            return
        if prec <= 0:
            raise ValueError("certified precision underflow")
        mantissa %= p**prec
        if mantissa == 0:
            self.p, self.val, self.mantissa, self.prec = p, val + prec, 0, 0
            return
        # strip p-powers that leaked into the mantissa
        while mantissa % p == 0:
            mantissa //= p
            val += 1
            prec -= 1
            if prec <= 0:
                self.p, self.val, self.mantissa, self.prec = p, val + prec, 0, 0
                return
        self.p, self.val, self.mantissa, self.prec = p, val, mantissa, prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p, abs_prec):
        return cls(p, abs_prec, 0, 1)

    @classmethod
    def from_rational(cls, x, p, abs_prec):
        """Exact rational x to absolute precision p^abs_prec."""
        x = _as_fraction(x)
        if x == 0:
            return cls.zero(p, abs_prec)
        v = ord_q(x, p)
        k = abs_prec - v
        if k <= 0:
            return cls.zero(p, abs_prec)
        u = x / Fraction(p) ** v
        m = u.numerator * pow(u.denominator, -1, p**k) % p**k
        return cls(p, v, m, k)

    # -- inspection ---------------------------------------------------

    def is_zero(self):
        return self.mantissa == 0

    @property
    def abs_prec(self):
        return self.val + self.prec

    def unit_lift(self):
        """Integer lift of the unit part (0 for the distinguished zero)."""
        return self.mantissa

    def lift(self):
        """Rational lift u*p^val of the approximation."""
        if self.mantissa == 0:
            return Fraction(0)
        return Fraction(self.mantissa) * Fraction(self.p) ** self.val

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, PadicApprox):
            raise TypeError("expected PadicApprox")
        if other.p != self.p:
            raise ValueError("mixed primes")

    def __add__(self, other):
        self._check(other)
        p = self.p
        n = min(self.abs_prec, other.abs_prec)
        if self.is_zero() and other.is_zero():
            return PadicApprox.zero(p, n)
        v = min(
            x.val for x in (self, other) if not x.is_zero()
        )
        if n - v <= 0:
            return PadicApprox.zero(p, n)
        m = p ** (n - v)
        s = 0
        for x in (self, other):
            if not x.is_zero():
                s += x.mantissa * p ** (x.val - v)
        s %= m
        if s == 0:
            return PadicApprox.zero(p, n)
        return PadicApprox(p, v, s, n - v)

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicApprox(self.p, self.val, -self.mantissa % self.p**self.prec, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.p
        if self.is_zero() or other.is_zero():
            # |xy|_p <= p^-(val_x + absprec_zero)
            zs = [x for x in (self, other) if x.is_zero()]
            vs = [x.abs_prec if x.is_zero() else x.val for x in (self, other)]
            del zs
            return PadicApprox.zero(p, vs[0] + vs[1])
        k = min(self.prec, other.prec)
        return PadicApprox(p, self.val + other.val, self.mantissa * other.mantissa, k)

    def __truediv__(self, other):
        self._check(other)
        p = self.p
        if other.is_zero():
            raise ZeroDivisionError("division by (p-adically indistinguishable from) zero")
        if self.is_zero():
            n = self.abs_prec - other.val
            if n <= 0:
                raise ValueError("certified precision underflow in division")
            return PadicApprox.zero(p, n)
        k = min(self.prec, other.prec)
        inv = pow(other.mantissa, -1, p**k)
        return PadicApprox(p, self.val - other.val, self.mantissa * inv, k)

    def scale_p_power(self, e):
        """Multiply by the exact unit-free power p^e (no precision cost)."""
        if self.is_zero():
            return PadicApprox.zero(self.p, self.val + e)
        return PadicApprox(self.p, self.val + e, self.mantissa, self.prec)

    def truncate(self, abs_prec):
        """Forget digits beyond p^abs_prec."""
        if abs_prec >= self.abs_prec:
            return self
        if self.is_zero() or abs_prec <= self.val:
            return PadicApprox.zero(self.p, abs_prec)
        k = abs_prec - self.val
        return PadicApprox(self.p, self.val, self.mantissa % self.p**k, k)

    def same_value(self, other):
        """True when self and other agree at the shared certified precision."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, PadicApprox):
            return NotImplemented
        return (
            self.p == other.p
            and self.val == other.val
            and self.mantissa == other.mantissa
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.p, self.val, self.mantissa, self.prec))

    def valuation(self):
        """ord_p of the value; raises if the value is indistinguishable from 0."""
        if self.is_zero():
            raise ValueError("valuation of (indistinguishable from) zero undefined")
        return self.val

    # -- serialization ------------------------------------------------

    def to_json(self):
        return {
            "p": self.p,
            "val": self.val,
            "mantissa": str(self.mantissa),
            "prec": self.prec,
        }

    @classmethod
    def from_json(cls, d):
        x = cls(d["p"], d["val"], int(d["mantissa"]), max(1, d["prec"]))
        if int(d["mantissa"]) == 0:
            return cls(d["p"], d["val"], 0, 1)
        return x

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.abs_prec})"
        return f"{self.mantissa}*{self.p}^{self.val} + O({self.p}^{self.abs_prec})"


def _ilog(n, p):
    k = 0
    while p**(k + 1) <= n:
        k += 1
    return k


def iwasawa_log(x, p: int, k: int) -> PadicApprox:
    """Iwasawa p-adic logarithm of the nonzero rational x, mod p^k.

    The p-power part of x contributes 0 (log_p(p) = 0).  The unit part u is
    mapped to log(u^(p-1))/(p-1) with u^(p-1) in 1 + pZ_p, and the series
    log(1+t) = sum (-1)^(n+1) t^n / n is truncated at the first n for which
    every further term has ord_p at least k: term n has ord_p >= n*w - log_p(n)
    with w = ord_p(t) >= 1, so we stop once n*w - ilog_p(n) >= k.
    """
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("log of zero undefined")
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be odd")
    if k <= 0:
        raise ValueError("precision must be positive")
    v = ord_q(x, p)
    u = x / Fraction(p) ** v
    # guard digits for the divisions by n inside the series
    n_bound = 2
    while n_bound - _ilog(n_bound, p) < k:
        n_bound += 1
    guard = _ilog(n_bound, p) + 1
    K = k + guard
    pK = p**K
    um = u.numerator * pow(u.denominator, -1, pK) % pK
    t = (pow(um, p - 1, pK) - 1) % pK
    if t == 0:
        return PadicApprox.zero(p, k)
    w = 0
    tt = t
    while tt % p == 0:
        tt //= p
        w += 1
    acc = 0
    tn = 1
    n = 0
    while True:
        n += 1
        if n > 1 and (n * w - _ilog(n, p)) >= k and ((n - 1) * w - _ilog(max(n - 1, 1), p)) >= k:
            break
        tn = tn * t % pK
        a = 0
        nn = n
        while nn % p == 0:
            nn //= p
            a += 1
        term = tn * pow(nn, -1, pK) % pK
        assert term % p**a == 0, "series term lost exactness"
        term //= p**a
        if n % 2 == 0:
            term = -term
        acc = (acc + term) % pK
        if n * w - _ilog(n, p) >= k + guard:
            break
    acc = acc * pow(p - 1, -1, pK) % pK
    acc %= p**k
    if acc == 0:
        return PadicApprox.zero(p, k)
    vv = 0
    while acc % p == 0:
        acc //= p
        vv += 1
    return PadicApprox(p, vv, acc, k - vv)
