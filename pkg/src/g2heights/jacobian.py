"""Exact divisor-class arithmetic on genus-2 Jacobians.

The curve model is y^2 = f(x) with f monic of degree 5 and integer
coefficients.  Divisor classes use the Mumford representation (u, v): u is
monic of degree <= 2, deg v < deg u, and u | v^2 - f.  The group law is
Cantor's composition-and-reduction algorithm, implemented generically over
any field adapter from ``_fieldpoly`` so the same code serves exact rational
arithmetic and prime-field sampling.

This module also computes the Kummer coordinates kappa(D) in P^3, since
they are pure divisor algebra; the Kummer-surface layer wraps them.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from ._fieldpoly import (
    QQ,
    padd,
    pdeg,
    pdivmod,
    peval,
    pmod,
    pmonic,
    pmul,
    pneg,
    pof,
    pgcd,
    psub,
    pxgcd,
    ptrim,
)
from .arith import content_and_primitive


class Genus2Curve:
    """y^2 = x^5 + f4 x^4 + f3 x^3 + f2 x^2 + f1 x + f0 with integer f_i.

    Construction checks that the quintic is squarefree and records the bad
    primes (divisors of 2 times the discriminant of the quintic).
    """

    __slots__ = ("f", "_disc", "_bad_primes")

    def __init__(self, f0, f1, f2, f3, f4):
        self.f = (int(f0), int(f1), int(f2), int(f3), int(f4))
        fq = self.fpoly(QQ)
        dfq = ptrim(Fraction(i) * c for i, c in enumerate(fq) if i)
        if pdeg(pgcd(fq, dfq, QQ)) != 0:
            raise ValueError("singular model")
        self._disc = None
        self._bad_primes = None

    def fpoly(self, F):
        """The quintic as a polynomial over the field adapter F."""
        return pof(self.f + (1,), F)

    @property
    def discriminant(self):
        if self._disc is None:
            x = sympy.symbols("x")
            f0, f1, f2, f3, f4 = self.f
            poly = sympy.Poly(
                x**5 + f4 * x**4 + f3 * x**3 + f2 * x**2 + f1 * x + f0, x
            )
            self._disc = int(poly.discriminant())
        return self._disc

    @property
    def bad_primes(self):
        """Sorted primes dividing 2 times the discriminant."""
        if self._bad_primes is None:
            self._bad_primes = tuple(sorted(sympy.factorint(2 * self.discriminant)))
        return self._bad_primes

    def is_good_prime(self, q):
        return q not in self.bad_primes

    def feval(self, x):
        x = Fraction(x)
        f0, f1, f2, f3, f4 = self.f
        return x**5 + f4 * x**4 + f3 * x**3 + f2 * x**2 + f1 * x + f0

    def __eq__(self, other):
        return isinstance(other, Genus2Curve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"Genus2Curve{self.f}"

    def to_json(self):
        return {"f": [str(c) for c in self.f]}

    @classmethod
    def from_json(cls, d):
        f = [int(c) for c in d["f"]]
        if len(f) != 5:
            raise ValueError("curve JSON needs exactly five coefficients f0..f4")
        return cls(*f)


def curve_validate(f0, f1, f2, f3, f4):
    """Construct a curve (raising "singular model" on a non-squarefree
    quintic) and return it together with its bad primes."""
    c = Genus2Curve(f0, f1, f2, f3, f4)
    return c, set(c.bad_primes)


class MumfordDivisor:
    """Divisor class (u, v); u monic, deg u <= 2, deg v < deg u, u | v^2 - f.

    Coefficients are elements of whatever field the class was built over
    (tuples, lowest degree first).  The identity class O is u = 1, v = 0.
    """

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        u = ptrim(u)
        v = ptrim(v)
        if not u:
            raise ValueError("u must be nonzero")
        if pdeg(u) > 2:
            raise ValueError("deg u must be at most 2")
        if pdeg(v) >= pdeg(u) and v:
            raise ValueError("deg v must be less than deg u")
        self.u = u
        self.v = v

    @classmethod
    def zero(cls, F=QQ):
        return cls((F.one,), ())

    def is_zero(self):
        return pdeg(self.u) == 0

    @property
    def degree(self):
        return pdeg(self.u)

    def __eq__(self, other):
        return (
            isinstance(other, MumfordDivisor)
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"MumfordDivisor(u={self.u}, v={self.v})"

    def to_json(self):
        def rs(c):
            c = Fraction(c)
            return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        return {"u": [rs(c) for c in self.u], "v": [rs(c) for c in self.v]}

    @classmethod
    def from_json(cls, d, curve=None):
        u = ptrim(Fraction(c) for c in d["u"])
        v = ptrim(Fraction(c) for c in d["v"])
        D = cls(u, v)
        if curve is not None:
            check_divisor(D, curve)
        return D


def check_divisor(D, curve, F=QQ):
    """Verify the Mumford invariants of D on the given curve; raises on failure."""
    if D.u[-1] != F.one:
        raise ValueError("u is not monic")
    f = curve.fpoly(F)
    if pmod(psub(pmul(D.v, D.v, F), f, F), D.u, F):
        raise ValueError("u does not divide v^2 - f")


def divisor_from_points(points, curve, F=QQ):
    """Mumford divisor of [P1 + P2 - 2*inf] from at most two affine points.

    An empty list gives O.  A conjugate pair {(x,y),(x,-y)} is the principal
    class and returns O, as does a doubled Weierstrass point (x,0); a
    repeated non-Weierstrass point uses the tangent line.
    """
    pts = [(F.of(x) if isinstance(x, int) else x, F.of(y) if isinstance(y, int) else y) for x, y in points]
    f = curve.fpoly(F)
    for x, y in pts:
        if peval(f, x, F) != y * y:
            raise ValueError("point not on curve")
    if not pts:
        return MumfordDivisor.zero(F)
    if len(pts) == 1:
        (x, y), = pts
        return MumfordDivisor((-x, F.one), (y,) if y else ())
    if len(pts) != 2:
        raise ValueError("at most two points")
    (x1, y1), (x2, y2) = pts
    if x1 == x2:
        if y1 != y2:
            return MumfordDivisor.zero(F)  # conjugate pair is principal
        if not y1:
            return MumfordDivisor.zero(F)  # doubled Weierstrass point
        # tangent line at a repeated point: v = y + f'(x)/(2y) * (X - x)
        df = ptrim(F.of(i) * c for i, c in enumerate(f) if i)
        slope = peval(df, x1, F) / (y1 + y1)
        u = pmul((-x1, F.one), (-x1, F.one), F)
        v = ptrim((y1 - slope * x1, slope))
        return MumfordDivisor(u, v)
    u = pmul((-x1, F.one), (-x2, F.one), F)
    slope = (y2 - y1) / (x2 - x1)
    v = ptrim((y1 - slope * x1, slope))
    return MumfordDivisor(u, v)


def cantor_neg(D, curve=None, F=QQ):
    """The inverse class (u, -v)."""
    return MumfordDivisor(D.u, pneg(D.v))


def cantor_add(D1, D2, curve, F=QQ):
    """Cantor composition and reduction; exact group law on divisor classes."""
    f = curve.fpoly(F)
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    # composition
    d0, a, b = pxgcd(u1, u2, F)
    vsum = padd(v1, v2, F)
    d, c2, s3 = pxgcd(d0, vsum, F)
    s1 = pmul(a, c2, F)
    s2 = pmul(b, c2, F)
    dd = pmul(d, d, F)
    u, r = pdivmod(pmul(u1, u2, F), dd, F)
    assert not r, "composition gcd does not divide u1*u2"
    num = padd(
        padd(pmul(pmul(s1, u1, F), v2, F), pmul(pmul(s2, u2, F), v1, F), F),
        pmul(s3, padd(pmul(v1, v2, F), f, F), F),
        F,
    )
    w, r = pdivmod(num, d, F)
    assert not r, "composition numerator not divisible by d"
    v = pmod(w, u, F)
    # reduction: at most two steps for genus 2 with deg f = 5
    steps = 0
    while pdeg(u) > 2:
        steps += 1
        assert steps <= 2, "reduction bound exceeded"
        unew, r = pdivmod(psub(f, pmul(v, v, F), F), u, F)
        assert not r, "reduction division inexact"
        unew = pmonic(unew, F)
        v = pneg(pmod(v, unew, F))
        u = unew
    u = pmonic(u, F)
    return MumfordDivisor(u, pmod(v, u, F))


def cantor_scalar_mul(D, m, curve, F=QQ):
    """Class of m*D via double-and-add; negative m via the involution."""
    m = int(m)
    if m < 0:
        return cantor_scalar_mul(cantor_neg(D, curve, F), -m, curve, F)
    acc = MumfordDivisor.zero(F)
    base = D
    while m:
        if m & 1:
            acc = cantor_add(acc, base, curve, F)
        m >>= 1
        if m:
            base = cantor_add(base, base, curve, F)
    return acc


def is_in_theta_support(D):
    """True iff the class lies on the theta divisor, i.e. deg u <= 1."""
    return D.degree <= 1


def _f0_sym(s, t, curve, F):
    """The symmetric biquadratic F0(s, t) at s = x1+x2, t = x1*x2:
    2f0 + f1 s + 2f2 t + f3 s t + 2f4 t^2 + s t^2."""
    f0, f1, f2, f3, f4 = (F.of(c) for c in curve.f)
    two = F.of(2)
    return two * f0 + f1 * s + two * f2 * t + f3 * s * t + two * f4 * t * t + s * t * t


def kummer_coords(D, curve, F=QQ):
    """Kummer coordinates of D as a projective 4-tuple of field elements.

    O maps to (0,0,0,1); [P - inf] with P = (x, y) maps to (0, 1, x, x^2);
    a generic class {(x1,y1),(x2,y2)} maps to (1, x1+x2, x1*x2, b0) with
    b0 = (F0(x1+x2, x1*x2) - 2*y1*y2) / (x1-x2)^2, and the repeated-point
    limit b0 = (f'(x)^2 - 4y^2(6x^3 + 4 f4 x^2 + 2 f3 x + f2)) / (4y^2).
    """
    zero, one = F.zero, F.one
    if D.is_zero():
        return (zero, zero, zero, one)
    if D.degree == 1:
        x = -D.u[0]
        return (zero, one, x, x * x)
    u0, u1 = D.u[0], D.u[1]
    s = -u1
    t = u0
    v0 = D.v[0] if len(D.v) > 0 else zero
    v1 = D.v[1] if len(D.v) > 1 else zero
    y1y2 = v1 * v1 * u0 - v1 * v0 * u1 + v0 * v0
    disc = u1 * u1 - F.of(4) * u0
    two = F.of(2)
    if disc:
        b0 = (_f0_sym(s, t, curve, F) - two * y1y2) / disc
    else:
        # repeated point (x, y); y != 0 since the quintic is squarefree
        x = s / two
        y2sq = y1y2  # equals y^2 here
        f0c, f1c, f2c, f3c, f4c = (F.of(c) for c in curve.f)
        dfx = (
            F.of(5) * x * x * x * x
            + F.of(4) * f4c * x * x * x
            + F.of(3) * f3c * x * x
            + two * f2c * x
            + f1c
        )
        g = F.of(6) * x * x * x + F.of(4) * f4c * x * x + two * f3c * x + f2c
        b0 = (dfx * dfx - F.of(4) * y2sq * g) / (F.of(4) * y2sq)
    return (one, s, t, b0)


def kummer_coords_primitive(D, curve):
    """Integer Kummer coordinates over Q, gcd 1, first nonzero entry positive."""
    coords = kummer_coords(D, curve, QQ)
    coords = tuple(Fraction(c) for c in coords)
    den = math.lcm(*(c.denominator for c in coords))
    ints = tuple(int(c * den) for c in coords)
    _, prim = content_and_primitive(ints)
    return prim
