"""Dense univariate polynomials over an arbitrary field.

Polynomials are tuples of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).  The field is
described by a small adapter object with attributes ``zero``, ``one`` and a
constructor ``of(int)``; elements must support the usual arithmetic
operators including true division.  ``fractions.Fraction`` works out of the
box (see QQ below); prime fields are provided by FpField.
"""

from __future__ import annotations

from fractions import Fraction


class FpElement:
    """Element of a prime field F_p, hashable and immutable."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return FpElement(self.v + other.v, self.p)

    def __sub__(self, other):
        return FpElement(self.v - other.v, self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __mul__(self, other):
        return FpElement(self.v * other.v, self.p)

    def __truediv__(self, other):
        return FpElement(self.v * pow(other.v, -1, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, FpElement) and self.v == other.v and self.p == other.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class FpField:
    def __init__(self, p):
        self.p = p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def of(self, n):
        return FpElement(n, self.p)

    def sqrt(self, a):
        """Square root in F_p for p = 3 mod 4; None if a is a non-residue."""
        p = self.p
        if a.v == 0:
            return self.zero
        assert p % 4 == 3, "sqrt shortcut needs p = 3 mod 4"
        r = pow(a.v, (p + 1) // 4, p)
        if r * r % p != a.v:
            return None
        return FpElement(r, p)


class _QQ:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(n):
        return Fraction(n)


QQ = _QQ()


def ptrim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def pdeg(a):
    return len(a) - 1  # -1 for the zero polynomial


def padd(a, b, F):
    n = max(len(a), len(b))
    return ptrim(
        (a[i] if i < len(a) else F.zero) + (b[i] if i < len(b) else F.zero)
        for i in range(n)
    )


def psub(a, b, F):
    n = max(len(a), len(b))
    return ptrim(
        (a[i] if i < len(a) else F.zero) - (b[i] if i < len(b) else F.zero)
        for i in range(n)
    )


def pneg(a):
    return tuple(-c for c in a)


def pscale(a, s):
    if not s:
        return ()
    return ptrim(c * s for c in a)


def pmul(a, b, F):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return ptrim(out)


def pdivmod(a, b, F):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv_lead = F.one / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv_lead
        d = len(r) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            r[d + i] = r[d + i] - c * bi
        while r and not r[-1]:
            r.pop()
    return ptrim(q), ptrim(r)


def pmod(a, b, F):
    return pdivmod(a, b, F)[1]


def pmonic(a, F):
    if not a:
        return a
    return pscale(a, F.one / a[-1])


def pgcd(a, b, F):
    while b:
        a, b = b, pmod(a, b, F)
    return pmonic(a, F)


def pxgcd(a, b, F):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = pdivmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, F), F)
        t0, t1 = t1, psub(t0, pmul(q, t1, F), F)
    if r0:
        lead = r0[-1]
        inv = F.one / lead
        r0, s0, t0 = pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)
    return r0, s0, t0


def peval(a, x, F):
    acc = F.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pof(coeffs, F):
    """Build a polynomial from integer coefficients (lowest degree first)."""
    return ptrim(F.of(c) for c in coeffs)
