"""Naive and canonical local real heights, and the global Neron-Tate height.

The local data live on the Kummer coordinates.  At a finite prime q the
naive local height of P off the theta divisor Theta_i is
lambda_{i,q}(P) = ord_q(x_i(P)) * log q on the primitive integer
coordinates, and the canonical local height adds the correction series

    sum_{n >= 0} 4^-(n+1) * log Phi_q(2^n P),

where Phi_q = q^-v with v the minimal q-valuation of the duplication values
at a primitive point.  Phi_q = 1 defines the finite-index subgroup U_q; once
a doubled point enters U_q every later term vanishes, so the series is an
exact rational multiple of log q whenever that happens within the configured
depth.  The archimedean analogue runs the same series on sup-normalized
floating coordinates with a rigorous geometric tail bound.

The global height sums the local ones.  For primitive integer coordinates
the finite naive parts and the archimedean naive part log(N0 / |x_i|)
telescope by the product formula to log N0 with N0 = max_i |x_i(P)|, which
is independent of the index i; the assembled value is therefore

    h(P) = log N0 + sum_q (corrections at q) + (archimedean corrections),

and it agrees with the Tate limit 4^-n log N(2^n P) (tate_limit_oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from ._fieldpoly import FpField, pmod, pmul, psub, ptrim
from .arith import content_and_primitive, ord_q
from .jacobian import MumfordDivisor, cantor_add, cantor_scalar_mul, kummer_coords_primitive
from .kummer import _eval_quartic, build_form_library

__all__ = [
    "LocalHeightValue",
    "lambda_naive",
    "lambda_canonical",
    "archimedean_correction",
    "neron_tate",
    "neron_tate_report",
    "tate_limit_oracle",
    "is_torsion",
]


@dataclass(frozen=True)
class LocalHeightValue:
    """A local height at a finite prime or at infinity.

    At a finite place the value is coefficient * log(place) with an exact
    rational coefficient; exact is False when the correction series was
    truncated, in which case error_bound bounds the discarded tail.  At
    infinity coefficient is None and value is a float with a rigorous
    tail bound.
    """

    place: object  # prime q (int) or "inf"
    coefficient: object  # Fraction at finite places, None at infinity
    value: float
    exact: bool
    error_bound: float

    def to_json(self):
        d = {"q": self.place, "value": self.value, "exact": self.exact}
        if self.coefficient is not None:
            d["coefficient"] = str(self.coefficient)
        if not self.exact:
            d["error_bound"] = self.error_bound
        return d


def _finite_value(q, coefficient, exact, bound=0.0):
    return LocalHeightValue(q, coefficient, float(coefficient) * math.log(q), exact, bound)


def lambda_naive(P, i, q, curve):
    """Naive local height ord_q(x_i(P)) * log q at the finite prime q."""
    if i not in (1, 2, 3, 4):
        raise ValueError("coordinate index must be 1..4")
    x = kummer_coords_primitive(P, curve)
    if x[i - 1] == 0:
        raise ValueError("point on Theta_i")
    return _finite_value(q, Fraction(ord_q(x[i - 1], q)), True)


def _phi_exponents(lib, x0, q, depth, mode, prec):
    """The exponents v_n = -ord_q Phi_q(2^n P) for n < depth.

    Stops at the first v_n = 0: the doubled point is then in the subgroup
    U_q and every later term vanishes (exact termination).  Exact mode
    doubles primitive integer coordinates; modular mode works mod q^prec,
    spending v_n digits of precision per step.  Returns (exponents, exact).
    """
    if mode == "exact":
        x = x0
        vs = []
        for _ in range(depth):
            d = tuple(_eval_quartic(f, x) for f in lib.delta)
            c, x = content_and_primitive(d)
            v = 0
            while c % q == 0:
                c //= q
                v += 1
            if v == 0:
                return vs, True
            vs.append(v)
        return vs, False
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")
    m = prec
    x = tuple(c % q**m for c in x0)
    vs = []
    for _ in range(depth):
        qm = q**m
        d = tuple(_eval_quartic(f, x, qm) for f in lib.delta)
        v = min((ord_q(c, q) for c in d if c), default=m)
        if v >= m - 1:
            return None  # precision exhausted
        if v == 0:
            return vs, True
        m -= v
        x = tuple(c // q**v % q**m for c in d)
        vs.append(v)
    return vs, False


def _tail_exponent_bound(vs, q, curve):
    """Per-term exponent bound for a truncated Phi_q series (heuristic,
    anchored at the largest observed exponent and the discriminant)."""
    vd = ord_q(2 * curve.discriminant, q) if (2 * curve.discriminant) % q == 0 else 0
    return max(vs, default=0) + vd + 1


def lambda_canonical(P, i, q, curve, mode="exact", depth=20, prec=64, fallback=True):
    """Canonical local height lambda_naive + the Phi_q correction series.

    The result is exact (a rational multiple of log q) when a doubling
    enters U_q within the depth; otherwise the value is truncated and
    error_bound bounds the tail.  Modular mode doubles mod q^prec and
    falls back to exact doubling when the precision is spent (or raises
    if fallback is disabled).
    """
    naive = lambda_naive(P, i, q, curve)
    lib = build_form_library(curve)
    x0 = kummer_coords_primitive(P, curve)
    res = _phi_exponents(lib, x0, q, depth, mode, prec)
    if res is None:
        if not fallback:
            raise ValueError("modular precision exhausted")
        res = _phi_exponents(lib, x0, q, depth, "exact", prec)
    vs, exact = res
    corr = -sum(Fraction(v, 4 ** (n + 1)) for n, v in enumerate(vs))
    bound = 0.0
    if not exact:
        b = _tail_exponent_bound(vs, q, curve)
        bound = b * math.log(q) * 4.0**-depth / 3.0
    return _finite_value(q, naive.coefficient + corr, exact, bound)


def _delta_sup_bound(lib):
    """log of the largest coefficient 1-norm among the duplication quartics:
    |delta_j(x)| <= exp(B) whenever all |x_i| <= 1."""
    return math.log(max(sum(abs(c) for c in d.values()) for d in lib.delta))


def archimedean_correction(P, n_terms, curve):
    """The correction series at infinity on sup-normalized coordinates.

    Each step doubles, records log of the sup norm of the duplication
    values, and renormalizes; the tail past n_terms is bounded by
    B * 4^-n_terms / 3 with B the coefficient-norm bound of the quartics.
    """
    lib = build_form_library(curve)
    B = _delta_sup_bound(lib)
    x = kummer_coords_primitive(P, curve)
    sup = max(abs(c) for c in x)
    x = tuple(c / sup for c in x)
    total = 0.0
    for n in range(n_terms):
        d = tuple(_eval_quartic(f, x) for f in lib.delta)
        phi = max(abs(c) for c in d)
        total += math.log(phi) / 4 ** (n + 1)
        x = tuple(c / phi for c in d)
    return LocalHeightValue("inf", None, total, False, B * 4.0**-n_terms / 3.0)


# ---------------------------------------------------------------------------
# torsion detection
# ---------------------------------------------------------------------------


def _reduce_divisor(D, q, curve):
    """Reduction of the Mumford coordinates mod q, or None when the naive
    coordinate reduction is not a valid divisor on the reduced curve."""
    F = FpField(q)

    def red(poly):
        out = []
        for c in poly:
            c = Fraction(c)
            if c.denominator % q == 0:
                return None
            out.append(F.of(c.numerator * pow(c.denominator, -1, q)))
        return ptrim(out)

    u, v = red(D.u), red(D.v)
    if u is None or v is None or not u:
        return None
    f = curve.fpoly(F)
    if pmod(psub(pmul(v, v, F), f, F), u, F):
        return None
    try:
        return MumfordDivisor(u, v)
    except ValueError:
        return None


def _reduction_order(Dq, q, curve):
    """Order of a divisor class over F_q by incremental addition."""
    F = FpField(q)
    bound = (math.isqrt(q) + 2) ** 4
    acc = Dq
    for m in range(1, bound + 1):
        if acc.is_zero():
            return m
        acc = cantor_add(acc, Dq, curve, F)
    raise ValueError("reduction order exceeds the group-order bound")


def is_torsion(P, curve):
    """Whether the rational class P is torsion.

    At a good odd prime the torsion subgroup injects into J(F_q), so P is
    torsion exactly when r*P = O for r the order of its reduction.
    """
    if P.is_zero():
        return True
    q = 3
    for _ in range(8):
        while not curve.is_good_prime(q) or q == 2:
            q = sympy.nextprime(q)
        Dq = _reduce_divisor(P, q, curve)
        if Dq is not None:
            r = _reduction_order(Dq, q, curve)
            return cantor_scalar_mul(P, r, curve).is_zero()
        q = sympy.nextprime(q)
    raise ValueError("no usable prime for torsion detection")


# ---------------------------------------------------------------------------
# the global height
# ---------------------------------------------------------------------------


def _content_primes(lib, x0, steps, curve):
    """Primes with a nonzero Phi exponent in the first exact doubling steps,
    together with the bad primes: the support set for the global sum."""
    primes = set(curve.bad_primes)
    x = x0
    for _ in range(steps):
        d = tuple(_eval_quartic(f, x) for f in lib.delta)
        c, x = content_and_primitive(d)
        if c > 1:
            primes.update(sympy.factorint(c))
    return sorted(primes)


def neron_tate_report(P, tol, curve, depth=20):
    """The canonical real height with its per-place decomposition.

    Returns {"value", "error_bound", "places"}: the naive parts (index 4),
    the finite correction series at every contributing prime, and the
    archimedean series, summing to log N0 + corrections.  Torsion classes
    report 0 exactly.
    """
    if is_torsion(P, curve):
        return {"value": 0.0, "error_bound": 0.0, "places": []}
    x = kummer_coords_primitive(P, curve)
    if x[3] == 0:
        raise ValueError("point on Theta_4")
    lib = build_form_library(curve)
    N0 = max(abs(c) for c in x)
    B = _delta_sup_bound(lib)
    n_terms = max(14, math.ceil(math.log(max(B, 1.0) * 4 / (3 * tol)) / math.log(4)))
    arch = archimedean_correction(P, n_terms, curve)
    places = []
    total = math.log(N0)
    err = arch.error_bound + 1e-12 * (1 + abs(total))
    for q in _content_primes(lib, x, 4, curve):
        res = _phi_exponents(lib, x, q, depth, "modular", 64)
        if res is None:
            res = _phi_exponents(lib, x, q, depth, "exact", 64)
        vs, exact = res
        corr = -sum(Fraction(v, 4 ** (n + 1)) for n, v in enumerate(vs))
        bound = 0.0
        if not exact:
            bound = _tail_exponent_bound(vs, q, curve) * math.log(q) * 4.0**-depth / 3.0
            err += bound
        naive = Fraction(ord_q(x[3], q)) if x[3] % q == 0 else Fraction(0)
        places.append(
            {
                "q": q,
                "naive": f"{naive}*log {q}",
                "correction": f"{corr}*log {q}",
                "exact": exact,
            }
        )
        total += float(corr) * math.log(q)
    places.append(
        {
            "q": "inf",
            "naive": f"log({N0}/{abs(x[3])})",
            "correction": arch.value,
            "exact": False,
        }
    )
    total += arch.value
    return {"value": total, "error_bound": err, "places": places}


def neron_tate(P, tol, curve, depth=20):
    """The canonical real (Neron-Tate) height of P, within tol."""
    report = neron_tate_report(P, tol, curve, depth)
    if report["error_bound"] > tol:
        raise ValueError("requested tolerance not met (truncated local series)")
    return report["value"]


def tate_limit_oracle(P, n, curve):
    """4^-n log max_i |x_i(2^n P)| by exact primitive doubling; the defining
    limit of the canonical height, as an independent oracle (n <= 12)."""
    if n > 12:
        raise ValueError("resource guard exceeded")
    lib = build_form_library(curve)
    x = kummer_coords_primitive(P, curve)
    for _ in range(n):
        d = tuple(_eval_quartic(f, x) for f in lib.delta)
        _, x = content_and_primitive(d)
    return math.log(max(abs(c) for c in x)) / 4**n
