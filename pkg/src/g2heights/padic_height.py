"""Naive and canonical p-adic heights on genus-2 Jacobians.

The naive height H_p(P) = log_p(x_4(P)) is defined on the finite-index
subgroup J_p of points that lie in the kernel of reduction at p (in_J1) and
in every U_q (primitive duplication coordinates stay coprime: gcd_delta = 1).
The canonical height h_p is the quadratic refinement obtained from the
telescoped series

    h_p(P) = H_p(P) + sum_{n >= 0} p^(-2(n+1)) * log_p(u_n),

where u_n = mu_{p,4}(a_n) at the pivot-normalized Kummer coordinates a_n of
p^n P.  Each u_n lies in 1 + p^(4(n+1)) Z_p, so term n has valuation at least
2(n+1) and the series converges quadratically; everything past the naive
term runs over Z/p^M with a certified precision budget.  Heights extend to
all of J(Q) through h_p(P) = h_p(mP)/m^2 for any multiple mP in J_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import PadicApprox, content_and_primitive, iwasawa_log, ord_q
from .jacobian import MumfordDivisor, cantor_add, cantor_scalar_mul, kummer_coords_primitive
from .kummer import (
    KummerPoint,
    build_form_library,
    delta_eval,
    kummer_map,
    mu_pair_ladder,
)

__all__ = [
    "MembershipCertificate",
    "HeightValue",
    "certify",
    "naive_height",
    "u_value",
    "canonical_height_on_Jp",
    "naive_limit_oracle",
    "canonical_height",
    "height_pairing",
    "regulator",
]


# ---------------------------------------------------------------------------
# membership certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipCertificate:
    """Subgroup membership flags for a rational divisor class at the prime p.

    in_J1: the primitive Kummer coordinates reduce to [0:0:0:1] mod p, i.e.
    the class lies in the kernel of reduction.  gcd_delta is the content of
    the duplication values at the primitive coordinates; in_all_Uq means that
    content is 1 (the class lies in U_q for every prime q).  in_Jp is the
    conjunction: the domain of the naive height H_p.
    """

    point: MumfordDivisor
    p: int
    in_J1: bool
    gcd_delta: int
    in_all_Uq: bool
    in_Jp: bool

    def to_json(self):
        return {
            "p": self.p,
            "in_J1": self.in_J1,
            "gcd_delta": str(self.gcd_delta),
            "in_all_Uq": self.in_all_Uq,
            "in_Jp": self.in_Jp,
        }


def certify(P, p, curve):
    """Membership certificate of the rational class P at the odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    lib = build_form_library(curve)
    kappa = kummer_map(P, curve)
    x = kappa.coords
    in_j1 = all(c % p == 0 for c in x[:3])
    dvals = delta_eval(lib, kappa).coords
    gcd_delta, _ = content_and_primitive(dvals)
    in_all_uq = gcd_delta == 1
    return MembershipCertificate(
        point=P,
        p=p,
        in_J1=in_j1,
        gcd_delta=gcd_delta,
        in_all_Uq=in_all_uq,
        in_Jp=in_j1 and in_all_uq,
    )


# ---------------------------------------------------------------------------
# heights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeightValue:
    """A height with certified p-adic precision.

    n_max is the number of series terms beyond the naive one; trace records
    the per-term valuation lower bounds that justify the certified precision
    (the tail past n_max is below p^(2(n_max+2))).
    """

    value: PadicApprox
    n_max: int
    trace: tuple

    @property
    def certified_prec(self):
        return self.value.abs_prec

    def to_json(self):
        return {
            "p": self.value.p,
            "value": self.value.to_json(),
            "n_max": self.n_max,
            "certified_prec": self.certified_prec,
        }


def naive_height(P, p, k, curve):
    """H_p(P) = log_p(x_4(P)) on the primitive coordinates, to precision k.

    Defined only on J_p; the primitivity of kappa(P) makes x_4 a p-unit
    integer whose Iwasawa logarithm is the height.
    """
    cert = certify(P, p, curve)
    if not cert.in_Jp:
        raise ValueError("H_p undefined outside J_p")
    x4 = kummer_coords_primitive(P, curve)[3]
    return iwasawa_log(x4, p, k)


def u_value(a, p, curve):
    """mu_{p,4} at a pivot-normalized mod-p^M Kummer point of a J_1 class.

    The value is the multiplicative increment of the height series; for the
    coordinates of p^n P with P in J_1 it lies in 1 + p^(4(n+1)) Z_p.
    """
    if a.modulus is None or a.modulus[0] != p:
        raise ValueError("u_value needs mod-p^M coordinates")
    _, M = a.modulus
    if a.coords[3] != 1 or any(c % p**2 for c in a.coords[:3]):
        raise ValueError("u_value needs a pivot-normalized kernel-of-reduction point")
    lib = build_form_library(curve)
    mu_p, _ = mu_pair_ladder(lib, a, p)
    u = int(mu_p[3])
    if M >= 4 and (u - 1) % p**4:
        raise ValueError("u_value outside 1 + p^4 Z_p")
    return PadicApprox(p, 0, u, M)


def _ladder_iterates(lib, kappa, p, M, n_max):
    """a_0 = pivot-normalized kappa mod p^M and u_n = mu_{p,4}(a_n), n <= n_max.

    a_{n+1} is the pivot normalization of mu_p(a_n); with the pivot a p-unit
    throughout, every u_n is the exact reduction of the true p-adic value.
    """
    a = KummerPoint(kappa.coords, (p, M)).pivot_normalized()
    us = []
    for n in range(n_max + 1):
        mu_p, _ = mu_pair_ladder(lib, a, p)
        u = int(mu_p[3])
        if (u - 1) % p ** min(4 * (n + 1), M):
            raise ValueError("precision certification failed")
        us.append(u)
        if n < n_max:
            a = KummerPoint(mu_p, (p, M)).pivot_normalized()
    return us


def canonical_height_on_Jp(P, p, N, curve, guard=2):
    """h_p(P) for P in J_p, certified to absolute precision N.

    Sums H_p(P) and n_max + 1 series terms p^(-2(n+1)) log_p(u_n) with
    n_max = ceil(N/2); term n has valuation >= 2(n+1), so the tail is below
    p^N.  The working modulus M = N + 2(n_max+1) + guard absorbs the scaling
    losses.
    """
    if N < 1:
        raise ValueError("precision must be positive")
    cert = certify(P, p, curve)
    if not cert.in_Jp:
        raise ValueError("H_p undefined outside J_p")
    if P.is_zero():
        return HeightValue(PadicApprox.zero(p, N), 0, ())
    n_max = -(-N // 2)
    M = N + 2 * (n_max + 1) + guard
    lib = build_form_library(curve)
    kappa = kummer_map(P, curve)
    total = iwasawa_log(kappa.coords[3], p, M)
    trace = []
    for n, u in enumerate(_ladder_iterates(lib, kappa, p, M, n_max)):
        term = iwasawa_log(u, p, M).scale_p_power(-2 * (n + 1))
        if not term.is_zero() and term.val < 2 * (n + 1):
            raise ValueError("precision certification failed")
        trace.append(2 * (n + 1))
        total = total + term
    tail_bound = 2 * (n_max + 2)
    if min(total.abs_prec, tail_bound) < N:
        raise ValueError("precision certification failed")
    return HeightValue(total.truncate(N), n_max, tuple(trace))


def naive_limit_oracle(P, p, n, curve, prec=12, limit=400):
    """p^(-2n) H_p(p^n P) by exact Cantor arithmetic; the defining limit.

    Small n only: the coordinates of p^n P grow like p^(2n).  Serves as an
    independent oracle for the series algorithm.
    """
    if p**n > limit:
        raise ValueError("resource guard exceeded")
    Q = cantor_scalar_mul(P, p**n, curve)
    cert = certify(Q, p, curve)
    if not cert.in_Jp:
        raise ValueError("H_p undefined outside J_p")
    x4 = kummer_coords_primitive(Q, curve)[3]
    return iwasawa_log(x4, p, prec + 2 * n).scale_p_power(-2 * n)


def canonical_height(P, p, N, curve, m_max=10000):
    """h_p on all of J(Q): h_p(mP)/m^2 for the least m with mP in J_p.

    Torsion classes (detected when the multiple search returns to O) have
    height 0.  The precision request is raised by 2 ord_p(m) so the final
    division by m^2 still certifies N digits.
    """
    Q = MumfordDivisor.zero()
    for m in range(1, m_max + 1):
        Q = cantor_add(Q, P, curve)
        if Q.is_zero():
            return HeightValue(PadicApprox.zero(p, N), 0, ())
        if certify(Q, p, curve).in_Jp:
            vm = ord_q(m, p) if m % p == 0 else 0
            hv = canonical_height_on_Jp(Q, p, N + 2 * vm, curve)
            scale = PadicApprox.from_rational(
                Fraction(1, m * m), p, hv.value.abs_prec + 2 * vm + 1
            )
            return HeightValue((hv.value * scale).truncate(N), hv.n_max, hv.trace)
    raise ValueError("no J_p multiple found within bound")


def height_pairing(P, Q, p, N, curve, m_max=10000):
    """The symmetric pairing (h_p(P+Q) - h_p(P) - h_p(Q))/2."""
    hs = canonical_height(cantor_add(P, Q, curve), p, N, curve, m_max).value
    hp = canonical_height(P, p, N, curve, m_max).value
    hq = canonical_height(Q, p, N, curve, m_max).value
    half = PadicApprox.from_rational(Fraction(1, 2), p, N + 1)
    return ((hs - hp - hq) * half).truncate(N)


def _det(rows):
    """Determinant by cofactor expansion (PadicApprox entries, small sizes)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def regulator(points, p, N, curve, m_max=10000):
    """Determinant of the Gram matrix of the height pairing on the points."""
    if not points:
        raise ValueError("regulator of an empty list undefined")
    n = len(points)
    gram = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = height_pairing(points[i], points[j], p, N, curve, m_max)
            gram[i][j] = gram[j][i] = v
    return _det(gram)
