"""Generator for the universal Kummer-surface form tables.

Produces, as integer polynomials in the curve coefficients f0..f4:

* the defining quartic G of the Kummer surface,
* the four duplication quartics delta_1..delta_4,
* the ten biquadratic forms B_ij (1 <= i <= j <= 4).

Nothing is transcribed from tables: the forms are recovered from the
divisor-class group law itself.  For each of many random curves over a
large prime field, the values of the B_ij on random point pairs are pinned
by the relation z_i w_j + z_j w_i = 2c B_ij (with z, w the images of
D+E, D-E computed by Cantor's algorithm) after eliminating the pair
constant c, and normalised absolutely by B_ij(k, e4) = k_i k_j where
e4 = (0,0,0,1) is the image of the identity.  Each coefficient is then
interpolated as a weighted-homogeneous integer polynomial in f0..f4
(weights: f_i -> 2(5-i), k_i and l_i -> 2(i-1); B_ij has total weight
12 + 2(i-1) + 2(j-1)), reconstructed over several 31-bit primes by CRT,
and verified on fresh curves over a fresh prime.  The duplication forms
come from the diagonal specialisation delta = (2*B_14, 2*B_24, 2*B_34,
B_44)(k, k), and G from the symbolic elimination of the second point of a
divisor (computed once, verified here on every run).

Run as:  python -m g2heights._formsgen [output.json]
"""

from __future__ import annotations

import json
import random
import sys

import numpy as np
import sympy

from ._fieldpoly import FpField
from .jacobian import (
    cantor_add,
    cantor_neg,
    divisor_from_points,
    kummer_coords,
)

# ---------------------------------------------------------------------------
# monomial bookkeeping
# ---------------------------------------------------------------------------

# quadratic monomials in k1..k4 as index pairs (a <= b), 10 of them
QUAD = [(a, b) for a in range(4) for b in range(a, 4)]
# symmetric biquadratic basis: unordered pairs of quadratic monomials, 55
SYM = [(s, t) for s in range(len(QUAD)) for t in range(s, len(QUAD))]

F_WEIGHT = (10, 8, 6, 4, 2)  # weight of f0..f4
K_WEIGHT = (0, 2, 4, 6)  # weight of k1..k4 (and l1..l4)


def quad_weight(m):
    a, b = QUAD[m]
    return K_WEIGHT[a] + K_WEIGHT[b]


def sym_weight(t):
    s, u = SYM[t]
    return quad_weight(s) + quad_weight(u)


def form_weight(i, j):
    """Total weight of B_ij (i, j in 1..4)."""
    return 12 + 2 * (i - 1) + 2 * (j - 1)


def quad_values(k, q):
    """Values of the 10 quadratic monomials at an integer 4-tuple, mod q."""
    return [k[a] * k[b] % q for a, b in QUAD]


def sym_values(k, l, q):
    """Values of the 55 symmetric biquadratic basis elements, mod q."""
    qk = quad_values(k, q)
    ql = quad_values(l, q)
    out = []
    for s, t in SYM:
        if s == t:
            out.append(qk[s] * ql[s] % q)
        else:
            out.append((qk[s] * ql[t] + qk[t] * ql[s]) % q)
    return out


def f_monomials(weight):
    """Exponent vectors (e0..e4) with sum e_i * F_WEIGHT[i] = weight."""
    if weight < 0:
        return []
    target = weight // 2
    if 2 * target != weight:
        return []
    out = []

    def rec(idx, remaining, acc):
        if idx == 5:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = F_WEIGHT[idx] // 2
        for e in range(remaining // w + 1):
            rec(idx + 1, remaining - e * w, acc + [e])

    rec(0, target, [])
    return out


# ---------------------------------------------------------------------------
# linear algebra mod a 31-bit prime (numpy int64; products stay < 2^63)
# ---------------------------------------------------------------------------


def solve_unique(rows, rhs, q):
    """Unique solution of rows*x = rhs over F_q; raises if rank-deficient
    or inconsistent."""
    A = np.array(rows, dtype=np.int64) % q
    b = np.array(rhs, dtype=np.int64) % q
    m, n = A.shape
    M = np.concatenate([A, b.reshape(m, 1)], axis=1)
    r = 0
    piv_cols = []
    for c in range(n):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        inv = pow(int(M[r, c]), -1, q)
        M[r] = M[r] * inv % q
        mult = M[:, c].copy()
        mult[r] = 0
        M = (M - mult.reshape(m, 1) * M[r].reshape(1, n + 1)) % q
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    if len(piv_cols) != n:
        raise ValueError(f"system rank-deficient: rank {len(piv_cols)} of {n}")
    if r < m and np.any(M[r:, n]):
        raise ValueError("system inconsistent")
    x = np.zeros(n, dtype=np.int64)
    for idx, c in enumerate(piv_cols):
        x[c] = M[idx, n]
    return [int(v) for v in x]


# ---------------------------------------------------------------------------
# sampling over F_q
# ---------------------------------------------------------------------------


class _FieldCurve:
    """Minimal curve wrapper: integer coefficients interpreted mod q."""

    def __init__(self, f):
        self.f = tuple(int(c) for c in f)

    def fpoly(self, F):
        from ._fieldpoly import pof

        return pof(self.f + (1,), F)


def _random_point(cu, F, rng):
    from ._fieldpoly import peval

    fpoly = cu.fpoly(F)
    while True:
        x = F.of(rng.randrange(F.p))
        y = F.sqrt(peval(fpoly, x, F))
        if y is not None:
            return (x, y)


def _random_divisor(cu, F, rng):
    return divisor_from_points([_random_point(cu, F, rng), _random_point(cu, F, rng)], cu, F)


def _coords(D, cu, F):
    return tuple(c.v for c in kummer_coords(D, cu, F))


def _random_squarefree_curve(q, rng):
    from ._fieldpoly import pdeg, pgcd, pof, ptrim

    F = FpField(q)
    while True:
        f = [rng.randrange(q) for _ in range(5)]
        cu = _FieldCurve(f)
        fpoly = cu.fpoly(F)
        df = ptrim(F.of(i) * c for i, c in enumerate(fpoly) if i)
        if pdeg(pgcd(fpoly, df, F)) == 0:
            return cu


# ---------------------------------------------------------------------------
# stage 1: per-curve solve of the ten B_ij over F_q
# ---------------------------------------------------------------------------

E4 = (0, 0, 0, 1)

FORM_KEYS = [(i, j) for i in range(1, 5) for j in range(i, 5)]


def solve_forms_for_curve(cu, q, rng, npairs=130, nsingles=24):
    """Values (mod q) of the 55 basis coefficients of each B_ij for one curve.

    The pair constant c of the biquadratic relation is eliminated by the
    ratio trick against B_44; B_44 and B_14 are solved as a coupled system
    pinned by the absolute normalisation B_ij(k, e4) = k_i * k_j.
    """
    F = FpField(q)
    pairs = []
    while len(pairs) < npairs:
        D = _random_divisor(cu, F, rng)
        E = _random_divisor(cu, F, rng)
        k = _coords(D, cu, F)
        l = _coords(E, cu, F)
        z = _coords(cantor_add(D, E, cu, F), cu, F)
        w = _coords(cantor_add(D, cantor_neg(E), cu, F), cu, F)
        pairs.append((k, l, z, w, sym_values(k, l, q)))
    singles = [E4]
    for _ in range(2):
        D = divisor_from_points([_random_point(cu, F, rng)], cu, F)
        singles.append(_coords(D, cu, F))
    while len(singles) < nsingles:
        singles.append(_coords(_random_divisor(cu, F, rng), cu, F))
    single_sym = [(k, sym_values(k, E4, q)) for k in singles]

    def lhs(z, w, i, j):
        return (z[i - 1] * w[j - 1] + z[j - 1] * w[i - 1]) % q

    # coupled solve for B_44 (unknowns 0..54) and B_14 (unknowns 55..109)
    rows, rhs = [], []
    for k, l, z, w, sv in pairs:
        a44 = lhs(z, w, 4, 4)
        a14 = lhs(z, w, 1, 4)
        rows.append([(-a14) * v % q for v in sv] + [a44 * v % q for v in sv])
        rhs.append(0)
    for k, sv in single_sym:
        rows.append(sv + [0] * 55)
        rhs.append(k[3] * k[3] % q)
        rows.append([0] * 55 + sv)
        rhs.append(k[0] * k[3] % q)
    sol = solve_unique(rows, rhs, q)
    forms = {(4, 4): sol[:55], (1, 4): sol[55:]}

    def b44_value(sv):
        return sum(c * v for c, v in zip(forms[(4, 4)], sv)) % q

    for key in FORM_KEYS:
        if key in forms:
            continue
        i, j = key
        rows, rhs = [], []
        for k, l, z, w, sv in pairs:
            a44 = lhs(z, w, 4, 4)
            aij = lhs(z, w, i, j)
            rows.append([a44 * v % q for v in sv])
            rhs.append(aij * b44_value(sv) % q)
        for k, sv in single_sym:
            rows.append(sv)
            rhs.append(k[i - 1] * k[j - 1] % q)
        forms[key] = solve_unique(rows, rhs, q)
    return forms


# ---------------------------------------------------------------------------
# stage 2: interpolation of each coefficient as a polynomial in f0..f4
# ---------------------------------------------------------------------------


def interpolate_prime(q, ncurves, seed):
    """For one prime: dict (i,j) -> list over the 55 basis elements of
    dicts {f-exponent-vector: coefficient mod q}."""
    rng = random.Random((seed, q))
    curves = [_random_squarefree_curve(q, rng) for _ in range(ncurves)]
    per_curve = [solve_forms_for_curve(cu, q, rng) for cu in curves]

    # one interpolation matrix per f-weight, shared across forms
    matrices = {}

    def matrix_for(weight):
        if weight not in matrices:
            basis = f_monomials(weight)
            rows = []
            for cu in curves:
                row = []
                for e in basis:
                    v = 1
                    for i in range(5):
                        if e[i]:
                            v = v * pow(cu.f[i], e[i], q) % q
                    row.append(v)
                rows.append(row)
            matrices[weight] = (basis, rows)
        return matrices[weight]

    out = {}
    for key in FORM_KEYS:
        i, j = key
        W = form_weight(i, j)
        coeffs = []
        for t in range(len(SYM)):
            fw = W - sym_weight(t)
            vals = [pc[key][t] for pc in per_curve]
            if fw < 0 or not f_monomials(fw):
                assert not any(vals), f"nonzero coefficient of weight-{fw} slot in B{i}{j}"
                coeffs.append({})
                continue
            basis, rows = matrix_for(fw)
            sol = solve_unique(rows, vals, q)
            coeffs.append({e: c for e, c in zip(basis, sol) if c})
        out[key] = coeffs
    return out


def crt_tables(tables, primes):
    """Combine per-prime interpolations by CRT with symmetric lift."""
    M = 1
    for q in primes:
        M *= q
    out = {}
    for key in FORM_KEYS:
        coeffs = []
        for t in range(len(SYM)):
            exps = set()
            for tab in tables:
                exps |= set(tab[key][t])
            d = {}
            for e in exps:
                residues = [tab[key][t].get(e, 0) for tab in tables]
                x = 0
                for q, r in zip(primes, residues):
                    Mq = M // q
                    x += r * Mq * pow(Mq, -1, q)
                x %= M
                if x > M // 2:
                    x -= M
                assert abs(x) < M // (2**20), (
                    f"coefficient {x} too close to CRT modulus; add primes"
                )
                if x:
                    d[e] = x
            coeffs.append(d)
        out[key] = coeffs
    return out


# ---------------------------------------------------------------------------
# assembly of the shipped tables
# ---------------------------------------------------------------------------


def quad_exponents(m):
    e = [0, 0, 0, 0]
    a, b = QUAD[m]
    e[a] += 1
    e[b] += 1
    return tuple(e)


def b_terms(coeffs):
    """Expand the 55-slot symmetric representation into explicit terms
    [f-exponents, k-exponents, l-exponents, coefficient]."""
    terms = []
    for t, d in enumerate(coeffs):
        s, u = SYM[t]
        ek, el = quad_exponents(s), quad_exponents(u)
        for e, c in sorted(d.items()):
            terms.append([list(e), list(ek), list(el), c])
            if s != u:
                terms.append([list(e), list(el), list(ek), c])
    return terms


def delta_terms(btables):
    """delta = (2*B_14, 2*B_24, 2*B_34, B_44)(k, k): quartic terms in k."""
    out = []
    for idx, (key, scale) in enumerate(
        [((1, 4), 2), ((2, 4), 2), ((3, 4), 2), ((4, 4), 1)]
    ):
        acc = {}
        for t, d in enumerate(btables[key]):
            s, u = SYM[t]
            mult = scale * (1 if s == u else 2)
            ek = tuple(a + b for a, b in zip(quad_exponents(s), quad_exponents(u)))
            for e, c in d.items():
                acc[(e, ek)] = acc.get((e, ek), 0) + mult * c
        out.append(
            [[list(e), list(ek), [0, 0, 0, 0], c] for (e, ek), c in sorted(acc.items()) if c]
        )
    return out


def g_terms():
    """The Kummer quartic G = R*k4^2 + S*k4 + T as explicit terms.

    Derived once symbolically by eliminating the two points of a divisor
    from the coordinate relations; re-verified on every generator run via
    G(kappa(D)) = 0 on random divisors.
    """
    f0, f1, f2, f3, f4 = fs = sympy.symbols("f0 f1 f2 f3 f4")
    # k-exponent vector (k1,k2,k3,k4) -> coefficient polynomial in f
    table = {
        # R * k4^2 with R = k2^2 - 4 k1 k3
        (0, 2, 0, 2): sympy.Integer(1),
        (1, 0, 1, 2): sympy.Integer(-4),
        # S * k4
        (3, 0, 0, 1): -4 * f0,
        (2, 1, 0, 1): -2 * f1,
        (2, 0, 1, 1): -4 * f2,
        (1, 1, 1, 1): -2 * f3,
        (1, 0, 2, 1): -4 * f4,
        (0, 1, 2, 1): sympy.Integer(-2),
        # T
        (4, 0, 0, 0): f1**2 - 4 * f0 * f2,
        (3, 1, 0, 0): -4 * f0 * f3,
        (3, 0, 1, 0): -2 * f1 * f3,
        (2, 2, 0, 0): -4 * f0 * f4,
        (2, 1, 1, 0): 4 * f0 - 4 * f1 * f4,
        (2, 0, 2, 0): 2 * f1 - 4 * f2 * f4 + f3**2,
        (1, 3, 0, 0): -4 * f0,
        (1, 2, 1, 0): -4 * f1,
        (1, 1, 2, 0): -4 * f2,
        (1, 0, 3, 0): -2 * f3,
        (0, 0, 4, 0): sympy.Integer(1),
    }
    terms = []
    for ek, poly in sorted(table.items()):
        p = sympy.Poly(poly, *fs)
        for exps, c in p.terms():
            terms.append([list(exps), list(ek), [0, 0, 0, 0], int(c)])
    return terms


# ---------------------------------------------------------------------------
# evaluation helpers (shared with verification)
# ---------------------------------------------------------------------------


def eval_terms(terms, fvals, k, l, q=None):
    """Evaluate a term list at integer f-values and point tuples (mod q if
    given, else exact integers)."""
    acc = 0
    for ef, ek, el, c in terms:
        v = c
        for base, e in zip(fvals, ef):
            if e:
                v *= base**e
        for base, e in zip(k, ek):
            if e:
                v *= base**e
        for base, e in zip(l, el):
            if e:
                v *= base**e
        acc += v
        if q is not None:
            acc %= q
    return acc


def verify_tables(data, q, ncurves, seed):
    """Consistency gate on a fresh prime: for random curves and divisors,
    check G(kappa) = 0, the single-constant biquadratic relation for all 16
    index pairs, delta parallel to kappa(2D), and the absolute
    normalisation B_ij(k, e4) = k_i k_j."""
    rng = random.Random((seed, "verify", q))
    F = FpField(q)
    B = {key: data["B"]["%d%d" % key] for key in FORM_KEYS}

    def bval(i, j, fvals, k, l):
        key = (i, j) if i <= j else (j, i)
        return eval_terms(B[key], fvals, k, l, q)

    for _ in range(ncurves):
        cu = _random_squarefree_curve(q, rng)
        for _ in range(6):
            D = _random_divisor(cu, F, rng)
            E = _random_divisor(cu, F, rng)
            k = _coords(D, cu, F)
            l = _coords(E, cu, F)
            z = _coords(cantor_add(D, E, cu, F), cu, F)
            w = _coords(cantor_add(D, cantor_neg(E), cu, F), cu, F)
            assert eval_terms(data["G"], cu.f, k, E4, q) == 0, "G(kappa) != 0"
            # single constant solved from (4,4)
            b44 = bval(4, 4, cu.f, k, l)
            lhs44 = (z[3] * w[3] * 2) % q
            assert b44 != 0 or lhs44 == 0
            if b44 == 0:
                continue
            c = lhs44 * pow(2 * b44, -1, q) % q
            for i in range(1, 5):
                for j in range(1, 5):
                    lhs = (z[i - 1] * w[j - 1] + z[j - 1] * w[i - 1]) % q
                    assert lhs == 2 * c * bval(i, j, cu.f, k, l) % q, (
                        f"biquadratic relation fails at ({i},{j})"
                    )
            # normalisation rows
            for i in range(1, 5):
                for j in range(i, 5):
                    assert bval(i, j, cu.f, k, E4) == k[i - 1] * k[j - 1] % q, (
                        "normalisation B(k, e4) = k_i k_j fails"
                    )
            # duplication
            dbl = _coords(cantor_add(D, D, cu, F), cu, F)
            dv = [eval_terms(t, cu.f, k, E4, q) for t in data["delta"]]
            # proportionality dv ~ dbl
            ratios = set()
            for a, b in zip(dv, dbl):
                if b == 0:
                    assert a == 0, "delta not proportional to kappa(2D)"
                else:
                    ratios.add(a * pow(b, -1, q) % q)
            assert len(ratios) == 1 and 0 not in ratios, "delta not proportional"
    return True


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def generate(seed=20240801, ncurves=60, nprimes=2):
    primes = []
    q = 2**31
    while len(primes) < nprimes + 1:
        q = int(sympy.prevprime(q))
        if q % 4 == 3:
            primes.append(q)
    verify_prime = primes.pop()
    tables = [interpolate_prime(q, ncurves, seed) for q in primes]
    combined = crt_tables(tables, primes)
    data = {
        "version": 1,
        "description": (
            "Universal Kummer-surface forms for y^2 = x^5 + f4 x^4 + ... + f0: "
            "quartic G, duplication delta_1..4, biquadratic B_ij.  Terms are "
            "[f-exponents f0..f4, point exponents k1..k4, second-point "
            "exponents l1..l4, integer coefficient]."
        ),
        "G": g_terms(),
        "B": {"%d%d" % key: b_terms(combined[key]) for key in FORM_KEYS},
    }
    data["delta"] = delta_terms(combined)
    verify_tables(data, verify_prime, ncurves=8, seed=seed)
    return data


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = argv[0] if argv else "src/g2heights/data/kummer_forms.json"
    data = generate()
    with open(out, "w") as fh:
        json.dump(data, fh)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
