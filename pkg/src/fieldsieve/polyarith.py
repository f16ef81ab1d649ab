"""Exact arithmetic on monic integer polynomials.

Polynomials are tuples of Python ints in *ascending* order: index i holds the
coefficient of x^i, so (3, -7, 0, 0, 0, 0, 0, 1) is x^7 - 7x + 3.  This
convention is shared by every module and file format in the package.

Hot-path functions work on bare tuples; :class:`IntPolynomial` is a thin
validated wrapper used at API boundaries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath


# ----------------------------------------------------------------------------
# basic tuple arithmetic
# ----------------------------------------------------------------------------

def normalize(c):
    """Drop zero leading terms; the zero polynomial is ()."""
    c = tuple(c)
    end = len(c)
    while end > 0 and c[end - 1] == 0:
        end -= 1
    return c[:end]


def degree(c):
    return len(c) - 1


def evaluate(c, x):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def add(a, b):
    n = max(len(a), len(b))
    return normalize(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                           for i in range(n)))


def neg(a):
    return tuple(-x for x in a)


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def derivative(c):
    return normalize(tuple(i * c[i] for i in range(1, len(c))))


def divmod_exact(a, b):
    """Quotient and remainder of a by monic b (exact over Z)."""
    assert b and b[-1] == 1, "divisor must be monic"
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return (), normalize(a)
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        coef = a[i + db]
        if coef:
            q[i] = coef
            for j in range(db + 1):
                a[i + j] -= coef * b[j]
    return normalize(q), normalize(a)


def shift(c, t):
    """f(x + t), exact."""
    out = ()
    for a in reversed(c):
        out = add(mul(out, (t, 1)), (a,))
    return out


def compose(c, g):
    """f(g(x))."""
    out = ()
    for a in reversed(c):
        out = add(mul(out, g), (a,))
    return out


def is_monic(c):
    return bool(c) and c[-1] == 1


# ----------------------------------------------------------------------------
# resultants and discriminants (subresultant PRS)
# ----------------------------------------------------------------------------

def pseudo_rem(a, b):
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return normalize(a)
    lb = b[-1]
    r = list(a)
    e = da - db + 1
    while r and len(r) - 1 >= db:
        e -= 1
        coef = r[-1]
        r = [lb * x for x in r]
        shift_ = len(r) - 1 - db
        for j in range(db + 1):
            r[shift_ + j] -= coef * b[j]
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        m = lb ** e
        r = [m * x for x in r]
    return normalize(r)


def resultant(f, g):
    """Res(f, g) for integer polynomials, via the subresultant PRS."""
    f, g = normalize(f), normalize(g)
    if not f or not g:
        return 0
    if degree(f) == 0:
        return f[0] ** degree(g)
    if degree(g) == 0:
        return g[0] ** degree(f)
    s = 1
    if degree(f) < degree(g):
        if (degree(f) & 1) and (degree(g) & 1):
            s = -s
        f, g = g, f
    gg, h = 1, 1
    while True:
        df, dg = degree(f), degree(g)
        d = df - dg
        if (df & 1) and (dg & 1):
            s = -s
        r = pseudo_rem(f, g)
        f = g
        if not r:
            return 0
        den = gg * h ** d
        g = tuple(x // den for x in r)
        gg = f[-1]
        if d > 0:
            h = gg ** d // h ** (d - 1)
        if degree(g) == 0:
            break
    df = degree(f)
    num = g[0] ** df
    if df > 1:
        num //= h ** (df - 1)
    return s * num


def discriminant(f):
    """Discriminant of monic f, degree >= 2: (-1)^(n(n-1)/2) Res(f, f').

    Zero exactly when f has a repeated root.
    """
    assert is_monic(f) and degree(f) >= 2
    n = degree(f)
    r = resultant(f, derivative(f))
    return -r if (n * (n - 1) // 2) & 1 else r


def disc_as_poly_in_const(f_tail):
    """Coefficients q with disc(f_tail + (c,)) = sum_i q[i] c^i.

    ``f_tail`` has constant term 0.  The discriminant of a monic degree-n
    polynomial is a polynomial of degree n-1 in the constant coefficient, so
    n evaluations determine it; used to batch discriminants over arithmetic
    progressions of the constant term.
    """
    n = degree(f_tail)
    ys = [discriminant((x,) + f_tail[1:]) for x in range(n)]
    # Newton forward differences at 0, 1, ..., n-1
    diffs = [ys[:]]
    for _ in range(1, n):
        prev = diffs[-1]
        diffs.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    out = [0] * n
    basis = [1]          # falling factorial c(c-1)...(c-k+1), ascending coeffs
    fact = 1
    for k in range(n):
        if k:
            fact *= k
        dk = diffs[k][0]
        assert dk % fact == 0
        coef = dk // fact
        for i, b in enumerate(basis):
            out[i] += coef * b
        new = [0] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new[i + 1] += b
            new[i] -= k * b
        basis = new
    return tuple(out)


# ----------------------------------------------------------------------------
# arithmetic over F_p
# ----------------------------------------------------------------------------

def pnorm(c, p):
    return normalize(tuple(x % p for x in c))


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return normalize(tuple(x % p for x in out))


def pdivmod(a, b, p):
    b = pnorm(b, p)
    assert b
    inv = pow(b[-1], p - 2, p)
    a = [x % p for x in a]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        coef = a[i + db] * inv % p
        if coef:
            q[i] = coef
            for j in range(db + 1):
                a[i + j] = (a[i + j] - coef * b[j]) % p
    return normalize(q), normalize(a)


def pgcd(a, b, p):
    a, b = pnorm(a, p), pnorm(b, p)
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(x * inv % p for x in a)
    return a


def ppow_mod(base, e, mod, p):
    result = (1,)
    base = pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, p), mod, p)[1]
        base = pdivmod(pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def squarefree_decomposition_modp(f, p):
    """[(g, m)] with f = prod g^m mod p, g squarefree, pairwise coprime."""
    f = pnorm(f, p)
    inv = pow(f[-1], p - 2, p)
    f = tuple(x * inv % p for x in f)
    out = []
    d = pnorm(derivative(f), p)
    if not d:
        # f = v(x^p)
        v = tuple(f[j] for j in range(0, len(f), p))
        return [(g, p * m) for g, m in squarefree_decomposition_modp(v, p)]
    c = pgcd(f, d, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while degree(w) > 0:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if degree(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if degree(c) > 0:
        v = tuple(c[j] for j in range(0, len(c), p))
        for g, m in squarefree_decomposition_modp(v, p):
            out.append((g, p * m))
    return out


def distinct_degree_factorization(f, p):
    """[(d, product of the irreducible factors of degree d)] for squarefree f."""
    out = []
    h = (0, 1)
    v = f
    d = 0
    while degree(v) >= 2 * (d + 1):
        d += 1
        h = ppow_mod(h, p, v, p)
        g = pgcd(sub(h, (0, 1)), v, p)
        if degree(g) > 0:
            out.append((d, g))
            v = pdivmod(v, g, p)[0]
            h = pdivmod(h, v, p)[1]
    if degree(v) > 0:
        out.append((degree(v), v))
    return out


def _edf_split(f, d, p, rng):
    """Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = tuple(rng.randrange(p) for _ in range(n)) + (1,)
        if p == 2:
            t = pdivmod(a, f, p)[1]
            s = t
            for _ in range(d - 1):
                t = pdivmod(pmul(t, t, p), f, p)[1]
                s = pnorm(add(s, t), p)
            g = pgcd(s, f, p)
        else:
            e = (p ** d - 1) // 2
            t = ppow_mod(a, e, f, p)
            g = pgcd(sub(t, (1,)), f, p)
        if 0 < degree(g) < n:
            return (_edf_split(g, d, p, rng)
                    + _edf_split(pdivmod(f, g, p)[0], d, p, rng))


def factor_modp(f, p):
    """Factorization of monic f mod p as [(monic irreducible, multiplicity)].

    Deterministic: equal-degree splitting uses an RNG seeded from (f mod p, p).
    """
    rng = random.Random((tuple(pnorm(f, p)), p, 0xF1E1D).__hash__())
    out = []
    for g, m in squarefree_decomposition_modp(f, p):
        for d, prod in distinct_degree_factorization(g, p):
            for irr in _edf_split(prod, d, p, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (degree(t[0]), t[0]))
    return out


@dataclass(frozen=True)
class FactorShape:
    """Multiset of (degree, multiplicity) pairs of a factorization over F_p."""

    pairs: tuple

    @property
    def total_degree(self):
        return sum(d * m for d, m in self.pairs)

    def multiplicities(self):
        return tuple(m for _, m in self.pairs)

    def ramified_part(self):
        return tuple((d, m) for d, m in self.pairs if m > 1)


def factor_shape_modp(f, p):
    """Factorization shape of monic f mod p (no explicit factors needed)."""
    assert is_monic(f)
    pairs = []
    for g, m in squarefree_decomposition_modp(f, p):
        for d, prod in distinct_degree_factorization(g, p):
            pairs.extend([(d, m)] * (degree(prod) // d))
    pairs.sort()
    shape = FactorShape(tuple(pairs))
    assert shape.total_degree == degree(f)
    return shape


# ----------------------------------------------------------------------------
# Hensel lifting and factorization over Z (small degrees)
# ----------------------------------------------------------------------------

def _xgcd_modp(a, b, p):
    r0, r1 = pnorm(a, p), pnorm(b, p)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, pnorm(sub(s0, pmul(q, s1, p)), p)
        t0, t1 = t1, pnorm(sub(t0, pmul(q, t1, p)), p)
    inv = pow(r0[-1], p - 2, p)
    return (tuple(x * inv % p for x in r0),
            tuple(x * inv % p for x in s0),
            tuple(x * inv % p for x in t0))


def pnormk(c, m):
    return normalize(tuple(x % m for x in c))


def _centered(c, m):
    half = m // 2
    return normalize(tuple(x - m if x > half else x for x in pnormk(c, m)))


def _divmod_monic_mod(a, b, m):
    """divmod by monic b in (Z/m)[x]."""
    a = [x % m for x in a]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        coef = a[i + db]
        if coef:
            q[i] = coef
            for j in range(db + 1):
                a[i + j] = (a[i + j] - coef * b[j]) % m
    return normalize(q), normalize(a)


def _hensel_pair(f, g, h, s, t, p, target):
    """Lift f = g*h (mod p), s*g+t*h = 1 (mod p) to modulus >= target.

    f, g, h monic.  Returns (g, h, modulus).
    """
    m = p
    while m < target:
        m2 = m * m
        e = pnormk(sub(f, mul(g, h)), m2)
        q, r = _divmod_monic_mod(mul(s, e), h, m2)
        h_new = pnormk(add(h, r), m2)
        # recover the cofactor by exact division: h_new stays monic
        g_new, rem = _divmod_monic_mod(f, h_new, m2)
        assert not rem, "hensel step lost divisibility"
        g, h = g_new, h_new
        # refresh the Bezout pair
        b = pnormk(sub(add(mul(s, g), mul(t, h)), (1,)), m2)
        qq, d = _divmod_monic_mod(mul(s, b), h, m2)
        s = pnormk(sub(s, d), m2)
        t = pnormk(sub(sub(t, mul(t, b)), mul(qq, g)), m2)
        m = m2
    return g, h, m


def hensel_lift_factors(f, factors_modp, p, k):
    """Lift the monic mod-p factorization of f to factors mod p^k."""
    target = p ** k
    if len(factors_modp) == 1:
        return [pnormk(f, target)]
    g = factors_modp[0]
    h = (1,)
    for other in factors_modp[1:]:
        h = pmul(h, other, p)
    _, s, t = _xgcd_modp(g, h, p)
    g_lift, h_lift, m = _hensel_pair(f, g, h, s, t, p, target)
    g_lift = pnormk(g_lift, target)
    h_lift = pnormk(h_lift, target)
    rest = hensel_lift_factors(_centered(h_lift, target), factors_modp[1:], p, k)
    return [g_lift] + rest


def mignotte_bound(f):
    """Bound on the coefficients of any monic divisor of monic f."""
    n = degree(f)
    norm = math.isqrt(sum(c * c for c in f)) + 1
    return math.comb(n, n // 2) * norm


def _next_prime(p):
    q = p + 1
    while True:
        if q >= 2 and all(q % r for r in range(2, math.isqrt(q) + 1)):
            return q
        q += 1


def factor_z(f):
    """Monic squarefree integer polynomial -> list of monic irreducible factors."""
    f = normalize(f)
    assert is_monic(f)
    if degree(f) == 1:
        return [f]
    d = discriminant(f)
    assert d != 0, "factor_z requires a squarefree polynomial"
    best = None
    p = 2
    tried = 0
    while tried < 10:
        p = _next_prime(p)
        if d % p == 0:
            continue
        tried += 1
        fac = factor_modp(f, p)
        if len(fac) == 1:
            return [f]
        if best is None or len(fac) < len(best[1]):
            best = (p, fac)
    p, fac = best
    bound = mignotte_bound(f)
    k = 1
    while p ** k < 4 * bound:
        k += 1
    m = p ** k
    lifted = hensel_lift_factors(f, [g for g, _ in fac], p, k)
    result = []
    remaining = f
    available = list(range(len(lifted)))
    size = 1
    while 2 * size <= sum(degree(lifted[i]) for i in available):
        found = True
        while found:
            found = False
            for combo in combinations(available, size):
                cand = (1,)
                for i in combo:
                    cand = pnormk(mul(cand, lifted[i]), m)
                cand = _centered(cand, m)
                if not is_monic(cand):
                    continue
                q, r = divmod_exact(remaining, cand)
                if not r:
                    result.append(cand)
                    for i in combo:
                        available.remove(i)
                    remaining = q
                    found = True
                    break
        size += 1
    if degree(remaining) > 0:
        result.append(remaining)
    return sorted(result, key=lambda c: (degree(c), c))


def is_irreducible(f):
    """True iff monic f is irreducible over Q (intended for degree <= 14)."""
    f = normalize(f)
    assert is_monic(f) and degree(f) >= 1
    if degree(f) == 1:
        return True
    if f[0] == 0:
        return False
    d = discriminant(f)
    if d == 0:
        return False
    p = 2
    checked = 0
    while checked < 4:
        p = _next_prime(p)
        if d % p:
            checked += 1
            shape = factor_shape_modp(f, p)
            if len(shape.pairs) == 1 and shape.pairs[0][1] == 1:
                return True
    return len(factor_z(f)) == 1


# ----------------------------------------------------------------------------
# integer helpers
# ----------------------------------------------------------------------------

def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n, seed=1):
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n):
    """Prime factorization {p: e} of a positive integer."""
    assert n > 0
    out = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = m
        seed = 1
        while d == m:
            d = _pollard_rho(m, seed)
            seed += 1
        stack.append(d)
        stack.append(m // d)
    return out


def is_perfect_square(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def valuation(n, p):
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ----------------------------------------------------------------------------
# orders and field discriminant valuations
# ----------------------------------------------------------------------------

class SaturationError(Exception):
    """The p-maximal order loop exceeded its iteration cap."""


@dataclass(frozen=True)
class ValuationReport:
    """Per-prime polynomial vs field discriminant valuations."""

    p: int
    v_poly: int
    v_field: int

    @property
    def v_index(self):
        return (self.v_poly - self.v_field) // 2

    def __post_init__(self):
        assert self.v_field <= self.v_poly
        assert (self.v_poly - self.v_field) % 2 == 0


def _xgcd_int(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_rows(rows, n):
    """Hermite form (ascending pivot columns, positive pivots, reduced above)."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    for col in range(n - 1, -1, -1):
        pivot = None
        rest = []
        for r in rows:
            if r[col]:
                if pivot is None:
                    pivot = r
                else:
                    a, b = pivot[col], r[col]
                    g, x, y = _xgcd_int(a, b)
                    newp = [x * pa + y * ra for pa, ra in zip(pivot, r)]
                    newr = [(a // g) * ra - (b // g) * pa
                            for pa, ra in zip(pivot, r)]
                    pivot = newp
                    if any(newr):
                        rest.append(newr)
            else:
                rest.append(r)
        if pivot is not None:
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            out.append((col, pivot))
        rows = rest
    out.sort(key=lambda t: t[0])
    mat = [r for _, r in out]
    cols = [c for c, _ in out]
    for i in range(len(mat)):
        pc = cols[i]
        for k in range(len(mat)):
            if k != i and mat[k][pc]:
                q = mat[k][pc] // mat[i][pc]
                if q:
                    mat[k] = [a - q * b for a, b in zip(mat[k], mat[i])]
    return mat


def _solve_upper(hnf, vec):
    """x with x * hnf = vec, exact rationals (hnf rows with ascending pivots)."""
    n = len(vec)
    x = [Fraction(0)] * len(hnf)
    v = [Fraction(a) for a in vec]
    for i in range(len(hnf) - 1, -1, -1):
        row = hnf[i]
        pc = max(j for j in range(n) if row[j])
        coef = v[pc] / row[pc]
        x[i] = coef
        if coef:
            for j in range(n):
                if row[j]:
                    v[j] -= coef * row[j]
    if any(v):
        raise ValueError("vector outside lattice span")
    return x


def _hnf_det(mat):
    det = 1
    for i, row in enumerate(mat):
        det *= row[max(j for j in range(len(row)) if row[j])]
    return abs(det)


def _kernel_modp(rows, p):
    """Basis of {c : sum_i c_i rows[i] = 0 mod p} (left kernel)."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    a = [[rows[i][j] % p for j in range(n)] for i in range(m)]
    t = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, m):
            if a[i][col]:
                sel = i
                break
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        t[r], t[sel] = t[sel], t[r]
        inv = pow(a[r][col], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        t[r] = [x * inv % p for x in t[r]]
        for i in range(m):
            if i != r and a[i][col]:
                c = a[i][col]
                a[i] = [(x - c * y) % p for x, y in zip(a[i], a[r])]
                t[i] = [(x - c * y) % p for x, y in zip(t[i], t[r])]
        r += 1
        if r == m:
            break
    return [t[i] for i in range(m) if not any(a[i])]


class _Order:
    """Order in Q[x]/(f): integer basis rows over the power basis / den.

    Basis rows are kept in Hermite form; ``mult_table`` gives exact integer
    structure constants (w_i * w_j in order coordinates), so that arithmetic
    in O/p^k O is ordinary coordinate arithmetic.
    """

    __slots__ = ("f", "n", "basis", "den", "_tab")

    def __init__(self, f, basis, den):
        self.f = f
        self.n = degree(f)
        self.basis = hnf_rows(basis, self.n)
        self.den = den
        self._tab = None

    def reduce_mod_f(self, vec):
        _, r = divmod_exact(tuple(vec), self.f)
        out = list(r) + [0] * (self.n - len(r))
        return out[: self.n]

    def mult_table(self):
        if self._tab is None:
            n = self.n
            tab = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1):
                    prod = self.reduce_mod_f(mul(tuple(self.basis[i]),
                                                 tuple(self.basis[j])))
                    coords = _solve_upper(self.basis, prod)
                    row = []
                    for c in coords:
                        c = c / self.den
                        assert c.denominator == 1, "order not closed"
                        row.append(int(c))
                    tab[i][j] = tab[j][i] = row
            self._tab = tab
        return self._tab

    def coord_mul(self, a, b, mod):
        """Product of order elements given by coordinate vectors, mod ``mod``."""
        n = self.n
        tab = self.mult_table()
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            ti = tab[i]
            for j in range(n):
                bj = b[j]
                if not bj:
                    continue
                c = ai * bj
                tij = ti[j]
                for k in range(n):
                    if tij[k]:
                        out[k] += c * tij[k]
        return [x % mod for x in out]

    def one_coords(self):
        """Coordinates of 1 in the order basis."""
        coords = _solve_upper(self.basis, [self.den] + [0] * (self.n - 1))
        return [int(c) for c in coords]


def _frobenius_rows_modp(order, p):
    """Rows = coordinates of (basis elt)^(p^m) in O/pO, p^m >= n."""
    n = order.n
    m = 1
    q = p
    while q < n:
        q *= p
        m += 1
    rows = []
    for i in range(n):
        elt = [1 if j == i else 0 for j in range(n)]
        for _ in range(m):
            # elt <- elt^p in O/pO by square and multiply
            result = None
            base = elt
            e = p
            while e:
                if e & 1:
                    result = base if result is None else order.coord_mul(result, base, p)
                e >>= 1
                if e:
                    base = order.coord_mul(base, base, p)
            elt = result
        rows.append(elt)
    return rows


def _saturate_once(order, p):
    """One enlargement step toward the p-maximal order: (grew, order, vdrop)."""
    n = order.n
    rad_kernel = _kernel_modp(_frobenius_rows_modp(order, p), p)
    # lattice J = radical lift + p*O, in order coordinates
    j_rows = [list(v) for v in rad_kernel]
    j_rows += [[p if j == i else 0 for j in range(n)] for i in range(n)]
    j_hnf = hnf_rows(j_rows, n)
    big_rows = []
    ident = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        block = []
        for vk in j_hnf:
            # w_i * v_k in order coordinates (exact)
            prod = [0] * n
            tab = order.mult_table()
            for j in range(n):
                if vk[j]:
                    tij = tab[i][j]
                    for k in range(n):
                        if tij[k]:
                            prod[k] += vk[j] * tij[k]
            coords = _solve_upper(j_hnf, prod)
            for c in coords:
                assert c.denominator == 1
                block.append(int(c) % p)
        big_rows.append(block)
    kern = _kernel_modp(big_rows, p)
    if not kern:
        return False, order, 0
    new_rows = [[x * p for x in b] for b in order.basis]
    for c in kern:
        vec = [0] * n
        for i, ci in enumerate(c):
            if ci:
                for j in range(n):
                    vec[j] += ci * order.basis[i][j]
        new_rows.append(vec)
    new_hnf = hnf_rows(new_rows, n)
    old_det = _hnf_det(hnf_rows([[x * p for x in b] for b in order.basis], n))
    new_det = _hnf_det(new_hnf)
    assert old_det % new_det == 0
    ratio = old_det // new_det
    gain = 0
    while ratio > 1 and ratio % p == 0:
        ratio //= p
        gain += 1
    assert ratio == 1
    if gain == 0:
        return False, order, 0
    return True, _Order(order.f, new_hnf, order.den * p), 2 * gain


def pmaximal_order(f, p, cap=None):
    """p-maximal order of Q[x]/(f).  Returns (order, v_p(disc f) - v_p(disc K))."""
    n = degree(f)
    order = _Order(f, [[1 if j == i else 0 for j in range(n)] for i in range(n)], 1)
    vdrop = 0
    if cap is None:
        cap = 4 * n * 70 + 10
    for _ in range(cap):
        grew, order, gain = _saturate_once(order, p)
        vdrop += gain
        if not grew:
            return order, vdrop
    raise SaturationError(f"p-maximal order loop exceeded cap at p={p}")


def _monic_lift_centered(c, p, deg):
    lst = list(_centered(c, p)) + [0] * (deg + 1)
    lst = lst[: deg + 1]
    lst[deg] = 1
    return tuple(lst)


def dedekind_maximal(f, p):
    """Dedekind's criterion: True iff the equation order Z[x]/(f) is p-maximal."""
    fac = factor_modp(f, p)
    gbar = (1,)
    hbar = (1,)
    for g, m in fac:
        gbar = pmul(gbar, g, p)
        for _ in range(m - 1):
            hbar = pmul(hbar, g, p)
    g_lift = _monic_lift_centered(gbar, p, degree(gbar))
    h_lift = _monic_lift_centered(hbar, p, degree(hbar))
    diff = sub(f, mul(g_lift, h_lift))
    assert all(x % p == 0 for x in diff)
    big_m = tuple(x // p for x in diff)
    g1 = pgcd(pnorm(big_m, p), pgcd(gbar, hbar, p), p)
    return degree(g1) <= 0


def field_disc_valuation(f, p, cap=None):
    """Exact valuation at p of the field discriminant of Q[x]/(f).

    Fast paths: v_p(disc f) < 2 and Dedekind's maximality test; the complete
    fallback saturates the order to p-maximality.  Raises SaturationError
    past the iteration cap rather than returning a wrong answer.
    """
    f = normalize(f)
    assert is_monic(f)
    d = discriminant(f)
    assert d != 0, "repeated roots: not a field"
    v = valuation(abs(d), p)
    if v < 2:
        return ValuationReport(p, v, v)
    if dedekind_maximal(f, p):
        return ValuationReport(p, v, v)
    _, drop = pmaximal_order(f, p, cap)
    return ValuationReport(p, v, v - drop)


def maximal_order(f, primes=None):
    """Maximal order of Q[x]/(f): (rows over power basis, denominator).

    ``primes`` defaults to the primes whose square divides disc(f).
    """
    f = normalize(f)
    n = degree(f)
    d = abs(discriminant(f))
    assert d != 0
    if primes is None:
        primes = sorted(q for q, e in factorize(d).items() if e >= 2)
    rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    den = 1
    for p in primes:
        order, _ = pmaximal_order(f, p)
        newden = den * order.den // math.gcd(den, order.den)
        all_rows = [[x * (newden // den) for x in r] for r in rows]
        all_rows += [[x * (newden // order.den) for x in r] for r in order.basis]
        rows = hnf_rows(all_rows, n)
        den = newden
    return rows, den


def field_discriminant(f):
    """(sign, {p: e}) for the field discriminant of irreducible monic f."""
    d = discriminant(f)
    assert d != 0
    sign = 1 if d > 0 else -1
    out = {}
    for p, e in sorted(factorize(abs(d)).items()):
        if e < 2:
            out[p] = e
            continue
        rep = field_disc_valuation(f, p)
        if rep.v_field:
            out[p] = rep.v_field
    return sign, out


def field_disc_value(f):
    sign, fac = field_discriminant(f)
    val = 1
    for p, e in fac.items():
        val *= p ** e
    return sign * val


# ----------------------------------------------------------------------------
# certified complex roots
# ----------------------------------------------------------------------------

def _eval_with_bound(f, z, prec):
    """(Horner value, rigorous absolute error bound) at an mpc point."""
    val = mpmath.mpc(0)
    mag = mpmath.mpf(0)
    az = abs(z)
    for a in reversed(f):
        val = val * z + a
        mag = mag * az + abs(a)
    err = mag * mpmath.mpf(2) ** (-(prec - 4)) * (4 * len(f))
    return val, err


def roots_high_precision(f, bits=128, max_bits=1 << 16):
    """Certified complex roots of squarefree monic f.

    Returns (roots, radii, prec): each disk |z - roots[i]| <= radii[i]
    contains exactly one root, the disks are pairwise disjoint, and every
    radius is below 2^-bits.  Precision doubles until this holds.
    """
    f = normalize(f)
    n = degree(f)
    assert n >= 1
    fp = derivative(f)
    prec = max(2 * bits, 64)
    while prec <= max_bits:
        with mpmath.workprec(prec + 32):
            try:
                rts = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f)],
                                       maxsteps=400, extraprec=prec // 2)
            except (mpmath.libmp.libhyper.NoConvergence, ZeroDivisionError):
                prec *= 2
                continue
            radii = []
            ok = True
            for z in rts:
                fz, efz = _eval_with_bound(f, z, prec + 32)
                fpz, efpz = _eval_with_bound(fp, z, prec + 32)
                denom = abs(fpz) - efpz
                if denom <= 0:
                    ok = False
                    break
                radii.append((n * (abs(fz) + efz) / denom) * (1 + mpmath.mpf(2) ** -40))
            if ok:
                lim = mpmath.mpf(2) ** (-bits)
                for i in range(n):
                    if radii[i] >= lim:
                        ok = False
                        break
                    for j in range(i + 1, n):
                        if abs(rts[i] - rts[j]) <= radii[i] + radii[j]:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                return list(rts), radii, prec
        prec *= 2
    raise RuntimeError("root precision escalation exceeded cap")


# ----------------------------------------------------------------------------
# IntPolynomial wrapper
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial; coefficients ascending."""

    coeffs: tuple

    def __post_init__(self):
        c = normalize(self.coeffs)
        assert c and c[-1] == 1, "polynomial must be monic"
        assert len(c) >= 2, "degree must be >= 1"
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def discriminant(self):
        return discriminant(self.coeffs)

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            if i == 0:
                terms.append(f"{a:+d}")
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if abs(a) == 1:
                    terms.append(("+" if a > 0 else "-") + xs)
                else:
                    terms.append(f"{a:+d}*{xs}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s
