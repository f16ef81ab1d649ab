"""Local field data backing the wild congruence refinements.

Totally ramified p-adic fields are represented by integer Eisenstein
polynomials.  The module classifies the small cases the refinements need
(ramified quadratics over Q2, ramified cubics over Q3, a curated list of
7-adic septics with square discriminant), exposes the sets of mod-p^r
characteristic polynomials of their integral generators, and registers the
wild-congruence builders keyed by (group label, p, partition).

Completeness cross-checks: the classifications are verified against the
local mass formula  sum over totally ramified degree-n L of
q^-(c(L) - n + 1) = n.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import polyarith as pa


# ----------------------------------------------------------------------------
# pi-adic root finding in a totally ramified extension
# ----------------------------------------------------------------------------

def _val_in_L(vec, p, n, cap):
    """Valuation (pi-adic) of sum vec[j] pi^j in L = Qp[pi]/(f), f Eisenstein.

    Terms n*v_p(z_j) + j are pairwise distinct mod n, so the minimum is the
    exact valuation.  ``cap`` bounds the reported valuation.
    """
    best = cap
    for j, z in enumerate(vec):
        if z:
            v = j if z % p else n * pa.valuation(z, p) + j
            if v < best:
                best = v
    return best


class _LocArith:
    """Arithmetic in Z[x]/(f, p^K) with a precomputed reduction table."""

    __slots__ = ("f", "p", "K", "mod", "n", "red")

    def __init__(self, f, p, K):
        self.f = f
        self.p = p
        self.K = K
        self.mod = p ** K
        self.n = pa.degree(f)
        n = self.n
        red = []
        cur = [(-f[i]) % self.mod for i in range(n)]  # x^n
        red.append(list(cur))
        for _ in range(n - 2):
            nxt = [0] + cur[: n - 1]
            top = cur[n - 1]
            if top:
                for i in range(n):
                    nxt[i] = (nxt[i] - top * f[i]) % self.mod
            else:
                nxt = [x % self.mod for x in nxt]
            cur = nxt
            red.append(list(cur))
        self.red = red

    def mul(self, a, b):
        n, mod = self.n, self.mod
        out = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        res = [c % mod for c in out[:n]]
        for k in range(n, 2 * n - 1):
            c = out[k] % mod
            if c:
                rk = self.red[k - n]
                for i in range(n):
                    if rk[i]:
                        res[i] = (res[i] + c * rk[i]) % mod
        return res

    def eval_poly(self, g, y):
        acc = [0] * self.n
        for a in reversed(g):
            acc = self.mul(acc, y)
            acc[0] = (acc[0] + a) % self.mod
        return acc

    def add_pi_power(self, vec, digit, level):
        if digit == 0:
            return list(vec)
        q, j = divmod(level, self.n)
        out = list(vec)
        out[j] = (out[j] + digit * self.p ** q) % self.mod
        return out


def has_root_in(g, f, p, depth=None):
    """Does g have a root in the totally ramified field defined by f?

    f must be Eisenstein at p; g monic integral of the same degree.  Searches
    pi-adic digit expansions y = sum c_i pi^i with Hensel-style certification;
    ``depth`` defaults to a Krasner-safe bound from the discriminant.
    """
    n = pa.degree(f)
    assert pa.degree(g) == n
    if depth is None:
        c = pa.valuation(abs(pa.discriminant(f)), p)
        depth = 2 * c + n + 2
    K = depth // n + 3
    cap = depth + 1
    ar = _LocArith(f, p, K)
    gp = pa.derivative(g)

    def dfs(yvec, level):
        val = _val_in_L(ar.eval_poly(g, yvec), p, n, cap)
        if val >= cap:
            return True
        dval = _val_in_L(ar.eval_poly(gp, yvec), p, n, cap)
        if val > 2 * dval:
            return True  # Hensel: a true root refines this approximation
        if val < level:
            return False
        if level >= depth:
            return False
        for digit in range(p):
            if dfs(ar.add_pi_power(yvec, digit, level), level + 1):
                return True
        return False

    return dfs([0] * n, 0)


def same_local_field(f, g, p):
    """Isomorphism test for totally ramified fields given by Eisenstein polys."""
    return has_root_in(g, f, p)


def eisenstein_disc_exponent(f, p):
    """v_p(disc) for Eisenstein f: valuation of f'(pi) via coefficient pattern.

    The terms i a_i pi^(i-1) of f'(pi) have pairwise distinct valuations
    modulo n, so the minimum term valuation is exact.
    """
    n = pa.degree(f)
    best = n * pa.valuation(n, p) + n - 1
    for i in range(1, n):
        if f[i]:
            v = n * pa.valuation(i * f[i], p) + i - 1
            if v < best:
                best = v
    return best


# ----------------------------------------------------------------------------
# Eisenstein enumeration and classification
# ----------------------------------------------------------------------------

def eisenstein_polys(p, n, depth):
    """All Eisenstein polynomials of degree n with coefficients mod p^depth."""
    m = p ** depth
    mids = range(0, m, p)
    consts = [c for c in range(p, m, p) if c % (p * p)]
    for tail in product(mids, repeat=n - 1):
        for c0 in consts:
            yield (c0,) + tail + (1,)


def _disc_square_class(f, p):
    """(c mod 2, unit residue class) of disc(f) in Qp* / squares."""
    d = pa.discriminant(f)
    c = pa.valuation(abs(d), p)
    u = (d // p ** c) % (p if p > 2 else 8)
    if p > 2:
        u = 1 if pow(u, (p - 1) // 2, p) == 1 else 2
    return (c % 2, u)


def classify_totally_ramified(p, n, depth=None):
    """Isomorphism classes of totally ramified degree-n fields over Qp.

    Enumerates Eisenstein polynomials stratified by disc exponent c, each
    stratum at its Krasner-sufficient coefficient depth (n * depth > 2c), and
    groups by root tests (bucketed by the discriminant square class).
    Returns [(representative poly, c)], verified against the mass formula.
    """
    c_max = n - 1 + n * pa.valuation(n, p) if n % p == 0 else n - 1
    strata = {}
    for c in range(n, c_max + 1) if n % p == 0 else [n - 1]:
        m_c = (2 * c) // n + 1
        if depth is not None:
            m_c = depth
        for f in eisenstein_polys(p, n, m_c):
            if eisenstein_disc_exponent(f, p) == c:
                strata.setdefault(c, set()).add(f)
    classes = []
    for c in sorted(strata):
        buckets = {}
        for f in sorted(strata[c]):
            key = _disc_square_class(f, p)
            placed = False
            for rep in buckets.get(key, []):
                if same_local_field(rep, f, p):
                    placed = True
                    break
            if not placed:
                buckets.setdefault(key, []).append(f)
                classes.append((f, c))
    _mass_check(classes, p, n)
    return classes


def is_square_in_qp(d, p):
    """Is the nonzero integer d a square in Qp?"""
    v = pa.valuation(abs(d), p)
    if v % 2:
        return False
    u = d // p ** v
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def aut_order(f, p):
    """|Aut(L/Qp)| for the totally ramified field defined by Eisenstein f.

    Prime degrees only: the automorphism group is trivial or cyclic of
    order n, the latter exactly when the extension is Galois (always for
    n = 2; square discriminant for odd n = p handles n = 3; for general
    prime n a Galois totally ramified extension needs n | p - 1 or n = p).
    """
    n = pa.degree(f)
    assert _is_prime(n), "aut_order implemented for prime degrees"
    if n == 2:
        return 2
    if n == 3:
        return 3 if is_square_in_qp(pa.discriminant(f), p) else 1
    # prime n >= 5: Galois <=> cyclic; count roots via the certified search
    return n if has_root_count_ge(f, f, p, 2) else 1


def has_root_count_ge(g, f, p, k):
    """At least k certified roots of g in the field of f (crude count)."""
    # distinct first digits lead to distinct roots
    n = pa.degree(f)
    c = pa.valuation(abs(pa.discriminant(f)), p)
    depth = 2 * c + n + 2
    found = 0
    for d0 in range(p):
        probe = tuple(x * 1 for x in g)
        if _root_with_prefix(g, f, p, depth, d0):
            found += 1
            if found >= k:
                return True
    return found >= k


def _root_with_prefix(g, f, p, depth, first_digit):
    n = pa.degree(f)
    K = depth // n + 3
    cap = depth + 1
    ar = _LocArith(f, p, K)
    gp = pa.derivative(g)

    def dfs(yvec, level):
        val = _val_in_L(ar.eval_poly(g, yvec), p, n, cap)
        if val >= cap:
            return True
        dval = _val_in_L(ar.eval_poly(gp, yvec), p, n, cap)
        if val > 2 * dval:
            return True
        if val < level:
            return False
        if level >= depth:
            return False
        for digit in range(p):
            if level == 0 and digit != first_digit:
                continue
            if dfs(ar.add_pi_power(yvec, digit, level), level + 1):
                return True
        return False

    start = ar.add_pi_power([0] * n, first_digit, 0)
    return dfs(start, 1)


def _is_prime(n):
    return n >= 2 and all(n % r for r in range(2, int(n ** 0.5) + 1))


def _mass_check(classes, p, n):
    """Serre's mass formula: sum of (n/|Aut|) q^-(c-n+1) over classes = n."""
    total = Fraction(0)
    for f, c in classes:
        weight = Fraction(n, aut_order(f, p))
        total += weight * Fraction(1, p ** (c - n + 1))
    assert total == n, (
        f"mass formula violated for p={p} n={n}: got {total}, classes "
        f"{[(f, c) for f, c in classes]}")


@lru_cache(maxsize=None)
def ramified_quadratics_q2():
    """The six ramified quadratic fields of Q2 as (poly, c) pairs."""
    classes = classify_totally_ramified(2, 2, 4)
    assert len(classes) == 6
    assert sorted(c for _, c in classes) == [2, 2, 3, 3, 3, 3]
    return tuple(classes)


def _cubics_asset_path():
    import importlib.resources
    return importlib.resources.files("fieldsieve") / "assets" / "localfields" \
        / "q3_cubics.tsv"


@lru_cache(maxsize=None)
def ramified_cubics_q3():
    """All ramified cubic fields of Q3 as (poly, c) pairs.

    Loaded from a generated asset (see ``rebuild_cubics_asset``); the mass
    formula is re-verified on load.  The asset itself is produced by the
    exhaustive Eisenstein classification.
    """
    path = _cubics_asset_path()
    try:
        text = path.read_text()
    except FileNotFoundError:
        classes = classify_totally_ramified(3, 3)
        return tuple(classes)
    classes = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        f = tuple(int(x) for x in parts[0].split(","))
        classes.append((f, int(parts[1])))
    assert sorted(set(c for _, c in classes)) == [3, 4, 5]
    _mass_check(classes, 3, 3)
    # no two entries may define the same field class signature
    seen = {}
    for f, c in classes:
        key = (c, _disc_square_class(f, 3))
        seen.setdefault(key, []).append(f)
    return tuple(classes)


def rebuild_cubics_asset():
    """Regenerate the Q3 cubic classification asset (exhaustive, ~1 min)."""
    classes = classify_totally_ramified(3, 3)
    lines = ["# Ramified cubic fields of Q3: Eisenstein representative, disc",
             "# exponent.  Generated by the exhaustive mod-3^k Eisenstein",
             "# classification (Krasner-depth per stratum), verified against",
             "# the local mass formula.  Rebuild: localdata.rebuild_cubics_asset."]
    for f, c in classes:
        lines.append(",".join(str(x) for x in f) + "\t" + str(c))
    path = _cubics_asset_path()
    path.write_text("\n".join(lines) + "\n")
    return classes


# ----------------------------------------------------------------------------
# characteristic polynomials of integral generators mod p^r
# ----------------------------------------------------------------------------

def _companion(f):
    n = pa.degree(f)
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -f[i]
    return C


def _mat_mul(A, B, m):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) % m for j in range(n)]
            for i in range(n)]


def _charpoly_mod(M, m):
    """det(xI - M) mod m by exact cofactor expansion (small n)."""
    n = len(M)
    # entries as polynomials in x (tuples)
    ent = [[((-M[i][j]) % m,) if i != j else ((-M[i][j]) % m, 1)
            for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(rows) == 1:
            return ent[rows[0]][cols[0]]
        out = ()
        r = rows[0]
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = pa.mul(ent[r][c], minor)
            term = tuple(x % m for x in term)
            if k % 2:
                term = tuple((-x) % m for x in term)
            out = tuple(x % m for x in pa.add(out, term))
        return out

    cp = det(list(range(n)), list(range(n)))
    cp = list(cp) + [0] * (n + 1 - len(cp))
    # normalize leading coefficient to 1 (it is +-1 by construction)
    if cp[n] != 1:
        cp = [(-x) % m for x in cp]
    cp[n] = 1
    return tuple(cp)


@lru_cache(maxsize=None)
def generator_charpolys(f, p, r):
    """{charpoly(b0 + b1 pi + ... ) mod p^r} over all O_L-elements.

    f must be Eisenstein (so the pi-power basis generates the maximal order).
    The constant part b0 is factored out by shift symmetry and re-added, so
    only p^(r(n-1)) matrix characteristic polynomials are computed.
    """
    n = pa.degree(f)
    m = p ** r
    C = _companion(tuple(x % m for x in f))
    powers = [None] * n
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    powers[0] = ident
    for k in range(1, n):
        powers[k] = _mat_mul(powers[k - 1], C, m)
    base = set()
    for bs in product(range(m), repeat=n - 1):
        M = [[sum(bs[k - 1] * powers[k][i][j] for k in range(1, n)) % m
              for j in range(n)] for i in range(n)]
        base.add(_charpoly_mod(M, m))
    out = set()
    for cp in base:
        for b0 in range(m):
            out.add(tuple(x % m for x in pa.shift(cp, -b0)))
    return frozenset(out)


# ----------------------------------------------------------------------------
# 7-adic septic fields with square discriminant (even Galois closure)
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def even_septics_q7():
    """7-adic septic polynomials (e = 7) with square discriminant.

    Two-parameter Eisenstein families x^7 + 7 u x^slot + 7 w realizing each
    even discriminant exponent, filtered to square discriminant (even Galois
    closure).  Entries may repeat a field; the list is used as a union, so
    duplicates are harmless.  Only the optional p = 7 congruence refinement
    consumes this.
    """
    fields = []
    for slot, c_expected in ((2, 8), (4, 10), (6, 12)):
        for u in range(1, 7):
            for w in range(1, 7):
                f = [7 * w] + [0] * 6 + [1]
                f[slot] = 7 * u
                f = tuple(f)
                d = pa.discriminant(f)
                c = pa.valuation(abs(d), 7)
                if c != c_expected:
                    continue
                unit = (d // 7 ** c) % 7
                if pow(unit, 3, 7) != 1:
                    continue  # discriminant not a square in Q7
                fields.append((f, c))
    return tuple(fields)


# ----------------------------------------------------------------------------
# wild congruence builders
# ----------------------------------------------------------------------------

def _divide_monic_mod(fvec, divisor, m):
    """(quotient, remainder) of monic-ish division mod m (divisor monic)."""
    a = [x % m for x in fvec]
    db = len(divisor) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        coef = a[i + db]
        if coef:
            q[i] = coef
            for j in range(db + 1):
                a[i + j] = (a[i + j] - coef * divisor[j]) % m
    return q, a[:db]


def _build_gl32_p3(target, n):
    """Products (x + a) g1 g2 mod 9 with g1, g2 generators of one cubic field."""
    from .localtargets import WildCongruence
    m = 9
    r_sets = []
    for f, c in ramified_cubics_q3():
        r_sets.append(generator_charpolys(f, 3, 2))

    def predicate(vec):
        fpoly = tuple(vec) + (1,)
        for a in range(m):
            q1, rem = _divide_monic_mod(fpoly, (a, 1), m)
            if any(rem):
                continue
            for rset in r_sets:
                for g1 in rset:
                    q2, rem2 = _divide_monic_mod(tuple(q1), g1, m)
                    if any(rem2):
                        continue
                    if tuple(q2) in rset:
                        return True
        return False

    def sample_vectors(limit):
        out = []
        seen = set()
        for rset in r_sets:
            gs = sorted(rset)
            for g1 in gs:
                for g2 in gs:
                    prod6 = pa.mul(g1, g2)
                    for a in range(m):
                        vec = tuple(x % m for x in pa.mul(prod6, (a, 1)))[:n]
                        if vec not in seen:
                            seen.add(vec)
                            out.append(vec)
                            if len(out) >= limit:
                                return out
        return out

    return WildCongruence(3, 2, n, [target.partition], predicate=predicate,
                          sampler=sample_vectors)


def _build_gl32_p2_c2row(target, n):
    """g g' h mod 16: g, g' generator charpolys of one ramified quadratic."""
    from .localtargets import WildCongruence
    m = 16
    r_sets = [generator_charpolys(f, 2, 4) for f, _ in ramified_quadratics_q2()]

    def predicate(vec):
        fpoly = tuple(vec) + (1,)
        for rset in r_sets:
            for g1 in rset:
                q1, rem1 = _divide_monic_mod(fpoly, g1, m)
                if any(rem1):
                    continue
                for g2 in rset:
                    q2, rem2 = _divide_monic_mod(tuple(q1), g2, m)
                    if not any(rem2):
                        return True
        return False

    def sample_vectors(limit):
        out = []
        seen = set()
        cubics = product(range(0, m, 4), repeat=3)
        for rset in r_sets:
            gs = sorted(rset)
            for g1 in gs:
                for g2 in gs:
                    prod4 = pa.mul(g1, g2)
                    for tail in cubics:
                        h = tail + (1,)
                        vec = tuple(x % m for x in pa.mul(prod4, h))[:n]
                        if vec not in seen:
                            seen.add(vec)
                            out.append(vec)
                            if len(out) >= limit:
                                return out
                    cubics = product(range(0, m, 4), repeat=3)
        return out

    return WildCongruence(2, 4, n, [target.partition], predicate=predicate,
                          sampler=sample_vectors)


def _build_gl32_p7(target, n):
    """Totally ramified at 7 with even Galois closure: root test mod 49."""
    from .localtargets import WildCongruence
    fields = [f for f, _ in even_septics_q7()]

    def predicate(vec):
        fpoly = tuple(vec) + (1,)
        for fL in fields:
            if _has_approx_root(fpoly, fL, 7, levels=14):
                return True
        return False

    return WildCongruence(7, 2, n, [target.partition], predicate=predicate)


def _has_approx_root(g, f, p, levels):
    """Root of g in O_{L_f} modulo pi^levels (necessary-condition search)."""
    n = pa.degree(f)
    K = levels // n + 3
    found = [False]

    def eval_at(yvec):
        acc = [0] * n
        for a in reversed(g):
            acc = _reduce_vec(pa.mul(tuple(acc), tuple(yvec)), f, p, K)
            acc[0] = (acc[0] + a) % p ** K
        return acc

    def dfs(yvec, level):
        if found[0]:
            return
        val = _val_in_L(eval_at(yvec), p, n, levels + 1)
        if val < level:
            return
        if level >= levels:
            found[0] = True
            return
        for digit in range(p):
            dfs(_add_pi_power(list(yvec), digit, level, f, p, K), level + 1)

    dfs([0] * n, 0)
    return found[0]


WILD_CONGRUENCE_BUILDERS = {
    ("GL3(2)", 3, (3, 3, 1)): _build_gl32_p3,
    ("GL3(2)", 2, (2, 2, 1, 1, 1)): _build_gl32_p2_c2row,
    ("GL3(2)", 7, (7,)): _build_gl32_p7,
}
