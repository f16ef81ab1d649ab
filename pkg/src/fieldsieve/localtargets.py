"""Local ramification targets and coefficient congruences.

A target at a prime p prescribes the inertia orbit partition on the searched
degree n together with the discriminant exponents (c_n, c_m) in the two
degrees.  Tame targets are derived from the group actions; wild targets are
read from verified data assets.  Every target compiles to a set of
coefficient-vector congruences (the vector of the n non-leading coefficients
of a monic polynomial) modulo a prime power, and congruences at several
primes combine by the Chinese remainder theorem.
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import permgroups as pg
from . import polyarith as pa


# ----------------------------------------------------------------------------
# data types
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalTarget:
    """Ramification prescription at one prime, in both degrees."""

    p: int
    partition: tuple     # degree-n side orbit partition used for the search
    c_n: int
    c_m: int
    wild: bool
    level: int = 1       # congruence modulus exponent r (modulus p^r)

    def __post_init__(self):
        assert self.c_n <= self.c_m
        if not self.wild:
            assert self.c_n == pg.tame_exponent(self.partition)


@dataclass(frozen=True)
class WildDatum:
    """One row of a wild ramification table."""

    p: int
    inertia: str
    decomposition: tuple
    lambda_n_variants: tuple
    lambda_m: tuple
    pairs: tuple          # ((c_n, c_m), ...)
    search_variant: tuple

    def __post_init__(self):
        assert all(cn <= cm for cn, cm in self.pairs)


class MissingWildDataError(KeyError):
    """congruences_wild was asked for a (p, target) without a data asset."""


# ----------------------------------------------------------------------------
# wild tables (assets)
# ----------------------------------------------------------------------------

_WILD_FILES = {
    "GL3(2)": "wild/gl32_wild.tsv",
    "A5": "wild/a5_wild.tsv",
    "S5": "wild/s5_wild.tsv",
}


def _parse_partition(text):
    return tuple(sorted((int(x) for x in text.split(".")), reverse=True))


@lru_cache(maxsize=None)
def load_wild_table(label):
    label = pg.GROUP_ALIASES[label]
    root = importlib.resources.files("fieldsieve") / "assets"
    text = (root / _WILD_FILES[label]).read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p, inertia, decomp, lam_n, lam_m, pairs, variant = line.split("\t")
        rows.append(WildDatum(
            p=int(p),
            inertia=inertia,
            decomposition=tuple(decomp.split(",")),
            lambda_n_variants=tuple(_parse_partition(v)
                                    for v in lam_n.split("|")),
            lambda_m=_parse_partition(lam_m),
            pairs=tuple(tuple(int(x) for x in pr.split(":"))
                        for pr in pairs.split(",")),
            search_variant=_parse_partition(variant),
        ))
    return tuple(rows)


def verify_wild_table(label):
    """Machine-check a wild table against the group actions.

    For every inertia isomorphism type in the table, the set of (lambda_n,
    lambda_m) orbit pairs over all subgroups of that type must equal the
    table's variants; every (c_n, c_m) pair must admit a consistent
    ramification filtration.  Returns a list of human-readable check lines;
    raises AssertionError on any mismatch.
    """
    group = pg.load_group(label)
    rows = load_wild_table(label)
    subs = group.subgroups_by_type()
    report = []
    by_iso = {}
    for row in rows:
        by_iso.setdefault(row.inertia, []).append(row)
    for iso, iso_rows in sorted(by_iso.items()):
        key = pg.ISO_KEYS[iso]
        subgroups = subs.get(key, [])
        assert subgroups, f"{label}: no subgroup of type {iso} found"
        found = set()
        for sub in subgroups:
            found.add((group.orbit_partition(sub, "n"),
                       group.orbit_partition(sub, "m")))
        expect = set()
        for row in iso_rows:
            for lam in row.lambda_n_variants:
                expect.add((lam, row.lambda_m))
        assert found == expect, (
            f"{label}/{iso}: orbit pairs {sorted(found)} != table "
            f"{sorted(expect)}")
        report.append(f"{label} {iso}: orbit partitions match "
                      f"({len(subgroups)} subgroups)")
    for row in rows:
        for cn, cm in row.pairs:
            assert _filtration_consistent(group, row, cn, cm), (
                f"{label} p={row.p} {row.inertia}: pair ({cn},{cm}) admits "
                f"no ramification filtration")
        report.append(f"{label} p={row.p} {row.inertia}: "
                      f"{len(row.pairs)} exponent pair(s) consistent")
    return report


def _filtration_consistent(group, row, cn, cm, max_levels=40):
    """Does (cn, cm) arise from some ramification filtration of the inertia?

    Searches descending chains I = G_0 >= G_1 = P >= ... >= 1 with G_1 the
    Sylow-p subgroup, G_i normal in I with elementary abelian p-quotients,
    scoring each level by (|G_i|/|I|) (deg - #orbits(G_i)) in both degrees.
    A necessary condition; catches transcription errors in the pair lists.
    """
    p = row.p
    key = pg.ISO_KEYS[row.inertia]
    for sub in group.subgroups_by_type()[key]:
        lam_n = group.orbit_partition(sub, "n")
        lam_m = group.orbit_partition(sub, "m")
        if (lam_n, lam_m) not in {(v, row.lambda_m)
                                  for v in row.lambda_n_variants}:
            continue
        if _filtration_search(group, sub, p, cn, cm, max_levels):
            return True
    return False


def _filtration_search(group, sub, p, cn, cm, max_levels):
    n, m = group.degree, group.paired_degree
    h = len(sub)
    sub_set = set(sub)
    # wild part: the Sylow-p subgroup, which must be normal in the inertia
    pk = 1
    while h % (pk * p) == 0:
        pk *= p
    if pk == 1:
        return False
    sylow = None
    for s in _subgroups_of(sub, pk):
        if _normal_in(s, sub_set):
            sylow = s
            break
    if sylow is None:
        return False

    def score(elems):
        sz = Fraction(len(elems), h)
        return (sz * (n - len(group.orbit_partition(elems, "n"))),
                sz * (m - len(group.orbit_partition(elems, "m"))))

    base_n, base_m = score(sub)  # level-0 contribution
    target_n = Fraction(cn) - base_n
    target_m = Fraction(cm) - base_m
    if target_n < 0 or target_m < 0:
        return False

    # candidate chain members: proper nontrivial subgroups of the Sylow part
    # that are normal in the inertia group
    pool = []
    size = pk // p
    while size > 1:
        for s in _subgroups_of(sylow, size):
            if _normal_in(s, sub_set):
                pool.append(s)
        size //= p

    def dfs(block, remaining_n, remaining_m, budget):
        an, am = score(block)
        if an <= 0 or am <= 0:
            return False
        t = 1
        while t <= budget and an * t <= remaining_n and am * t <= remaining_m:
            rn, rm = remaining_n - an * t, remaining_m - am * t
            if rn == 0 and rm == 0:
                return True
            blk_set = set(block)
            for nxt in pool:
                if len(nxt) < len(block) and set(nxt) < blk_set:
                    if dfs(nxt, rn, rm, budget - t):
                        return True
            t += 1
        return False

    return dfs(sylow, target_n, target_m, max_levels)


def _subgroups_of(elements, size):
    """Subgroups of the given (small) group with the requested order."""
    elems = list(elements)
    ident = tuple(range(len(elems[0])))
    out = []
    seen = set()
    for a in elems:
        for b in elems:
            try:
                sub = pg.closure([a, b], cap=len(elems))
            except ValueError:
                continue
            if len(sub) == size:
                key = frozenset(sub)
                if key not in seen:
                    seen.add(key)
                    out.append(sub)
    if size == 1:
        return [[ident]]
    return out


def _normal_in(sub, big_set):
    sub_set = set(sub)
    for g in big_set:
        gi = pg.perm_inv(g)
        for h in sub:
            if pg.perm_mul(pg.perm_mul(g, h), gi) not in sub_set:
                return False
    return True


# ----------------------------------------------------------------------------
# tame targets
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def tame_rows(label):
    """Distinct nonidentity (lambda_n, lambda_m, c_n, c_m) rows with fusion data.

    Returns tuples (lam_n, lam_m, c_n, c_m, order, allowed_residues): a tame
    cyclic inertia group of this type can occur at p only if p is coprime to
    ``order`` and p mod order is in ``allowed_residues`` (Frobenius must
    conjugate the inertia generator to its p-th power inside the group).
    """
    group = pg.load_group(label)
    rows = []
    seen = set()
    for (lam_n, lam_m), _count in sorted(group.paired_cycle_types().items()):
        if lam_n == (1,) * group.degree:
            continue
        if (lam_n, lam_m) in seen:
            continue
        seen.add((lam_n, lam_m))
        e, allowed = group.tame_fusion_residues((lam_n, lam_m))
        rows.append((lam_n, lam_m, pg.tame_exponent(lam_n),
                     pg.tame_exponent(lam_m), e, allowed))
    return tuple(rows)


def tame_targets(label, p):
    """Tame local targets at p, with the fusion (quadratic-residue) filter."""
    out = []
    for lam_n, lam_m, cn, cm, e, allowed in tame_rows(label):
        if e % p == 0:
            continue
        if p % e not in allowed:
            continue
        out.append(LocalTarget(p=p, partition=lam_n, c_n=cn, c_m=cm,
                               wild=False, level=1))
    return out


WILD_PRIMES = {"GL3(2)": (2, 3, 7), "A5": (2, 3, 5), "S5": (2, 3, 5)}

# congruence modulus exponents for wild targets with a data-asset refinement;
# everything else searches on the mod-p shape congruence (level 1)
_WILD_LEVELS = {
    ("GL3(2)", 7, (7,)): 2,
    ("GL3(2)", 3, (3, 3, 1)): 2,
    ("GL3(2)", 2, (2, 2, 1, 1, 1)): 4,
}


def wild_targets(label, p):
    """Wild local targets at p, dominance-pruned, one partition per row.

    Rows with two orbit-partition variants target only the designated
    variant: sibling fields realize the other variant, so one of the two
    always matches the searched variant and the degree-m field is still
    found.
    """
    label = pg.GROUP_ALIASES[label]
    if p not in WILD_PRIMES[label]:
        raise ValueError(f"{p} is not a wild prime for {label}")
    raw = []
    for row in load_wild_table(label):
        if row.p != p:
            continue
        for cn, cm in row.pairs:
            raw.append(LocalTarget(
                p=p, partition=row.search_variant, c_n=cn, c_m=cm, wild=True,
                level=_WILD_LEVELS.get((label, p, row.search_variant), 1)))
    # dominance: same partition and c_n, keep the smallest c_m
    best = {}
    for t in raw:
        key = (t.partition, t.c_n)
        if key not in best or t.c_m < best[key].c_m:
            best[key] = t
    return sorted(best.values(), key=lambda t: (t.c_m, t.c_n, t.partition))


def targets_at(label, p):
    """All local targets available at p (tame rows plus wild rows)."""
    out = list(tame_targets(label, p))
    if p in WILD_PRIMES[pg.GROUP_ALIASES[label]]:
        out.extend(wild_targets(label, p))
    return out


# ----------------------------------------------------------------------------
# subsearch planning
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class MergedTarget:
    """All targets at one prime sharing the same degree-m contribution."""

    p: int
    c_m: int
    options: tuple       # LocalTargets with this (p, c_m)

    @property
    def modulus(self):
        return self.p ** max(t.level for t in self.options)


@dataclass(frozen=True)
class PlanSpec:
    """A subsearch: one merged target per ramified prime."""

    label: str
    merged: tuple        # MergedTarget per prime, ascending p

    @property
    def disc_m(self):
        out = 1
        for mt in self.merged:
            out *= mt.p ** mt.c_m
        return out

    @property
    def disc_n_cap(self):
        out = 1
        for mt in self.merged:
            out *= mt.p ** max(t.c_n for t in mt.options)
        return out

    def disc_n_options(self, p):
        for mt in self.merged:
            if mt.p == p:
                return sorted({t.c_n for t in mt.options})
        raise KeyError(p)

    @property
    def primes(self):
        return tuple(mt.p for mt in self.merged)

    def key(self):
        return (self.label, tuple(
            (mt.p, mt.c_m, tuple((t.partition, t.c_n) for t in mt.options))
            for mt in self.merged))


def _primes_upto(n):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(sieve[i * i:: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def plan_subsearches(label, bound_m):
    """Every subsearch needed for completeness below |D_m| <= bound_m.

    Targets at one prime are merged when they contribute the same p^{c_m};
    plans are all combinations of merged targets with total contribution
    within the bound.  The everywhere-unramified plan is discarded.
    """
    label = pg.GROUP_ALIASES[label]
    if bound_m < 1:
        return []
    min_tame_cm = min(r[3] for r in tame_rows(label))
    pmax = int(round(bound_m ** (1.0 / min_tame_cm))) + 2
    while pmax ** min_tame_cm > bound_m:
        pmax -= 1
    primes = _primes_upto(max(pmax, 7))
    usable = []
    for p in primes:
        tgts = targets_at(label, p)
        if not tgts:
            continue
        groups = {}
        for t in tgts:
            if p ** t.c_m > bound_m:
                continue
            groups.setdefault(t.c_m, []).append(t)
        merged = [MergedTarget(p=p, c_m=cm, options=tuple(opts))
                  for cm, opts in sorted(groups.items())]
        if merged:
            usable.append((p, merged))
    plans = []
    max_wild = max(WILD_PRIMES[label])

    def rec(start, budget, chosen):
        if chosen:
            plans.append(PlanSpec(label=label, merged=tuple(chosen)))
        for j in range(start, len(usable)):
            p, merged = usable[j]
            if p > max_wild and p ** min_tame_cm > budget:
                break  # primes ascend and the tame minimum is uniform
            for mt in merged:
                contrib = p ** mt.c_m
                if contrib <= budget:
                    rec(j + 1, budget // contrib, chosen + [mt])

    rec(0, bound_m, [])
    plans.sort(key=lambda pl: (pl.disc_m, pl.key()))
    return plans


# ----------------------------------------------------------------------------
# factorization-shape patterns and tame congruences
# ----------------------------------------------------------------------------

def _partitions_of(k):
    if k == 0:
        yield ()
        return
    for first in range(k, 0, -1):
        for rest in _partitions_of(k - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _divisors(k):
    return [d for d in range(1, k + 1) if k % d == 0]


@lru_cache(maxsize=None)
def shape_patterns(partition):
    """Factorization signatures mod p compatible with an orbit partition.

    A signature is a sorted tuple of (irreducible degree d, exponent E) for
    *distinct* irreducible factors.  Compatibility means: the places of a
    field with inertia orbit partition ``partition`` (each place contributing
    its ramification index e_v repeated f_v times) can be assigned residue
    fields and generator images so that the characteristic polynomial of an
    integral generator reduces to that signature; places may collide on the
    same irreducible, and a place of residue degree f_v may collapse onto an
    irreducible of any degree d | f_v with exponent e_v f_v / d.
    """
    mult = {}
    for part in partition:
        mult[part] = mult.get(part, 0) + 1
    # place decompositions: split each part-multiplicity into residue degrees
    def place_sets(values):
        if not values:
            yield ()
            return
        e, cnt = values[0]
        for fs in _partitions_of(cnt):
            for rest in place_sets(values[1:]):
                yield tuple((e, f) for f in fs) + rest

    signatures = set()
    for places in place_sets(sorted(mult.items())):
        # choose a collapse degree d | f for each place
        d_choices = [[(e, f, d) for d in _divisors(f)] for e, f in places]
        for choice in product(*d_choices):
            # group places into distinct-irreducible clusters with equal d
            _collect_groupings(choice, signatures)
    return frozenset(signatures)


def _collect_groupings(places, signatures):
    """All ways to merge places (e, f, d) with equal d onto shared factors."""
    k = len(places)
    # set-partitions where blocks only join places with equal d
    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in set_partitions(rest):
            for i, block in enumerate(part):
                if block[0][2] == first[2]:
                    yield part[:i] + [[first] + block] + part[i + 1:]
            yield [[first]] + part

    for part in set_partitions(list(places)):
        sig = []
        for block in part:
            d = block[0][2]
            total = sum(e * f for e, f, _ in block)
            assert total % d == 0
            sig.append((d, total // d))
        signatures.add(tuple(sorted(sig)))


def signature_of_shape(shape):
    """Signature tuple of a FactorShape (sorted (degree, multiplicity))."""
    return tuple(sorted(shape.pairs))


def shape_matches_partition(shape, partition):
    return signature_of_shape(shape) in shape_patterns(partition)


def _monic_irreducibles(p, d):
    """All monic irreducible polynomials of degree d over F_p (as tuples)."""
    if d == 1:
        return [(a, 1) for a in range(p)]
    out = []
    for tail in product(range(p), repeat=d):
        f = tail + (1,)
        if any(pa.evaluate(f, a) % p == 0 for a in range(p)):
            continue
        if d <= 3:
            out.append(f)  # no roots suffices up to degree 3
            continue
        fac = pa.factor_modp(f, p)
        if len(fac) == 1 and fac[0][1] == 1:
            out.append(f)
    return out


class TameCongruence:
    """Coefficient congruences mod p for one partition (or several merged).

    The admissible residues are the monic degree-n vectors whose mod-p
    factorization signature is compatible with one of the partitions.
    """

    def __init__(self, p, partitions, n):
        self.p = p
        self.modulus = p
        self.n = n
        self.partitions = tuple(partitions)
        self.signatures = frozenset().union(
            *(shape_patterns(lam) for lam in self.partitions))

    def contains_reduction(self, coeffs_mod):
        """Membership test for the vector of n non-leading coefficients."""
        f = tuple(coeffs_mod) + (1,)
        return signature_of_shape(pa.factor_shape_modp(f, self.p)) \
            in self.signatures

    def enumerate_vectors(self):
        """All admissible coefficient vectors mod p (materialized)."""
        p, n = self.p, self.n
        irr_by_deg = {}
        out = set()
        for sig in self.signatures:
            slots = list(sig)
            for d, _e in slots:
                if d not in irr_by_deg:
                    irr_by_deg[d] = _monic_irreducibles(p, d)
            # choose distinct irreducibles per slot; equal (d, E) slots are
            # interchangeable, but set-level dedup keeps this simple
            pools = [irr_by_deg[d] for d, _ in slots]
            for pick in product(*pools):
                if len({(slots[i][0], pick[i]) for i in range(len(pick))}) \
                        != len(pick):
                    continue
                f = (1,)
                for (d, e), g in zip(slots, pick):
                    for _ in range(e):
                        f = pa.pmul(f, g, p)
                assert pa.degree(f) == n
                out.add(tuple(f[:n]))
        return sorted(out)

    def count(self):
        return len(self.enumerate_vectors())


def congruences_tame(target, n):
    assert not target.wild
    return TameCongruence(target.p, [target.partition], n)


def brute_force_tame_vectors(p, partition, n):
    """Oracle: scan all p^n monic vectors for shape compatibility."""
    out = []
    for tail in product(range(p), repeat=n):
        f = tail + (1,)
        if shape_matches_partition(pa.factor_shape_modp(f, p), partition):
            out.append(tail)
    return out


# ----------------------------------------------------------------------------
# wild congruences (asset-backed refinements)
# ----------------------------------------------------------------------------

class WildCongruence:
    """Congruences mod p^r for a wild target.

    ``vectors`` (if set) is the explicit admissible set mod p^r; otherwise
    the base mod-p shape congruence applies, sharpened by ``predicate`` on
    the full mod-p^r reduction.  ``sampler(limit)`` optionally streams
    admissible vectors for inspection and tests.
    """

    def __init__(self, p, r, n, partitions, vectors=None, predicate=None,
                 sampler=None):
        self.p = p
        self.r = r
        self.modulus = p ** r
        self.n = n
        self.partitions = tuple(partitions)
        self.base = TameCongruence(p, partitions, n)
        self.vectors = vectors
        self.predicate = predicate
        self.sampler = sampler

    def contains_reduction(self, coeffs_mod):
        if self.vectors is not None:
            return tuple(c % self.modulus for c in coeffs_mod) in self.vectors
        if not self.base.contains_reduction([c % self.p for c in coeffs_mod]):
            return False
        if self.predicate is not None:
            return self.predicate(tuple(c % self.modulus for c in coeffs_mod))
        return True

    def enumerate_vectors(self, limit=5000):
        if self.vectors is not None:
            return sorted(self.vectors)
        if self.sampler is not None:
            return self.sampler(limit)
        raise NotImplementedError("implicit wild congruence has no enumeration")

    def count(self):
        if self.vectors is not None:
            return len(self.vectors)
        raise NotImplementedError("implicit wild congruence has no count")


def congruences_wild(target, n, label):
    """Refined congruences for a wild target, from the local-field assets.

    Raises MissingWildDataError when no asset entry covers (label, p,
    partition); callers that only need completeness fall back to the mod-p
    shape congruence of the partition.
    """
    from . import localdata
    assert target.wild
    label = pg.GROUP_ALIASES[label]
    builder = localdata.WILD_CONGRUENCE_BUILDERS.get(
        (label, target.p, target.partition))
    if builder is None:
        raise MissingWildDataError(
            f"no local-field data asset for {label} p={target.p} "
            f"partition={target.partition}")
    return builder(target, n)


# ----------------------------------------------------------------------------
# CRT merge
# ----------------------------------------------------------------------------

class MergedCongruence:
    """CRT combination of per-prime congruence sets (lazy product)."""

    MATERIALIZE_CAP = 200_000

    def __init__(self, locals_):
        mods = [loc.modulus for loc in locals_]
        for a, b in combinations(mods, 2):
            if math.gcd(a, b) != 1:
                raise ValueError("congruence moduli must be pairwise coprime")
        self.locals = list(locals_)
        self.modulus = math.prod(mods) if mods else 1
        self.n = locals_[0].n if locals_ else 0

    def contains_reduction(self, coeffs):
        return all(loc.contains_reduction([c % loc.modulus for c in coeffs])
                   for loc in self.locals)

    def count(self):
        out = 1
        for loc in self.locals:
            out *= loc.count()
        return out

    def iter_vectors(self):
        """Lazy iterator over CRT-combined coefficient vectors mod modulus."""
        if not self.locals:
            yield ()
            return
        mods = [loc.modulus for loc in self.locals]
        M = self.modulus
        mults = []
        for m in mods:
            rest = M // m
            mults.append(rest * pow(rest, -1, m))
        streams = [loc.enumerate_vectors() for loc in self.locals]
        for combo in product(*streams):
            vec = tuple(sum(combo[k][i] * mults[k] for k in range(len(combo)))
                        % M for i in range(self.n))
            yield vec


def crt_merge(locals_):
    return MergedCongruence(list(locals_))
