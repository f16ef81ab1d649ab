import math

import pytest

from fieldsieve import localtargets as lt
from fieldsieve import polyarith as pa


def target_set(targets):
    return {(t.partition, t.c_n, t.c_m) for t in targets}


# -- tame targets --------------------------------------------------------------

def test_tame_gl32_p5():
    got = target_set(lt.tame_targets("GL3(2)", 5))
    assert got == {((4, 2, 1), 4, 6), ((3, 3, 1), 4, 4),
                   ((2, 2, 1, 1, 1), 2, 4)}


def test_tame_gl32_p11_includes_total_ramification():
    got = target_set(lt.tame_targets("GL3(2)", 11))
    assert ((7,), 6, 6) in got


def test_lemma_filter_gl32():
    for p in [q for q in range(3, 100) if all(q % r for r in range(2, q))]:
        got = target_set(lt.tame_targets("GL3(2)", p))
        if p % 7 in (1, 2, 4) and p != 7:
            assert ((7,), 6, 6) in got
        else:
            assert ((7,), 6, 6) not in got


def test_tame_a5_quadratic_residue_filter():
    # same evenness argument in degree 5: total ramification only at
    # p = +-1 mod 5
    got7 = target_set(lt.tame_targets("A5", 7))
    assert got7 == {((3, 1, 1), 2, 4), ((2, 2, 1), 2, 2)}
    got11 = target_set(lt.tame_targets("A5", 11))
    assert ((5,), 4, 4) in got11
    got19 = target_set(lt.tame_targets("A5", 19))
    assert ((5,), 4, 4) in got19  # 19 = -1 mod 5


def test_tame_s5_no_residue_filter():
    # S5 is odd: 5-cycles fuse with every power, so all p != 5 allow (5)
    for p in (2, 3, 7, 13):
        got = target_set(lt.tame_targets("S5", p))
        assert ((5,), 4, 4) in got


def test_tame_excludes_wild_orders():
    # partitions whose lcm is divisible by p are not tame at p
    got3 = target_set(lt.tame_targets("GL3(2)", 3))
    assert not any(lam == (3, 3, 1) for lam, _, _ in got3)
    got2 = target_set(lt.tame_targets("S5", 2))
    assert not any(lam in ((4, 1), (2, 2, 1), (2, 1, 1, 1), (3, 2))
                   for lam, _, _ in got2)
    assert ((5,), 4, 4) in got2
    assert ((3, 1, 1), 2, 4) in got2


# -- wild tables ----------------------------------------------------------------

def test_wild_gl32_p3():
    got = target_set(lt.wild_targets("GL3(2)", 3))
    assert got == {((3, 3, 1), 6, 8), ((3, 3, 1), 8, 8), ((3, 3, 1), 10, 12)}


def test_wild_gl32_p2_dominance():
    got = target_set(lt.wild_targets("GL3(2)", 2))
    assert ((4, 2, 1), 14, 22) in got
    assert ((4, 2, 1), 14, 24) not in got
    # arithmetic-equivalence pruning: 4.3 and 4.1.1.1 targeted, not 6.1/2.2.2.1
    assert any(lam == (4, 3) for lam, _, _ in got)
    assert any(lam == (4, 1, 1, 1) for lam, _, _ in got)
    assert not any(lam in ((6, 1), (2, 2, 2, 1)) for lam, _, _ in got)


def test_wild_gl32_p7():
    got = target_set(lt.wild_targets("GL3(2)", 7))
    assert got == {((7,), 8, 8), ((7,), 10, 10), ((7,), 12, 12)}


def test_wild_rejects_tame_prime():
    with pytest.raises(ValueError):
        lt.wild_targets("GL3(2)", 5)


def test_cn_le_cm_everywhere():
    for label in ("GL3(2)", "A5", "S5"):
        for p in lt.WILD_PRIMES[label]:
            for t in lt.wild_targets(label, p):
                assert t.c_n <= t.c_m
        for p in (2, 3, 5, 7, 11, 13):
            for t in lt.tame_targets(label, p):
                assert t.c_n <= t.c_m


@pytest.mark.parametrize("label", ["GL3(2)", "A5", "S5"])
def test_wild_table_verification(label):
    report = lt.verify_wild_table(label)
    assert report


# -- planning -------------------------------------------------------------------

def test_plan_prime_cutoff_30_8():
    plans = lt.plan_subsearches("GL3(2)", 30 ** 8)
    primes_used = {p for plan in plans for p in plan.primes}
    assert 887 in primes_used  # largest prime below the 900 cutoff
    assert all(p <= 900 for p in primes_used)


def test_plan_trivial_bound():
    assert lt.plan_subsearches("GL3(2)", 1) == []


def test_plan_budgets_and_divisibility():
    plans = lt.plan_subsearches("A5", 30000)
    assert plans
    for plan in plans:
        assert plan.disc_m <= 30000
        # D_n | D_m for every per-prime option
        for mt in plan.merged:
            for t in mt.options:
                assert t.c_n <= mt.c_m


def test_plan_merging_groups_equal_cm():
    plans = lt.plan_subsearches("GL3(2)", 1000)
    for plan in plans:
        for mt in plan.merged:
            cms = {t.c_m for t in mt.options}
            assert cms == {mt.c_m}


# -- congruences ----------------------------------------------------------------

def test_total_ramification_residues_11():
    t = lt.LocalTarget(p=11, partition=(7,), c_n=6, c_m=6, wild=False)
    cong = lt.congruences_tame(t, 7)
    vecs = cong.enumerate_vectors()
    assert len(vecs) == 11
    for v in vecs:
        f = v + (1,)
        shape = pa.factor_shape_modp(f, 11)
        assert shape.pairs == ((1, 7),)


@pytest.mark.parametrize("p,partition,n", [
    (5, (2, 2, 1, 1, 1), 7),
    (3, (3, 3, 1), 7),
    (5, (3, 1, 1), 5),
    (3, (2, 2, 1), 5),
])
def test_congruence_counts_vs_brute_force(p, partition, n):
    t = lt.LocalTarget(p=p, partition=partition,
                       c_n=lt.pg.tame_exponent(partition),
                       c_m=lt.pg.tame_exponent(partition), wild=False)
    cong = lt.congruences_tame(t, n)
    mine = set(cong.enumerate_vectors())
    brute = set(lt.brute_force_tame_vectors(p, partition, n))
    assert mine == brute


def test_trinks_reduction_admissible_at_3():
    # x^7 - 7x + 3 reduces mod 3 compatibly with partition (3,3,1)
    trinks = (3, -7, 0, 0, 0, 0, 0, 1)
    shape = pa.factor_shape_modp(trinks, 3)
    assert lt.shape_matches_partition(shape, (3, 3, 1))


def test_crt_merge_examples():
    t3 = lt.LocalTarget(p=3, partition=(2, 1, 1, 1), c_n=1, c_m=1, wild=False)
    t5 = lt.LocalTarget(p=5, partition=(2, 1, 1, 1), c_n=1, c_m=1, wild=False)
    c3 = lt.congruences_tame(t3, 5)
    c5 = lt.congruences_tame(t5, 5)
    merged = lt.crt_merge([c3, c5])
    assert merged.modulus == 15
    assert merged.count() == c3.count() * c5.count()
    vecs = list(merged.iter_vectors())
    assert len(vecs) == merged.count()
    # spot check membership consistency
    for v in vecs[:50]:
        assert merged.contains_reduction(v)
    empty = lt.crt_merge([])
    assert empty.modulus == 1


def test_crt_merge_non_coprime_rejected():
    t3 = lt.LocalTarget(p=3, partition=(2, 1, 1, 1), c_n=1, c_m=1, wild=False)
    c3 = lt.congruences_tame(t3, 5)
    with pytest.raises(ValueError):
        lt.crt_merge([c3, c3])


# -- wild congruence refinements -------------------------------------------------

def wild_target(label, p, partition, cn, cm):
    for t in lt.wild_targets(label, p):
        if t.partition == partition and t.c_n == cn and t.c_m == cm:
            return t
    raise AssertionError("target not found")


def test_wild_congruence_p3_same_field_constraint():
    from fieldsieve import localdata
    t = wild_target("GL3(2)", 3, (3, 3, 1), 8, 8)
    cong = lt.congruences_wild(t, 7, "GL3(2)")
    # emitted residues are accepted by the predicate
    sample = cong.enumerate_vectors(200)
    assert sample
    for v in sample[:40]:
        assert cong.contains_reduction(v)
    # a product of generators of two non-isomorphic cubic fields is rejected
    cubics = localdata.ramified_cubics_q3()
    found_reject = False
    for i in range(len(cubics)):
        for j in range(len(cubics)):
            if i == j:
                continue
            f1, c1 = cubics[i]
            f2, c2 = cubics[j]
            g1 = tuple(x % 9 for x in f1)
            g2 = tuple(x % 9 for x in f2)
            prod = pa.mul(pa.mul(g1, g2), (0, 1))
            vec = tuple(x % 9 for x in prod)[:7]
            if not cong.contains_reduction(vec):
                found_reject = True
                break
        if found_reject:
            break
    assert found_reject


def test_wild_congruence_p2_emitted_shapes():
    t = wild_target("GL3(2)", 2, (2, 2, 1, 1, 1), 4, 8)
    cong = lt.congruences_wild(t, 7, "GL3(2)")
    sample = cong.enumerate_vectors(300)
    assert sample
    for v in sample:
        f = tuple(x % 2 for x in v) + (1,)
        shape = pa.factor_shape_modp(f, 2)
        assert lt.shape_matches_partition(shape, (2, 2, 1, 1, 1))


def test_wild_congruence_p7_evenness_prunes():
    t = wild_target("GL3(2)", 7, (7,), 8, 8)
    cong = lt.congruences_wild(t, 7, "GL3(2)")
    base = cong.base
    # count admissible residues on a slice: fix five coefficients, vary two
    total_base = 0
    total_refined = 0
    for a in range(0, 49, 7):
        for b in range(49):
            vec = (b, a, 7, 0, 0, 0, 7)  # mod-7 reduction must be (x-0)^7-ish
            red = tuple(x % 7 for x in vec)
            if base.contains_reduction(red):
                total_base += 1
                if cong.contains_reduction(vec):
                    total_refined += 1
    assert total_refined < total_base


def test_missing_wild_asset_errors():
    t = wild_target("GL3(2)", 2, (4, 2, 1), 14, 22)
    with pytest.raises(lt.MissingWildDataError):
        lt.congruences_wild(t, 7, "GL3(2)")


def test_a5_wild_targets():
    got2 = target_set(lt.wild_targets("A5", 2))
    assert got2 == {((2, 2, 1), 4, 4), ((2, 2, 1), 6, 6),
                    ((4, 1), 6, 6), ((4, 1), 8, 8)}
    got5 = target_set(lt.wild_targets("A5", 5))
    assert got5 == {((5,), 8, 8), ((5,), 6, 6)}


def test_s5_wild_ratio_gaps():
    """Largest 2-adic jump c6 - c5 is 6, so r = 16 never occurs; 8 does."""
    diffs = set()
    for t in lt.wild_targets("S5", 2):
        diffs.add(t.c_m - t.c_n)
    for t in lt.tame_targets("S5", 2):
        diffs.add(t.c_m - t.c_n)
    assert max(diffs) == 6
    assert 8 not in diffs


def test_a5_wild_2adic_jumps():
    diffs = set()
    for t in lt.wild_targets("A5", 2):
        diffs.add(t.c_m - t.c_n)
    for t in lt.tame_targets("A5", 2):
        diffs.add(t.c_m - t.c_n)
    # visible ratio curves for the even quintic case: only r-2-parts 1 and 2
    assert diffs == {0, 2}
