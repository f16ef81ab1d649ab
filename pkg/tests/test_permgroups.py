import pytest

from fieldsieve import permgroups as pg


@pytest.fixture(scope="module")
def gl32():
    return pg.load_group("GL3(2)")


@pytest.fixture(scope="module")
def a5():
    return pg.load_group("A5")


@pytest.fixture(scope="module")
def s5():
    return pg.load_group("S5")


def test_orders(gl32, a5, s5):
    assert gl32.order == 168 and len(gl32.elements()) == 168
    assert a5.order == 60
    assert s5.order == 120


def test_identity_only_group():
    assert pg.closure([(0, 1, 2)]) == [(0, 1, 2)]


def test_tame_exponent():
    assert pg.tame_exponent((4, 2, 1)) == 4
    assert pg.tame_exponent((1,) * 7) == 0
    assert pg.tame_exponent((6,)) == 5
    assert pg.tame_exponent((7,)) == 6


def test_paired_types_gl32(gl32):
    """Degree 7/8 cycle type table with class multiplicities."""
    types = gl32.paired_cycle_types()
    expected = {
        ((1,) * 7, (1,) * 8): 1,
        ((2, 2, 1, 1, 1), (2, 2, 2, 2)): 21,
        ((3, 3, 1), (3, 3, 1, 1)): 56,
        ((4, 2, 1), (4, 4)): 42,
        ((7,), (7, 1)): 48,
    }
    assert types == expected


def test_paired_types_a5(a5):
    types = a5.paired_cycle_types()
    expected = {
        ((1,) * 5, (1,) * 6): 1,
        ((2, 2, 1), (2, 2, 1, 1)): 15,
        ((3, 1, 1), (3, 3)): 20,
        ((5,), (5, 1)): 24,
    }
    assert types == expected


def test_paired_types_s5(s5):
    types = s5.paired_cycle_types()
    expected = {
        ((1,) * 5, (1,) * 6): 1,
        ((2, 2, 1), (2, 2, 1, 1)): 15,
        ((3, 1, 1), (3, 3)): 20,
        ((5,), (5, 1)): 24,
        ((2, 1, 1, 1), (2, 2, 2)): 10,
        ((4, 1), (4, 1, 1)): 30,
        ((3, 2), (6,)): 20,
    }
    assert types == expected


def test_evenness_parity(gl32, a5, s5):
    """n - t(lambda_n) is even iff the permutation is even, in both degrees."""
    for grp in (gl32, a5, s5):
        for pn, pm in grp.pairs:
            sn = pg.perm_sign(pn)
            sm = pg.perm_sign(pm)
            assert sn == (-1) ** pg.tame_exponent(pg.cycle_type(pn))
            assert sm == (-1) ** pg.tame_exponent(pg.cycle_type(pm))
            # the two actions realize the same abstract element: signs agree
            # for the even groups trivially; for S5 both actions are faithful
            # odd representations of the same element
            assert sn == sm


def test_orbit_partition_examples(gl32):
    subs = gl32.subgroups_by_type()
    # C7 generated by any 7-cycle is transitive in degree 7
    c7 = subs[pg.ISO_KEYS["C7"]][0]
    gens = [g for g in c7 if g != tuple(range(7))]
    assert gl32.orbit_partition(gens, "n") == (7,)
    # D4 inside GL3(2): degree-8 orbit is the full 8
    d4_list = subs[pg.ISO_KEYS["D4"]]
    assert d4_list, "GL3(2) must contain D4 subgroups"
    for d4 in d4_list:
        assert gl32.orbit_partition(d4, "m") == (8,)
        assert gl32.orbit_partition(d4, "n") == (4, 2, 1)
    # Klein subgroups come in two degree-7 flavors
    v_list = subs[pg.ISO_KEYS["V"]]
    flavors = {gl32.orbit_partition(v, "n") for v in v_list}
    assert flavors == {(2, 2, 2, 1), (4, 1, 1, 1)}
    assert {gl32.orbit_partition(v, "m") for v in v_list} == {(4, 4)}


def test_orbit_partition_rejects_foreign_elements(gl32):
    with pytest.raises(ValueError):
        gl32.orbit_partition([(1, 0, 2, 3, 4, 5, 6)], "n")  # odd transposition


def test_a4_variants_gl32(gl32):
    subs = gl32.subgroups_by_type()
    a4_list = subs[pg.ISO_KEYS["A4"]]
    flavors = {gl32.orbit_partition(s, "n") for s in a4_list}
    assert flavors == {(4, 3), (6, 1)}
    assert {gl32.orbit_partition(s, "m") for s in a4_list} == {(4, 4)}


def test_element_cap():
    with pytest.raises(ValueError):
        pg.closure([(1, 2, 3, 4, 5, 6, 7, 0)], cap=4)
