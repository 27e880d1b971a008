import itertools

import numpy as np
import pytest

from dadelab.pgroup import (
    CATALOG,
    build_group,
    coset_action,
    cyclic,
    cyclic_subgroup,
    direct_product,
    elementary_abelian,
    full_subgroup,
    quaternion,
    subgroup_classes,
    trivial_subgroup,
)


def _all_subgroups_bruteforce(g):
    """Every subset closed under multiplication (groups of order <= 8)."""
    n = g.order
    others = range(1, n)
    out = set()
    for r in range(n):
        for subset in itertools.combinations(others, r):
            s = (0,) + subset
            ss = set(s)
            if all(g.mul(a, b) in ss for a in s for b in s):
                out.add(s)
    return out


def test_small_examples():
    c4 = cyclic(4)
    assert (c4.order, c4.exponent, len(c4.generators)) == (4, 4, 1)
    q8 = quaternion(8)
    assert q8.order == 8 and q8.exponent == 4
    assert int((q8.element_orders == 2).sum()) == 1
    v4 = direct_product(cyclic(2), cyclic(2))
    assert v4.order == 4 and v4.exponent == 2


@pytest.mark.parametrize("spec,count", [("C4", 3), ("C2xC2", 5), ("Q8", 6), ("D8", 8)])
def test_class_counts(spec, count):
    assert len(subgroup_classes(build_group(spec))) == count


@pytest.mark.parametrize("spec", [s for s in CATALOG if build_group(s).order <= 9])
def test_subgroups_match_bruteforce(spec):
    g = build_group(spec)
    brute = _all_subgroups_bruteforce(g)
    listed = set()
    for c in subgroup_classes(g):
        listed.update(c.conjugates)
        for h in c.conjugates:
            assert g.order % len(h) == 0
            assert c.index_in_P * len(h) == g.order
    assert listed == brute


@pytest.mark.parametrize("spec", CATALOG)
def test_orders_divide(spec):
    g = build_group(spec)
    for o in g.element_orders:
        assert g.exponent % int(o) == 0
    assert g.order % g.exponent == 0


def test_cyclic_subgroup_examples():
    c8 = build_group("C8")
    assert cyclic_subgroup(c8, 0) == trivial_subgroup(c8)
    assert cyclic_subgroup(c8, c8.generators[0]) == full_subgroup(c8)
    q8 = build_group("Q8")
    i = q8.generators[0]
    cls = cyclic_subgroup(q8, i)
    assert cls.order == 4 and cls.index_in_P == 2


def test_coset_action_examples():
    c4 = build_group("C4")
    classes = subgroup_classes(c4)
    (perm,) = coset_action(c4, classes[1])
    assert sorted(perm.tolist()) == [0, 1] and perm[0] == 1
    (perm,) = coset_action(c4, classes[0])
    assert len(perm) == 4 and all(perm[perm[perm[perm[j]]]] == j for j in range(4))
    assert all(perm[j] != j for j in range(4)) and perm[perm[0]] != 0
    for g in (build_group(s) for s in CATALOG):
        for p in coset_action(g, full_subgroup(g)):
            assert p.tolist() == [0]


@pytest.mark.parametrize("spec", CATALOG)
def test_coset_action_is_homomorphism(spec):
    from dadelab.pgroup import coset_permutation

    g = build_group(spec)
    for q in subgroup_classes(g):
        perms = [coset_permutation(g, q, x) for x in range(g.order)]
        for a in range(g.order):
            for b in range(g.order):
                assert np.array_equal(perms[g.mul(a, b)], perms[a][perms[b]])


def test_elementary_abelian_structure():
    g = elementary_abelian(3, 2)
    assert g.order == 9 and g.exponent == 3
    assert g.abelianization_order == 9
    assert build_group("Q8").abelianization_order == 4
