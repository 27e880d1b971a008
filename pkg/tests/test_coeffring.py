import pytest
from hypothesis import given, settings, strategies as st

from dadelab.coeffring import (
    build_ring,
    match_root_of_unity,
    parse_ring,
    prime_field,
    reduce_residue,
)
from dadelab.errors import NonUnit

RINGS = [(2, 1, 8), (2, 2, 8), (2, 3, 6), (3, 1, 8), (3, 2, 5)]


def test_degree_one_ring_is_integers_mod_power():
    o = build_ring(2, 1, 8)
    assert o.deg == 1
    assert o.zeta == o(-1)
    assert o.modulus == 256


def test_zeta_relations():
    o4 = build_ring(2, 2, 8)
    assert o4.zeta * o4.zeta == o4(-1)
    o3 = build_ring(3, 1, 8)
    z = o3.zeta
    assert z * z + z + 1 == o3(0)


def test_arithmetic_examples():
    o = build_ring(2, 1, 8)
    assert o(-1) * o(-1) == o(1)
    with pytest.raises(NonUnit):
        o(2).inverse()


def test_residue_examples():
    o = build_ring(2, 2, 8)
    k = prime_field(2)
    assert reduce_residue(o.zeta) == k(1)
    assert reduce_residue(o(2)) == k(0)
    assert reduce_residue(o(1) + o(4) * o.zeta) == k(1)


def test_root_matching():
    o = build_ring(2, 2, 8)
    assert match_root_of_unity(o(1)) == 0
    assert match_root_of_unity(o(-1)) == 2
    assert match_root_of_unity(o(2)) is None


@pytest.mark.parametrize("params", RINGS)
def test_roots_distinct_and_zeta_order(params):
    o = build_ring(*params)
    q = o.root_order
    seen = {(o.zeta**a).coeffs.tobytes() for a in range(q)}
    assert len(seen) == q
    assert o.zeta**q == o(1)
    for a in range(q):
        assert match_root_of_unity(o.zeta**a) == a


def _elements(o):
    return st.lists(st.integers(0, o.modulus - 1), min_size=o.deg, max_size=o.deg).map(o)


@pytest.mark.parametrize("params", RINGS)
def test_residue_is_ring_homomorphism(params):
    o = build_ring(*params)

    @settings(max_examples=60, deadline=None)
    @given(_elements(o), _elements(o))
    def inner(x, y):
        assert reduce_residue(x * y) == reduce_residue(x) * reduce_residue(y)
        assert reduce_residue(x + y) == reduce_residue(x) + reduce_residue(y)
        assert x.is_unit() == (reduce_residue(x) != reduce_residue(o(0)))
        if x.is_unit():
            assert x * x.inverse() == o(1)

    inner()


def test_exhaustive_homomorphism_small_ring():
    o = build_ring(2, 2, 2)  # 16 elements
    els = [o([a, b]) for a in range(4) for b in range(4)]
    for x in els:
        for y in els:
            assert reduce_residue(x * y) == reduce_residue(x) * reduce_residue(y)


def test_valuation_of_uniformizer_powers():
    o = build_ring(2, 2, 8)
    pi = o.zeta - 1
    for v in range(5):
        assert (pi**v).valuation() == v
    assert o(2).valuation() == 2


@pytest.mark.parametrize("params", RINGS)
def test_header_round_trip(params):
    o = build_ring(*params)
    assert parse_ring(o.header()) == o
    k = prime_field(params[0])
    assert parse_ring(k.header()) == k
