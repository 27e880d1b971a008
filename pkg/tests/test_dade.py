import pytest

from dadelab import structure as ks
from dadelab.dade import (
    Unresolved,
    character_group,
    configured_generators,
    determinant_one_lift,
    element_of,
    equal,
    identity,
    inverse,
    is_identity,
    mul,
    order,
    phi_multiplicativity_check,
    reduce_class,
    rings_for,
    section_on_generators,
)
from dadelab.coeffring import build_ring
from dadelab.errors import InsufficientRoots, NotALift, NotStronglyCapped
from dadelab.heller import omega_power
from dadelab.pgroup import CATALOG, build_group
from dadelab.rpmod import (
    determinant_character,
    dual,
    regular_module,
    sign_character,
    tensor,
    trivial_module,
)


def _rings(spec, N=12):
    g = build_group(spec)
    return (g,) + rings_for(g, N)


def test_element_of_examples():
    g, k, o = _rings("Q8")
    assert is_identity(element_of(trivial_module(k, g)))
    with pytest.raises(NotStronglyCapped):
        element_of(regular_module(k, g))
    assert element_of(omega_power(k, g, 1)).dim == 7


def test_products_and_inverses():
    g, k, o = _rings("C2xC2")
    a = element_of(omega_power(k, g, 1))
    assert is_identity(mul(a, inverse(a)))
    assert equal(mul(identity(k, g), a), a)
    g, k, o = _rings("C4")
    a = element_of(omega_power(k, g, 1))
    assert is_identity(mul(a, a))


def test_orders():
    g, k, o = _rings("Q8")
    assert order(identity(k, g), 4) == 1
    assert order(element_of(omega_power(k, g, 1)), 8) == 4
    g, k, o = _rings("C2xC2")
    assert order(element_of(omega_power(k, g, 1)), 4) == Unresolved(4)


@pytest.mark.parametrize("spec,size", [("C4", 4), ("Q8", 4), ("C2xC2", 4), ("C8", 8), ("C3xC3", 9), ("D8", 4)])
def test_character_group_size(spec, size):
    g, k, o = _rings(spec)
    xg = character_group(g, o)
    assert xg.order == size == g.abelianization_order
    for i in range(size):
        for j in range(size):
            prod = xg.elements[i] * xg.elements[j]
            assert xg.index(prod) == xg.table[i, j]


def test_character_group_needs_roots():
    g = build_group("C4")
    with pytest.raises(InsufficientRoots):
        character_group(g, build_ring(2, 1, 8))


@pytest.mark.parametrize("spec", ["C4", "Q8", "C3"])
def test_reduction_of_characters_and_identity(spec):
    g, k, o = _rings(spec)
    assert is_identity(reduce_class(identity(o, g)))
    for chi in character_group(g, o).elements:
        assert is_identity(reduce_class(element_of(chi.as_module(), check=False)))


def test_reduction_of_augmentation_lattice():
    g, k, o = _rings("C8")
    red = reduce_class(element_of(omega_power(o, g, 1), check=False))
    assert equal(red, element_of(omega_power(k, g, 1)))


def test_determinant_one_lift_examples():
    g, k, o = _rings("C4")
    phi = determinant_one_lift(omega_power(k, g, 1), omega_power(o, g, 1))
    assert determinant_character(phi).is_trivial()
    twisted = tensor(sign_character(o, g).as_module(), omega_power(o, g, 1))
    assert ks.is_isomorphic(phi, twisted)
    assert determinant_one_lift(trivial_module(k, g), trivial_module(o, g)) == trivial_module(o, g)
    with pytest.raises(NotALift):
        determinant_one_lift(omega_power(k, g, 1), trivial_module(o, g))


@pytest.mark.parametrize("spec", CATALOG)
def test_phi_has_trivial_determinant(spec):
    g, k, o = _rings(spec)
    for gen in configured_generators(g, 12):
        phi = determinant_one_lift(gen.module, gen.lift)
        assert determinant_character(phi).is_trivial()


def test_sections():
    g, k, o = _rings("C4")
    gens = configured_generators(g, 12)
    rep = section_on_generators(g, gens, bound=4)
    assert rep.passed
    red = [e for e in rep.entries if e.check == "reduction"]
    assert red and all(e.status == "pass" for e in red)
    g, k, o = _rings("Q8")
    rep = section_on_generators(g, configured_generators(g, 12)[:1], bound=8)
    assert [e.detail for e in rep.entries if e.check == "order"] == ["order over k = 4, over O = 4"]
    empty = section_on_generators(g, [], bound=4)
    assert empty.entries == [] and empty.passed


def test_section_relations():
    g, k, o = _rings("C4")
    gens = configured_generators(g, 12)
    rep = section_on_generators(g, gens, relations=[[(0, 2)]], bound=4)
    rel = [e for e in rep.entries if e.check == "relation"]
    assert len(rel) == 1 and rel[0].status == "pass"


def test_phi_multiplicativity():
    g, k, o = _rings("C4")
    t, tl = trivial_module(k, g), trivial_module(o, g)
    assert phi_multiplicativity_check(t, tl, t, tl) == (True, True, True)
    w, wl = omega_power(k, g, 1), omega_power(o, g, 1)
    assert phi_multiplicativity_check(w, wl, w, wl) == (True, True, True)


def test_phi_multiplicativity_q8_with_dual():
    g, k, o = _rings("Q8")
    w, wl = omega_power(k, g, 1), omega_power(o, g, 1)
    assert phi_multiplicativity_check(w, wl, dual(w), dual(wl)) == (True, True, True)


def test_generator_configuration():
    names = {s: [x.name for x in configured_generators(build_group(s), 8)] for s in CATALOG}
    assert names["C4"] == ["omega"]
    assert len(names["Q8"]) == 4  # omega and three maximal subgroups
    assert len(names["C2xC2"]) == 4
    assert all(n[0] == "omega" for n in names.values())
