import numpy as np
import pytest

from dadelab import structure as ks
from dadelab.dade import rings_for
from dadelab.heller import (
    cosyzygy,
    omega_power,
    projective_cover,
    radical_rank,
    relative_syzygy,
    syzygy,
)
from dadelab.pgroup import CATALOG, build_group, subgroup_classes
from dadelab.rpmod import (
    determinant,
    dual,
    reduce_mod_p,
    regular_module,
    sign_character,
    trivial_module,
)

TWO_GROUPS = [s for s in CATALOG if build_group(s).p == 2]


def _rings(spec, N=12):
    g = build_group(spec)
    k, o = rings_for(g, N)
    return g, k, o


def test_cover_examples():
    g, k, o = _rings("C4")
    cov = projective_cover(trivial_module(k, g))
    assert cov.rank == 1 and cov.kernel.dim == 3
    cov = projective_cover(regular_module(k, g))
    assert cov.rank == 1 and cov.kernel.dim == 0
    cov = projective_cover(omega_power(k, g, 1))
    assert cov.rank == 1 and cov.kernel.dim == 1


@pytest.mark.parametrize("spec", CATALOG)
@pytest.mark.parametrize("which", ["k", "O"])
def test_cover_is_exact(spec, which):
    g, k, o = _rings(spec)
    r = k if which == "k" else o
    for m in (trivial_module(r, g), omega_power(r, g, 1), omega_power(r, g, -1)):
        cov = projective_cover(m)
        assert cov.kernel.dim + m.dim == cov.rank * g.order
        assert cov.rank == m.dim - radical_rank(m)
        comp = r.matmul(cov.surjection, cov.inclusion)
        assert not comp.any()


def test_syzygy_of_trivial_over_c2_lattice_is_sign():
    g, k, o = _rings("C2")
    om = syzygy(trivial_module(o, g))
    assert om.dim == 1
    assert np.array_equal(om.gens[0], sign_character(o, g).as_module().gens[0])
    assert ks.is_isomorphic(relative_syzygy(o, g, subgroup_classes(g)[0]), sign_character(o, g).as_module())


@pytest.mark.parametrize("spec", CATALOG)
def test_augmentation_dimension(spec):
    g, k, o = _rings(spec)
    assert syzygy(trivial_module(k, g)).dim == g.order - 1
    assert omega_power(k, g, 0) == trivial_module(k, g)


def test_omega_dims():
    expected = {
        "C4": [3, 1, 3, 1, 3, 1, 3],
        "C2xC2": [7, 5, 3, 1, 3, 5, 7],
        "Q8": [7, 9, 7, 1, 7, 9, 7],
    }
    for spec, dims in expected.items():
        g, k, o = _rings(spec)
        assert [omega_power(k, g, m).dim for m in range(-3, 4)] == dims


def test_cyclic_period_two():
    g, k, o = _rings("C4")
    assert ks.is_isomorphic(omega_power(k, g, 2), trivial_module(k, g))


def test_relative_syzygy_examples():
    g, k, o = _rings("C4")
    classes = subgroup_classes(g)
    assert relative_syzygy(k, g, classes[-1]).dim == 0
    assert relative_syzygy(k, g, classes[1]).dim == 1


@pytest.mark.parametrize("spec", TWO_GROUPS)
def test_determinants_of_syzygies(spec):
    g, k, o = _rings(spec)
    reg = regular_module(o, g)
    for m in (-3, -2, -1, 1, 2, 3):
        cur = omega_power(o, g, m)
        prev = omega_power(o, g, m - 1)
        r = projective_cover(prev).rank if m > 0 else projective_cover(dual(cur)).rank
        for x in g.generators:
            # telescoping: det(Omega^m) det(Omega^{m-1}) = det(OP)^r
            lhs = o.mul(determinant(cur, x), determinant(prev, x))
            assert np.array_equal(lhs, o.pow(determinant(reg, x), r)), (m, x)
        for x in range(g.order):
            if len(g.closure([x])) < g.order:
                assert np.array_equal(determinant(cur, x), o.scalar(1))
    if g.is_cyclic():
        x = g.generators[0]
        assert np.array_equal(determinant(omega_power(o, g, 1), x), o.scalar(-1))


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "Q8", "C3", "C3xC3"])
def test_duality_and_lifting(spec):
    g, k, o = _rings(spec)
    for m in (1, 2, 3):
        for r in (k, o):
            assert ks.is_isomorphic(omega_power(r, g, -m), dual(omega_power(r, g, m)))
        assert ks.is_isomorphic(reduce_mod_p(omega_power(o, g, m)), omega_power(k, g, m))


def test_cosyzygy_matches_negative_power():
    g, k, o = _rings("C2xC2")
    assert ks.is_isomorphic(cosyzygy(trivial_module(k, g)), omega_power(k, g, -1))
