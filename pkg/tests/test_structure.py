import numpy as np
import pytest

from dadelab import linalg
from dadelab import structure as ks
from dadelab.dade import rings_for
from dadelab.errors import NotCapped
from dadelab.exhaustive import brute_force_summands, summand_invariants
from dadelab.harness import _oracle_modules
from dadelab.heller import omega_power
from dadelab.pgroup import build_group, full_subgroup, subgroup_classes, trivial_subgroup
from dadelab.rpmod import (
    change_basis,
    direct_sum,
    direct_sum_all,
    permutation_module,
    regular_module,
    tensor,
    trivial_module,
    zero_module,
)


def _k(spec):
    g = build_group(spec)
    return g, rings_for(g, 12)[0]


def _o(spec):
    g = build_group(spec)
    return g, rings_for(g, 12)[1]


def _random_conjugate(m, seed):
    ring = m.ring
    rng = np.random.default_rng(seed)
    while True:
        b = ring.from_ints(rng.integers(0, ring.p, size=(m.dim, m.dim)))
        if linalg.is_invertible(ring, b):
            return change_basis(m, b)


def _invariants(m):
    dec = ks.decompose(m)
    return sorted((mod.dim, mult) for mod, mult in dec.summands)


@pytest.mark.parametrize("spec", ["C2", "C4", "C2xC2", "Q8", "C3"])
def test_hom_dimensions(spec):
    g, k = _k(spec)
    t, reg = trivial_module(k, g), regular_module(k, g)
    assert len(ks.hom_basis(t, reg)) == 1
    assert len(ks.hom_basis(reg, reg)) == g.order


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "Q8", "C3"])
@pytest.mark.parametrize("ring", ["k", "O"])
def test_hom_agrees_with_kronecker_system(spec, ring):
    g, r = (_k if ring == "k" else _o)(spec)
    mods = [trivial_module(r, g), omega_power(r, g, 1), omega_power(r, g, -1)]
    for q in subgroup_classes(g)[1:-1]:
        mods.append(permutation_module(r, g, q))
    for a in mods:
        for b in mods:
            basis = ks.hom_basis(a, b)
            assert len(basis) == len(ks.hom_basis_kron(a, b))
            for h in basis:
                for x, y in zip(a.gens, b.gens):
                    assert np.array_equal(r.matmul(h, x), r.matmul(y, h))


def test_decompose_examples():
    g, k = _k("C2")
    reg = regular_module(k, g)
    dec = ks.decompose(tensor(reg, reg))
    assert [(m.dim, c) for m, c in dec.summands] == [(2, 2)]
    g, k = _k("C4")
    dec = ks.decompose(permutation_module(k, g, subgroup_classes(g)[1]))
    assert [(m.dim, c) for m, c in dec.summands] == [(2, 1)]
    assert ks.decompose(zero_module(k, g)).summands == []


@pytest.mark.parametrize("spec,seed", [("C4", 1), ("C2xC2", 2), ("Q8", 3), ("C3xC3", 4)])
def test_decomposition_is_block_diagonal_and_exhaustive(spec, seed):
    g, k = _k(spec)
    parts = [trivial_module(k, g), regular_module(k, g), omega_power(k, g, 1)]
    parts += [permutation_module(k, g, q) for q in subgroup_classes(g)[1:2]]
    m = _random_conjugate(direct_sum_all(parts), seed)
    dec = ks.decompose(m)
    conj = change_basis(m, dec.basis_change)
    mask = np.zeros((m.dim, m.dim), dtype=bool)
    for _, lo, hi in dec.blocks:
        mask[lo:hi, lo:hi] = True
    for a in conj.gens:
        assert not a[~mask].any()
    for _, b in dec.block_modules():
        again = ks.decompose(b)
        assert len(again.summands) == 1 and again.summands[0][1] == 1
    assert sum(mod.dim * c for mod, c in dec.summands) == m.dim


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "Q8"])
def test_krull_schmidt(spec):
    g, k = _k(spec)
    rng = np.random.default_rng(7)
    pool = [trivial_module(k, g), regular_module(k, g), omega_power(k, g, 1), omega_power(k, g, -1)]
    pool += [permutation_module(k, g, q) for q in subgroup_classes(g)[1:-1]]
    for _ in range(4):
        i, j = rng.integers(0, len(pool), size=2)
        a, b = pool[i], pool[j]
        union = {}
        for mod, c in ks.decompose(a).summands + ks.decompose(b).summands:
            for key in union:
                if key.dim == mod.dim and ks.is_isomorphic(key, mod):
                    union[key] += c
                    break
            else:
                union[mod] = c
        got = ks.decompose(direct_sum(a, b)).summands
        assert len(got) == len(union)
        for mod, c in got:
            match = [v for key, v in union.items() if key.dim == mod.dim and ks.is_isomorphic(key, mod)]
            assert match == [c]


def test_isomorphism_examples():
    g, k = _k("C4")
    w = omega_power(k, g, 1)
    assert ks.is_isomorphic(w, w)
    assert not ks.is_isomorphic(trivial_module(k, g), regular_module(k, g))
    assert ks.is_isomorphic(omega_power(k, g, 2), trivial_module(k, g))
    c = _random_conjugate(w, 11)
    wit = ks.find_isomorphism(w, c)
    assert wit is not None
    for a, b in zip(w.gens, c.gens):
        assert np.array_equal(k.matmul(wit, a), k.matmul(b, wit))


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "D8", "Q8", "C3xC3"])
def test_vertices(spec):
    g, k = _k(spec)
    assert ks.vertex(trivial_module(k, g)) == full_subgroup(g)
    assert ks.vertex(regular_module(k, g)) == trivial_subgroup(g)
    for q in subgroup_classes(g):
        assert ks.vertex(permutation_module(k, g, q)) == q


def test_cap_examples():
    g, k = _k("C2xC2")
    t, reg = trivial_module(k, g), regular_module(k, g)
    c, mult = ks.cap(direct_sum(t, reg))
    assert c.dim == 1 and mult == 1
    with pytest.raises(NotCapped):
        ks.cap(reg)


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "Q8", "C3"])
def test_predicates(spec):
    g, k = _k(spec)
    for q in subgroup_classes(g):
        assert ks.is_permutation_module(permutation_module(k, g, q))
    w = omega_power(k, g, 1)
    assert ks.is_endo_permutation(w) and ks.is_strongly_capped(w) and ks.is_endotrivial(w)
    assert w.dim % g.p != 0
    assert not ks.is_permutation_module(w) or g.order == 2


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "Q8"])
def test_cap_of_tensor_depends_on_caps_only(spec):
    g, k = _k(spec)
    m = direct_sum(omega_power(k, g, 1), regular_module(k, g))
    n = omega_power(k, g, -1)
    lhs, _ = ks.cap(tensor(m, n))
    rhs, _ = ks.cap(tensor(ks.cap(m)[0], ks.cap(n)[0]))
    assert ks.is_isomorphic(lhs, rhs)


def test_lattice_decomposition():
    g, o = _o("C4")
    m = _random_conjugate(direct_sum(omega_power(o, g, 1), regular_module(o, g)), 5)
    dims = _invariants(m)
    assert dims == [(3, 1), (4, 1)]
    c, _ = ks.cap(m)
    assert ks.is_isomorphic(c, omega_power(o, g, 1))


@pytest.mark.parametrize("spec", ["C2", "C4"])
def test_decompose_matches_exhaustive_search(spec):
    g, k = _k(spec)
    for name, m in _oracle_modules(g, k, 42):
        ours = sorted(summand_invariants(b) for _, b in ks.decompose(m).block_modules())
        assert ours == brute_force_summands(m), name


def test_exhaustive_search_basics():
    g, k = _k("C2")
    assert brute_force_summands(regular_module(k, g)) == [(2, 1)]
    assert brute_force_summands(direct_sum(trivial_module(k, g), trivial_module(k, g))) == [(1, 1), (1, 1)]
    with pytest.raises(ValueError):
        brute_force_summands(direct_sum_all([regular_module(k, g)] * 4))


def test_certify_local_rejects_split_algebra():
    # the diagonal algebra k x k is not local; k[x]/x^2 is
    e1 = np.diag([1, 0])
    e2 = np.diag([0, 1])
    assert not ks.certify_local([e1, e2], 2)
    one = np.eye(2, dtype=np.int64)
    nil = np.array([[0, 1], [0, 0]])
    assert ks.certify_local([one, nil], 2)
