"""Hom spaces, Krull-Schmidt decompositions, isomorphism tests, vertices and caps.

Decomposition proceeds in two stages.  Free summands are split off first
using the norm element and the coinduced description of ``Hom(M, RP)``; this
is cheap even for large tensor products.  The remaining part is split by
Fitting idempotents of random endomorphisms, lifted to the working precision
by the iteration ``e <- 3e^2 - 2e^3``, until every piece has a certified local
endomorphism ring.
"""

from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .coeffring import CoefficientRing
from .errors import (
    CertificationFailed,
    InternalInvariantViolation,
    NotCapped,
    NotIndecomposable,
    PrecisionFailure,
)
from .pgroup import (
    PGroup,
    SubgroupClass,
    left_cosets,
    maximal_subgroup_classes,
    subgroup_classes,
)
from .rpmod import (
    RPModule,
    _check_same,
    block,
    change_basis,
    dual,
    permutation_module,
    regular_module,
    restrict,
    tensor,
    trivial_module,
)

log = logging.getLogger(__name__)

DEFAULT_SEED = 42
ISO_ATTEMPTS = 64
SPLIT_ATTEMPTS = 64
DIRECT_ISO_LIMIT = 12


# ----------------------------------------------------------------------
# Hom spaces


def _equations(ring: CoefficientRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of X -> X a - b X on row-major vec(X), X of shape (dn, dm)."""
    dm, dn = a.shape[0], b.shape[0]
    eq = ring.zeros((dn, dm, dn, dm))
    idx = np.arange(dn)
    eq[idx, :, idx, :] = a.transpose(1, 0, 2)[None]
    jdx = np.arange(dm)
    eq[:, jdx, :, jdx] = ring.sub(eq[:, jdx, :, jdx], b[None])
    return eq.reshape(dn * dm, dn * dm, ring.deg)


def hom_basis_kron(m: RPModule, n: RPModule) -> list[np.ndarray]:
    """Hom_RP(M, N) as the joint kernel of X -> X A_M(g) - A_N(g) X.

    Direct but O(d^6); kept as an independent cross-check of hom_basis.
    """
    _check_same(m, n)
    ring = m.ring
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    if m.gens:
        # one stacked system: kernels of kernels would lose precision over O
        eq = np.concatenate([_equations(ring, a, b) for a, b in zip(m.gens, n.gens)], axis=0)
        basis = linalg.kernel(ring, eq)
    else:
        basis = ring.identity(dm * dn)
    return [basis[:, i].reshape(dn, dm, ring.deg) for i in range(basis.shape[1])]


@dataclass
class _Presentation:
    tops: list[int]
    kernel: np.ndarray  # (r*|P|, s): generators of the relations among the x.e_top
    right_inverse: np.ndarray  # (r*|P|, d): S @ right_inverse = I


_PRESENTATIONS: "weakref.WeakKeyDictionary[RPModule, _Presentation]" = weakref.WeakKeyDictionary()


def _presentation(m: RPModule) -> _Presentation:
    if m in _PRESENTATIONS:
        return _PRESENTATIONS[m]
    ring, order = m.ring, m.group.order
    d = m.dim
    ident = ring.identity(d)
    rad = [ring.residue(ring.sub(a, ident)) for a in m.gens]
    rad = np.concatenate(rad, axis=1) if rad else np.zeros((d, 0), dtype=np.int64)
    _, piv = linalg.rref_mod_p(np.concatenate([rad, np.eye(d, dtype=np.int64)], axis=1), ring.p)
    tops = [c - rad.shape[1] for c in piv if c >= rad.shape[1]]
    surj = ring.zeros((d, len(tops) * order))
    for i, j in enumerate(tops):
        for x in range(order):
            surj[:, i * order + x] = m.matrix(x)[:, j]
    el = linalg.eliminate(ring, surj, rhs=ident)
    if el.rank != d or any(el.valuations):
        raise PrecisionFailure("presentation map is not onto")
    v = el.col_transform
    relations = v[:, d:]
    s = relations.shape[1]
    if s:
        # keep only module generators of the relation module (Nakayama)
        coords = linalg.inverse(ring, v)[d:]
        rad = []
        for g in m.group.generators:
            perm = np.array([i * order + m.group.mul(g, x) for i in range(len(tops)) for x in range(order)])
            moved = np.zeros_like(relations)
            moved[perm] = relations
            rad.append(ring.residue(ring.matmul(coords, ring.sub(moved, relations))))
        rad = np.concatenate(rad, axis=1)
        _, piv = linalg.rref_mod_p(np.concatenate([rad, np.eye(s, dtype=np.int64)], axis=1), ring.p)
        keep = [c - rad.shape[1] for c in piv if c >= rad.shape[1]]
        relations = relations[:, keep]
    pres = _Presentation(tops, relations.copy(), ring.matmul(v[:, :d], el.rhs))
    _PRESENTATIONS[m] = pres
    return pres


def hom_basis(m: RPModule, n: RPModule) -> list[np.ndarray]:
    """Basis of Hom_RP(M, N): matrices T with T A_M(g) = A_N(g) T.

    A map is fixed by the images n_i of the generators e_top(i) of M; these
    must kill every relation sum_{i,x} c_{i,x} x.e_top(i) = 0.
    """
    _check_same(m, n)
    ring = m.ring
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    order = m.group.order
    pres = _presentation(m)
    r, s = len(pres.tops), pres.kernel.shape[1]
    acts = np.stack([n.matrix(x) for x in range(order)]).reshape(order, dn * dn, ring.deg)
    if s:
        blocks = []
        for i in range(r):
            coeff = pres.kernel[i * order : (i + 1) * order].transpose(1, 0, 2)  # (s, |P|)
            blk = ring.matmul(coeff, acts).reshape(s, dn, dn, ring.deg)
            blocks.append(blk)
        # rows (relation, coordinate), columns (generator, coordinate)
        eq = np.stack(blocks, axis=2).reshape(s * dn, r * dn, ring.deg)
        sol = linalg.kernel(ring, eq)
    else:
        sol = ring.identity(r * dn)
    stacked = acts.reshape(order * dn, dn, ring.deg)
    out = []
    for c in range(sol.shape[1]):
        imgs = sol[:, c].reshape(r, dn, ring.deg).transpose(1, 0, 2)  # (dn, r)
        moved = ring.matmul(stacked, imgs).reshape(order, dn, r, ring.deg)
        on_free = moved.transpose(1, 2, 0, 3).reshape(dn, r * order, ring.deg)
        out.append(ring.matmul(on_free, pres.right_inverse))
    return out


def endomorphism_basis(m: RPModule) -> list[np.ndarray]:
    return hom_basis(m, m)


def _random_combination(ring: CoefficientRing, basis: list[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    coeffs = rng.integers(0, ring.p, size=len(basis))
    out = ring.zeros(basis[0].shape[:2])
    for c, b in zip(coeffs, basis):
        if c:
            out = ring.add(out, ring.mul(b, ring.scalar(int(c))))
    return out


# ----------------------------------------------------------------------
# free summands


@dataclass
class FreeSplit:
    rank: int
    basis: np.ndarray
    basis_inv: np.ndarray
    complement: RPModule


def split_free(m: RPModule) -> FreeSplit:
    """Split M = (RP)^f + C with the free part first in the new basis."""
    ring, group = m.ring, m.group
    d, order = m.dim, group.order
    norm = ring.zeros((d, d))
    for x in range(order):
        norm = ring.add(norm, m.matrix(x))
    # columns j with independent N e_j generate a free submodule
    _, cols = linalg.rref_mod_p(ring.residue(norm), ring.p)
    f = len(cols)
    if f == 0:
        ident = ring.identity(d)
        return FreeSplit(0, ident, ident, m)
    fcols = ring.zeros((d, f * order))
    for i, j in enumerate(cols):
        for x in range(order):
            fcols[:, i * order + x] = m.matrix(x)[:, j]
    b0 = linalg.complete_to_basis(ring, fcols)
    b0inv = linalg.inverse(ring, b0)
    inv = group.inverse
    proj = ring.zeros((f * order, d))
    for i in range(f):
        lam = b0inv[i * order : i * order + 1]
        for x in range(order):
            proj[i * order + x] = ring.matmul(lam, m.matrix(int(inv[x])))[0]
    c0 = b0[:, f * order :]
    comp = ring.sub(c0, ring.matmul(fcols, ring.matmul(proj, c0)))
    basis = np.concatenate([fcols, comp], axis=1)
    basis_inv = linalg.inverse(ring, basis)
    conj = change_basis(m, basis, basis_inv)
    lo = f * order
    for a in conj.gens:
        if not (ring.is_zero(a[:lo, lo:]).all() and ring.is_zero(a[lo:, :lo]).all()):
            raise InternalInvariantViolation("free summand did not split off")
    return FreeSplit(f, basis, basis_inv, block(conj, lo, d))


# ----------------------------------------------------------------------
# locality certificate and idempotent splitting


def _single_eigenvalue(mat: np.ndarray, p: int) -> Optional[int]:
    d = mat.shape[0]
    for lam in range(p):
        shifted = (mat - lam * np.eye(d, dtype=np.int64)) % p
        if not linalg.matpow_mod_p(shifted, d, p).any():
            return lam
    return None


def certify_local(residue_basis: list[np.ndarray], p: int) -> bool:
    """True iff the algebra spanned by the matrices (which contains 1) is local
    with residue field GF(p).

    Each basis element b must have a single eigenvalue l_b.  Then the algebra
    is kI + N with N spanned by the b - l_b, and it is local as soon as N acts
    nilpotently, i.e. the flag V, NV, N(NV), ... reaches zero.
    """
    if not residue_basis:
        return False
    d = residue_basis[0].shape[0]
    nil = []
    for b in residue_basis:
        lam = _single_eigenvalue(b, p)
        if lam is None:
            return False
        shifted = (b - lam * np.eye(d, dtype=np.int64)) % p
        if shifted.any():
            nil.append(shifted)
    if not nil:
        return True
    stack = np.stack(nil)
    space = np.eye(d, dtype=np.int64)
    for _ in range(d + 1):
        imgs = np.einsum("bij,jk->bik", stack, space.T) % p
        rows = imgs.transpose(0, 2, 1).reshape(-1, d)
        r, piv = linalg.rref_mod_p(rows, p)
        space = r[: len(piv)]
        if space.shape[0] == 0:
            return True
    return False


def _fitting_idempotent(phi: np.ndarray, p: int) -> Optional[np.ndarray]:
    d = phi.shape[0]
    for lam in range(p):
        t = linalg.matpow_mod_p((phi - lam * np.eye(d, dtype=np.int64)) % p, d, p)
        ker = linalg.nullspace_mod_p(t, p)
        if 0 < ker.shape[1] < d:
            im = linalg.column_space_mod_p(t, p)
            basis = np.concatenate([ker, im], axis=1)
            proj = np.zeros((d, d), dtype=np.int64)
            proj[np.arange(ker.shape[1]), np.arange(ker.shape[1])] = 1
            return (basis @ proj @ linalg.inverse_mod_p(basis, p)) % p
    return None


def _lift_idempotent(ring: CoefficientRing, basis: list[np.ndarray], ebar: np.ndarray) -> np.ndarray:
    p = ring.p
    res = [ring.residue(b) for b in basis]
    a = np.stack([r.ravel() for r in res], axis=1)
    coeffs = linalg.solve_mod_p(a, ebar.reshape(-1, 1), p)
    if coeffs is None:
        raise InternalInvariantViolation("Fitting idempotent not in the endomorphism algebra")
    e = ring.zeros(basis[0].shape[:2])
    for c, b in zip(coeffs[:, 0], basis):
        if c:
            e = ring.add(e, ring.mul(b, ring.scalar(int(c))))
    for _ in range(64):
        e2 = ring.matmul(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = ring.matmul(e2, e)
        e = ring.sub(ring.mul(e2, ring.scalar(3)), ring.mul(e3, ring.scalar(2)))
    raise PrecisionFailure("idempotent lifting did not converge")


def _image_columns(ring: CoefficientRing, e: np.ndarray) -> np.ndarray:
    _, cols = linalg.rref_mod_p(ring.residue(e), ring.p)
    return e[:, cols]


@dataclass
class _Leaf:
    module: RPModule
    lo: int
    hi: int


def _split_recursive(x: RPModule, rng: np.random.Generator) -> tuple[list[_Leaf], np.ndarray]:
    ring = x.ring
    d = x.dim
    ident = ring.identity(d)
    if d <= 1:
        return [_Leaf(x, 0, d)], ident
    ends = endomorphism_basis(x)
    res = [ring.residue(b) for b in ends]
    if certify_local(res, ring.p):
        return [_Leaf(x, 0, d)], ident
    ebar = None
    for _ in range(SPLIT_ATTEMPTS):
        coeffs = rng.integers(0, ring.p, size=len(res))
        phi = sum(int(c) * r for c, r in zip(coeffs, res)) % ring.p
        ebar = _fitting_idempotent(phi, ring.p)
        if ebar is not None:
            break
    if ebar is None:
        raise CertificationFailed(
            f"no idempotent found and endomorphism ring not certified local (dim {d})"
        )
    e = _lift_idempotent(ring, ends, ebar)
    f = ring.sub(ident, e)
    left, right = _image_columns(ring, e), _image_columns(ring, f)
    basis = np.concatenate([left, right], axis=1)
    basis_inv = linalg.inverse(ring, basis)
    conj = change_basis(x, basis, basis_inv)
    r = left.shape[1]
    for a in conj.gens:
        if not (ring.is_zero(a[:r, r:]).all() and ring.is_zero(a[r:, :r]).all()):
            raise InternalInvariantViolation("idempotent split is not block diagonal")
    leaves1, b1 = _split_recursive(block(conj, 0, r), rng)
    leaves2, b2 = _split_recursive(block(conj, r, d), rng)
    inner = ring.zeros((d, d))
    inner[:r, :r] = b1
    inner[r:, r:] = b2
    leaves = leaves1 + [_Leaf(l.module, l.lo + r, l.hi + r) for l in leaves2]
    return leaves, ring.matmul(basis, inner)


# ----------------------------------------------------------------------
# isomorphism of indecomposables


def _iso_indecomposable(x: RPModule, y: RPModule, rng: np.random.Generator) -> Optional[np.ndarray]:
    """Witness X -> Y for indecomposable X, Y, or None."""
    if x.dim != y.dim:
        return None
    ring = x.ring
    if x.dim == 0:
        return ring.zeros((0, 0))
    hxy = hom_basis(x, y)
    if not hxy:
        return None
    for _ in range(4):
        t = _random_combination(ring, hxy, rng)
        if linalg.is_invertible(ring, t):
            return t
    hyx = hom_basis(y, x)
    for phi in hxy:
        for psi in hyx:
            if linalg.is_invertible(ring, ring.matmul(psi, phi)):
                return phi
    return None


# ----------------------------------------------------------------------
# decomposition


@dataclass
class Decomposition:
    """Krull-Schmidt decomposition.

    ``summands`` lists one representative per isomorphism class with its
    multiplicity; ``blocks`` gives, in the basis ``basis_change``, the
    diagonal block ``(class index, lo, hi)`` of every individual summand.
    """

    module: RPModule
    summands: list[tuple[RPModule, int]]
    basis_change: np.ndarray
    blocks: list[tuple[int, int, int]]
    free_class: Optional[int] = None
    _vertices: dict = field(default_factory=dict, repr=False)

    def block_modules(self) -> list[tuple[int, RPModule]]:
        conj = change_basis(self.module, self.basis_change)
        return [(c, block(conj, lo, hi)) for c, lo, hi in self.blocks]

    def vertex(self, i: int) -> SubgroupClass:
        if i not in self._vertices:
            if i == self.free_class:
                self._vertices[i] = subgroup_classes(self.module.group)[0]
            else:
                self._vertices[i] = vertex(self.summands[i][0], check=False)
        return self._vertices[i]

    def report(self) -> dict:
        group = self.module.group
        out = []
        for i, (mod, mult) in enumerate(self.summands):
            perm = _permutation_label(mod, np.random.default_rng(DEFAULT_SEED))
            out.append(
                {
                    "dim": mod.dim,
                    "multiplicity": mult,
                    "vertex": self.vertex(i).label,
                    "permutation": perm,
                }
            )
        return {"group": group.name, "ring": self.module.ring.header(), "dim": self.module.dim, "summands": out}


_DECOMP_CACHE: "weakref.WeakKeyDictionary[RPModule, dict]" = weakref.WeakKeyDictionary()


def decompose(m: RPModule, seed: int = DEFAULT_SEED) -> Decomposition:
    cache = _DECOMP_CACHE.setdefault(m, {})
    if seed in cache:
        return cache[seed]
    result = _decompose(m, seed)
    cache[seed] = result
    return result


def _decompose(m: RPModule, seed: int) -> Decomposition:
    ring, group = m.ring, m.group
    d = m.dim
    rng = np.random.default_rng(seed)
    if d == 0:
        return Decomposition(m, [], ring.zeros((0, 0)), [])
    fs = split_free(m)
    order = group.order
    free_dim = fs.rank * order
    if fs.complement.dim:
        leaves, bc = _split_recursive(fs.complement, rng)
    else:
        leaves, bc = [], ring.zeros((0, 0))
    inner = ring.identity(d)
    inner[free_dim:, free_dim:] = bc
    basis = ring.matmul(fs.basis, inner)

    summands: list[list] = []
    leaf_class: list[int] = []
    free_class = None
    if fs.rank:
        summands.append([regular_module(ring, group), fs.rank])
        free_class = 0
    for leaf in leaves:
        for ci, entry in enumerate(summands):
            if ci == free_class:
                continue
            if _iso_indecomposable(entry[0], leaf.module, rng) is not None:
                entry[1] += 1
                leaf_class.append(ci)
                break
        else:
            summands.append([leaf.module, 1])
            leaf_class.append(len(summands) - 1)

    # reorder columns so that summands of one class are contiguous
    spans: list[tuple[int, int, int]] = [(0, i * order, (i + 1) * order) for i in range(fs.rank)]
    spans += [(c, free_dim + l.lo, free_dim + l.hi) for c, l in zip(leaf_class, leaves)]
    spans.sort(key=lambda s: (s[0], s[1]))
    perm = []
    blocks = []
    pos = 0
    for c, lo, hi in spans:
        perm.extend(range(lo, hi))
        blocks.append((c, pos, pos + hi - lo))
        pos += hi - lo
    basis = basis[:, perm]
    return Decomposition(
        m,
        [(mod, mult) for mod, mult in summands],
        basis,
        blocks,
        free_class,
    )


# ----------------------------------------------------------------------
# isomorphism


def find_isomorphism(m: RPModule, n: RPModule, seed: int = DEFAULT_SEED) -> Optional[np.ndarray]:
    """An invertible module map M -> N, or None if M and N are not isomorphic."""
    _check_same(m, n)
    if m.dim != n.dim:
        return None
    ring = m.ring
    if m.dim == 0:
        return ring.zeros((0, 0))
    rng = np.random.default_rng(seed)
    if m.dim <= DIRECT_ISO_LIMIT:
        homs = hom_basis(m, n)
        if not homs:
            return None
        for _ in range(ISO_ATTEMPTS):
            t = _random_combination(ring, homs, rng)
            if linalg.is_invertible(ring, t):
                return t
    return _iso_by_decomposition(m, n, seed)


def is_isomorphic(m: RPModule, n: RPModule, seed: int = DEFAULT_SEED) -> bool:
    return find_isomorphism(m, n, seed) is not None


def _iso_by_decomposition(m: RPModule, n: RPModule, seed: int) -> Optional[np.ndarray]:
    ring = m.ring
    rng = np.random.default_rng(seed)
    dm, dn = decompose(m, seed), decompose(n, seed)
    if sorted(mod.dim * k for mod, k in dm.summands) != sorted(mod.dim * k for mod, k in dn.summands):
        return None
    mb = dm.block_modules()
    nb = dn.block_modules()
    mblocks = [(c, lo, hi, mod) for (c, lo, hi), (_, mod) in zip(dm.blocks, mb)]
    nblocks = [(c, lo, hi, mod) for (c, lo, hi), (_, mod) in zip(dn.blocks, nb)]
    used = [False] * len(nblocks)
    w = ring.zeros((m.dim, m.dim))
    for cm, lo, hi, xm in mblocks:
        for j, (cn, lo2, hi2, xn) in enumerate(nblocks):
            if used[j] or hi - lo != hi2 - lo2:
                continue
            is_free_m = cm == dm.free_class
            is_free_n = cn == dn.free_class
            if is_free_m != is_free_n:
                continue
            if is_free_m:
                t = ring.identity(hi - lo)
            else:
                t = _iso_indecomposable(xm, xn, rng)
                if t is None:
                    continue
            used[j] = True
            w[lo2:hi2, lo:hi] = t
            break
        else:
            return None
    bn, bm = dn.basis_change, dm.basis_change
    witness = ring.matmul(bn, ring.matmul(w, linalg.inverse(ring, bm)))
    for a, b in zip(m.gens, n.gens):
        if not np.array_equal(ring.matmul(witness, a), ring.matmul(b, witness)):
            raise InternalInvariantViolation("assembled isomorphism does not commute")
    return witness


# ----------------------------------------------------------------------
# vertices


def _coset_reps(group: PGroup, subgroup) -> list[int]:
    return [c[0] for c in left_cosets(group, subgroup)]


def is_relatively_projective(x: RPModule, subgroup: SubgroupClass) -> bool:
    """Higman's criterion: id lies in Tr_Q^P(End_RQ(X)).

    The image of the trace is an ideal of End_RP(X), so by Nakayama it
    contains id as soon as its residues span id-bar; the test is a linear
    system over GF(p) even for lattices.
    """
    ring, group = x.ring, x.group
    d = x.dim
    res = restrict(x, subgroup)
    ends = endomorphism_basis(res)
    if not ends:
        return False
    inv = group.inverse
    reps = _coset_reps(group, subgroup)
    left = np.concatenate([x.matrix(t) for t in reps], axis=0)  # (|reps| d, d)
    right = np.concatenate([x.matrix(int(inv[t])) for t in reps], axis=1)  # (d, |reps| d)
    traces = []
    for b in ends:
        blocks = ring.matmul(left, ring.matmul(b, right))
        tr = np.zeros((d, d), dtype=np.int64)
        res_blocks = ring.residue(blocks)
        for i in range(len(reps)):
            tr += res_blocks[i * d : (i + 1) * d, i * d : (i + 1) * d]
        traces.append(tr.ravel() % ring.p)
    a = np.stack(traces, axis=1)
    rhs = np.eye(d, dtype=np.int64).reshape(d * d, 1)
    return linalg.solve_mod_p(a, rhs, ring.p) is not None


def is_indecomposable(x: RPModule) -> bool:
    if x.dim == 0:
        return False
    ring = x.ring
    return certify_local([ring.residue(b) for b in endomorphism_basis(x)], ring.p)


def vertex(x: RPModule, check: bool = True) -> SubgroupClass:
    if check and not is_indecomposable(x):
        raise NotIndecomposable("vertex is only defined for indecomposable modules")
    for q in subgroup_classes(x.group):
        if is_relatively_projective(x, q):
            return q
    raise InternalInvariantViolation("module is not relatively P-projective")  # pragma: no cover


def has_full_vertex(x: RPModule) -> bool:
    """Vertex equals P (x indecomposable)."""
    if x.group.order == 1:
        return True
    return not any(is_relatively_projective(x, q) for q in maximal_subgroup_classes(x.group))


# ----------------------------------------------------------------------
# caps and predicates


def cap(m: RPModule, seed: int = DEFAULT_SEED, known_capped: bool = False) -> tuple[RPModule, int]:
    """The indecomposable summand with vertex P and its multiplicity.

    With ``known_capped`` the caller guarantees that M is capped (a product
    of Dade classes, say); a single non-projective candidate is then the
    cap without running Higman's test.
    """
    dec = decompose(m, seed)
    candidates = [
        (mod, mult)
        for i, (mod, mult) in enumerate(dec.summands)
        if not (i == dec.free_class and m.group.order > 1)
    ]
    if known_capped and len(candidates) == 1:
        return candidates[0]
    found = [(mod, mult) for mod, mult in candidates if has_full_vertex(mod)]
    if not found:
        raise NotCapped("no indecomposable summand has vertex P")
    if len(found) > 1:
        raise InternalInvariantViolation("two non-isomorphic summands with vertex P")
    return found[0]


def _permutation_label(x: RPModule, rng: np.random.Generator) -> Optional[str]:
    group = x.group
    for q in subgroup_classes(group):
        if q.index_in_P == x.dim:
            if _iso_indecomposable(permutation_module(x.ring, group, q), x, rng) is not None:
                return q.label
    return None


def is_permutation_module(m: RPModule, seed: int = DEFAULT_SEED) -> bool:
    dec = decompose(m, seed)
    rng = np.random.default_rng(seed)
    for i, (mod, _) in enumerate(dec.summands):
        if i == dec.free_class:
            continue
        if _permutation_label(mod, rng) is None:
            return False
    return True


def is_endo_permutation(m: RPModule, seed: int = DEFAULT_SEED) -> bool:
    return is_permutation_module(tensor(m, dual(m)), seed)


def is_strongly_capped(m: RPModule, seed: int = DEFAULT_SEED) -> bool:
    try:
        return cap(m, seed)[1] == 1
    except NotCapped:
        return False


def is_endotrivial(m: RPModule, seed: int = DEFAULT_SEED) -> bool:
    dec = decompose(tensor(m, dual(m)), seed)
    rest = [(mod, k) for i, (mod, k) in enumerate(dec.summands) if i != dec.free_class]
    if len(rest) != 1 or rest[0][1] != 1:
        return False
    triv = trivial_module(m.ring, m.group)
    return rest[0][0].dim == 1 and rest[0][0] == triv
