"""RP-modules and lattices given by one action matrix per group generator."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .coeffring import CoefficientRing, PrimeField, TruncatedDVR
from .errors import (
    DeterminantNotRootOfUnity,
    GroupMismatch,
    ModuleValidationError,
    RingMismatch,
)
from .pgroup import PGroup, SubgroupClass, coset_permutation, left_cosets, subgroup_as_group


@dataclass(frozen=True, eq=False)
class RPModule:
    """A module over RP stored as action matrices (d, d, deg) per generator."""

    ring: CoefficientRing
    group: PGroup
    gens: tuple
    perm_tag: Optional[tuple] = field(default=None)
    size: int = -1

    def __post_init__(self) -> None:
        gens = tuple(self.ring.canon(g) for g in self.gens)
        if len(gens) != len(self.group.generators):
            raise ModuleValidationError(
                f"expected {len(self.group.generators)} generator matrices, got {len(gens)}"
            )
        d = gens[0].shape[0] if gens else max(self.size, 0)
        object.__setattr__(self, "size", d)
        for g in gens:
            if g.shape != (d, d, self.ring.deg):
                raise ModuleValidationError(f"bad action matrix shape {g.shape}")
            g.setflags(write=False)
        object.__setattr__(self, "gens", gens)

    @property
    def dim(self) -> int:
        return self.size

    @cached_property
    def element_matrices(self) -> list[np.ndarray]:
        """Action matrix of every group element, built along the BFS tree."""
        mats: list[Optional[np.ndarray]] = [None] * self.group.order
        mats[0] = self.ring.identity(self.dim)
        for x in self.group.bfs_order[1:]:
            par, gi = self.group.bfs_tree[x]
            mats[x] = self.ring.matmul(mats[par], self.gens[gi])
        return mats  # type: ignore[return-value]

    def matrix(self, x: int) -> np.ndarray:
        return self.element_matrices[x]

    def validate(self) -> "RPModule":
        """Check invertibility and that generator -> matrix is a homomorphism."""
        ring, group = self.ring, self.group
        for name, g in zip(group.gen_names, self.gens):
            if not linalg.is_invertible(ring, g):
                raise ModuleValidationError(f"action of {name} is not invertible")
        mats = self.element_matrices
        for h in range(group.order):
            for gi, g in enumerate(group.generators):
                lhs = ring.matmul(mats[h], self.gens[gi])
                if not np.array_equal(lhs, mats[group.mul(h, g)]):
                    rel = f"{group.word_str(h)}*{group.gen_names[gi]} = {group.word_str(group.mul(h, g))}"
                    raise ModuleValidationError(f"relation violated: {rel}")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RPModule):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.group is other.group
            and all(np.array_equal(a, b) for a, b in zip(self.gens, other.gens))
            and self.dim == other.dim
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"RPModule({self.ring!r}, {self.group.name}, dim={self.dim})"


def _check_same(m: RPModule, n: RPModule) -> None:
    if m.ring != n.ring:
        raise RingMismatch(f"{m.ring!r} vs {n.ring!r}")
    if m.group is not n.group:
        raise GroupMismatch(f"{m.group.name} vs {n.group.name}")


def from_matrices(ring: CoefficientRing, group: PGroup, mats: Sequence[np.ndarray], **kw) -> RPModule:
    return RPModule(ring, group, tuple(mats), **kw)


def trivial_module(ring: CoefficientRing, group: PGroup) -> RPModule:
    return RPModule(
        ring, group, tuple(ring.identity(1) for _ in group.generators), ("perm", (tuple(range(group.order)),)), size=1
    )


def zero_module(ring: CoefficientRing, group: PGroup) -> RPModule:
    return RPModule(ring, group, tuple(ring.zeros((0, 0)) for _ in group.generators), size=0)


def _perm_matrix(ring: CoefficientRing, perm: np.ndarray) -> np.ndarray:
    d = len(perm)
    out = ring.zeros((d, d))
    out[perm, np.arange(d), 0] = 1
    return out


def permutation_module(ring: CoefficientRing, group: PGroup, subgroup) -> RPModule:
    """R[P/Q] with P permuting the left cosets of Q."""
    if isinstance(subgroup, SubgroupClass):
        rep = subgroup.representative
    else:
        rep = tuple(sorted(subgroup))
    mats = tuple(_perm_matrix(ring, coset_permutation(group, rep, g)) for g in group.generators)
    return RPModule(ring, group, mats, ("perm", (rep,)))


def regular_module(ring: CoefficientRing, group: PGroup) -> RPModule:
    return permutation_module(ring, group, (0,))


def direct_sum(m: RPModule, n: RPModule) -> RPModule:
    _check_same(m, n)
    ring = m.ring
    a, b = m.dim, n.dim
    mats = []
    for x, y in zip(m.gens, n.gens):
        z = ring.zeros((a + b, a + b))
        z[:a, :a] = x
        z[a:, a:] = y
        mats.append(z)
    tag = None
    if m.perm_tag and n.perm_tag:
        tag = ("perm", m.perm_tag[1] + n.perm_tag[1])
    return RPModule(ring, m.group, tuple(mats), tag)


def direct_sum_all(mods: Sequence[RPModule]) -> RPModule:
    out = mods[0]
    for x in mods[1:]:
        out = direct_sum(out, x)
    return out


def kron(ring: CoefficientRing, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a, b = x.shape[0], y.shape[0]
    prod = ring.mul(x[:, None, :, None, :], y[None, :, None, :, :])
    return prod.reshape(a * b, a * b, ring.deg)


def tensor(m: RPModule, n: RPModule) -> RPModule:
    _check_same(m, n)
    return RPModule(m.ring, m.group, tuple(kron(m.ring, x, y) for x, y in zip(m.gens, n.gens)))


def dual(m: RPModule) -> RPModule:
    """Contragredient module: g acts by the transpose of the action of g^-1."""
    inv = m.group.inverse
    mats = tuple(m.matrix(int(inv[g])).transpose(1, 0, 2) for g in m.group.generators)
    return RPModule(m.ring, m.group, mats, m.perm_tag)


def restrict(m: RPModule, subgroup) -> RPModule:
    sub = subgroup_as_group(m.group, subgroup)
    mats = tuple(m.matrix(sub.parent_indices[g]) for g in sub.generators)
    return RPModule(m.ring, sub, mats, size=m.dim)


def change_basis(m: RPModule, basis: np.ndarray, basis_inv: Optional[np.ndarray] = None) -> RPModule:
    """Module with action ``B^-1 A B``: the columns of B become the new basis."""
    ring = m.ring
    if basis_inv is None:
        basis_inv = linalg.inverse(ring, basis)
    mats = tuple(ring.matmul(basis_inv, ring.matmul(a, basis)) for a in m.gens)
    return RPModule(ring, m.group, mats, size=m.dim)


def block(m: RPModule, lo: int, hi: int) -> RPModule:
    """Diagonal block of a module whose action is block triangular."""
    return RPModule(m.ring, m.group, tuple(a[lo:hi, lo:hi] for a in m.gens), size=hi - lo)


def reduce_mod_p(lattice: RPModule) -> RPModule:
    ring = lattice.ring
    if not isinstance(ring, TruncatedDVR):
        raise TypeError("reduce_mod_p expects a lattice over a TruncatedDVR")
    k = ring.residue_field
    mats = tuple(ring.reduce(a) for a in lattice.gens)
    return RPModule(k, lattice.group, mats, lattice.perm_tag)


def base_change(m: RPModule, ring: CoefficientRing) -> RPModule:
    """Re-read a module with integer (0/+-1 style) entries over another ring."""
    if m.ring.deg != 1 or ring.deg < 1:
        raise TypeError("base change only supported from rank-one coefficient rings")
    mats = []
    for a in m.gens:
        vals = a[..., 0].copy()
        vals = np.where(vals > m.ring.modulus // 2, vals - m.ring.modulus, vals)
        mats.append(ring.from_ints(vals))
    return RPModule(ring, m.group, tuple(mats), m.perm_tag)


# ----------------------------------------------------------------------
# linear characters and determinants


@dataclass(frozen=True)
class LinearCharacter:
    """Homomorphism P -> <zeta>, stored as zeta-exponents on the generators."""

    group: PGroup = field(compare=False)
    ring: CoefficientRing
    exponents: tuple[int, ...]
    group_name: str = ""

    def __post_init__(self) -> None:
        q = self.ring.root_order
        object.__setattr__(self, "exponents", tuple(int(e) % q for e in self.exponents))
        object.__setattr__(self, "group_name", self.group.name)

    @cached_property
    def element_exponents(self) -> np.ndarray:
        q = self.ring.root_order
        out = np.zeros(self.group.order, dtype=np.int64)
        for x in self.group.bfs_order[1:]:
            par, gi = self.group.bfs_tree[x]
            out[x] = (out[par] + self.exponents[gi]) % q
        return out

    def is_homomorphism(self) -> bool:
        q = self.ring.root_order
        e = self.element_exponents
        g = self.group
        for h in range(g.order):
            for gi, x in enumerate(g.generators):
                if (e[h] + self.exponents[gi]) % q != e[g.mul(h, x)]:
                    return False
        return True

    def value(self, x: int):
        return self.ring.zeta_power(int(self.element_exponents[x]))

    def values(self):
        from .coeffring import RingValue

        return [RingValue(self.ring, self.ring.zeta_power(e)) for e in self.exponents]

    def __mul__(self, other: "LinearCharacter") -> "LinearCharacter":
        return LinearCharacter(self.group, self.ring, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "LinearCharacter":
        return LinearCharacter(self.group, self.ring, tuple(a * k for a in self.exponents))

    def inverse(self) -> "LinearCharacter":
        return self**-1

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def as_module(self) -> RPModule:
        mats = tuple(self.ring.zeta_power(e).reshape(1, 1, -1) for e in self.exponents)
        return RPModule(self.ring, self.group, mats, size=1)

    def table(self) -> str:
        return " ".join(
            f"{name}:z^{e}" for name, e in zip(self.group.gen_names, self.exponents)
        )


def trivial_character(ring: CoefficientRing, group: PGroup) -> LinearCharacter:
    return LinearCharacter(group, ring, tuple(0 for _ in group.generators))


def sign_character(ring: CoefficientRing, group: PGroup) -> LinearCharacter:
    """O^-: every generator acts by -1 (requires p = 2)."""
    q = ring.root_order
    if ring.p != 2 or q < 2:
        raise ValueError("sign character needs p = 2 and -1 among the roots of unity")
    return LinearCharacter(group, ring, tuple(q // 2 for _ in group.generators))


def character_of(module: RPModule) -> LinearCharacter:
    """The character afforded by a 1-dimensional module."""
    if module.dim != 1:
        raise ValueError("character_of expects a 1-dimensional module")
    exps = []
    for a in module.gens:
        e = module.ring.match_root_of_unity(a[0, 0])
        if e is None:
            raise DeterminantNotRootOfUnity("action is not a root of unity")
        exps.append(e)
    return LinearCharacter(module.group, module.ring, tuple(exps))


def determinant(lattice: RPModule, x: int) -> np.ndarray:
    """det(x, L) as a ring array."""
    return linalg.det(lattice.ring, lattice.matrix(x))


def determinant_character(lattice: RPModule) -> LinearCharacter:
    ring = lattice.ring
    if not isinstance(ring, TruncatedDVR):
        raise TypeError("determinants are only defined for lattices over O")
    exps = []
    for name, a in zip(lattice.group.gen_names, lattice.gens):
        e = ring.match_root_of_unity(linalg.det(ring, a))
        if e is None:
            raise DeterminantNotRootOfUnity(f"det of generator {name} is not a power of zeta")
        exps.append(e)
    return LinearCharacter(lattice.group, ring, tuple(exps))


def twist_by_character(module: RPModule, chi: LinearCharacter) -> RPModule:
    if chi.ring != module.ring:
        raise RingMismatch("character and module over different rings")
    if chi.group_name != module.group.name:
        raise GroupMismatch("character and module over different groups")
    ring = module.ring
    mats = tuple(ring.mul(a, ring.zeta_power(e)) for a, e in zip(module.gens, chi.exponents))
    return RPModule(ring, module.group, mats)


def is_lattice_ring(ring: CoefficientRing) -> bool:
    return isinstance(ring, TruncatedDVR)


def is_field_ring(ring: CoefficientRing) -> bool:
    return isinstance(ring, PrimeField)


def coset_count(group: PGroup, subgroup) -> int:
    return len(left_cosets(group, subgroup))
