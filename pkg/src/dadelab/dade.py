"""Dade group classes, the reduction map, determinant-one lifts and sections."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .coeffring import CoefficientRing, PrimeField, TruncatedDVR, build_ring, prime_field
from .errors import (
    InsufficientRoots,
    InternalInvariantViolation,
    NonInvertibleDimension,
    NotALift,
    NotCapped,
    NotEndoPermutation,
    NotStronglyCapped,
    RingMismatch,
)
from .heller import omega_power, relative_syzygy
from .pgroup import PGroup, SubgroupClass, maximal_subgroup_classes, subgroup_classes
from .rpmod import (
    LinearCharacter,
    RPModule,
    determinant_character,
    dual,
    reduce_mod_p,
    tensor,
    trivial_module,
    twist_by_character,
)
from . import structure as st

DEFAULT_ORDER_BOUND = 8


@dataclass(frozen=True, eq=False)
class DadeElement:
    """Class [M] in the Dade group, represented by its cap."""

    cap: RPModule
    label: str = ""

    @property
    def ring(self) -> CoefficientRing:
        return self.cap.ring

    @property
    def group(self) -> PGroup:
        return self.cap.group

    @property
    def dim(self) -> int:
        return self.cap.dim

    def __repr__(self) -> str:
        name = self.label or f"dim {self.dim}"
        return f"[{name}] over {self.ring.header()} for {self.group.name}"


@dataclass(frozen=True)
class Unresolved:
    """No power up to ``bound`` was found to be the identity."""

    bound: int

    def __str__(self) -> str:
        return f"Unresolved({self.bound})"


def element_of(m: RPModule, seed: int = st.DEFAULT_SEED, check: bool = True, label: str = "") -> DadeElement:
    """The class of a strongly capped endo-permutation module."""
    if check and not st.is_endo_permutation(m, seed):
        raise NotEndoPermutation("End(M) is not a permutation module")
    try:
        c, mult = st.cap(m, seed)
    except NotCapped as exc:
        raise NotStronglyCapped(str(exc)) from None
    if mult != 1:
        raise NotStronglyCapped(f"cap occurs with multiplicity {mult}")
    return DadeElement(c, label)


def identity(ring: CoefficientRing, group: PGroup) -> DadeElement:
    return DadeElement(trivial_module(ring, group), "1")


def _same(a: DadeElement, b: DadeElement) -> None:
    if a.ring != b.ring:
        raise RingMismatch("classes over different rings")
    if a.group is not b.group:
        raise RingMismatch("classes over different groups")


def mul(a: DadeElement, b: DadeElement, seed: int = st.DEFAULT_SEED) -> DadeElement:
    _same(a, b)
    if a.dim == 1 or b.dim == 1:
        # tensoring with a 1-dimensional module keeps indecomposability and vertex
        return DadeElement(tensor(a.cap, b.cap))
    try:
        c, _ = st.cap(tensor(a.cap, b.cap), seed, known_capped=True)
    except NotCapped as exc:
        raise InternalInvariantViolation(f"product of classes is not capped: {exc}") from None
    return DadeElement(c)


def inverse(a: DadeElement) -> DadeElement:
    return DadeElement(dual(a.cap))


def is_identity(a: DadeElement) -> bool:
    if a.dim != 1:
        return False
    return all(np.array_equal(g, a.ring.identity(1)) for g in a.cap.gens)


def equal(a: DadeElement, b: DadeElement, seed: int = st.DEFAULT_SEED) -> bool:
    _same(a, b)
    return st.is_isomorphic(a.cap, b.cap, seed)


def power(a: DadeElement, j: int, seed: int = st.DEFAULT_SEED) -> DadeElement:
    if j < 0:
        return power(inverse(a), -j, seed)
    out = identity(a.ring, a.group)
    for _ in range(j):
        out = mul(out, a, seed)
    return out


def order(a: DadeElement, bound: int = DEFAULT_ORDER_BOUND, seed: int = st.DEFAULT_SEED) -> Union[int, Unresolved]:
    if bound < 1:
        raise ValueError("bound must be positive")
    x = a
    for j in range(1, bound + 1):
        if is_identity(x):
            return j
        if j < bound:
            x = mul(x, a, seed)
    return Unresolved(bound)


# ----------------------------------------------------------------------
# X(P)


@dataclass
class CharacterGroup:
    group: PGroup
    ring: TruncatedDVR
    elements: list[LinearCharacter]
    table: np.ndarray  # table[i, j] = index of elements[i] * elements[j]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, chi: LinearCharacter) -> Optional[int]:
        for i, e in enumerate(self.elements):
            if e.exponents == chi.exponents:
                return i
        return None


def character_group(group: PGroup, ring: TruncatedDVR) -> CharacterGroup:
    if not isinstance(ring, TruncatedDVR):
        raise TypeError("characters are taken with values in O")
    if ring.p != group.p or ring.root_order < group.exponent:
        raise InsufficientRoots(
            f"{ring.header()} has no primitive root of unity of order {group.exponent}"
        )
    q = ring.root_order
    elements = []
    for exps in itertools.product(range(q), repeat=len(group.generators)):
        chi = LinearCharacter(group, ring, exps)
        if chi.is_homomorphism():
            elements.append(chi)
    keys = {e.exponents: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            prod = (a * b).exponents
            if prod not in keys:
                raise InternalInvariantViolation("characters are not closed under products")
            table[i, j] = keys[prod]
    if n != group.abelianization_order:
        raise InternalInvariantViolation(
            f"found {n} characters, abelianization has order {group.abelianization_order}"
        )
    return CharacterGroup(group, ring, elements, table)


# ----------------------------------------------------------------------
# reduction and determinant-one lifts


def reduce_class(a: DadeElement, seed: int = st.DEFAULT_SEED) -> DadeElement:
    if not isinstance(a.ring, TruncatedDVR):
        raise TypeError("reduce_class expects a class over O")
    red = reduce_mod_p(a.cap)
    if red.dim == 1:
        return DadeElement(red, a.label)
    c, _ = st.cap(red, seed, known_capped=True)
    return DadeElement(c, a.label)


def determinant_one_lift(m: RPModule, lift: RPModule, seed: int = st.DEFAULT_SEED) -> RPModule:
    """Phi_M: the twist of the lift ``lift`` of M with trivial determinant."""
    ring = lift.ring
    if not isinstance(ring, TruncatedDVR):
        raise TypeError("the lift must be a lattice over O")
    if st.find_isomorphism(reduce_mod_p(lift), m, seed) is None:
        raise NotALift("the reduction of the lattice is not isomorphic to M")
    d = m.dim
    if np.gcd(d, ring.p) != 1:
        raise NonInvertibleDimension(f"dim {d} is divisible by p = {ring.p}")
    q = ring.root_order
    delta = determinant_character(lift)
    t = pow(d, -1, q)
    chi = delta ** (-t)
    out = twist_by_character(lift, chi)
    if not determinant_character(out).is_trivial():
        raise InternalInvariantViolation("twisted lift has nontrivial determinant")
    return out


# ----------------------------------------------------------------------
# configured generators


@dataclass
class Generator:
    """A configured k-class with the native O-lattice lifting it."""

    name: str
    module: RPModule
    lift: RPModule

    def element(self, seed: int = st.DEFAULT_SEED) -> DadeElement:
        return element_of(self.module, seed, check=False, label=self.name)


def rings_for(group: PGroup, precision: int) -> tuple[PrimeField, TruncatedDVR]:
    """GF(p) and the truncated DVR containing the exp(P)-th roots of unity."""
    return prime_field(group.p), build_ring(group.p, group.exponent_log, precision)


def _rel_name(q: SubgroupClass) -> str:
    return "omega_rel" + q.label.replace("*", "").replace(",", "_").replace("<", "_").replace(">", "")


def generator_subgroups(group: PGroup) -> list[SubgroupClass]:
    """Subgroups Q for the configured relative syzygies Omega^1_{P/Q}."""
    classes = subgroup_classes(group)
    if group.is_cyclic():
        return []
    if group.name in ("D8", "Q8"):
        return maximal_subgroup_classes(group)
    return [q for q in classes[1:-1]]


def configured_generators(group: PGroup, precision: int = 16) -> list[Generator]:
    k, o = rings_for(group, precision)
    gens = [Generator("omega", omega_power(k, group, 1), omega_power(o, group, 1))]
    for q in generator_subgroups(group):
        gens.append(Generator(_rel_name(q), relative_syzygy(k, group, q), relative_syzygy(o, group, q)))
    return gens


def find_generator(group: PGroup, name: str, precision: int = 16) -> Generator:
    gens = configured_generators(group, precision)
    for g in gens:
        if g.name == name:
            return g
    raise KeyError(f"unknown generator {name!r}; configured: {', '.join(g.name for g in gens)}")


# ----------------------------------------------------------------------
# section verification


@dataclass
class SectionEntry:
    generator: str
    check: str
    status: str  # pass | fail | unresolved
    detail: str


@dataclass
class SectionReport:
    group: str
    entries: list[SectionEntry] = field(default_factory=list)
    limitation: str = (
        "checks cover the configured generators only; "
        "completeness of this generating set is not certified"
    )

    @property
    def passed(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "passed": self.passed,
            "limitation": self.limitation,
            "entries": [e.__dict__ for e in self.entries],
        }


Word = Sequence[tuple[int, int]]


def _evaluate(word: Word, elems: list[DadeElement], seed: int) -> DadeElement:
    out = identity(elems[0].ring, elems[0].group)
    for i, e in word:
        out = mul(out, power(elems[i], e, seed), seed)
    return out


def section_on_generators(
    group: PGroup,
    generators: Sequence[Generator],
    relations: Sequence[Word] = (),
    bound: int = DEFAULT_ORDER_BOUND,
    seed: int = st.DEFAULT_SEED,
) -> SectionReport:
    """Check that Phi-lifts of the generators reduce correctly and keep orders."""
    report = SectionReport(group.name)
    kel, oel = [], []
    for g in generators:
        a = g.element(seed)
        phi = determinant_one_lift(g.module, g.lift, seed)
        s = element_of(phi, seed, check=False, label=f"Phi({g.name})")
        kel.append(a)
        oel.append(s)
        red = reduce_class(s, seed)
        ok = equal(red, a, seed)
        report.entries.append(
            SectionEntry(g.name, "reduction", "pass" if ok else "fail", f"dim Phi = {phi.dim}, dim cap = {a.dim}")
        )
        ok_k = order(a, bound, seed)
        ok_o = order(s, bound, seed)
        if isinstance(ok_k, Unresolved):
            status = "unresolved" if isinstance(ok_o, Unresolved) else "fail"
        else:
            status = "pass" if ok_o == ok_k else "fail"
        report.entries.append(SectionEntry(g.name, "order", status, f"order over k = {ok_k}, over O = {ok_o}"))
    for w in relations:
        wk = _evaluate(w, kel, seed)
        text = " ".join(f"{generators[i].name}^{e}" for i, e in w)
        if not is_identity(wk):
            report.entries.append(SectionEntry(text, "relation", "unresolved", "word is not trivial over k"))
            continue
        wo = _evaluate(w, oel, seed)
        ok = is_identity(wo)
        report.entries.append(SectionEntry(text, "relation", "pass" if ok else "fail", f"dim over O = {wo.dim}"))
    return report


def phi_multiplicativity_check(
    m: RPModule,
    lm: RPModule,
    n: RPModule,
    ln: RPModule,
    seed: int = st.DEFAULT_SEED,
) -> tuple[bool, bool, bool]:
    """(dual compatibility, tensor compatibility, Phi of End is a permutation lattice)."""
    phi_m = determinant_one_lift(m, lm, seed)
    phi_n = determinant_one_lift(n, ln, seed)
    phi_dual = determinant_one_lift(dual(m), dual(lm), seed)
    a = st.is_isomorphic(dual(phi_m), phi_dual, seed)
    phi_mn = determinant_one_lift(tensor(m, n), tensor(lm, ln), seed)
    b = st.is_isomorphic(phi_mn, tensor(phi_m, phi_n), seed)
    phi_end = determinant_one_lift(tensor(m, dual(m)), tensor(lm, dual(lm)), seed)
    c = st.is_permutation_module(phi_end, seed)
    return a, b, c
