"""Small finite p-groups stored by multiplication table.

Elements are indices ``0 .. order-1`` with the identity at 0, numbered in
breadth-first order from the generators.  Subgroups are sorted tuples of
element indices.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Hashable, Optional, Sequence

import numpy as np

from .coeffring import is_prime


def _prime_power(n: int) -> Optional[tuple[int, int]]:
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            break
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return (p, a) if n == 1 else None


@dataclass(eq=False)
class PGroup:
    name: str
    p: int
    table: np.ndarray
    generators: tuple[int, ...]
    gen_names: tuple[str, ...]
    labels: tuple = ()
    parent: Optional["PGroup"] = None
    parent_indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        order = self.table.shape[0]
        if self.table.shape != (order, order):
            raise ValueError("multiplication table must be square")
        if not np.array_equal(self.table[0], np.arange(order)) or not np.array_equal(
            self.table[:, 0], np.arange(order)
        ):
            raise ValueError("element 0 must be the identity")
        if _prime_power(order) is None and order != 1:
            raise ValueError(f"order {order} is not a prime power")
        if order > 1 and _prime_power(order)[0] != self.p:
            raise ValueError(f"order {order} is not a power of {self.p}")

    # ------------------------------------------------------------------
    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            inv[a] = int(np.nonzero(self.table[a] == 0)[0][0])
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.ones(self.order, dtype=np.int64)
        for a in range(1, self.order):
            x, k = a, 1
            while x != 0:
                x = self.mul(x, a)
                k += 1
            out[a] = k
        return out

    @property
    def exponent(self) -> int:
        return int(self.element_orders.max()) if self.order > 1 else 1

    @property
    def exponent_log(self) -> int:
        """n with exp(P) = p^n."""
        e, n = self.exponent, 0
        while e > 1:
            e //= self.p
            n += 1
        return n

    @cached_property
    def bfs_tree(self) -> list[tuple[int, int]]:
        """(parent, generator position) for each element; identity maps to (-1, -1)."""
        tree: list[Optional[tuple[int, int]]] = [None] * self.order
        tree[0] = (-1, -1)
        queue = deque([0])
        while queue:
            h = queue.popleft()
            for gi, g in enumerate(self.generators):
                x = self.mul(h, g)
                if tree[x] is None:
                    tree[x] = (h, gi)
                    queue.append(x)
        if any(t is None for t in tree):
            raise ValueError(f"generators do not generate {self.name}")
        return tree  # type: ignore[return-value]

    @cached_property
    def bfs_order(self) -> list[int]:
        """Elements ordered so each parent precedes its children."""
        seen = [0]
        children: dict[int, list[int]] = {}
        for x, (par, _) in enumerate(self.bfs_tree):
            if par >= 0:
                children.setdefault(par, []).append(x)
        queue = deque([0])
        out = []
        while queue:
            h = queue.popleft()
            out.append(h)
            for c in children.get(h, []):
                queue.append(c)
        del seen
        return out

    def word(self, x: int) -> list[int]:
        """Generator positions whose product (left to right) is x."""
        out = []
        while x != 0:
            par, gi = self.bfs_tree[x]
            out.append(gi)
            x = par
        return out[::-1]

    def word_str(self, x: int) -> str:
        w = self.word(x)
        return "*".join(self.gen_names[g] for g in w) if w else "1"

    def closure(self, elems: Sequence[int]) -> tuple[int, ...]:
        """Subgroup generated by elems, as a sorted tuple."""
        sub = {0}
        frontier = [0]
        gens = [int(e) for e in elems]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    x = self.mul(h, g)
                    if x not in sub:
                        sub.add(x)
                        nxt.append(x)
            frontier = nxt
        return tuple(sorted(sub))

    def conjugate_set(self, elems: Sequence[int], g: int) -> tuple[int, ...]:
        gi = int(self.inverse[g])
        return tuple(sorted(self.mul(self.mul(g, x), gi) for x in elems))

    @cached_property
    def commutator_subgroup(self) -> tuple[int, ...]:
        comms = set()
        inv = self.inverse
        for a in range(self.order):
            for b in range(self.order):
                comms.add(self.mul(self.mul(a, b), self.mul(int(inv[a]), int(inv[b]))))
        return self.closure(sorted(comms))

    @property
    def abelianization_order(self) -> int:
        return self.order // len(self.commutator_subgroup)

    def is_cyclic(self) -> bool:
        return self.exponent == self.order

    def __repr__(self) -> str:
        return f"PGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class SubgroupClass:
    representative: tuple[int, ...]
    conjugates: tuple[tuple[int, ...], ...]
    index_in_P: int
    label: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.representative)

    def __contains__(self, subgroup: Sequence[int]) -> bool:
        return tuple(sorted(subgroup)) in self.conjugates


# ----------------------------------------------------------------------
# construction


def from_closure(
    name: str,
    p: int,
    gens: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    gen_names: Sequence[str],
) -> PGroup:
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            x = mul(h, g)
            if x not in index:
                index[x] = len(elements)
                elements.append(x)
                queue.append(x)
    order = len(elements)
    table = np.empty((order, order), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    group = PGroup(
        name=name,
        p=p,
        table=table,
        generators=tuple(index[g] for g in gens),
        gen_names=tuple(gen_names),
        labels=tuple(elements),
    )
    group.bfs_tree  # generation check
    return group


def cyclic(n: int) -> PGroup:
    pp = _prime_power(n)
    if pp is None:
        raise ValueError(f"cyclic({n}): not a prime power")
    return from_closure(f"C{n}", pp[0], [1], lambda a, b: (a + b) % n, 0, ["a"])


def elementary_abelian(p: int, rank: int) -> PGroup:
    if not is_prime(p) or rank < 1:
        raise ValueError("elementary_abelian needs a prime and rank >= 1")
    gens = [tuple(int(i == j) for i in range(rank)) for j in range(rank)]
    mul = lambda a, b: tuple((x + y) % p for x, y in zip(a, b))  # noqa: E731
    name = "x".join([f"C{p}"] * rank)
    return from_closure(name, p, gens, mul, tuple([0] * rank), [f"e{j + 1}" for j in range(rank)])


def dihedral(n: int) -> PGroup:
    """Dihedral group of order n = 2^a, a >= 3."""
    pp = _prime_power(n)
    if pp is None or pp[0] != 2 or pp[1] < 3:
        raise ValueError("dihedral(n) needs n = 2^a with a >= 3")
    half = n // 2

    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % half, (x[1] + y[1]) % 2)

    return from_closure(f"D{n}", 2, [(1, 0), (0, 1)], mul, (0, 0), ["r", "s"])


def semidihedral(n: int) -> PGroup:
    """Semidihedral group of order n = 2^a, a >= 4: s r s = r^(half/2 - 1)."""
    pp = _prime_power(n)
    if pp is None or pp[0] != 2 or pp[1] < 4:
        raise ValueError("semidihedral(n) needs n = 2^a with a >= 4")
    half = n // 2
    t = half // 2 - 1

    def mul(x, y):
        return ((x[0] + pow(t, x[1], half) * y[0]) % half, (x[1] + y[1]) % 2)

    return from_closure(f"SD{n}", 2, [(1, 0), (0, 1)], mul, (0, 0), ["r", "s"])


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quaternion(n: int = 8) -> PGroup:
    if n != 8:
        raise ValueError("only the quaternion group of order 8 is in the catalog")
    return from_closure("Q8", 2, [(0, 1, 0, 0), (0, 0, 1, 0)], _qmul, (1, 0, 0, 0), ["i", "j"])


def direct_product(g: PGroup, h: PGroup) -> PGroup:
    if g.p != h.p:
        raise ValueError("direct product of groups for different primes")
    gens = [(x, 0) for x in g.generators] + [(0, y) for y in h.generators]

    def mul(a, b):
        return (int(g.table[a[0], b[0]]), int(h.table[a[1], b[1]]))

    names = [f"{n}1" for n in g.gen_names] + [f"{n}2" for n in h.gen_names]
    return from_closure(f"{g.name}x{h.name}", g.p, gens, mul, (0, 0), names)


CATALOG = ("C2", "C4", "C8", "C2xC2", "C2xC4", "D8", "Q8", "C3", "C9", "C3xC3")

_TOKEN = re.compile(r"^(C|D|Q|SD)(\d+)$")


@lru_cache(maxsize=None)
def build_group(spec: str) -> PGroup:
    """Build a group from a catalog spec string such as ``C2xC4`` or ``Q8``."""
    spec = spec.strip()
    parts = spec.split("x")
    if len(parts) > 1:
        group = build_group(parts[0])
        for part in parts[1:]:
            group = direct_product(group, build_group(part))
        group.name = spec
        return group
    m = _TOKEN.match(spec)
    if not m:
        raise ValueError(f"malformed group spec {spec!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic(num)
    if kind == "D":
        return dihedral(num)
    if kind == "Q":
        return quaternion(num)
    return semidihedral(num)


# ----------------------------------------------------------------------
# subgroups


def _all_subgroups(group: PGroup) -> set[tuple[int, ...]]:
    subs = set()
    for a, b in combinations_with_replacement(range(group.order), 2):
        subs.add(group.closure([a, b]))
    return subs


@lru_cache(maxsize=None)
def _subgroup_classes_cached(group: PGroup) -> tuple[SubgroupClass, ...]:
    subs = _all_subgroups(group)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for s in subs:
        if s in seen:
            continue
        conj = sorted({group.conjugate_set(s, g) for g in range(group.order)})
        seen.update(conj)
        classes.append(
            SubgroupClass(
                representative=conj[0],
                conjugates=tuple(conj),
                index_in_P=group.order // len(s),
            )
        )
    classes.sort(key=lambda c: (c.order, c.representative))
    out = []
    for i, c in enumerate(classes):
        gens = _minimal_generators(group, c.representative)
        lbl = "<" + ",".join(group.word_str(g) for g in gens) + ">" if gens else "1"
        out.append(SubgroupClass(c.representative, c.conjugates, c.index_in_P, lbl))
    return tuple(out)


def subgroup_classes(group: PGroup) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups sorted by order then representative."""
    return list(_subgroup_classes_cached(group))


def full_subgroup(group: PGroup) -> SubgroupClass:
    return subgroup_classes(group)[-1]


def trivial_subgroup(group: PGroup) -> SubgroupClass:
    return subgroup_classes(group)[0]


def class_of(group: PGroup, subgroup: Sequence[int]) -> SubgroupClass:
    key = tuple(sorted(int(x) for x in subgroup))
    for c in subgroup_classes(group):
        if key in c.conjugates:
            return c
    raise ValueError("not a subgroup")


def cyclic_subgroup(group: PGroup, g: int) -> SubgroupClass:
    return class_of(group, group.closure([g]))


def maximal_subgroup_classes(group: PGroup) -> list[SubgroupClass]:
    return [c for c in subgroup_classes(group) if c.index_in_P == group.p]


def _minimal_generators(group: PGroup, elems: Sequence[int]) -> list[int]:
    target = set(elems)
    order_key = sorted(elems, key=lambda x: (-int(group.element_orders[x]), x))
    gens: list[int] = []
    current = set(group.closure(gens))
    for x in order_key:
        if current == target:
            break
        if x not in current:
            gens.append(x)
            current = set(group.closure(gens))
    return gens


@lru_cache(maxsize=None)
def _subgroup_as_group(group: PGroup, elems: tuple[int, ...]) -> PGroup:
    index = {x: i for i, x in enumerate(elems)}
    table = np.array([[index[group.mul(a, b)] for b in elems] for a in elems], dtype=np.int64)
    gens = _minimal_generators(group, elems)
    sub = PGroup(
        name=f"{group.name}>" + ("<" + ",".join(group.word_str(g) for g in gens) + ">" if gens else "1"),
        p=group.p,
        table=table,
        generators=tuple(index[g] for g in gens),
        gen_names=tuple(group.word_str(g) for g in gens),
        labels=tuple(group.labels[x] for x in elems) if group.labels else (),
        parent=group,
        parent_indices=elems,
    )
    return sub


def subgroup_as_group(group: PGroup, subgroup: Sequence[int] | SubgroupClass) -> PGroup:
    if isinstance(subgroup, SubgroupClass):
        subgroup = subgroup.representative
    return _subgroup_as_group(group, tuple(sorted(int(x) for x in subgroup)))


def left_cosets(group: PGroup, subgroup: Sequence[int] | SubgroupClass) -> list[tuple[int, ...]]:
    if isinstance(subgroup, SubgroupClass):
        subgroup = subgroup.representative
    seen: set[int] = set()
    cosets = []
    for g in range(group.order):
        if g in seen:
            continue
        c = tuple(sorted(group.mul(g, q) for q in subgroup))
        seen.update(c)
        cosets.append(c)
    return cosets


def coset_action(group: PGroup, subgroup: Sequence[int] | SubgroupClass) -> list[np.ndarray]:
    """Permutation of left cosets induced by each group generator.

    ``perm[j]`` is the index of the coset ``g * coset_j``.
    """
    return [coset_permutation(group, subgroup, g) for g in group.generators]


def coset_permutation(group: PGroup, subgroup, x: int) -> np.ndarray:
    cosets = left_cosets(group, subgroup)
    where = {}
    for i, c in enumerate(cosets):
        for y in c:
            where[y] = i
    return np.array([where[group.mul(x, c[0])] for c in cosets], dtype=np.int64)
