"""Brute-force decomposition of tiny modules over GF(p).

Every submodule of a module of dimension d <= 6 is enumerated as an explicit
set of vectors.  A direct sum decomposition M = U + W is the same thing as a
pair of submodules with U & W = 0 and |U||W| = |M|, i.e. an idempotent of
End(M); splitting along such pairs until none exist gives the indecomposable
summands.  Nothing here uses the linear-algebra machinery of ``structure``.
"""

from __future__ import annotations

import numpy as np

from .rpmod import RPModule

MAX_DIM = 6


def _encode(v, p: int) -> int:
    out = 0
    for c in reversed(v):
        out = out * p + int(c)
    return out


def _decode(x: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(x % p)
        x //= p
    return out


class _Space:
    def __init__(self, gens: list[np.ndarray], p: int, d: int):
        self.p, self.d = p, d
        self.size = p**d
        vecs = [_decode(x, p, d) for x in range(self.size)]
        arr = np.array(vecs, dtype=np.int64).reshape(self.size, d)
        self.images = [[_encode(row, p) for row in (arr @ g.T) % p] for g in gens]
        weights = p ** np.arange(d, dtype=np.int64)
        sums = (arr[:, None, :] + arr[None, :, :]) % p
        self.sum = (sums @ weights).tolist()
        self.mult = [((arr * c) % p @ weights).tolist() for c in range(p)]

    def closure(self, base: frozenset, v: int) -> frozenset:
        """Smallest submodule containing ``base`` and ``v``."""
        s = set(base)
        todo = [v]
        while todo:
            w = todo.pop()
            if w in s:
                continue
            multiples = [self.mult[c][w] for c in range(1, self.p)]
            new = {self.sum[a][m] for a in s for m in multiples}
            new.difference_update(s)
            s.update(new)
            for u in new:
                for img in self.images:
                    if img[u] not in s:
                        todo.append(img[u])
        return frozenset(s)

    def submodules(self) -> list[frozenset]:
        zero = frozenset([0])
        found = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for s in frontier:
                for v in range(self.size):
                    if v in s:
                        continue
                    t = self.closure(s, v)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        return sorted(found, key=len)


def _split(u: frozenset, subs: list[frozenset]) -> list[frozenset]:
    inside = [v for v in subs if 1 < len(v) < len(u) and v <= u]
    for v in inside:
        need = len(u) // len(v)
        for w in inside:
            if len(w) == need and len(v & w) == 1:
                return _split(v, subs) + _split(w, subs)
    return [u]


def brute_force_summands(m: RPModule) -> list[tuple[int, int]]:
    """(dim, dim of P-fixed points) of each indecomposable summand, sorted.

    Only for modules over GF(p) of dimension at most ``MAX_DIM``.
    """
    ring = m.ring
    p, d = ring.p, m.dim
    if ring.deg != 1 or ring.modulus != p:
        raise TypeError("brute force decomposition needs a module over GF(p)")
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} is too large for exhaustive search")
    if d == 0:
        return []
    gens = [np.asarray(a[..., 0]) % p for a in m.gens]
    space = _Space(gens, p, d)
    subs = space.submodules()
    full = subs[-1]
    out = []
    for part in _split(full, subs):
        fixed = [x for x in part if all(img[x] == x for img in space.images)]
        out.append((_log(len(part), p), _log(len(fixed), p)))
    return sorted(out)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def summand_invariants(m: RPModule) -> tuple[int, int]:
    """(dim, dim of fixed points) of a module, by rank computation."""
    from . import linalg

    ring = m.ring
    d = m.dim
    if not m.gens:
        return d, d
    ident = ring.identity(d)
    stacked = np.concatenate([ring.residue(ring.sub(a, ident)) for a in m.gens], axis=0)
    return d, d - linalg.rank_mod_p(stacked, ring.p)
