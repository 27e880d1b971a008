"""Projective covers, Heller translates and relative syzygies."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .coeffring import CoefficientRing
from .errors import BoundExceeded, PrecisionFailure
from .pgroup import PGroup, left_cosets
from .rpmod import RPModule, direct_sum_all, dual, regular_module, trivial_module, zero_module

log = logging.getLogger(__name__)

DEFAULT_OMEGA_BOUND = 4


@dataclass
class ProjectiveCover:
    """Minimal free cover (RP)^rank -> M.

    ``surjection`` has shape (dim M, rank*|P|): column ``i*|P| + x`` is the
    image of the basis element x of the i-th copy of RP.  ``inclusion`` holds
    a basis of the kernel as columns, and ``kernel`` is the module on it.
    """

    rank: int
    surjection: np.ndarray
    free: RPModule
    inclusion: np.ndarray
    kernel: RPModule


def radical_rank(m: RPModule) -> int:
    """dim of rad(kP) M-bar, where rad(kP) is spanned over kP by g - 1 for generators g."""
    ring = m.ring
    d = m.dim
    if not m.gens:
        return 0
    ident = ring.identity(d)
    cols = np.concatenate([ring.residue(ring.sub(a, ident)) for a in m.gens], axis=1)
    return linalg.rank_mod_p(cols, ring.p)


def projective_cover(m: RPModule) -> ProjectiveCover:
    ring, group = m.ring, m.group
    d, order = m.dim, group.order
    ident = ring.identity(d)
    if m.gens:
        rad = np.concatenate([ring.residue(ring.sub(a, ident)) for a in m.gens], axis=1)
    else:
        rad = np.zeros((d, 0), dtype=np.int64)
    aug = np.concatenate([rad, np.eye(d, dtype=np.int64)], axis=1)
    _, piv = linalg.rref_mod_p(aug, ring.p)
    tops = [c - rad.shape[1] for c in piv if c >= rad.shape[1]]
    r = len(tops)
    surj = ring.zeros((d, r * order))
    for i, j in enumerate(tops):
        for x in range(order):
            surj[:, i * order + x] = m.matrix(x)[:, j]
    free = direct_sum_all([regular_module(ring, group)] * r) if r else zero_module(ring, group)
    el = linalg.eliminate(ring, surj)
    if el.rank != d or any(el.valuations):
        raise PrecisionFailure("cover map is not onto at the working precision")
    v = el.col_transform
    inc = v[:, d:].copy()
    vinv = linalg.inverse(ring, v)
    mats = []
    for a in free.gens:
        img = ring.matmul(vinv, ring.matmul(a, inc))
        if not ring.is_zero(img[:d]).all():
            raise PrecisionFailure("kernel of the cover is not stable")
        mats.append(img[d:])
    kernel = RPModule(ring, group, tuple(mats), size=r * order - d)
    if kernel.dim != r * order - d:
        raise PrecisionFailure("kernel rank differs from r|P| - dim M")
    return ProjectiveCover(r, surj, free, inc, kernel)


def syzygy(m: RPModule) -> RPModule:
    return projective_cover(m).kernel


def cosyzygy(m: RPModule) -> RPModule:
    return dual(syzygy(dual(m)))


def _strip_free(m: RPModule, step: int) -> RPModule:
    from .structure import split_free

    fs = split_free(m)
    if fs.rank:
        log.warning("non-minimal cover at step %d: removed %d free summands", step, fs.rank)
        return fs.complement
    return m


@lru_cache(maxsize=256)
def omega_power(ring: CoefficientRing, group: PGroup, m: int, bound: int = DEFAULT_OMEGA_BOUND) -> RPModule:
    """Omega^m of the trivial module, m of either sign."""
    if abs(m) > bound:
        raise BoundExceeded(f"|m| = {abs(m)} exceeds the configured bound {bound}")
    if m == 0:
        return trivial_module(ring, group)
    step = syzygy if m > 0 else cosyzygy
    prev = omega_power(ring, group, m - 1 if m > 0 else m + 1, bound)
    return _strip_free(step(prev), m)


def relative_syzygy(ring: CoefficientRing, group: PGroup, subgroup=None) -> RPModule:
    """Kernel of the augmentation R[P/Q] -> R in the basis e_i - e_0."""
    if subgroup is None:
        subgroup = (0,)
    cosets = left_cosets(group, subgroup)
    n = len(cosets)
    if n == 1:
        return zero_module(ring, group)
    where = {}
    for i, c in enumerate(cosets):
        for y in c:
            where[y] = i
    mats = []
    for g in group.generators:
        perm = [where[group.mul(g, c[0])] for c in cosets]
        a = np.zeros((n - 1, n - 1), dtype=np.int64)
        # g(e_i - e_0) = (e_{g i} - e_0) - (e_{g 0} - e_0)
        for i in range(1, n):
            if perm[i]:
                a[perm[i] - 1, i - 1] += 1
            if perm[0]:
                a[perm[0] - 1, i - 1] -= 1
        mats.append(ring.from_ints(a))
    return RPModule(ring, group, tuple(mats), size=n - 1)


def omega_one(ring: CoefficientRing, group: PGroup) -> RPModule:
    """Omega^1 of the trivial module, the augmentation ideal."""
    return omega_power(ring, group, 1)
