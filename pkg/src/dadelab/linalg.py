"""Exact linear algebra over the coefficient rings.

Matrices are int64 arrays of shape ``(rows, cols, deg)``.  Elimination uses
full pivoting on an entry of minimal valuation, so over a truncated DVR it
produces ``U A V = diag(pi^v_1, ..., pi^v_r, 0, ...)``; over GF(p) every pivot
is a unit and this is ordinary Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coeffring import CoefficientRing
from .errors import NonUnit


@dataclass
class Elimination:
    rank: int
    valuations: list[int]
    col_transform: Optional[np.ndarray]  # V, shape (n, n, deg)
    rhs: Optional[np.ndarray]  # U @ b
    pivots: list[np.ndarray]  # pivot values before normalisation
    sign: int


def eliminate(
    ring: CoefficientRing,
    a: np.ndarray,
    rhs: Optional[np.ndarray] = None,
    track_columns: bool = True,
) -> Elimination:
    a = ring.canon(a).copy()
    m, n = a.shape[0], a.shape[1]
    b = None if rhs is None else ring.canon(rhs).copy()
    v_mat = ring.identity(n) if track_columns else None
    cap = ring.valuation_cap
    vals: list[int] = []
    pivots: list[np.ndarray] = []
    sign = 1
    for k in range(min(m, n)):
        sub = a[k:, k:]
        col_units = np.nonzero(ring.residue(sub[:, 0]))[0]
        if col_units.size:
            flat = int(col_units[0]) * sub.shape[1]
            v = 0
        elif (units := ring.residue(sub) != 0).any():
            flat = int(np.argmax(units.ravel()))
            v = 0
        else:
            if ring.is_field:
                break
            sv = ring.valuation(sub)
            flat = int(np.argmin(sv.ravel()))
            v = int(sv.ravel()[flat])
            if v >= cap:
                break
        i, j = divmod(flat, sub.shape[1])
        i += k
        j += k
        if i != k:
            a[[k, i]] = a[[i, k]]
            if b is not None:
                b[[k, i]] = b[[i, k]]
            sign = -sign
        if j != k:
            a[:, [k, j]] = a[:, [j, k]]
            if v_mat is not None:
                v_mat[:, [k, j]] = v_mat[:, [j, k]]
            sign = -sign
        piv = a[k, k].copy()
        pivots.append(piv)
        unit = piv if v == 0 else ring.div_pi_power(piv, v)
        uinv = ring.inv(unit)
        a[k, k:] = ring.mul(a[k, k:], uinv)
        if b is not None:
            b[k] = ring.mul(b[k], uinv)
        # clear column k below the pivot
        colfac = a[k + 1 :, k]
        nz = np.nonzero(~ring.is_zero(colfac))[0]
        if nz.size:
            fac = colfac[nz] if v == 0 else ring.div_pi_power(colfac[nz], v)
            rows = nz + k + 1
            upd = ring.matmul(fac[:, None, :], a[k : k + 1, k:])
            a[rows, k:] = ring.sub(a[rows, k:], upd)
            if b is not None:
                updb = ring.matmul(fac[:, None, :], b[k : k + 1])
                b[rows] = ring.sub(b[rows], updb)
        # clear row k right of the pivot (column operations)
        rowfac = a[k, k + 1 :]
        if rowfac.size and not ring.is_zero(rowfac).all():
            fac = rowfac if v == 0 else ring.div_pi_power(rowfac, v)
            if v_mat is not None:
                upd = ring.matmul(v_mat[:, k : k + 1], fac[None])
                v_mat[:, k + 1 :] = ring.sub(v_mat[:, k + 1 :], upd)
            a[k, k + 1 :] = 0
        vals.append(v)
    return Elimination(len(vals), vals, v_mat, b, pivots, sign)


def kernel(ring: CoefficientRing, a: np.ndarray) -> np.ndarray:
    """Saturated right kernel of ``a`` as columns, shape (n, k, deg).

    Over a truncated DVR these columns are part of a unimodular matrix and
    satisfy ``a @ x == 0`` exactly at the working precision.
    """
    n = a.shape[1]
    if a.shape[0] == 0:
        return ring.identity(n)
    el = eliminate(ring, a)
    return el.col_transform[:, el.rank :].copy()


def solve(ring: CoefficientRing, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution of ``a @ x == b`` (b of shape (m, c, deg)), or None."""
    m, n = a.shape[0], a.shape[1]
    if m == 0:
        return ring.zeros((n, b.shape[1]))
    el = eliminate(ring, a, rhs=b)
    r = el.rank
    rb = el.rhs
    if r < m and not ring.is_zero(rb[r:]).all():
        return None
    y = ring.zeros((n, b.shape[1]))
    for i, v in enumerate(el.valuations):
        row = rb[i]
        if v:
            if (ring.valuation(row) < v).any():
                return None
            row = ring.div_pi_power(row, v)
        y[i] = row
    return ring.matmul(el.col_transform, y)


def inverse(ring: CoefficientRing, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    el = eliminate(ring, a, rhs=ring.identity(n))
    if el.rank < n or any(el.valuations):
        raise NonUnit("matrix is not invertible")
    return ring.matmul(el.col_transform, el.rhs)


def det(ring: CoefficientRing, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if n == 0:
        return ring.scalar(1)
    el = eliminate(ring, a, track_columns=False)
    if el.rank < n:
        return ring.scalar(0)
    out = ring.scalar(el.sign)
    for piv in el.pivots:
        out = ring.mul(out, piv)
    return out


def is_invertible(ring: CoefficientRing, a: np.ndarray) -> bool:
    """Invertible iff the residue matrix is invertible."""
    n = a.shape[0]
    if n == 0:
        return True
    return rank_mod_p(ring.residue(a), ring.p) == n


# ----------------------------------------------------------------------
# plain int matrices over GF(p)


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) and the pivot columns."""
    m = np.asarray(mat, dtype=np.int64) % p
    m = m.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    inv = [0] + [pow(i, -1, p) for i in range(1, p)]
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * inv[int(m[r, c])]) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref_mod_p(mat, p)[1])


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space as columns (int array)."""
    mat = np.asarray(mat, dtype=np.int64)
    cols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_mod_p(mat, p)
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(piv):
            out[pc, k] = (-r[i, f]) % p
    return out


def column_space_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the column space (as columns) chosen from the columns of mat."""
    mat = np.asarray(mat, dtype=np.int64) % p
    if mat.size == 0:
        return mat.reshape(mat.shape[0], 0)
    _, piv = rref_mod_p(mat, p)
    return mat[:, piv]


def solve_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of a x = b over GF(p) (b a matrix), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref_mod_p(aug, p)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def matpow_mod_p(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = np.asarray(a, dtype=np.int64) % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def inverse_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    x = solve_mod_p(a, np.eye(n, dtype=np.int64), p)
    if x is None:
        raise NonUnit("matrix is singular mod p")
    return x


def complete_to_basis(ring: CoefficientRing, cols: np.ndarray) -> np.ndarray:
    """Append standard basis vectors so that the columns become a basis.

    ``cols`` (d, f, deg) must have linearly independent residues.
    """
    d, f = cols.shape[0], cols.shape[1]
    res = ring.residue(cols)
    aug = np.concatenate([res, np.eye(d, dtype=np.int64)], axis=1)
    _, piv = rref_mod_p(aug, ring.p)
    if piv[:f] != list(range(f)):
        raise NonUnit("columns are not independent modulo the maximal ideal")
    extra = [c - f for c in piv[f:]]
    out = ring.zeros((d, d))
    out[:, :f] = cols
    for k, e in enumerate(extra):
        out[e, f + k, 0] = 1
    return out
