"""Overflow-safe int64 arithmetic modulo m < 2**61.

Products are split into limbs whenever a plain int64 product could overflow.
"""

from __future__ import annotations

import numpy as np

_LIMIT_BITS = 62


def mulmod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Elementwise ``a * b % m`` for arrays with entries in ``[0, m)``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if m < (1 << 31):
        return (a * b) % m
    bits = m.bit_length()
    s = _LIMIT_BITS - bits
    if s < 1:
        raise OverflowError(f"modulus {m} too large for int64 arithmetic")
    nlimbs = -(-bits // s)
    mask = (1 << s) - 1
    acc = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for limb in reversed(range(nlimbs)):
        acc = (acc << s) % m
        acc = (acc + a * ((b >> (limb * s)) & mask)) % m
    return acc


def matmul_mod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """``a @ b % m`` for 2-D int64 arrays with entries in ``[0, m)``."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bits = m.bit_length()
    kbits = (k + 1).bit_length()
    if 2 * bits + kbits <= _LIMIT_BITS:
        return (a @ b) % m
    s = _LIMIT_BITS - bits - kbits
    if s < 1:
        out = (a.astype(object) @ b.astype(object)) % m
        return out.astype(np.int64)
    nlimbs = -(-bits // s)
    mask = (1 << s) - 1
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for limb in reversed(range(nlimbs)):
        acc = (acc << s) % m
        acc = (acc + a @ ((b >> (limb * s)) & mask)) % m
    return acc
