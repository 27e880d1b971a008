"""Coefficient rings: the prime field GF(p) and truncated cyclotomic DVRs.

``TruncatedDVR(p, n, N)`` is ``Z[zeta]/(Phi_{p^n}(zeta), p^N)``, a finite chain
ring with uniformizer ``1 - zeta`` (or ``p`` when ``n == 0``) and residue field
GF(p).  Elements are coefficient vectors in the basis ``1, zeta, ...,
zeta^(deg-1)``; arrays of elements are int64 arrays whose last axis has length
``deg``.  ``PrimeField(p)`` uses the same array layout with ``deg == 1``.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Optional

import numpy as np

from ._modarith import matmul_mod, mulmod
from .errors import NonUnit, RingMismatch


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _cyclotomic_prime_power(p: int, n: int) -> list[int]:
    """Coefficients (low degree first) of Phi_{p^n}, with Phi_1 = x - 1."""
    if n == 0:
        return [-1, 1]
    step = p ** (n - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for i in range(p):
        coeffs[i * step] = 1
    return coeffs


class CoefficientRing:
    """Shared machinery for both coefficient rings."""

    p: int
    n: int
    N: int
    deg: int
    modulus: int
    is_field: bool

    def __init__(self, p: int, n: int, N: int, deg: int, modulus: int, reduction: list[list[int]]):
        self.p = p
        self.n = n
        self.N = N
        self.deg = deg
        self.modulus = modulus
        # _lt[s, u, t] = coefficient of zeta^u in zeta^(s+t)
        lt = np.zeros((deg, deg, deg), dtype=np.int64)
        for s in range(deg):
            for t in range(deg):
                lt[s, :, t] = reduction[s + t]
        self._lt = lt
        self._reduction = reduction

    # ------------------------------------------------------------------
    # identity
    def _key(self) -> tuple:
        return (type(self).__name__, self.p, self.n, self.N)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoefficientRing) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def root_order(self) -> int:
        """Order of the distinguished root of unity zeta."""
        return self.p ** self.n

    # ------------------------------------------------------------------
    # array constructors
    def zeros(self, shape: tuple = ()) -> np.ndarray:
        return np.zeros(tuple(shape) + (self.deg,), dtype=np.int64)

    def scalar(self, c: int, shape: tuple = ()) -> np.ndarray:
        out = self.zeros(shape)
        out[..., 0] = c % self.modulus
        return out

    def identity(self, d: int) -> np.ndarray:
        out = self.zeros((d, d))
        out[np.arange(d), np.arange(d), 0] = 1
        return out

    def from_ints(self, arr) -> np.ndarray:
        """Embed an integer array (entries in Z) as constants."""
        arr = np.asarray(arr, dtype=np.int64)
        out = self.zeros(arr.shape)
        out[..., 0] = arr % self.modulus
        return out

    def canon(self, arr) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) % self.modulus

    # ------------------------------------------------------------------
    # arithmetic on arrays of elements
    def add(self, x, y) -> np.ndarray:
        return (np.asarray(x) + np.asarray(y)) % self.modulus

    def sub(self, x, y) -> np.ndarray:
        return (np.asarray(x) - np.asarray(y)) % self.modulus

    def neg(self, x) -> np.ndarray:
        return (-np.asarray(x)) % self.modulus

    def lmat(self, x: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by each element: shape (..., deg, deg)."""
        return np.einsum("...s,sut->...ut", np.asarray(x, dtype=np.int64), self._lt) % self.modulus

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.deg == 1:
            return mulmod(x, y, self.modulus)
        lx = self.lmat(x)
        shape = np.broadcast_shapes(x.shape, y.shape)
        out = np.zeros(shape, dtype=np.int64)
        for t in range(self.deg):
            out = (out + mulmod(lx[..., :, t], y[..., t : t + 1], self.modulus)) % self.modulus
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of matrices over the ring: (r, s, deg) @ (s, c, deg)."""
        r, s = a.shape[0], a.shape[1]
        c = b.shape[1]
        d = self.deg
        if d == 1:
            return matmul_mod(a[..., 0], b[..., 0], self.modulus)[..., None]
        big = self.lmat(a).transpose(0, 2, 1, 3).reshape(r * d, s * d)
        bvec = b.transpose(0, 2, 1).reshape(s * d, c)
        prod = matmul_mod(big, bvec, self.modulus)
        return prod.reshape(r, d, c).transpose(0, 2, 1).copy()

    def residue(self, x) -> np.ndarray:
        """Image in GF(p) as an int array (last axis removed)."""
        return np.asarray(x).sum(axis=-1) % self.p

    def is_unit(self, x) -> np.ndarray:
        return self.residue(x) != 0

    def is_zero(self, x) -> np.ndarray:
        return ~np.asarray(x).any(axis=-1)

    def inv(self, x) -> np.ndarray:
        """Inverse of an array of units."""
        x = self.canon(x)
        r = self.residue(x)
        if np.any(r == 0):
            raise NonUnit("inverse of a non-unit")
        rinv = np.array([0] + [pow(i, -1, self.p) for i in range(1, self.p)], dtype=np.int64)[r]
        y = self.scalar(0, r.shape)
        y[..., 0] = rinv
        if self.is_field:
            return y
        one = self.scalar(1, r.shape)
        two = self.scalar(2, r.shape)
        for _ in range(2 * self.modulus.bit_length() + 4):
            xy = self.mul(x, y)
            if np.array_equal(xy, one):
                return y
            y = self.mul(y, self.sub(two, xy))
        raise NonUnit("Newton inversion did not converge")  # pragma: no cover

    def pow(self, x, e: int) -> np.ndarray:
        x = self.canon(x)
        result = self.scalar(1, x.shape[:-1])
        base = x
        if e < 0:
            base = self.inv(base)
            e = -e
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # ------------------------------------------------------------------
    # valuations (overridden by the DVR)
    @property
    def valuation_cap(self) -> int:
        """Valuation reported for zero."""
        return 1

    def valuation(self, x) -> np.ndarray:
        return np.where(self.is_zero(x), self.valuation_cap, 0)

    def div_pi(self, x) -> np.ndarray:  # pragma: no cover - only meaningful for the DVR
        raise NonUnit("no uniformizer division in a field")

    def div_pi_power(self, x, v: int) -> np.ndarray:
        for _ in range(v):
            x = self.div_pi(x)
        return x

    # ------------------------------------------------------------------
    # roots of unity
    @cached_property
    def _root_table(self) -> np.ndarray:
        z = self.zeta_array
        out = [self.scalar(1)]
        for _ in range(1, self.root_order):
            out.append(self.mul(out[-1], z))
        return np.stack(out)

    @property
    def zeta_array(self) -> np.ndarray:
        raise NotImplementedError

    def zeta_power(self, a: int) -> np.ndarray:
        return self._root_table[a % self.root_order].copy()

    def match_root_of_unity(self, x) -> Optional[int]:
        """Return ``a`` with ``x == zeta**a`` exactly, or None."""
        x = self.canon(x)
        hits = np.nonzero((self._root_table == x).all(axis=-1))[0]
        return int(hits[0]) if hits.size else None

    # ------------------------------------------------------------------
    # scalar values
    def __call__(self, coeffs) -> "RingValue":
        if isinstance(coeffs, (int, np.integer)):
            coeffs = [int(coeffs)]
        coeffs = list(coeffs)
        if len(coeffs) > self.deg:
            raise ValueError(f"too many coefficients for degree {self.deg}")
        arr = self.zeros()
        arr[: len(coeffs)] = np.asarray(coeffs, dtype=object) % self.modulus
        return RingValue(self, arr)

    @property
    def zeta(self) -> "RingValue":
        return RingValue(self, self.zeta_array)

    def one(self) -> "RingValue":
        return self(1)

    def zero(self) -> "RingValue":
        return self(0)

    # ------------------------------------------------------------------
    # text forms
    def header(self) -> str:
        raise NotImplementedError

    def format_element(self, x) -> str:
        return ",".join(str(int(c)) for c in np.asarray(x))

    def parse_element(self, text: str) -> np.ndarray:
        parts = [int(t) for t in text.strip().split(",")]
        if len(parts) != self.deg:
            raise ValueError(f"expected {self.deg} coefficients, got {len(parts)}")
        return np.asarray(parts, dtype=np.int64) % self.modulus


class PrimeField(CoefficientRing):
    """GF(p), the residue field k."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p, 0, 1, 1, p, [[1]])

    @property
    def zeta_array(self) -> np.ndarray:
        return self.scalar(1)

    def header(self) -> str:
        return f"R k p={self.p}"

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class TruncatedDVR(CoefficientRing):
    """``Z[zeta]/(Phi_{p^n}, p^N)``: the finite-precision model of O."""

    is_field = False

    def __init__(self, p: int, n: int, N: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if N < 1:
            raise ValueError("precision N must be >= 1")
        n = max(n, 0)
        modulus = p**N
        if modulus.bit_length() > 61:
            raise ValueError(f"p^N = {p}^{N} exceeds the supported 61-bit modulus")
        phi = _cyclotomic_prime_power(p, n)
        deg = len(phi) - 1
        # reduction[k] = coefficients of zeta^k for 0 <= k < 2*deg - 1
        reduction = []
        for k in range(max(2 * deg - 1, 1)):
            vec = [0] * (k + 1)
            vec[k] = 1
            for top in range(k, deg - 1, -1):
                c = vec[top]
                if c:
                    for i in range(deg + 1):
                        vec[top - deg + i] -= c * phi[i]
            vec = (vec + [0] * deg)[:deg]
            reduction.append(vec)
        super().__init__(p, n, N, deg, modulus, reduction)
        self.ramification = deg if n >= 1 else 1
        self._setup_uniformizer()

    def _setup_uniformizer(self) -> None:
        if self.n == 0:
            pi = self.scalar(self.p)
        else:
            pi = self.sub(self.scalar(1), self.zeta_array)
        self.pi_array = pi
        mpi = self.lmat(pi)
        self._div_s, self._div_t, self._div_d = _smith_mod_prime_power(
            [[int(v) for v in row] for row in mpi], self.p, self.N
        )

    @property
    def zeta_array(self) -> np.ndarray:
        if self.deg == 1:
            # n == 1 with p == 2 gives zeta = -1; n == 0 gives zeta = 1
            return self.scalar(1 if self.n == 0 else -1)
        z = self.zeros()
        z[1] = 1
        return z

    @property
    def residue_field(self) -> PrimeField:
        return prime_field(self.p)

    @property
    def valuation_cap(self) -> int:
        return self.ramification * self.N

    def div_pi(self, x) -> np.ndarray:
        """Exact solution y of ``pi * y == x``; x must lie in the maximal ideal."""
        x = self.canon(x)
        shape = x.shape
        flat = x.reshape(-1, self.deg)
        sx = matmul_mod(flat, self._div_s.T, self.modulus)
        d = self._div_d
        if np.any(sx % d):
            raise NonUnit("element is not divisible by the uniformizer")
        y = sx // d
        out = matmul_mod(y % self.modulus, self._div_t.T, self.modulus)
        return out.reshape(shape)

    def valuation(self, x) -> np.ndarray:
        x = self.canon(x)
        cap = self.valuation_cap
        v = np.zeros(x.shape[:-1], dtype=np.int64)
        cur = x
        active = ~self.is_zero(cur)
        v[~active] = cap
        for step in range(cap):
            nonunit = active & (self.residue(cur) == 0)
            if not nonunit.any():
                break
            v[nonunit] += 1
            nxt = cur.copy()
            nxt[nonunit] = self.div_pi(cur[nonunit])
            cur = nxt
            active = nonunit
            zero_now = active & self.is_zero(cur)
            v[zero_now] = cap
            active = active & ~zero_now
        return np.minimum(v, cap)

    def reduce(self, x) -> np.ndarray:
        """Residue map onto GF(p), as arrays over ``PrimeField(p)``."""
        return self.residue(x)[..., None]

    def header(self) -> str:
        return f"R O p={self.p} n={self.n} N={self.N}"

    def __repr__(self) -> str:
        return f"TruncatedDVR(p={self.p}, n={self.n}, N={self.N})"


def _smith_mod_prime_power(mat: list[list[int]], p: int, N: int):
    """Smith form over Z/p^N of a small square matrix.

    Returns int64 arrays (S, T, d) with ``S @ mat @ T == diag(d)`` mod p^N and
    every ``d[i]`` a power of p (p^N stands for zero).
    """
    m = p**N
    size = len(mat)
    a = [[v % m for v in row] for row in mat]
    s = [[int(i == j) for j in range(size)] for i in range(size)]
    t = [[int(i == j) for j in range(size)] for i in range(size)]

    def val(x: int) -> int:
        if x % m == 0:
            return N
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        return k

    diag = []
    for k in range(size):
        best = None
        for i in range(k, size):
            for j in range(k, size):
                vv = val(a[i][j])
                if best is None or vv < best[0]:
                    best = (vv, i, j)
        vk, i, j = best
        a[k], a[i] = a[i], a[k]
        s[k], s[i] = s[i], s[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        for row in t:
            row[k], row[j] = row[j], row[k]
        if vk >= N:
            diag.extend([m] * (size - k))
            break
        unit = (a[k][k] // p**vk) % m
        uinv = pow(unit, -1, m)
        a[k] = [(x * uinv) % m for x in a[k]]
        s[k] = [(x * uinv) % m for x in s[k]]
        piv = p**vk
        for i2 in range(size):
            if i2 != k and a[i2][k]:
                f = a[i2][k] // piv
                a[i2] = [(x - f * y) % m for x, y in zip(a[i2], a[k])]
                s[i2] = [(x - f * y) % m for x, y in zip(s[i2], s[k])]
        for j2 in range(k + 1, size):
            if a[k][j2]:
                f = a[k][j2] // piv
                for row in range(size):
                    t[row][j2] = (t[row][j2] - f * t[row][k]) % m
                a[k][j2] = 0
        diag.append(piv)
    return (
        np.asarray(s, dtype=np.int64),
        np.asarray(t, dtype=np.int64),
        np.asarray(diag, dtype=np.int64),
    )


class RingValue:
    """An immutable scalar element of a coefficient ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs: np.ndarray):
        self.ring = ring
        arr = ring.canon(coeffs).copy()
        arr.setflags(write=False)
        self.coeffs = arr

    def _other(self, other) -> "RingValue":
        if isinstance(other, (int, np.integer)):
            return self.ring(int(other))
        if not isinstance(other, RingValue):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring.add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring.sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring.sub(o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        return RingValue(self.ring, self.ring.mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.coeffs))

    def __pow__(self, e: int):
        return RingValue(self.ring, self.ring.pow(self.coeffs, e))

    def inverse(self) -> "RingValue":
        return RingValue(self.ring, self.ring.inv(self.coeffs))

    def is_unit(self) -> bool:
        return bool(self.ring.is_unit(self.coeffs))

    def valuation(self) -> int:
        return int(self.ring.valuation(self.coeffs))

    def __eq__(self, other) -> bool:
        try:
            o = self._other(other)
        except RingMismatch:
            return False
        if o is NotImplemented:
            return False
        return bool(np.array_equal(self.coeffs, o.coeffs))

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"RingValue({self.ring.format_element(self.coeffs)})"

    def __str__(self) -> str:
        return self.ring.format_element(self.coeffs)


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def build_ring(p: int, n: int, N: int) -> TruncatedDVR:
    """The truncated ring Z[zeta]/(Phi_{p^n}, p^N); ``n <= 0`` gives Z/p^N."""
    return TruncatedDVR(p, n, N)


def reduce_residue(x: RingValue) -> RingValue:
    """Residue map zeta -> 1, coefficients mod p."""
    ring = x.ring
    if not isinstance(ring, TruncatedDVR):
        raise TypeError("reduce_residue expects an element of a TruncatedDVR")
    k = ring.residue_field
    return RingValue(k, ring.reduce(x.coeffs))


def match_root_of_unity(x: RingValue) -> Optional[int]:
    return x.ring.match_root_of_unity(x.coeffs)


def parse_ring(header: str) -> CoefficientRing:
    """Inverse of ``ring.header()``."""
    toks = header.split()
    if len(toks) < 3 or toks[0] != "R":
        raise ValueError(f"malformed ring header: {header!r}")
    fields = dict(t.split("=", 1) for t in toks[2:])
    if toks[1] == "k":
        return prime_field(int(fields["p"]))
    if toks[1] == "O":
        return build_ring(int(fields["p"]), int(fields["n"]), int(fields["N"]))
    raise ValueError(f"unknown ring tag {toks[1]!r}")


def ring_elements(ring: CoefficientRing, values: Iterable[RingValue]) -> np.ndarray:
    return np.stack([v.coeffs for v in values])
