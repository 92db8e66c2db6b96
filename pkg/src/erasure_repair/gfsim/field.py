"""GF(2^8) arithmetic with reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D).

Scalar helpers are plain Python; matrix routines are numba kernels over
``uint8`` arrays driven by the full 256x256 multiplication table.
"""

from __future__ import annotations

import numba
import numpy as np

POLY = 0x11D
ORDER = 256


def _build_tables():
    exp = np.zeros(2 * ORDER, dtype=np.int64)
    log = np.zeros(ORDER, dtype=np.int64)
    x = 1
    for i in range(ORDER - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & 0x100:
            x ^= POLY
    exp[ORDER - 1:2 * ORDER - 2] = exp[:ORDER - 1]
    mul = np.zeros((ORDER, ORDER), dtype=np.uint8)
    for a in range(1, ORDER):
        for b in range(1, ORDER):
            mul[a, b] = exp[log[a] + log[b]]
    inv = np.zeros(ORDER, dtype=np.uint8)
    for a in range(1, ORDER):
        inv[a] = exp[(ORDER - 1 - log[a]) % (ORDER - 1)]
    return exp, log, mul, inv


EXP, LOG, MUL, INV = _build_tables()

# Log-domain product table: EXPX[LOG[a] + LOG[b]] == a*b, with 0 mapped to
# ZERO_LOG so any sum involving it lands in the zero tail.
ZERO_LOG = 511
EXPX = np.zeros(2 * ZERO_LOG + 1, dtype=np.uint8)
EXPX[:2 * (ORDER - 1)] = EXP[:2 * (ORDER - 1)]

for _t in (EXP, LOG, MUL, INV, EXPX):
    _t.setflags(write=False)


def log_table(mat: np.ndarray) -> np.ndarray:
    """Elementwise discrete log with 0 -> ZERO_LOG."""
    out = LOG[mat].astype(np.int16)
    out[mat == 0] = ZERO_LOG
    return out


def gf_add(a: int, b: int) -> int:
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    return int(MUL[a, b])


def gf_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^8)")
    return int(INV[a])


def gf_mul_slow(a: int, b: int) -> int:
    """Carry-less multiply then reduce; table-free reference."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= POLY
    return r


@numba.njit(cache=True)
def _eliminate(m, mul, inv):
    """Row-reduce ``m`` in place to reduced echelon form; return pivot columns."""
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        s = inv[m[r, c]]
        if s != 1:
            for j in range(cols):
                m[r, j] = mul[s, m[r, j]]
        for i in range(rows):
            f = m[i, c]
            if i != r and f != 0:
                for j in range(cols):
                    m[i, j] ^= mul[f, m[r, j]]
        pivots[r] = c
        r += 1
    return pivots[:r]


@numba.njit(cache=True)
def _rank_inplace(m, mul, inv):
    """Rank by forward elimination only (no back substitution)."""
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        s = inv[m[r, c]]
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                f = mul[f, s]
                for j in range(c, cols):
                    m[i, j] ^= mul[f, m[r, j]]
        r += 1
    return r


@numba.njit(cache=True)
def _matmul(a, b, mul):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.uint8)
    for i in range(n):
        for t in range(k):
            x = a[i, t]
            if x == 0:
                continue
            row = mul[x]
            for j in range(m):
                out[i, j] ^= row[b[t, j]]
    return out


def as_gf(mat) -> np.ndarray:
    arr = np.asarray(mat)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("GF(2^8) entries must lie in [0, 255]")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def rank(mat) -> int:
    """Row rank of a matrix over GF(2^8)."""
    m = as_gf(mat).copy()
    if m.size == 0:
        return 0
    return int(_rank_inplace(m, MUL, INV))


def matmul(a, b) -> np.ndarray:
    a, b = as_gf(a), as_gf(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return _matmul(a, b, MUL)


def rref(mat) -> tuple[np.ndarray, np.ndarray]:
    m = as_gf(mat).copy()
    pivots = _eliminate(m, MUL, INV)
    return m[: len(pivots)], pivots


def null_space(mat) -> np.ndarray:
    """Basis of ``{v : mat @ v = 0}`` as the columns of an ``(ncols, nullity)`` matrix."""
    m = as_gf(mat)
    cols = m.shape[1]
    reduced, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots.tolist())]
    basis = np.zeros((cols, len(free)), dtype=np.uint8)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        # char 2: -x == x
        for r, pc in enumerate(pivots):
            basis[pc, j] = reduced[r, fc]
    return basis
