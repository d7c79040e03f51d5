"""Dense linear algebra over the prime field F_p on numpy int64 arrays.

Single-matrix routines return canonical reduced row echelon forms so that
subspaces compare structurally. ``batched_*`` routines run Gaussian
elimination on a stack of matrices at once (shape ``(B, m, n)``).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def primes(count: int, start: int = 2) -> list[int]:
    out = []
    k = start
    while len(out) < count:
        if is_prime(k):
            out.append(k)
        k += 1
    return out


@lru_cache(maxsize=None)
def inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod ``p`` and its pivot columns."""
    r = np.array(a, dtype=np.int64, copy=True) % p
    if r.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    m, n = r.shape
    inv = inverses(p)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * inv[r[row, col]]) % p
        col_vals = r[:, col].copy()
        col_vals[row] = 0
        r = (r - np.outer(col_vals, r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Canonical basis (RREF rows) of the row space of ``a``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        cols = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.zeros((0, cols), dtype=np.int64)
    r, piv = rref(a, p)
    return r[: len(piv)]


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis rows of ``{x : a @ x = 0}``, in canonical RREF."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        a = a.reshape(0, ncols)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(a, p)
    free = [j for j in range(n) if j not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return row_basis(basis, p, n)


def contains(basis: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """Whether every row of ``vectors`` lies in the row space of ``basis``."""
    if vectors.shape[0] == 0:
        return True
    return rank(np.vstack([basis, vectors]), p) == rank(basis, p)


def reduce_mod(basis: np.ndarray, pivots: list[int], x: np.ndarray, p: int) -> np.ndarray:
    """Subtract multiples of the RREF ``basis`` rows to clear ``x`` at the pivot columns."""
    x = np.array(x, dtype=np.int64) % p
    for row, pc in zip(basis, pivots):
        c = x[..., pc]
        x = (x - np.multiply.outer(c, row)) % p if x.ndim > 1 else (x - c * row) % p
    return x


def pivots_of(basis: np.ndarray) -> list[int]:
    out = []
    for row in basis:
        nz = np.nonzero(row)[0]
        out.append(int(nz[0]))
    return out


def count_rank(rows: int, cols: int, r: int, p: int) -> int:
    """Number of ``rows x cols`` matrices of rank ``r`` over F_p."""
    if r < 0 or r > min(rows, cols):
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= (p**rows - p**i) * (p**cols - p**i)
        den *= p**r - p**i
    return num // den


def batched_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce every matrix in the stack ``a`` (shape ``(B, m, n)``).

    Returns the reduced stack (nonzero rows first) and the rank of each matrix.
    """
    r = np.array(a, dtype=np.int64, copy=True) % p
    bsz, m, n = r.shape
    inv = inverses(p)
    row = np.zeros(bsz, dtype=np.int64)
    idx = np.arange(bsz)
    rows_ar = np.arange(m)
    if m == 0 or n == 0:
        return r, row
    for col in range(n):
        active = row < m
        if not active.any():
            break
        mask = (r[:, :, col] != 0) & (rows_ar[None, :] >= row[:, None])
        has = mask.any(axis=1) & active
        if not has.any():
            continue
        piv = np.argmax(mask, axis=1)
        b = idx[has]
        rw = row[has]
        pv = piv[has]
        top = r[b, rw].copy()
        r[b, rw] = r[b, pv]
        r[b, pv] = top
        lead = r[b, rw, col]
        r[b, rw] = (r[b, rw] * inv[lead][:, None]) % p
        factors = r[b, :, col].copy()
        factors[np.arange(b.size), rw] = 0
        r[b] = (r[b] - factors[:, :, None] * r[b, rw][:, None, :]) % p
        row[has] += 1
    return r, row


def batched_rank(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a)
    if a.shape[1] == 0 or a.shape[2] == 0:
        return np.zeros(a.shape[0], dtype=np.int64)
    return batched_rref(a, p)[1]
