"""Modular row reduction kernels.

Everything upstream (rational kernels, rank certificates, saturation) funnels
into reduced row echelon form over a word-size prime field.  Two backends
compute it: a numba ``@njit`` loop and a vectorised pure-numpy fallback.  Set
``COMVAR_PURE_NUMPY=1`` to force the fallback.  Both operate on int64 arrays
with all entries already reduced into ``[0, p)`` and require ``p < 2**30`` so
that products stay below 2**63.
"""

from __future__ import annotations

import os

import numpy as np

# Fixed prime sequence (largest primes below 2**30).  The whole engine is
# deterministic because these are constants, not random draws.
PRIMES: tuple[int, ...] = (
    1073741789, 1073741783, 1073741741, 1073741723, 1073741719,
    1073741717, 1073741689, 1073741671, 1073741663, 1073741651,
    1073741621, 1073741567, 1073741561, 1073741527, 1073741503,
    1073741477, 1073741467, 1073741441, 1073741419, 1073741399,
    1073741387, 1073741381, 1073741371, 1073741329, 1073741311,
    1073741309, 1073741287, 1073741237, 1073741213, 1073741197,
    1073741189, 1073741173, 1073741101, 1073741077, 1073741047,
    1073740963, 1073740951, 1073740933, 1073740909, 1073740879,
    1073740853, 1073740847, 1073740819, 1073740807, 1073740793,
    1073740783, 1073740781, 1073740697, 1073740693, 1073740691,
    1073740649, 1073740609, 1073740571, 1073740567, 1073740543,
    1073740541, 1073740537, 1073740529, 1073740523, 1073740517,
    1073740501, 1073740489, 1073740477, 1073740463,
)


def _rref_numpy(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """In-place Gauss-Jordan over F_p; returns (rank, pivot columns)."""
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


def _build_njit():
    from numba import njit

    @njit("int64(int64, int64)", cache=True, nogil=True)
    def _inv_mod(x, p):  # pragma: no cover - exercised via rref
        # extended Euclid; x in (0, p)
        a, b = x, p
        u, v = 1, 0
        while b:
            q = a // b
            a, b = b, a - q * b
            u, v = v, u - q * v
        return u % p

    @njit("int64(int64[:, :], int64, int64[:])", cache=True, nogil=True)
    def _rref_core(a, p, pivots):  # pragma: no cover - thin numba wrapper
        m, n = a.shape
        r = 0
        for c in range(n):
            if r == m:
                break
            pr = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(c, n):
                    t = a[r, j]
                    a[r, j] = a[pr, j]
                    a[pr, j] = t
            inv = _inv_mod(a[r, c], p)
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(c, n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return r

    def rref(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
        pivots = np.empty(min(a.shape), dtype=np.int64)
        r = _rref_core(a, p, pivots)
        return r, pivots[:r].copy()

    return rref


def _select_backend():
    if os.environ.get("COMVAR_PURE_NUMPY", "") not in ("", "0"):
        return _rref_numpy, "numpy"
    try:
        return _build_njit(), "numba"
    except Exception:  # numba missing or jit failure
        return _rref_numpy, "numpy"


_RREF, BACKEND = _select_backend()


def rref_mod(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """RREF of ``a`` (modified in place) over F_p.  Returns (rank, pivots)."""
    if a.dtype != np.int64:
        raise TypeError("int64 matrix required")
    return _RREF(a, p)


def rref_mod_numpy(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """Fallback path, exposed for benchmarking and cross-checks."""
    return _rref_numpy(a, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for int64 blocks, chunking the inner dimension so that
    partial sums never overflow (8 products of size < 2**60 fit in int64)."""
    m, k = a.shape
    k2, n = b.shape
    assert k == k2
    out = np.zeros((m, n), dtype=np.int64)
    step = 8
    for lo in range(0, k, step):
        out = (out + a[:, lo:lo + step] @ b[lo:lo + step, :]) % p
    return out
