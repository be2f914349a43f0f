"""Integer row-reduction kernels.

The kernels are written once over numpy arrays.  When numba is importable and
``ALMOSTDED_NO_NUMBA`` is unset they are compiled with ``@njit`` on int64
input; otherwise the same bodies run as plain numpy code.  Either way the
kernels report overflow past ``limit`` instead of wrapping, and the caller
then reruns the pure path on object arrays (exact Python integers).
"""
import os

import numpy as np

_DISABLED = os.environ.get("ALMOSTDED_NO_NUMBA", "").lower() in ("1", "true", "yes")

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def deco(f):
            return f

        return deco

USE_NUMBA = NUMBA_AVAILABLE and not _DISABLED

# int64 headroom: products of two entries must stay exact
INT64_LIMIT = 1 << 31


def hnf_inplace(A, U, limit):
    """Row Hermite normal form of ``A`` with transform ``U`` (U @ A_in = A_out).

    Returns ``(rank, overflow)``.  Pivots are positive and entries above a
    pivot are reduced into ``[0, pivot)``.
    """
    m, n = A.shape
    r = 0
    for j in range(n):
        if r == m:
            break
        found = False
        while True:
            p = -1
            best = 0
            for i in range(r, m):
                v = abs(A[i, j])
                if v != 0 and (p < 0 or v < best):
                    p = i
                    best = v
            if p < 0:
                break
            found = True
            if p != r:
                tmp = A[r, :].copy()
                A[r, :] = A[p, :]
                A[p, :] = tmp
                tmp = U[r, :].copy()
                U[r, :] = U[p, :]
                U[p, :] = tmp
            clean = True
            for i in range(r + 1, m):
                if A[i, j] != 0:
                    q = A[i, j] // A[r, j]
                    A[i, :] -= q * A[r, :]
                    U[i, :] -= q * U[r, :]
                    if A[i, j] != 0:
                        clean = False
            if limit > 0 and (np.abs(A).max() > limit or np.abs(U).max() > limit):
                return r, True
            if clean:
                break
        if not found:
            continue
        if A[r, j] < 0:
            A[r, :] = -A[r, :]
            U[r, :] = -U[r, :]
        for i in range(r):
            q = A[i, j] // A[r, j]
            if q != 0:
                A[i, :] -= q * A[r, :]
                U[i, :] -= q * U[r, :]
        if limit > 0 and (np.abs(A).max() > limit or np.abs(U).max() > limit):
            return r, True
        r += 1
    return r, False


def smith_diagonal_inplace(A, out, limit):
    """Elementary divisors of ``A`` written into ``out``; returns ``(count, overflow)``."""
    m, n = A.shape
    k = min(m, n)
    for t in range(k):
        while True:
            p = -1
            q = -1
            best = 0
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(A[i, j])
                    if v != 0 and (p < 0 or v < best):
                        p = i
                        q = j
                        best = v
            if p < 0:
                return t, False
            if p != t:
                tmp = A[t, :].copy()
                A[t, :] = A[p, :]
                A[p, :] = tmp
            if q != t:
                tmp = A[:, t].copy()
                A[:, t] = A[:, q]
                A[:, q] = tmp
            changed = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    c = A[i, t] // A[t, t]
                    A[i, :] -= c * A[t, :]
                    if A[i, t] != 0:
                        changed = True
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    c = A[t, j] // A[t, t]
                    A[:, j] -= c * A[:, t]
                    if A[t, j] != 0:
                        changed = True
            if limit > 0 and np.abs(A).max() > limit:
                return t, True
            if changed:
                continue
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % A[t, t] != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                A[t, :] += A[bad, :]
                continue
            break
        out[t] = abs(A[t, t])
    return k, False


py_hnf_inplace = hnf_inplace
py_smith_diagonal_inplace = smith_diagonal_inplace

if USE_NUMBA:
    jit_hnf_inplace = njit(cache=True)(py_hnf_inplace)
    jit_smith_diagonal_inplace = njit(cache=True)(py_smith_diagonal_inplace)
else:
    jit_hnf_inplace = py_hnf_inplace
    jit_smith_diagonal_inplace = py_smith_diagonal_inplace
