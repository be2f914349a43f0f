"""Integer lattices: Hermite/Smith reductions, ranks, kernels, membership.

All inputs are integer matrices whose rows are lattice vectors.  Results are
returned as exact integer numpy arrays (``int64`` when the reduction stayed
small, ``object`` otherwise).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import _kernels


class Cancelled(RuntimeError):
    pass


class CancelToken:
    """Cooperative cancellation for long reductions; checked between kernel calls."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self):
        if self._event.is_set():
            raise Cancelled("reduction cancelled")


def _check(cancel: Optional[CancelToken]):
    if cancel is not None:
        cancel.check()


def as_matrix(rows, ncols: Optional[int] = None) -> np.ndarray:
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        raise ValueError("rows must be a 2-d integer array")
    return _narrow(a)


def _narrow(a: np.ndarray) -> np.ndarray:
    if a.dtype != object:
        return a.astype(np.int64)
    if a.size == 0 or max(abs(int(v)) for v in a.flat) <= _kernels.INT64_LIMIT:
        return a.astype(np.int64)
    return a


def hnf(A, cancel: Optional[CancelToken] = None) -> Tuple[np.ndarray, np.ndarray, int]:
    """Row Hermite normal form: returns ``(H, U, rank)`` with ``U @ A == H``.

    ``U`` is unimodular; the first ``rank`` rows of ``H`` are a basis of the
    row lattice and the last ``m - rank`` rows of ``U`` span the left kernel.
    """
    _check(cancel)
    A = np.asarray(A)
    m = A.shape[0]
    if A.dtype != object:
        H = A.astype(np.int64).copy()
        U = np.eye(m, dtype=np.int64)
        rank, overflow = _kernels.jit_hnf_inplace(H, U, _kernels.INT64_LIMIT)
        if not overflow:
            _check(cancel)
            return H, U, int(rank)
    H = np.array(A, dtype=object).copy()
    H = np.vectorize(int, otypes=[object])(H) if H.size else H
    U = np.eye(m, dtype=np.int64).astype(object)
    rank, _ = _kernels.py_hnf_inplace(H, U, 0)
    _check(cancel)
    return H, U, int(rank)


def elementary_divisors(A, cancel: Optional[CancelToken] = None) -> List[int]:
    """Nonzero Smith invariants of ``A`` in divisibility order."""
    _check(cancel)
    A = np.asarray(A)
    if A.size == 0:
        return []
    k = min(A.shape)
    if A.dtype != object:
        W = A.astype(np.int64).copy()
        out = np.zeros(k, dtype=np.int64)
        cnt, overflow = _kernels.jit_smith_diagonal_inplace(W, out, _kernels.INT64_LIMIT)
        if not overflow:
            _check(cancel)
            return sorted(int(v) for v in out[:cnt])
    W = np.vectorize(int, otypes=[object])(np.array(A, dtype=object))
    out = np.zeros(k, dtype=object)
    cnt, _ = _kernels.py_smith_diagonal_inplace(W, out, 0)
    _check(cancel)
    return sorted(int(v) for v in out[:cnt])


def rank(A, cancel: Optional[CancelToken] = None) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return hnf(A, cancel)[2]


def row_basis(A, cancel: Optional[CancelToken] = None) -> np.ndarray:
    A = np.asarray(A)
    if A.shape[0] == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
    H, _, r = hnf(A, cancel)
    return H[:r]


def left_kernel(A, cancel: Optional[CancelToken] = None) -> np.ndarray:
    """Basis (rows) of ``{c : c @ A == 0}`` over the integers."""
    A = np.asarray(A)
    m = A.shape[0]
    if A.ndim != 2 or A.shape[1] == 0:
        return np.eye(m, dtype=np.int64)
    _, U, r = hnf(A, cancel)
    return U[r:]


@dataclass
class Solution:
    member: bool
    coefficients: Optional[List[int]] = None  # combination of the input rows
    residual: Optional[List[int]] = None


def solve_row(A, h, cancel: Optional[CancelToken] = None) -> Solution:
    """Decide whether ``h`` is an integer combination of the rows of ``A``."""
    A = np.asarray(A)
    h = [int(v) for v in h]
    m = A.shape[0]
    if m == 0:
        ok = not any(h)
        return Solution(ok, [] if ok else None, None if ok else h)
    H, U, r = hnf(A, cancel)
    rest = list(h)
    coeff = [0] * r
    for k in range(r):
        row = [int(v) for v in H[k]]
        piv = next(j for j, v in enumerate(row) if v)
        if rest[piv] % row[piv]:
            return Solution(False, residual=rest)
        q = rest[piv] // row[piv]
        coeff[k] = q
        if q:
            rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        return Solution(False, residual=rest)
    comb = [sum(coeff[k] * int(U[k, i]) for k in range(r)) for i in range(m)]
    return Solution(True, comb)


def in_coordinates(basis, vectors, cancel: Optional[CancelToken] = None) -> np.ndarray:
    """Coordinates of each vector in ``vectors`` w.r.t. the rows of ``basis``.

    Raises ``ValueError`` if some vector is not in the lattice.
    """
    out = []
    for v in vectors:
        sol = solve_row(basis, v, cancel)
        if not sol.member:
            raise ValueError("vector outside the lattice")
        out.append(sol.coefficients)
    return as_matrix(out, np.asarray(basis).shape[0])


def is_saturated(sub, ambient_basis, cancel: Optional[CancelToken] = None) -> bool:
    """Is ``ambient / span(sub)`` torsion-free?  (all elementary divisors 1)"""
    sub = np.asarray(sub)
    if sub.shape[0] == 0:
        return True
    coords = in_coordinates(ambient_basis, sub, cancel)
    return all(d == 1 for d in elementary_divisors(coords, cancel))
