"""Smith normal form over the integers with column-transform tracking.

Only the column transform is recorded: for an integer matrix ``A`` the
routine returns ``(diag, V, Vinv)`` with unimodular ``V`` such that
``A @ V == Uinv @ S`` for some unimodular row transform and
``S = diag(diag)`` padded with zeros.  ``diag`` has ``d_1 | d_2 | ... | d_r``,
all positive.
"""
from __future__ import annotations

import numpy as np

# int64 is used while every entry stays below this bound; products of two
# such entries cannot overflow.  Larger entries trigger an exact rerun with
# Python integers.
_SAFE = 1 << 30


class _Overflow(Exception):
    pass


def _snf(A: np.ndarray, dtype):
    A = np.array(A, dtype=dtype)
    m, n = A.shape
    V = np.eye(n, dtype=dtype)
    Vinv = np.eye(n, dtype=dtype)
    guard = dtype is not object
    diag = []

    def check(*arrs):
        if guard:
            for a in arrs:
                if a.size and np.abs(a).max() >= _SAFE:
                    raise _Overflow

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]
            Vinv[[i, j]] = Vinv[[j, i]]

    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]

    k = 0
    while k < min(m, n):
        sub = A[k:, k:]
        nz = sub != 0
        if not nz.any():
            break
        if guard:
            absd = np.where(nz, np.abs(sub), np.iinfo(np.int64).max)
            i, j = np.unravel_index(np.argmin(absd), absd.shape)
        else:
            idx = np.argwhere(nz)
            vals = [abs(sub[a, b]) for a, b in idx]
            i, j = idx[int(np.argmin(vals))]
        swap_rows(k, k + i)
        swap_cols(k, k + j)
        while True:
            p = A[k, k]
            # clear column k below the pivot (row operations, untracked)
            col = A[k + 1:, k]
            rows = np.flatnonzero(col != 0)
            if len(rows):
                q = col[rows] // p
                A[k + 1 + rows] -= q[:, None] * A[k][None, :]
                check(A[k + 1 + rows])
            # clear row k right of the pivot (column operations, tracked)
            row = A[k, k + 1:]
            cols = np.flatnonzero(row != 0)
            if len(cols):
                q = row[cols] // p
                tgt = k + 1 + cols
                A[:, tgt] -= A[:, k][:, None] * q[None, :]
                V[:, tgt] -= V[:, k][:, None] * q[None, :]
                Vinv[k] += q @ Vinv[tgt]
                check(A[:, tgt], V[:, tgt], Vinv[k])
            rest_c = np.flatnonzero(A[k + 1:, k] != 0)
            rest_r = np.flatnonzero(A[k, k + 1:] != 0)
            if len(rest_c) == 0 and len(rest_r) == 0:
                # pivot must divide the remaining block; otherwise fold in
                # an offending row and keep reducing
                block = A[k + 1:, k + 1:]
                bad = np.argwhere(block % p != 0) if block.size else []
                if len(bad) == 0:
                    break
                r = k + 1 + int(bad[0][0])
                A[k] += A[r]
                check(A[k])
                continue
            # a smaller remainder exists: move it to the pivot position
            cand = []
            if len(rest_c):
                cand += [(abs(A[k + 1 + t, k]), k + 1 + t, k) for t in rest_c]
            if len(rest_r):
                cand += [(abs(A[k, k + 1 + t]), k, k + 1 + t) for t in rest_r]
            _, ri, ci = min(cand)
            swap_rows(k, ri)
            swap_cols(k, ci)
        if A[k, k] < 0:
            A[:, k] *= -1
            V[:, k] *= -1
            Vinv[k] *= -1
        diag.append(int(A[k, k]))
        k += 1
    return diag, V, Vinv


def smith_normal_form(A) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Return ``(diag, V, Vinv)``; ``V`` and ``Vinv`` are exact integer inverses.

    The nonzero diagonal entries satisfy the divisibility chain.  Entries are
    kept in int64 when safe and recomputed with arbitrary precision otherwise.
    """
    A = np.asarray(A)
    if A.size == 0:
        n = A.shape[1] if A.ndim == 2 else 0
        return [], np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64)
    try:
        diag, V, Vinv = _snf(A.astype(np.int64), np.int64)
    except _Overflow:
        diag, V, Vinv = _snf(A.astype(object), object)
    return diag, V, Vinv


def invariant_factors(A) -> list[int]:
    """Nonunit invariant factors, i.e. the torsion of the cokernel of ``A``."""
    diag, _, _ = smith_normal_form(A)
    return [d for d in diag if d > 1]
