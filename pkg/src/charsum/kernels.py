"""Batched matrix kernels over small finite fields.

Field elements are ints and arithmetic goes through the lookup tables of
``FieldCtx.tables``.  Every kernel has a numba version and a pure numpy
version; ``CHARSUM_NUMBA=0`` forces numpy.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - depends on the environment
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None


def numba_available() -> bool:
    return _numba is not None


def use_numba() -> bool:
    return _numba is not None and os.environ.get("CHARSUM_NUMBA", "1") != "0"


def backend() -> str:
    return "numba" if use_numba() else "numpy"


if _numba is not None:
    njit = _numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(f):
        return f


# ---- numba kernels ----

@njit
def _nb_matmul(A, B, add, mul):
    b, n, m = A.shape
    r = B.shape[2]
    out = np.zeros((b, n, r), dtype=np.int64)
    for t in range(b):
        for i in range(n):
            for j in range(r):
                acc = 0
                for k in range(m):
                    x = A[t, i, k]
                    y = B[t, k, j]
                    if x != 0 and y != 0:
                        acc = add[acc, mul[x, y]]
                out[t, i, j] = acc
    return out


@njit
def _rank_inplace(M, add, mul, neg, inv):
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        pinv = inv[M[r, c]]
        for j in range(c, cols):
            M[r, j] = mul[M[r, j], pinv]
        for i in range(r + 1, rows):
            f = M[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = add[M[i, j], mul[nf, M[r, j]]]
        r += 1
    return r


@njit
def _nb_rank(A, add, mul, neg, inv):
    b = A.shape[0]
    out = np.zeros(b, dtype=np.int64)
    for t in range(b):
        M = A[t].copy()
        out[t] = _rank_inplace(M, add, mul, neg, inv)
    return out


@njit
def _nb_det(A, add, mul, neg, inv):
    b, n, _ = A.shape
    out = np.zeros(b, dtype=np.int64)
    for t in range(b):
        M = A[t].copy()
        det = 1
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                det = 0
                break
            if piv != c:
                for j in range(n):
                    tmp = M[c, j]
                    M[c, j] = M[piv, j]
                    M[piv, j] = tmp
                det = neg[det]
            p = M[c, c]
            det = mul[det, p]
            pinv = inv[p]
            for i in range(c + 1, n):
                f = M[i, c]
                if f != 0:
                    nf = mul[neg[f], pinv]
                    for j in range(c, n):
                        if M[c, j] != 0:
                            M[i, j] = add[M[i, j], mul[nf, M[c, j]]]
        out[t] = det
    return out


# ---- numpy fallbacks ----

def _np_matmul(A, B, add, mul):
    prods = mul[A[:, :, :, None], B[:, None, :, :]]
    acc = prods[:, :, 0, :]
    for k in range(1, A.shape[2]):
        acc = add[acc, prods[:, :, k, :]]
    return acc.astype(np.int64)


def _np_rank(A, add, mul, neg, inv):
    A = np.array(A, dtype=np.int64, copy=True)
    b, rows, cols = A.shape
    r = np.zeros(b, dtype=np.int64)
    ridx = np.arange(rows)
    for c in range(cols):
        cand = (A[:, :, c] != 0) & (ridx[None, :] >= r[:, None])
        has = cand.any(axis=1) & (r < rows)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        piv = np.argmax(cand[sel], axis=1)
        rr = r[sel]
        top = A[sel, rr].copy()
        A[sel, rr] = A[sel, piv]
        A[sel, piv] = top
        prow = mul[A[sel, rr], inv[A[sel, rr, c]][:, None]]
        A[sel, rr] = prow
        f = np.where(ridx[None, :] > rr[:, None], A[sel, :, c], 0)
        A[sel] = add[A[sel], mul[neg[f][:, :, None], prow[:, None, :]]]
        r[sel] += 1
    return r


def _np_det(A, add, mul, neg, inv):
    A = np.array(A, dtype=np.int64, copy=True)
    b, n, _ = A.shape
    det = np.ones(b, dtype=np.int64)
    alive = np.ones(b, dtype=bool)
    ridx = np.arange(n)
    for c in range(n):
        cand = (A[:, :, c] != 0) & (ridx[None, :] >= c)
        has = cand.any(axis=1)
        det[~has] = 0
        alive &= has
        sel = np.nonzero(alive)[0]
        if sel.size == 0:
            break
        piv = np.argmax(cand[sel], axis=1)
        swap = piv != c
        top = A[sel, c].copy()
        A[sel, c] = A[sel, piv]
        A[sel, piv] = top
        det[sel[swap]] = neg[det[sel[swap]]]
        p = A[sel, c, c]
        det[sel] = mul[det[sel], p]
        f = np.where(ridx[None, :] > c, A[sel, :, c], 0)
        coef = mul[neg[f], inv[p][:, None]]
        A[sel] = add[A[sel], mul[coef[:, :, None], A[sel, c][:, None, :]]]
    det[~alive] = 0
    return det


# ---- dispatch ----

def _as_batch(A):
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 2:
        return A[None], True
    return A, False


def matmul_batch(A, B, tables, force: str | None = None) -> np.ndarray:
    """Products ``A[t] @ B[t]``; a 2-d operand is broadcast over the batch."""
    add, mul = tables[0], tables[1]
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    squeeze = A.ndim == 2 and B.ndim == 2
    if A.ndim == 2:
        A = np.broadcast_to(A, (B.shape[0] if B.ndim == 3 else 1,) + A.shape)
    if B.ndim == 2:
        B = np.broadcast_to(B, (A.shape[0],) + B.shape)
    if A.shape[0] != B.shape[0]:
        raise ValueError("batch sizes differ")
    impl = force or backend()
    if impl == "numba":
        out = _nb_matmul(np.ascontiguousarray(A), np.ascontiguousarray(B), add, mul)
    else:
        out = _np_matmul(A, B, add, mul)
    return out[0] if squeeze else out


def rank_batch(A, tables, force: str | None = None) -> np.ndarray:
    add, mul, neg, inv = tables
    A, single = _as_batch(A)
    impl = force or backend()
    if A.shape[1] == 0 or A.shape[2] == 0:
        out = np.zeros(A.shape[0], dtype=np.int64)
    elif impl == "numba":
        out = _nb_rank(np.ascontiguousarray(A), add, mul, neg, inv)
    else:
        out = _np_rank(A, add, mul, neg, inv)
    return out[0] if single else out


def det_batch(A, tables, force: str | None = None) -> np.ndarray:
    add, mul, neg, inv = tables
    A, single = _as_batch(A)
    impl = force or backend()
    if A.shape[1] == 0:
        out = np.ones(A.shape[0], dtype=np.int64)
    elif impl == "numba":
        out = _nb_det(np.ascontiguousarray(A), add, mul, neg, inv)
    else:
        out = _np_det(A, add, mul, neg, inv)
    return out[0] if single else out


def identity_batch(b: int, n: int) -> np.ndarray:
    return np.broadcast_to(np.eye(n, dtype=np.int64), (b, n, n)).copy()


def add_batch(A, B, tables) -> np.ndarray:
    return tables[0][np.asarray(A), np.asarray(B)]


def scale_batch(c, A, tables) -> np.ndarray:
    return tables[1][np.asarray(c), np.asarray(A)]


# ---- submodule enumeration for Hall polynomials ----
#
# The module has basis rows e_0..e_{n-1}; ``tpow[j]`` is the matrix of T^j
# acting on row vectors.  For every row-reduced k-subspace with the given
# pivot columns we test T-stability and record the conjugate-partition codes
# of the submodule and of the quotient.

@njit
def _reduce_against(v, R, pivots, add, mul, neg):
    # v minus its projection on the RREF rows; returns True if v is in the span
    k = R.shape[0]
    n = v.shape[0]
    w = v.copy()
    for i in range(k):
        c = w[pivots[i]]
        if c != 0:
            nc = neg[c]
            for j in range(n):
                if R[i, j] != 0:
                    w[j] = add[w[j], mul[nc, R[i, j]]]
    for j in range(n):
        if w[j] != 0:
            return False
    return True


@njit
def _row_times(R, T, add, mul):
    k, n = R.shape
    out = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        for j in range(n):
            acc = 0
            for l in range(n):
                if R[i, l] != 0 and T[l, j] != 0:
                    acc = add[acc, mul[R[i, l], T[l, j]]]
            out[i, j] = acc
    return out


@njit
def _nb_subspace_types(pivots, free_r, free_c, Q, tpow, add, mul, neg, inv, code_id, counts):
    k = pivots.shape[0]
    n = tpow.shape[1]
    depth = tpow.shape[0]
    f = free_r.shape[0]
    total = 1
    for _ in range(f):
        total *= Q
    R = np.zeros((k, n), dtype=np.int64)
    stack = np.zeros((n + k, n), dtype=np.int64)
    subdim = np.zeros(depth, dtype=np.int64)
    quodim = np.zeros(depth, dtype=np.int64)
    for idx in range(total):
        for i in range(k):
            for j in range(n):
                R[i, j] = 0
            R[i, pivots[i]] = 1
        x = idx
        for t in range(f):
            R[free_r[t], free_c[t]] = x % Q
            x //= Q
        # T-stability
        TR = _row_times(R, tpow[1], add, mul)
        ok = True
        for i in range(k):
            if not _reduce_against(TR[i], R, pivots, add, mul, neg):
                ok = False
                break
        if not ok:
            continue
        # dims of T^j N and of T^j M + N
        for j in range(depth):
            if j == 0:
                subdim[j] = k
            else:
                P = _row_times(R, tpow[j], add, mul)
                subdim[j] = _rank_inplace(P, add, mul, neg, inv)
            for a in range(n):
                for b in range(n):
                    stack[a, b] = tpow[j, a, b]
            for a in range(k):
                for b in range(n):
                    stack[n + a, b] = R[a, b]
            S = stack.copy()
            quodim[j] = _rank_inplace(S, add, mul, neg, inv) - k
        scode = 0
        qcode = 0
        mult = 1
        for j in range(depth - 1):
            scode += (subdim[j] - subdim[j + 1]) * mult
            qcode += (quodim[j] - quodim[j + 1]) * mult
            mult *= 8
        counts[code_id[scode], code_id[qcode]] += 1
    return counts


def _np_subspace_types(pivots, free_r, free_c, Q, tpow, add, mul, neg, inv, code_id, counts,
                       chunk: int = 1 << 16):
    k = len(pivots)
    n = tpow.shape[1]
    depth = tpow.shape[0]
    f = len(free_r)
    total = Q ** f
    tabs = (add, mul, neg, inv)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        b = idx.size
        R = np.zeros((b, k, n), dtype=np.int64)
        R[:, np.arange(k), pivots] = 1
        x = idx.copy()
        for t in range(f):
            R[:, free_r[t], free_c[t]] = x % Q
            x //= Q
        TR = _np_matmul(R, np.broadcast_to(tpow[1], (b, n, n)), add, mul)
        both = np.concatenate([R, TR], axis=1)
        stable = _np_rank(both, add, mul, neg, inv) == k
        R = R[stable]
        b = R.shape[0]
        if b == 0:
            continue
        subdim = np.zeros((depth, b), dtype=np.int64)
        quodim = np.zeros((depth, b), dtype=np.int64)
        for j in range(depth):
            if j == 0:
                subdim[j] = k
            else:
                P = _np_matmul(R, np.broadcast_to(tpow[j], (b, n, n)), add, mul)
                subdim[j] = _np_rank(P, add, mul, neg, inv)
            S = np.concatenate([np.broadcast_to(tpow[j], (b, n, n)), R], axis=1)
            quodim[j] = _np_rank(S, add, mul, neg, inv) - k
        weights = 8 ** np.arange(depth - 1, dtype=np.int64)
        scode = ((subdim[:-1] - subdim[1:]).T * weights).sum(axis=1)
        qcode = ((quodim[:-1] - quodim[1:]).T * weights).sum(axis=1)
        np.add.at(counts, (code_id[scode], code_id[qcode]), 1)
    return counts


def subspace_type_counts(pivots, free_r, free_c, Q, tpow, tables, code_id, counts,
                         force: str | None = None):
    """Accumulate ``counts[sub_id, quotient_id]`` over T-stable subspaces with these pivots."""
    add, mul, neg, inv = tables
    args = (np.asarray(pivots, dtype=np.int64), np.asarray(free_r, dtype=np.int64),
            np.asarray(free_c, dtype=np.int64), int(Q), np.ascontiguousarray(tpow, dtype=np.int64),
            add, mul, neg, inv, code_id, counts)
    if (force or backend()) == "numba":
        return _nb_subspace_types(*args)
    return _np_subspace_types(*args)
