"""Brute-force ground truth at toy sizes.

Unitary and symplectic groups are listed element by element, elements are
sorted into unitary conjugacy classes from their elementary divisors, and the
resulting histograms are compared with the closed forms in ``charsums``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import kernels
from .classes import (ClassU, ConsistencyError, centralizer_Sp, centralizer_U, enumerate_classes_Sp,
                      enumerate_classes_U, group_order)
from .charsums import full_sum, perm_char
from .ffield import (FieldCtx, SizeLimitError, embedding, factor_poly, field_for, size_limit,
                     tilde2_orbit_of)
from .partitions import Partition

CHECKS = ("induced", "twisted", "symmetric", "classeq", "spcent")


# ---- field helpers ----

def _conj_table(F: FieldCtx, q: int) -> np.ndarray:
    """``a -> a^q`` on ``F_{q^2}``."""
    return np.array([F.pow(a, q) if a else 0 for a in range(F.size)], dtype=np.int64)


def _dot(tables, X, Y) -> np.ndarray:
    """``sum_i X[..., i] * Y[..., i]`` with broadcasting over the leading axes."""
    add, mul = tables[0], tables[1]
    acc = np.zeros(np.broadcast_shapes(X.shape[:-1], Y.shape[:-1]), dtype=np.int64)
    for i in range(X.shape[-1]):
        acc = add[acc, mul[X[..., i], Y[..., i]]]
    return acc


def _all_vectors(size: int, n: int) -> np.ndarray:
    return np.array(list(product(range(size), repeat=n)), dtype=np.int64).reshape(-1, n)


def _transpose(A: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(np.swapaxes(A, -1, -2))


def _check_size(kind: str, n: int, q: int) -> int:
    order = group_order(kind, n, q)
    if order > size_limit():
        raise SizeLimitError(f"|{kind}({n}, {q})| = {order} exceeds the enumeration limit {size_limit()}")
    return order


def _frames(vectors: np.ndarray, form: np.ndarray, target: np.ndarray) -> np.ndarray:
    """All column frames ``(c_0, ..., c_{n-1})`` with ``form[c_i, c_j] == target[i, j]``.

    ``form`` is the Gram table of the chosen bilinear or sesquilinear form on ``vectors``.
    Returns index arrays of shape ``(count, n)``.
    """
    n = target.shape[0]
    diag = np.diagonal(form)
    frontier = np.zeros((1, 0), dtype=np.int64)
    for j in range(n):
        ok = np.broadcast_to(diag == target[j, j], (frontier.shape[0], len(vectors))).copy()
        for i in range(j):
            prev = frontier[:, i]
            ok &= form[prev] == target[i, j]
            ok &= form[:, prev].T == target[j, i]
        rows, cols = np.nonzero(ok)
        frontier = np.concatenate([frontier[rows], cols[:, None]], axis=1)
    return frontier


# ---- groups ----

@dataclass
class MatrixGroupU:
    n: int
    q: int
    field: FieldCtx
    elements: np.ndarray  # (N, n, n) over F_{q^2}

    def __len__(self):
        return len(self.elements)


@dataclass
class MatrixGroupSp:
    n2: int
    q: int
    field: FieldCtx
    form: np.ndarray
    elements: np.ndarray  # (N, n2, n2) over F_q

    def __len__(self):
        return len(self.elements)


def enumerate_unitary(n: int, q: int) -> MatrixGroupU:
    """``U(n, q^2)`` for the identity Hermitian form, by orthonormal frame extension."""
    order = _check_size("U", n, q)
    F = field_for(q, 2)
    tables = F.tables
    conj = _conj_table(F, q)
    vecs = _all_vectors(F.size, n)
    # h(x, x) = 1 first, so the Gram table is only built on unit vectors
    norms = _dot(tables, conj[vecs], vecs)
    unit = vecs[norms == 1]
    gram = _dot(tables, conj[unit][:, None, :], unit[None, :, :])
    idx = _frames(unit, gram, np.eye(n, dtype=np.int64))
    elements = _transpose(unit[idx])  # frame vectors are the columns
    if len(elements) != order:
        raise ConsistencyError(f"enumerated {len(elements)} elements of U({n}, {q}), expected {order}")
    return MatrixGroupU(n, q, F, elements)


def symplectic_form(n2: int, q: int) -> np.ndarray:
    """``J[i, n2-1-i] = -1`` for ``i < n2/2`` and ``+1`` otherwise."""
    F = field_for(q)
    J = np.zeros((n2, n2), dtype=np.int64)
    for i in range(n2):
        J[i, n2 - 1 - i] = F.minus_one if i < n2 // 2 else 1
    return J


def enumerate_symplectic(n2: int, q: int) -> MatrixGroupSp:
    """``Sp(n2, q)`` preserving ``J`` by symplectic frame extension."""
    if n2 % 2:
        raise ValueError("symplectic groups need even dimension")
    order = _check_size("Sp", n2, q)
    F = field_for(q)
    tables = F.tables
    J = symplectic_form(n2, q)
    vecs = _all_vectors(F.size, n2)
    Jv = np.stack([_dot(tables, J[None, i, :], vecs) for i in range(n2)], axis=1)  # J v
    gram = _dot(tables, vecs[:, None, :], Jv[None, :, :])
    idx = _frames(vecs, gram, J)
    elements = _transpose(vecs[idx])
    if len(elements) != order:
        raise ConsistencyError(f"enumerated {len(elements)} elements of Sp({n2}, {q}), expected {order}")
    return MatrixGroupSp(n2, q, F, J, elements)


def is_unitary(A: np.ndarray, q: int) -> np.ndarray:
    F = field_for(q, 2)
    A = np.asarray(A)
    lhs = kernels.matmul_batch(_transpose(_conj_table(F, q)[A]), A, F.tables)
    return np.all(lhs == np.eye(A.shape[-1], dtype=np.int64), axis=(-1, -2))


def is_symplectic(A: np.ndarray, q: int) -> np.ndarray:
    F = field_for(q)
    A = np.asarray(A)
    J = symplectic_form(A.shape[-1], q)
    JA = kernels.matmul_batch(np.broadcast_to(J, A.shape), A, F.tables)
    return np.all(kernels.matmul_batch(_transpose(A), JA, F.tables) == J, axis=(-1, -2))


# ---- classification ----

def _vandermonde_inverse(F: FieldCtx, xs: list[int]) -> np.ndarray:
    n = len(xs)
    M = [[1 if k == 0 else (F.pow(x, k) if x else 0) for k in range(n)] + [int(i == r) for i in range(n)]
         for r, x in enumerate(xs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        s = F.inv(M[col][col])
        M[col] = [F.mul(s, v) for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = F.neg(M[r][col])
                M[r] = [F.add(a, F.mul(f, b)) for a, b in zip(M[r], M[col])]
    return np.array([row[n:] for row in M], dtype=np.int64)


def char_polys(A: np.ndarray, F: FieldCtx) -> np.ndarray:
    """Characteristic polynomials ``det(xI - A)``, coefficients low degree first, shape ``(N, n+1)``."""
    A = np.asarray(A, dtype=np.int64)
    N, n, _ = A.shape
    if F.size <= n:
        raise ValueError("field too small to interpolate the characteristic polynomial")
    add, mul, neg, _ = F.tables
    xs = list(range(n + 1))
    negA = neg[A]
    vals = np.empty((N, n + 1), dtype=np.int64)
    eye = np.eye(n, dtype=bool)
    for j, x in enumerate(xs):
        M = negA.copy()
        M[:, eye] = add[M[:, eye], x]
        vals[:, j] = kernels.det_batch(M, F.tables)
    Vinv = _vandermonde_inverse(F, xs)
    out = np.zeros((N, n + 1), dtype=np.int64)
    for k in range(n + 1):
        for j in range(n + 1):
            out[:, k] = add[out[:, k], mul[Vinv[k, j], vals[:, j]]]
    if not np.all(out[:, n] == 1):
        raise ConsistencyError("characteristic polynomial is not monic")
    return out


def _poly_at_matrices(g, A: np.ndarray, tables) -> np.ndarray:
    """``g(A)`` for every matrix in the batch (Horner)."""
    add, mul = tables[0], tables[1]
    n = A.shape[-1]
    eye = np.eye(n, dtype=bool)
    M = np.zeros_like(A)
    M[:, eye] = g[-1]
    for c in reversed(g[:-1]):
        M = kernels.matmul_batch(M, A, tables)
        M[:, eye] = add[M[:, eye], c]
    return M


def classify_batch(A: np.ndarray, q: int) -> list[ClassU]:
    """Unitary class label of every matrix in the batch (entries in ``F_{q^2}``)."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.ndim == 2:
        A = A[None]
    F = field_for(q, 2)
    tables = F.tables
    N, n, _ = A.shape
    cps = char_polys(A, F)
    if np.any(cps[:, 0] == 0):
        raise ValueError("classify_U expects invertible matrices")
    uniq, inverse = np.unique(cps, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    out: list = [None] * N
    for u, cp in enumerate(uniq):
        idx = np.nonzero(inverse == u)[0]
        sub = A[idx]
        factors = factor_poly(F, [int(c) for c in cp])
        sig_cols = []
        for g, e in factors:
            P = _poly_at_matrices(g, sub, tables)
            M = P
            for _ in range(e):
                sig_cols.append(n - kernels.rank_batch(M, tables))
                M = kernels.matmul_batch(M, P, tables)
        sig = np.stack(sig_cols, axis=1)
        sig_uniq, sig_inv = np.unique(sig, axis=0, return_inverse=True)
        sig_inv = sig_inv.reshape(-1)
        labels = [_label_from_kernels(q, factors, row) for row in sig_uniq]
        for pos, s in zip(idx, sig_inv):
            out[pos] = labels[s]
    return out


def _label_from_kernels(q: int, factors, kers) -> ClassU:
    per_orbit: dict = {}
    pos = 0
    for g, e in factors:
        d = len(g) - 1
        dims = [0] + [int(k) for k in kers[pos:pos + e]]
        pos += e
        if dims[-1] != d * e:
            raise ConsistencyError("generalized eigenspace has the wrong dimension")
        conj = [(dims[j] - dims[j - 1]) // d for j in range(1, e + 1)]
        lam = Partition(c for c in conj if c).conjugate()
        per_orbit.setdefault(tilde2_orbit_of(q, g), {})[tuple(g)] = lam
    items = []
    for s, parts in per_orbit.items():
        lams = set(parts.values())
        if len(parts) != len(s.parts) or len(lams) != 1:
            raise ValueError(f"elementary divisors are not those of a unitary matrix at {s.label()}")
        items.append((s, lams.pop()))
    return ClassU.make(q, items)


def classify_U(A, q: int) -> ClassU:
    return classify_batch(np.asarray(A)[None], q)[0]


def histogram(classes) -> Counter:
    return Counter(classes)


# ---- counts ----

def induced_counts(n2: int, q: int) -> Counter:
    """How many elements of ``Sp(n2, q)`` fall in each unitary class."""
    G = enumerate_symplectic(n2, q)
    emb = embedding(field_for(q), field_for(q, 2))
    return Counter(classify_batch(emb[G.elements], q))


def twisted_products(G: MatrixGroupU) -> np.ndarray:
    """``u * (transpose u)^-1`` for every ``u``; on ``U`` the second factor is the entrywise ``q``-power."""
    conj = _conj_table(G.field, G.q)
    return kernels.matmul_batch(G.elements, conj[G.elements], G.field.tables)


def twisted_counts(n: int, q: int) -> Counter:
    G = enumerate_unitary(n, q)
    return Counter(classify_batch(twisted_products(G), q))


def symmetric_count(n: int, q: int) -> int:
    G = enumerate_unitary(n, q)
    return int(np.sum(np.all(G.elements == _transpose(G.elements), axis=(1, 2))))


def class_sizes_U(n: int, q: int) -> Counter:
    G = enumerate_unitary(n, q)
    return Counter(classify_batch(G.elements, q))


def commuting_count(elements: np.ndarray, g: np.ndarray, tables) -> int:
    """Size of the centralizer of ``g`` inside the listed group."""
    gb = np.broadcast_to(g, elements.shape)
    return int(np.sum(np.all(kernels.matmul_batch(gb, elements, tables)
                             == kernels.matmul_batch(elements, gb, tables), axis=(1, 2))))


# ---- symplectic conjugacy classes ----

def _keys(A: np.ndarray, base: int) -> np.ndarray:
    flat = A.reshape(len(A), -1)
    w = base ** np.arange(flat.shape[1], dtype=np.int64)
    return flat @ w


def transvections(n2: int, q: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs ``(T, T^-1)`` for ``x -> x + (v^T J x) v`` over every nonzero ``v``."""
    F = field_for(q)
    add, mul, neg, _ = F.tables
    J = symplectic_form(n2, q)
    out = []
    for v in _all_vectors(F.size, n2)[1:]:
        vJ = _dot(F.tables, v[None, :], J.T)  # row vector v^T J
        outer = mul[v[:, None], vJ[None, :]]
        eye = np.eye(n2, dtype=np.int64)
        out.append((add[eye, outer], add[eye, neg[outer]]))
    return out


def sp_conjugacy_labels(G: MatrixGroupSp) -> np.ndarray:
    """Class representative index for every element, by closing under transvection conjugation."""
    tables = G.field.tables
    keys = _keys(G.elements, G.field.size)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    perms = []
    for T, Tinv in transvections(G.n2, G.q):
        if not is_symplectic(T[None], G.q)[0]:
            raise ConsistencyError("transvection is not symplectic")
        conj = kernels.matmul_batch(kernels.matmul_batch(np.broadcast_to(T, G.elements.shape),
                                                         G.elements, tables),
                                    np.broadcast_to(Tinv, G.elements.shape), tables)
        ck = _keys(conj, G.field.size)
        pos = np.searchsorted(sorted_keys, ck)
        if np.any(sorted_keys[np.minimum(pos, len(keys) - 1)] != ck):
            raise ConsistencyError("conjugate fell outside the enumerated group")
        perms.append(order[pos])
    labels = np.arange(len(keys))
    while True:
        new = labels.copy()
        for p in perms:
            np.minimum(new, new[p], out=new)
            np.minimum.at(new, p, labels)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def sp_class_sizes(n2: int, q: int) -> list[int]:
    labels = sp_conjugacy_labels(enumerate_symplectic(n2, q))
    return sorted(Counter(labels.tolist()).values())


def predicted_sp_class_sizes(n2: int, q: int) -> list[int]:
    order = group_order("Sp", n2, q)
    return sorted(order // centralizer_Sp(c) for c in enumerate_classes_Sp(n2, q))


# ---- checks ----

def _row(c: ClassU, expected, observed) -> dict:
    return {"class": c.to_json(), "expected": str(expected), "observed": str(observed)}


def _compare(classes, observed: Counter, expected_fn) -> tuple[int, list]:
    mismatches = []
    seen = set()
    for c in classes:
        seen.add(c)
        exp, obs = expected_fn(c), observed.get(c, 0)
        if exp != obs:
            mismatches.append(_row(c, exp, obs))
    for c in observed:
        if c not in seen:
            mismatches.append(_row(c, 0, observed[c]))
    return len(seen), mismatches


def check_induced(n: int, q: int) -> dict:
    """Sp elements per unitary class against ``perm_char`` on ``U(2n)``."""
    n2 = 2 * n
    counts = induced_counts(n2, q)
    sp = group_order("Sp", n2, q)
    # count = perm_char * |Sp| / a_c
    k, bad = _compare(enumerate_classes_U(n2, q), counts,
                      lambda c: Fraction(perm_char(c) * sp, centralizer_U(c)))
    return {"check": "induced", "q": q, "n": n, "checked": k, "mismatches": bad}


def check_twisted(n: int, q: int) -> dict:
    counts = twisted_counts(n, q)
    order = group_order("U", n, q)
    k, bad = _compare(enumerate_classes_U(n, q), counts,
                      lambda c: Fraction(full_sum(c) * order, centralizer_U(c)))
    return {"check": "twisted", "q": q, "n": n, "checked": k, "mismatches": bad}


def check_symmetric(n: int, q: int) -> dict:
    from .charsums import degree_sum

    exp, obs = degree_sum(n, q), symmetric_count(n, q)
    bad = [] if exp == obs else [{"expected": str(exp), "observed": str(obs)}]
    return {"check": "symmetric", "q": q, "n": n, "checked": 1, "mismatches": bad}


def check_classeq(n: int, q: int) -> dict:
    sizes = class_sizes_U(n, q)
    order = group_order("U", n, q)
    k, bad = _compare(enumerate_classes_U(n, q), sizes, lambda c: order // centralizer_U(c))
    return {"check": "classeq", "q": q, "n": n, "checked": k, "mismatches": bad}


def check_spcent(n: int, q: int) -> dict:
    n2 = 2 * n
    exp, obs = predicted_sp_class_sizes(n2, q), sp_class_sizes(n2, q)
    bad = [] if exp == obs else [{"expected": [str(x) for x in exp], "observed": [str(x) for x in obs]}]
    return {"check": "spcent", "q": q, "n": n, "checked": len(exp), "mismatches": bad}


def run_check(which: str, n: int, q: int) -> dict:
    fn = {"induced": check_induced, "twisted": check_twisted, "symmetric": check_symmetric,
          "classeq": check_classeq, "spcent": check_spcent}.get(which)
    if fn is None:
        raise ValueError(f"unknown check {which!r}; expected one of {', '.join(CHECKS)}")
    return fn(n, q)
