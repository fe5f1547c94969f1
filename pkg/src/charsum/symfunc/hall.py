"""Hall polynomials by submodule counting and by Hall-Littlewood products."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .. import kernels
from ..exactnum import LaurentPoly
from ..ffield import field_for, is_prime, prime_power
from ..partitions import Partition, enumerate_partitions, partitions_up_to
from .sympoly import hl_P, to_P_basis

MAX_HALL_SIZE = 6
HALL_POINT_LIMIT = 1 << 20


class HallMismatch(AssertionError):
    """The two Hall polynomial computations disagree."""


def _code(conj: Partition, depth: int) -> int:
    parts = list(conj) + [0] * (depth - len(conj))
    return sum(p * 8 ** j for j, p in enumerate(parts))


@lru_cache(maxsize=None)
def _type_table(lam: Partition):
    """Small integer ids for every partition that can be a submodule or quotient type."""
    depth = lam[0] if lam else 0
    cands = [p for p in partitions_up_to(lam.size) if lam.contains(p)]
    code_id = np.zeros(8 ** max(depth, 1), dtype=np.int64)
    for i, p in enumerate(cands):
        code_id[_code(p.conjugate(), depth)] = i
    return cands, code_id


def _module_shift(lam: Partition) -> np.ndarray:
    """Matrix of T on row vectors of the module with basis e_{i,0..lam_i-1}, T e_{i,j} = e_{i,j+1}."""
    n = lam.size
    T = np.zeros((n, n), dtype=np.int64)
    pos = 0
    for part in lam:
        for j in range(part - 1):
            T[pos + j, pos + j + 1] = 1
        pos += part
    return T


@lru_cache(maxsize=None)
def submodule_type_counts(lam: Partition, q: int, k: int | None = None) -> dict:
    """``{(mu, nu): count}`` over submodules of the module of type ``lam`` over ``F_q[[T]]``.

    With ``k`` given only submodules of dimension ``k`` are enumerated.
    """
    lam = Partition(lam)
    n = lam.size
    if n > MAX_HALL_SIZE:
        raise ValueError(f"|lambda| = {n} exceeds the brute force limit {MAX_HALL_SIZE}")
    if q ** n > HALL_POINT_LIMIT:
        raise ValueError(f"q^|lambda| = {q ** n} is too large to enumerate")
    if n == 0:
        return {(Partition(), Partition()): 1}
    F = field_for(q)
    tables = F.tables
    depth = lam[0]
    T = _module_shift(lam)
    tpow = [np.eye(n, dtype=np.int64)]
    for _ in range(depth):
        tpow.append((tpow[-1] @ T) % 2)  # entries stay 0/1
    tpow = np.array(tpow)
    cands, code_id = _type_table(lam)
    counts = np.zeros((len(cands), len(cands)), dtype=np.int64)
    dims = range(n + 1) if k is None else [k]
    for dim in dims:
        if dim == 0:
            counts[cands.index(Partition()), cands.index(lam)] += 1
            continue
        for piv in combinations(range(n), dim):
            free_r, free_c = [], []
            pset = set(piv)
            for i, pc in enumerate(piv):
                for c in range(pc + 1, n):
                    if c not in pset:
                        free_r.append(i)
                        free_c.append(c)
            kernels.subspace_type_counts(piv, free_r, free_c, q, tpow, tables, code_id, counts)
    out = {}
    for i, j in zip(*np.nonzero(counts)):
        out[(cands[i], cands[j])] = int(counts[i, j])
    return out


def submodule_count(lam: Partition, mu: Partition, nu: Partition, q: int) -> int:
    """Submodules of type ``mu`` with quotient of type ``nu`` in the module of type ``lam``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size:
        return 0
    return submodule_type_counts(lam, q, mu.size).get((mu, nu), 0)


def prime_powers(limit: int):
    q = 2
    while q <= limit:
        try:
            prime_power(q)
            yield q
        except ValueError:
            pass
        q += 1


def _interpolate(points: list[tuple[int, int]]) -> LaurentPoly:
    """Integer polynomial through the points (Newton form, exact)."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for j in range(n):
        for i, b in enumerate(basis):
            poly[i] += coef[j] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[j] * b
        basis = nxt
    if any(c.denominator != 1 for c in poly):
        raise HallMismatch(f"interpolated Hall polynomial is not integral: {poly}")
    return LaurentPoly({i: int(c) for i, c in enumerate(poly)})


def degree_bound(lam: Partition, mu: Partition, nu: Partition) -> int:
    return Partition(lam).n_stat - Partition(mu).n_stat - Partition(nu).n_stat


@lru_cache(maxsize=None)
def hall_poly_interp(lam: Partition, mu: Partition, nu: Partition) -> LaurentPoly:
    """Hall polynomial by interpolating brute-force counts, with one extra validation point."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size:
        return LaurentPoly()
    if not lam.contains(mu) or not lam.contains(nu):
        return LaurentPoly()
    if not mu:
        return LaurentPoly(1 if nu == lam else 0)
    if not nu:
        return LaurentPoly(1 if mu == lam else 0)
    need = max(degree_bound(lam, mu, nu), 0) + 2
    qmax = int(round(HALL_POINT_LIMIT ** (1.0 / lam.size))) + 1
    qs = [q for q in prime_powers(qmax) if q ** lam.size <= HALL_POINT_LIMIT][:need]
    if len(qs) < need:
        raise ValueError(f"not enough sample fields to interpolate g^{list(lam)}_{list(mu)},{list(nu)}")
    pts = [(q, submodule_count(lam, mu, nu, q)) for q in qs]
    poly = _interpolate(pts[:-1])
    last_q, last_v = pts[-1]
    if poly.evaluate(last_q) != last_v:
        raise HallMismatch(f"degree bound violated for g^{list(lam)}_{list(mu)},{list(nu)}")
    return poly


@lru_cache(maxsize=None)
def _hlprod_expansion(mu: Partition, nu: Partition, nvars: int) -> dict:
    n = mu.size + nu.size
    prod = (hl_P(mu, nvars, n).scale(LaurentPoly.t(mu.n_stat))
            * hl_P(nu, nvars, n).scale(LaurentPoly.t(nu.n_stat)))
    return to_P_basis(prod)


def hall_poly_hlprod(lam: Partition, mu: Partition, nu: Partition) -> LaurentPoly:
    """Hall polynomial read off the P-expansion of ``t^n(mu) P_mu t^n(nu) P_nu``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if mu.size + nu.size != lam.size:
        return LaurentPoly()
    nvars = max(len(mu) + len(nu), len(lam), 1)
    c = _hlprod_expansion(mu, nu, nvars).get(lam, LaurentPoly())
    g = c.shift(-lam.n_stat).invert_t()
    if not g.is_zero() and g.min_degree() < 0:
        raise HallMismatch(f"extracted Hall coefficient is not a polynomial: {g}")
    return g


def hall_poly(lam: Partition, mu: Partition, nu: Partition, method: str = "both") -> LaurentPoly:
    if method == "interp":
        return hall_poly_interp(Partition(lam), Partition(mu), Partition(nu))
    if method == "hlprod":
        return hall_poly_hlprod(lam, mu, nu)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = hall_poly_interp(Partition(lam), Partition(mu), Partition(nu))
    b = hall_poly_hlprod(lam, mu, nu)
    if a != b:
        raise HallMismatch(f"g^{list(lam)}_{list(mu)},{list(nu)}: counting gives {a}, product gives {b}")
    return a


def hall_triples(max_size: int):
    for n in range(max_size + 1):
        for lam in enumerate_partitions(n):
            for k in range(n + 1):
                for mu in enumerate_partitions(k):
                    for nu in enumerate_partitions(n - k):
                        yield lam, mu, nu
