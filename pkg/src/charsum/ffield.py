"""Small finite fields, polynomials over them, and Frobenius orbit sets.

Elements of ``F_{p^k}`` are ints ``sum c_i p^i`` where ``c_i`` are the
coefficients of a polynomial in a fixed root of the field's modulus.
Orbits are labelled by monic minimal polynomials, stored low degree first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SIZE_LIMIT = 1 << 20
TABLE_LIMIT = 1 << 10

Poly = tuple  # tuple of field ints, low degree first, monic unless stated


class SizeLimitError(ValueError):
    """A requested object exceeds the configured enumeration limit."""


def size_limit() -> int:
    env = os.environ.get("CHARSUM_SIZE_LIMIT")
    return int(env) if env else DEFAULT_SIZE_LIMIT


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """``(p, e)`` with ``q = p**e``; ``ValueError`` if ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# ---- polynomials over F_p given as digit lists, used only to build fields ----

def _fp_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    out = prod[:k] + [0] * max(0, k - len(prod))
    return out


def _fp_divides(f: Sequence[int], g: Sequence[int], p: int) -> bool:
    """Does the monic ``g`` divide ``f`` over F_p."""
    r = list(f)
    dg = len(g) - 1
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d]
        if c:
            for j in range(dg + 1):
                r[d - dg + j] = (r[d - dg + j] - c * g[j]) % p
    return not any(r[:dg])


def _fp_irreducible(f: Sequence[int], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if _fp_divides(f, list(low) + [1], p):
                return False
    return True


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, r = divmod(a, p)
        out.append(r)
    return out


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The field ``F_{p^k}`` in a deterministic representation."""

    p: int
    k: int
    modulus: tuple
    gen: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.p ** self.k

    @property
    def order(self) -> int:
        return self.p ** self.k - 1

    @property
    def minus_one(self) -> int:
        return self.p - 1 if self.p != 2 else 1

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.k)

    def from_digits(self, ds: Sequence[int]) -> int:
        out = 0
        for c in reversed(list(ds)):
            out = out * self.p + int(c) % self.p
        return out

    def add(self, a: int, b: int) -> int:
        t = self.tables
        if t is not None:
            return int(t[0][a, b])
        p = self.p
        out, mult = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a nonpositive power")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def frob(self, a: int, times: int = 1) -> int:
        """``a ** (p ** times)``."""
        return self.pow(a, pow(self.p, times % self.k if self.k else 0))

    def elem_order(self, a: int) -> int:
        from math import gcd
        return self.order // gcd(int(self.log[a]), self.order)

    @property
    def tables(self):
        """``(add, mul, neg, inv)`` lookup tables when the field is small, else ``None``."""
        return _tables(self)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"


@lru_cache(maxsize=None)
def _tables(ctx: FieldCtx):
    Q = ctx.size
    if Q > TABLE_LIMIT:
        return None
    p, k = ctx.p, ctx.k
    dig = np.array([_digits(a, p, k) for a in range(Q)], dtype=np.int64)
    weights = p ** np.arange(k, dtype=np.int64)
    add = (((dig[:, None, :] + dig[None, :, :]) % p) @ weights).astype(np.int64)
    neg = (((-dig) % p) @ weights).astype(np.int64)
    logs = ctx.log
    mul = np.zeros((Q, Q), dtype=np.int64)
    nz = np.arange(1, Q)
    mul[1:, 1:] = ctx.exp[(logs[nz][:, None] + logs[nz][None, :]) % ctx.order]
    inv = np.zeros(Q, dtype=np.int64)
    inv[1:] = ctx.exp[(-logs[nz]) % ctx.order]
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return add, mul, neg, inv


def _find_modulus(p: int, k: int) -> tuple:
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        if low[0] == 0:
            continue
        f = list(low) + [1]
        if _fp_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldCtx:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError("degree must be positive")
    Q = p ** k
    if Q > size_limit():
        raise SizeLimitError(f"field of size {Q} exceeds the limit {size_limit()}")
    mod = _find_modulus(p, k)
    order = Q - 1
    fac = prime_factors(order) if order > 1 else []

    def mulmod(a, b):
        if k == 1:
            return [(a[0] * b[0]) % p]
        return _fp_mulmod(a, b, mod, p)

    def powmod(a, e):
        out = [1] + [0] * (k - 1)
        base = a
        while e:
            if e & 1:
                out = mulmod(out, base)
            base = mulmod(base, base)
            e >>= 1
        return out

    one = [1] + [0] * (k - 1)
    gen = None
    for cand in range(1, Q):
        d = _digits(cand, p, k)
        if all(powmod(d, order // r) != one for r in fac):
            gen = cand
            break
    if gen is None:  # only F_2: the group is trivial
        gen = 1

    # exp table by repeated doubling: rows g^0..g^(m-1) times the matrix of g^m
    def mult_matrix(c):
        rows = []
        for j in range(k):
            xj = [0] * k
            xj[j] = 1
            rows.append(mulmod(xj, c) if k > 1 else [(c[0]) % p])
        return np.array(rows, dtype=np.int64)

    D = np.array([one], dtype=np.int64)
    g_m = _digits(gen, p, k)
    while D.shape[0] < order:
        M = mult_matrix(g_m)
        D = np.concatenate([D, (D @ M) % p])
        g_m = mulmod(g_m, g_m)
    weights = p ** np.arange(k, dtype=np.int64)
    exp = (D[:order] @ weights).astype(np.int64)
    log = np.full(Q, -1, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    if order and (log[1:] < 0).any():
        raise AssertionError("generator does not have full order")
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(p, k, mod, gen, exp, log)


def field_for(q: int, k: int = 1) -> FieldCtx:
    """``F_{q^k}`` for a prime power ``q``."""
    p, e = prime_power(q)
    return make_field(p, e * k)


@lru_cache(maxsize=None)
def embedding(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Array mapping elements of ``small`` into ``big``.

    The image of the modulus root is the root in ``big`` of least discrete
    logarithm, so the choice is deterministic.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError("no embedding between these fields")
    if small.k == big.k or small.k == 1:
        # prime field constants have the same encoding everywhere
        return np.arange(small.size, dtype=np.int64)
    mod = [int(c) for c in small.modulus]
    beta = None
    for e in range(big.order):
        b = int(big.exp[e])
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, b), c)
        if acc == 0:
            beta = b
            break
    if beta is None:
        raise AssertionError("modulus has no root in the extension")
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], beta))
    out = np.zeros(small.size, dtype=np.int64)
    for a in range(small.size):
        acc = 0
        for c, bp in zip(small.digits(a), powers):
            if c:
                acc = big.add(acc, big.mul(c, bp))
        out[a] = acc
    out.setflags(write=False)
    return out


def restrict_map(small: FieldCtx, big: FieldCtx) -> dict[int, int]:
    emb = embedding(small, big)
    return {int(b): a for a, b in enumerate(emb)}


# ---- polynomials over a FieldCtx ----

def poly_trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_mul(F: FieldCtx, f: Sequence[int], g: Sequence[int]) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out)


def poly_add(F: FieldCtx, f: Sequence[int], g: Sequence[int]) -> Poly:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return poly_trim(F.add(a, b) for a, b in zip(f, g))


def poly_divmod(F: FieldCtx, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(f))
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    quot = [0] * max(0, len(r) - dg)
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d]
        if c:
            c = F.mul(c, lead_inv)
            quot[d - dg] = c
            for j in range(dg + 1):
                r[d - dg + j] = F.sub(r[d - dg + j], F.mul(c, g[j]))
    return poly_trim(quot), poly_trim(r[:dg])


def poly_pow(F: FieldCtx, f: Sequence[int], e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = poly_mul(F, out, f)
    return out


def poly_eval(F: FieldCtx, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_frob(F: FieldCtx, f: Sequence[int], times: int) -> Poly:
    """Raise every coefficient to the ``p**times`` power."""
    return tuple(F.frob(c, times) for c in f)


def poly_star(F: FieldCtx, f: Sequence[int]) -> Poly:
    """Monic polynomial whose roots are the inverses of the roots of ``f``."""
    if not f or f[0] == 0:
        raise ValueError("star needs a nonzero constant term")
    rev = list(reversed(f))
    c = F.inv(rev[-1])
    return tuple(F.mul(a, c) for a in rev)


def poly_map(f: Sequence[int], table) -> Poly:
    return tuple(int(table[c]) for c in f)


def monic_polys(F: FieldCtx, d: int) -> Iterable[Poly]:
    for low in product(range(F.size), repeat=d):
        yield tuple(low) + (1,)


@lru_cache(maxsize=None)
def irreducibles(F: FieldCtx, d: int) -> tuple[Poly, ...]:
    """Monic irreducibles of degree ``d`` with nonzero constant term, sorted."""
    if F.size ** d > size_limit():
        raise SizeLimitError(f"{F.size}^{d} candidate polynomials exceed the limit")
    reducible: set[Poly] = set()
    for a in range(1, d // 2 + 1):
        small = list(irreducibles(F, a)) + ([(0, 1)] if a == 1 else [])
        for f in small:
            for g in monic_polys(F, d - a):
                reducible.add(poly_mul(F, f, g))
    out = [f for f in monic_polys(F, d) if f[0] != 0 and f not in reducible]
    return tuple(sorted(out, key=_poly_key))


def _poly_key(f: Sequence[int]):
    return (len(f), tuple(reversed(f)))


def factor_poly(F: FieldCtx, f: Sequence[int]) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial with nonzero constant term by trial division."""
    f = poly_trim(f)
    if not f or f[-1] != 1:
        raise ValueError("factor_poly expects a monic polynomial")
    if f[0] == 0:
        raise ValueError("factor_poly expects a nonzero constant term")
    out = []
    rest: Poly = f
    d = 1
    while len(rest) > 1:
        if 2 * d > len(rest) - 1:
            out.append((rest, 1))
            break
        for g in irreducibles(F, d):
            e = 0
            while True:
                qt, r = poly_divmod(F, rest, g)
                if r:
                    break
                rest = qt
                e += 1
            if e:
                out.append((g, e))
        d += 1
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: _poly_key(ge[0]))


# ---- orbits ----

PHI_K = "PhiK"
PHI_TILDE2 = "PhiTilde2"
PHI_STAR = "PhiStar"


@dataclass(frozen=True)
class Orbit:
    """Frobenius orbit labelled by its monic minimal polynomial.

    ``k`` is the degree of the coefficient field over ``F_q``: 1 for ``Phi``
    and ``PhiStar`` orbits, 2 for ``PhiTilde2``, ``k`` for ``PhiK``.
    ``parts`` records the component polynomials of a fused orbit.
    """

    q: int
    kind: str
    k: int
    minpoly: tuple
    parts: tuple = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.minpoly) - 1

    @property
    def field(self) -> FieldCtx:
        return field_for(self.q, self.k)

    def is_one(self) -> bool:
        return self.minpoly == (self.field.minus_one, 1)

    def is_minus_one(self) -> bool:
        return self.minpoly == (1, 1)

    def is_pm_one(self) -> bool:
        return self.is_one() or self.is_minus_one()

    def sort_key(self):
        return (self.size, not self.is_one(), not self.is_minus_one(), tuple(reversed(self.minpoly)))

    def __lt__(self, other: "Orbit"):
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        if self.is_one():
            return "1"
        if self.is_minus_one():
            return "-1"
        return "[" + ",".join(str(c) for c in self.minpoly) + "]"

    def to_json(self) -> dict:
        F = self.field
        return {"q": self.q, "kind": self.kind,
                "minpoly": [F.digits(c) for c in self.minpoly]}

    def __repr__(self):
        return f"Orbit(q={self.q}, {self.kind}, {self.label()})"


def one_orbit(q: int, kind: str = PHI_K, k: int = 1) -> Orbit:
    F = field_for(q, k)
    return Orbit(q, kind, k, (F.minus_one, 1), ((F.minus_one, 1),))


def minus_one_orbit(q: int, kind: str = PHI_K, k: int = 1) -> Orbit:
    return Orbit(q, kind, k, (1, 1), ((1, 1),))


def q_frob_poly(F: FieldCtx, f: Sequence[int], q: int) -> Poly:
    """Coefficients raised to the ``q``-th power."""
    p, e = prime_power(q)
    return poly_frob(F, f, e)


def tilde_poly(F: FieldCtx, f: Sequence[int], q: int) -> Poly:
    """Roots ``s -> s**(-q)``."""
    return poly_star(F, q_frob_poly(F, f, q))


def _k_orbit(q: int, k: int, f: Poly, kind: str = PHI_K) -> Orbit:
    return Orbit(q, kind, k, tuple(f), (tuple(f),))


@lru_cache(maxsize=None)
def _tilde2_orbits(q: int, max_size: int) -> tuple[Orbit, ...]:
    F = field_for(q, 2)
    out = []
    for d in range(1, max_size + 1):
        for v in irreducibles(F, d):
            vt = tilde_poly(F, v, q)
            if vt == v:
                out.append(Orbit(q, PHI_TILDE2, 2, v, (v,)))
            elif 2 * d <= max_size and _poly_key(v) < _poly_key(vt):
                out.append(Orbit(q, PHI_TILDE2, 2, poly_mul(F, v, vt), (v, vt)))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _star_orbits(q: int, max_size: int) -> tuple[Orbit, ...]:
    F = field_for(q, 1)
    out = []
    for d in range(1, max_size + 1):
        for r in irreducibles(F, d):
            rs = poly_star(F, r)
            if rs == r:
                out.append(Orbit(q, PHI_STAR, 1, r, (r,)))
            elif 2 * d <= max_size and _poly_key(r) < _poly_key(rs):
                out.append(Orbit(q, PHI_STAR, 1, poly_mul(F, r, rs), (r, rs)))
    return tuple(sorted(out))


def enumerate_orbits(q: int, kind: str, max_size: int, k: int = 1) -> list[Orbit]:
    """All orbits of ``kind`` with size at most ``max_size`` in canonical order."""
    prime_power(q)
    if kind == PHI_K:
        F = field_for(q, k)
        return sorted(_k_orbit(q, k, f) for d in range(1, max_size + 1) for f in irreducibles(F, d))
    if kind == PHI_TILDE2:
        return list(_tilde2_orbits(q, max_size))
    if kind == PHI_STAR:
        return list(_star_orbits(q, max_size))
    raise ValueError(f"unknown orbit kind {kind!r}")


@dataclass(frozen=True)
class OrbitMaps:
    q_power: Orbit
    star: Orbit
    tilde: Orbit
    star_fixed: bool
    tilde_fixed: bool


def _image(s: Orbit, fn) -> Orbit:
    """Orbit of the image of ``s`` under a root map given on polynomials by ``fn``."""
    if s.kind == PHI_K:
        return _k_orbit(s.q, s.k, fn(s.minpoly))
    if s.kind == PHI_TILDE2:
        return tilde2_orbit_of(s.q, fn(s.parts[0]))
    return star_orbit_of(s.q, fn(s.parts[0]))


def orbit_maps(s: Orbit) -> OrbitMaps:
    F = s.field
    qp = _image(s, lambda f: q_frob_poly(F, f, s.q))
    st = _image(s, lambda f: poly_star(F, f))
    ti = _image(s, lambda f: tilde_poly(F, f, s.q))
    return OrbitMaps(qp, st, ti, st == s, ti == s)


def star_orbit(s: Orbit) -> Orbit:
    F = s.field
    return _image(s, lambda f: poly_star(F, f))


def tilde2_classification(s: Orbit) -> str:
    """Which of the four centralizer cases a ``PhiTilde2`` orbit other than +-1 falls in.

    ``odd``: a single orbit of odd size; ``pair``: fused, not star fixed;
    ``fixed_v``: fused, star fixed with ``v = v*``; ``fixed_vt``: fused, ``v = tilde(v)*``.
    """
    if s.kind != PHI_TILDE2:
        raise ValueError("expected a PhiTilde2 orbit")
    F = s.field
    if len(s.parts) == 1:
        if s.size % 2 == 0:
            raise AssertionError("tilde fixed orbit of even size")
        return "odd"
    if poly_star(F, s.minpoly) != s.minpoly:
        return "pair"
    v = s.parts[0]
    if poly_star(F, v) == v:
        return "fixed_v"
    return "fixed_vt"


def tilde2_orbit_of(q: int, v: Poly) -> Orbit:
    """The ``PhiTilde2`` orbit containing the ``Phi_2`` orbit with polynomial ``v``."""
    F = field_for(q, 2)
    vt = tilde_poly(F, v, q)
    if vt == v:
        return Orbit(q, PHI_TILDE2, 2, tuple(v), (tuple(v),))
    a, b = sorted([tuple(v), vt], key=_poly_key)
    return Orbit(q, PHI_TILDE2, 2, poly_mul(F, a, b), (a, b))


def star_orbit_of(q: int, r: Poly) -> Orbit:
    """The ``PhiStar`` orbit containing the ``Phi`` orbit with polynomial ``r``."""
    F = field_for(q, 1)
    rs = poly_star(F, r)
    if rs == tuple(r):
        return Orbit(q, PHI_STAR, 1, tuple(r), (tuple(r),))
    a, b = sorted([tuple(r), rs], key=_poly_key)
    return Orbit(q, PHI_STAR, 1, poly_mul(F, a, b), (a, b))


def phi_to_tilde2(r: Orbit) -> list[Orbit]:
    """``PhiTilde2`` orbits whose underlying points form the ``Phi`` orbit ``r``.

    An odd-degree ``r`` stays irreducible over ``F_{q^2}``; an even one splits
    into two conjugate factors which may land in one or two fused orbits.
    """
    if r.kind != PHI_K or r.k != 1:
        raise ValueError("expected a Phi orbit over F_q")
    small, big = r.field, field_for(r.q, 2)
    f = poly_map(r.minpoly, embedding(small, big))
    seen = []
    for g, e in factor_poly(big, f):
        o = tilde2_orbit_of(r.q, g)
        if o not in seen:
            seen.append(o)
    return seen


def orbit_from_json(obj, q: int, kind: str = PHI_TILDE2) -> Orbit:
    k = 2 if kind == PHI_TILDE2 else 1
    if isinstance(obj, str):
        if obj == "1":
            return one_orbit(q, kind, k)
        if obj == "-1":
            return minus_one_orbit(q, kind, k)
        raise ValueError(f"unknown orbit shorthand {obj!r}")
    if isinstance(obj, dict):
        q = int(obj.get("q", q))
        kind = obj.get("kind", kind)
        k = 2 if kind == PHI_TILDE2 else 1
        coeffs = obj["minpoly"]
    else:
        coeffs = obj
    F = field_for(q, k)
    f = tuple(F.from_digits(c) if isinstance(c, (list, tuple)) else int(c) for c in coeffs)
    if kind == PHI_TILDE2:
        for o in _tilde2_orbits(q, len(f) - 1):
            if o.minpoly == f:
                return o
        raise ValueError(f"{list(coeffs)} is not a PhiTilde2 orbit label over q={q}")
    if kind == PHI_K and f in irreducibles(F, len(f) - 1):
        return _k_orbit(q, k, f)
    raise ValueError(f"{list(coeffs)} is not an orbit label")
