"""Truncated symmetric polynomials with Laurent-in-t coefficients.

A ``SymPoly`` stores coefficients in the monomial symmetric basis.  Products
and series go through ``MPoly``, an explicit polynomial in ``x_1..x_n``
truncated at a total degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Mapping

from ..exactnum import ONE, LaurentPoly
from ..partitions import Partition, enumerate_partitions

MAX_NVARS = 8


class FeasibilityError(ValueError):
    """Requested caps are beyond what the engine handles."""


class TruncationError(ValueError):
    """A symmetric polynomial cannot be expanded without losing information."""


class MPoly:
    """Polynomial in ``nvars`` variables, ``{exponent tuple: LaurentPoly}``, truncated at ``cap``."""

    __slots__ = ("nvars", "cap", "terms")

    def __init__(self, nvars: int, cap: int, terms: Mapping[tuple, LaurentPoly] | None = None):
        self.nvars = nvars
        self.cap = cap
        self.terms: dict[tuple, LaurentPoly] = {}
        for e, c in (terms or {}).items():
            if sum(e) <= cap and not c.is_zero():
                self.terms[tuple(e)] = c

    @classmethod
    def one(cls, nvars: int, cap: int) -> "MPoly":
        return cls(nvars, cap, {(0,) * nvars: ONE})

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(self.nvars, min(self.cap, other.cap), out)

    def __mul__(self, other: "MPoly") -> "MPoly":
        cap = min(self.cap, other.cap)
        out: dict[tuple, LaurentPoly] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return MPoly(self.nvars, cap, out)

    def scale(self, c: LaurentPoly) -> "MPoly":
        return MPoly(self.nvars, self.cap, {e: v * c for e, v in self.terms.items()})


def monomial_exponents(shape: Partition, nvars: int) -> set[tuple]:
    padded = tuple(shape) + (0,) * (nvars - len(shape))
    return set(permutations(padded))


@dataclass(frozen=True)
class SymPoly:
    """Symmetric polynomial in the monomial basis, shapes of length <= nvars and size <= cap."""

    nvars: int
    cap: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for shape, c in dict(self.terms).items():
            shape = Partition(shape)
            if len(shape) > self.nvars:
                raise TruncationError(f"shape {list(shape)} has more than {self.nvars} parts")
            if shape.size > self.cap:
                continue
            c = c if isinstance(c, LaurentPoly) else LaurentPoly(c)
            if not c.is_zero():
                clean[shape] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: (kv[0].size, kv[0]))))

    def coeff(self, shape) -> LaurentPoly:
        return self.terms.get(Partition(shape), LaurentPoly())

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out[s] + c if s in out else c
        return SymPoly(self.nvars, min(self.cap, other.cap), out)

    def __neg__(self):
        return SymPoly(self.nvars, self.cap, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "SymPoly":
        c = c if isinstance(c, LaurentPoly) else LaurentPoly(c)
        return SymPoly(self.nvars, self.cap, {s: v * c for s, v in self.terms.items()})

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        cap = min(self.cap, other.cap)
        return SymPoly.from_mpoly(self.to_mpoly(cap) * other.to_mpoly(cap))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SymPoly) and self.nvars == other.nvars and self.terms == other.terms

    def to_mpoly(self, cap: int | None = None) -> MPoly:
        cap = self.cap if cap is None else cap
        out = {}
        for shape, c in self.terms.items():
            for e in monomial_exponents(shape, self.nvars):
                out[e] = c
        return MPoly(self.nvars, cap, out)

    @classmethod
    def from_mpoly(cls, f: MPoly, check: bool = True) -> "SymPoly":
        out = {}
        for e, c in f.terms.items():
            shape = tuple(sorted(e, reverse=True))
            if shape == e or not check:
                out[Partition(p for p in shape if p)] = c
        sp = cls(f.nvars, f.cap, out)
        if check:
            for e, c in f.terms.items():
                if sp.coeff(tuple(p for p in sorted(e, reverse=True) if p)) != c:
                    raise ValueError("polynomial is not symmetric")
        return sp

    def homogeneous_part(self, d: int) -> "SymPoly":
        return SymPoly(self.nvars, self.cap, {s: c for s, c in self.terms.items() if s.size == d})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*m{list(s)}" for s, c in self.terms.items())


def shapes(nvars: int, cap: int) -> Iterator[Partition]:
    for d in range(cap + 1):
        for lam in enumerate_partitions(d, nvars):
            yield lam


def horizontal_strip_removals(mu: Partition, k: int) -> list[Partition]:
    """Partitions ``inner`` with ``mu / inner`` a horizontal strip of ``k`` cells."""
    out = []

    def rec(i, left, cur):
        if i == len(mu):
            if left == 0:
                out.append(Partition(p for p in cur if p))
            return
        below = mu[i + 1] if i + 1 < len(mu) else 0
        for take in range(min(left, mu[i] - below) + 1):
            rec(i + 1, left - take, cur + [mu[i] - take])

    rec(0, k, [])
    return out


@lru_cache(maxsize=None)
def kostka(mu: Partition, nu: Partition) -> int:
    """Number of semistandard tableaux of shape ``mu`` and content ``nu``."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.size != nu.size:
        return 0
    if not nu:
        return 1
    rest = Partition(nu[:-1])
    return sum(kostka(inner, rest) for inner in horizontal_strip_removals(mu, nu[-1]))


def schur(mu: Partition, nvars: int, cap: int | None = None) -> SymPoly:
    """Schur polynomial via Kostka numbers."""
    mu = Partition(mu)
    cap = mu.size if cap is None else cap
    if len(mu) > nvars:
        return SymPoly(nvars, cap, {})
    return SymPoly(nvars, cap, {nu: kostka(mu, nu) for nu in enumerate_partitions(mu.size, nvars)})


def _t_factorial(m: int) -> LaurentPoly:
    out = ONE
    for j in range(1, m + 1):
        out = out * LaurentPoly({i: 1 for i in range(j)})
    return out


def _perm_sign(seq) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] < s[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _hl_P_cached(lam: Partition, nvars: int) -> SymPoly:
    n = nvars
    cap = lam.size
    if len(lam) > n:
        return SymPoly(n, cap, {})
    # F = x^lam prod_{i<j} (x_i - t x_j), expanded exactly
    padded = tuple(lam) + (0,) * (n - len(lam))
    terms: dict[tuple, LaurentPoly] = {padded: ONE}
    neg_t = LaurentPoly({1: -1})
    for i in range(n):
        for j in range(i + 1, n):
            nxt: dict[tuple, LaurentPoly] = {}
            for e, c in terms.items():
                ei = list(e)
                ei[i] += 1
                ei = tuple(ei)
                nxt[ei] = nxt[ei] + c if ei in nxt else c
                ej = list(e)
                ej[j] += 1
                ej = tuple(ej)
                cj = c * neg_t
                nxt[ej] = nxt[ej] + cj if ej in nxt else cj
            terms = {e: c for e, c in nxt.items() if not c.is_zero()}
    # antisymmetrize: coefficients on strictly decreasing exponent vectors
    alt: dict[tuple, LaurentPoly] = {}
    for e, c in terms.items():
        if len(set(e)) < n:
            continue
        srt = tuple(sorted(e, reverse=True))
        cc = c if _perm_sign(e) > 0 else -c
        alt[srt] = alt[srt] + cc if srt in alt else cc
    mult = lam.multiplicities
    mult[0] = n - len(lam)
    v = ONE
    for m in mult.values():
        v = v * _t_factorial(m)
    out = SymPoly(n, cap, {})
    delta = tuple(range(n - 1, -1, -1))
    for alpha, c in alt.items():
        if c.is_zero():
            continue
        mu = Partition(a - d for a, d in zip(alpha, delta) if a - d)
        coef = c.exact_div(v)
        out = out + schur(mu, n, cap).scale(coef)
    return out


def hl_P(lam: Partition, nvars: int, degree_cap: int | None = None) -> SymPoly:
    """Hall-Littlewood ``P_lam`` in ``nvars`` variables."""
    lam = Partition(lam)
    if nvars > MAX_NVARS:
        raise FeasibilityError(f"nvars={nvars} exceeds the supported maximum {MAX_NVARS}")
    cap = lam.size if degree_cap is None else degree_cap
    if lam.size > cap:
        raise FeasibilityError(f"|lambda|={lam.size} exceeds the degree cap {cap}")
    p = _hl_P_cached(lam, nvars)
    return SymPoly(nvars, cap, p.terms)


def to_P_basis(f: SymPoly) -> dict[Partition, LaurentPoly]:
    """Coefficients ``c`` with ``f = sum c_lam P_lam`` by elimination from the lex-largest shape."""
    if any(len(s) > f.nvars for s in f.terms):
        raise TruncationError("shapes longer than nvars cannot be expanded")
    rest = f
    out: dict[Partition, LaurentPoly] = {}
    while not rest.is_zero():
        top = max(rest.terms, key=lambda s: (s.size, tuple(s)))
        c = rest.terms[top]
        out[top] = c
        rest = rest - hl_P(top, f.nvars, f.cap).scale(c)
    return dict(sorted(out.items(), key=lambda kv: (kv[0].size, kv[0])))


def from_P_basis(coeffs: Mapping[Partition, LaurentPoly], nvars: int, cap: int) -> SymPoly:
    out = SymPoly(nvars, cap, {})
    for lam, c in coeffs.items():
        if len(lam) <= nvars and Partition(lam).size <= cap:
            out = out + hl_P(lam, nvars, cap).scale(c)
    return out


def elementary(k: int, nvars: int, cap: int) -> SymPoly:
    if k > nvars:
        return SymPoly(nvars, cap, {})
    return SymPoly(nvars, cap, {Partition([1] * k): ONE})


def complete_sum(nvars: int, cap: int) -> SymPoly:
    """``sum_m h_m`` truncated: every monomial with coefficient 1."""
    return SymPoly(nvars, cap, {lam: ONE for lam in shapes(nvars, cap)})
