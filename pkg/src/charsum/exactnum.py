"""Exact coefficient arithmetic.

Sparse integer Laurent polynomials in one indeterminate ``t`` and formal
products carrying half powers of ``q`` and square roots of group orders.
Nothing in here ever touches floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

Rational = Union[int, Fraction]


class IrrationalProduct(ArithmeticError):
    """A formal product still carries an unpaired square root."""


class LaurentPoly:
    """Integer Laurent polynomial in ``t`` stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        if coeffs is None:
            items: Iterable[tuple[int, int]] = ()
        elif isinstance(coeffs, int):
            items = ((0, coeffs),)
        elif isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if v:
                c[int(e)] = c.get(int(e), 0) + int(v)
        self._c = {e: v for e, v in sorted(c.items()) if v}
        self._hash = None

    @classmethod
    def t(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "LaurentPoly":
        return cls({power: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def min_degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return min(self._c)

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    @staticmethod
    def _lift(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be inverted")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * k: v ** (-k)})
        out = LaurentPoly(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def invert_t(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Substitute ``t -> t**k``."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def evaluate(self, r: Rational) -> Fraction:
        return laurent_eval(self, r)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; ``ValueError`` if it leaves a remainder."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        lo_n, lo_d = self.min_degree(), other.min_degree()
        rem = {e - lo_n: v for e, v in self._c.items()}
        den = {e - lo_d: v for e, v in other._c.items()}
        dtop = max(den)
        lead = den[dtop]
        quot: dict[int, int] = {}
        while rem and max(rem) >= dtop:
            top = max(rem)
            c, r = divmod(rem[top], lead)
            if r:
                raise ValueError("inexact Laurent division")
            e = top - dtop
            quot[e] = c
            for de, dv in den.items():
                v = rem.get(e + de, 0) - c * dv
                if v:
                    rem[e + de] = v
                else:
                    rem.pop(e + de, None)
        if rem:
            raise ValueError("inexact Laurent division")
        return LaurentPoly(quot).shift(lo_n - lo_d)

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for e, v in self._c.items():
            mag = abs(v)
            if e == 0:
                term = str(mag)
            else:
                term = f"t^{e}" if mag == 1 else f"{mag}*t^{e}"
            sign = "-" if v < 0 else "+"
            out.append((sign, term))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            s += f" {sign} {term}"
        return s

    def to_json(self) -> list[list]:
        return [[e, str(v)] for e, v in self._c.items()]


def laurent_eval(p: LaurentPoly, r: Rational) -> Fraction:
    """Exact value of ``p`` at the rational ``r``."""
    r = Fraction(r)
    if r == 0:
        if any(e < 0 for e in p._c):
            raise ZeroDivisionError("negative power of t evaluated at 0")
        return Fraction(p.coeff(0))
    return sum((Fraction(v) * r ** e for e, v in p._c.items()), Fraction(0))


ONE = LaurentPoly(1)
T = LaurentPoly.t()


class GroupToken(NamedTuple):
    """Order of a classical group ``kind(dim)`` over the parameter ``q**qexp``."""

    kind: str
    dim: int
    qexp: int


@dataclass(frozen=True)
class FactorProduct:
    """Formal product ``rational * q**(q_half/2) * prod token**(mult/2)``."""

    rational: Fraction = Fraction(1)
    q_half: int = 0
    tokens: tuple[tuple[GroupToken, int], ...] = field(default=())

    @classmethod
    def make(cls, rational: Rational = 1, q_half: int = 0,
             tokens: Iterable[tuple[GroupToken, int]] = ()) -> "FactorProduct":
        acc: Counter = Counter()
        for tok, mult in tokens:
            acc[GroupToken(*tok)] += mult
        merged = tuple(sorted((t, m) for t, m in acc.items() if m))
        return cls(Fraction(rational), int(q_half), merged)

    def __mul__(self, other: "FactorProduct | Rational") -> "FactorProduct":
        if isinstance(other, (int, Fraction)):
            return FactorProduct(self.rational * other, self.q_half, self.tokens)
        return FactorProduct.make(self.rational * other.rational,
                                  self.q_half + other.q_half,
                                  self.tokens + other.tokens)

    __rmul__ = __mul__

    def inverse(self) -> "FactorProduct":
        if self.rational == 0:
            raise ZeroDivisionError("inverse of a zero product")
        return FactorProduct(1 / self.rational, -self.q_half,
                             tuple((t, -m) for t, m in self.tokens))

    def __truediv__(self, other: "FactorProduct | Rational") -> "FactorProduct":
        if isinstance(other, (int, Fraction)):
            return FactorProduct(self.rational / other, self.q_half, self.tokens)
        return self * other.inverse()

    def __rtruediv__(self, other: Rational) -> "FactorProduct":
        return self.inverse() * other

    def resolve(self, q: int) -> Fraction:
        return resolve(self, q)


def resolve(f: FactorProduct, q: int) -> Fraction:
    """Expand every token at ``q`` and return the exact value of ``f``.

    Raises ``IrrationalProduct`` when a square root is left unpaired.
    """
    from .classes import group_order

    if f.q_half % 2:
        raise IrrationalProduct(f"odd half power of q remains: q^({f.q_half}/2)")
    value = Fraction(f.rational) * Fraction(q) ** (f.q_half // 2)
    for tok, mult in f.tokens:
        if mult % 2:
            raise IrrationalProduct(f"unpaired square root of |{tok.kind}({tok.dim}, q^{tok.qexp})|")
        value *= Fraction(group_order(tok.kind, tok.dim, q ** tok.qexp)) ** (mult // 2)
    return value


def int_to_str(n: int) -> str:
    return str(int(n))


def rational_to_str(r: Rational) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)
