"""Character sums on unitary groups: Gelfand-Graev values, the permutation character
on symplectic cosets, the sum of all irreducible characters, and the Hall-polynomial
product that ties them together."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .classes import (ClassU, ConsistencyError, b_factor, centralizer_U, enumerate_classes_U,
                      group_order, unipotent_class)
from .exactnum import FactorProduct, IrrationalProduct
from .ffield import star_orbit
from .partitions import (Partition, PreconditionError, c_poly, enumerate_partitions,
                         even_mults_at_even_parts, even_mults_at_odd_parts)
from .symfunc.hall import hall_poly


def _require_odd(q: int):
    if q % 2 == 0:
        raise PreconditionError(f"q={q} must be odd")


def _star_symmetric(c: ClassU) -> bool:
    return all(c.part(star_orbit(s)) == lam for s, lam in c.items)


def _b_product(c: ClassU) -> FactorProduct:
    out = FactorProduct.make()
    for s, lam in c.items:
        out = out * b_factor(s, lam, c.q)
    return out


def _as_integer(val: Fraction, what: str) -> int:
    if val.denominator != 1 or val < 0:
        raise ConsistencyError(f"{what} evaluated to {val}")
    return int(val)


def _resolve(f: FactorProduct, q: int, what: str) -> Fraction:
    try:
        return f.resolve(q)
    except IrrationalProduct as exc:
        raise ConsistencyError(f"{what}: {exc}") from exc


# ---- closed forms ----

def gg_value(c: ClassU) -> int:
    """Gelfand-Graev character of ``U(n)`` at the class ``c``."""
    if not c.is_unipotent():
        return 0
    out = (-1) ** (c.n // 2)
    for i in range(1, len(c.at_one()) + 1):
        out *= 1 - (-c.q) ** i
    return out


def perm_conditions(c: ClassU) -> bool:
    return (_star_symmetric(c) and even_mults_at_odd_parts(c.at_one())
            and even_mults_at_odd_parts(c.at_minus_one()))


def full_conditions(c: ClassU) -> bool:
    return (_star_symmetric(c) and even_mults_at_odd_parts(c.at_minus_one())
            and even_mults_at_even_parts(c.at_one()))


def perm_char(c: ClassU) -> int:
    """Value of the permutation character of ``U(2n)`` on the cosets of ``Sp(2n)``."""
    _require_odd(c.q)
    if c.n % 2:
        raise PreconditionError("the permutation character lives on U(2n)")
    if not perm_conditions(c):
        return 0
    val = _resolve(centralizer_U(c) / _b_product(c), c.q, f"perm_char{c}")
    return _as_integer(val, f"perm_char{c}")


def perm_char_unipotent(mu: Partition, q: int) -> int:
    _require_odd(q)
    mu = Partition(mu)
    if not even_mults_at_odd_parts(mu):
        return 0
    val = Fraction(q) ** mu.n_stat * Fraction(q) ** ((mu.size - mu.odd_count) // 2)
    val *= c_poly(mu).evaluate(Fraction(-1, q))
    return _as_integer(val, f"perm_char_unipotent{list(mu)}")


def full_sum(c: ClassU) -> int:
    """Sum of all irreducible characters of ``U(n)`` at the class ``c``."""
    _require_odd(c.q)
    if not full_conditions(c):
        return 0
    f = (c.q ** c.at_one().odd_count) * centralizer_U(c) / _b_product(c)
    return _as_integer(_resolve(f, c.q, f"full_sum{c}"), f"full_sum{c}")


def full_sum_unipotent(mu: Partition, q: int) -> int:
    _require_odd(q)
    mu = Partition(mu)
    if not even_mults_at_even_parts(mu):
        return 0
    val = Fraction(q) ** mu.n_stat * Fraction(q) ** ((mu.size + mu.odd_count) // 2)
    val *= c_poly(mu).evaluate(Fraction(-1, q))
    return _as_integer(val, f"full_sum_unipotent{list(mu)}")


def prob_sp(c: ClassU) -> Fraction:
    """Probability that a uniform element of ``Sp(2n)`` lies in the class ``c``."""
    _require_odd(c.q)
    if c.n % 2 or not perm_conditions(c):
        return Fraction(0)
    return _resolve(1 / _b_product(c), c.q, f"prob_sp{c}")


def prob_twisted(c: ClassU) -> Fraction:
    """Probability that ``u * (transpose u)^-1`` lies in ``c`` for uniform ``u`` in ``U(n)``."""
    _require_odd(c.q)
    if not full_conditions(c):
        return Fraction(0)
    return _resolve(c.q ** c.at_one().odd_count / _b_product(c), c.q, f"prob_twisted{c}")


def degree_sum(n: int, q: int) -> int:
    """Sum of the degrees of the irreducible characters of ``U(n)``."""
    if n == 0:
        return 1
    return full_sum(unipotent_class(Partition([1] * n), q))


# ---- class functions and the Hall product ----

def empty_class(q: int) -> ClassU:
    return ClassU.make(q, [], 0)


@dataclass(frozen=True)
class ClassFunction:
    """Exact class function on ``U(n, q^2)``; classes missing from ``values`` are zero."""

    n: int
    q: int
    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for c, v in dict(self.values).items():
            if c.n != self.n or c.q != self.q:
                raise ValueError(f"class {c} does not belong to U({self.n}) over q={self.q}")
            if v:
                clean[c] = Fraction(v)
        object.__setattr__(self, "values", clean)

    @classmethod
    def from_function(cls, n: int, q: int, fn: Callable[[ClassU], object]) -> "ClassFunction":
        classes = [empty_class(q)] if n == 0 else enumerate_classes_U(n, q)
        return cls(n, q, {c: fn(c) for c in classes})

    def __call__(self, c: ClassU) -> Fraction:
        return self.values.get(c, Fraction(0))

    def support(self) -> list[ClassU]:
        return sorted(self.values, key=lambda c: c.items)

    def total(self) -> Fraction:
        """``sum_c |c| f(c)``, which is ``|U(n)|`` times the multiplicity of the trivial character."""
        order = group_order("U", self.n, self.q)
        return sum((Fraction(order, centralizer_U(c)) * v for c, v in self.values.items()),
                   Fraction(0))


def unit_function(q: int) -> ClassFunction:
    return ClassFunction(0, q, {empty_class(q): 1})


def gelfand_graev(n: int, q: int) -> ClassFunction:
    if n == 0:
        return unit_function(q)
    return ClassFunction(n, q, {unipotent_class(mu, q): gg_value(unipotent_class(mu, q))
                                for mu in enumerate_partitions(n)})


def induced_trivial(n2: int, q: int) -> ClassFunction:
    """Permutation character of ``U(n2)`` on the cosets of ``Sp(n2)``."""
    if n2 == 0:
        return unit_function(q)
    return ClassFunction.from_function(n2, q, perm_char)


def hall_weight(lam: ClassU, mu: ClassU, nu: ClassU) -> Fraction:
    """``prod_s g^{lam(s)}_{mu(s) nu(s)}(t^{|s|})`` at ``t = -q``."""
    orbits = set(lam.assignment) | set(mu.assignment) | set(nu.assignment)
    out = Fraction(1)
    for s in orbits:
        lp, mp, np_ = lam.part(s), mu.part(s), nu.part(s)
        if mp.size + np_.size != lp.size or not lp.contains(mp) or not lp.contains(np_):
            return Fraction(0)
        g = hall_poly(lp, mp, np_)
        out *= g.evaluate(Fraction(-lam.q) ** s.size)
        if out == 0:
            return out
    return out


def dl_product(f: ClassFunction, g: ClassFunction, c: ClassU) -> Fraction:
    """Value at ``c`` of the Hall-polynomial product ``f o g``."""
    if f.q != g.q or f.q != c.q:
        raise ValueError("class functions over different fields")
    if f.n + g.n != c.n:
        raise ValueError(f"sizes {f.n} + {g.n} do not add up to {c.n}")
    total = Fraction(0)
    for mu, fv in f.values.items():
        for nu, gv in g.values.items():
            w = hall_weight(c, mu, nu)
            if w:
                total += w * fv * gv
    return total


def model_sum(c: ClassU) -> int:
    """``sum_{k + 2l = n} Gamma_(k) o Ind(1)`` at ``c``; equal to ``full_sum(c)``."""
    _require_odd(c.q)
    total = Fraction(0)
    for l in range(c.n // 2 + 1):
        k = c.n - 2 * l
        total += dl_product(gelfand_graev(k, c.q), induced_trivial(2 * l, c.q), c)
    return _as_integer(total, f"model_sum{c}")


__all__ = [
    "ClassFunction", "degree_sum", "dl_product", "empty_class", "full_conditions", "full_sum",
    "full_sum_unipotent", "gelfand_graev", "gg_value", "hall_weight", "induced_trivial",
    "model_sum", "perm_char", "perm_char_unipotent", "perm_conditions", "prob_sp",
    "prob_twisted", "unit_function",
]
