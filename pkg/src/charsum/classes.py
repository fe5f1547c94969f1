"""Conjugacy class labels of unitary and symplectic groups and their centralizer orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactnum import FactorProduct, GroupToken, IrrationalProduct, Rational
from .ffield import (PHI_K, PHI_TILDE2, Orbit, enumerate_orbits, field_for, minus_one_orbit,
                     one_orbit, orbit_from_json, phi_to_tilde2, poly_star, prime_power,
                     star_orbit, tilde2_classification)
from .partitions import (EMPTY, Partition, SignedPartition, enumerate_partitions,
                         enumerate_signed_partitions, even_mults_at_even_parts,
                         even_mults_at_odd_parts)

GROUP_KINDS = ("GL", "U", "Sp", "Oplus", "Ominus", "Oodd")


class ConsistencyError(AssertionError):
    """A closed formula produced a value that cannot be right (non-integral, negative, ...)."""


def group_order(kind: str, n: int, q: int) -> int:
    """Order of the classical group of matrix size ``n`` over ``F_q`` (``F_{q^2}`` for ``U``)."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    if kind == "GL":
        out = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            out *= q ** i - 1
        return out
    if kind == "U":
        out = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            out *= q ** i - (-1) ** i
        return out
    if kind == "Sp":
        if n % 2:
            raise ValueError("symplectic groups need even dimension")
        m = n // 2
        out = q ** (m * m)
        for i in range(1, m + 1):
            out *= q ** (2 * i) - 1
        return out
    if kind in ("Oplus", "Ominus", "Oodd"):
        if q % 2 == 0:
            raise ValueError("orthogonal group orders are only used for odd q")
        if kind == "Oodd":
            if n % 2 == 0:
                raise ValueError("Oodd needs odd dimension")
            m = (n - 1) // 2
            out = 2 * q ** (m * m)
            for i in range(1, m + 1):
                out *= q ** (2 * i) - 1
            return out
        if n % 2:
            raise ValueError(f"{kind} needs even dimension")
        if n == 0:
            return 1
        m = n // 2
        sign = 1 if kind == "Oplus" else -1
        # 2 q^{m^2} (1 +- q^{-m}) = 2 q^{m^2 - m} (q^m +- 1)
        out = 2 * q ** (m * m - m) * (q ** m + sign)
        for i in range(1, m):
            out *= q ** (2 * i) - 1
        return out
    raise ValueError(f"unknown group kind {kind!r}")


def a_gl(mu: Partition, x: Rational) -> Fraction:
    """``x^{|mu| + 2n(mu)} prod_i prod_{j<=m_i} (1 - x^{-j})``."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("a_mu is undefined at 0")
    mu = Partition(mu)
    out = x ** (mu.size + 2 * mu.n_stat)
    for m in mu.multiplicities.values():
        for j in range(1, m + 1):
            out *= 1 - x ** (-j)
    return out


# ---- unitary classes ----

@dataclass(frozen=True)
class ClassU:
    """A PhiTilde2-partition: each orbit in the support carries a nonempty partition."""

    q: int
    n: int
    items: tuple  # sorted tuple of (Orbit, Partition)

    @classmethod
    def make(cls, q: int, assignment: Mapping[Orbit, Partition] | Iterable, n: int | None = None) -> "ClassU":
        pairs = assignment.items() if isinstance(assignment, Mapping) else assignment
        merged: dict[Orbit, Partition] = {}
        for s, lam in pairs:
            if s.kind != PHI_TILDE2 or s.q != q:
                raise ValueError(f"{s} is not a PhiTilde2 orbit over q={q}")
            lam = Partition(lam)
            if lam:
                if s in merged:
                    raise ValueError(f"orbit {s.label()} assigned twice")
                merged[s] = lam
        size = sum(s.size * lam.size for s, lam in merged.items())
        if n is not None and size != n:
            raise ValueError(f"class has size {size}, expected {n}")
        return cls(q, size, tuple(sorted(merged.items())))

    @property
    def assignment(self) -> dict[Orbit, Partition]:
        return dict(self.items)

    def part(self, s: Orbit) -> Partition:
        return self.assignment.get(s, EMPTY)

    def at_one(self) -> Partition:
        return self.part(one_orbit(self.q, PHI_TILDE2, 2))

    def at_minus_one(self) -> Partition:
        return self.part(minus_one_orbit(self.q, PHI_TILDE2, 2))

    def is_unipotent(self) -> bool:
        return all(s.is_one() for s, _ in self.items)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n,
                "parts": [{"orbit": s.label() if s.is_pm_one() else s.to_json()["minpoly"],
                           "partition": list(lam)} for s, lam in self.items]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ClassU":
        q = int(obj["q"])
        pairs = [(orbit_from_json(p["orbit"], q, PHI_TILDE2), Partition(p["partition"]))
                 for p in obj["parts"]]
        return cls.make(q, pairs, obj.get("n"))

    def __str__(self):
        return "{" + ", ".join(f"{s.label()}: {list(lam)}" for s, lam in self.items) + "}"


def unipotent_class(mu: Partition, q: int) -> ClassU:
    return ClassU.make(q, [(one_orbit(q, PHI_TILDE2, 2), Partition(mu))])


def centralizer_U(c: ClassU) -> int:
    """``(-1)^{|c|} prod_s a_{c(s)}((-q)^{|s|})``."""
    val = Fraction((-1) ** c.n)
    for s, lam in c.items:
        val *= a_gl(lam, Fraction(-c.q) ** s.size)
    if val.denominator != 1 or val <= 0:
        raise ConsistencyError(f"centralizer of {c} is {val}")
    out = int(val)
    if group_order("U", c.n, c.q) % out:
        raise ConsistencyError(f"centralizer {out} does not divide |U({c.n})|")
    return out


def b_factor(s: Orbit, nu: Partition, q: int) -> FactorProduct:
    """Formal ``B(s, nu)`` for a PhiTilde2 orbit ``s``."""
    nu = Partition(nu)
    if not nu:
        return FactorProduct.make()
    mults = nu.multiplicities
    if s.is_pm_one():
        rational = Fraction(1)
        for m in mults.values():
            for j in range(1, m // 2 + 1):
                rational *= 1 - Fraction(1, q ** (2 * j))
        return FactorProduct.make(rational, nu.size + 2 * nu.n_stat + nu.odd_count)
    d = s.size
    q_half = d * (nu.size + 2 * nu.n_stat - sum(m * m for m in mults.values()))
    case = tilde2_classification(s)
    tokens = []
    for m in mults.values():
        if case == "odd":
            tokens.append((GroupToken("U", m, d), 1))
        elif case == "pair":
            tokens.append((GroupToken("GL", m, d), 1))
        elif case == "fixed_v":
            tokens.append((GroupToken("U", m, d // 2), 2))
        else:
            tokens.append((GroupToken("GL", m, d // 2), 2))
    return FactorProduct.make(1, q_half, tokens)


def bstar_factor(r: Orbit, part, q: int) -> FactorProduct:
    """Formal ``B*(r, part)`` for a Phi orbit ``r`` over ``F_q``; signed partitions at +-1."""
    if r.is_pm_one():
        if not isinstance(part, SignedPartition):
            raise TypeError("B* at +-1 needs a SignedPartition")
        base = part.base
    else:
        if isinstance(part, SignedPartition):
            raise TypeError("B* away from +-1 takes a plain Partition")
        base = Partition(part)
    if not base:
        return FactorProduct.make()
    mults = base.multiplicities
    d = r.size
    q_half = d * (base.size + 2 * base.n_stat - sum(m * m for m in mults.values()))
    tokens = []
    if r.is_pm_one():
        for i, m in mults.items():
            if i % 2:
                tokens.append((GroupToken("Sp", m, 1), 2))
            else:
                q_half += m
                if m % 2:
                    kind = "Oodd"
                else:
                    kind = "Oplus" if part.sign(i) > 0 else "Ominus"
                tokens.append((GroupToken(kind, m, 1), 2))
    elif poly_star(r.field, r.minpoly) == r.minpoly:
        for m in mults.values():
            tokens.append((GroupToken("U", m, d // 2), 2))
    else:
        for m in mults.values():
            tokens.append((GroupToken("GL", m, d), 1))
    return FactorProduct.make(1, q_half, tokens)


def _resolve_int(f: FactorProduct, q: int, what: str) -> int:
    val = f.resolve(q)
    if val.denominator != 1 or val <= 0:
        raise ConsistencyError(f"{what} is {val}")
    return int(val)


# ---- symplectic classes ----

@dataclass(frozen=True)
class ClassSp:
    """A signed Phi-partition: signed partitions at +-1, plain ones elsewhere, star symmetric."""

    q: int
    n2: int
    items: tuple  # sorted tuple of (Orbit, Partition | SignedPartition)

    @classmethod
    def make(cls, q: int, assignment, n2: int | None = None) -> "ClassSp":
        if q % 2 == 0:
            raise ValueError("symplectic class labels need odd q")
        pairs = assignment.items() if isinstance(assignment, Mapping) else assignment
        merged = {}
        for r, part in pairs:
            if r.kind != PHI_K or r.k != 1 or r.q != q:
                raise ValueError(f"{r} is not a Phi orbit over q={q}")
            if r.is_pm_one() != isinstance(part, SignedPartition):
                raise ValueError("signed partitions belong exactly to the orbits 1 and -1")
            base = part.base if isinstance(part, SignedPartition) else Partition(part)
            if base:
                merged[r] = part if isinstance(part, SignedPartition) else base
        for r, part in merged.items():
            if not r.is_pm_one() and merged.get(star_orbit(r)) != part:
                raise ValueError(f"assignment is not star symmetric at {r.label()}")
        size = sum(r.size * _base(p).size for r, p in merged.items())
        if n2 is not None and size != n2:
            raise ValueError(f"class has size {size}, expected {n2}")
        return cls(q, size, tuple(sorted(merged.items(), key=lambda rp: rp[0].sort_key())))

    @property
    def assignment(self) -> dict:
        return dict(self.items)

    def to_json(self) -> dict:
        out = []
        for r, p in self.items:
            label = r.label() if r.is_pm_one() else r.to_json()["minpoly"]
            if isinstance(p, SignedPartition):
                out.append({"orbit": label, **p.to_json()})
            else:
                out.append({"orbit": label, "parts": list(p)})
        return {"q": self.q, "n2": self.n2, "parts": out}

    def __str__(self):
        return "{" + ", ".join(f"{r.label()}: {p if isinstance(p, SignedPartition) else list(p)}"
                               for r, p in self.items) + "}"


def _base(p) -> Partition:
    return p.base if isinstance(p, SignedPartition) else p


def centralizer_Sp(c: ClassSp) -> int:
    f = FactorProduct.make()
    for r, part in c.items:
        f = f * bstar_factor(r, part, c.q)
    out = _resolve_int(f, c.q, f"Sp centralizer of {c}")
    if group_order("Sp", c.n2, c.q) % out:
        raise ConsistencyError(f"centralizer {out} does not divide |Sp({c.n2})|")
    return out


def sp_to_u(c: ClassSp) -> ClassU:
    """The unitary class containing an Sp class (forget signs, split Phi orbits over F_{q^2})."""
    q = c.q
    assign: dict[Orbit, Partition] = {}
    for r, part in c.items:
        base = _base(part)
        if r.is_one():
            targets = [one_orbit(q, PHI_TILDE2, 2)]
        elif r.is_minus_one():
            targets = [minus_one_orbit(q, PHI_TILDE2, 2)]
        else:
            targets = phi_to_tilde2(r)
        for s in targets:
            if s in assign and assign[s] != base:
                raise ConsistencyError(f"conflicting partitions at {s.label()}")
            assign[s] = base
    return ClassU.make(q, assign, c.n2)


def centralizer_Sp_mixed(cU: ClassU, g1: SignedPartition, gm1: SignedPartition) -> int:
    """``B*(1, g1) B*(-1, gm1) prod_{s != +-1} B(s, cU(s))``."""
    q = cU.q
    if g1.base != cU.at_one() or gm1.base != cU.at_minus_one():
        raise ValueError("signed partitions must refine the unitary class at 1 and -1")
    if not transfer_check(cU).meets_Sp:
        raise ValueError(f"{cU} does not meet Sp")
    f = bstar_factor(one_orbit(q), g1, q) * bstar_factor(minus_one_orbit(q), gm1, q)
    for s, nu in cU.items:
        if not s.is_pm_one():
            f = f * b_factor(s, nu, q)
    return _resolve_int(f, q, f"mixed Sp centralizer of {cU}")


@dataclass(frozen=True)
class TransferResult:
    meets_GLq: bool
    meets_U: bool
    meets_Sp: bool


def _phi2_assignment(c: ClassU) -> dict[tuple, Partition]:
    out = {}
    for s, lam in c.items:
        for v in s.parts:
            out[v] = lam
    return out


def transfer_check(c: ClassU) -> TransferResult:
    """Which of GL(n, q), U(n, q^2), Sp(n, q) meet the class."""
    q = c.q
    F2 = field_for(q, 2)
    _, e = prime_power(q)
    lam2 = _phi2_assignment(c)
    # the fused assignment is well defined by construction of ClassU
    meets_u = all(lam2.get(v) == lam for s, lam in c.items for v in s.parts)
    meets_gl = all(lam2.get(tuple(F2.frob(a, e) for a in v), EMPTY) == lam for v, lam in lam2.items())
    meets_sp = (c.n % 2 == 0 and q % 2 == 1
                and all(c.part(star_orbit(s)) == lam for s, lam in c.items)
                and even_mults_at_odd_parts(c.at_one())
                and even_mults_at_odd_parts(c.at_minus_one()))
    return TransferResult(meets_gl, meets_u, meets_sp)


# ---- enumeration ----

def _assignments(orbits: list, n: int, parts_of):
    """All ways to give orbits labels whose weighted sizes sum to ``n``."""
    def rec(i, remaining):
        if remaining == 0:
            yield ()
            return
        if i == len(orbits):
            return
        o, weight = orbits[i]
        yield from rec(i + 1, remaining)
        for k in range(1, remaining // weight + 1):
            for lab in parts_of(o, k):
                for rest in rec(i + 1, remaining - weight * k):
                    yield ((o, lab),) + rest
    yield from rec(0, n)


@lru_cache(maxsize=None)
def _classes_U(n: int, q: int) -> tuple[ClassU, ...]:
    orbits = [(s, s.size) for s in enumerate_orbits(q, PHI_TILDE2, n)]
    out = [ClassU.make(q, a, n) for a in _assignments(orbits, n, lambda o, k: enumerate_partitions(k))]
    return tuple(out)


def enumerate_classes_U(n: int, q: int) -> list[ClassU]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_classes_U(n, q))


@lru_cache(maxsize=None)
def _classes_Sp(n2: int, q: int) -> tuple[ClassSp, ...]:
    orbits = []
    for r in enumerate_orbits(q, PHI_K, n2):
        if r.is_pm_one():
            orbits.append((r, 1))
            continue
        rs = star_orbit(r)
        if rs == r:
            orbits.append((r, r.size))
        elif r < rs:
            orbits.append((r, 2 * r.size))

    def parts_of(o, k):
        return enumerate_signed_partitions(k) if o.is_pm_one() else enumerate_partitions(k)

    out = []
    for a in _assignments(orbits, n2, parts_of):
        full = list(a)
        for r, lab in a:
            if not r.is_pm_one():
                rs = star_orbit(r)
                if rs != r:
                    full.append((rs, lab))
        out.append(ClassSp.make(q, full, n2))
    return tuple(out)


def enumerate_classes_Sp(n2: int, q: int) -> list[ClassSp]:
    if n2 % 2:
        raise ValueError("symplectic groups need even dimension")
    return list(_classes_Sp(n2, q))


def class_equation_sum(n: int, q: int) -> Fraction:
    order = group_order("U", n, q)
    return sum((Fraction(order, centralizer_U(c)) for c in enumerate_classes_U(n, q)), Fraction(0))


__all__ = [
    "GROUP_KINDS", "ConsistencyError", "IrrationalProduct", "group_order", "a_gl", "ClassU",
    "ClassSp", "unipotent_class", "centralizer_U", "b_factor", "bstar_factor", "centralizer_Sp",
    "centralizer_Sp_mixed", "sp_to_u", "transfer_check", "TransferResult", "enumerate_classes_U",
    "enumerate_classes_Sp", "class_equation_sum", "even_mults_at_even_parts",
]
