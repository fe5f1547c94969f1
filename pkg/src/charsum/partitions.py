"""Integer partitions, symplectic signed partitions and the ``c_lambda(t)`` polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .exactnum import LaurentPoly


class PreconditionError(ValueError):
    """An operation was called outside its stated hypothesis."""


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiplicities(cls, mults: Mapping[int, int]) -> "Partition":
        parts: list[int] = []
        for i in sorted(mults, reverse=True):
            parts.extend([i] * mults[i])
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def m(self, i: int) -> int:
        return self.count(i)

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    @property
    def n_stat(self) -> int:
        return sum(j * p for j, p in enumerate(self))

    @property
    def odd_count(self) -> int:
        return sum(1 for p in self if p % 2)

    def contains(self, other: "Partition") -> bool:
        """Diagram containment ``other`` inside ``self``."""
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other, self))

    def __repr__(self):
        return f"Partition({list(self)})"


EMPTY = Partition()


@dataclass(frozen=True)
class PartitionStats:
    size: int
    length: int
    conjugate: Partition
    n_stat: int
    odd_count: int
    multiplicities: dict


def partition_stats(lam: Partition) -> PartitionStats:
    lam = Partition(lam)
    return PartitionStats(lam.size, lam.length, lam.conjugate(), lam.n_stat,
                          lam.odd_count, lam.multiplicities)


def even_mults_at_odd_parts(lam: Partition) -> bool:
    return all(m % 2 == 0 for i, m in lam.multiplicities.items() if i % 2)


def even_mults_at_even_parts(lam: Partition) -> bool:
    return all(m % 2 == 0 for i, m in lam.multiplicities.items() if i % 2 == 0)


@dataclass(frozen=True, order=True)
class SignedPartition:
    """Symplectic signed partition: odd parts in even multiplicity, a sign per even part size."""

    base: Partition
    signs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base", Partition(self.base))
        signs = tuple(sorted((int(i), int(s)) for i, s in dict(self.signs).items()))
        object.__setattr__(self, "signs", signs)
        if not even_mults_at_odd_parts(self.base):
            raise ValueError(f"odd parts need even multiplicity: {self.base}")
        even = {i for i in self.base.multiplicities if i % 2 == 0}
        if {i for i, _ in signs} != even:
            raise ValueError(f"signs must be given exactly on the even parts {sorted(even)}")
        if any(s not in (1, -1) for _, s in signs):
            raise ValueError("signs must be +1 or -1")

    def sign(self, i: int) -> int:
        return dict(self.signs)[i]

    @property
    def size(self) -> int:
        return self.base.size

    def to_json(self) -> dict:
        return {"parts": list(self.base), "signs": {str(i): s for i, s in self.signs}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SignedPartition":
        return cls(Partition(obj["parts"]), tuple((int(k), int(v)) for k, v in obj.get("signs", {}).items()))

    def __str__(self):
        signs = dict(self.signs)
        bits = []
        for i, m in sorted(self.base.multiplicities.items(), reverse=True):
            s = {1: "+", -1: "-"}.get(signs.get(i), "")
            bits.append(f"{i}^{s}{m}")
        return "(" + ", ".join(bits) + ")"


def c_poly(lam: Partition) -> LaurentPoly:
    """``c_lambda(t)``: product over part sizes ``i`` and odd ``j <= m_i`` of ``(1 - t^j)``."""
    out = LaurentPoly(1)
    for m in Partition(lam).multiplicities.values():
        for j in range(1, m + 1, 2):
            out = out * LaurentPoly({0: 1, j: -1})
    return out


def c_poly_cells(lam: Partition) -> LaurentPoly:
    """``c_lambda(t)`` from the diagram: cells ending a row whose leg is even contribute ``1 - t^(leg+1)``."""
    lam = Partition(lam)
    conj = lam.conjugate()
    out = LaurentPoly(1)
    for i, row in enumerate(lam, start=1):
        j = row
        leg = conj[j - 1] - i
        if leg % 2 == 0:
            out = out * LaurentPoly({0: 1, leg + 1: -1})
    return out


def evensign_parity(nu: Partition) -> tuple[int, int]:
    nu = Partition(nu)
    if not (even_mults_at_even_parts(nu) or even_mults_at_odd_parts(nu)):
        raise PreconditionError(f"{nu}: needs even multiplicity at all even parts or at all odd parts")
    lhs = ((nu.size - nu.odd_count) // 2) % 2
    rhs = (nu.size // 2 + nu.n_stat) % 2
    return lhs, rhs


@lru_cache(maxsize=None)
def _partitions(n: int, cap: int) -> tuple[Partition, ...]:
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + rest))
    return tuple(out)


def enumerate_partitions(n: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = list(_partitions(n, n))
    if max_length is not None:
        out = [p for p in out if len(p) <= max_length]
    return out


def partitions_up_to(n: int, max_length: int | None = None) -> list[Partition]:
    out: list[Partition] = []
    for k in range(n + 1):
        out.extend(enumerate_partitions(k, max_length))
    return out


def signed_versions(base: Partition) -> list[SignedPartition]:
    evens = sorted({i for i in base if i % 2 == 0}, reverse=True)
    return [SignedPartition(base, tuple(zip(evens, signs)))
            for signs in product((1, -1), repeat=len(evens))]


def enumerate_signed_partitions(n: int) -> list[SignedPartition]:
    out: list[SignedPartition] = []
    for base in enumerate_partitions(n):
        if even_mults_at_odd_parts(base):
            out.extend(signed_versions(base))
    return out
