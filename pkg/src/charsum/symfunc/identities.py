"""Generating-function identities for Hall-Littlewood polynomials, checked after truncation."""

from __future__ import annotations

from ..exactnum import ONE, LaurentPoly
from ..partitions import (Partition, c_poly, even_mults_at_even_parts, even_mults_at_odd_parts,
                          enumerate_partitions)
from .sympoly import MPoly, SymPoly, complete_sum, elementary, hl_P, shapes

IDENTITIES = ("HLsum1", "HLKa", "HLFG", "HLprod")


def _pair_factor(z_exps: tuple, cap: int, nvars: int) -> MPoly:
    """``(1 - z) / (1 - z/t)`` for the monomial ``z`` with exponent vector ``z_exps``."""
    deg = sum(z_exps)
    terms = {(0,) * nvars: ONE}
    k = 1
    while k * deg <= cap:
        e = tuple(k * a for a in z_exps)
        terms[e] = LaurentPoly({-k: 1, -(k - 1): -1})
        k += 1
    return MPoly(nvars, cap, terms)


def _single_factor(i: int, cap: int, nvars: int) -> MPoly:
    """``(1 + x_i/t) / (1 + x_i)``."""
    terms = {(0,) * nvars: ONE}
    for k in range(1, cap + 1):
        e = tuple(k if j == i else 0 for j in range(nvars))
        terms[e] = LaurentPoly({0: (-1) ** k, -1: -((-1) ** k)})
    return MPoly(nvars, cap, terms)


def _kawanaka_product(nvars: int, cap: int) -> MPoly:
    out = MPoly.one(nvars, cap)
    for i in range(nvars):
        for j in range(i, nvars):
            z = [0] * nvars
            z[i] += 1
            z[j] += 1
            out = out * _pair_factor(tuple(z), cap, nvars)
    return out


def series_rhs(which: str, nvars: int, degree_cap: int):
    """Truncated right-hand sides.

    ``HLsum1`` returns ``{k: SymPoly}``, the coefficient of ``y^k``; the others return a SymPoly.
    """
    if which == "HLsum1":
        h = complete_sum(nvars, degree_cap)
        return {k: elementary(k, nvars, degree_cap) * h for k in range(nvars + 1)}
    if which == "HLKa":
        return SymPoly.from_mpoly(_kawanaka_product(nvars, degree_cap))
    if which == "HLFG":
        f = _kawanaka_product(nvars, degree_cap)
        for i in range(nvars):
            f = f * _single_factor(i, degree_cap, nvars)
        return SymPoly.from_mpoly(f)
    raise ValueError(f"unknown series {which!r}")


def _elementary_at_powers(k: int, ell: int) -> LaurentPoly:
    """``e_k(1, t^-1, ..., t^{1-ell})``."""
    # coefficient of y^k in prod_{j=1}^{ell} (1 + t^{1-j} y)
    coeffs = [ONE] + [LaurentPoly()] * ell
    for j in range(1, ell + 1):
        w = LaurentPoly({1 - j: 1})
        for i in range(j, 0, -1):
            coeffs[i] = coeffs[i] + coeffs[i - 1] * w
    return coeffs[k] if k <= ell else LaurentPoly()


def series_lhs(which: str, nvars: int, degree_cap: int):
    if which == "HLsum1":
        out = {k: SymPoly(nvars, degree_cap, {}) for k in range(nvars + 1)}
        for lam in shapes(nvars, degree_cap):
            P = hl_P(lam, nvars, degree_cap).scale(LaurentPoly.t(lam.n_stat))
            for k in range(len(lam) + 1):
                out[k] = out[k] + P.scale(_elementary_at_powers(k, len(lam)))
        return out
    if which == "HLKa":
        out = SymPoly(nvars, degree_cap, {})
        for lam in shapes(nvars, degree_cap):
            if even_mults_at_odd_parts(lam):
                pref = c_poly(lam).shift((lam.odd_count - lam.size) // 2)
                out = out + hl_P(lam, nvars, degree_cap).scale(pref)
        return out
    if which == "HLFG":
        out = SymPoly(nvars, degree_cap, {})
        for lam in shapes(nvars, degree_cap):
            if even_mults_at_even_parts(lam):
                pref = c_poly(lam).shift(-(lam.odd_count + lam.size) // 2)
                out = out + hl_P(lam, nvars, degree_cap).scale(pref)
        return out
    raise ValueError(f"unknown series {which!r}")


def hlprod_sides(mu: Partition, nu: Partition, nvars: int | None = None):
    """Both sides of the product rule, the right one built from interpolated Hall polynomials."""
    from .hall import hall_poly_interp

    mu, nu = Partition(mu), Partition(nu)
    n = mu.size + nu.size
    nvars = len(mu) + len(nu) if nvars is None else nvars
    nvars = max(nvars, 1)
    lhs = (hl_P(mu, nvars, n).scale(LaurentPoly.t(mu.n_stat))
           * hl_P(nu, nvars, n).scale(LaurentPoly.t(nu.n_stat)))
    rhs = SymPoly(nvars, n, {})
    for lam in enumerate_partitions(n, nvars):
        g = hall_poly_interp(lam, mu, nu)
        if not g.is_zero():
            rhs = rhs + hl_P(lam, nvars, n).scale(g.invert_t().shift(lam.n_stat))
    return lhs, rhs


def verify_identity(which: str, nvars: int = 3, degree_cap: int = 6,
                    mu: Partition | None = None, nu: Partition | None = None) -> bool:
    if which == "HLprod":
        if mu is None or nu is None:
            raise ValueError("HLprod needs mu and nu")
        lhs, rhs = hlprod_sides(mu, nu)
        return lhs == rhs
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}")
    lhs = series_lhs(which, nvars, degree_cap)
    rhs = series_rhs(which, nvars, degree_cap)
    return lhs == rhs
