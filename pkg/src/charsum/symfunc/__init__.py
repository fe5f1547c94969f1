"""Symmetric functions over Z[t, 1/t]: Hall-Littlewood polynomials, identities, Hall polynomials."""

from .hall import HallMismatch, hall_poly, hall_poly_hlprod, hall_poly_interp, hall_triples
from .identities import IDENTITIES, verify_identity
from .sympoly import (FeasibilityError, MPoly, SymPoly, TruncationError, complete_sum, elementary,
                      from_P_basis, hl_P, kostka, schur, to_P_basis)

__all__ = ["FeasibilityError", "HallMismatch", "IDENTITIES", "MPoly", "SymPoly", "TruncationError",
           "complete_sum", "elementary", "from_P_basis", "hall_poly", "hall_poly_hlprod",
           "hall_poly_interp", "hall_triples", "hl_P", "kostka", "schur", "to_P_basis",
           "verify_identity"]
