"""Evaluation codes on the projective line over GF(p^k) and their symmetry groups."""

__version__ = "0.1.0"

from .gfpoly import (GF, BudgetError, FieldElement, FieldError, NonSplitError, PoleError, Polynomial,
                     RationalFunction, field_make, field_of_order)
from .projline import Divisor, MoebiusMap, P1Point, all_points, moebius_make, pullback
from .groupaction import (GroupOnP1, field_sufficient, group_closure, make_family, orbit,
                          orbit_decomposition, ramification_profile, search_field, special_orbits)
from .rrspace import RRBasis, rr_basis
from .agcode import LinearCode, ag_code, grs_code, mds_certificate, spectrum_exact, spectrum_mds
from .autgroup import (CoordinatePermutation, aut_DE_scan, coordinate_perm, lift_consistency_check,
                       perm_group_exhaustive, preserves_code, rep_structure_check, rho_matrix)
from .config import RunConfig

__all__ = [
    "GF", "FieldElement", "FieldError", "BudgetError", "NonSplitError", "PoleError", "Polynomial",
    "RationalFunction", "field_make", "field_of_order", "Divisor", "MoebiusMap", "P1Point",
    "all_points", "moebius_make", "pullback", "GroupOnP1", "field_sufficient", "group_closure",
    "make_family", "orbit", "orbit_decomposition", "ramification_profile", "search_field",
    "special_orbits", "RRBasis", "rr_basis", "LinearCode", "ag_code", "grs_code",
    "mds_certificate", "spectrum_exact", "spectrum_mds", "CoordinatePermutation", "aut_DE_scan",
    "coordinate_perm", "lift_consistency_check", "perm_group_exhaustive", "preserves_code",
    "rep_structure_check", "rho_matrix", "RunConfig", "__version__",
]
