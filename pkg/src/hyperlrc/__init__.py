"""Locally repairable codes from genus-2 hyperelliptic curves."""
from .finite_field import FieldCtx, conway_field, ff_make
from .curve import Curve, Place, curve_make, enumerate_places
from .functions import Divisor, Func, principal_divisor, riemann_roch_basis, rr_space, valuation
from .automorphisms import AutGroup, aut_catalog, group_generate, orbit_analysis
from .lrc import LocalCode, build_code_even, build_code_odd, even_plan, odd_plan
from .verify import VerifyReport, min_distance, repair_sim, verify_code

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "conway_field", "ff_make",
    "Curve", "Place", "curve_make", "enumerate_places",
    "Divisor", "Func", "principal_divisor", "riemann_roch_basis", "rr_space", "valuation",
    "AutGroup", "aut_catalog", "group_generate", "orbit_analysis",
    "LocalCode", "build_code_even", "build_code_odd", "even_plan", "odd_plan",
    "VerifyReport", "min_distance", "repair_sim", "verify_code",
]
