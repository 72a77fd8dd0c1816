"""trilattice: unit-orbit residue conditions, coprime gap bounds, and
prime-counting inequalities over residue classes, with exact integer
arithmetic end to end."""

from .arith import FactoredInteger, PrimeTable, factorize, sieve, units
from .chebyshev import (
    ClassSweepReport,
    MarginEvent,
    ThetaAccumulator,
    conservation_defect,
    sweep_progressions,
    theta,
    unit_residues,
    verify_envelope,
    verify_lower_bound,
)
from .errors import CapabilityError
from .jacobsthal import (
    GapCache,
    GapScanResult,
    check_f_bounds,
    check_g_linear_bound,
    check_g_omega_monotone,
    f_least,
    g_table,
    jacobsthal_g,
    primorial_g,
)
from .lattice import (
    ALGEBRAIC_FAMILIES,
    ConditionReport,
    Family,
    Triple,
    VerificationReport,
    check_condition,
    classify_families,
    enumerate_satisfying,
    orbit,
    verify_range,
)

__version__ = "0.1.0"

__all__ = [
    "ALGEBRAIC_FAMILIES",
    "CapabilityError",
    "ClassSweepReport",
    "ConditionReport",
    "FactoredInteger",
    "Family",
    "GapCache",
    "GapScanResult",
    "MarginEvent",
    "PrimeTable",
    "ThetaAccumulator",
    "Triple",
    "VerificationReport",
    "check_condition",
    "check_f_bounds",
    "check_g_linear_bound",
    "check_g_omega_monotone",
    "classify_families",
    "conservation_defect",
    "enumerate_satisfying",
    "f_least",
    "factorize",
    "g_table",
    "jacobsthal_g",
    "orbit",
    "primorial_g",
    "sieve",
    "sweep_progressions",
    "theta",
    "unit_residues",
    "units",
    "verify_envelope",
    "verify_lower_bound",
    "verify_range",
    "__version__",
]
