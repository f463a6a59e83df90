"""Average entanglement capacity of fermionic Gaussian states.

Closed forms live in :mod:`fgcap.exact_capacity`; the Monte Carlo and
quadrature oracles in :mod:`fgcap.ensembles` and :mod:`fgcap.kernel_oracle`.
"""

from .ensembles import CapacityEstimate, estimate_mean_capacity
from .errors import DomainError, NumericalError, ToleranceNotMet, UnsupportedCaseError
from .exact_capacity import (
    Arbitrary,
    CapacityResult,
    EnsembleSpec,
    Fixed,
    asymptotic_gap,
    asymptotic_limit,
    mean_capacity,
    mean_capacity_arbitrary,
    mean_capacity_fixed,
    mean_capacity_fixed_special,
)
from .identity_suite import IdentityId, check_identity, fuzz_identities
from .kernel_oracle import QuadratureResult, quad_mean_capacity
from .special_fn import ExactValue

__all__ = [
    "Arbitrary",
    "CapacityEstimate",
    "CapacityResult",
    "DomainError",
    "EnsembleSpec",
    "ExactValue",
    "Fixed",
    "IdentityId",
    "NumericalError",
    "QuadratureResult",
    "ToleranceNotMet",
    "UnsupportedCaseError",
    "asymptotic_gap",
    "asymptotic_limit",
    "check_identity",
    "estimate_mean_capacity",
    "fuzz_identities",
    "mean_capacity",
    "mean_capacity_arbitrary",
    "mean_capacity_fixed",
    "mean_capacity_fixed_special",
    "quad_mean_capacity",
]
