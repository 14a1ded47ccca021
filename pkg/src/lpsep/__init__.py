"""Entanglement detection from the Landau-Pollak uncertainty relation."""

from .criteria import (
    CriterionId,
    CriterionResult,
    Verdict,
    gl_bound,
    landau_pollak_slack,
    multipartite_bisep_value,
    qudit_spin_bound,
    sep1,
    sep2,
    sep2_sep4_equivalence,
    sep3,
    sep4,
    weak_lp_value,
    witness_values,
)
from .families import Family, FamilyParams, build
from .quantum import (
    DensityMatrix,
    Observable,
    ProbabilityDistribution,
    ProductStateParams,
    max_overlap,
    outcome_distribution,
    product_state,
    resolve_observable,
)

__version__ = "0.1.0"
