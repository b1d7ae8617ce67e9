"""Bound-state energies and critical couplings of the Gaussian and Yukawa wells.

Three routes to each quantity: a closed-form empirical approximant
(:mod:`.empirical`, Gaussian only), a one-parameter variational estimate
(:mod:`.variational`) and a Numerov shooting reference (:mod:`.solver`).
"""
__version__ = "0.1.0"

from .model import (  # noqa: E402
    DimensionalParameters,
    DomainError,
    EnergyEstimate,
    Method,
    PotentialKind,
    QuantumNumbers,
    effective_radial_potential,
    potential_value,
    reduce_to_dimensionless,
    restore_energy,
)
from .empirical import harmonic_zeroth_energy, koksal_critical, koksal_energy  # noqa: E402
from .variational import (  # noqa: E402
    critical_coupling_closed_form,
    energy_functional,
    solve_variational,
    stationary_locus,
)
from .solver import (  # noqa: E402
    BoundStateNotFound,
    SolverConfig,
    SolverError,
    count_bound_states,
    critical_coupling_reference,
    integrate_radial,
    solve_bound_state,
)

__all__ = [
    "BoundStateNotFound",
    "DimensionalParameters",
    "DomainError",
    "EnergyEstimate",
    "Method",
    "PotentialKind",
    "QuantumNumbers",
    "SolverConfig",
    "SolverError",
    "count_bound_states",
    "critical_coupling_closed_form",
    "critical_coupling_reference",
    "effective_radial_potential",
    "energy_functional",
    "harmonic_zeroth_energy",
    "integrate_radial",
    "koksal_critical",
    "koksal_energy",
    "potential_value",
    "reduce_to_dimensionless",
    "restore_energy",
    "solve_bound_state",
    "solve_variational",
    "stationary_locus",
]
