"""Discrete-velocity BGK solver with exact Lagrangian transport.

The kinetic scheme moves every velocity node along its characteristic and
evaluates the result on the fixed grid, so transport costs one gather per
node regardless of time step.  A hybrid variant splits the distribution into
a transported free part and an equilibrium part advanced by a second-order
finite-volume method, recovering sharp shocks in the fluid limit.
"""

from .errors import ConfigError, InvalidStateError
from .grids import SpatialGrid, VelocityGrid, build_spatial_grid, build_velocity_grid
from .moments import (
    Moments,
    collision_invariants,
    discrete_moments,
    maxwellian,
)
from .projection import (
    ConservationOperator,
    build_conservation_operator,
    conservative_correction,
    projected_equilibrium,
)
from .transport import (
    DistributionField,
    evaluate_at_centers,
    fks_step,
    fks_timestep,
    make_field,
    relax,
    relaxation_weight,
    transport,
)
from .euler import EulerState, euler_step, euler_timestep, max_wavespeed, muscl_flux
from .hofks import HybridState, hofks_step, init_hybrid_state
from .problems import PROBLEMS, ProblemSpec, error_norms
from .runner import RunConfig, RunResult, bench, convergence_study, run

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "InvalidStateError",
    "SpatialGrid",
    "VelocityGrid",
    "build_spatial_grid",
    "build_velocity_grid",
    "Moments",
    "collision_invariants",
    "discrete_moments",
    "maxwellian",
    "ConservationOperator",
    "build_conservation_operator",
    "conservative_correction",
    "projected_equilibrium",
    "DistributionField",
    "evaluate_at_centers",
    "fks_step",
    "fks_timestep",
    "make_field",
    "relax",
    "relaxation_weight",
    "transport",
    "EulerState",
    "euler_step",
    "euler_timestep",
    "max_wavespeed",
    "muscl_flux",
    "HybridState",
    "hofks_step",
    "init_hybrid_state",
    "PROBLEMS",
    "ProblemSpec",
    "error_norms",
    "RunConfig",
    "RunResult",
    "bench",
    "convergence_study",
    "run",
    "__version__",
]
