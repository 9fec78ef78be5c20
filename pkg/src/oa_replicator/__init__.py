"""Evolutionary game of open-access publishing between scientists and publishers.

The payoff model, equilibrium analysis, replicator dynamics and the
Hamiltonian structure of the resulting planar system.
"""

from .dynamics import (
    Trajectory,
    estimate_period,
    full_replicator_field,
    integrate,
    read_trajectory_csv,
    reduced_constants,
    reduced_field,
)
from .errors import (
    ConfigError,
    DegenerateGameError,
    DomainError,
    InvalidParametersError,
    LevelAboveMaximumError,
    NonBracketingError,
    NonConvergenceError,
    NonPositiveConstantsError,
    NumericalError,
    OAReplicatorError,
    StepFailureError,
)
from .game import (
    BestResponseCycle,
    MixedProfile,
    PureProfile,
    Publisher,
    Scientist,
    best_response_cycle,
    equilibrium_payoffs,
    expected_payoffs,
    mixed_nash,
    pure_equilibria,
    verify_equilibrium,
)
from .symplectic import (
    HamiltonianSystem,
    LevelCurve,
    critical_point,
    grad_H,
    hamiltonian,
    hamiltonian_logit,
    hamiltonian_vector_field,
    hessian_at_critical,
    level_curve,
    linearized_frequency,
    phi,
)
from .payoff import (
    BimatrixGame,
    OpenAccessParameters,
    ValidationReport,
    payoff_differences,
    payoff_matrices,
    validate,
)
from .state import ReducedConstants, State

__version__ = "0.1.0"
