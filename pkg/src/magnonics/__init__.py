"""Steady-state quantum correlations in a two-magnon cavity with an intracavity OPA
and squeezed-vacuum drive."""

from .errors import (
    ArgumentError,
    ConfigError,
    ConvergenceError,
    DomainError,
    MagnonicsError,
    NumericalError,
    ShapeError,
    StabilityError,
)
from .measures import (
    BipartiteReport,
    Mode,
    TripartiteReport,
    TwoModeCM,
    bipartite_report,
    gip,
    log_negativity,
    mancini_product,
    one_vs_two_negativity,
    quadrature_variance,
    reduce,
    residual_contangle,
    squeezing_db,
    steering,
)
from .model import (
    PhysicalEnv,
    SystemParams,
    build_diffusion,
    build_drift,
    is_stable,
    occupation_to_temperature,
    thermal_occupation,
)
from .steady_state import evolve_to_steady_state, solve_lyapunov, symplectic_eigenvalues
from .sweep import SweepAxis, SweepRecord, evaluate, figure_preset, run_figure, run_sweep, steady_state

__version__ = "0.1.0"
