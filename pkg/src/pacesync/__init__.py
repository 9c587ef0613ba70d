"""Kuramoto oscillator networks forced by a pacemaker.

Simulation of the relative-phase dynamics, sufficient conditions for
synchronisation / phase locking / phase trapping, lower bounds on the
exponential convergence rate, and seeded sweep experiments.
"""

from .dynamics import (
    IntegrationError,
    IntegratorConfig,
    ModelParams,
    PhaseState,
    Trajectory,
    full_phase_rhs,
    integrate,
    relative_phase_rhs,
)
from .network import (
    CouplingGraph,
    IncidenceRepresentation,
    PacemakerCoupling,
    build_incidence,
    is_connected,
    laplacian,
)
from .phases import order_parameter, wrap_phase

__version__ = "0.1.0"

__all__ = [
    "CouplingGraph",
    "IncidenceRepresentation",
    "IntegrationError",
    "IntegratorConfig",
    "ModelParams",
    "PacemakerCoupling",
    "PhaseState",
    "Trajectory",
    "build_incidence",
    "full_phase_rhs",
    "integrate",
    "is_connected",
    "laplacian",
    "order_parameter",
    "relative_phase_rhs",
    "wrap_phase",
]
