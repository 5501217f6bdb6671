"""Positive-controllability analysis of multirotor helicopters.

Decides whether a multirotor remains controllable under rotor wear and
failure by computing the available control authority index — the radius
of the largest ball, centered at the gravity wrench, inside the
attainable thrust/torque set — and validates it against an independent
LP-based sampling oracle.
"""

from .model import (
    ConfigurationError,
    MultirotorGeometry,
    PRESETS,
    RotorSpec,
    StatePair,
    build_effectiveness,
    build_state_pair,
    preset,
)
from .numerics import (
    CombinationTables,
    enumerate_combinations,
    left_null_unit,
    numerical_rank,
)
from .controllability import (
    ACAI_UNDEFINED,
    AcaiReport,
    ControllabilityVerdict,
    FacetDistance,
    VERDICT_TOLERANCE,
    center_lift,
    check_brammer_eigenvector_condition,
    compute_acai,
    controllability_matrix,
    facet_distance,
    assess_controllability,
)
from .oracle import (
    DirectionalProbe,
    ESTIMATE_UNDEFINED,
    LPSolverError,
    directional_step,
    estimate_acai,
    hover_feasible,
)
from .sweep import (
    SweepGrid,
    boundary_extract,
    lattice_values,
    run_sweep,
    upward_closure_violations,
)

__version__ = "0.1.0"

__all__ = [
    "ACAI_UNDEFINED",
    "AcaiReport",
    "CombinationTables",
    "ConfigurationError",
    "ControllabilityVerdict",
    "DirectionalProbe",
    "ESTIMATE_UNDEFINED",
    "FacetDistance",
    "LPSolverError",
    "MultirotorGeometry",
    "PRESETS",
    "RotorSpec",
    "StatePair",
    "SweepGrid",
    "VERDICT_TOLERANCE",
    "boundary_extract",
    "build_effectiveness",
    "build_state_pair",
    "center_lift",
    "check_brammer_eigenvector_condition",
    "compute_acai",
    "controllability_matrix",
    "directional_step",
    "enumerate_combinations",
    "estimate_acai",
    "facet_distance",
    "hover_feasible",
    "lattice_values",
    "left_null_unit",
    "numerical_rank",
    "preset",
    "run_sweep",
    "assess_controllability",
    "upward_closure_violations",
]
