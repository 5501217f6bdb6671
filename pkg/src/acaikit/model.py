"""Vehicle geometry and the hover-linearized model matrices.

A multirotor hovering near trim is described by an 8-state double
integrator driven by the total thrust T and the body torques L, M, N.
The per-rotor lifts map onto (T, L, M, N) through a 4 x m effectiveness
matrix whose columns scale with each rotor's efficiency; a failed rotor
is a zero column.
"""

import math
from dataclasses import dataclass, replace

import numpy as np


class ConfigurationError(ValueError):
    """Raised for physically invalid or malformed vehicle descriptions."""


SPIN_ANTICLOCKWISE = 1
SPIN_CLOCKWISE = -1


@dataclass(frozen=True)
class RotorSpec:
    """One rotor: placement, spin direction, lift limit, efficiency.

    arm_length   distance from the mass center, m
    azimuth      angle of the arm in the body plane, rad
    spin         +1 anticlockwise, -1 clockwise
    max_lift     maximum lift the rotor can produce, N
    efficiency   degradation factor in [0, 1]; 0 means failed
    """

    arm_length: float
    azimuth: float
    spin: int
    max_lift: float
    efficiency: float = 1.0

    def __post_init__(self):
        if self.spin not in (SPIN_ANTICLOCKWISE, SPIN_CLOCKWISE):
            raise ConfigurationError(f"spin must be +1 or -1, got {self.spin}")
        if self.max_lift <= 0.0:
            raise ConfigurationError(f"max_lift must be positive, got {self.max_lift}")
        if self.arm_length < 0.0:
            raise ConfigurationError(
                f"arm_length must be nonnegative, got {self.arm_length}"
            )
        if not 0.0 <= self.efficiency <= 1.0:
            raise ConfigurationError(
                f"efficiency must lie in [0, 1], got {self.efficiency}"
            )


@dataclass(frozen=True)
class MultirotorGeometry:
    """Full vehicle description: rotor ring plus rigid-body constants.

    Angles are radians and rotors are indexed 0-based here; file formats
    and CLI output use degrees and 1-based rotor numbers.
    """

    rotors: tuple
    mass: float
    gravity: float
    jx: float
    jy: float
    jz: float
    torque_ratio: float

    def __post_init__(self):
        object.__setattr__(self, "rotors", tuple(self.rotors))
        if len(self.rotors) < 4:
            raise ConfigurationError(
                f"need at least 4 rotors to span thrust and torques, got {len(self.rotors)}"
            )
        for name in ("mass", "gravity", "jx", "jy", "jz", "torque_ratio"):
            value = getattr(self, name)
            if value <= 0.0:
                raise ConfigurationError(f"{name} must be positive, got {value}")

    @property
    def rotor_count(self):
        return len(self.rotors)

    @property
    def max_lifts(self):
        return np.array([r.max_lift for r in self.rotors])

    @property
    def efficiencies(self):
        return np.array([r.efficiency for r in self.rotors])

    def with_efficiencies(self, eta):
        """Copy of the geometry with all rotor efficiencies replaced."""
        eta = tuple(float(v) for v in eta)
        if len(eta) != self.rotor_count:
            raise ConfigurationError(
                f"expected {self.rotor_count} efficiencies, got {len(eta)}"
            )
        rotors = tuple(
            replace(r, efficiency=v) for r, v in zip(self.rotors, eta)
        )
        return replace(self, rotors=rotors)

    def with_efficiency(self, index, value):
        """Copy with rotor ``index`` (0-based) set to efficiency ``value``."""
        if not 0 <= index < self.rotor_count:
            raise ConfigurationError(
                f"rotor index {index} out of range for {self.rotor_count} rotors"
            )
        eta = list(self.efficiencies)
        eta[index] = value
        return self.with_efficiencies(eta)


@dataclass(frozen=True, eq=False)
class StatePair:
    """Hover-linearized state-space matrices and the gravity wrench.

    A is the 8 x 8 double-integrator block matrix (A @ A == 0), B injects
    (T, L, M, N) deviations through the inverse inertia diag(-m, jx, jy, jz),
    and G = [m*g, 0, 0, 0] is the wrench that holds the vehicle at hover.
    """

    A: np.ndarray
    B: np.ndarray
    G: np.ndarray


def build_effectiveness(geometry):
    """Map rotor lifts to total thrust/torques: 4 x m matrix.

    Row 1 is the thrust share eta_i, rows 2-3 the roll/pitch moment arms
    -eta_i r_i sin(phi_i) and eta_i r_i cos(phi_i), row 4 the reactive yaw
    torque eta_i w_i k_mu.
    """
    m = geometry.rotor_count
    Bf = np.empty((4, m))
    k_mu = geometry.torque_ratio
    for i, rotor in enumerate(geometry.rotors):
        eta = rotor.efficiency
        Bf[0, i] = eta
        Bf[1, i] = -eta * rotor.arm_length * math.sin(rotor.azimuth)
        Bf[2, i] = eta * rotor.arm_length * math.cos(rotor.azimuth)
        Bf[3, i] = eta * rotor.spin * k_mu
    return Bf


def build_state_pair(geometry):
    """Exact (A, B, G) of the hover model for this geometry."""
    A = np.zeros((8, 8))
    A[:4, 4:] = np.eye(4)
    B = np.zeros((8, 4))
    B[4, 0] = -1.0 / geometry.mass
    B[5, 1] = 1.0 / geometry.jx
    B[6, 2] = 1.0 / geometry.jy
    B[7, 3] = 1.0 / geometry.jz
    G = np.array([geometry.mass * geometry.gravity, 0.0, 0.0, 0.0])
    return StatePair(A=A, B=B, G=G)


def _regular_hexacopter(spins):
    rotors = tuple(
        RotorSpec(
            arm_length=0.275,
            azimuth=math.radians(60.0 * i),
            spin=spin,
            max_lift=6.125,
            efficiency=1.0,
        )
        for i, spin in enumerate(spins)
    )
    return MultirotorGeometry(
        rotors=rotors,
        mass=1.535,
        gravity=9.80,
        jx=0.0411,
        jy=0.0478,
        jz=0.0599,
        torque_ratio=0.1,
    )


def _pnpnpn():
    # P = clockwise (-1), N = anticlockwise (+1)
    return _regular_hexacopter((-1, 1, -1, 1, -1, 1))


def _ppnnpn():
    return _regular_hexacopter((-1, -1, 1, 1, -1, 1))


PRESETS = {
    "pnpnpn-table1": _pnpnpn,
    "ppnnpn-table1": _ppnnpn,
}


def preset(name):
    """Return a named built-in geometry (see ``PRESETS`` for choices)."""
    try:
        factory = PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigurationError(f"unknown preset {name!r}; available: {known}")
    return factory()
