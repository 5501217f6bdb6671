"""Shared test utilities: random geometries and independent oracles.

The oracles here deliberately take different routes than the library:
null vectors come from cofactor expansion instead of the SVD, facet
distances from explicit vertex enumeration instead of the sign-folded
closed form, support margins from the box-vertex formula. Keeping them
independent is the point.
"""

import itertools

import numpy as np

from acaikit.model import MultirotorGeometry, RotorSpec


def random_geometry(rng, m, healthy=False):
    """Random m-rotor vehicle.

    ``healthy=True`` builds a regular ring with alternating spins and
    strong efficiencies, which is controllable most of the time; the
    default is fully randomized and lands on either side of the verdict.
    """
    if healthy:
        azimuths = np.arange(m) * 2.0 * np.pi / m
        spins = np.array([-1 if i % 2 == 0 else 1 for i in range(m)])
        arms = np.full(m, rng.uniform(0.15, 0.4))
        lifts = np.full(m, rng.uniform(4.0, 9.0))
        eta = rng.uniform(0.6, 1.0, size=m)
        mass = float((lifts * eta).sum() * rng.uniform(0.25, 0.5) / 9.8)
    else:
        azimuths = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=m))
        spins = rng.choice(np.array([-1, 1]), size=m)
        arms = rng.uniform(0.1, 0.45, size=m)
        lifts = rng.uniform(2.0, 9.0, size=m)
        eta = rng.uniform(0.0, 1.0, size=m)
        mass = float(rng.uniform(0.5, 3.0))

    rotors = tuple(
        RotorSpec(
            arm_length=float(a),
            azimuth=float(az),
            spin=int(s),
            max_lift=float(k),
            efficiency=float(e),
        )
        for a, az, s, k, e in zip(arms, azimuths, spins, lifts, eta)
    )
    return MultirotorGeometry(
        rotors=rotors,
        mass=mass,
        gravity=9.8,
        jx=float(rng.uniform(0.01, 0.1)),
        jy=float(rng.uniform(0.01, 0.1)),
        jz=float(rng.uniform(0.01, 0.1)),
        torque_ratio=float(rng.uniform(0.05, 0.2)),
    )


def cross_null(B1):
    """Left-null vector of a 4x3 block by cofactor expansion.

    Component i is (-1)^i times the minor with row i removed, so the dot
    with any column is a 4x4 determinant with a repeated column: zero.
    """
    xi = np.empty(4)
    for i in range(4):
        minor = np.delete(B1, i, axis=0)
        xi[i] = (-1.0) ** i * np.linalg.det(minor)
    return xi


def apply_sign_convention(xi, tol=1e-9):
    """Same orientation rule the library uses: first sizeable component
    positive."""
    for component in xi:
        if abs(component) > tol:
            return -xi if component < 0.0 else xi
    return xi


def facet_distance_bruteforce(Bf, K, G, xi, s2_row):
    """Distance to a facet group by enumerating every boundary offset.

    Walks all 2^(m-3) choices of the complement rotors pinned at 0 or
    full lift, takes the farthest hyperplane from the centroid along xi,
    then subtracts the centroid-to-G projection.
    """
    B2 = Bf[:, s2_row]
    half = K[s2_row] / 2.0
    projections = xi @ B2
    best = max(
        abs(float(projections @ np.array(z)))
        for z in itertools.product(*[(-h, h) for h in half])
    )
    centroid = Bf @ (K / 2.0)
    return best - abs(float(xi @ (centroid - G)))


def support_margin(Bf, K, G, c):
    """max over attainable F of c.(F - G), via the box-vertex maximizer."""
    lifted = c @ Bf
    return float(np.clip(lifted, 0.0, None) @ K - c @ G)
