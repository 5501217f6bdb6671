"""LP-based validation of the authority index, independent of the facet
enumeration.

The attainable set is probed directly: a bounded-variable LP finds how
far one can travel from the gravity wrench along a given direction while
staying attainable. Sampling many directions gives an estimate of the
ball radius that converges to the closed-form value from above, which is
what makes it a useful acceptance oracle.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from ._kernels import LP_INFEASIBLE, LP_OPTIMAL
from .model import build_effectiveness, build_state_pair

# mirrors the undefined-authority sentinel: reported when the gravity
# wrench itself is not attainable
ESTIMATE_UNDEFINED = -1.0e6

_LP_MAXITER = 2000


class LPSolverError(RuntimeError):
    """The simplex ended without a usable verdict (never silently zero)."""


@dataclass(frozen=True, eq=False)
class DirectionalProbe:
    """Result of one ray shot from G: the step length to the boundary,
    or ``step=None`` when G itself is unattainable along that ray."""

    direction: np.ndarray
    step: float | None

    @property
    def feasible(self):
        return self.step is not None


def directional_step(Bf, K, G, v):
    """Largest t >= 0 with G + t*v attainable, as a `DirectionalProbe`.

    Solves max t subject to Bf f = G + t v, 0 <= f <= K. ``v`` must be a
    unit vector.
    """
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    m = Bf.shape[1]
    A = np.empty((4, m + 1))
    A[:, :m] = Bf
    A[:, m] = -v
    b = np.asarray(G, dtype=float)
    c = np.zeros(m + 1)
    c[m] = -1.0
    lo = np.zeros(m + 1)
    hi = np.empty(m + 1)
    hi[:m] = K
    hi[m] = np.inf
    status, x = kernels.solve_box_lp(A, b, c, lo, hi, _LP_MAXITER)
    if status == LP_INFEASIBLE:
        return DirectionalProbe(direction=v, step=None)
    if status != LP_OPTIMAL:
        raise LPSolverError(f"directional LP ended with status {status}")
    return DirectionalProbe(direction=v, step=float(x[m]))


def _unit_directions(n, seed):
    """n reproducible points on the 3-sphere; prefixes are nested, so a
    longer run revisits exactly the shorter run's directions first."""
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((n, 4))
    norms = np.linalg.norm(raw, axis=1)
    raw[norms < 1e-12] = np.array([1.0, 0.0, 0.0, 0.0])
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def estimate_acai(geometry, n_directions, seed):
    """Monte Carlo upper estimate of the authority index.

    Minimum directional step over ``n_directions`` seeded unit vectors.
    Overestimates the true radius (a min over a subset), never under.
    Returns ``ESTIMATE_UNDEFINED`` if any direction is infeasible at
    t = 0, i.e. G is not attainable at all.
    """
    if n_directions < 1:
        raise ValueError(f"n_directions must be positive, got {n_directions}")
    Bf = build_effectiveness(geometry)
    K = geometry.max_lifts
    G = build_state_pair(geometry).G
    m = Bf.shape[1]

    A = np.empty((4, m + 1))
    A[:, :m] = Bf
    c = np.zeros(m + 1)
    c[m] = -1.0
    lo = np.zeros(m + 1)
    hi = np.empty(m + 1)
    hi[:m] = K
    hi[m] = np.inf

    best = np.inf
    for v in _unit_directions(n_directions, seed):
        A[:, m] = -v
        status, x = kernels.solve_box_lp(A, G, c, lo, hi, _LP_MAXITER)
        if status == LP_INFEASIBLE:
            return ESTIMATE_UNDEFINED
        if status != LP_OPTIMAL:
            raise LPSolverError(f"directional LP ended with status {status}")
        if x[m] < best:
            best = float(x[m])
    return best


def hover_feasible(geometry):
    """True iff some admissible lift vector exactly balances gravity."""
    Bf = build_effectiveness(geometry)
    K = geometry.max_lifts
    G = build_state_pair(geometry).G
    m = Bf.shape[1]
    status, _ = kernels.solve_box_lp(
        Bf, G, np.zeros(m), np.zeros(m), K.astype(float), _LP_MAXITER
    )
    if status == LP_OPTIMAL:
        return True
    if status == LP_INFEASIBLE:
        return False
    raise LPSolverError(f"feasibility LP ended with status {status}")
