"""Available control authority and positive-controllability verdicts.

The attainable control set of a multirotor is the zonotope image of the
rotor-lift box under the effectiveness matrix. The available control
authority index (ACAI) is the radius of the largest ball centered at the
gravity wrench G that fits inside that set; it is negative in magnitude
when G falls outside. The closed form below enumerates the facet groups
of the zonotope (one per 3-combination of rotors) instead of sampling.

A vehicle hovering at trim is controllable exactly when the classical
rank condition holds and the ACAI is strictly positive; with rotors that
can only push, full Kalman rank alone is not enough.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from ._kernels import BIG_DISTANCE, LP_OPTIMAL
from .model import build_effectiveness, build_state_pair
from .numerics import enumerate_combinations, left_null_unit, numerical_rank
from .oracle import LPSolverError

# strict-positivity margin for the controllability verdict: boundary
# cases compute to zero up to rounding and must not count as controllable
VERDICT_TOLERANCE = 1e-6

# reported when rank B_f < 4 and the index is undefined (the attainable
# set is lower-dimensional, so no ball of positive radius fits)
ACAI_UNDEFINED = -1.0e6

FAILED_NONE = "none"
FAILED_RANK = "rank_deficit"
FAILED_ACAI = "acai_nonpositive"
FAILED_EFFECTIVENESS = "effectiveness_rank_deficit"


@dataclass(frozen=True, eq=False)
class FacetDistance:
    """Signed distance from G to one group of parallel facets.

    ``xi`` is the unit normal shared by the group, or ``None`` when the
    3-rotor block is rank-deficient (then ``d`` is the large sentinel
    that keeps the group out of the minimum).
    """

    j: int
    d: float
    xi: np.ndarray | None

    @property
    def degenerate(self):
        return self.xi is None


@dataclass(frozen=True, eq=False)
class AcaiReport:
    """Everything the authority computation learned about one geometry.

    ``facet_distances`` keeps all per-combination distances because the
    identity of the limiting rotor triple is usually the interesting
    answer, not just the minimum. ``ambiguous_exterior`` is set when the
    minimum signed distance is negative but the smallest magnitude comes
    from a facet with positive distance; the reported magnitude is then
    the verbatim formula value rather than a certified exterior distance.
    """

    acai: float
    facet_distances: tuple
    rank_bf: int
    rank_ctrb: int
    controllable: bool
    ambiguous_exterior: bool = False

    @property
    def limiting(self):
        """Facet with the smallest |d| (ties: lowest index), or None."""
        if not self.facet_distances:
            return None
        magnitudes = [abs(f.d) for f in self.facet_distances]
        return self.facet_distances[int(np.argmin(magnitudes))]


def center_lift(geometry):
    """Lift vector at the center of the rotor box: half of each max lift."""
    return geometry.max_lifts / 2.0


def controllability_matrix(A, B):
    """Kalman stack [B, AB, ..., A^7 B] for the 8-state hover model."""
    blocks = [B]
    current = B
    for _ in range(1, A.shape[0]):
        current = A @ current
        blocks.append(current)
    return np.hstack(blocks)


def facet_distance(j, Bf, tables, geometry, G, rank_tol=None):
    """Distance from G to facet group ``j`` (reference implementation).

    ``compute_acai`` evaluates the same quantity through the batched
    kernel; this spelled-out version exists for single-facet queries and
    as the readable anchor the kernel is tested against.
    """
    if not 0 <= j < tables.count:
        raise ValueError(f"combination index {j} out of range 0..{tables.count - 1}")
    chosen = tables.s1[j]
    rest = tables.s2[j]
    xi = left_null_unit(Bf[:, chosen], tol=rank_tol)
    if xi is None:
        return FacetDistance(j=j, d=BIG_DISTANCE, xi=None)
    K = geometry.max_lifts
    projections = xi @ Bf[:, rest]
    half_width = 0.5 * float(np.abs(projections) @ K[rest])
    centroid = Bf @ center_lift(geometry)
    d = half_width - abs(float(xi @ (centroid - G)))
    return FacetDistance(j=j, d=d, xi=xi)


def _acai_from_distances(d):
    """Fold the per-facet distances: sign(min d) * min |d| (ties: lowest j)."""
    d_min = float(d.min())
    magnitude = float(np.abs(d).min())
    return float(np.sign(d_min)) * magnitude


def compute_acai(geometry, rank_tol=None, verdict_tol=VERDICT_TOLERANCE):
    """Closed-form ACAI with full per-facet diagnostics.

    Returns an `AcaiReport`. If the effectiveness matrix has rank < 4
    the attainable set is degenerate and ``acai`` is the ``ACAI_UNDEFINED``
    sentinel (no facet table is produced). ``rank_tol`` overrides the
    singular-value cutoff used for both rank decisions, which matters
    when efficiencies are tiny rather than exactly zero.
    """
    Bf = build_effectiveness(geometry)
    pair = build_state_pair(geometry)
    rank_ctrb = numerical_rank(controllability_matrix(pair.A, pair.B))
    rank_bf = numerical_rank(Bf, tol=rank_tol)

    if rank_bf < 4:
        return AcaiReport(
            acai=ACAI_UNDEFINED,
            facet_distances=(),
            rank_bf=rank_bf,
            rank_ctrb=rank_ctrb,
            controllable=False,
        )

    tables = enumerate_combinations(geometry.rotor_count)
    K = geometry.max_lifts
    center_offset = Bf @ center_lift(geometry) - pair.G
    d, xi, ok = kernels.facet_distance_table(
        Bf,
        K,
        center_offset,
        tables.s1,
        tables.s2,
        rank_tol if rank_tol is not None else 0.0,
    )

    distances = tuple(
        FacetDistance(j=j, d=float(d[j]), xi=xi[j].copy() if ok[j] else None)
        for j in range(tables.count)
    )
    acai = _acai_from_distances(d)
    ambiguous = bool(d.min() < 0.0 and d[int(np.argmin(np.abs(d)))] > 0.0)
    controllable = rank_ctrb == 8 and acai > verdict_tol
    return AcaiReport(
        acai=acai,
        facet_distances=distances,
        rank_bf=rank_bf,
        rank_ctrb=rank_ctrb,
        controllable=controllable,
        ambiguous_exterior=ambiguous,
    )


@dataclass(frozen=True, eq=False)
class ControllabilityVerdict:
    """Outcome of the full test procedure, with the report that drove it."""

    rank_ctrb: int
    acai: float
    controllable: bool
    failed_condition: str
    report: AcaiReport


def assess_controllability(geometry, rank_tol=None, verdict_tol=VERDICT_TOLERANCE):
    """Run the complete positive-controllability test on one geometry.

    Order of checks: Kalman rank of the hover pair, effectiveness rank
    (degenerate set short-circuits to the sentinel), then the facet
    enumeration and the strict ACAI threshold.
    """
    report = compute_acai(geometry, rank_tol=rank_tol, verdict_tol=verdict_tol)
    if report.rank_ctrb < 8:
        failed = FAILED_RANK
    elif report.rank_bf < 4:
        failed = FAILED_EFFECTIVENESS
    elif report.acai <= verdict_tol:
        failed = FAILED_ACAI
    else:
        failed = FAILED_NONE
    return ControllabilityVerdict(
        rank_ctrb=report.rank_ctrb,
        acai=report.acai,
        controllable=failed == FAILED_NONE,
        failed_condition=failed,
        report=report,
    )


def _support_margin_lp(Bf, K, G, axis, sign, maxiter=2000):
    """Minimize the support margin of the shifted attainable set over one
    face ``c[axis] = sign`` of the unit-infinity sphere.

    The margin of a direction c is max over attainable F of c.(F - G),
    a piecewise-linear convex function of c; on a box face its minimum
    is an LP. Variables are (c, s, sigma) with s_i >= max(0, c.b_i)
    enforced through slack sigma_i and minimized against weight K_i.
    """
    m = Bf.shape[1]
    n = 4 + 2 * m
    A = np.zeros((m, n))
    A[:, :4] = Bf.T
    A[:, 4 : 4 + m] = -np.eye(m)
    A[:, 4 + m :] = np.eye(m)
    b = np.zeros(m)
    c_vec = np.zeros(n)
    c_vec[:4] = -G
    c_vec[4 : 4 + m] = K
    lo = np.zeros(n)
    hi = np.full(n, np.inf)
    lo[:4] = -1.0
    hi[:4] = 1.0
    lo[axis] = hi[axis] = float(sign)
    status, x = kernels.solve_box_lp(A, b, c_vec, lo, hi, maxiter)
    if status != LP_OPTIMAL:
        raise LPSolverError(f"support-margin LP ended with status {status}")
    return float(c_vec @ x)


def check_brammer_eigenvector_condition(geometry, samples, seed=0, margin_tol=1e-6):
    """Hunt for a real eigenvector of the hover drift transpose along which
    no admissible control pushes positively.

    Every such eigenvector is parameterized by a nonzero 4-vector acting
    through the inverse inertia, so this reduces to directions c in wrench
    space and the support margin max over attainable F of c.(F - G).
    Two searches combine (both must stay above ``margin_tol``):

    * ``samples`` random unit directions, the straightforward randomized
      probe — enough to catch any open set of violating directions;
    * an exact minimization of the margin over the unit-infinity sphere
      (eight face LPs), which catches the measure-zero boundary case
      where G sits exactly on a facet and random probing cannot land on
      the violating normal.

    Agrees with ``compute_acai(...) > margin_tol`` because the minimal
    margin over unit directions equals the ball radius (the infinity-norm
    minimum brackets it within a factor of two, preserving the sign and
    the zero). Never touches the facet tables, so it cross-checks the
    closed form through an independent route.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    Bf = build_effectiveness(geometry)
    K = geometry.max_lifts
    pair = build_state_pair(geometry)
    G = pair.G

    jf_inv = np.array(
        [-1.0 / geometry.mass, 1.0 / geometry.jx, 1.0 / geometry.jy, 1.0 / geometry.jz]
    )
    rng = np.random.default_rng(seed)
    k_samples = rng.standard_normal((samples, 4))
    norms = np.linalg.norm(k_samples, axis=1)
    k_samples[norms < 1e-12] = np.array([1.0, 0.0, 0.0, 0.0])
    directions = k_samples * jf_inv
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)

    lifted = directions @ Bf
    margins = np.clip(lifted, 0.0, None) @ K - directions @ G
    if float(margins.min()) <= margin_tol:
        return False

    worst = min(
        _support_margin_lp(Bf, K, G, axis, sign)
        for axis in range(4)
        for sign in (1.0, -1.0)
    )
    return worst > margin_tol
