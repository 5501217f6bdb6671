"""Hot numeric kernels, written so the same source compiles under numba.

Every function here is self-contained plain numpy (explicit loops, no
python objects, no cross-calls), which lets `_backend` expose two
interchangeable flavours: the functions as-is, or their ``numba.njit``
twins. Keep it that way when editing.
"""

import numpy as np

# double-precision machine epsilon, spelled out so numba sees a constant
_EPS = 2.220446049250313e-16

# components smaller than this are treated as zero by the null-vector
# sign convention (unit vectors always have a component >= 0.5)
_SIGN_TOL = 1e-9

BIG_DISTANCE = 1.0e6

# solver status codes
LP_OPTIMAL = 0
LP_INFEASIBLE = 1
LP_UNBOUNDED = 2
LP_ITERATION_LIMIT = 3


def facet_distance_table(Bf, K, center_offset, S1, S2, rank_tol):
    """Distance from the ball center to every group of parallel facets.

    For each row j of ``S1`` (a 3-combination of column indices into the
    4 x m matrix ``Bf``), computes the unit left-null vector ``xi`` of the
    selected 4 x 3 block and the signed facet distance

        d_j = 0.5 * sum_i K[S2[j,i]] * |xi . Bf[:, S2[j,i]]| - |xi . center_offset|

    ``center_offset`` is (zonotope centroid - ball center). Combinations
    whose 4 x 3 block is numerically rank-deficient get ``BIG_DISTANCE``
    and a zero ``xi`` row. ``rank_tol`` <= 0 selects the default
    singular-value cutoff max(4,3) * sigma_max * eps.

    Returns ``(d, xi, ok)`` with shapes (s_m,), (s_m, 4), (s_m,).
    """
    s_m = S1.shape[0]
    q = S2.shape[1]

    d = np.empty(s_m, np.float64)
    xi = np.zeros((s_m, 4), np.float64)
    ok = np.zeros(s_m, np.bool_)

    B1 = np.empty((4, 3), np.float64)
    for j in range(s_m):
        for k in range(3):
            col = S1[j, k]
            for r in range(4):
                B1[r, k] = Bf[r, col]

        u, s, vt = np.linalg.svd(B1)
        tol = rank_tol if rank_tol > 0.0 else 4.0 * s[0] * _EPS
        rank = 0
        for i in range(3):
            if s[i] > tol:
                rank += 1
        if rank < 3:
            d[j] = BIG_DISTANCE
            continue

        x0 = u[0, 3]
        x1 = u[1, 3]
        x2 = u[2, 3]
        x3 = u[3, 3]
        # deterministic orientation: first non-negligible component positive
        flip = False
        if x0 < -_SIGN_TOL or x0 > _SIGN_TOL:
            flip = x0 < 0.0
        elif x1 < -_SIGN_TOL or x1 > _SIGN_TOL:
            flip = x1 < 0.0
        elif x2 < -_SIGN_TOL or x2 > _SIGN_TOL:
            flip = x2 < 0.0
        else:
            flip = x3 < 0.0
        if flip:
            x0 = -x0
            x1 = -x1
            x2 = -x2
            x3 = -x3

        half_width = 0.0
        for i in range(q):
            col = S2[j, i]
            a = (
                x0 * Bf[0, col]
                + x1 * Bf[1, col]
                + x2 * Bf[2, col]
                + x3 * Bf[3, col]
            )
            half_width += K[col] * abs(a)

        offset = (
            x0 * center_offset[0]
            + x1 * center_offset[1]
            + x2 * center_offset[2]
            + x3 * center_offset[3]
        )

        d[j] = 0.5 * half_width - abs(offset)
        xi[j, 0] = x0
        xi[j, 1] = x1
        xi[j, 2] = x2
        xi[j, 3] = x3
        ok[j] = True

    return d, xi, ok


def solve_box_lp(A, b, c, lo, hi, maxiter):
    """Minimize ``c . x`` subject to ``A x = b`` and ``lo <= x <= hi``.

    Dense two-phase primal simplex for box-constrained variables. Lower
    bounds must be finite; upper bounds may be ``inf``. Entering and
    leaving variables follow Bland's smallest-index rule so the pivot
    sequence (hence the solution on degenerate ties) is deterministic.

    Returns ``(status, x)`` with status one of LP_OPTIMAL, LP_INFEASIBLE,
    LP_UNBOUNDED, LP_ITERATION_LIMIT.
    """
    mc = A.shape[0]
    n = A.shape[1]
    ntot = n + mc

    opt_tol = 1e-9
    piv_tol = 1e-11
    tie_tol = 1e-12

    Aext = np.zeros((mc, ntot), np.float64)
    for i in range(mc):
        for jv in range(n):
            Aext[i, jv] = A[i, jv]

    lo_e = np.empty(ntot, np.float64)
    hi_e = np.empty(ntot, np.float64)
    x = np.empty(ntot, np.float64)
    for jv in range(n):
        lo_e[jv] = lo[jv]
        hi_e[jv] = hi[jv]
        x[jv] = lo[jv]

    # artificial columns make the identity-signed starting basis feasible
    feas_scale = 1.0
    for i in range(mc):
        resid = b[i]
        for jv in range(n):
            resid -= A[i, jv] * x[jv]
        Aext[i, n + i] = 1.0 if resid >= 0.0 else -1.0
        x[n + i] = abs(resid)
        lo_e[n + i] = 0.0
        hi_e[n + i] = np.inf
        feas_scale += abs(b[i])

    basis = np.empty(mc, np.int64)
    in_basis = np.zeros(ntot, np.bool_)
    for i in range(mc):
        basis[i] = n + i
        in_basis[n + i] = True
    at_upper = np.zeros(ntot, np.bool_)

    cost = np.zeros(ntot, np.float64)
    for i in range(mc):
        cost[n + i] = 1.0
    phase = 1

    Bmat = np.empty((mc, mc), np.float64)
    cB = np.empty(mc, np.float64)
    col = np.empty(mc, np.float64)

    it = 0
    while it < maxiter:
        it += 1

        for p in range(mc):
            bp = basis[p]
            cB[p] = cost[bp]
            for r in range(mc):
                Bmat[r, p] = Aext[r, bp]

        y = np.linalg.solve(Bmat.T.copy(), cB)

        # Bland: lowest-index nonbasic with a favourable reduced cost
        enter = -1
        delta_dir = 1.0
        for jv in range(ntot):
            if in_basis[jv]:
                continue
            if hi_e[jv] - lo_e[jv] <= 0.0:
                continue
            dj = cost[jv]
            for r in range(mc):
                dj -= y[r] * Aext[r, jv]
            if not at_upper[jv]:
                if dj < -opt_tol:
                    enter = jv
                    delta_dir = 1.0
                    break
            else:
                if dj > opt_tol:
                    enter = jv
                    delta_dir = -1.0
                    break

        if enter == -1:
            if phase == 1:
                infeas = 0.0
                for i in range(mc):
                    infeas += x[n + i]
                if infeas > 1e-9 * feas_scale:
                    return LP_INFEASIBLE, x[:n].copy()
                # pin artificials at zero and optimize the real objective
                for i in range(mc):
                    hi_e[n + i] = 0.0
                for jv in range(ntot):
                    cost[jv] = c[jv] if jv < n else 0.0
                phase = 2
                continue

            # refresh basic values from the equality system before returning
            rhs = np.empty(mc, np.float64)
            for i in range(mc):
                acc = b[i]
                for jv in range(ntot):
                    if not in_basis[jv]:
                        acc -= Aext[i, jv] * x[jv]
                rhs[i] = acc
            xb = np.linalg.solve(Bmat, rhs)
            for p in range(mc):
                x[basis[p]] = xb[p]
            return LP_OPTIMAL, x[:n].copy()

        for r in range(mc):
            col[r] = Aext[r, enter]
        w = np.linalg.solve(Bmat, col)

        # ratio test: smallest step to a basic bound or the entering gap
        min_basic = np.inf
        for p in range(mc):
            wi = delta_dir * w[p]
            bp = basis[p]
            if wi > piv_tol:
                lim = (x[bp] - lo_e[bp]) / wi
                if lim < min_basic:
                    min_basic = lim
            elif wi < -piv_tol:
                if hi_e[bp] < np.inf:
                    lim = (hi_e[bp] - x[bp]) / (-wi)
                    if lim < min_basic:
                        min_basic = lim

        gap = hi_e[enter] - lo_e[enter]
        if gap <= min_basic:
            if not np.isfinite(gap):
                return LP_UNBOUNDED, x[:n].copy()
            # bound flip, basis unchanged
            for p in range(mc):
                x[basis[p]] -= gap * delta_dir * w[p]
            at_upper[enter] = not at_upper[enter]
            x[enter] = hi_e[enter] if at_upper[enter] else lo_e[enter]
            continue

        if not np.isfinite(min_basic):
            return LP_UNBOUNDED, x[:n].copy()

        # Bland tie-break: among blocking rows, lowest basic variable index
        leave_pos = -1
        leave_var = ntot + 1
        for p in range(mc):
            wi = delta_dir * w[p]
            bp = basis[p]
            if wi > piv_tol:
                lim = (x[bp] - lo_e[bp]) / wi
                if lim <= min_basic + tie_tol and bp < leave_var:
                    leave_pos = p
                    leave_var = bp
            elif wi < -piv_tol:
                if hi_e[bp] < np.inf:
                    lim = (hi_e[bp] - x[bp]) / (-wi)
                    if lim <= min_basic + tie_tol and bp < leave_var:
                        leave_pos = p
                        leave_var = bp

        step = min_basic if min_basic > 0.0 else 0.0
        for p in range(mc):
            x[basis[p]] -= step * delta_dir * w[p]
        x[enter] = lo_e[enter] + step if delta_dir > 0.0 else hi_e[enter] - step

        bl = basis[leave_pos]
        wi = delta_dir * w[leave_pos]
        if wi > 0.0:
            at_upper[bl] = False
            x[bl] = lo_e[bl]
        else:
            at_upper[bl] = True
            x[bl] = hi_e[bl]
        in_basis[bl] = False
        basis[leave_pos] = enter
        in_basis[enter] = True

    return LP_ITERATION_LIMIT, x[:n].copy()
