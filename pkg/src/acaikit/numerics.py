"""Small dense linear-algebra helpers: rank, left-null vectors, 3-subsets."""

import itertools
from dataclasses import dataclass

import numpy as np

# threshold below which a unit-vector component does not decide orientation
SIGN_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CombinationTables:
    """All 3-subsets of {0..m-1} (rows of ``s1``) and their complements.

    Rows are lexicographic; row j of ``s2`` is the sorted complement of
    row j of ``s1``. ``count`` equals C(m, 3).
    """

    s1: np.ndarray
    s2: np.ndarray
    count: int


def enumerate_combinations(m):
    """Index tables for the facet groups of an m-rotor vehicle."""
    if m < 4:
        raise ValueError(f"need m >= 4 rotors, got {m}")
    rows = list(itertools.combinations(range(m), 3))
    s1 = np.array(rows, dtype=np.int64)
    full = frozenset(range(m))
    s2 = np.array(
        [sorted(full.difference(row)) for row in rows], dtype=np.int64
    )
    return CombinationTables(s1=s1, s2=s2, count=len(rows))


def numerical_rank(M, tol=None):
    """Count singular values above the cutoff.

    Default cutoff is max(shape) * sigma_max * machine eps; pass ``tol``
    for an absolute threshold (useful when tiny efficiencies make the
    scale of a column meaningful).
    """
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        raise ValueError("rank of an empty matrix is undefined")
    s = np.linalg.svd(M, compute_uv=False)
    if tol is None:
        tol = max(M.shape) * s[0] * np.finfo(float).eps
    return int(np.count_nonzero(s > tol))


def left_null_unit(B1, tol=None):
    """Unit vector xi with xi @ B1 == 0 for a full-rank 4 x 3 block.

    Returns ``None`` when B1 is numerically rank-deficient (the caller
    maps that to a sentinel distance). The sign is fixed so the first
    component larger than ``SIGN_TOL`` in magnitude is positive, which
    makes repeated runs and reports reproducible.
    """
    B1 = np.asarray(B1, dtype=float)
    if B1.shape != (4, 3):
        raise ValueError(f"expected a 4x3 block, got {B1.shape}")
    u, s, _ = np.linalg.svd(B1)
    if tol is None:
        tol = 4.0 * s[0] * np.finfo(float).eps
    if np.count_nonzero(s > tol) < 3:
        return None
    xi = u[:, 3].copy()
    for component in xi:
        if abs(component) > SIGN_TOL:
            if component < 0.0:
                xi = -xi
            break
    return xi
