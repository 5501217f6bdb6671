"""Efficiency-grid sweeps: where in degradation space does control survive."""

import itertools
from dataclasses import dataclass

import numpy as np

from .model import ConfigurationError
from .controllability import assess_controllability


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """Long-form lattice of verdicts over varied rotor efficiencies.

    ``axes`` pairs each varied rotor index (0-based) with its sample
    values. Point order is lexicographic in the lattice coordinates
    (last axis fastest), matching the row order of the CSV output.
    """

    axes: tuple
    eta: np.ndarray
    acai: np.ndarray
    controllable: np.ndarray
    spacing: float

    @property
    def shape(self):
        return tuple(len(values) for _, values in self.axes)

    @property
    def point_count(self):
        return self.eta.shape[0]

    def strides(self):
        """Index step between lattice neighbors along each axis."""
        shape = self.shape
        strides = []
        step = 1
        for size in reversed(shape):
            strides.append(step)
            step *= size
        return tuple(reversed(strides))


def lattice_values(spacing):
    """Samples 0, spacing, 2*spacing, ... with 1.0 always appended.

    The endpoints must be lattice members so single-failure and nominal
    cases are directly comparable with sweep output.
    """
    if not 0.0 < spacing <= 1.0:
        raise ConfigurationError(f"spacing must lie in (0, 1], got {spacing}")
    values = []
    i = 0
    while True:
        v = i * spacing
        if v >= 1.0 - 1e-12:
            break
        values.append(v)
        i += 1
    values.append(1.0)
    return np.array(values)


def run_sweep(base_geometry, varied_rotors, spacing):
    """Verdict and authority index at every point of the efficiency lattice.

    ``varied_rotors`` are 0-based indices of one to three rotors whose
    efficiencies sweep [0, 1]; all other rotors keep the base values.
    """
    varied = sorted(set(int(i) for i in varied_rotors))
    if not 1 <= len(varied) <= 3:
        raise ConfigurationError(
            f"can vary 1 to 3 rotors, got {len(varied)}"
        )
    for idx in varied:
        if not 0 <= idx < base_geometry.rotor_count:
            raise ConfigurationError(
                f"rotor index {idx} out of range for {base_geometry.rotor_count} rotors"
            )

    values = lattice_values(spacing)
    axes = tuple((idx, values.copy()) for idx in varied)
    base_eta = base_geometry.efficiencies

    points = list(itertools.product(values, repeat=len(varied)))
    eta_rows = np.empty((len(points), len(varied)))
    acai = np.empty(len(points))
    controllable = np.empty(len(points), dtype=bool)

    for row, combo in enumerate(points):
        eta = base_eta.copy()
        for idx, value in zip(varied, combo):
            eta[idx] = value
        verdict = assess_controllability(base_geometry.with_efficiencies(eta))
        eta_rows[row] = combo
        acai[row] = verdict.acai
        controllable[row] = verdict.controllable

    return SweepGrid(
        axes=axes,
        eta=eta_rows,
        acai=acai,
        controllable=controllable,
        spacing=float(spacing),
    )


def _neighbor_pairs(grid):
    """Yield (index, neighbor_index) for adjacent lattice points, forward
    along each axis."""
    shape = grid.shape
    strides = grid.strides()
    for flat in range(grid.point_count):
        coords = []
        rem = flat
        for size, stride in zip(shape, strides):
            coords.append((rem // stride) % size)
        for axis, (size, stride) in enumerate(zip(shape, strides)):
            if coords[axis] + 1 < size:
                yield flat, flat + stride


def boundary_extract(grid, tolerance=None):
    """Indices of lattice points whose verdict differs from a neighbor.

    These straddle the edge of the controllable region, where the
    authority index passes through zero. With ``tolerance`` set, points
    whose |acai| exceeds it are dropped (e.g. to ignore sentinel values
    on deeply degenerate corners).
    """
    flagged = np.zeros(grid.point_count, dtype=bool)
    for a, b in _neighbor_pairs(grid):
        if grid.controllable[a] != grid.controllable[b]:
            flagged[a] = True
            flagged[b] = True
    indices = np.flatnonzero(flagged)
    if tolerance is not None:
        indices = indices[np.abs(grid.acai[indices]) <= tolerance]
    return indices


def upward_closure_violations(grid):
    """Adjacent pairs (lower, upper) where more efficiency loses control.

    Empty for any geometry whose authority index is monotone in each
    efficiency, which is a structural property of the attainable set
    (longer generator segments only grow it). A violation between
    non-adjacent comparable points always implies an adjacent one, so
    checking lattice edges is sufficient.
    """
    violations = []
    for a, b in _neighbor_pairs(grid):
        if grid.controllable[a] and not grid.controllable[b]:
            violations.append((a, b))
    return violations
