"""Kernel backend selection.

The env var ``ACAIKIT_BACKEND`` picks the implementation of the hot
kernels in `_kernels`:

* ``numba`` (default): the same source compiled with ``numba.njit``,
  cached on disk after the first call.
* ``numpy``: the plain interpreted functions, useful where numba is
  unavailable or when debugging kernel changes.

If numba cannot be imported the numpy path is used with a warning. The
variable is read once at import time. `get_backend` exposes both
flavours side by side for the benchmark and the cross-checking tests.
"""

import os
import warnings
from types import SimpleNamespace

from . import _kernels

ENV_VAR = "ACAIKIT_BACKEND"

_KERNEL_NAMES = ("facet_distance_table", "solve_box_lp")

_cache: dict[str, SimpleNamespace] = {}


def _numpy_backend():
    return SimpleNamespace(
        name="numpy", **{name: getattr(_kernels, name) for name in _KERNEL_NAMES}
    )


def _numba_backend():
    from numba import njit

    compiled = {
        name: njit(cache=True)(getattr(_kernels, name)) for name in _KERNEL_NAMES
    }
    return SimpleNamespace(name="numba", **compiled)


def get_backend(name):
    """Return the kernel namespace for ``name`` ("numpy" or "numba")."""
    if name not in ("numpy", "numba"):
        raise ValueError(f"unknown backend {name!r}, expected 'numpy' or 'numba'")
    if name not in _cache:
        _cache[name] = _numpy_backend() if name == "numpy" else _numba_backend()
    return _cache[name]


def _select_active():
    requested = os.environ.get(ENV_VAR, "numba").strip().lower()
    if requested not in ("numpy", "numba"):
        raise ValueError(
            f"{ENV_VAR}={requested!r} is not valid; use 'numba' or 'numpy'"
        )
    if requested == "numba":
        try:
            return get_backend("numba")
        except ImportError:
            warnings.warn(
                "numba is not importable; falling back to the numpy kernels "
                f"(set {ENV_VAR}=numpy to silence this)",
                RuntimeWarning,
                stacklevel=2,
            )
            return get_backend("numpy")
    return get_backend("numpy")


kernels = _select_active()


def warm_up():
    """Trigger kernel compilation on tiny inputs (no-op for numpy)."""
    import numpy as np

    Bf = np.eye(4, 5)
    K = np.ones(5)
    S1 = np.array([[0, 1, 2]], dtype=np.int64)
    S2 = np.array([[3, 4]], dtype=np.int64)
    kernels.facet_distance_table(Bf, K, np.zeros(4), S1, S2, 0.0)
    kernels.solve_box_lp(
        np.ones((1, 2)), np.ones(1), np.zeros(2), np.zeros(2), np.ones(2), 100
    )
