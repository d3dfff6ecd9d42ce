"""Array kernels for filling simulation traces.

The per-tick columns (motor angle, string lengths, joint angle) are the one
genuinely hot array path in the package, so they come in two interchangeable
backends:

* a numba ``@njit`` loop, compiled once and cached on disk (the default when
  numba is importable), and
* a pure-numpy vectorized path.

Set ``TSA_EXO_NUMBA=0`` in the environment to force the numpy path; when
numba is not installed the numpy path is used automatically. Both backends
evaluate the same expressions in the same order, so their outputs are
bit-identical (the test suite checks this, and ``benchmarks/bench_kernels.py``
times them side by side).

The kernel itself is deliberately dumb: it integrates per-tick direction
flags into a motor angle, maps positive angles to a contracted top-string
length, and converts the contraction into a clamped joint angle. Input
validation and encoder-count rounding live in the callers so they are
single-sourced across backends.
"""
from __future__ import annotations

import os

import numpy as np

_RAD_TO_DEG = 180.0 / np.pi


def _trace_columns_loop(directions, step_angle, length, radius, pin_radius, limit_deg):
    n = directions.shape[0]
    angle = np.empty(n)
    top = np.empty(n)
    bottom = np.empty(n)
    joint = np.empty(n)
    acc = 0.0
    for i in range(n):
        if i > 0:
            acc = acc + directions[i - 1] * step_angle
        angle[i] = acc
        twist = acc if acc > 0.0 else 0.0
        contracted = np.sqrt(length * length - twist * twist * radius * radius)
        top[i] = contracted
        bottom[i] = 2.0 * length - contracted
        phi = (length - contracted) / pin_radius * _RAD_TO_DEG
        if phi < 0.0:
            phi = 0.0
        elif phi > limit_deg:
            phi = limit_deg
        joint[i] = phi
    return angle, top, bottom, joint


def trace_columns_numpy(
    directions: np.ndarray,
    step_angle: float,
    length: float,
    radius: float,
    pin_radius: float,
    limit_deg: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized backend; see the module docstring for the contract.

    ``directions`` holds one -1/0/+1 flag per tick; row ``i`` of the output
    is the state after ``i`` ticks, so row 0 is always the rest state and
    flag ``i`` acts between rows ``i`` and ``i + 1``.
    """
    n = directions.shape[0]
    angle = np.empty(n)
    angle[0] = 0.0
    # cumsum accumulates left to right, matching the loop's running sum.
    np.cumsum(directions[:-1] * step_angle, out=angle[1:])
    twist = np.maximum(angle, 0.0)
    contracted = np.sqrt(length * length - twist * twist * radius * radius)
    bottom = 2.0 * length - contracted
    joint = np.clip((length - contracted) / pin_radius * _RAD_TO_DEG, 0.0, limit_deg)
    return angle, contracted, bottom, joint


def _numba_disabled_by_env() -> bool:
    return os.environ.get("TSA_EXO_NUMBA", "1").strip().lower() in (
        "0",
        "false",
        "no",
        "off",
    )


_numba_fn = None


def numba_kernel():
    """Compile (once) and return the numba backend, ignoring the env flag.

    Raises ImportError when numba is not installed. The benchmark uses this
    to compare both backends in one process regardless of TSA_EXO_NUMBA.
    """
    global _numba_fn
    if _numba_fn is None:
        from numba import njit

        _numba_fn = njit(cache=True)(_trace_columns_loop)
    return _numba_fn


if _numba_disabled_by_env():
    trace_columns = trace_columns_numpy
    _BACKEND = "numpy"
else:
    try:
        trace_columns = numba_kernel()
        _BACKEND = "numba"
    except ImportError:
        trace_columns = trace_columns_numpy
        _BACKEND = "numpy"


def backend() -> str:
    """Name of the active backend: ``"numba"`` or ``"numpy"``."""
    return _BACKEND
