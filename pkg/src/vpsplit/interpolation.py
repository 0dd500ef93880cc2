"""One-dimensional shift kernels on uniform grids.

A shift evaluates the interpolant of grid data at the uniformly displaced
points x_i - delta.  Because the displacement is the same for every output
node, the evaluation reduces to gathering the two bracketing nodes (index
offset k = floor(delta/h)) and combining them with weights that depend only
on the fractional offset theta = delta/h - k.  Both kernels reproduce node
values and constants exactly.

Two data extensions are provided:

* periodic -- data wraps with period n*h; the resulting operator is
  circulant with unit row sums, hence it preserves the data sum for any
  shift.
* bounded -- the data is extended by one zero node on each side; cubic
  splines use natural end conditions on the data, so the extension cells
  evaluate as plain ramps to zero (the end moments vanish) and queries
  beyond the zero nodes return zero.  Interpolating through the zero nodes
  (rather than hard masking at the data edge) keeps the operator
  continuous in the shift, so a vanishing shift tends to the identity even
  on the boundary nodes.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

__all__ = ["SCHEMES", "DEFAULT_SCHEME", "shift_periodic", "shift_bounded"]

SCHEMES = ("linear", "cubic")
DEFAULT_SCHEME = "cubic"


def _require_scheme(scheme: str):
    if scheme not in SCHEMES:
        raise ValueError(f"unknown interpolation scheme {scheme!r}, expected one of {SCHEMES}")


def _require_grid(n: int, h: float):
    if n < 4:
        raise ValueError(f"need at least 4 nodes, got {n}")
    if not (np.isfinite(h) and h > 0):
        raise ValueError(f"grid spacing must be positive and finite, got {h}")


def _solve_cyclic_tridiagonal(rhs: np.ndarray) -> np.ndarray:
    """Solve the cyclic tridiagonal system with stencil (1, 4, 1).

    Sherman-Morrison splitting of the corner entries; rhs may hold multiple
    right-hand sides as columns.
    """
    n = rhs.shape[0]
    gamma = -4.0
    diag = np.full(n, 4.0)
    diag[0] -= gamma
    diag[-1] -= 1.0 / gamma
    ab = np.ones((3, n))
    ab[1] = diag
    u = np.zeros(n)
    u[0] = gamma
    u[-1] = 1.0
    y = solve_banded((1, 1), ab, rhs, check_finite=False)
    z = solve_banded((1, 1), ab, u, check_finite=False)
    # v = e_0 + e_{n-1}/gamma
    vy = y[0] + y[-1] / gamma
    vz = z[0] + z[-1] / gamma
    return y - np.outer(z, vy / (1.0 + vz))


def _periodic_moments(values: np.ndarray, h: float) -> np.ndarray:
    """Second derivatives of the C2 periodic cubic spline through the columns."""
    rhs = (6.0 / (h * h)) * (np.roll(values, 1, axis=0) - 2.0 * values + np.roll(values, -1, axis=0))
    return _solve_cyclic_tridiagonal(rhs)


def _natural_moments(values: np.ndarray, h: float) -> np.ndarray:
    """Second derivatives of the natural cubic spline (zero at both ends)."""
    n = values.shape[0]
    rhs = (6.0 / (h * h)) * (values[:-2] - 2.0 * values[1:-1] + values[2:])
    ab = np.ones((3, n - 2))
    ab[1] = 4.0
    moments = np.zeros_like(values)
    moments[1:-1] = solve_banded((1, 1), ab, rhs, check_finite=False)
    return moments


def _spline_combine(fa, fb, ma, mb, theta, h: float):
    """Cubic value at local offset 1-theta inside the cell [a, b]."""
    wa = theta
    wb = 1.0 - theta
    return wa * fa + wb * fb + (h * h / 6.0) * ((wa * wa * wa - wa) * ma + (wb * wb * wb - wb) * mb)


def _shift_periodic_batch(values: np.ndarray, deltas: np.ndarray, h: float, scheme: str) -> np.ndarray:
    """Shift each column c of `values` (n, m) by deltas[c] with periodic wrap."""
    n, m = values.shape
    period = n * h
    red = deltas - period * np.floor(deltas / period)
    t = red / h
    k = np.floor(t).astype(np.int64)
    np.clip(k, 0, n - 1, out=k)  # guard the t == n rounding edge
    theta = t - k

    rows = np.arange(n)[:, None]
    cols = np.arange(m)[None, :]
    idx_b = (rows - k[None, :]) % n
    idx_a = (idx_b - 1) % n
    fb = values[idx_b, cols]
    fa = values[idx_a, cols]
    if scheme == "linear":
        return theta * fa + (1.0 - theta) * fb
    moments = _periodic_moments(values, h)
    mb = moments[idx_b, cols]
    ma = moments[idx_a, cols]
    return _spline_combine(fa, fb, ma, mb, theta, h)


def _gather_or_zero(arr: np.ndarray, idx: np.ndarray, cols: np.ndarray) -> np.ndarray:
    n = arr.shape[0]
    inside = (idx >= 0) & (idx <= n - 1)
    safe = np.clip(idx, 0, n - 1)
    return np.where(inside, arr[safe, cols], 0.0)


def _shift_bounded_batch(values: np.ndarray, deltas: np.ndarray, h: float, scheme: str) -> np.ndarray:
    """Shift each column of `values` (n, m) by deltas[c]; zero extension outside."""
    n, m = values.shape
    # anything beyond n+2 cells is fully outside; clipping keeps the floor
    # representable for arbitrarily large shifts
    t = np.clip(deltas / h, -(n + 3.0), n + 3.0)
    k = np.floor(t).astype(np.int64)
    theta = t - k

    padded = np.zeros((n + 2, m))
    padded[1:-1] = values
    rows = np.arange(n)[:, None]
    cols = np.arange(m)[None, :]
    # Right bracketing node of the query point, in padded indices (ghost
    # zero nodes sit at padded indices 0 and n+1).
    idx_b = rows - k[None, :] + 1
    idx_a = idx_b - 1
    # The padded interpolant lives on [-h, n*h] in original coordinates;
    # the query point in padded grid units is idx_b - theta.
    inside = (idx_b - theta >= 0.0) & (idx_b - theta <= n + 1)
    fb = _gather_or_zero(padded, idx_b, cols)
    fa = _gather_or_zero(padded, idx_a, cols)
    if scheme == "linear":
        out = theta * fa + (1.0 - theta) * fb
    else:
        # Natural moments of the data; the ghost nodes carry zero moments,
        # which together with the zero end moments of the natural closure
        # makes the two extension cells evaluate linearly.
        moments = np.zeros((n + 2, m))
        moments[1:-1] = _natural_moments(values, h)
        mb = _gather_or_zero(moments, idx_b, cols)
        ma = _gather_or_zero(moments, idx_a, cols)
        out = _spline_combine(fa, fb, ma, mb, theta, h)
    return np.where(inside, out, 0.0)


def shift_periodic(values, delta: float, h: float, scheme: str = DEFAULT_SCHEME) -> np.ndarray:
    """Evaluate the periodic interpolant of `values` at the nodes shifted by -delta.

    output[i] approximates f(i*h - delta) where f wraps with period n*h.
    Any finite delta is accepted; it is reduced into [0, n*h).
    """
    _require_scheme(scheme)
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1:
        raise ValueError("values must be one-dimensional")
    _require_grid(vals.shape[0], h)
    if not np.isfinite(delta):
        raise ValueError(f"delta must be finite, got {delta}")
    return _shift_periodic_batch(vals[:, None], np.asarray([delta], dtype=np.float64), h, scheme)[:, 0]


def shift_bounded(values, delta: float, h: float, scheme: str = DEFAULT_SCHEME) -> np.ndarray:
    """Evaluate the bounded interpolant of `values` at the nodes shifted by -delta.

    The data lives on [0, (n-1)*h] and is extended by zero outside; query
    points beyond the zero extension return zero.
    """
    _require_scheme(scheme)
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1:
        raise ValueError("values must be one-dimensional")
    _require_grid(vals.shape[0], h)
    if not np.isfinite(delta):
        raise ValueError(f"delta must be finite, got {delta}")
    return _shift_bounded_batch(vals[:, None], np.asarray([delta], dtype=np.float64), h, scheme)[:, 0]
