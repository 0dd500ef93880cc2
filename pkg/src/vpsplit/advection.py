"""The two exact sub-flows of the splitting, realized as semi-Lagrangian shifts.

Free streaming translates each fixed-v row along x by v*tau (periodic);
acceleration under a frozen field translates each fixed-x column along v by
E(x)*tau (bounded, zero extension).  Both evaluate the interpolant at the
departure point, so there is no step-size restriction.
"""

from __future__ import annotations

import numpy as np

from .field import ElectricField
from .grid import DistributionField
from .interpolation import DEFAULT_SCHEME, _require_scheme, _shift_bounded_batch, _shift_periodic_batch
from .errors import DimensionError

__all__ = ["advect_x", "advect_v"]


def advect_x(f: DistributionField, tau: float, scheme: str = DEFAULT_SCHEME) -> DistributionField:
    """Free streaming: f(x, v) -> f(x - tau*v, v).  Negative tau reverses the flow."""
    _require_scheme(scheme)
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    deltas = tau * f.spec.v
    out = _shift_periodic_batch(f.values, deltas, f.spec.dx, scheme)
    return DistributionField(f.spec, out)


def advect_v(f: DistributionField, efield: ElectricField, tau: float,
             scheme: str = DEFAULT_SCHEME) -> DistributionField:
    """Acceleration under a frozen field: f(x, v) -> f(x, v - tau*E(x)).

    Mass leaving [-vmax, vmax] is lost to the zero extension; callers
    monitor the boundary rows for support escape.
    """
    _require_scheme(scheme)
    if f.spec != efield.spec:
        raise DimensionError(f"grids differ: {f.spec} vs {efield.spec}")
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    deltas = tau * efield.values
    columns = np.ascontiguousarray(f.values.T)
    out = _shift_bounded_batch(columns, deltas, f.spec.dv, scheme)
    return DistributionField(f.spec, np.ascontiguousarray(out.T))
