"""Phase-space grid, discrete distribution function, and its quadrature functionals.

Phase space is the rectangle [0, L) x [-vmax, vmax].  The x-grid is periodic
and samples cell left edges (no duplicated endpoint), so shifts along x are
circulant; the v-grid includes both endpoints and carries trapezoidal
quadrature weights for velocity integrals.  Distribution values are stored
as an (nx, nv) array with x as the slow (row) index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, DimensionError, NumericalFailureError

__all__ = [
    "GridSpec",
    "DistributionField",
    "ChargeDensity",
    "landau_initial_condition",
    "charge_density",
    "mass",
    "l1_distance",
    "l1_norm",
    "PERTURBATION_WAVENUMBER",
]

TWO_PI = 2.0 * np.pi

# Wavenumber of the cosine density perturbation in the Landau initial
# condition; L must fit a whole number of these wavelengths.
PERTURBATION_WAVENUMBER = 0.5


@dataclass(frozen=True)
class GridSpec:
    """Uniform phase-space grid: x periodic on [0, L), v on [-vmax, vmax]."""

    L: float
    vmax: float
    nx: int
    nv: int

    def __post_init__(self):
        if not (np.isfinite(self.L) and self.L > 0):
            raise ConfigurationError(f"L must be positive and finite, got {self.L}")
        if not (np.isfinite(self.vmax) and self.vmax > 0):
            raise ConfigurationError(f"vmax must be positive and finite, got {self.vmax}")
        if int(self.nx) != self.nx or int(self.nv) != self.nv:
            raise ConfigurationError("nx and nv must be integers")
        if self.nx < 4 or self.nv < 4:
            raise ConfigurationError(f"need nx >= 4 and nv >= 4, got nx={self.nx}, nv={self.nv}")

    @property
    def dx(self) -> float:
        return self.L / self.nx

    @property
    def dv(self) -> float:
        return 2.0 * self.vmax / (self.nv - 1)

    @cached_property
    def x(self) -> np.ndarray:
        x = self.dx * np.arange(self.nx)
        x.setflags(write=False)
        return x

    @cached_property
    def v(self) -> np.ndarray:
        # Centered construction keeps the grid exactly reflection-symmetric
        # (v[j] + v[nv-1-j] == 0 in floating point); endpoints sit at
        # +-vmax up to one rounding.
        v = (np.arange(self.nv) - 0.5 * (self.nv - 1)) * self.dv
        v.setflags(write=False)
        return v


def _frozen_values(values, shape, what: str) -> np.ndarray:
    vals = np.array(values, dtype=np.float64)
    if vals.shape != shape:
        raise DimensionError(f"{what} has shape {vals.shape}, expected {shape}")
    if not np.all(np.isfinite(vals)):
        raise NumericalFailureError(f"{what} contains non-finite values")
    vals.setflags(write=False)
    return vals


@dataclass(frozen=True, eq=False)
class DistributionField:
    """Grid samples f(x_i, v_j); row i is fixed x_i, column j is fixed v_j.

    Values are frozen at construction and must be finite.  Negative values
    are allowed (interpolation may overshoot slightly); nonnegativity is
    only enforced where an initial condition is built.
    """

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_values(self.values, (self.spec.nx, self.spec.nv), "distribution")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class ChargeDensity:
    """Velocity integral of the distribution at each x node."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_values(self.values, (self.spec.nx,), "charge density")
        object.__setattr__(self, "values", vals)


def landau_initial_condition(spec: GridSpec, alpha: float) -> DistributionField:
    """Maxwellian background with a cosine density perturbation of amplitude alpha.

    f0(x, v) = exp(-v^2/2) / sqrt(2 pi) * (1 + alpha cos(0.5 x))

    Raises ConfigurationError if the spatial period does not fit a whole
    number of perturbation wavelengths, if the result is not nonnegative,
    or if the total mass deviates from the unit background (the field solve
    requires mean density one).
    """
    if not (np.isfinite(alpha) and alpha >= 0):
        raise ConfigurationError(f"alpha must be nonnegative, got {alpha}")
    cycles = PERTURBATION_WAVENUMBER * spec.L / TWO_PI
    if round(cycles) < 1 or abs(cycles - round(cycles)) > 1e-9 * max(1.0, abs(cycles)):
        raise ConfigurationError(
            f"L={spec.L} is incommensurate with the perturbation wavelength "
            f"{TWO_PI / PERTURBATION_WAVENUMBER}"
        )
    maxwellian = np.exp(-0.5 * spec.v * spec.v) / np.sqrt(TWO_PI)
    vals = (1.0 + alpha * np.cos(PERTURBATION_WAVENUMBER * spec.x))[:, None] * maxwellian[None, :]
    if vals.min() < 0.0:
        raise ConfigurationError(f"initial condition is negative for alpha={alpha}")
    f = DistributionField(spec, vals)
    rel = mass(f) / spec.L - 1.0
    if abs(rel) > 1e-6:
        raise ConfigurationError(
            f"initial mass deviates from unit background density by {rel:.3e}; "
            "is vmax large enough to hold the Maxwellian?"
        )
    return f


def _v_weights(spec: GridSpec) -> np.ndarray:
    w = np.ones(spec.nv)
    w[0] = w[-1] = 0.5
    return w


def charge_density(f: DistributionField) -> ChargeDensity:
    """Trapezoidal velocity integral: rho(x_i) = dv * sum_j w_j f(x_i, v_j)."""
    w = _v_weights(f.spec)
    rho = f.spec.dv * np.sum(f.values * w[None, :], axis=1)
    return ChargeDensity(f.spec, rho)


def mass(f: DistributionField) -> float:
    """Total phase-space mass, dx-sum of the trapezoidal charge density."""
    return float(f.spec.dx * np.sum(charge_density(f).values))


def l1_norm(f: DistributionField) -> float:
    """Discrete L1 norm with uniform weights, dx*dv*sum |f_ij|."""
    return float(f.spec.dx * f.spec.dv * np.sum(np.abs(f.values)))


def l1_distance(f: DistributionField, g: DistributionField) -> float:
    """Discrete L1 distance with uniform weights, dx*dv*sum |f_ij - g_ij|."""
    if f.spec != g.spec:
        raise DimensionError(f"grids differ: {f.spec} vs {g.spec}")
    return float(f.spec.dx * f.spec.dv * np.sum(np.abs(f.values - g.values)))
