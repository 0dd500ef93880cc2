"""Self-consistent electric field from the charge density.

The field solves dE/dx = rho - 1 on the periodic interval with zero integral
mean (electrostatic condition).  The fast path integrates rho - 1 with a
derivative-corrected cumulative trapezoid in O(nx); an O(nx^2) Green's-kernel
quadrature with algebraically matching weights is kept as the test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import CompatibilityError
from .grid import ChargeDensity, GridSpec, _frozen_values

__all__ = ["ElectricField", "solve_field", "kernel_field_reference", "electric_energy"]

# Largest tolerated deviation of the density mean from the unit background;
# quadrature truncation sits near 1e-8, anything bigger is a wrong input.
MEAN_DENSITY_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class ElectricField:
    """Field samples E(x_i).  Fields returned by the solvers have zero mean."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_values(self.values, (self.spec.nx,), "electric field")
        object.__setattr__(self, "values", vals)


def _source_term(rho: ChargeDensity) -> np.ndarray:
    """rho - 1 with the residual mean projected out.

    The periodic problem is solvable only for a zero-mean source; the
    projection removes the quadrature-truncation residue so that a uniform
    density yields an exactly zero field.
    """
    g = rho.values - 1.0
    mean = g.mean()
    if abs(mean) > MEAN_DENSITY_TOLERANCE:
        raise CompatibilityError(
            f"mean density deviates from 1 by {mean:.3e} "
            f"(tolerance {MEAN_DENSITY_TOLERANCE:.0e}); periodic field solve is ill-posed"
        )
    return g - mean


def _centered_derivative(g: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order periodic centered first derivative."""
    return (
        -np.roll(g, -2) + 8.0 * np.roll(g, -1) - 8.0 * np.roll(g, 1) + np.roll(g, 2)
    ) / (12.0 * h)


def solve_field(rho: ChargeDensity) -> ElectricField:
    """Zero-mean antiderivative of rho - 1 via corrected cumulative trapezoid.

    The end-point derivative correction (h^2/12) * (g'(x_i) - g'(x_0))
    cancels the second-order Euler-Maclaurin term of the trapezoid sums, so
    smooth periodic sources are integrated to fourth order.
    """
    g = _source_term(rho)
    h = rho.spec.dx
    prim = cumulative_trapezoid(g, dx=h, initial=0.0)
    dg = _centered_derivative(g, h)
    e = prim - (h * h / 12.0) * (dg - dg[0])
    e -= e.mean()
    return ElectricField(rho.spec, e)


def kernel_field_reference(rho: ChargeDensity) -> ElectricField:
    """Direct O(nx^2) quadrature of the Green's-kernel representation.

    E(x) = integral over y of K(x, y) (rho(y) - 1) with
    K(x, y) = y/L - 1 for x < y and y/L for y < x; the jump at y = x is
    averaged, and the same end-point derivative correction as in
    `solve_field` is folded into the weights.  After mean subtraction this
    matrix quadrature agrees with the fast path to rounding error.
    """
    g = _source_term(rho)
    spec = rho.spec
    n = spec.nx
    h = spec.dx
    y = spec.x
    kernel = y[None, :] / spec.L - (y[None, :] > spec.x[:, None]) - 0.5 * np.eye(n)
    weights = h * kernel
    idx = np.arange(n)
    for off, w in ((1, -h / 18.0), (-1, h / 18.0), (2, h / 144.0), (-2, -h / 144.0)):
        weights[idx, (idx + off) % n] += w
    e = np.sum(weights * g[None, :], axis=1)
    e -= e.mean()
    return ElectricField(spec, e)


def electric_energy(efield: ElectricField) -> float:
    """Field energy, 0.5 * dx * sum E(x_i)^2."""
    return float(0.5 * efield.spec.dx * np.sum(efield.values * efield.values))
