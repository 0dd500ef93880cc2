"""Grid-based 1D1V Vlasov-Poisson solver with operator-splitting time integrators.

The solver couples two exact sub-flows (periodic free streaming in x and
acceleration under a frozen electric field in v) through Strang or
Lie-Trotter composition on a fixed phase-space grid, using semi-Lagrangian
cubic-spline shifts.  A verification harness measures observed convergence
orders against self-computed reference solutions and validates the
numerical kernels (field solve, shift kernels, phi-function recurrence,
Groebner-Alekseev identity).
"""

from .advection import advect_v, advect_x
from .analysis import (
    OrderFit,
    ScalarFlowProblem,
    groebner_alekseev_residual,
    matrix_exponential,
    observed_order,
    pairwise_orders,
    phi,
    phi_recurrence_residual,
    shipped_flow_problems,
)
from .config import RunConfig, config_from_mapping, load_config, parse_step_size
from .errors import (
    CompatibilityError,
    ConfigurationError,
    DimensionError,
    NumericalFailureError,
    QuadratureError,
    SnapshotFormatError,
    SupportEscapeWarning,
)
from .field import ElectricField, electric_energy, kernel_field_reference, solve_field
from .grid import (
    ChargeDensity,
    DistributionField,
    GridSpec,
    charge_density,
    l1_distance,
    l1_norm,
    landau_initial_condition,
    mass,
)
from .interpolation import shift_bounded, shift_periodic
from .snapshot import load_snapshot, save_snapshot, snapshot_info
from .splitting import (
    SchemeConfig,
    StepRecord,
    integrate,
    lie_step,
    midpoint_predict,
    strang_step,
)

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "DistributionField",
    "ChargeDensity",
    "ElectricField",
    "SchemeConfig",
    "StepRecord",
    "RunConfig",
    "OrderFit",
    "ScalarFlowProblem",
    "landau_initial_condition",
    "charge_density",
    "mass",
    "l1_distance",
    "l1_norm",
    "shift_periodic",
    "shift_bounded",
    "advect_x",
    "advect_v",
    "solve_field",
    "kernel_field_reference",
    "electric_energy",
    "midpoint_predict",
    "strang_step",
    "lie_step",
    "integrate",
    "matrix_exponential",
    "phi",
    "phi_recurrence_residual",
    "groebner_alekseev_residual",
    "shipped_flow_problems",
    "observed_order",
    "pairwise_orders",
    "save_snapshot",
    "load_snapshot",
    "snapshot_info",
    "load_config",
    "config_from_mapping",
    "parse_step_size",
    "ConfigurationError",
    "DimensionError",
    "CompatibilityError",
    "SnapshotFormatError",
    "NumericalFailureError",
    "QuadratureError",
    "SupportEscapeWarning",
]
