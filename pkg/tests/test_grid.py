import numpy as np
import pytest

from vpsplit import (
    ConfigurationError,
    DimensionError,
    DistributionField,
    GridSpec,
    NumericalFailureError,
    charge_density,
    l1_distance,
    l1_norm,
    landau_initial_condition,
    mass,
)

# Direct evaluation of the initial-condition formula at x = 0, v = 0:
# (1 + 0.01) / sqrt(2 pi).
LANDAU_PEAK = 0.4029317032054470


def test_grid_nodes(weak_spec):
    assert weak_spec.dx == pytest.approx(4.0 * np.pi / 80)
    assert weak_spec.dv == pytest.approx(12.0 / 79)
    assert weak_spec.x[0] == 0.0
    assert weak_spec.x[-1] == pytest.approx(weak_spec.L - weak_spec.dx)
    assert weak_spec.v[0] == pytest.approx(-6.0, rel=1e-15)
    assert weak_spec.v[-1] == pytest.approx(6.0, rel=1e-15)
    # exact reflection symmetry of the velocity nodes
    assert np.all(weak_spec.v + weak_spec.v[::-1] == 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(L=0.0, vmax=6.0, nx=8, nv=8),
        dict(L=1.0, vmax=-1.0, nx=8, nv=8),
        dict(L=1.0, vmax=6.0, nx=3, nv=8),
        dict(L=1.0, vmax=6.0, nx=8, nv=2),
    ],
)
def test_grid_rejects_bad_parameters(kwargs):
    with pytest.raises(ConfigurationError):
        GridSpec(**kwargs)


def test_landau_matches_formula_on_every_node(weak_spec):
    f = landau_initial_condition(weak_spec, 0.01)
    x, v = weak_spec.x, weak_spec.v
    expected = (1.0 + 0.01 * np.cos(0.5 * x))[:, None] * (
        np.exp(-0.5 * v * v) / np.sqrt(2 * np.pi)
    )[None, :]
    assert np.allclose(f.values, expected, rtol=1e-15, atol=0.0)
    # row index is x, column index is v
    assert f.values.shape == (weak_spec.nx, weak_spec.nv)
    assert f.values[3, 40] == pytest.approx(
        (1.0 + 0.01 * np.cos(0.5 * x[3])) * np.exp(-0.5 * v[40] ** 2) / np.sqrt(2 * np.pi),
        rel=1e-15,
    )


def test_landau_peak_value_at_origin():
    # odd nv puts a node exactly at v = 0
    spec = GridSpec(L=4.0 * np.pi, vmax=6.0, nx=80, nv=81)
    f = landau_initial_condition(spec, 0.01)
    assert f.values[0, 40] == pytest.approx(LANDAU_PEAK, abs=1e-15)


def test_landau_alpha_zero_is_x_independent(weak_spec):
    f = landau_initial_condition(weak_spec, 0.0)
    assert np.array_equal(f.values, np.tile(f.values[0], (weak_spec.nx, 1)))


def test_landau_velocity_symmetry(weak_spec):
    f = landau_initial_condition(weak_spec, 0.37)
    assert np.array_equal(f.values, f.values[:, ::-1])


def test_landau_nonnegative_for_admissible_alpha(weak_spec):
    for alpha in (0.0, 0.01, 0.5, 1.0):
        assert landau_initial_condition(weak_spec, alpha).values.min() >= 0.0


def test_landau_rejections(weak_spec):
    with pytest.raises(ConfigurationError):
        landau_initial_condition(GridSpec(L=5.0, vmax=6.0, nx=16, nv=16), 0.01)
    with pytest.raises(ConfigurationError):
        landau_initial_condition(weak_spec, -0.1)
    with pytest.raises(ConfigurationError):
        landau_initial_condition(weak_spec, 1.5)  # negative values
    with pytest.raises(ConfigurationError):
        # vmax too small: the Maxwellian loses mass beyond the truncation
        landau_initial_condition(GridSpec(L=4.0 * np.pi, vmax=2.0, nx=16, nv=16), 0.01)


def test_charge_density_matches_analytic_profile(weak_spec):
    f = landau_initial_condition(weak_spec, 0.01)
    rho = charge_density(f)
    expected = 1.0 + 0.01 * np.cos(0.5 * weak_spec.x)
    assert np.max(np.abs(rho.values - expected)) <= 1e-8


def test_charge_density_trivials(weak_spec):
    zero = DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv)))
    assert np.array_equal(charge_density(zero).values, np.zeros(weak_spec.nx))
    flat = landau_initial_condition(weak_spec, 0.0)
    rho = charge_density(flat).values
    assert np.all(rho == rho[0])


def test_mass_matches_period(weak_spec):
    f = landau_initial_condition(weak_spec, 0.01)
    assert mass(f) == pytest.approx(weak_spec.L, rel=1e-8)


def test_mass_linearity(weak_spec):
    rng = np.random.default_rng(3)
    a = DistributionField(weak_spec, rng.random((weak_spec.nx, weak_spec.nv)))
    b = DistributionField(weak_spec, rng.random((weak_spec.nx, weak_spec.nv)))
    doubled = DistributionField(weak_spec, 2.0 * a.values)
    assert mass(doubled) == pytest.approx(2.0 * mass(a), rel=1e-15)
    summed = DistributionField(weak_spec, a.values + b.values)
    assert mass(summed) == pytest.approx(mass(a) + mass(b), rel=1e-14)
    zero = DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv)))
    assert mass(zero) == 0.0


def test_l1_distance_trivials(weak_spec):
    rng = np.random.default_rng(4)
    f = DistributionField(weak_spec, rng.random((weak_spec.nx, weak_spec.nv)))
    zero = DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv)))
    assert l1_distance(f, f) == 0.0
    # against zero, the distance of nonnegative data is its uniform-weight mass
    assert l1_distance(f, zero) == pytest.approx(
        weak_spec.dx * weak_spec.dv * f.values.sum(), rel=1e-14
    )
    single = np.zeros((weak_spec.nx, weak_spec.nv))
    single[5, 7] = 1.0
    assert l1_distance(DistributionField(weak_spec, single), zero) == pytest.approx(
        weak_spec.dx * weak_spec.dv, rel=1e-15
    )
    assert l1_norm(f) == l1_distance(f, zero)


def test_l1_distance_rejects_mismatched_grids(weak_spec):
    other = GridSpec(L=weak_spec.L, vmax=weak_spec.vmax, nx=weak_spec.nx, nv=weak_spec.nv + 1)
    f = DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv)))
    g = DistributionField(other, np.zeros((other.nx, other.nv)))
    with pytest.raises(DimensionError):
        l1_distance(f, g)


def test_field_values_are_validated_and_frozen(weak_spec):
    with pytest.raises(DimensionError):
        DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv - 1)))
    bad = np.zeros((weak_spec.nx, weak_spec.nv))
    bad[0, 0] = np.nan
    with pytest.raises(NumericalFailureError):
        DistributionField(weak_spec, bad)
    f = DistributionField(weak_spec, np.zeros((weak_spec.nx, weak_spec.nv)))
    with pytest.raises(ValueError):
        f.values[0, 0] = 1.0


def test_determinism(weak_spec):
    a = landau_initial_condition(weak_spec, 0.01)
    b = landau_initial_condition(weak_spec, 0.01)
    assert np.array_equal(a.values, b.values)
    assert mass(a) == mass(b)
    assert np.array_equal(charge_density(a).values, charge_density(b).values)
