import numpy as np
import pytest

from vpsplit import GridSpec, landau_initial_condition


@pytest.fixture(scope="session")
def weak_spec():
    """The standard experiment grid: [0, 4pi) x [-6, 6] at 80x80."""
    return GridSpec(L=4.0 * np.pi, vmax=6.0, nx=80, nv=80)


@pytest.fixture(scope="session")
def weak_landau(weak_spec):
    return landau_initial_condition(weak_spec, 0.01)
