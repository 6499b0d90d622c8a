import numpy as np
import pytest

from eitslm import GridSpec, rb87_d2
from eitslm.patterns import RampParams

TWO_PI = 2.0 * np.pi


@pytest.fixture
def rb87():
    return rb87_d2()


@pytest.fixture
def rb87_resonant():
    """Low-density resonant cell used by the amplitude-modulation scheme."""
    return rb87_d2(rho=1e17, delta=0.0)


@pytest.fixture
def fig_ramp():
    """The azimuthal ramp configuration used throughout the demos."""
    return RampParams(500.0, 1.0, 1.0)


@pytest.fixture
def small_grid():
    """128 x 128, 8 mm aperture: resolves a 1 mm probe waist comfortably."""
    return GridSpec.square(128, 62.5e-6)


def ramp_endpoints(ramp, gamma31):
    return float(ramp.rabi(0.0, gamma31)), float(ramp.rabi(TWO_PI, gamma31))
