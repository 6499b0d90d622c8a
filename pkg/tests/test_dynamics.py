import numpy as np
import pytest

from conftest import ramp_endpoints
from eitslm import GridSpec
from eitslm.dynamics import (
    adiabatic_time,
    re_establishment_time,
    switching_report,
)
from eitslm.errors import DomainError, GridMismatchError
from eitslm.grid import TWO_PI
from eitslm.medium import rb87_d2
from eitslm.patterns import azimuthal_ramp, fork_grating, uniform
from eitslm.units import intensity_from_rabi

# frozen by direct evaluation with CODATA constants
TAU_R_AMPLITUDE = 1.5225744102665408e-9
TAU_A_UNIFORM = 5.247966413014956e-11


def uniform_strong(grid, atomic):
    """Uniform illumination at the ramp's strong-end intensity."""
    omega = np.sqrt(500.0) * atomic.gamma31
    return uniform(grid, intensity_from_rabi(omega, atomic.mu23))


class TestFormulas:
    def test_amplitude_scheme_value(self, rb87):
        omega = np.sqrt(500.0) * rb87.gamma31
        tau = re_establishment_time(29.012655387628936, rb87.gamma31, omega)
        assert tau == pytest.approx(TAU_R_AMPLITUDE, rel=1e-9)
        assert 1.5e-9 < tau < 12e-9

    def test_nothing_to_reestablish(self, rb87):
        assert re_establishment_time(0.0, rb87.gamma31, 1e8) == 0.0

    def test_inverse_square_law(self, rb87):
        base = re_establishment_time(1.0, rb87.gamma31, 1e8)
        assert re_establishment_time(1.0, rb87.gamma31, 2e8) == pytest.approx(base / 4.0)
        assert re_establishment_time(2.0, rb87.gamma31, 1e8) == pytest.approx(2.0 * base)

    def test_adiabatic_time_values(self, rb87):
        omega = np.sqrt(500.0) * rb87.gamma31
        assert adiabatic_time(rb87.gamma31, omega) == pytest.approx(TAU_A_UNIFORM, rel=1e-9)
        assert adiabatic_time(rb87.gamma31, rb87.gamma31) == pytest.approx(
            1.0 / rb87.gamma31, rel=1e-12
        )
        taus = [adiabatic_time(rb87.gamma31, m * rb87.gamma31) for m in (1, 10, 100)]
        assert taus[0] > taus[1] > taus[2]

    def test_validation(self, rb87):
        with pytest.raises(DomainError):
            re_establishment_time(-1.0, rb87.gamma31, 1e8)
        with pytest.raises(DomainError):
            re_establishment_time(1.0, rb87.gamma31, 0.0)
        with pytest.raises(DomainError):
            adiabatic_time(rb87.gamma31, 0.0)


class TestPhaseSchemeReport:
    def test_fig_ramp_to_uniform(self, rb87, fig_ramp, small_grid):
        before = azimuthal_ramp(small_grid, fig_ramp, rb87)
        after = uniform_strong(small_grid, rb87)
        omega0, omega2pi = ramp_endpoints(fig_ramp, rb87.gamma31)
        from eitslm.medium import solve_cell_thickness

        thickness = solve_cell_thickness(rb87, omega0, omega2pi).thickness
        report = switching_report(before, after, rb87, thickness, "phase")
        assert report.feasible
        assert 5e-12 < report.tau_r < 40e-12
        assert 50e-12 < report.tau_a < 400e-12
        assert report.rate_bound > 1e8
        # both reporting conventions land in the same bands
        assert 5e-12 < report.tau_r_nominal < 40e-12
        assert 50e-12 < report.tau_a_nominal < 400e-12
        # worst pixel sits in the weak-coupling wedge just below the seam
        iy, ix = report.limiting_pixel
        _, phi = small_grid.radius_azimuth()
        assert phi[iy, ix] > TWO_PI - 0.1

    def test_tau_r_scales_with_thickness(self, rb87, fig_ramp, small_grid):
        before = azimuthal_ramp(small_grid, fig_ramp, rb87)
        after = uniform_strong(small_grid, rb87)
        thin = switching_report(before, after, rb87, 400e-6, "phase")
        thick = switching_report(before, after, rb87, 800e-6, "phase")
        assert thick.tau_r == pytest.approx(2.0 * thin.tau_r, rel=1e-9)
        assert thick.tau_a == thin.tau_a  # adiabatic time ignores optical depth

    def test_tau_r_scales_inverse_square_in_coupling(self, rb87, fig_ramp, small_grid):
        before = azimuthal_ramp(small_grid, fig_ramp, rb87)
        base_omega = np.sqrt(500.0) * rb87.gamma31
        weak = uniform(small_grid, intensity_from_rabi(base_omega, rb87.mu23))
        strong = uniform(small_grid, intensity_from_rabi(2.0 * base_omega, rb87.mu23))
        r_weak = switching_report(before, weak, rb87, 500e-6, "phase")
        r_strong = switching_report(before, strong, rb87, 500e-6, "phase")
        assert r_strong.tau_r == pytest.approx(r_weak.tau_r / 4.0, rel=1e-9)


class TestAmplitudeSchemeReport:
    def test_fork_to_uniform(self, rb87_resonant, small_grid):
        before = fork_grating(small_grid, 1, 8 * small_grid.dx, 8380.0)
        after = uniform_strong(small_grid, rb87_resonant)
        report = switching_report(before, after, rb87_resonant, 500e-6, "amplitude")
        assert report.feasible
        assert 1.5e-9 < report.tau_r < 12e-9
        assert report.rate_bound > 1e6
        assert 1.5e-9 < report.tau_r_nominal < 12e-9
        # the limiting pixel is a dark fringe
        assert before.intensity[report.limiting_pixel] == 0.0

    def test_uniform_to_fork_remains_feasible(self, rb87_resonant, small_grid):
        # bright-state pixels switched dark carry negligible optical depth
        before = uniform_strong(small_grid, rb87_resonant)
        after = fork_grating(small_grid, 1, 8 * small_grid.dx, 8380.0)
        report = switching_report(before, after, rb87_resonant, 500e-6, "amplitude")
        assert report.feasible

    def test_switch_off_is_infeasible(self, rb87_resonant, small_grid):
        before = fork_grating(small_grid, 1, 8 * small_grid.dx, 8380.0)
        after = uniform(small_grid, 0.0)
        report = switching_report(before, after, rb87_resonant, 500e-6, "amplitude")
        assert not report.feasible
        assert np.isinf(report.tau_r)
        assert report.rate_bound == 0.0


class TestReportValidation:
    def test_noop_switch(self, rb87, fig_ramp, small_grid):
        ramp_map = azimuthal_ramp(small_grid, fig_ramp, rb87)
        report = switching_report(ramp_map, ramp_map, rb87, 500e-6, "phase")
        assert report.feasible
        assert report.rate_bound > 0.0

    def test_grid_mismatch(self, rb87, fig_ramp):
        a = azimuthal_ramp(GridSpec.square(64, 1e-4), fig_ramp, rb87)
        b = uniform(GridSpec.square(128, 1e-4), 8380.0)
        with pytest.raises(GridMismatchError):
            switching_report(a, b, rb87, 500e-6, "phase")

    def test_scheme_and_thickness_validation(self, rb87, fig_ramp, small_grid):
        ramp_map = azimuthal_ramp(small_grid, fig_ramp, rb87)
        with pytest.raises(DomainError):
            switching_report(ramp_map, ramp_map, rb87, 500e-6, "bogus")
        with pytest.raises(DomainError):
            switching_report(ramp_map, ramp_map, rb87, 0.0, "phase")
