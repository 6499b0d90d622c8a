import numpy as np
import pytest

from conftest import ramp_endpoints
from eitslm import GridSpec, gaussian_source, rb87_d2, solve_cell_thickness
from eitslm.cell import (
    MODE_EIT,
    MODE_RESONANT,
    apply_transfer,
    build_transfer,
    susceptibility_of,
)
from eitslm.errors import DomainError, GridMismatchError, RegimeError
from eitslm.grid import ComplexField
from eitslm.medium import refractive_index, susceptibility
from eitslm.patterns import RampParams, azimuthal_ramp, fork_grating, uniform

TWO_PI = 2.0 * np.pi


def fig2_transfer(rb87, fig_ramp, grid):
    omega0, omega2pi = ramp_endpoints(fig_ramp, rb87.gamma31)
    solution = solve_cell_thickness(rb87, omega0, omega2pi)
    coupling = azimuthal_ramp(grid, fig_ramp, rb87)
    return build_transfer(coupling, rb87, solution.thickness), solution


def test_identity_transfer_for_dark_state():
    params = rb87_d2(delta=0.0, gamma21=0.0)
    grid = GridSpec.square(32, 1e-4)
    transfer = build_transfer(uniform(grid, 8380.0), params, 500e-6)
    assert np.all(transfer.phase == 0.0)
    assert np.all(transfer.attenuation == 1.0)
    probe = gaussian_source(grid, 6e-4, params.wavelength)
    out = apply_transfer(probe, transfer)
    assert np.array_equal(out.amplitude, probe.amplitude)


def test_uniform_attenuation_scales_power():
    params = rb87_d2(rho=1e15, delta=0.0)
    grid = GridSpec.square(32, 1e-4)
    transfer = build_transfer(uniform(grid, 0.0), params, 100e-6, MODE_RESONANT)
    t_amp = transfer.attenuation[0, 0]
    assert np.allclose(transfer.attenuation, t_amp)
    probe = gaussian_source(grid, 6e-4, params.wavelength)
    out = apply_transfer(probe, transfer)
    assert out.power == pytest.approx(t_amp**2 * probe.power, rel=1e-12)


def test_energy_dissipation_random_fields(rb87):
    rng = np.random.default_rng(11)
    grid = GridSpec.square(16, 1e-4)
    intensity = rng.uniform(0.0, 2e4, size=(16, 16))
    from eitslm.patterns import CouplingMap, KIND_BINARY

    transfer = build_transfer(CouplingMap(grid, intensity, KIND_BINARY), rb87, 500e-6)
    for _ in range(5):
        amp = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        field = ComplexField(grid, amp, rb87.wavelength)
        out = apply_transfer(field, transfer)
        assert out.power < field.power  # gamma21 > 0 dissipates everywhere


def test_phase_only_limit(rb87, fig_ramp):
    """Stronger coupling at fixed phase target kills absorption, keeps the vortex."""
    params = rb87_d2(gamma21=0.0)
    grid = GridSpec.square(128, 62.5e-6)
    probe = gaussian_source(grid, 1e-3, params.wavelength)
    from eitslm.analysis import winding_number

    fractions = []
    for a in (500.0, 2000.0, 8000.0):
        ramp = RampParams(a, 1.0, 1.0)
        omega0, omega2pi = ramp_endpoints(ramp, params.gamma31)
        solution = solve_cell_thickness(params, omega0, omega2pi)
        transfer = build_transfer(azimuthal_ramp(grid, ramp, params), params, solution.thickness)
        out = apply_transfer(probe, transfer)
        fractions.append(out.power / probe.power)
        assert winding_number(out, 1e-3) == 1
    assert fractions[0] < fractions[1] < fractions[2]
    assert fractions[-1] > 0.995


def test_fig2_phase_span_is_two_pi(rb87, fig_ramp):
    omega0, omega2pi = ramp_endpoints(fig_ramp, rb87.gamma31)
    solution = solve_cell_thickness(rb87, omega0, omega2pi)
    n0 = refractive_index(susceptibility(rb87, omega0))
    n1 = refractive_index(susceptibility(rb87, omega2pi))
    span = TWO_PI / rb87.wavelength * (n1.real - n0.real) * solution.thickness
    assert span == pytest.approx(TWO_PI, rel=1e-3)


def test_imprinted_phase_monotone_along_circle(rb87, fig_ramp):
    grid = GridSpec.square(128, 62.5e-6)
    transfer, _ = fig2_transfer(rb87, fig_ramp, grid)
    theta = np.linspace(0.0, TWO_PI, 256, endpoint=False)
    radius = 30 * grid.dx
    from eitslm._kernels import bilinear_sample

    # the phasor is continuous across both the wrap line and the ramp seam
    xs, ys = grid.x(), grid.y()
    sampled = bilinear_sample(
        np.exp(1j * transfer.phase),
        radius * np.cos(theta),
        radius * np.sin(theta),
        xs[0],
        ys[0],
        grid.dx,
        grid.dy,
    )
    unwrapped = np.unwrap(np.angle(sampled))
    assert np.all(np.diff(unwrapped) > -1e-9)
    assert unwrapped[-1] - unwrapped[0] == pytest.approx(TWO_PI, rel=0.05)


def test_dark_pixel_transmission_matches_two_level(rb87_resonant):
    grid = GridSpec.square(32, 1e-4)
    transfer = build_transfer(uniform(grid, 0.0), rb87_resonant, 500e-6, MODE_RESONANT)
    assert transfer.attenuation[0, 0] ** 2 == pytest.approx(np.exp(-29.0), rel=0.05)


def test_mode_consistency_at_dark_pixels(rb87_resonant):
    grid = GridSpec.square(64, 1e-5)
    coupling = fork_grating(grid, 1, 8 * grid.dx, 8380.0)
    chi_eit = susceptibility_of(coupling, rb87_resonant, MODE_EIT)
    chi_two = susceptibility_of(coupling, rb87_resonant, MODE_RESONANT)
    dark = coupling.intensity == 0.0
    assert np.allclose(chi_eit[dark], chi_two[dark], rtol=1e-12)
    assert np.array_equal(chi_eit[~dark], chi_two[~dark])


def test_regime_error_names_pixel():
    params = rb87_d2(rho=2e20, delta=0.0)  # chi'' ~ 14 at zero coupling
    grid = GridSpec.square(16, 1e-4)
    with pytest.raises(RegimeError, match=r"pixel \(ix=0, iy=0\)"):
        build_transfer(uniform(grid, 0.0), params, 100e-6)


def test_transmitted_power_floor(rb87, fig_ramp):
    grid = GridSpec.square(128, 62.5e-6)
    transfer, _ = fig2_transfer(rb87, fig_ramp, grid)
    probe = gaussian_source(grid, 1e-3, rb87.wavelength)
    out = apply_transfer(probe, transfer)
    assert out.power / probe.power > 0.81


def test_apply_transfer_grid_mismatch(rb87):
    grid_a = GridSpec.square(32, 1e-4)
    grid_b = GridSpec.square(32, 2e-4)
    transfer = build_transfer(uniform(grid_a, 8380.0), rb87, 500e-6)
    probe = gaussian_source(grid_b, 1.2e-3, rb87.wavelength)
    with pytest.raises(GridMismatchError):
        apply_transfer(probe, transfer)


def test_build_transfer_argument_validation(rb87):
    grid = GridSpec.square(16, 1e-4)
    coupling = uniform(grid, 8380.0)
    with pytest.raises(DomainError):
        build_transfer(coupling, rb87, 0.0)
    with pytest.raises(DomainError):
        build_transfer(coupling, rb87, 500e-6, mode="bogus")


def test_phase_stored_wrapped(rb87, fig_ramp):
    grid = GridSpec.square(64, 1.25e-4)
    transfer, _ = fig2_transfer(rb87, fig_ramp, grid)
    assert transfer.phase.max() <= np.pi
    assert transfer.phase.min() > -np.pi
    assert transfer.attenuation.max() <= 1.0
    assert transfer.attenuation.min() > 0.0
