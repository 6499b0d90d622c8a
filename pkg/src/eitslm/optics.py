"""Source fields and scalar far-field propagation.

The far field is a single power-preserving Fourier transform (Fraunhofer
regime) over a zero-padded copy of the input; frequency axes are plain
spatial frequencies in 1/m, interpreted as x_far/(lambda*z) on a distant
screen.  A direct-summation oracle evaluates the same integral at arbitrary
frequencies so the fast path can be verified independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre

from . import _kernels
from .errors import DomainError, GridMismatchError, RegimeError
from .grid import ComplexField, GridSpec

MIN_WAIST_PIXELS = 4.0
EDGE_AMPLITUDE_LIMIT = 1e-6  # of peak; larger means the grid clips the beam
ORACLE_POINT_BUDGET = 10_000  # direct summation is quadratic

DOMAIN_SPATIAL = 0
DOMAIN_FREQUENCY = 1


@dataclass(frozen=True, eq=False)
class FarField:
    """Complex far-field amplitude on a centered spatial-frequency grid (1/m)."""

    grid: GridSpec
    amplitude: np.ndarray
    wavelength: float

    def __post_init__(self):
        amp = np.asarray(self.amplitude, dtype=complex)
        if amp.shape != (self.grid.ny, self.grid.nx):
            raise GridMismatchError("far-field amplitude does not match its grid")
        if self.wavelength <= 0.0:
            raise DomainError("wavelength must be positive")
        object.__setattr__(self, "amplitude", amp)

    @property
    def power(self) -> float:
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.grid.pixel_area)

    def to_complex_field(self) -> ComplexField:
        """View as a ComplexField (frequency-domain axes) for the analyzers."""
        return ComplexField(self.grid, self.amplitude, self.wavelength)


def _check_aperture(grid: GridSpec, amplitude: np.ndarray, waist: float) -> None:
    if waist <= MIN_WAIST_PIXELS * max(grid.dx, grid.dy):
        raise RegimeError(
            f"waist {waist:.3g} m is under-resolved: need more than "
            f"{MIN_WAIST_PIXELS:.0f} pixels per waist"
        )
    mags = np.abs(amplitude)
    peak = mags.max()
    edge = max(mags[0, :].max(), mags[-1, :].max(), mags[:, 0].max(), mags[:, -1].max())
    if peak == 0.0 or edge > EDGE_AMPLITUDE_LIMIT * peak:
        raise RegimeError(
            "beam is clipped by the grid: edge amplitude exceeds "
            f"{EDGE_AMPLITUDE_LIMIT:g} of peak"
        )


def gaussian_source(grid: GridSpec, waist: float, wavelength: float) -> ComplexField:
    """Unit-peak Gaussian envelope exp(-r^2/waist^2) with flat phase."""
    if waist <= 0.0:
        raise DomainError("waist must be > 0")
    xm, ym = grid.meshes()
    amp = np.exp(-((xm - grid.center[0]) ** 2 + (ym - grid.center[1]) ** 2) / waist**2)
    amp = amp.astype(complex)
    _check_aperture(grid, amp, waist)
    return ComplexField(grid, amp, wavelength)


def _lg_amplitude(grid: GridSpec, p: int, l: int, waist: float) -> np.ndarray:
    """Unnormalized-check-free helical mode used by sources and decomposition."""
    radius, _ = grid.radius_azimuth()
    xm, ym = grid.meshes()
    phi = np.arctan2(ym - grid.center[1], xm - grid.center[0])
    u = 2.0 * radius * radius / (waist * waist)
    norm = math.sqrt(2.0 * math.factorial(p) / (np.pi * math.factorial(p + abs(l)))) / waist
    radial = np.sqrt(u) ** abs(l) * eval_genlaguerre(p, abs(l), u) * np.exp(-u / 2.0)
    return norm * radial * np.exp(1j * l * phi)


def lg_source(grid: GridSpec, p: int, l: int, waist: float, wavelength: float) -> ComplexField:
    """Unit-power helical mode with radial index p and winding number l.

    Analytic normalization gives unit power on an adequate grid; p = l = 0
    reduces to the Gaussian up to the normalization constant.
    """
    if p < 0:
        raise DomainError("radial index p must be >= 0")
    if waist <= 0.0:
        raise DomainError("waist must be > 0")
    amp = _lg_amplitude(grid, p, l, waist)
    _check_aperture(grid, amp, waist)
    return ComplexField(grid, amp, wavelength)


def _padded_embed(field: ComplexField, pad_factor: int) -> tuple[GridSpec, np.ndarray]:
    grid = field.grid
    npx, npy = pad_factor * grid.nx, pad_factor * grid.ny
    padded = np.zeros((npy, npx), dtype=complex)
    ox = (npx - grid.nx) // 2
    oy = (npy - grid.ny) // 2
    padded[oy : oy + grid.ny, ox : ox + grid.nx] = field.amplitude
    return GridSpec(npx, npy, grid.dx, grid.dy), padded


def far_field(field: ComplexField, pad_factor: int = 2) -> FarField:
    """Power-preserving Fourier transform of a centered field.

    The input is zero-padded by ``pad_factor`` (default 2, useful for sharp
    binary masks with broad spectra) and transformed with the convention
    F(f) = sum E(x) exp(-2i*pi*f.x) dx dy, under which the summed power in
    both domains is identical.
    """
    if field.grid.center != (0.0, 0.0):
        raise DomainError("far_field requires a centered grid")
    if field.power <= 0.0:
        raise RegimeError("far field of a zero field is undefined")
    if pad_factor < 1 or int(pad_factor) != pad_factor:
        raise DomainError("pad_factor must be a positive integer")
    pad_grid, padded = _padded_embed(field, int(pad_factor))
    transformed = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(padded)))
    transformed *= field.grid.pixel_area
    freq_grid = GridSpec(
        pad_grid.nx,
        pad_grid.ny,
        1.0 / (pad_grid.nx * pad_grid.dx),
        1.0 / (pad_grid.ny * pad_grid.dy),
    )
    return FarField(freq_grid, transformed, field.wavelength)


def inverse_far_field(far: FarField, crop_grid: GridSpec | None = None) -> ComplexField:
    """Invert :func:`far_field`; optionally crop back to the pre-padding grid."""
    nfx, nfy = far.grid.nx, far.grid.ny
    dx = 1.0 / (nfx * far.grid.dx)
    dy = 1.0 / (nfy * far.grid.dy)
    spatial = np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(far.amplitude)))
    spatial /= dx * dy
    full = ComplexField(GridSpec(nfx, nfy, dx, dy), spatial, far.wavelength)
    if crop_grid is None:
        return full
    if crop_grid.nx > nfx or crop_grid.ny > nfy:
        raise DomainError("crop grid is larger than the transform grid")
    if not (np.isclose(crop_grid.dx, dx) and np.isclose(crop_grid.dy, dy)):
        raise GridMismatchError("crop grid pitch does not match the transform")
    ox = (nfx - crop_grid.nx) // 2
    oy = (nfy - crop_grid.ny) // 2
    window = spatial[oy : oy + crop_grid.ny, ox : ox + crop_grid.nx]
    return ComplexField(crop_grid, window, far.wavelength)


def far_field_oracle(field: ComplexField, probe_frequencies) -> np.ndarray:
    """Direct Riemann summation of the far-field integral at arbitrary points.

    Independent of the FFT path: evaluates sum E(x, y) exp(-2i*pi*(fx*x +
    fy*y)) * dx * dy one probe frequency at a time.  Quadratic cost, so the
    number of probe points is capped.
    """
    points = np.asarray(probe_frequencies, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise DomainError("probe_frequencies must be an (n, 2) array of (fx, fy)")
    if points.shape[0] > ORACLE_POINT_BUDGET:
        raise DomainError(f"oracle accepts at most {ORACLE_POINT_BUDGET} probe points")
    values = _kernels.dft_points(
        field.amplitude, field.grid.x(), field.grid.y(), points[:, 0], points[:, 1]
    )
    return values * field.grid.pixel_area
