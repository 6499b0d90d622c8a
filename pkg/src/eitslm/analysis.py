"""Quantitative beam diagnostics.

Winding number by discrete phase accumulation on a circle, azimuthal
harmonic (orbital-angular-momentum) spectra, projection onto a helical mode
basis, diffraction-order isolation in the frequency domain, and transmission
statistics of a cell screen.  All analyzers work on sampled fields in either
domain; radial machinery resamples the Cartesian grid onto polar rings with
bilinear interpolation and 4x angular oversampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cell import CellTransfer
from .errors import DomainError, RegimeError
from .grid import TWO_PI, ComplexField, GridSpec
from .optics import FarField, _lg_amplitude

MIN_CIRCLE_SAMPLES = 64
AMPLITUDE_FLOOR = 1e-6  # of peak; below this the phase is unreliable
ANGULAR_OVERSAMPLING = 4
ORDER_WINDOW_CAPTURE = 0.95
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class LGSpectrum:
    """Mode weights per (p, l), the basis waist used, and unaccounted power."""

    weights: dict[tuple[int, int], float]
    waist_used: float
    residual: float


@dataclass(frozen=True, eq=False)
class OrderExtract:
    """A diffraction order isolated from a far field and re-centered."""

    order: int
    center_frequency: tuple[float, float]  # 1/m
    window_radius: float  # 1/m
    field: ComplexField  # frequency-domain patch


@dataclass(frozen=True)
class TransmissionStats:
    """Per-pixel power-transmission statistics of a cell screen."""

    minimum: float
    maximum: float
    mean: float


def _circle_samples(field: ComplexField, radius: float, n_samples: int) -> np.ndarray:
    theta = TWO_PI * np.arange(n_samples) / n_samples
    cx, cy = field.grid.center
    xq = cx + radius * np.cos(theta)
    yq = cy + radius * np.sin(theta)
    xs = field.grid.x()
    ys = field.grid.y()
    return _kernels.bilinear_sample(
        field.amplitude, xq, yq, xs[0], ys[0], field.grid.dx, field.grid.dy
    )


def _angular_count(radius: float, pitch: float, minimum: int = MIN_CIRCLE_SAMPLES) -> int:
    return max(minimum, ANGULAR_OVERSAMPLING * math.ceil(TWO_PI * radius / pitch))


def winding_number(
    field: ComplexField,
    radius: float,
    n_samples: int | None = None,
    amplitude_floor: float = AMPLITUDE_FLOOR,
) -> int:
    """Topological charge of the field on a circle of the given radius.

    Accumulates wrapped phase differences along a closed sampling loop and
    divides by 2*pi, which is an integer by construction.  Fails when the
    amplitude anywhere on the circle drops below ``amplitude_floor`` of the
    grid peak, since the phase is undefined near a null.
    """
    if radius <= 0.0:
        raise DomainError("circle radius must be > 0")
    if radius > field.grid.inscribed_radius:
        raise DomainError("circle does not fit on the grid")
    if n_samples is None:
        n_samples = _angular_count(radius, min(field.grid.dx, field.grid.dy))
    samples = _circle_samples(field, radius, n_samples)
    if np.abs(samples).min() <= amplitude_floor * field.peak:
        raise RegimeError(
            "amplitude on the circle falls below the floor; phase is undefined "
            "near a null"
        )
    steps = np.angle(np.roll(samples, -1) * np.conj(samples))
    return int(round(steps.sum() / TWO_PI))


def _ring_radii(grid: GridSpec) -> np.ndarray:
    pitch = min(grid.dx, grid.dy)
    count = int(grid.inscribed_radius / pitch)
    return np.arange(1, count + 1) * pitch


def oam_spectrum(field: ComplexField, n_harmonics: int) -> dict[int, float]:
    """Power fraction in each azimuthal harmonic m in [-n_harmonics, n_harmonics].

    Harmonic powers are radially integrated (trapezoid over polar rings) and
    normalized by the total ring-integrated power over the inscribed disc,
    so the fractions always sum to at most 1 and approach 1 as n_harmonics
    grows for fields contained in the disc.
    """
    if n_harmonics < 0:
        raise DomainError("n_harmonics must be >= 0")
    if field.power <= 0.0:
        raise DomainError("cannot analyze a zero field")
    pitch = min(field.grid.dx, field.grid.dy)
    radii = _ring_radii(field.grid)
    orders = np.arange(-n_harmonics, n_harmonics + 1)
    harmonic_sq = np.zeros((orders.size, radii.size + 1))
    ring_power = np.zeros(radii.size + 1)
    for k, radius in enumerate(radii):
        count = _angular_count(radius, pitch, max(MIN_CIRCLE_SAMPLES, 4 * (n_harmonics + 1)))
        samples = _circle_samples(field, radius, count)
        coeffs = np.fft.fft(samples) / count
        harmonic_sq[:, k + 1] = np.abs(coeffs[orders % count]) ** 2
        ring_power[k + 1] = np.mean(np.abs(samples) ** 2)
    radial = np.concatenate(([0.0], radii))
    total = TWO_PI * np.trapezoid(ring_power * radial, radial)
    if total <= 0.0:
        raise DomainError("no analyzable power within the inscribed disc")
    fractions = TWO_PI * np.trapezoid(harmonic_sq * radial, radial, axis=1) / total
    return {int(m): float(p) for m, p in zip(orders, fractions)}


def radial_power_profile(field: ComplexField) -> tuple[np.ndarray, np.ndarray]:
    """Azimuthally averaged |E|^2 per ring; returns (radii, mean power)."""
    pitch = min(field.grid.dx, field.grid.dy)
    radii = _ring_radii(field.grid)
    profile = np.empty(radii.size)
    for k, radius in enumerate(radii):
        samples = _circle_samples(field, radius, _angular_count(radius, pitch))
        profile[k] = np.mean(np.abs(samples) ** 2)
    return radii, profile


def peak_ring_radius(field: ComplexField) -> float:
    """Radius of the brightest azimuthally averaged ring; locates donut peaks."""
    radii, profile = radial_power_profile(field)
    return float(radii[int(np.argmax(profile))])


def _golden_section_max(fn, lo: float, hi: float, tol: float = 1e-3) -> float:
    """Golden-section search for the maximizer of a unimodal scalar function."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol * (abs(a) + abs(b)) / 2.0:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return (a + b) / 2.0


def lg_decompose(
    field: ComplexField,
    waist: float,
    p_max: int,
    l_max: int,
    optimize_waist: bool = False,
) -> LGSpectrum:
    """Project a field onto the helical mode basis with the given waist.

    Weights are |<mode, field>|^2 / ||field||^2 for p in [0, p_max] and l in
    [-l_max, l_max].  With ``optimize_waist`` the basis waist is tuned by a
    golden-section search on the summed weights over [waist/3, 3*waist];
    reported weights otherwise use the declared waist for reproducibility.
    """
    if waist <= 0.0:
        raise DomainError("basis waist must be > 0")
    if p_max < 0 or l_max < 0:
        raise DomainError("mode index bounds must be >= 0")
    power = field.power
    if power <= 0.0:
        raise DomainError("cannot decompose a zero field")
    area = field.grid.pixel_area

    def weights_at(w: float) -> dict[tuple[int, int], float]:
        out = {}
        for p in range(p_max + 1):
            for l in range(-l_max, l_max + 1):
                mode = _lg_amplitude(field.grid, p, l, w)
                overlap = np.vdot(mode, field.amplitude) * area
                out[(p, l)] = float(abs(overlap) ** 2 / power)
        return out

    waist_used = waist
    if optimize_waist:
        waist_used = _golden_section_max(
            lambda w: sum(weights_at(w).values()), waist / 3.0, 3.0 * waist
        )
    weights = weights_at(waist_used)
    return LGSpectrum(weights, waist_used, 1.0 - sum(weights.values()))


def extract_order(
    far: FarField,
    grating_period: float,
    order: int,
    min_capture: float = ORDER_WINDOW_CAPTURE,
) -> OrderExtract:
    """Isolate one diffraction order of a grating from a far field.

    Windows a disc of radius min(half the order spacing, the distance to the
    grid edge) around (order/period, 0) and returns the re-centered patch as
    a frequency-domain ComplexField.  The window must capture at least
    ``min_capture`` of the power found in its 1.5x surrounding annulus,
    otherwise the order is not cleanly isolated and extraction fails.
    """
    if grating_period <= 0.0:
        raise DomainError("grating period must be > 0")
    fx = far.grid.x()
    fy = far.grid.y()
    f_center = order / grating_period
    if not (fx[0] <= f_center <= fx[-1]):
        raise DomainError(
            f"order {order} at {f_center:.3g} /m lies outside the sampled band"
        )
    guard = min(f_center - fx[0], fx[-1] - f_center, -fy[0], fy[-1])
    radius = min(1.0 / (2.0 * grating_period), guard)
    half = int(np.ceil(radius / far.grid.dx)) + 1
    if 2 * half < 8:
        raise DomainError("order window is too small to analyze on this grid")
    ci = int(round((f_center - fx[0]) / far.grid.dx))
    cj = far.grid.ny // 2
    if ci - half < 0 or ci + half > far.grid.nx or cj - half < 0 or cj + half > far.grid.ny:
        raise DomainError("order window exceeds the frequency grid")

    bin_center = fx[ci]
    fxm, fym = far.grid.meshes()
    dist = np.hypot(fxm - bin_center, fym)
    disc = dist <= radius
    annulus = (dist > radius) & (dist <= 1.5 * radius)
    total = np.abs(far.amplitude) ** 2
    disc_power = float(total[disc].sum())
    ring_power = float(total[annulus].sum())
    if disc_power <= 0.0:
        raise RegimeError(f"no power found at diffraction order {order}")
    capture = disc_power / (disc_power + ring_power)
    if capture < min_capture:
        raise RegimeError(
            f"order window captures only {capture:.3f} of its neighborhood power "
            f"(need >= {min_capture})"
        )

    patch = np.where(disc, far.amplitude, 0.0)[cj - half : cj + half, ci - half : ci + half]
    patch_grid = GridSpec(2 * half, 2 * half, far.grid.dx, far.grid.dy)
    return OrderExtract(
        order,
        (f_center, 0.0),
        radius,
        ComplexField(patch_grid, patch, far.wavelength),
    )


def transmission_stats(transfer: CellTransfer) -> TransmissionStats:
    """Min/max/mean of per-pixel power transmission attenuation^2."""
    t = transfer.attenuation**2
    return TransmissionStats(float(t.min()), float(t.max()), float(t.mean()))
