"""Thin-cell transfer: coupling map -> per-pixel complex transmittance.

The vapor cell is thin enough to act as a single multiplicative screen, so a
coupling intensity map determines a phase and an amplitude factor per pixel.
Only the medium-induced phase relative to vacuum is kept; the common
propagation phase of the empty cell is unobservable downstream and dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import medium
from .errors import DomainError, GridMismatchError, RegimeError
from .grid import TWO_PI, ComplexField, GridSpec
from .medium import AtomicParams
from .patterns import CouplingMap
from .units import CODATA, PhysicalConstants, rabi_from_intensity

MODE_EIT = "eit"
MODE_RESONANT = "resonant_two_level"


@dataclass(frozen=True, eq=False)
class CellTransfer:
    """Phase (rad, wrapped to (-pi, pi]) and amplitude factor per pixel."""

    grid: GridSpec
    phase: np.ndarray
    attenuation: np.ndarray
    thickness: float

    def __post_init__(self):
        phase = np.asarray(self.phase, dtype=float)
        att = np.asarray(self.attenuation, dtype=float)
        shape = (self.grid.ny, self.grid.nx)
        if phase.shape != shape or att.shape != shape:
            raise GridMismatchError("transfer arrays do not match the grid shape")
        if self.thickness <= 0.0:
            raise DomainError("cell thickness must be > 0")
        if (att <= 0.0).any() or (att > 1.0).any():
            raise DomainError("attenuation must lie in (0, 1]")
        object.__setattr__(self, "phase", phase)
        object.__setattr__(self, "attenuation", att)


def susceptibility_of(
    coupling: CouplingMap,
    atomic: AtomicParams,
    mode: str = MODE_EIT,
    constants: PhysicalConstants = CODATA,
) -> np.ndarray:
    """Per-pixel complex susceptibility seen by the probe under this coupling map.

    ``eit`` evaluates the full three-level expression everywhere, including
    at dark pixels (where its zero-coupling limit is the resonant two-level
    response).  ``resonant_two_level`` writes that two-level value at dark
    pixels in closed form instead; the two modes agree to rounding.
    """
    omega = rabi_from_intensity(coupling.intensity, atomic.mu23, constants)
    chi = medium.susceptibility_grid(atomic, omega * omega, constants)
    if mode == MODE_RESONANT:
        dark = coupling.intensity == 0.0
        if dark.any():
            chi[dark] = 1j * (2.0 * medium.coupling_prefactor(atomic, constants) / atomic.gamma31)
    elif mode != MODE_EIT:
        raise DomainError(f"unknown cell mode {mode!r}")
    return chi


def build_transfer(
    coupling: CouplingMap,
    atomic: AtomicParams,
    thickness: float,
    mode: str = MODE_EIT,
    constants: PhysicalConstants = CODATA,
) -> CellTransfer:
    """Complex screen of a cell of the given thickness under a coupling map.

    Per pixel: phase = (2*pi/lambda) * (Re sqrt(1+chi) - 1) * d wrapped to
    (-pi, pi] (this reduces to (pi/lambda)*chi'*d for small chi), and
    attenuation = exp(-alpha*d/2) with alpha = 2*pi*chi''/lambda.
    """
    if thickness <= 0.0:
        raise DomainError("cell thickness must be > 0")
    chi = susceptibility_of(coupling, atomic, mode, constants)
    magnitude = np.abs(chi)
    if (magnitude >= medium.CHI_REGIME_LIMIT).any():
        flat = int(np.argmax(magnitude >= medium.CHI_REGIME_LIMIT))
        iy, ix = divmod(flat, coupling.grid.nx)
        raise RegimeError(
            f"|chi| = {magnitude.flat[flat]:.3g} >= 1 at pixel (ix={ix}, iy={iy}); "
            "the dilute-medium model does not apply"
        )
    index = np.sqrt(1.0 + chi)
    raw_phase = (TWO_PI / atomic.wavelength) * (index.real - 1.0) * thickness
    phase = np.arctan2(np.sin(raw_phase), np.cos(raw_phase))
    attenuation = np.exp(-np.pi * chi.imag * thickness / atomic.wavelength)
    return CellTransfer(coupling.grid, phase, attenuation, thickness)


def apply_transfer(field: ComplexField, transfer: CellTransfer) -> ComplexField:
    """Multiply a probe field by the cell screen; power never increases."""
    if not field.grid.same_sampling(transfer.grid):
        raise GridMismatchError("field and transfer grids differ")
    out = field.amplitude * transfer.attenuation * np.exp(1j * transfer.phase)
    return ComplexField(field.grid, out, field.wavelength)
