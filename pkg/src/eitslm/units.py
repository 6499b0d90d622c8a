"""Physical constants and the intensity <-> Rabi-frequency bridge.

Everything internal is SI: intensities in W/m^2, lengths in meters, angular
frequencies in rad/s.  The CLI converts user-facing mW/cm^2, micrometers and
millimeters at the boundary with the factors below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "MW_PER_CM2",
    "MICROMETER",
    "MILLIMETER",
    "NANOMETER",
    "rabi_from_intensity",
    "intensity_from_rabi",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants; frozen so they cannot drift after startup."""

    epsilon0: float = 8.8541878128e-12  # vacuum permittivity, F/m
    hbar: float = 1.054571817e-34  # reduced Planck constant, J*s
    c_light: float = 2.99792458e8  # speed of light, m/s


CODATA = PhysicalConstants()

# boundary-unit factors (multiply to get SI)
MW_PER_CM2 = 10.0  # 1 mW/cm^2 = 10 W/m^2
MICROMETER = 1e-6
MILLIMETER = 1e-3
NANOMETER = 1e-9


def rabi_from_intensity(intensity, mu: float, constants: PhysicalConstants = CODATA):
    """Angular Rabi frequency (rad/s) driven by a field of given intensity.

    Combines I = eps0*c*E^2/2 with Omega = mu*E/hbar.  Accepts scalars or
    arrays; negative intensities are rejected.
    """
    intensity = np.asarray(intensity, dtype=float)
    if np.any(intensity < 0.0):
        raise DomainError("intensity must be >= 0")
    if mu <= 0.0:
        raise DomainError("dipole moment must be > 0")
    omega = (mu / constants.hbar) * np.sqrt(
        2.0 * intensity / (constants.epsilon0 * constants.c_light)
    )
    return float(omega) if omega.ndim == 0 else omega


def intensity_from_rabi(omega, mu: float, constants: PhysicalConstants = CODATA):
    """Field intensity (W/m^2) at which a dipole mu oscillates at Rabi rate omega."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0):
        raise DomainError("Rabi frequency must be >= 0")
    if mu == 0.0:
        raise DomainError("dipole moment must be nonzero")
    field = constants.hbar * omega / mu
    intensity = 0.5 * constants.epsilon0 * constants.c_light * field * field
    return float(intensity) if intensity.ndim == 0 else intensity
