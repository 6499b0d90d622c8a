"""Susceptibility of a coupling-dressed three-level lambda medium.

The probe is taken resonant with its own transition and weak enough not to
back-react, so the steady-state linear susceptibility depends only on the
medium constants and on the local coupling Rabi frequency.  The full
rational expression is the canonical evaluation everywhere in the package;
the familiar strong-coupling and thin-medium linearizations are exposed only
as cross-check helpers.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, NoSolutionError, RegimeError
from .units import CODATA, PhysicalConstants

TWO_PI = 2.0 * np.pi

CHI_WARN_THRESHOLD = 0.1  # |chi| beyond this is suspicious for an EIT medium
CHI_REGIME_LIMIT = 1.0  # |chi| beyond this invalidates the dilute-medium model

RB87_GAMMA31 = 38.11e6  # excited-state decay rate used by the D2 preset, 1/s


class SusceptibilityWarning(UserWarning):
    """The medium response left the weak-response regime expected under EIT."""


@dataclass(frozen=True)
class AtomicParams:
    """Constants of the driven three-level medium, all SI.

    gamma31: population decay rate of the excited state to the probe ground
        state (1/s).
    gamma21: decoherence rate between the two ground states (1/s).
    mu13, mu23: transition dipole moments of the probe and coupling
        transitions (C*m).
    rho: atom number density (1/m^3).
    delta: coupling-field detuning (rad/s); the probe is resonant by setup.
    wavelength: probe wavelength (m).
    """

    gamma31: float
    gamma21: float
    mu13: float
    mu23: float
    rho: float
    delta: float
    wavelength: float

    def __post_init__(self):
        if self.gamma31 <= 0.0:
            raise DomainError("gamma31 must be > 0")
        if self.gamma21 < 0.0:
            raise DomainError("gamma21 must be >= 0")
        if self.mu13 <= 0.0 or self.mu23 <= 0.0:
            raise DomainError("dipole moments must be > 0")
        if self.rho <= 0.0:
            raise DomainError("atom density must be > 0")
        if self.wavelength <= 0.0:
            raise DomainError("wavelength must be > 0")


def rb87_d2(**overrides) -> AtomicParams:
    """Rubidium-87 D2-line preset for a hot-vapor cell.

    Keyword overrides replace individual fields, e.g. ``rb87_d2(rho=1e17,
    delta=0.0)`` for a resonant low-density cell.
    """
    values = dict(
        gamma31=RB87_GAMMA31,
        gamma21=TWO_PI * 3000.0,
        mu13=3.58e-29,
        mu23=3.58e-29,
        rho=5e18,
        delta=-0.2 * RB87_GAMMA31,
        wavelength=780e-9,
    )
    unknown = set(overrides) - set(values)
    if unknown:
        raise DomainError(f"unknown atomic parameter(s): {sorted(unknown)}")
    values.update(overrides)
    return AtomicParams(**values)


@dataclass(frozen=True)
class Susceptibility:
    """Dimensionless linear response chi = chi_re + i*chi_im."""

    chi_re: float
    chi_im: float

    def __post_init__(self):
        if max(abs(self.chi_re), abs(self.chi_im)) > CHI_WARN_THRESHOLD:
            warnings.warn(
                "susceptibility outside the weak-response regime (|chi| > 0.1)",
                SusceptibilityWarning,
                stacklevel=3,
            )

    @property
    def chi(self) -> complex:
        return complex(self.chi_re, self.chi_im)

    def refractive_index(self) -> complex:
        return refractive_index(self)

    def absorption_coefficient(self, wavelength: float) -> float:
        return absorption_coefficient(self, wavelength)

    def transmission(self, wavelength: float, thickness: float) -> float:
        return transmission(absorption_coefficient(self, wavelength), thickness)


def coupling_prefactor(params: AtomicParams, constants: PhysicalConstants = CODATA) -> float:
    """Density-dipole prefactor mu13^2 * rho / (eps0 * hbar), in rad/s."""
    return params.mu13 * params.mu13 * params.rho / (constants.epsilon0 * constants.hbar)


def susceptibility(
    params: AtomicParams, omega_c: float, constants: PhysicalConstants = CODATA
) -> Susceptibility:
    """Steady-state weak-probe susceptibility at coupling Rabi frequency omega_c.

    In the fully degenerate corner (omega_c = delta = gamma21 = 0) the
    rational expression becomes 0/0; its limit for gamma31 > 0 is the
    resonant two-level response returned by :func:`resonant_absorption`,
    and that value is used.
    """
    if omega_c < 0.0:
        raise DomainError("coupling Rabi frequency must be >= 0")
    pref = coupling_prefactor(params, constants)
    osq = omega_c * omega_c
    a = osq + params.gamma31 * params.gamma21
    b = -2.0 * params.gamma31 * params.delta
    den = a * a + b * b
    if den == 0.0:
        return Susceptibility(0.0, 2.0 * pref / params.gamma31)
    num_re = -4.0 * params.delta * osq
    num_im = 8.0 * params.delta * params.delta * params.gamma31 + 2.0 * params.gamma21 * (
        osq + params.gamma21 * params.gamma31
    )
    return Susceptibility(pref * num_re / den + 0.0, pref * num_im / den)


def susceptibility_grid(
    params: AtomicParams, omega_sq, constants: PhysicalConstants = CODATA
) -> np.ndarray:
    """Vectorized susceptibility over an array of |Omega_c|^2 values.

    Dispatches to the active kernel backend; semantics per-sample match
    :func:`susceptibility`.
    """
    omega_sq = np.asarray(omega_sq, dtype=float)
    if (omega_sq < 0.0).any():
        raise DomainError("squared Rabi frequencies must be >= 0")
    return _kernels.susceptibility_map(
        omega_sq,
        params.gamma31,
        params.gamma21,
        params.delta,
        coupling_prefactor(params, constants),
    )


def strong_coupling_susceptibility(
    params: AtomicParams, omega_c: float, constants: PhysicalConstants = CODATA
) -> Susceptibility:
    """Leading-order response for omega_c much larger than all other rates.

    Cross-check helper only: chi' = -4*delta*pref/omega_c^2 and
    chi'' = 2*gamma21*pref/omega_c^2.
    """
    if omega_c <= 0.0:
        raise DomainError("the strong-coupling limit requires omega_c > 0")
    pref = coupling_prefactor(params, constants)
    osq = omega_c * omega_c
    return Susceptibility(-4.0 * params.delta * pref / osq, 2.0 * params.gamma21 * pref / osq)


def resonant_absorption(
    params: AtomicParams, constants: PhysicalConstants = CODATA
) -> Susceptibility:
    """Response of the bare resonant two-level medium (no coupling field).

    This equals the zero-coupling limit of :func:`susceptibility` for any
    detuning, since an uncoupled pixel never sees the coupling field.
    """
    pref = coupling_prefactor(params, constants)
    return Susceptibility(0.0, 2.0 * pref / params.gamma31)


def _as_complex(chi) -> complex:
    if isinstance(chi, Susceptibility):
        return chi.chi
    return complex(chi)


def refractive_index(chi) -> complex:
    """Exact complex refractive index sqrt(1 + chi), principal branch.

    The thin-medium linearization 1 + chi/2 is available separately as
    :func:`refractive_index_linearized`; the exact root is canonical.
    """
    value = _as_complex(chi)
    if abs(value) >= CHI_REGIME_LIMIT:
        raise RegimeError(f"|chi| = {abs(value):.3g} >= 1 is outside the dilute-medium regime")
    return cmath.sqrt(1.0 + value)


def refractive_index_linearized(chi) -> complex:
    """First-order index 1 + chi/2; cross-check for the exact root."""
    return 1.0 + _as_complex(chi) / 2.0


def absorption_coefficient(chi, wavelength: float) -> float:
    """Intensity absorption coefficient 2*pi*chi''/wavelength (1/m)."""
    if wavelength <= 0.0:
        raise DomainError("wavelength must be > 0")
    return TWO_PI * _as_complex(chi).imag / wavelength


def transmission(alpha: float, thickness: float) -> float:
    """Beer-Lambert power transmission exp(-alpha*d)."""
    if alpha < 0.0:
        raise DomainError("absorption coefficient must be >= 0")
    if thickness < 0.0:
        raise DomainError("thickness must be >= 0")
    return float(np.exp(-alpha * thickness))


@dataclass(frozen=True)
class ThicknessSolution:
    """Result of the azimuthal phase-contrast thickness solve."""

    thickness: float  # m
    chi_start: Susceptibility  # response at the strong end of the ramp
    chi_end: Susceptibility  # response at the weak end of the ramp
    min_transmission: float  # worse endpoint transmission at this thickness
    transmission_ok: bool  # min_transmission >= the configured floor


def solve_cell_thickness(
    params: AtomicParams,
    omega_at_0: float,
    omega_at_2pi: float,
    delta_l: int = 1,
    transmission_floor: float = 0.9,
    constants: PhysicalConstants = CODATA,
) -> ThicknessSolution:
    """Cell thickness that imprints delta_l full phase turns across the ramp.

    Solves [chi'(omega_at_2pi) - chi'(omega_at_0)] * d = 2 * delta_l *
    wavelength, using the exact susceptibility at both ramp endpoints.  A
    thickness whose worse endpoint transmission falls below the floor is
    still returned, flagged via ``transmission_ok``.
    """
    if delta_l == 0:
        raise DomainError("delta_l must be nonzero")
    chi_start = susceptibility(params, omega_at_0, constants)
    chi_end = susceptibility(params, omega_at_2pi, constants)
    contrast = chi_end.chi_re - chi_start.chi_re
    if contrast == 0.0:
        raise NoSolutionError("no refractive-index contrast between the ramp endpoints")
    thickness = 2.0 * delta_l * params.wavelength / contrast
    if thickness <= 0.0:
        raise NoSolutionError(
            f"phase contrast of sign {np.sign(contrast):+.0f} cannot produce "
            f"delta_l = {delta_l}"
        )
    t_min = min(
        chi_start.transmission(params.wavelength, thickness),
        chi_end.transmission(params.wavelength, thickness),
    )
    return ThicknessSolution(thickness, chi_start, chi_end, t_min, t_min >= transmission_floor)
