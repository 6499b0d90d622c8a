"""Coupling-field intensity patterns on a transverse grid.

Three generators cover the artifact: uniform illumination, the azimuthal
Rabi-frequency ramp (with sector repetition for higher winding numbers), and
the binary fork grating with an edge dislocation.  Pixels are sampled at
cell centers with no anti-aliasing, so outputs are deterministic and the
ramp seam along the +x axis is hard.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatchError, RegimeError
from .grid import TWO_PI, GridSpec
from .medium import AtomicParams
from .units import CODATA, PhysicalConstants, intensity_from_rabi

KIND_UNIFORM = "uniform"
KIND_RAMP = "azimuthal_ramp"
KIND_FORK = "fork"
KIND_BINARY = "binary_mask"

MIN_RESOLVABLE_PERIOD = 4  # grating period in pixels below which fringes alias


@dataclass(frozen=True, eq=False)
class CouplingMap:
    """Real coupling-field intensity map (W/m^2) with its grid and a kind tag."""

    grid: GridSpec
    intensity: np.ndarray
    kind: str

    def __post_init__(self):
        arr = np.asarray(self.intensity, dtype=float)
        if arr.shape != (self.grid.ny, self.grid.nx):
            raise GridMismatchError(
                f"intensity shape {arr.shape} does not match grid "
                f"({self.grid.ny}, {self.grid.nx})"
            )
        if (arr < 0.0).any():
            raise DomainError("coupling intensity must be >= 0 everywhere")
        object.__setattr__(self, "intensity", arr)


@dataclass(frozen=True)
class RampParams:
    """Parameters of the azimuthal Rabi ramp Omega(phi) = sqrt(a/(b*phi + c)) * gamma31.

    ``sectors`` repeats the full 0..2*pi ramp that many times around the
    circle, each sector spanning 2*pi/sectors of azimuth, which multiplies
    the imprinted winding number accordingly.
    """

    a: float
    b: float
    c: float
    sectors: int = 1

    def __post_init__(self):
        if self.a <= 0.0 or self.c <= 0.0 or self.b < 0.0:
            raise DomainError("ramp requires a > 0, b >= 0, c > 0")
        if self.sectors < 1:
            raise DomainError("sectors must be >= 1")

    def rabi(self, phi, gamma31: float):
        """Single-ramp Rabi frequency at ramp coordinate phi (no sector wrap).

        phi = 2*pi evaluates the seam limit, i.e. the weak end of the ramp.
        """
        return np.sqrt(self.a / (self.b * np.asarray(phi, dtype=float) + self.c)) * gamma31


def uniform(grid: GridSpec, intensity: float) -> CouplingMap:
    """Spatially constant illumination."""
    if intensity < 0.0:
        raise DomainError("intensity must be >= 0")
    return CouplingMap(grid, np.full((grid.ny, grid.nx), float(intensity)), KIND_UNIFORM)


def azimuthal_ramp(
    grid: GridSpec,
    ramp: RampParams,
    atomic: AtomicParams,
    constants: PhysicalConstants = CODATA,
) -> CouplingMap:
    """Intensity map realizing the azimuthal Rabi ramp for the given medium.

    The per-pixel Rabi frequency is converted to intensity through the
    coupling-transition dipole moment.  Azimuth is measured about the grid
    center and the seam sits along the +x axis.
    """
    _, phi = grid.radius_azimuth()
    phi_local = np.mod(ramp.sectors * phi, TWO_PI)
    omega = ramp.rabi(phi_local, atomic.gamma31)
    intensity = intensity_from_rabi(omega, atomic.mu23, constants)
    return CouplingMap(grid, intensity, KIND_RAMP)


def fork_transmission(r, phi, l: int, period: float):
    """Binary transmission of a fork grating with an order-l dislocation.

    Closed form of the square-wave harmonic series: bright exactly where
    sin(l*phi + 2*pi*r*cos(phi)/period) > 0.  The azimuth enters with the
    orientation that sends the +1 diffraction order to winding +l.  Scalars
    in give a float; arrays in give an array of {0.0, 1.0}.
    """
    if period <= 0.0:
        raise DomainError("grating period must be > 0")
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    arg = l * phi + (TWO_PI / period) * r * np.cos(phi)
    bright = np.where(np.sin(arg) > 0.0, 1.0, 0.0)
    return float(bright) if bright.ndim == 0 else bright


def fork_grating(grid: GridSpec, l: int, period: float, bright_intensity: float) -> CouplingMap:
    """Sampled fork grating scaled so bright fringes carry the given intensity."""
    if bright_intensity < 0.0:
        raise DomainError("bright intensity must be >= 0")
    if period < MIN_RESOLVABLE_PERIOD * max(grid.dx, grid.dy):
        raise RegimeError(
            f"grating period {period:.3g} m is below {MIN_RESOLVABLE_PERIOD} pixels "
            "and cannot be resolved on this grid"
        )
    radius, phi = grid.radius_azimuth()
    intensity = bright_intensity * fork_transmission(radius, phi, l, period)
    return CouplingMap(grid, intensity, KIND_FORK)
