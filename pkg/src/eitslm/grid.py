"""Transverse sampling grids and sampled complex fields.

A grid samples a rectangle at pixel centers x_i = (i - nx/2)*dx + cx, so the
coordinate origin is always a sample and layouts are transform-friendly.  The
same class describes frequency-domain grids, with pitches in 1/m.  Arrays are
stored as (ny, nx), rows along y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatchError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GridSpec:
    """Sample counts, pitches (m or 1/m) and center coordinates of a grid."""

    nx: int
    ny: int
    dx: float
    dy: float
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.nx < 8 or self.ny < 8 or self.nx % 2 or self.ny % 2:
            raise DomainError("grid sides must be even and at least 8 samples")
        if self.dx <= 0.0 or self.dy <= 0.0:
            raise DomainError("grid pitch must be positive")

    @classmethod
    def square(cls, n: int, pitch: float) -> "GridSpec":
        return cls(n, n, pitch, pitch)

    @property
    def pixel_area(self) -> float:
        return self.dx * self.dy

    @property
    def inscribed_radius(self) -> float:
        """Largest circle radius around the center that stays interpolable."""
        return min((self.nx // 2 - 1) * self.dx, (self.ny // 2 - 1) * self.dy)

    def x(self) -> np.ndarray:
        return (np.arange(self.nx) - self.nx // 2) * self.dx + self.center[0]

    def y(self) -> np.ndarray:
        return (np.arange(self.ny) - self.ny // 2) * self.dy + self.center[1]

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate meshes of shape (ny, nx)."""
        return np.meshgrid(self.x(), self.y())

    def radius_azimuth(self) -> tuple[np.ndarray, np.ndarray]:
        """Polar coordinates about the grid center; azimuth in [0, 2*pi)."""
        xm, ym = self.meshes()
        xr = xm - self.center[0]
        yr = ym - self.center[1]
        return np.hypot(xr, yr), np.mod(np.arctan2(yr, xr), TWO_PI)

    def same_sampling(self, other: "GridSpec") -> bool:
        return (
            self.nx == other.nx
            and self.ny == other.ny
            and self.dx == other.dx
            and self.dy == other.dy
        )


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Sampled complex envelope on a grid, plus the carrier wavelength (m)."""

    grid: GridSpec
    amplitude: np.ndarray
    wavelength: float

    def __post_init__(self):
        amp = np.asarray(self.amplitude, dtype=complex)
        if amp.shape != (self.grid.ny, self.grid.nx):
            raise GridMismatchError(
                f"amplitude shape {amp.shape} does not match grid "
                f"({self.grid.ny}, {self.grid.nx})"
            )
        if self.wavelength <= 0.0:
            raise DomainError("wavelength must be positive")
        object.__setattr__(self, "amplitude", amp)

    @property
    def power(self) -> float:
        """Total power sum(|E|^2) * dx * dy."""
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.grid.pixel_area)

    @property
    def peak(self) -> float:
        return float(np.abs(self.amplitude).max())
