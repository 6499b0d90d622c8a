"""Desk-scale simulator of EIT-based spatial light modulation.

A structured coupling field dresses a three-level vapor; the resulting
susceptibility imprints phase and absorption onto a probe beam through a
thin cell, whose far field is then analyzed for vortex content and modal
purity, along with the switching speed the scheme supports.
"""

from ._kernels import backend_name
from .cell import CellTransfer, apply_transfer, build_transfer
from .dynamics import SwitchingReport, switching_report
from .grid import ComplexField, GridSpec
from .medium import (
    AtomicParams,
    Susceptibility,
    ThicknessSolution,
    rb87_d2,
    resonant_absorption,
    solve_cell_thickness,
    susceptibility,
)
from .optics import FarField, far_field, far_field_oracle, gaussian_source, lg_source
from .patterns import CouplingMap, RampParams, azimuthal_ramp, fork_grating, uniform
from .analysis import (
    LGSpectrum,
    OrderExtract,
    extract_order,
    lg_decompose,
    oam_spectrum,
    transmission_stats,
    winding_number,
)
from .units import CODATA, PhysicalConstants, intensity_from_rabi, rabi_from_intensity

__version__ = "0.1.0"

__all__ = [
    "AtomicParams",
    "CODATA",
    "CellTransfer",
    "ComplexField",
    "CouplingMap",
    "FarField",
    "GridSpec",
    "LGSpectrum",
    "OrderExtract",
    "PhysicalConstants",
    "RampParams",
    "Susceptibility",
    "SwitchingReport",
    "ThicknessSolution",
    "apply_transfer",
    "azimuthal_ramp",
    "backend_name",
    "build_transfer",
    "extract_order",
    "far_field",
    "far_field_oracle",
    "fork_grating",
    "gaussian_source",
    "intensity_from_rabi",
    "lg_decompose",
    "lg_source",
    "oam_spectrum",
    "rabi_from_intensity",
    "rb87_d2",
    "resonant_absorption",
    "solve_cell_thickness",
    "susceptibility",
    "switching_report",
    "transmission_stats",
    "uniform",
    "winding_number",
]
