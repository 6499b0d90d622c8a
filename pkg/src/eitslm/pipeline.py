"""Configuration-driven pipeline: pattern -> cell -> probe -> far field -> analysis.

Stages run sequentially and write documented artifact files into the output
directory; a manifest of SHA-256 checksums closes the run.  Outputs are
byte-identical for identical configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, cell, fieldio, medium, optics, patterns
from .config import PipelineConfig
from .errors import EitSlmError
from .grid import ComplexField, TWO_PI

_STAGE = "stage"


@dataclass(frozen=True)
class PipelineResult:
    output_dir: Path
    files: tuple[Path, ...]
    manifest: Path


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except EitSlmError as exc:
        raise type(exc)(f"[stage {stage}] {exc}") from exc


def run_pipeline(config: PipelineConfig, output_dir: Path | None = None) -> PipelineResult:
    """Execute one configured run; returns the written artifact paths."""
    out = Path(output_dir) if output_dir is not None else config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    files: list[Path] = []

    def emit(path: Path) -> None:
        files.append(path)

    coupling = _staged(_STAGE + ":pattern", _make_pattern, config)
    emit(
        fieldio.write_field_grid(
            out / "pattern.eitf", coupling.grid, coupling.intensity, fieldio.DOMAIN_SPATIAL
        )
    )
    if config.write_images:
        emit(fieldio.write_pgm(out / "pattern.pgm", coupling.intensity))

    thickness = config.thickness
    if thickness == "solve":
        solution = _staged(_STAGE + ":solve-thickness", _solve_thickness, config)
        thickness = solution.thickness
        emit(
            fieldio.write_key_values(
                out / "thickness.txt",
                [
                    ("thickness_um", solution.thickness / 1e-6),
                    ("chi_re_start", solution.chi_start.chi_re),
                    ("chi_re_end", solution.chi_end.chi_re),
                    ("min_transmission", solution.min_transmission),
                    ("transmission_ok", solution.transmission_ok),
                ],
            )
        )

    transfer = _staged(
        _STAGE + ":transfer",
        cell.build_transfer,
        coupling,
        config.atomic,
        thickness,
        config.cell_mode,
    )
    emit(
        fieldio.write_field_grid(
            out / "transfer_phase.eitf", transfer.grid, transfer.phase, fieldio.DOMAIN_SPATIAL
        )
    )
    emit(
        fieldio.write_field_grid(
            out / "transfer_attenuation.eitf",
            transfer.grid,
            transfer.attenuation,
            fieldio.DOMAIN_SPATIAL,
        )
    )

    probe = _staged(_STAGE + ":probe", _make_probe, config)
    transmitted = _staged(_STAGE + ":transmit", cell.apply_transfer, probe, transfer)
    emit(
        fieldio.write_field_grid(
            out / "probe_out.eitf",
            transmitted.grid,
            transmitted.amplitude,
            fieldio.DOMAIN_SPATIAL,
        )
    )

    requests = config.analysis.requests
    far = None
    if "far_field" in requests or "orders" in requests:
        far = _staged(
            _STAGE + ":far-field", optics.far_field, transmitted, config.analysis.pad_factor
        )
        emit(
            fieldio.write_field_grid(
                out / "far_field.eitf", far.grid, far.amplitude, fieldio.DOMAIN_FREQUENCY
            )
        )
        if config.write_images:
            emit(fieldio.write_pgm(out / "far_field.pgm", np.abs(far.amplitude) ** 2))

    if "transmission" in requests:
        stats = analysis.transmission_stats(transfer)
        emit(
            fieldio.write_key_values(
                out / "transmission.txt",
                [
                    ("t_min", stats.minimum),
                    ("t_max", stats.maximum),
                    ("t_mean", stats.mean),
                ],
            )
        )

    if "winding" in requests:
        radii = config.analysis.winding_radii or (config.probe.waist,)
        rows = []
        for radius in radii:
            value = _staged(
                _STAGE + ":winding", analysis.winding_number, transmitted, radius
            )
            rows.append((repr(float(radius)), value))
        emit(fieldio.write_csv(out / "winding.csv", ["radius_m", "winding"], rows))

    if "oam" in requests:
        spectrum = _staged(
            _STAGE + ":oam", analysis.oam_spectrum, transmitted, config.analysis.n_harmonics
        )
        rows = [(m, spectrum[m]) for m in sorted(spectrum)]
        emit(fieldio.write_csv(out / "oam.csv", ["harmonic", "power_fraction"], rows))

    if "lg" in requests:
        waist = config.analysis.lg_waist or config.probe.waist
        spectrum = _staged(
            _STAGE + ":lg",
            analysis.lg_decompose,
            transmitted,
            waist,
            config.analysis.lg_p_max,
            config.analysis.lg_l_max,
        )
        rows = [(p, l, w) for (p, l), w in sorted(spectrum.weights.items())]
        emit(fieldio.write_csv(out / "lg.csv", ["p", "l", "weight"], rows))
        emit(
            fieldio.write_key_values(
                out / "lg_summary.txt",
                [("waist_used_m", spectrum.waist_used), ("residual", spectrum.residual)],
            )
        )

    if "orders" in requests:
        rows = []
        for order in config.analysis.orders:
            extract = _staged(
                _STAGE + ":orders", analysis.extract_order, far, config.pattern.period, order
            )
            ring = analysis.peak_ring_radius(extract.field)
            value = _staged(
                _STAGE + ":orders", analysis.winding_number, extract.field, ring
            )
            rows.append(
                (
                    order,
                    repr(float(extract.center_frequency[0])),
                    repr(float(extract.window_radius)),
                    repr(float(ring)),
                    value,
                )
            )
        emit(
            fieldio.write_csv(
                out / "orders.csv",
                ["order", "center_fx_per_m", "window_radius_per_m", "ring_radius_per_m", "winding"],
                rows,
            )
        )

    manifest = _write_manifest(out, files)
    return PipelineResult(out, tuple(files), manifest)


def _make_pattern(config: PipelineConfig) -> patterns.CouplingMap:
    spec = config.pattern
    if spec.kind == "uniform":
        return patterns.uniform(config.grid, spec.intensity)
    if spec.kind == "ramp":
        return patterns.azimuthal_ramp(config.grid, spec.ramp, config.atomic)
    return patterns.fork_grating(config.grid, spec.l, spec.period, spec.bright_intensity)


def _solve_thickness(config: PipelineConfig) -> medium.ThicknessSolution:
    ramp = config.pattern.ramp
    omega_start = ramp.rabi(0.0, config.atomic.gamma31)
    omega_end = ramp.rabi(TWO_PI, config.atomic.gamma31)
    return medium.solve_cell_thickness(
        config.atomic,
        omega_start,
        omega_end,
        config.solve_delta_l,
        config.transmission_floor,
    )


def _make_probe(config: PipelineConfig) -> ComplexField:
    probe = config.probe
    if probe.mode == "gaussian":
        return optics.gaussian_source(config.grid, probe.waist, config.atomic.wavelength)
    return optics.lg_source(config.grid, probe.p, probe.l, probe.waist, config.atomic.wavelength)


def _write_manifest(out: Path, files: list[Path]) -> Path:
    lines = sorted(f"{fieldio.sha256_of(path)}  {path.name}" for path in files)
    manifest = out / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="ascii")
    return manifest
