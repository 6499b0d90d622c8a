"""Command-line interface.

Thin argument-parsing wrappers around the library; no numerics live here.
User-facing units are mW/cm^2 for intensities and um/mm for lengths, with
conversion at this boundary.  Exit codes: 1 usage, 2 config, 3 numeric
regime, 4 I/O.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis, cell, config as config_mod, dynamics, fieldio, medium, optics, patterns, pipeline
from .errors import (
    ConfigError,
    DomainError,
    FieldFormatError,
    NoSolutionError,
    RegimeError,
)
from .grid import ComplexField, GridSpec, TWO_PI
from .optics import FarField
from .units import MICROMETER, MILLIMETER, MW_PER_CM2, NANOMETER, intensity_from_rabi

EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_REGIME = 3
EXIT_IO = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE
    try:
        args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, RegimeError, NoSolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (OSError, FieldFormatError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="eitslm", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    scan = sub.add_parser("susceptibility-scan", help="evaluate the medium response")
    _atomic_args(scan)
    scan.add_argument("--omega", type=float, help="coupling Rabi frequency, rad/s")
    scan.add_argument("--intensity-mw-cm2", type=float, help="coupling intensity, mW/cm^2")
    scan.add_argument("--ramp", help="a,b,c to sweep the azimuthal ramp instead")
    scan.add_argument("--samples", type=int, default=64, help="sweep sample count")
    scan.add_argument("--thickness-um", type=float, help="cell thickness for T(phi), um")
    scan.add_argument("--csv", type=Path, help="write the sweep as CSV")
    scan.set_defaults(func=_cmd_scan)

    ramp = sub.add_parser("design-ramp", help="write an azimuthal-ramp coupling map")
    _atomic_args(ramp)
    _grid_args(ramp)
    ramp.add_argument("--a", type=float, required=True)
    ramp.add_argument("--b", type=float, required=True)
    ramp.add_argument("--c", type=float, required=True)
    ramp.add_argument("--sectors", type=int, default=1)
    ramp.add_argument("--out", type=Path, required=True)
    ramp.add_argument("--pgm", type=Path, help="also write an 8-bit grayscale image")
    ramp.set_defaults(func=_cmd_design_ramp)

    fork = sub.add_parser("design-fork", help="write a fork-grating coupling map")
    _grid_args(fork)
    fork.add_argument("--charge", type=int, required=True, help="dislocation order l")
    fork.add_argument("--period-px", type=float, help="grating period in pixels")
    fork.add_argument("--period-um", type=float, help="grating period in um")
    fork.add_argument("--bright-mw-cm2", type=float, required=True)
    fork.add_argument("--out", type=Path, required=True)
    fork.add_argument("--pgm", type=Path)
    fork.set_defaults(func=_cmd_design_fork)

    solve = sub.add_parser("solve-thickness", help="cell thickness for a phase target")
    _atomic_args(solve)
    solve.add_argument("--ramp", required=True, help="a,b,c of the azimuthal ramp")
    solve.add_argument("--delta-l", type=int, default=1)
    solve.add_argument("--floor", type=float, default=0.9, help="transmission floor")
    solve.set_defaults(func=_cmd_solve)

    transmit = sub.add_parser("transmit", help="send a probe through a cell")
    _atomic_args(transmit)
    transmit.add_argument("--map", type=Path, required=True, help="coupling map file")
    transmit.add_argument("--thickness-um", type=float, required=True)
    transmit.add_argument("--mode", choices=cell_modes(), default="eit")
    transmit.add_argument("--waist-mm", type=float, required=True)
    transmit.add_argument("--probe-p", type=int, default=0)
    transmit.add_argument("--probe-l", type=int, default=0)
    transmit.add_argument("--out-field", type=Path, required=True)
    transmit.add_argument("--out-phase", type=Path)
    transmit.add_argument("--out-attenuation", type=Path)
    transmit.set_defaults(func=_cmd_transmit)

    far = sub.add_parser("far-field", help="Fourier transform a field file")
    far.add_argument("--field", type=Path, required=True)
    far.add_argument("--pad", type=int, default=2)
    far.add_argument("--wavelength-nm", type=float, default=780.0)
    far.add_argument("--out", type=Path, required=True)
    far.set_defaults(func=_cmd_far_field)

    an = sub.add_parser("analyze", help="diagnostics on a field file")
    an.add_argument("--field", type=Path, required=True)
    an.add_argument("--wavelength-nm", type=float, default=780.0)
    an.add_argument("--winding-radius", type=float, action="append", default=[],
                    help="circle radius in the field's axis units (m or 1/m)")
    an.add_argument("--oam", type=int, help="azimuthal harmonic count")
    an.add_argument("--lg-waist", type=float, help="basis waist, axis units")
    an.add_argument("--lg-p-max", type=int, default=2)
    an.add_argument("--lg-l-max", type=int, default=2)
    an.add_argument("--peak-ring", action="store_true")
    an.add_argument("--order", type=int, action="append", default=[],
                    help="diffraction order to extract (frequency-domain input)")
    an.add_argument("--grating-period-um", type=float)
    an.set_defaults(func=_cmd_analyze)

    switch = sub.add_parser("switching", help="switching-time report for two maps")
    _atomic_args(switch)
    switch.add_argument("--before", type=Path, required=True)
    switch.add_argument("--after", type=Path, required=True)
    switch.add_argument("--thickness-um", type=float, required=True)
    switch.add_argument("--scheme", choices=("phase", "amplitude"), required=True)
    switch.add_argument("--csv", type=Path)
    switch.set_defaults(func=_cmd_switching)

    run = sub.add_parser("run", help="run a configured pipeline")
    run.add_argument("config", nargs="?", type=Path, help="config file path")
    run.add_argument("--preset", choices=("phase-demo", "amplitude-demo"))
    run.add_argument("--output-dir", type=Path, help="override the configured directory")
    run.set_defaults(func=_cmd_run)

    return parser


def cell_modes():
    return (cell.MODE_EIT, cell.MODE_RESONANT)


def _atomic_args(parser) -> None:
    parser.add_argument("--preset", default="rb87-d2", choices=("rb87-d2",))
    parser.add_argument("--rho", type=float, help="atom density, 1/m^3")
    parser.add_argument("--delta", type=float, help="coupling detuning, rad/s")
    parser.add_argument("--gamma21", type=float, help="ground decoherence rate, 1/s")
    parser.add_argument("--gamma31", type=float, help="excited decay rate, 1/s")


def _grid_args(parser) -> None:
    parser.add_argument("--nx", type=int, default=256)
    parser.add_argument("--ny", type=int, default=256)
    parser.add_argument("--pitch-um", type=float, required=True)


def _atomic_from(args) -> medium.AtomicParams:
    overrides = {}
    for key in ("rho", "delta", "gamma21", "gamma31"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    return medium.rb87_d2(**overrides)


def _grid_from(args) -> GridSpec:
    pitch = args.pitch_um * MICROMETER
    return GridSpec(args.nx, args.ny, pitch, pitch)


def _ramp_from(raw: str) -> patterns.RampParams:
    try:
        a, b, c = (float(tok) for tok in raw.split(","))
    except ValueError as exc:
        raise _UsageError(f"--ramp expects 'a,b,c', got {raw!r}") from exc
    return patterns.RampParams(a, b, c)


def _print_kv(items) -> None:
    for key, value in items:
        if isinstance(value, float):
            print(f"{key} {value!r}")
        else:
            print(f"{key} {value}")


def _cmd_scan(args) -> None:
    atomic = _atomic_from(args)
    if args.ramp is not None:
        _scan_ramp(args, atomic)
        return
    if (args.omega is None) == (args.intensity_mw_cm2 is None):
        raise _UsageError("give exactly one of --omega or --intensity-mw-cm2")
    if args.omega is not None:
        omega = args.omega
    else:
        from .units import rabi_from_intensity

        omega = rabi_from_intensity(args.intensity_mw_cm2 * MW_PER_CM2, atomic.mu23)
    chi = medium.susceptibility(atomic, omega)
    index = medium.refractive_index(chi)
    alpha = medium.absorption_coefficient(chi, atomic.wavelength)
    _print_kv(
        [
            ("omega_rad_s", float(omega)),
            ("chi_re", chi.chi_re),
            ("chi_im", chi.chi_im),
            ("n_re", index.real),
            ("n_im", index.imag),
            ("alpha_per_m", alpha),
        ]
    )


def _scan_ramp(args, atomic) -> None:
    ramp = _ramp_from(args.ramp)
    phis = np.linspace(0.0, TWO_PI, args.samples)
    rows = []
    for phi in phis:
        omega = float(ramp.rabi(phi, atomic.gamma31))
        chi = medium.susceptibility(atomic, omega)
        row = [
            repr(float(phi)),
            repr(intensity_from_rabi(omega, atomic.mu23) / MW_PER_CM2),
            repr(chi.chi_re),
            repr(chi.chi_im),
        ]
        if args.thickness_um is not None:
            alpha = medium.absorption_coefficient(chi, atomic.wavelength)
            row.append(repr(medium.transmission(alpha, args.thickness_um * MICROMETER)))
        rows.append(row)
    header = ["phi_rad", "intensity_mw_cm2", "chi_re", "chi_im"]
    if args.thickness_um is not None:
        header.append("transmission")
    if args.csv is not None:
        fieldio.write_csv(args.csv, header, rows)
        print(f"wrote {args.csv}")
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(row))


def _cmd_design_ramp(args) -> None:
    atomic = _atomic_from(args)
    ramp = patterns.RampParams(args.a, args.b, args.c, args.sectors)
    coupling = patterns.azimuthal_ramp(_grid_from(args), ramp, atomic)
    fieldio.write_field_grid(args.out, coupling.grid, coupling.intensity, fieldio.DOMAIN_SPATIAL)
    if args.pgm:
        fieldio.write_pgm(args.pgm, coupling.intensity)
    print(f"wrote {args.out}")


def _cmd_design_fork(args) -> None:
    grid = _grid_from(args)
    if (args.period_px is None) == (args.period_um is None):
        raise _UsageError("give exactly one of --period-px or --period-um")
    period = args.period_um * MICROMETER if args.period_um else args.period_px * grid.dx
    coupling = patterns.fork_grating(grid, args.charge, period, args.bright_mw_cm2 * MW_PER_CM2)
    fieldio.write_field_grid(args.out, coupling.grid, coupling.intensity, fieldio.DOMAIN_SPATIAL)
    if args.pgm:
        fieldio.write_pgm(args.pgm, coupling.intensity)
    print(f"wrote {args.out}")


def _cmd_solve(args) -> None:
    atomic = _atomic_from(args)
    ramp = _ramp_from(args.ramp)
    solution = medium.solve_cell_thickness(
        atomic,
        float(ramp.rabi(0.0, atomic.gamma31)),
        float(ramp.rabi(TWO_PI, atomic.gamma31)),
        args.delta_l,
        args.floor,
    )
    _print_kv(
        [
            ("thickness_um", solution.thickness / MICROMETER),
            ("chi_re_start", solution.chi_start.chi_re),
            ("chi_re_end", solution.chi_end.chi_re),
            ("min_transmission", solution.min_transmission),
            ("transmission_ok", str(solution.transmission_ok).lower()),
        ]
    )


def _load_coupling(path: Path) -> patterns.CouplingMap:
    record = fieldio.read_field_grid(path)
    if record.domain != fieldio.DOMAIN_SPATIAL or np.iscomplexobj(record.values):
        raise DomainError(f"{path} is not a real spatial intensity map")
    return patterns.CouplingMap(record.grid, record.values, patterns.KIND_BINARY)


def _cmd_transmit(args) -> None:
    atomic = _atomic_from(args)
    coupling = _load_coupling(args.map)
    transfer = cell.build_transfer(
        coupling, atomic, args.thickness_um * MICROMETER, args.mode
    )
    if args.probe_p == 0 and args.probe_l == 0:
        probe = optics.gaussian_source(coupling.grid, args.waist_mm * MILLIMETER, atomic.wavelength)
    else:
        probe = optics.lg_source(
            coupling.grid, args.probe_p, args.probe_l, args.waist_mm * MILLIMETER, atomic.wavelength
        )
    out = cell.apply_transfer(probe, transfer)
    fieldio.write_field_grid(args.out_field, out.grid, out.amplitude, fieldio.DOMAIN_SPATIAL)
    if args.out_phase:
        fieldio.write_field_grid(args.out_phase, transfer.grid, transfer.phase, fieldio.DOMAIN_SPATIAL)
    if args.out_attenuation:
        fieldio.write_field_grid(
            args.out_attenuation, transfer.grid, transfer.attenuation, fieldio.DOMAIN_SPATIAL
        )
    print(f"wrote {args.out_field}")


def _load_field(path: Path, wavelength_nm: float) -> tuple[ComplexField, int]:
    record = fieldio.read_field_grid(path)
    values = record.values.astype(complex)
    return ComplexField(record.grid, values, wavelength_nm * NANOMETER), record.domain


def _cmd_far_field(args) -> None:
    field, domain = _load_field(args.field, args.wavelength_nm)
    if domain != fieldio.DOMAIN_SPATIAL:
        raise DomainError("far-field input must be a spatial-domain field")
    far = optics.far_field(field, args.pad)
    fieldio.write_field_grid(args.out, far.grid, far.amplitude, fieldio.DOMAIN_FREQUENCY)
    print(f"wrote {args.out}")


def _cmd_analyze(args) -> None:
    field, domain = _load_field(args.field, args.wavelength_nm)
    results = []
    for radius in args.winding_radius:
        results.append((f"winding@{radius!r}", analysis.winding_number(field, radius)))
    if args.oam is not None:
        spectrum = analysis.oam_spectrum(field, args.oam)
        for m in sorted(spectrum):
            results.append((f"oam_{m}", spectrum[m]))
    if args.lg_waist is not None:
        spectrum = analysis.lg_decompose(field, args.lg_waist, args.lg_p_max, args.lg_l_max)
        for (p, l), weight in sorted(spectrum.weights.items()):
            results.append((f"lg_{p}_{l}", weight))
        results.append(("lg_residual", spectrum.residual))
    if args.peak_ring:
        results.append(("peak_ring_radius", analysis.peak_ring_radius(field)))
    if args.order:
        if domain != fieldio.DOMAIN_FREQUENCY:
            raise DomainError("--order extraction requires a frequency-domain field")
        if args.grating_period_um is None:
            raise _UsageError("--order requires --grating-period-um")
        far = FarField(field.grid, field.amplitude, field.wavelength)
        for order in args.order:
            extract = analysis.extract_order(far, args.grating_period_um * MICROMETER, order)
            ring = analysis.peak_ring_radius(extract.field)
            results.append(
                (f"order_{order}_winding", analysis.winding_number(extract.field, ring))
            )
    if not results:
        raise _UsageError("nothing to analyze: request at least one diagnostic")
    _print_kv(results)


def _cmd_switching(args) -> None:
    atomic = _atomic_from(args)
    before = _load_coupling(args.before)
    after = _load_coupling(args.after)
    report = dynamics.switching_report(
        before, after, atomic, args.thickness_um * MICROMETER, args.scheme
    )
    items = [
        ("scheme", report.scheme),
        ("tau_r_s", report.tau_r),
        ("tau_a_s", report.tau_a),
        ("tau_r_nominal_s", report.tau_r_nominal),
        ("tau_a_nominal_s", report.tau_a_nominal),
        ("limiting_pixel_iy", report.limiting_pixel[0]),
        ("limiting_pixel_ix", report.limiting_pixel[1]),
        ("rate_bound_hz", report.rate_bound),
        ("feasible", str(report.feasible).lower()),
    ]
    _print_kv(items)
    if args.csv:
        fieldio.write_csv(
            args.csv,
            [key for key, _ in items],
            [[_cell_str(value) for _, value in items]],
        )


def _cell_str(value) -> str:
    return repr(float(value)) if isinstance(value, float) else str(value)


def _cmd_run(args) -> None:
    if (args.config is None) == (args.preset is None):
        raise _UsageError("give exactly one of a config path or --preset")
    if args.config is not None:
        cfg = config_mod.load_config(args.config)
    else:
        from importlib.resources import files

        name = args.preset.replace("-", "_") + ".cfg"
        text = files("eitslm.presets").joinpath(name).read_text(encoding="utf-8")
        cfg = config_mod.parse_config(text)
    result = pipeline.run_pipeline(cfg, args.output_dir)
    for path in result.files:
        print(f"wrote {path}")
    print(f"wrote {result.manifest}")


if __name__ == "__main__":
    sys.exit(main())
