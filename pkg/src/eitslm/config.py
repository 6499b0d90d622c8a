"""Plain-text pipeline configuration: ``key = value`` sections, strict schema.

Unknown sections or keys are rejected before any computation runs.  Units
are carried in key names at this boundary (mW/cm^2 for intensities, um/mm
for lengths); everything is converted to SI during parsing.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .grid import GridSpec
from .medium import AtomicParams, rb87_d2
from .patterns import RampParams
from .units import MILLIMETER, MICROMETER, MW_PER_CM2, NANOMETER

ANALYSES = ("transmission", "winding", "oam", "lg", "far_field", "orders")
PATTERN_KINDS = ("uniform", "ramp", "fork")
PROBE_MODES = ("gaussian", "lg")
CELL_MODES = ("eit", "resonant_two_level")

_REQUIRED = object()


@dataclass(frozen=True)
class PatternSpec:
    """Pattern request; fields beyond ``kind`` apply per kind."""

    kind: str
    intensity: float = 0.0  # W/m^2 (uniform)
    ramp: RampParams | None = None  # (ramp)
    l: int = 1  # (fork)
    period: float = 0.0  # m (fork)
    bright_intensity: float = 0.0  # W/m^2 (fork)


@dataclass(frozen=True)
class ProbeSpec:
    waist: float  # m
    mode: str = "gaussian"
    p: int = 0
    l: int = 0


@dataclass(frozen=True)
class AnalysisSpec:
    requests: tuple[str, ...] = ()
    n_harmonics: int = 8
    winding_radii: tuple[float, ...] = ()  # m; empty means probe waist
    lg_waist: float | None = None  # m; None means probe waist
    lg_p_max: int = 2
    lg_l_max: int = 2
    orders: tuple[int, ...] = (1, -1)
    pad_factor: int = 2


@dataclass(frozen=True)
class PipelineConfig:
    atomic: AtomicParams
    grid: GridSpec
    pattern: PatternSpec
    probe: ProbeSpec
    thickness: float | str  # m, or "solve"
    cell_mode: str
    solve_delta_l: int
    transmission_floor: float
    analysis: AnalysisSpec
    output_dir: Path
    write_images: bool


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _parse_floats(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


def _parse_ints(raw: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in raw.split(",") if tok.strip())


def _parse_names(raw: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in raw.split(",") if tok.strip())


_SCHEMA: dict[str, dict[str, object]] = {
    "atomic": {
        "preset": str,
        "rho": float,
        "delta": float,
        "gamma21": float,
        "gamma31": float,
        "mu13": float,
        "mu23": float,
        "wavelength_nm": float,
    },
    "grid": {"nx": int, "ny": int, "pitch_um": float},
    "pattern": {
        "kind": str,
        "intensity_mw_cm2": float,
        "a": float,
        "b": float,
        "c": float,
        "sectors": int,
        "l": int,
        "period_um": float,
        "period_px": float,
        "bright_mw_cm2": float,
    },
    "probe": {"waist_mm": float, "mode": str, "p": int, "l": int},
    "cell": {
        "thickness_um": str,
        "mode": str,
        "delta_l": int,
        "transmission_floor": float,
    },
    "analysis": {
        "requests": _parse_names,
        "n_harmonics": int,
        "winding_radii_mm": _parse_floats,
        "lg_waist_mm": float,
        "lg_p_max": int,
        "lg_l_max": int,
        "orders": _parse_ints,
        "pad_factor": int,
    },
    "output": {"directory": str, "images": _parse_bool},
}


class _Section:
    """Typed access to one config section with schema enforcement."""

    def __init__(self, name: str, raw: dict[str, str]):
        self.name = name
        self.raw = raw

    def get(self, key: str, default=_REQUIRED):
        if key not in self.raw:
            if default is _REQUIRED:
                raise ConfigError(f"[{self.name}] is missing required key '{key}'")
            return default
        parser = _SCHEMA[self.name][key]
        try:
            return parser(self.raw[key])
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"[{self.name}] {key}: {exc}") from exc

    def has(self, key: str) -> bool:
        return key in self.raw


def parse_config(text: str) -> PipelineConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc

    sections: dict[str, _Section] = {}
    for name in parser.sections():
        if name not in _SCHEMA:
            raise ConfigError(f"unknown section [{name}]")
        for key in parser[name]:
            if key not in _SCHEMA[name]:
                raise ConfigError(f"unknown key '{key}' in section [{name}]")
        sections[name] = _Section(name, dict(parser[name]))
    for required in ("grid", "pattern", "probe", "cell", "output"):
        if required not in sections:
            raise ConfigError(f"missing required section [{required}]")

    atomic = _build_atomic(sections.get("atomic", _Section("atomic", {})))
    grid = _build_grid(sections["grid"])
    pattern = _build_pattern(sections["pattern"], grid)
    probe = _build_probe(sections["probe"])
    thickness, cell_mode, delta_l, floor = _build_cell(sections["cell"], pattern)
    analysis = _build_analysis(
        sections.get("analysis", _Section("analysis", {})), pattern
    )
    out = sections["output"]
    return PipelineConfig(
        atomic=atomic,
        grid=grid,
        pattern=pattern,
        probe=probe,
        thickness=thickness,
        cell_mode=cell_mode,
        solve_delta_l=delta_l,
        transmission_floor=floor,
        analysis=analysis,
        output_dir=Path(out.get("directory")),
        write_images=out.get("images", False),
    )


def load_config(path) -> PipelineConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _build_atomic(section: _Section) -> AtomicParams:
    preset = section.get("preset", "rb87-d2")
    if preset != "rb87-d2":
        raise ConfigError(f"unknown atomic preset {preset!r}")
    overrides = {}
    for key in ("rho", "delta", "gamma21", "gamma31", "mu13", "mu23"):
        if section.has(key):
            overrides[key] = section.get(key)
    if section.has("wavelength_nm"):
        overrides["wavelength"] = section.get("wavelength_nm") * NANOMETER
    try:
        return rb87_d2(**overrides)
    except Exception as exc:
        raise ConfigError(f"[atomic] invalid parameters: {exc}") from exc


def _build_grid(section: _Section) -> GridSpec:
    pitch = section.get("pitch_um") * MICROMETER
    try:
        return GridSpec(section.get("nx"), section.get("ny"), pitch, pitch)
    except Exception as exc:
        raise ConfigError(f"[grid] invalid: {exc}") from exc


def _build_pattern(section: _Section, grid: GridSpec) -> PatternSpec:
    kind = section.get("kind")
    if kind not in PATTERN_KINDS:
        raise ConfigError(f"[pattern] kind must be one of {PATTERN_KINDS}")
    if kind == "uniform":
        return PatternSpec(kind, intensity=section.get("intensity_mw_cm2") * MW_PER_CM2)
    if kind == "ramp":
        try:
            ramp = RampParams(
                section.get("a"),
                section.get("b"),
                section.get("c"),
                section.get("sectors", 1),
            )
        except Exception as exc:
            raise ConfigError(f"[pattern] invalid ramp: {exc}") from exc
        return PatternSpec(kind, ramp=ramp)
    if section.has("period_um") == section.has("period_px"):
        raise ConfigError("[pattern] fork needs exactly one of period_um, period_px")
    if section.has("period_um"):
        period = section.get("period_um") * MICROMETER
    else:
        period = section.get("period_px") * grid.dx
    return PatternSpec(
        kind,
        l=section.get("l", 1),
        period=period,
        bright_intensity=section.get("bright_mw_cm2") * MW_PER_CM2,
    )


def _build_probe(section: _Section) -> ProbeSpec:
    mode = section.get("mode", "gaussian")
    if mode not in PROBE_MODES:
        raise ConfigError(f"[probe] mode must be one of {PROBE_MODES}")
    return ProbeSpec(
        waist=section.get("waist_mm") * MILLIMETER,
        mode=mode,
        p=section.get("p", 0),
        l=section.get("l", 0),
    )


def _build_cell(section: _Section, pattern: PatternSpec):
    raw = section.get("thickness_um").strip()
    if raw == "solve":
        if pattern.kind != "ramp":
            raise ConfigError("[cell] thickness_um = solve requires a ramp pattern")
        thickness: float | str = "solve"
    else:
        try:
            thickness = float(raw) * MICROMETER
        except ValueError as exc:
            raise ConfigError(f"[cell] thickness_um must be a number or 'solve'") from exc
        if thickness <= 0.0:
            raise ConfigError("[cell] thickness_um must be positive")
    mode = section.get("mode", "eit")
    if mode not in CELL_MODES:
        raise ConfigError(f"[cell] mode must be one of {CELL_MODES}")
    return (
        thickness,
        mode,
        section.get("delta_l", 1),
        section.get("transmission_floor", 0.9),
    )


def _build_analysis(section: _Section, pattern: PatternSpec) -> AnalysisSpec:
    requests = section.get("requests", ())
    for name in requests:
        if name not in ANALYSES:
            raise ConfigError(f"[analysis] unknown request {name!r}")
    if "orders" in requests and pattern.kind != "fork":
        raise ConfigError("[analysis] 'orders' extraction requires a fork pattern")
    lg_waist = section.get("lg_waist_mm", None)
    return AnalysisSpec(
        requests=tuple(requests),
        n_harmonics=section.get("n_harmonics", 8),
        winding_radii=tuple(r * MILLIMETER for r in section.get("winding_radii_mm", ())),
        lg_waist=None if lg_waist is None else lg_waist * MILLIMETER,
        lg_p_max=section.get("lg_p_max", 2),
        lg_l_max=section.get("lg_l_max", 2),
        orders=section.get("orders", (1, -1)),
        pad_factor=section.get("pad_factor", 2),
    )
