"""Portable field-grid files, CSV curves, and PGM image export.

Field-grid binary layout (little-endian throughout):

    magic   4 bytes  b"EITF"
    version u16      1
    domain  u8       0 = spatial axes (m), 1 = frequency axes (1/m)
    kind    u8       0 = real payload, 1 = complex payload
    nx, ny  u32
    dx, dy  f64      pitch in m or 1/m
    payload nx*ny*(1 or 2)*8 bytes of f64, row-major: ny rows of nx values,
            x fastest; complex values are (re, im) pairs

Only centered grids serialize; the format stores no center offset.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, FieldFormatError
from .grid import GridSpec

MAGIC = b"EITF"
FORMAT_VERSION = 1
DOMAIN_SPATIAL = 0
DOMAIN_FREQUENCY = 1
KIND_REAL = 0
KIND_COMPLEX = 1

_HEADER = struct.Struct("<4sHBBIIdd")


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """In-memory form of a field-grid file."""

    grid: GridSpec
    values: np.ndarray  # float64 or complex128, shape (ny, nx)
    domain: int


def write_field_grid(path, grid: GridSpec, values, domain: int) -> Path:
    """Serialize a real or complex grid; byte-identical for identical inputs."""
    path = Path(path)
    if grid.center != (0.0, 0.0):
        raise DomainError("only centered grids serialize to field-grid files")
    if domain not in (DOMAIN_SPATIAL, DOMAIN_FREQUENCY):
        raise DomainError("domain must be 0 (spatial) or 1 (frequency)")
    arr = np.asarray(values)
    if arr.shape != (grid.ny, grid.nx):
        raise DomainError(f"value shape {arr.shape} does not match grid")
    if np.iscomplexobj(arr):
        kind = KIND_COMPLEX
        payload = np.ascontiguousarray(arr, dtype="<c16")
    else:
        kind = KIND_REAL
        payload = np.ascontiguousarray(arr, dtype="<f8")
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, domain, kind, grid.nx, grid.ny, grid.dx, grid.dy)
    path.write_bytes(header + payload.tobytes())
    return path


def read_field_grid(path) -> FieldGrid:
    """Parse a field-grid file, validating the header and exact payload size."""
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise FieldFormatError("file too short for a field-grid header")
    magic, version, domain, kind, nx, ny, dx, dy = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise FieldFormatError("bad magic bytes; not a field-grid file")
    if version != FORMAT_VERSION:
        raise FieldFormatError(f"unsupported format version {version}")
    if domain not in (DOMAIN_SPATIAL, DOMAIN_FREQUENCY):
        raise FieldFormatError(f"unknown domain flag {domain}")
    if kind not in (KIND_REAL, KIND_COMPLEX):
        raise FieldFormatError(f"unknown value kind {kind}")
    per_value = 16 if kind == KIND_COMPLEX else 8
    expected = _HEADER.size + nx * ny * per_value
    if len(blob) != expected:
        raise FieldFormatError(
            f"payload size mismatch: file has {len(blob)} bytes, expected {expected}"
        )
    dtype = "<c16" if kind == KIND_COMPLEX else "<f8"
    values = np.frombuffer(blob, dtype=dtype, offset=_HEADER.size).reshape(ny, nx).copy()
    return FieldGrid(GridSpec(int(nx), int(ny), dx, dy), values, int(domain))


def write_csv(path, header: list[str], rows) -> Path:
    """Plain CSV with repr-formatted floats for byte-stable reruns."""
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def write_key_values(path, items) -> Path:
    """Structured text: one ``key value`` pair per line."""
    path = Path(path)
    lines = [f"{key} {_format_cell(value)}" for key, value in items]
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_pgm(path, values) -> Path:
    """8-bit grayscale (binary PGM) render of a nonnegative real array."""
    path = Path(path)
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2:
        raise DomainError("image export needs a 2-D array")
    top = arr.max()
    scaled = np.zeros(arr.shape, dtype=np.uint8)
    if top > 0.0:
        scaled = np.clip(np.rint(arr / top * 255.0), 0, 255).astype(np.uint8)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode("ascii")
    path.write_bytes(header + scaled.tobytes())
    return path


def sha256_of(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
