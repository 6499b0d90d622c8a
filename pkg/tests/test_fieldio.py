import struct

import numpy as np
import pytest

from eitslm import GridSpec
from eitslm.errors import DomainError, FieldFormatError
from eitslm.fieldio import (
    DOMAIN_FREQUENCY,
    DOMAIN_SPATIAL,
    read_field_grid,
    write_csv,
    write_field_grid,
    write_key_values,
    write_pgm,
)


def test_real_round_trip(tmp_path):
    grid = GridSpec.square(8, 1.25e-5)
    values = np.arange(64, dtype=float).reshape(8, 8)
    path = write_field_grid(tmp_path / "a.eitf", grid, values, DOMAIN_SPATIAL)
    record = read_field_grid(path)
    assert record.grid == grid
    assert record.domain == DOMAIN_SPATIAL
    assert record.values.dtype == np.float64
    assert np.array_equal(record.values, values)


def test_complex_round_trip(tmp_path):
    grid = GridSpec(8, 10, 2.0, 3.0)
    rng = np.random.default_rng(0)
    values = rng.standard_normal((10, 8)) + 1j * rng.standard_normal((10, 8))
    path = write_field_grid(tmp_path / "c.eitf", grid, values, DOMAIN_FREQUENCY)
    record = read_field_grid(path)
    assert record.grid == grid
    assert record.domain == DOMAIN_FREQUENCY
    assert np.array_equal(record.values, values)


def test_header_layout_is_pinned(tmp_path):
    grid = GridSpec(8, 8, 1e-6, 2e-6)
    path = write_field_grid(tmp_path / "h.eitf", grid, np.zeros((8, 8)), DOMAIN_SPATIAL)
    blob = path.read_bytes()
    assert blob[:4] == b"EITF"
    version, domain, kind = struct.unpack_from("<HBB", blob, 4)
    assert (version, domain, kind) == (1, 0, 0)
    nx, ny = struct.unpack_from("<II", blob, 8)
    assert (nx, ny) == (8, 8)
    dx, dy = struct.unpack_from("<dd", blob, 16)
    assert (dx, dy) == (1e-6, 2e-6)
    assert len(blob) == 32 + 8 * 8 * 8


def test_payload_size_enforced(tmp_path):
    grid = GridSpec.square(8, 1.0)
    path = write_field_grid(tmp_path / "t.eitf", grid, np.zeros((8, 8)), DOMAIN_SPATIAL)
    blob = path.read_bytes()
    truncated = tmp_path / "trunc.eitf"
    truncated.write_bytes(blob[:-8])
    with pytest.raises(FieldFormatError):
        read_field_grid(truncated)
    padded = tmp_path / "padded.eitf"
    padded.write_bytes(blob + b"\x00" * 4)
    with pytest.raises(FieldFormatError):
        read_field_grid(padded)


def test_bad_magic_and_version(tmp_path):
    grid = GridSpec.square(8, 1.0)
    path = write_field_grid(tmp_path / "m.eitf", grid, np.zeros((8, 8)), DOMAIN_SPATIAL)
    blob = bytearray(path.read_bytes())
    bad = tmp_path / "bad.eitf"
    bad.write_bytes(b"NOPE" + blob[4:])
    with pytest.raises(FieldFormatError):
        read_field_grid(bad)
    blob[4] = 99
    bad.write_bytes(bytes(blob))
    with pytest.raises(FieldFormatError):
        read_field_grid(bad)


def test_write_validation(tmp_path):
    grid = GridSpec.square(8, 1.0)
    with pytest.raises(DomainError):
        write_field_grid(tmp_path / "x.eitf", grid, np.zeros((4, 4)), DOMAIN_SPATIAL)
    with pytest.raises(DomainError):
        write_field_grid(tmp_path / "x.eitf", grid, np.zeros((8, 8)), 7)
    offset = GridSpec(8, 8, 1.0, 1.0, center=(1.0, 0.0))
    with pytest.raises(DomainError):
        write_field_grid(tmp_path / "x.eitf", offset, np.zeros((8, 8)), DOMAIN_SPATIAL)


def test_byte_stable_rewrites(tmp_path):
    grid = GridSpec.square(8, 1.0 / 3.0)
    values = np.linspace(0.0, 1.0, 64).reshape(8, 8) / 7.0
    first = write_field_grid(tmp_path / "s1.eitf", grid, values, DOMAIN_SPATIAL).read_bytes()
    second = write_field_grid(tmp_path / "s2.eitf", grid, values, DOMAIN_SPATIAL).read_bytes()
    assert first == second

    rows = [[1.0 / 3.0, 7], [2.0 / 3.0, -1]]
    c1 = write_csv(tmp_path / "c1.csv", ["value", "index"], rows).read_bytes()
    c2 = write_csv(tmp_path / "c2.csv", ["value", "index"], rows).read_bytes()
    assert c1 == c2
    assert c1.startswith(b"value,index\n0.3333333333333333,7\n")

    k1 = write_key_values(tmp_path / "k1.txt", [("pi", 3.14), ("ok", True)]).read_bytes()
    assert k1 == b"pi 3.14\nok true\n"


def test_pgm_export(tmp_path):
    values = np.zeros((8, 16))
    values[4, 10] = 2.0
    path = write_pgm(tmp_path / "img.pgm", values)
    blob = path.read_bytes()
    assert blob.startswith(b"P5\n16 8\n255\n")
    pixels = np.frombuffer(blob[len(b"P5\n16 8\n255\n") :], dtype=np.uint8).reshape(8, 16)
    assert pixels[4, 10] == 255
    assert pixels.sum() == 255

    flat = write_pgm(tmp_path / "zero.pgm", np.zeros((8, 8)))
    assert flat.read_bytes().endswith(b"\x00" * 64)
