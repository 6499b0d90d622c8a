import numpy as np
import pytest

from eitslm.config import parse_config
from eitslm.errors import ConfigError
from eitslm.fieldio import read_field_grid
from eitslm.pipeline import run_pipeline

PHASE_CFG = """
[atomic]
preset = rb87-d2

[grid]
nx = 128
ny = 128
pitch_um = 62.5

[pattern]
kind = ramp
a = 500
b = 1
c = 1

[probe]
waist_mm = 1.0

[cell]
thickness_um = solve
delta_l = 1

[analysis]
requests = transmission, winding, oam
n_harmonics = 4
winding_radii_mm = 1.0

[output]
directory = {out}
images = true
"""

AMPLITUDE_CFG = """
[atomic]
preset = rb87-d2
rho = 1e17
delta = 0

[grid]
nx = 128
ny = 128
pitch_um = 15.625

[pattern]
kind = fork
l = 1
period_px = 8
bright_mw_cm2 = 838

[probe]
waist_mm = 0.25

[cell]
thickness_um = 500
mode = resonant_two_level

[analysis]
requests = far_field, orders
orders = 1, -1

[output]
directory = {out}
"""

MINIMAL_CFG = """
[grid]
nx = 64
ny = 64
pitch_um = 100

[pattern]
kind = uniform
intensity_mw_cm2 = 838

[probe]
waist_mm = 0.8

[cell]
thickness_um = 500

[output]
directory = {out}
"""


class TestConfigValidation:
    def test_minimal_parses_with_defaults(self, tmp_path):
        cfg = parse_config(MINIMAL_CFG.format(out=tmp_path))
        assert cfg.atomic.rho == 5e18
        assert cfg.pattern.intensity == 8380.0
        assert cfg.cell_mode == "eit"
        assert cfg.analysis.requests == ()

    def test_unknown_section(self, tmp_path):
        bad = MINIMAL_CFG.format(out=tmp_path) + "\n[velocity]\nv = 1\n"
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config(bad)

    def test_unknown_key(self, tmp_path):
        bad = MINIMAL_CFG.format(out=tmp_path).replace(
            "[probe]", "[probe]\ncolor = blue"
        )
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(bad)

    def test_missing_section(self, tmp_path):
        bad = MINIMAL_CFG.format(out=tmp_path).replace("[probe]\nwaist_mm = 0.8\n", "")
        with pytest.raises(ConfigError, match="missing required section"):
            parse_config(bad)

    def test_solve_requires_ramp(self, tmp_path):
        bad = MINIMAL_CFG.format(out=tmp_path).replace(
            "thickness_um = 500", "thickness_um = solve"
        )
        with pytest.raises(ConfigError, match="solve"):
            parse_config(bad)

    def test_fork_period_exclusivity(self, tmp_path):
        cfg = AMPLITUDE_CFG.format(out=tmp_path)
        with pytest.raises(ConfigError, match="period"):
            parse_config(cfg.replace("period_px = 8", "period_px = 8\nperiod_um = 125"))
        with pytest.raises(ConfigError, match="period"):
            parse_config(cfg.replace("period_px = 8\n", ""))

    def test_orders_require_fork(self, tmp_path):
        bad = PHASE_CFG.format(out=tmp_path).replace(
            "requests = transmission, winding, oam", "requests = far_field, orders"
        )
        with pytest.raises(ConfigError, match="fork"):
            parse_config(bad)

    def test_unknown_request(self, tmp_path):
        bad = PHASE_CFG.format(out=tmp_path).replace(
            "requests = transmission, winding, oam", "requests = telepathy"
        )
        with pytest.raises(ConfigError, match="unknown request"):
            parse_config(bad)

    def test_bad_number(self, tmp_path):
        bad = MINIMAL_CFG.format(out=tmp_path).replace("waist_mm = 0.8", "waist_mm = soon")
        with pytest.raises(ConfigError):
            parse_config(bad)


class TestPhasePipeline:
    def test_artifacts_and_content(self, tmp_path):
        cfg = parse_config(PHASE_CFG.format(out=tmp_path / "run"))
        result = run_pipeline(cfg)
        names = {path.name for path in result.files}
        assert {
            "pattern.eitf",
            "pattern.pgm",
            "thickness.txt",
            "transfer_phase.eitf",
            "transfer_attenuation.eitf",
            "probe_out.eitf",
            "transmission.txt",
            "winding.csv",
            "oam.csv",
        } <= names

        thickness = dict(
            line.split() for line in (result.output_dir / "thickness.txt").read_text().splitlines()
        )
        assert abs(float(thickness["thickness_um"]) - 862.0) < 0.03 * 862.0

        winding_rows = (result.output_dir / "winding.csv").read_text().splitlines()
        assert winding_rows[1].endswith(",1")

        oam = {
            int(line.split(",")[0]): float(line.split(",")[1])
            for line in (result.output_dir / "oam.csv").read_text().splitlines()[1:]
        }
        assert oam[1] > 0.95

        stats = dict(
            line.split() for line in (result.output_dir / "transmission.txt").read_text().splitlines()
        )
        assert float(stats["t_min"]) > 0.9

    def test_byte_identical_reruns(self, tmp_path):
        first = run_pipeline(parse_config(PHASE_CFG.format(out=tmp_path / "one")))
        second = run_pipeline(parse_config(PHASE_CFG.format(out=tmp_path / "two")))
        manifest_one = first.manifest.read_text()
        manifest_two = second.manifest.read_text()
        assert manifest_one == manifest_two
        for path in first.files:
            twin = second.output_dir / path.name
            assert path.read_bytes() == twin.read_bytes()

    def test_empty_analysis_still_valid(self, tmp_path):
        cfg = parse_config(MINIMAL_CFG.format(out=tmp_path / "plain"))
        result = run_pipeline(cfg)
        names = {path.name for path in result.files}
        assert names == {
            "pattern.eitf",
            "transfer_phase.eitf",
            "transfer_attenuation.eitf",
            "probe_out.eitf",
        }
        assert result.manifest.exists()


class TestAmplitudePipeline:
    def test_first_orders(self, tmp_path):
        cfg = parse_config(AMPLITUDE_CFG.format(out=tmp_path / "amp"))
        result = run_pipeline(cfg)
        rows = (result.output_dir / "orders.csv").read_text().splitlines()[1:]
        windings = {int(r.split(",")[0]): int(r.split(",")[-1]) for r in rows}
        assert windings == {1: 1, -1: -1}
        far = read_field_grid(result.output_dir / "far_field.eitf")
        assert far.domain == 1
        assert np.iscomplexobj(far.values)

    def test_output_dir_override(self, tmp_path):
        cfg = parse_config(MINIMAL_CFG.format(out=tmp_path / "ignored"))
        result = run_pipeline(cfg, output_dir=tmp_path / "actual")
        assert result.output_dir == tmp_path / "actual"
        assert (tmp_path / "actual" / "manifest.txt").exists()
        assert not (tmp_path / "ignored").exists()
