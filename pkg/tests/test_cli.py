import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mimetic_em.cli import main
from mimetic_em.config import (
    ConfigError,
    OpsDump,
    RunConfig,
    parse_config,
    preset,
    render_config,
)
from mimetic_em.maxwell1d import Scenario1D, Slab, Source
from mimetic_em.maxwell2d import PmlSpec, Pulse, Scenario2D
from mimetic_em.snapshots import SnapshotRecord, read_snapshot, write_snapshot


class TestConfig:
    def test_preset_1d(self):
        cfg = preset("sullivan-1d")
        assert cfg.kind == "mimetic1d" and cfg.params == Scenario1D()
        assert cfg.params.source.frequency == 700e6 and cfg.params.slab.eps_r == 4.0

    def test_preset_2d(self):
        cfg = preset("sullivan-2d-upml")
        p = cfg.params
        assert (p.mx, p.my, p.dx, p.dt, p.steps) == (100, 100, 0.01, 0.005, 140)
        assert p.pml == PmlSpec(30, 100.0, 4.0)

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            preset("nope")

    def test_negative_m(self):
        with pytest.raises(ConfigError, match="m"):
            parse_config('{"kind": "mimetic1d", "m": -5}')

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="'stpes'"):
            parse_config('{"kind": "mimetic1d", "stpes": 5}')

    def test_unknown_nested_key(self):
        with pytest.raises(ConfigError, match="slab.'eps'"):
            parse_config('{"kind": "mimetic1d", "slab": {"eps": 4}}')

    def test_parse_error_position(self):
        with pytest.raises(ConfigError, match="line 2, column"):
            parse_config('{"kind": "mimetic1d",\n "m": }')

    def test_type_error(self):
        with pytest.raises(ConfigError, match="steps: expected an integer"):
            parse_config('{"kind": "mimetic2d", "steps": 1.5}')

    def test_null_slab_is_free_space(self):
        cfg = parse_config('{"kind": "yee1d", "slab": null, "steps": 10}')
        assert cfg.params.slab is None and cfg.params.steps == 10

    def test_ops_dump(self):
        cfg = parse_config('{"kind": "ops-dump", "m": 4, "dump": "lap"}')
        assert cfg.params == OpsDump(m=4, dump="lap")

    def test_margin_only_for_oracle(self):
        with pytest.raises(ConfigError, match="margin"):
            parse_config('{"kind": "mimetic2d", "margin": 5}')
        assert parse_config('{"kind": "pml-oracle", "margin": 5}').margin == 5

    def test_bad_order(self):
        with pytest.raises(ConfigError, match="not implemented"):
            parse_config('{"kind": "ops-dump", "k": 4}')

    @pytest.mark.parametrize("name", ["sullivan-1d", "sullivan-1d-yee", "sullivan-2d-upml", "sullivan-2d-pml-oracle"])
    def test_presets_round_trip(self, name):
        cfg = preset(name)
        assert parse_config(render_config(cfg)) == cfg


finite = dict(allow_nan=False, allow_infinity=False)

configs_1d = st.builds(
    lambda m, steps, every, idx, f, amp, slab, kind: RunConfig(
        kind, Scenario1D(m=m, steps=steps, snapshot_every=every,
                         source=Source(min(idx, m - 1), f, amp),
                         slab=None if slab is None else Slab(min(slab[0], m), slab[1], slab[2]))),
    st.integers(5, 300), st.integers(0, 1000), st.integers(1, 100), st.integers(2, 10),
    st.floats(1e6, 1e10, **finite), st.floats(-5, 5, **finite),
    st.one_of(st.none(), st.tuples(st.integers(2, 300), st.floats(1, 10, **finite), st.floats(0, 0.1, **finite))),
    st.sampled_from(["yee1d", "mimetic1d"]),
)
configs_2d = st.builds(
    lambda mx, my, h, frac, steps, d, smax, p, kind: RunConfig(
        kind, Scenario2D(mx=mx, my=my, dx=h, dy=h, dt=0.5 * h * frac, steps=steps,
                         pulse=Pulse(0.3, 0.7, 50.0),
                         pml=PmlSpec(min(d, (min(mx, my) - 1) // 2), smax, p)),
        margin=7 if kind == "pml-oracle" else None),
    st.integers(4, 50), st.integers(4, 50), st.floats(1e-3, 1, **finite),
    st.floats(0.1, 1, **finite), st.integers(0, 200), st.integers(1, 10),
    st.floats(0.1, 500, **finite), st.floats(1, 6, **finite),
    st.sampled_from(["mimetic2d", "pml-oracle"]),
)


@settings(max_examples=50)
@given(st.one_of(configs_1d, configs_2d))
def test_round_trip_property(cfg):
    assert parse_config(render_config(cfg)) == cfg


class TestSnapshots:
    def test_round_trip(self, tmp_path, rng):
        v = rng.standard_normal((3, 4))
        recs = [SnapshotRecord(7, "e", "2d-scalar", (3, 4), v),
                SnapshotRecord(7, "bx", "2d-edge-y", (2, 2), [0.1, -0.0, 1e-300, 5.0])]
        path = write_snapshot(tmp_path / "s.txt", recs)
        assert path.read_text().splitlines()[0] == "# e 2d-scalar 3 4 7"
        back = read_snapshot(path)
        assert [(r.field, r.layout, r.dims, r.step) for r in back] == [
            ("e", "2d-scalar", (3, 4), 7), ("bx", "2d-edge-y", (2, 2), 7)]
        np.testing.assert_array_equal(back[0].as_array(), v)

    def test_count_mismatch(self):
        with pytest.raises(ValueError):
            SnapshotRecord(0, "ex", "1d-scalar", (3,), [1.0, 2.0])


class TestCli:
    def test_run_1d(self, tmp_path, capsys):
        assert main(["run", "--preset", "sullivan-1d", "--out", str(tmp_path)]) == 0
        snaps = sorted(p.name for p in tmp_path.glob("snap_*.txt"))
        assert len(snaps) == 11 and snaps[-1] == "snap_000500.txt"
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["courant"] == pytest.approx(0.5)
        assert max(manifest["identity_residuals"].values()) <= 1e-12
        assert manifest["config"]["m"] == 200
        recs = read_snapshot(tmp_path / "snap_000500.txt")
        assert [(r.field, r.dims) for r in recs] == [("ex", (202,)), ("hy", (201,))]

    def test_run_2d(self, tmp_path):
        assert main(["run", "--preset", "sullivan-2d-upml", "--out", str(tmp_path)]) == 0
        steps = sorted(int(p.stem.split("_")[1]) for p in tmp_path.glob("snap_*.txt"))
        assert steps == [0, 70, 140]
        recs = read_snapshot(tmp_path / "snap_000070.txt")
        assert [(r.field, r.layout, r.dims) for r in recs] == [
            ("e", "2d-scalar", (102, 102)), ("bx", "2d-edge-y", (101, 100)),
            ("by", "2d-edge-x", (100, 101))]
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert "courant" in manifest and manifest["identity_residuals"]

    def test_snapshot_every(self, tmp_path):
        assert main(["run", "--preset", "sullivan-1d", "--out", str(tmp_path), "--snapshot-every", "100"]) == 0
        assert len(list(tmp_path.glob("snap_*.txt"))) == 6

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"kind": "yee1d", "steps": 20, "slab": None}))
        out = tmp_path / "o"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        assert sorted(p.name for p in out.glob("snap_*")) == ["snap_000000.txt", "snap_000020.txt"]

    def test_config_error_exit(self, tmp_path, capsys):
        cfg = tmp_path / "c.json"
        cfg.write_text('{"kind": "mimetic1d", "m": -1}')
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1
        assert "config error" in capsys.readouterr().err

    def test_ops_dump(self, capsys):
        assert main(["ops", "--k", "2", "--m", "4", "--dx", "1", "--dump", "grad"]) == 0
        lines = capsys.readouterr().out.splitlines()[:3]
        vals = [float(l.split()[2]) for l in lines]
        assert [l.split()[:2] for l in lines] == [["0", "0"], ["0", "1"], ["0", "2"]]
        np.testing.assert_allclose(vals, [-8 / 3, 3, -1 / 3], rtol=1e-16)

    def test_ops_2d(self, capsys):
        assert main(["ops", "--m", "4", "--n", "3", "--dump", "div"]) == 0
        rows = {int(l.split()[0]) for l in capsys.readouterr().out.splitlines()}
        assert max(rows) < 30

    def test_ops_order_error(self, capsys):
        assert main(["ops", "--k", "4", "--m", "4", "--dump", "grad"]) == 1

    def test_verify(self, capsys):
        assert main(["verify", "--k", "2", "--m", "200"]) == 0
        out = capsys.readouterr().out
        assert "grad_const" in out and "FAIL" not in out

    def test_verify_too_small(self):
        assert main(["verify", "--m", "2"]) == 1

    def test_ops_dump_kind(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text('{"kind": "ops-dump", "m": 4, "dump": "grad"}')
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
        assert (tmp_path / "o" / "grad.txt").read_text().startswith("0 0 -2.6666666666666665\n")
