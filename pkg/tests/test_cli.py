import json
import math
import subprocess
import sys

import pytest

from curved_lattice.cli import run
from curved_lattice.config import (
    DEFAULT_N,
    RECIPES,
    build_system,
    config_to_dict,
    parse_config,
    recipe,
)
from curved_lattice.errors import ConfigError
from curved_lattice.output import (
    HEADER,
    fmt_float,
    read_sweep_csv,
    read_sweep_json,
    sweep_to_csv,
    sweep_to_json,
)
from curved_lattice.sweep import (
    WORKERS_ENV,
    SweepResult,
    SweepRow,
    default_workers,
    run_sweep,
    sweep_values,
)


def _cfg(**over):
    base = {
        "geometry": {"kind": "plane"},
        "emitters": {"layout": "ring", "n": 4, "spacing": 0.3},
        "optics": {"n0": 1.0, "k_perp_frac": 0.2},
    }
    for key, val in over.items():
        base[key] = val
    return base


def _write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


class TestConfig:
    def test_round_trip(self):
        for name in RECIPES:
            cfg = parse_config(recipe(name))
            assert parse_config(config_to_dict(cfg)) == cfg

    def test_recipe_contents(self):
        assert parse_config(recipe("fig3")).emitters.spacing == 0.6
        assert parse_config(recipe("fig4c")).optics.k_perp_frac == 0.9
        for name in RECIPES:
            cfg = parse_config(recipe(name))
            assert cfg.emitters.n == DEFAULT_N
            assert any("N=8" in note for note in cfg.notes) or cfg.green is not None

    def test_unknown_recipe(self):
        with pytest.raises(ConfigError):
            recipe("fig9")

    def test_recipe_copies_are_independent(self):
        r = recipe("fig2a")
        r["emitters"]["n"] = 99
        assert RECIPES["fig2a"]["emitters"]["n"] == DEFAULT_N

    @pytest.mark.parametrize(
        "patch",
        [
            {"geometry": {"kind": "sphere"}},
            {"geometry": {"kind": "plane", "radius": 2.0}},
            {"geometry": {"kind": "torus"}},
            {"emitters": {"layout": "ring", "n": 4, "spacing": 0.0}},
            {"emitters": {"layout": "ring", "n": 1, "spacing": 0.2}},
            {"optics": {"k_perp_frac": 1.0}},
            {"optics": {"n0": 0.5}},
            {"sweep": {"param": "spacing", "from": 0.5, "to": 0.1, "steps": 5}},
            {"sweep": {"param": "spacing", "from": 0.1, "to": 0.5, "steps": 1}},
            {"sweep": {"param": "radius", "from": 1.0, "to": 2.0, "steps": 3}},
            {"sweep": {"param": "spacing", "from": 0.0, "to": 1.0, "steps": 3, "scale": "log"}},
            {"sweep": {"param": "wavelength", "from": 0.1, "to": 1.0, "steps": 3}},
            {"output": {"precision": 0}},
            {"output": {"format": "xml"}},
        ],
    )
    def test_invariants(self, patch):
        with pytest.raises(ConfigError):
            parse_config(_cfg(**patch))

    def test_explicit_layout(self):
        cfg = parse_config(_cfg(emitters={"layout": "explicit", "positions": [[0, 0], [0.3, 0]]}))
        arr, _ = build_system(cfg)
        assert arr.n == 2
        with pytest.raises(ConfigError):
            parse_config(_cfg(emitters={"layout": "explicit", "positions": [[0, 0, 0], [1, 0, 0]]}))

    def test_build_system_substitutes(self):
        cfg = parse_config(_cfg(geometry={"kind": "sphere", "radius": 3.0}))
        arr, optics = build_system(cfg, radius=5.0, k_perp_frac=0.5)
        assert arr.surface.radius == 5.0
        assert optics.k_perp == pytest.approx(0.5 * 2 * math.pi)
        with pytest.raises(ConfigError):
            build_system(cfg, n0=2.0)


class TestSweep:
    def test_values(self):
        cfg = parse_config(_cfg(sweep={"param": "spacing", "from": 0.1, "to": 1.0,
                                       "steps": 4, "scale": "log"}))
        v = sweep_values(cfg.sweep)
        assert v[0] == pytest.approx(0.1) and v[-1] == pytest.approx(1.0)
        assert v[1] / v[0] == pytest.approx(v[2] / v[1])

    def test_rows_have_n_modes_and_permuted_tracks(self):
        cfg = parse_config(_cfg(sweep={"param": "spacing", "from": 0.1, "to": 0.9, "steps": 12}))
        res = run_sweep(cfg, workers=1)
        assert len(res.rows) == 12
        for row in res.rows:
            assert len(row.modes) == 4
            assert sorted(row.track_ids) == [0, 1, 2, 3]
            assert list(row.gammas) == sorted(row.gammas, reverse=True)

    def test_failed_points_do_not_abort(self):
        cfg = parse_config(_cfg(geometry={"kind": "sphere", "radius": 1.0},
                                sweep={"param": "radius", "from": 0.05, "to": 1.0, "steps": 5}))
        res = run_sweep(cfg, workers=1)
        assert res.failed >= 1
        assert res.rows[-1].error is None
        assert "GeometryError" in res.rows[0].error

    def test_parallel_matches_serial(self):
        cfg = parse_config(recipe("fig3"))
        assert run_sweep(cfg, workers=1) == run_sweep(cfg, workers=3)

    def test_outer_sweep(self):
        cfg = parse_config(_cfg(sweep={"param": "spacing", "from": 0.2, "to": 0.8, "steps": 3,
                                       "outer": {"param": "k_perp_frac", "from": 0.0,
                                                 "to": 0.5, "steps": 2}}))
        res = run_sweep(cfg, workers=1)
        assert res.outer_param == "k_perp_frac"
        assert [r.outer for r in res.rows] == [0.0, 0.0, 0.0, 0.5, 0.5, 0.5]
        assert res.rows[3].track_ids == [0, 1, 2, 3]

    def test_default_workers(self, monkeypatch):
        monkeypatch.setenv(WORKERS_ENV, "3")
        assert default_workers() == 3
        monkeypatch.setenv(WORKERS_ENV, "junk")
        assert default_workers() == 1
        monkeypatch.delenv(WORKERS_ENV)
        assert default_workers() == 1

    def test_track_accessor(self):
        res = SweepResult("spacing", (SweepRow(0.1, ((0.0, 1.5, 1), (0.2, 0.5, 0))),
                                      SweepRow(0.2, (), "boom"),
                                      SweepRow(0.3, ((0.1, 1.2, 0), (0.3, 0.8, 1)))))
        xs, ys = res.track(1)
        assert list(xs) == [0.1, 0.3] and list(ys) == [1.5, 0.8]


class TestOutput:
    def test_float_format(self):
        assert fmt_float(-0.0) == "0"
        assert fmt_float(1 / 3) == "0.333333333333"
        assert fmt_float(1 / 3, 4) == "0.3333"
        assert fmt_float(float("nan")) == "nan"

    def _result(self):
        cfg = parse_config(_cfg(geometry={"kind": "sphere", "radius": 1.0},
                                sweep={"param": "radius", "from": 0.05, "to": 2.0, "steps": 4}))
        return run_sweep(cfg, workers=1)

    @pytest.mark.parametrize("prec", [6, 12, 17])
    def test_csv_round_trip(self, prec):
        res = self._result()
        text = sweep_to_csv(res, ["a note, with comma"], prec)
        back, notes = read_sweep_csv(text)
        assert notes == ["a note, with comma"]
        assert sweep_to_csv(back, notes, prec) == text
        for a, b in zip(res.rows, back.rows):
            assert (a.error is None) == (b.error is None)
            for (s1, g1, t1), (s2, g2, t2) in zip(a.modes, b.modes):
                assert t1 == t2
                assert s2 == float(fmt_float(s1, prec)) and g2 == float(fmt_float(g1, prec))

    def test_json_round_trip(self):
        res = self._result()
        text = sweep_to_json(res, ["n"], 12)
        back, notes = read_sweep_json(text)
        assert sweep_to_json(back, notes, 12) == text
        assert back.rows[0].error == res.rows[0].error

    def test_csv_layout(self):
        lines = sweep_to_csv(self._result(), ["x"]).splitlines()
        assert lines[0] == HEADER == "# curved-lattice v0.1.0"
        assert "param,mode,track_id,shift,gamma" in lines
        assert any(",error,,nan,nan" in ln for ln in lines)

    def test_bad_csv(self):
        with pytest.raises(ValueError):
            read_sweep_csv("a,b,c\n1,2,3\n")


class TestCommandLine:
    def test_recipes_list_and_show(self, capsys):
        assert run(["recipes"]) == 0
        assert capsys.readouterr().out.split() == sorted(RECIPES)
        assert run(["recipes", "fig3"]) == 0
        shown = json.loads(capsys.readouterr().out)
        assert shown["emitters"]["spacing"] == 0.6
        assert "N=8" in shown["_notes"][0]

    def test_unknown_recipe_is_usage_error(self, capsys):
        assert run(["recipes", "fig9"]) == 2
        assert "fig9" in capsys.readouterr().err

    def test_green_plane_row(self, capsys):
        assert run(["green", "--geometry", "plane",
                    "--separations", repr(1 / (2 * math.pi))]) == 0
        row = capsys.readouterr().out.splitlines()[-1].split(",")
        assert float(row[1]) == pytest.approx(-0.0220642, abs=1e-7)
        assert float(row[2]) == pytest.approx(0.1912994, abs=1e-7)

    def test_green_sphere_antipode(self, capsys):
        assert run(["green", "--geometry", "sphere", "--radius", "1", "--family", "closed",
                    "--separations", repr(math.pi)]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[-2] == "separation,re_closed,im_closed"
        assert out[-1].split(",")[1:] == ["0.159154943092", "0"]

    def test_green_sphere_exclusion_exit(self, capsys):
        code = run(["green", "--geometry", "sphere", "--radius", "1", "--degrees",
                    "--separations", "30,170"])
        assert code == 3
        assert "row 1" in capsys.readouterr().err

    def test_spectrum_dicke(self, capsys):
        assert run(["spectrum", "--geometry", "free3d", "--n", "2",
                    "--spacing", repr(1e-4 * math.pi / 2)]) == 0
        res, _ = read_sweep_csv(capsys.readouterr().out)
        assert list(res.rows[0].gammas) == pytest.approx([2.0, 0.0], abs=1e-3)

    def test_spectrum_recipe_peak(self, capsys):
        assert run(["spectrum", "--recipe", "fig2b"]) == 0
        res, notes = read_sweep_csv(capsys.readouterr().out)
        assert res.rows[0].gammas.max() == pytest.approx(6.0, rel=0.1)
        assert any("N=8" in n for n in notes)

    def test_config_errors(self, tmp_path, capsys):
        assert run(["spectrum", "--config", str(tmp_path / "missing.json")]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["spectrum", "--config", str(bad)]) == 2
        assert run(["spectrum", "--geometry", "sphere", "--spacing", "0.2"]) == 2
        assert run(["sweep", "--geometry", "plane", "--spacing", "0.2"]) == 2
        assert run(["spectrum", "--bogus"]) == 2
        capsys.readouterr()

    def test_numeric_error_exit(self, capsys):
        code = run(["spectrum", "--geometry", "sphere", "--radius", "0.2", "--spacing", "0.05",
                    "--k-perp-frac", "0.99"])
        assert code == 3
        assert "EvanescentError" in capsys.readouterr().err

    def test_flags_override_config(self, tmp_path, capsys):
        path = _write(tmp_path, _cfg())
        assert run(["spectrum", "--config", path, "--n", "6", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["rows"]) == 6

    def test_partial_sweep_exit(self, tmp_path, capsys):
        data = _cfg(geometry={"kind": "sphere", "radius": 1.0},
                    sweep={"param": "radius", "from": 0.05, "to": 1.0, "steps": 4})
        out = tmp_path / "out.csv"
        assert run(["sweep", "--config", _write(tmp_path, data), "--out", str(out)]) == 4
        assert "GeometryError" in capsys.readouterr().err
        res, _ = read_sweep_csv(out.read_text())
        assert res.failed >= 1 and res.rows[-1].error is None

    def test_spacing_sweep_shape(self, tmp_path):
        out = tmp_path / "fig2b.csv"
        assert run(["sweep", "--recipe", "fig2b", "--out", str(out), "--workers", "2"]) == 0
        res, _ = read_sweep_csv(out.read_text())
        assert len(res.rows) == 90
        assert all(len(r.modes) == 8 for r in res.rows)

    def test_byte_identical_reruns(self, tmp_path):
        for fmt in ("csv", "json"):
            a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
            assert run(["sweep", "--recipe", "fig4c", "--format", fmt, "--out", str(a)]) == 0
            assert run(["sweep", "--recipe", "fig4c", "--format", fmt, "--out", str(b),
                        "--workers", "2"]) == 0
            assert a.read_bytes() == b.read_bytes()

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "curved_lattice", "recipes"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert "fig4c" in proc.stdout
