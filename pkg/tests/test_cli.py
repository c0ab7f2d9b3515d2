import json
import math

import numpy as np
import pytest

from qfourier.cli import main


def rows_from_csv(text):
    lines = [l for l in text.split("\n") if l]
    assert lines[0] == "k_re,k_im,plane,q,F_re,F_im,err"
    out = []
    for line in lines[1:]:
        f = line.split(",")
        out.append({"k_re": float(f[0]), "k_im": float(f[1]),
                    "plane": f[2], "q": float(f[3]), "F_re": float(f[4]),
                    "F_im": float(f[5]), "err": float(f[6])})
    return out


class TestUsageErrors:
    def test_no_subcommand(self, capsys):
        assert main([]) == 1
        capsys.readouterr()

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1
        capsys.readouterr()

    def test_invalid_q_cites_band(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "2.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2"])
        err = capsys.readouterr().err
        assert rc == 1
        assert "[1, 2)" in err

    def test_missing_required_flags(self, capsys):
        assert main(["transform", "--f", "heaviside+"]) == 1
        assert "--q" in capsys.readouterr().err

    @pytest.mark.parametrize("extra", [
        ["--nk", "0"],
        ["--kmin", "3", "--kmax", "1"],
        ["--plane", "sideways"],
        ["--nk", "2.5"],
    ])
    def test_bad_grid_config(self, extra, capsys):
        # a repeated flag overrides the earlier occurrence
        base = ["transform", "--f", "heaviside+", "--q", "1.5",
                "--kmin", "1", "--kmax", "2", "--nk", "2"]
        assert main(base + extra) == 1
        capsys.readouterr()

    def test_unknown_function(self, capsys):
        rc = main(["transform", "--f", "sinc", "--q", "1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2"])
        assert rc == 1
        assert "sinc" in capsys.readouterr().err

    def test_powerlaw_missing_parameters(self, capsys):
        rc = main(["transform", "--f", "powerlaw", "--q", "1.2",
                   "--kmin", "0", "--kmax", "0", "--nk", "1"])
        assert rc == 1
        assert "--lambda" in capsys.readouterr().err

    def test_nontransformable_at_q(self, capsys):
        # at q=1 the kernel stops supplying decay, so a constant is
        # no longer absolutely integrable against it
        rc = main(["transform", "--f", "constant", "--q", "1.0",
                   "--kmin", "1", "--kmax", "1", "--nk", "1"])
        assert rc == 1
        assert "not transformable" in capsys.readouterr().err


class TestTransformCommand:
    def test_heaviside_rows_match_closed_form(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "0.5", "--kmax", "4", "--nk", "8",
                   "--plane", "real-upper"])
        assert rc == 0
        rows = rows_from_csv(capsys.readouterr().out)
        assert len(rows) == 8
        for r in rows:
            want = 1j / ((2.0 - 1.5) * r["k_re"])
            got = complex(r["F_re"], r["F_im"])
            np.testing.assert_allclose(got, want, rtol=1e-6, atol=1e-12)

    def test_powerlaw_zero_k_moment(self, capsys):
        rc = main(["transform", "--f", "powerlaw", "--lambda", "1",
                   "--beta", "3", "--a", "1", "--b", "2", "--q", "1.2",
                   "--kmin", "0", "--kmax", "0", "--nk", "1"])
        assert rc == 0
        rows = rows_from_csv(capsys.readouterr().out)
        assert len(rows) == 1
        np.testing.assert_allclose(rows[0]["F_re"], 0.375, rtol=1e-8)
        np.testing.assert_allclose(rows[0]["F_im"], 0.0, atol=1e-10)

    def test_csv_round_trips_byte_identical(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        rc = main(["transform", "--f", "gaussian", "--q", "1.3",
                   "--kmin", "-2", "--kmax", "2", "--nk", "5",
                   "--plane", "real-line", "--out", str(out)])
        assert rc == 0
        capsys.readouterr()
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").split("\n")
        body = [l for l in lines[1:] if l]
        rebuilt = [lines[0]]
        for line in body:
            f = line.split(",")
            rebuilt.append(",".join(
                [repr(float(f[0])), repr(float(f[1])), f[2],
                 repr(float(f[3])), repr(float(f[4])), repr(float(f[5])),
                 repr(float(f[6]))]))
        assert ("\n".join(rebuilt) + "\n").encode("utf-8") == raw

    def test_out_file_keeps_stdout_clean(self, tmp_path, capsys):
        out = tmp_path / "rows.csv"
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2",
                   "--out", str(out)])
        captured = capsys.readouterr()
        assert rc == 0
        assert captured.out == ""
        assert out.exists()

    def test_json_schema_and_key_order(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2",
                   "--format", "json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert list(payload.keys()) == ["config", "results", "diagnostics"]
        assert list(payload["results"][0].keys()) == [
            "k_re", "k_im", "plane", "q", "F_re", "F_im", "err"]
        assert payload["config"]["command"] == "transform"

    def test_divergent_cell_flags_partial_run(self, capsys):
        # k=0 collapses the heaviside transform to a divergent moment;
        # the cell is flagged instead of aborting the sweep
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "0", "--kmax", "2", "--nk", "3"])
        captured = capsys.readouterr()
        assert rc == 2
        rows = rows_from_csv(captured.out)
        assert math.isnan(rows[0]["F_re"])
        assert rows[0]["err"] == math.inf
        assert not math.isnan(rows[1]["F_re"])
        assert "diverges" in captured.err

    def test_q_list_sweeps_q_major(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.2,1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2"])
        assert rc == 0
        rows = rows_from_csv(capsys.readouterr().out)
        assert [r["q"] for r in rows] == [1.2, 1.2, 1.5, 1.5]
        assert [r["k_re"] for r in rows] == [1.0, 2.0, 1.0, 2.0]

    def test_upper_plane_needs_offset(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2",
                   "--plane", "upper"])
        assert rc == 1
        assert "kim" in capsys.readouterr().err

    def test_real_plane_rejects_offset(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "1", "--kmax", "2", "--nk", "2",
                   "--kim", "0.5"])
        assert rc == 1
        capsys.readouterr()

    def test_upper_plane_values(self, capsys):
        rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                   "--kmin", "1", "--kmax", "1", "--nk", "1",
                   "--plane", "upper", "--kim", "1"])
        assert rc == 0
        rows = rows_from_csv(capsys.readouterr().out)
        got = complex(rows[0]["F_re"], rows[0]["F_im"])
        np.testing.assert_allclose(got, 1j / (0.5 * (1 + 1j)), rtol=1e-8)
        assert rows[0]["plane"] == "upper"


class TestConfigFile:
    def test_config_supplies_flags(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "f": "heaviside+", "q": 1.5, "kmin": 0.5, "kmax": 4,
            "nk": 8, "plane": "real-upper"}))
        rc = main(["transform", "--config", str(cfg)])
        assert rc == 0
        assert len(rows_from_csv(capsys.readouterr().out)) == 8

    def test_cli_flags_take_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "f": "heaviside+", "q": 1.5, "kmin": 0.5, "kmax": 4,
            "nk": 8}))
        rc = main(["transform", "--config", str(cfg), "--nk", "3"])
        assert rc == 0
        assert len(rows_from_csv(capsys.readouterr().out)) == 3

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"qq": 1.5}))
        rc = main(["transform", "--config", str(cfg)])
        assert rc == 1
        assert "qq" in capsys.readouterr().err

    def test_config_must_be_object(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text("[1, 2]")
        assert main(["transform", "--config", str(cfg)]) == 1
        capsys.readouterr()

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["transform", "--config",
                     str(tmp_path / "nope.json")]) == 1
        capsys.readouterr()

    def test_malformed_config_json(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text("{not json")
        assert main(["transform", "--config", str(cfg)]) == 1
        capsys.readouterr()


class TestCollideCommand:
    def test_level_set_members_collide_and_separate(self, capsys):
        rc = main(["collide", "--pairs", "1,2;1.3333333333333333,4",
                   "--q", "1.5"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        rep = payload["results"][0]
        np.testing.assert_allclose(rep["lambdas"], math.sqrt(2.0),
                                   rtol=1e-12)
        assert rep["collide_at_q"] is True
        assert rep["max_pairwise_dev_at_q"] < 1e-6
        assert rep["separate_at_qprime"] is True
        assert set(rep["qprime_devs"]) == {"1.3", "1.7"}
        assert all(v > 1e-3 for v in rep["qprime_devs"].values())

    def test_mismatched_lambdas_report_no_collision(self, capsys):
        # these windows sit on different level sets, so the tool must
        # say so even though each matches its own closed form
        rc = main(["collide", "--pairs", "1,2;0.5,4", "--q", "1.5"])
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)["results"][0]
        assert rep["collide_at_q"] is False
        assert rep["max_pairwise_dev_at_q"] > 1e-2

    def test_single_pair_rejected(self, capsys):
        assert main(["collide", "--pairs", "1,2", "--q", "1.5"]) == 1
        assert ">= 2" in capsys.readouterr().err

    def test_identical_pairs_skip_separation(self, capsys):
        rc = main(["collide", "--pairs", "1,2;1,2", "--q", "1.5"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        rep = payload["results"][0]
        assert rep["collide_at_q"] is True
        assert rep["separate_at_qprime"] is None
        assert any("skipped" in d for d in payload["diagnostics"])

    @pytest.mark.parametrize("pairs", ["1;2", "2,1;1,2", "0,1;1,2", "a,b"])
    def test_malformed_pair_lists(self, pairs, capsys):
        assert main(["collide", "--pairs", pairs, "--q", "1.5"]) == 1
        capsys.readouterr()

    def test_qprime_side_outside_band_is_skipped(self, capsys):
        rc = main(["collide", "--pairs", "1,2;1.5,3", "--q", "1.1"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        rep = payload["results"][0]
        assert list(rep["qprime_devs"]) == ["1.3"]
        assert any("0.9" in d for d in payload["diagnostics"])


class TestInvertCommand:
    def test_gaussian_roundtrip_report(self, capsys):
        rc = main(["invert", "--f", "gaussian", "--sigma", "1"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"][0]["residual"] < 1e-3
        assert payload["config"]["extrapolation"] == "richardson"

    def test_powerlaw_single_slice_schedule(self, capsys):
        rc = main(["invert", "--f", "powerlaw", "--lambda", "1",
                   "--beta", "2", "--a", "1", "--b", "2",
                   "--eps", "1e-4", "--extrapolation", "none"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"][0]["residual"] < 1e-2
        assert payload["config"]["eps"] == [1e-4]

    def test_function_without_classical_limit(self, capsys):
        rc = main(["invert", "--f", "heaviside+"])
        assert rc == 1
        assert "classical" in capsys.readouterr().err

    def test_bad_schedule_rejected(self, capsys):
        rc = main(["invert", "--f", "gaussian", "--eps", "0.9,0.5"])
        assert rc == 1
        capsys.readouterr()


class TestVerifyCommand:
    def test_special_suite_passes(self, capsys):
        rc = main(["verify", "--suite", "special"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        names = [r["name"] for r in payload["results"]]
        assert "binomial_collapse_draws" in names
        assert all(r["ok"] for r in payload["results"])
        assert all(set(r) == {"name", "ok", "detail"}
                   for r in payload["results"])

    def test_ultra_suite_has_delta_weight_check(self, capsys):
        rc = main(["verify", "--suite", "ultra"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert any(r["name"] == "delta_weight_contour"
                   for r in payload["results"])

    def test_all_suites_green(self, capsys):
        rc = main(["verify", "--suite", "all"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["results"]) >= 15
        assert all(r["ok"] for r in payload["results"])

    def test_unknown_suite(self, capsys):
        assert main(["verify", "--suite", "everything"]) == 1
        capsys.readouterr()

    def test_failed_check_exits_nonzero(self, capsys, monkeypatch):
        import qfourier.cli as cli_mod
        monkeypatch.setattr(cli_mod, "run_suite",
                            lambda name: [("synthetic", False, "boom")])
        assert main(["verify", "--suite", "special"]) == 2
        capsys.readouterr()


class TestDeltaCommand:
    def test_three_halves_weight(self, capsys):
        rc = main(["delta", "--q", "1.5"])
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)["results"][0]
        np.testing.assert_allclose(rep["measured_re"], 4.0 * math.pi,
                                   rtol=1e-6)
        np.testing.assert_allclose(rep["expected"], 4.0 * math.pi,
                                   rtol=1e-12)
        assert rep["rel_err"] < 1e-6

    def test_classical_weight(self, capsys):
        rc = main(["delta", "--q", "1.0"])
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)["results"][0]
        np.testing.assert_allclose(rep["expected"], 2.0 * math.pi,
                                   rtol=1e-12)
        assert rep["rel_err"] < 1e-6

    @pytest.mark.parametrize("zeta", ["0.5", "2"])
    def test_offset_invariance(self, zeta, capsys):
        rc = main(["delta", "--q", "1.5", "--zeta", zeta])
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)["results"][0]
        assert rep["rel_err"] < 1e-6

    def test_q_out_of_band(self, capsys):
        assert main(["delta", "--q", "2.0"]) == 1
        capsys.readouterr()


class TestThreadsEnv:
    @pytest.mark.parametrize("raw", ["abc", "0", "-3", "1.5"])
    def test_invalid_values_rejected(self, raw, capsys, monkeypatch):
        monkeypatch.setenv("QFT_THREADS", raw)
        assert main(["delta", "--q", "1.5"]) == 1
        assert "QFT_THREADS" in capsys.readouterr().err

    def test_output_bytes_independent_of_cap(self, tmp_path, capsys,
                                             monkeypatch):
        outs = []
        for cap, name in (("1", "one.csv"), ("7", "seven.csv")):
            monkeypatch.setenv("QFT_THREADS", cap)
            out = tmp_path / name
            rc = main(["transform", "--f", "heaviside+", "--q", "1.5",
                       "--kmin", "1", "--kmax", "3", "--nk", "3",
                       "--out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        capsys.readouterr()
        assert outs[0] == outs[1]
