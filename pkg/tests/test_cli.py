import io
import json
import math

import pytest

from bernwave.cli import main

ENVELOPE_KEYS = {"command", "parameters", "results", "provenance", "tolerances", "wall_time_ms"}


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_mask_haar_contract(capsys):
    code, env = run_json(capsys, ["mask", "--family", "daubechies", "--m", "1"])
    assert code == 0
    assert set(env) == ENVELOPE_KEYS
    assert [r["coefficient"] for r in env["results"]] == [0.5, 0.5]


def test_mask_daub_wavelet_alternates(capsys):
    code, env = run_json(capsys, ["mask", "--family", "daubechies", "--m", "2", "--part", "psi"])
    assert code == 0
    g = [r["coefficient"] for r in env["results"]]
    code, env = run_json(capsys, ["mask", "--family", "daubechies", "--m", "2"])
    h = [r["coefficient"] for r in env["results"]]
    assert g == [h[3], -h[2], h[1], -h[0]]


def test_mask_spline_phi_binomial(capsys):
    code, env = run_json(capsys, ["mask", "--family", "spline", "--m", "2"])
    assert code == 0
    assert [r["coefficient"] for r in env["results"]] == [0.5, 1.0, 0.5]


def test_mask_spline_psi_exact_column(capsys):
    code, env = run_json(capsys, ["mask", "--family", "spline", "--m", "2", "--part", "psi"])
    assert code == 0
    assert [r["exact"] for r in env["results"]] == ["1/12", "-1/3", "1/12"]


def test_constants_favard(capsys):
    code, env = run_json(capsys, ["constants", "--set", "favard", "--j-max", "3"])
    assert code == 0
    vals = {r["name"]: r["value"] for r in env["results"]}
    assert vals["K_0"] == 1.0
    assert vals["K_1"] == pytest.approx(math.pi / 2.0, rel=1e-14)
    assert vals["K_3"] == pytest.approx(math.pi ** 3 / 24.0, rel=1e-14)


def test_constants_all_contains_both_sets(capsys):
    code, env = run_json(capsys, ["constants"])
    names = {r["name"] for r in env["results"]}
    assert {"xi1", "lam2", "Lam2", "K_0", "K_10", "fixed_k_ratio"} <= names


def test_ckp_envelope_matches_library(capsys):
    from bernwave.norms import ckp

    code, env = run_json(capsys, [
        "ckp", "--family", "spline", "--part", "psi", "--m", "4", "--k", "1",
        "--p", "2", "--tol", "1e-7",
    ])
    assert code == 0
    row = env["results"][0]
    direct = ckp("spline", "psi", 4, 1, 2.0, tol=1e-7)
    assert row["ratio"] == pytest.approx(direct.ratio, rel=1e-9)
    assert row["certified_rel_error"] <= 1e-7
    assert env["tolerances"] == {"tol": 1e-7}


def test_ckp_rejects_bad_k(capsys):
    assert main(["ckp", "--family", "spline", "--part", "psi", "--m", "3", "--k", "5"]) == 2
    assert "exceeds" in capsys.readouterr().err


def test_csv_is_bare_table(capsys):
    code = main(["constants", "--set", "favard", "--j-max", "2", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "name,value"
    assert len(lines) == 4


def test_json_deterministic_modulo_wall_time(capsys):
    argv = ["sharpness", "--m", "3", "--j-list", "4,8"]
    _, env1 = run_json(capsys, argv)
    _, env2 = run_json(capsys, argv)
    env1.pop("wall_time_ms"), env2.pop("wall_time_ms")
    assert env1 == env2


def test_sharpness_floor_column(capsys):
    code, env = run_json(capsys, ["sharpness", "--m", "2"])
    assert code == 0
    rows = env["results"]
    assert [r["j"] for r in rows] == [4, 8, 16, 32, 64]
    assert rows[-1]["floor"] == pytest.approx(1.0829253310950266, rel=1e-10)
    assert all(b["ratio"] > a["ratio"] for a, b in zip(rows, rows[1:]))


def test_sharpness_scan_reports_violations(capsys):
    code, env = run_json(capsys, ["sharpness", "--scan"])
    assert code == 0
    assert env["parameters"]["n_checks"] == 45000
    assert env["parameters"]["n_violations"] == 19
    assert len(env["results"]) == 19
    worst = max(r["lhs_over_rhs"] for r in env["results"])
    assert worst == pytest.approx(1.1680106287741279, rel=1e-9)


def test_sweep_rows_carry_summary(capsys):
    code, env = run_json(capsys, [
        "sweep", "--target", "splinePsiK", "--m-grid", "5,10", "--tol", "1e-6",
    ])
    assert code == 0
    rows = env["results"]
    assert [r["m"] for r in rows] == [5, 10]
    assert rows[0]["richardson"] == rows[1]["richardson"]
    assert rows[1]["rel_error"] < rows[0]["rel_error"]


def test_bernstein_ok_exit_zero(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1, -0.5, 0.25"))
    code, env = run_json(capsys, ["bernstein", "--m", "3", "--k", "1"])
    assert code == 0
    assert env["results"][0]["ok"] is True


def test_bernstein_violation_exit_one(capsys, monkeypatch):
    import numpy as np

    rng = np.random.default_rng(20260819)
    vecs = [rng.uniform(-1.0, 1.0, size=int(rng.integers(1, 9))) for _ in range(500)]
    feed = " ".join(repr(float(x)) for x in vecs[294])
    monkeypatch.setattr("sys.stdin", io.StringIO(feed))
    code, env = run_json(capsys, ["bernstein", "--m", "2", "--k", "1", "--p", "1.5"])
    assert code == 1
    assert env["results"][0]["ok"] is False


def test_bernstein_bad_stream(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1.0 spam 2.0"))
    assert main(["bernstein", "--m", "3", "--k", "1"]) == 2
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    assert main(["bernstein", "--m", "3", "--k", "1"]) == 2


def test_bernstein_inline_and_file(capsys, tmp_path):
    code, env = run_json(capsys, ["bernstein", "--m", "3", "--k", "1",
                                  "--coeffs", "1, -0.5, 0.25"])
    assert code == 0
    assert env["parameters"]["n_coefficients"] == 3
    assert env["provenance"]["sharp_bound"] > 0.0

    path = tmp_path / "c.txt"
    path.write_text("2.0 1.0\n-1.0\n")
    code, env = run_json(capsys, ["bernstein", "--m", "2", "--k", "1",
                                  "--file", str(path)])
    assert code == 0
    assert env["parameters"]["n_coefficients"] == 3

    assert main(["bernstein", "--m", "2", "--k", "1", "--file",
                 str(tmp_path / "missing.txt")]) == 2
    with pytest.raises(SystemExit):  # mutually exclusive sources
        main(["bernstein", "--m", "2", "--k", "1", "--coeffs", "1",
              "--file", str(path)])


def test_sweep_m_range_flags(capsys):
    code, env = run_json(capsys, ["sweep", "--target", "splinePsiK",
                                  "--m-min", "5", "--m-max", "8"])
    assert code == 0
    assert env["parameters"]["m_grid"] == [5, 6, 7, 8]
    # limit targets cite the constant they converge to
    assert env["provenance"]["predicted_constant"] == pytest.approx(
        env["results"][0]["predicted"], rel=1e-15)
    assert main(["sweep", "--target", "splinePsiK", "--m-grid", "5,10",
                 "--m-min", "5", "--m-max", "8"]) == 2
    assert main(["sweep", "--target", "splinePsiK", "--m-min", "9",
                 "--m-max", "8"]) == 2


def test_tensor_limit_only(capsys):
    code, env = run_json(capsys, [
        "tensor", "--family", "daubechies", "--kind", "3", "--m", "6",
        "--k1", "1", "--k2", "1", "--limit-only",
    ])
    assert code == 0
    row = env["results"][0]
    assert row["limit"] == pytest.approx(0.5 * math.pi ** -2, rel=1e-12)
    assert row["lower_bound"] is None
    assert "value" not in row


def test_tensor_spline_with_value(capsys):
    code, env = run_json(capsys, [
        "tensor", "--family", "spline", "--kind", "1", "--m", "3",
        "--k1", "1", "--k2", "0", "--tol", "1e-6",
    ])
    assert code == 0
    row = env["results"][0]
    assert row["axis2_ratio"] == 1.0
    assert row["value"] == pytest.approx(row["axis1_ratio"], rel=1e-12)
    assert row["lower_bound"] > 0.0


def test_tensor_orthonormal_mixed_rejected(capsys):
    code = main(["tensor", "--family", "daubechies", "--kind", "1", "--m", "4",
                 "--k1", "1", "--k2", "2"])
    assert code == 2
    assert "phi axis" in capsys.readouterr().err


def test_verify_single_green_criterion(capsys):
    code, env = run_json(capsys, ["verify", "--criteria", "favard-closed-forms"])
    assert code == 0
    assert env["results"][0]["passed"] is True
    assert env["results"][0]["name"] == "favard-closed-forms"


def test_verify_red_criterion_exits_one(capsys):
    code, env = run_json(capsys, ["verify", "--criteria", "1"])
    assert code == 1
    row = env["results"][0]
    assert row["passed"] is False
    assert "Lam2" in row["detail"]


def test_verify_rejects_unknown_criterion():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--criteria", "bogus"])
    assert e.value.code == 2


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as e:
        main(["ckp", "--family", "fourier", "--part", "psi", "--m", "3", "--k", "1"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_version_flag():
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
