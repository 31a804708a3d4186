import json

import pytest

from port_trees.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exact_pmf_root(capsys):
    code, out, _ = run(capsys, "exact-pmf", "--n", "4", "--j", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d,probability"
    assert lines[1:] == ["1,0.2", "2,0.4", "3,0.4"]


def test_exact_pmf_rational(capsys):
    code, out, _ = run(capsys, "exact-pmf", "--n", "4", "--j", "2", "--rational")
    assert code == 0
    assert out.strip().split("\n")[1:] == ["1,8/15", "2,1/3", "3,2/15"]


def test_exact_pmf_methods_agree(capsys):
    results = []
    for method in ("closed", "recurrence", "hypergeom"):
        code, out, _ = run(capsys, "exact-pmf", "--n", "6", "--j", "3", "--method", method)
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        results.append({int(d): float(p) for d, p in rows})
    for d in results[0]:
        assert results[0][d] == pytest.approx(results[1][d], abs=1e-10)
        assert results[2][d] == pytest.approx(results[1][d], abs=1e-10)


def test_exact_pmf_json_round_trip(capsys):
    code, out, _ = run(capsys, "exact-pmf", "--n", "5", "--j", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["columns"] == ["d", "probability"]
    assert len(payload["rows"]) == 4


def test_exact_moments(capsys):
    code, out, _ = run(capsys, "exact-moments", "--n", "3", "--j", "2")
    assert code == 0
    _, row = out.strip().split("\n")
    n, j, mean, var = row.split(",")
    assert float(mean) == pytest.approx(4 / 3, rel=1e-10)
    assert float(var) == pytest.approx(2 / 9, abs=1e-10)


def test_zagreb_moments_rational(capsys):
    code, out, _ = run(capsys, "zagreb-moments", "--n-max", "4", "--rational")
    assert code == 0
    rows = out.strip().split("\n")
    assert rows[0] == "n,mean_Z,mean_Y,second_Z,var_Z"
    assert rows[4] == "4,11/1,24/1,122/1,1/1"


def test_oracle_json(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "4", "--kernel", "degree", "--stat", "zagreb")
    assert code == 0
    payload = json.loads(out)
    assert payload["law"] == {"10": "1/2", "12": "1/2"}
    assert payload["mean"] == "11/1"
    assert payload["history_count"] == 8


def test_oracle_degree_stat(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "4", "--kernel", "gap", "--stat", "degree:2")
    assert code == 0
    payload = json.loads(out)
    assert payload["law"] == {"1": "8/15", "2": "1/3", "3": "2/15"}


def test_simulate_writes_manifest_and_outputs(capsys, tmp_path):
    out_dir = tmp_path / "run"
    code, _, _ = run(
        capsys, "simulate", "--n", "30", "--reps", "100", "--stat", "zagreb",
        "--seed", "5", "--out", str(out_dir),
    )
    assert code == 0
    manifest = json.loads((out_dir / "run-manifest.json").read_text())
    assert manifest["subcommand"] == "simulate"
    assert manifest["resolved"]["seed"] == 5
    assert (out_dir / "sample.csv").exists()
    assert (out_dir / "summary.json").exists()


def test_simulate_byte_reproducible(capsys, tmp_path):
    dirs = [tmp_path / "a", tmp_path / "b"]
    for d in dirs:
        code, _, _ = run(
            capsys, "simulate", "--n", "25", "--reps", "200", "--stat", "cubic",
            "--seed", "17", "--out", str(d),
        )
        assert code == 0
    assert (dirs[0] / "sample.csv").read_bytes() == (dirs[1] / "sample.csv").read_bytes()


def test_poisson_subcommand(capsys, tmp_path):
    out_dir = tmp_path / "poi"
    code, _, _ = run(
        capsys, "poisson", "--dt", "2", "--reps", "5000", "--seed", "3", "--out", str(out_dir)
    )
    assert code == 0
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["count"] == 5000
    se = (summary["theoretical_variance"] / 5000) ** 0.5
    assert abs(summary["mean"] - summary["theoretical_mean"]) < 5 * se


def test_poisson_tree_mode(capsys, tmp_path):
    out_dir = tmp_path / "poitree"
    code, _, _ = run(
        capsys, "poisson", "--j", "2", "--dt", "1", "--reps", "500", "--mode", "tree",
        "--seed", "3", "--out", str(out_dir),
    )
    assert code == 0
    assert (out_dir / "sample.csv").read_text().count("\n") == 500


def test_normality_report(capsys, tmp_path):
    out_dir = tmp_path / "norm"
    code, out, err = run(
        capsys, "normality-report", "--n", "200", "--reps", "400", "--seed", "1",
        "--out", str(out_dir),
    )
    assert code == 0
    report = json.loads((out_dir / "report.json").read_text())
    assert report["verdict"] in ("normality rejected", "normality not rejected")
    assert "jarque" in report["test"]
    assert (out_dir / "kde.csv").exists()


def test_normality_report_underpowered_warning(capsys, tmp_path):
    code, _, err = run(
        capsys, "normality-report", "--n", "50", "--reps", "10", "--seed", "1",
        "--out", str(tmp_path / "tiny"),
    )
    assert code == 0
    assert "underpowered" in err


def test_config_file_defaults(capsys, tmp_path):
    config = tmp_path / "defaults.cfg"
    config.write_text("n = 4\nj = 1  # root\n")
    code, out, _ = run(capsys, "--config", str(config), "exact-pmf")
    assert code == 0
    assert out.strip().split("\n")[1:] == ["1,0.2", "2,0.4", "3,0.4"]
    # explicit flag wins over the config file
    code, out, _ = run(capsys, "--config", str(config), "exact-pmf", "--j", "2")
    assert code == 0
    d, p = out.strip().split("\n")[1].split(",")
    assert d == "1" and float(p) == pytest.approx(8 / 15, rel=1e-12)


def test_verify_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--n-max", "5")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_usage_errors_exit_1(capsys):
    assert main(["exact-pmf"]) == 1  # missing required options
    assert main(["exact-pmf", "--n", "5", "--j", "2", "--method", "nope"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    assert main([]) == 1
