import json
import subprocess
import sys

import pytest

from satlab import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_example(capsys):
    code, out, _ = run_cli(capsys, "bounds", "thm1.3", "--deg", "12",
                           "--height", "16")
    assert code == 0
    assert "floor = 12418358344782" in out
    assert "e+13" in out


def test_sieve_const_example(capsys):
    code, out, _ = run_cli(capsys, "sieve-const", "--kappa", "4",
                           "--beta", "9.0722")
    assert code == 0
    assert "m_star = 15.4274522" in out
    assert "r = 16" in out
    lam = float(out.split("lambda_star = ")[1].splitlines()[0])
    assert abs(lam - 0.606519) < 1e-4


def test_omega_point_example(capsys):
    code, out, _ = run_cli(capsys, "omega", "--point", " -1,1,2,-2")
    assert code == 0
    assert "omega = 2" in out


def test_omega_integer(capsys):
    code, out, _ = run_cli(capsys, "omega", "360")
    assert code == 0
    assert "omega = 6" in out


def test_factor_negative(capsys):
    code, out, _ = run_cli(capsys, "factor", "--", "-360")
    assert code == 0
    assert "sign = -1" in out and "2^3 * 3^2 * 5" in out


def test_elkies_images(capsys):
    code, out, _ = run_cli(capsys, "elkies", "--y", "1,0,0")
    assert code == 0
    assert "image = [-1:1:2:-2]" in out
    assert "omega = 2" in out
    code, out, _ = run_cli(capsys, "elkies", "--y", "0,0,1")
    assert "image = [0:1:-1:0]" in out
    assert "omega = inf" in out


def test_fermat3_triples_frozen(capsys):
    code, out, _ = run_cli(capsys, "fermat3-triples", "--count", "3")
    assert code == 0
    assert out.splitlines()[:3] == ["1471 1471 5881", "1471 5881 1471",
                                    "1471 5881 5881"]


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "bounds", "nope")
    assert code == 1
    assert "unknown selector" in err


def test_argparse_usage_exit_code(capsys):
    assert cli.main(["bounds"]) == 1
    capsys.readouterr()
    assert cli.main(["--help"]) == 0
    capsys.readouterr()


def test_contract_violation_exit_code(capsys):
    code, _, err = run_cli(capsys, "omega", "--point", "0,0,0")
    assert code == 2
    code, _, err = run_cli(capsys, "fermat3-triples", "--count", "1",
                           "--max-primes", "2")
    assert code == 0
    code, _, err = run_cli(capsys, "approx", "--map", "fermat3",
                           "--fiber", "7,11,13", "--target", "1,1,1,1,1",
                           "--eps", "0.5")
    assert code == 2
    assert "ConditionViolated" in err


def test_selftest_flag(capsys):
    code, out, _ = run_cli(capsys, "omega", "--selftest")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_fixed_divisor_inline_poly(capsys):
    code, out, _ = run_cli(capsys, "fixed-divisor", "--poly",
                           "vars=1;1 3;-1 1")
    assert code == 0
    assert "fixed_divisor = 6" in out
    assert "exact = true" in out


def test_approx_exact_preimage(capsys):
    code, out, _ = run_cli(capsys, "approx", "--map", "elkies",
                           "--target=-0.5,0.5,1,-1", "--eps", "0.1",
                           "--schedule", "1,2")
    assert code == 0
    assert "point = [1:-1:-2:2]" in out
    assert "distance = 0.0" in out


def test_approx_not_found_exit(capsys):
    code, _, err = run_cli(capsys, "approx", "--map", "elkies",
                           "--target", "1,0.57,-0.31,0.11",
                           "--eps", "1e-12", "--schedule", "1,2")
    assert code == 2
    assert "NotFound" in err


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "opts.cfg"
    cfg.write_text("count = 2\nmax-primes = 6\n")
    code, out, _ = run_cli(capsys, "fermat3-triples", "--config", str(cfg))
    assert code == 0 and "count = 2" in out
    code, out, _ = run_cli(capsys, "fermat3-triples", "--config", str(cfg),
                           "--count", "1")
    assert code == 0 and "count = 1" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    code, _, err = run_cli(capsys, "fermat3-triples", "--config", str(bad))
    assert code == 1 and "unknown option" in err


def test_search_outputs_and_no_figure(tmp_path, capsys):
    base = tmp_path / "run"
    code, out, _ = run_cli(capsys, "fermat3-search", "--triples", "1",
                           "--pairs", "4", "--out", str(base))
    assert code == 0
    assert (tmp_path / "run.tsv").exists()
    assert (tmp_path / "run.json").exists()
    assert (tmp_path / "run.png").exists()
    data = json.loads((tmp_path / "run.json").read_text())
    assert data["format"] == "satlab-report"
    base2 = tmp_path / "bare"
    code, out, _ = run_cli(capsys, "fermat3-search", "--triples", "1",
                           "--pairs", "4", "--out", str(base2), "--no-figure")
    assert code == 0
    assert (tmp_path / "bare.tsv").exists()
    assert not (tmp_path / "bare.png").exists()


def test_threads_do_not_change_bytes(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run_cli(capsys, "fermat3-search", "--triples", "1", "--pairs", "4",
            "--out", str(a), "--threads", "1", "--no-figure")
    run_cli(capsys, "fermat3-search", "--triples", "1", "--pairs", "4",
            "--out", str(b), "--threads", "8", "--no-figure")
    assert (tmp_path / "a.tsv").read_bytes() == (tmp_path / "b.tsv").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_report_roundtrip(tmp_path, capsys):
    base = tmp_path / "first"
    run_cli(capsys, "fermat3-search", "--triples", "1", "--pairs", "4",
            "--out", str(base), "--no-figure")
    code, out, _ = run_cli(capsys, "report", "--in", str(tmp_path / "first.tsv"),
                           "--kind", "fermat3", "--out",
                           str(tmp_path / "second"), "--no-figure")
    assert code == 0
    first = (tmp_path / "first.tsv").read_text()
    second = (tmp_path / "second.tsv").read_text()
    assert first == second


def test_skew_search_cli(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "skew-search", "--strategy", "split",
                           "--uv-box", "1:20,1:20", "--st-bound", "3",
                           "--out", str(tmp_path / "skew"), "--no-figure")
    assert code == 0
    assert "omega_threshold_stated = 32" in out
    assert "omega_threshold_accounted = 34" in out
    assert (tmp_path / "skew.tsv").exists()


def test_skew_check_and_normalize(capsys):
    code, out, _ = run_cli(capsys, "skew-check", "--model", "default")
    assert code == 0
    assert "all_ok = true" in out
    code, out, _ = run_cli(capsys, "skew-normalize", "--model", "default")
    assert code == 0
    assert "normalized = true" in out


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "satlab.cli", "omega", "12"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "omega = 3" in proc.stdout
