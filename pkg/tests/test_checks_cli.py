import json
import subprocess
import sys

import pytest

from entcap.checks import run_all_checks


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "entcap.cli", *args],
        capture_output=True, text=True, timeout=300,
    )


def test_checks_bank_is_green():
    results = run_all_checks(seed=7)
    assert len(results) == 12
    names = [r.name for r in results]
    assert len(set(names)) == len(names)
    for r in results:
        assert r.passed, f"{r.name} violated by {r.worst_violation}"


def test_checks_bank_is_deterministic():
    assert run_all_checks(seed=7) == run_all_checks(seed=7)


def test_checks_command_emits_json(tmp_path):
    out = tmp_path / "checks.json"
    proc = run_cli("checks", "--seed", "7", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    rows = json.loads(out.read_text())
    assert len(rows) == 12
    for row in rows:
        assert set(row) == {"check_name", "pass", "worst_violation"}
        assert row["pass"] is True


def test_checks_runs_are_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli("checks", "--seed", "7", "--out", str(a)).returncode == 0
    assert run_cli("checks", "--seed", "7", "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_converge_writes_csv_and_figure(tmp_path):
    out = tmp_path / "gap.csv"
    proc = run_cli("converge", "--seed", "3", "--n-max", "5", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,gap_nats,residual_nats,target_nats"
    assert len(lines) == 6
    assert (tmp_path / "gap.png").exists()


def test_converge_can_skip_the_figure(tmp_path):
    out = tmp_path / "gap.csv"
    proc = run_cli("converge", "--seed", "3", "--n-max", "4",
                   "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    assert not (tmp_path / "gap.png").exists()


def test_converge_stdout_and_determinism(tmp_path):
    args = ("converge", "--seed", "5", "--n-max", "4", "--no-figure")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith("n,gap_nats")


def test_converge_json_format(tmp_path):
    out = tmp_path / "gap.json"
    proc = run_cli("converge", "--seed", "3", "--n-max", "4",
                   "--format", "json", "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(out.read_text())
    assert payload["command"] == "converge"
    assert len(payload["rows"]) == 4


def test_commuting_regular_rows_leave_lower_bound_empty(tmp_path):
    out = tmp_path / "comm.csv"
    proc = run_cli("commuting", "--lambda", "0.3,0.7", "--mu", "0.6,0.4",
                   "--n-max", "6", "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,gap_formula,qn,regular_flag,singular_lower_bound"
    for line in lines[1:]:
        assert line.endswith(",true,")


def test_commuting_singular_rows_report_lower_bound(tmp_path):
    out = tmp_path / "sing.csv"
    proc = run_cli("commuting", "--lambda", "0.3,0.5,0.2", "--mu", "0.6,0.4,0.0",
                   "--n-max", "6", "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[3] == "false"
        # the bound vanishes identically at n = 1 and grows from there
        if int(fields[0]) >= 2:
            assert float(fields[4]) > 0.0
        else:
            assert float(fields[4]) >= 0.0


def test_stein_needs_a_rate():
    proc = run_cli("stein", "--n-max", "3")
    assert proc.returncode == 2


def test_stein_report(tmp_path):
    out = tmp_path / "stein.csv"
    proc = run_cli("stein", "--seed", "9", "--rate", "0.05", "--n-max", "4",
                   "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "N,alpha,beta,beta_exponent,rate"
    assert len(lines) == 5


def test_codesim_report(tmp_path):
    out = tmp_path / "code.csv"
    proc = run_cli("codesim", "--seed", "9", "--rate", "0.4", "--epsilon", "0.2",
                   "--n-max", "4", "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("n,holevo,cost,cost_bound,fano_lower")
    assert len(lines) == 5


def test_codesim_rejects_conflicting_sizing():
    proc = run_cli("codesim", "--rate", "0.4", "--epsilon", "0.2",
                   "--repetitions", "3", "--n-max", "3")
    assert proc.returncode == 2


def test_config_overrides_flags(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_max": 6}))
    out = tmp_path / "gap.csv"
    proc = run_cli("converge", "--seed", "3", "--n-max", "3",
                   "--config", str(cfg), "--out", str(out), "--no-figure")
    assert proc.returncode == 0, proc.stderr
    assert len(out.read_text().strip().splitlines()) == 7


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_maks": 6}))
    proc = run_cli("converge", "--config", str(cfg))
    assert proc.returncode == 2
    assert "n_maks" in proc.stderr


def test_state_pair_from_config(tmp_path):
    cfg = tmp_path / "pair.json"
    cfg.write_text(json.dumps({
        "state_pair": {"sigma": [0.3, 0.7], "rho": [0.3, 0.7]},
        "n_max": 4,
    }))
    out = tmp_path / "gap.csv"
    proc = run_cli("converge", "--config", str(cfg), "--out", str(out),
                   "--no-figure", "--format", "json")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(out.read_text())
    for row in payload["rows"]:
        assert abs(row["gap_nats"]) <= 1e-12


def test_size_cap_exit_code():
    proc = run_cli("converge", "--n-max", "8", "--size-cap", "64", "--no-figure")
    assert proc.returncode == 3


def test_unknown_subcommand_exits_2():
    proc = run_cli("frobnicate")
    assert proc.returncode == 2
