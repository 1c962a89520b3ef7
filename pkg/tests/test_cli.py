"""CLI goldens and exit codes.

Goldens live in tests/golden/.  Regenerate with ``ICOSA_REGEN_GOLDEN=1 pytest tests/test_cli.py``,
review the diff, then commit.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from icosa.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGEN = bool(os.environ.get("ICOSA_REGEN_GOLDEN"))

CASES = {
    "ico_traces_500.ndjson": ["ico", "traces", "--max-norm", "500", "--json"],
    "ico_traces_500.csv": ["ico", "traces", "--max-norm", "500", "--csv"],
    "ico_coeffs_60.ndjson": ["ico", "coeffs", "--n-max", "60"],
    "curve_count_200.ndjson": ["curve", "count", "--max-norm", "200"],
    "eisenstein_dump.ndjson": ["eisenstein", "dump", "--n-max", "60"],
    "qexp_congruence.ndjson": ["qexp", "congruence", "--n-max", "200"],
    "klein_transform.ndjson": ["klein", "transform", "--poly", "1;0;10;-10;35;-18", "--map", "1,1;10,-30;2;35,5"],
    "selftest.ndjson": ["selftest"],
}


def run_inproc(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def run_sub(argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "icosa.cli", *argv], capture_output=True, text=True, cwd=cwd)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out = run_inproc(CASES[name], capsys)
    assert code == 0
    path = GOLDEN / name
    if REGEN:
        path.write_text(out)
    assert path.exists(), f"missing golden {name}; run with ICOSA_REGEN_GOLDEN=1"
    assert out == path.read_text()


def test_traces_are_sorted(capsys):
    _, out = run_inproc(["ico", "traces", "--max-norm", "200"], capsys)
    recs = [json.loads(line) for line in out.splitlines()]
    keys = [(r["p"], r["sqrt5_image"]) for r in recs]
    assert keys == sorted(keys)


def test_byte_identical_across_processes():
    argv = ["ico", "traces", "--max-norm", "500", "--json"]
    a, b = run_sub(argv), run_sub(argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_unknown_flag_is_usage_error():
    r = run_sub(["ico", "traces", "--max-norm", "50", "--bogus"])
    assert r.returncode == 2
    assert "unrecognized arguments" in r.stderr


def test_unknown_subcommand_is_usage_error():
    assert run_sub(["frobnicate"]).returncode == 2


def test_cap_beyond_hard_limit_is_usage_error():
    r = run_sub(["ico", "traces", "--max-norm", "50", "--cap", str(10**7)])
    assert r.returncode == 2


def test_domain_error_record(capsys):
    # 5 ramifies; asking for its reduction is a domain error
    code, out = run_inproc(["curve", "reduce", "--ideal", "5:0"], capsys)
    assert code == 1
    rec = json.loads(out)
    assert set(rec) == {"error", "message"}


def test_strict_traces_fail_on_degenerate_ideals(capsys):
    code, out = run_inproc(["ico", "traces", "--max-norm", "11", "--strict"], capsys)
    assert code == 1
    assert "error" in json.loads(out.splitlines()[-1])


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "icosa.cfg"
    cfg.write_text("# defaults for a quick run\nformat = csv\nn_max = 12\n")
    code, out = run_inproc(["--config", str(cfg), "eisenstein", "dump"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert "," in lines[0]
    assert len(lines) == 1 + 13


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run_sub(["--config", str(cfg), "selftest"]).returncode == 2


def test_klein_solve_rejects_zero_A(capsys):
    code, out = run_inproc(["klein", "solve", "--A", "0,0", "--B", "1,0", "--C", "1,0"], capsys)
    assert code in (1, 2)


def test_dirichlet_eval_json(capsys):
    code, out = run_inproc(["dirichlet", "eval", "--char", "legendre5", "--s", "2", "--n-max", "1000", "--p-max", "100"], capsys)
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec
