"""Command-line behaviour: parsing, outputs, exit codes and determinism."""

import io
import json
import subprocess
import sys

import pytest

from modschwarz.cli import build_parser, run


def capture(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def test_parse_defaults():
    args = build_parser().parse_args(["solve", "--r", "2"])
    assert args.command == "solve"
    assert args.r == 2
    assert args.order == 40
    assert args.format == "text"


def test_parse_verify_defaults():
    args = build_parser().parse_args(["verify", "--r", "3"])
    assert args.tolerance == 1e-6
    assert args.numeric is False


def test_invalid_r_exits_2():
    code, _, _ = capture(["verify", "--r", "0"])
    assert code == 2


def test_too_small_order_exits_2():
    code, _, _ = capture(["solve", "--r", "6", "--order", "3"])
    assert code == 2


def test_unknown_series_name_exits_2():
    code, _, _ = capture(["series", "e8"])
    assert code == 2


def test_missing_command_exits_2():
    code, _, _ = capture([])
    assert code == 2


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def test_series_text_output():
    code, out, _ = capture(["series", "e4", "--order", "5"])
    assert code == 0
    assert "e4 (weight 4" in out
    assert "240*p" in out


def test_series_json_and_lattice():
    code, out, _ = capture(["series", "e4", "--order", "3", "--lattice", "2",
                            "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 2
    assert doc["coeffs"]["2"] == "240"


def test_solve_json_contains_golden_eigenvector():
    code, out, _ = capture(["solve", "--r", "3", "--order", "40",
                            "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["X"] == ["-270", "0", "1"]
    assert doc["group"] == "squares"
    assert doc["ode_residual_zero"] is True
    assert doc["schwarz_residual_zero"] is True


def test_solve_text_output():
    code, out, _ = capture(["solve", "--r", "1", "--order", "12"])
    assert code == 0
    assert "group = squares" in out
    assert "ode residual zero: True" in out


def test_verify_passes_for_r5():
    code, out, _ = capture(["verify", "--r", "5", "--order", "50"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert doc["ode_residual_zero"] and doc["schwarz_residual_zero"]


def test_verify_numeric():
    code, out, _ = capture(["verify", "--r", "2", "--order", "50", "--numeric"])
    assert code == 0
    doc = json.loads(out)
    assert doc["numeric"]["equivariance_S"]["pass"] is True
    assert doc["numeric"]["equivariance_T"]["pass"] is True
    assert doc["numeric"]["schwarzian"]["pass"] is True


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_examples_pass(r):
    code, out, _ = capture(["examples", "--r", str(r), "--order", "40"])
    assert code == 0, out
    assert "FAIL" not in out
    assert "PASS" in out


def test_examples_r3_reports_misprint():
    code, out, _ = capture(["examples", "--r", "3"])
    assert code == 0
    assert "1226 variant rejected" in out
    assert "NOTE" in out


def test_identities_suite():
    code, out, _ = capture(["identities", "--order", "30"])
    assert code == 0, out
    assert out.count("PASS") == 8
    assert "== mu" in out


# ---------------------------------------------------------------------------
# determinism and process-level behaviour
# ---------------------------------------------------------------------------


def test_solve_json_is_byte_identical_across_runs():
    _, first, _ = capture(["solve", "--r", "6", "--order", "50",
                           "--format", "json"])
    _, second, _ = capture(["solve", "--r", "6", "--order", "50",
                            "--format", "json"])
    assert first.encode() == second.encode()


def test_cli_entry_point_runs_in_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "modschwarz.cli", "series", "delta",
         "--order", "4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "delta" in proc.stdout
