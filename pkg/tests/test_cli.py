import json
import subprocess
import sys

import pytest

from modhyp import __version__
from modhyp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sequence_five(capsys):
    code, out, _ = run(capsys, "sequence", "5", "--count", "8")
    assert code == 0
    assert out.strip() == "1, -10, 230, -6500, 199750, -6366060, 204990300, -6539387400"


def test_sequence_json(capsys):
    code, out, _ = run(capsys, "sequence", "6", "--count", "4", "--json")
    payload = json.loads(out)
    assert payload == {"version": __version__, "N": 6, "scale": 72, "values": [1, -6, 42, -312]}


def test_sequence_bad_level(capsys):
    code, _, err = run(capsys, "sequence", "4")
    assert code == 2 and "no integral sequence" in err


def test_cusps_36_json(capsys):
    code, out, _ = run(capsys, "cusps", "36", "--json")
    cusps = json.loads(out)["cusps"]
    assert code == 0 and len(cusps) == 12
    assert sum(c["rational"] for c in cusps) == 6


def test_verify_single_json(capsys):
    code, out, _ = run(capsys, "verify", "--id", "septic", "--terms", "20", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"]
    assert payload["reports"] == [{"name": "septic", "order": 20, "passed": True, "first_mismatch": None}]


def test_verify_all_text(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--terms", "12")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[-1].endswith("passed") and all(l.startswith("PASS") for l in lines[:-1])


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "--id", "nope")
    assert code == 2 and "unknown identity" in err


@pytest.mark.parametrize("argv", [["verify"], ["verify", "--all", "--terms", "0"],
                                  ["verify", "--all", "--terms", "129"], ["bogus"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_qexp_j(capsys):
    code, out, _ = run(capsys, "qexp", "j", "--terms", "3")
    payload = json.loads(out)
    assert payload["valuation"] == -1 and payload["q_exponent"] == "0/1"
    assert payload["coeffs"] == ["1/1", "744/1", "196884/1"]


def test_qexp_fractional_exponent(capsys):
    code, out, _ = run(capsys, "qexp", "eta:[1]", "--terms", "4")
    payload = json.loads(out)
    assert payload["q_exponent"] == "1/24" and payload["valuation"] == 0
    assert payload["coeffs"] == ["1/1", "-1/1", "-1/1", "0/1"]


def test_qexp_unknown(capsys):
    code, _, err = run(capsys, "qexp", "x11")
    assert code == 2 and "unknown expansion" in err


def test_series_scaled(capsys):
    code, out, _ = run(capsys, "series", "h7", "--count", "3", "--scaled")
    assert out.splitlines() == ["0 1", "1 -21", "2 693"]
    code, out, _ = run(capsys, "series", "h2", "--count", "2")
    assert out.splitlines() == ["0 1/1", "1 -1/1024"]


def test_recurrence_and_lift(capsys):
    code, out, _ = run(capsys, "recurrence", "--N", "6")
    assert out.splitlines() == ["c_{n-1}   n^2", "c_n       17*n^2+17*n+6", "c_{n+1}   72*n^2+144*n+72"]
    code, out, _ = run(capsys, "lift", "--N", "7")
    assert "roots of z^2+13*z+49: (0, 1/3) [elliptic-3] x2" in out


def test_lift_cusps(capsys):
    code, out, _ = run(capsys, "lift-cusps", "6", "--map", "phi-prime")
    assert "[1/6]_6 (infinity) <- 6*[1/36]_36  [degree 6]" in out.splitlines()


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", "49", "--json")
    payload = json.loads(out)
    assert payload["genus"] == 1 and payload["fricke_quotient_genus"] == 0


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "modhyp", "verify", "--all", "--terms", "8", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
