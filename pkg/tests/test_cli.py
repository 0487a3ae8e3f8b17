import cmath
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from mahler import checks, output
from mahler.cli import main
from mahler.mahler_functions import solve_u0, w_solve
from mahler.series_core import TruncatedSeries


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def coeffs(env):
    return [r["coeff"] for r in env["rows"]]


class TestCommands:
    def test_u0(self, capsys):
        env = run_json(capsys, "u0", "--order", "12")
        signs = (1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1)
        assert coeffs(env) == [str(Fraction(s, 2)) for s in signs]
        assert coeffs(run_json(capsys, "u0", "--order", "1")) == ["1/2"]

    def test_u0_csv_alphabet(self, capsys):
        code, out, _ = run(capsys, "u0", "--order", "4096", "--format", "csv")
        assert code == 0
        rows = output.read(out, "csv")["rows"]
        assert len(rows) == 4096
        assert {r["coeff"] for r in rows} == {"1/2", "-1/2"}

    def test_expand_one(self, capsys):
        env = run_json(capsys, "expand-one", "--order", "8")
        assert coeffs(env) == ["1", "1", "2", "9", "80", "1390", "47094", "3127145", "409428448"]
        assert coeffs(run_json(capsys, "expand-one", "--order", "0")) == ["1"]

    def test_expand_one_positive(self, capsys):
        env = run_json(capsys, "expand-one", "--order", "29")
        values = [int(c) for c in coeffs(env)]
        assert len(values) == 30
        assert all(v > 0 for v in values)

    def test_eval_root(self, capsys):
        row = run_json(capsys, "eval-root", "--j", "0", "--m", "0")["rows"][0]
        assert row["coeffs"] == ["1"] and row["level"] == 0
        row = run_json(capsys, "eval-root", "--j", "1", "--m", "2")["rows"][0]
        assert (row["level"], row["coeffs"], row["display"]) == (2, ["2", "-1"], "2 - i")

    def test_auto_reduce_notice(self, capsys):
        code, out, err = run(capsys, "eval-root", "--j", "2", "--m", "2")
        assert code == 0
        assert "reduced" in err
        row = json.loads(out)["rows"][0]
        assert (row["j"], row["m"], row["coeffs"]) == (1, 1, ["-1"])

    def test_taylor_root(self, capsys):
        env = run_json(capsys, "taylor-root", "--j", "0", "--m", "0", "--order", "3")
        assert [r["coeffs"] for r in env["rows"]] == [["1"], ["1"], ["2"], ["9"]]

    def test_w(self, capsys):
        env = run_json(capsys, "w", "--a", "2", "--order", "8", "--mode", "closed")
        assert coeffs(env) == ["-1", "2", "4", "-4", "8", "-8", "-8", "8"]
        row = run_json(capsys, "w", "--a", "-1", "--mode", "compare", "--order", "512")["rows"][0]
        assert row == {"solve_equals_closed": True, "residual_zero": True, "equals_u0": True}

    def test_radial_root_one(self, capsys):
        env = run_json(capsys, "radial", "--j", "0", "--m", "0", "--order", "0", "--t-min", "4", "--t-max", "10")
        res = [float(r["residual"]) for r in env["rows"]]
        assert len(res) == 7
        assert all(b < a for a, b in zip(res, res[1:]))
        assert all(r["conclusive"] and r["bits"] == 256 for r in env["rows"])

    def test_radial_minus_one(self, capsys):
        env = run_json(capsys, "radial", "--j", "1", "--m", "1", "--t-min", "4", "--t-max", "9")
        res = [float(r["residual"]) for r in env["rows"]]
        assert all(b < a for a, b in zip(res, res[1:]))
        assert res[-1] < 0.02

    def test_flatness(self, capsys):
        env = run_json(capsys, "flatness", "--j", "0", "--m", "0", "--order", "2", "--t-min", "10", "--t-max", "12")
        assert len(env["rows"]) == 3

    def test_split_digits_factorial(self, capsys):
        env = run_json(capsys, "split", "--order", "8")
        assert env["rows"][0] == {"k": 0, "u0": "1/2", "u_plus": "0", "u_minus": "1", "q_inf": "1"}
        env = run_json(capsys, "digits", "--start", "6", "--stop", "7")
        assert env["rows"][0]["z"] == 1
        assert coeffs(run_json(capsys, "factorial", "--n", "2")) == ["1", "-1", "-1", "1"]
        closed = run_json(capsys, "partial-sum", "--N", "9", "--closed")
        assert coeffs(closed) == coeffs(run_json(capsys, "partial-sum", "--N", "9"))
        assert coeffs(run_json(capsys, "corrected", "--N", "1")) == ["1/2", "1/2"]

    def test_verify_exact(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "exact", "--format", "json")
        assert code == 0
        assert all(r["passed"] for r in json.loads(out)["rows"])
        assert "PASS" in err


class TestExitCodes:
    def test_a_equal_one(self, capsys):
        code, _, err = run(capsys, "w", "--a", "1")
        assert code == 2
        assert "a != 1" in err

    def test_bad_rational(self, capsys):
        assert run(capsys, "w", "--a", "x/y")[0] == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["u0", "--order", "0"])
        assert exc.value.code == 2

    def test_budget(self, capsys):
        code, _, err = run(capsys, "expand-one", "--order", "600")
        assert code == 3
        assert "budget" in err

    def test_level(self, capsys, monkeypatch):
        monkeypatch.setenv("MAHLER_MAX_LEVEL", "3")
        assert run(capsys, "eval-root", "--j", "1", "--m", "4")[0] == 3

    def test_mutation_is_caught(self, capsys, monkeypatch):
        def corrupted(order):
            c = list(solve_u0(order).coeffs)
            if order > 7:
                c[7] = -c[7]
            return TruncatedSeries(tuple(c), order)

        monkeypatch.setattr(checks, "solve_u0", corrupted)
        code, out, err = run(capsys, "verify", "--suite", "all", "--format", "json")
        assert code == 1
        assert "FAIL" in err
        assert not all(r["passed"] for r in json.loads(out)["rows"])


class TestSerialization:
    def test_deterministic(self, capsys):
        a = run(capsys, "taylor-root", "--j", "1", "--m", "3", "--order", "3", "--format", "csv")
        b = run(capsys, "taylor-root", "--j", "1", "--m", "3", "--order", "3", "--format", "csv")
        assert a == b
        c = run(capsys, "radial", "--j", "1", "--m", "2", "--t-min", "6", "--t-max", "7")
        d = run(capsys, "radial", "--j", "1", "--m", "2", "--t-min", "6", "--t-max", "7")
        assert c == d

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_round_trip_exact(self, capsys, fmt):
        code, out, _ = run(capsys, "w", "--a=-3/7", "--order", "32", "--format", fmt)
        assert code == 0
        env = output.read(out, fmt)
        assert env["command"] == "w"
        assert env["params"]["a"] == "-3/7"
        assert [Fraction(r["coeff"]) for r in env["rows"]] == list(w_solve(Fraction(-3, 7), 32).coeffs)

    def test_csv_list_cells(self, capsys):
        code, out, _ = run(capsys, "eval-root", "--j", "1", "--m", "3", "--format", "csv")
        row = output.read(out, "csv")["rows"][0]
        cells = [int(c) for c in output.parse_list(row["coeffs"])]
        z = cmath.exp(2j * cmath.pi / 8)
        value = sum(c * z**k for k, c in enumerate(cells))
        assert abs(value - complex(float(row["re"]), float(row["im"]))) < 1e-12
        assert cells == [-1, 2, 1, -1]

    def test_no_floats_for_exact_values(self, capsys):
        env = run_json(capsys, "u0", "--order", "5")
        assert all(isinstance(r["coeff"], str) for r in env["rows"])

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "mahler", "u0", "--order", "3", "--format", "csv"],
            capture_output=True,
            text=True,
            check=True,
        )
        assert proc.stdout.splitlines()[-3:] == ["0,1/2", "1,1/2", "2,-1/2"]
