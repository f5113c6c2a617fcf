import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from monoidal.cli import main
from monoidal.completion import tower_of
from monoidal.expr import evaluate, render
from monoidal.monoid_ring import element_to_json
from monoidal.rings import QQ, ZZ, QQi
from monoidal.series import euler_suite, named_series

GOLDEN = json.loads((Path(__file__).parent / "golden" / "cli.json").read_text())


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["argv"]))
def test_golden(case):
    code, out, err = run(case["argv"])
    assert (code, out, err) == (case["exit"], case["stdout"], case["stderr"])


def test_golden_count():
    assert len(GOLDEN) >= 20


@pytest.mark.parametrize("argv,expected", [
    (["eval", "invert(1+x)", "--ring", "rat", "--order", "6"], "1 - x + x^2 - x^3 + x^4 - x^5 + O(x^6)\n"),
    (["eval", "sin(x)^2 + cos(x)^2", "--ring", "rat", "--order", "5"], "1 + O(x^5)\n"),
])
def test_documented_examples(argv, expected):
    assert run(argv) == (0, expected, "")


def test_documented_error_example():
    code, out, err = run(["eval", "exp(x)", "--ring", "mod:5"])
    assert code == 1 and out == ""
    assert err.startswith("error: CharacteristicNotZero: ")


def test_default_order_from_environment(monkeypatch):
    monkeypatch.setenv("MONOIDAL_DEFAULT_ORDER", "3")
    assert run(["eval", "geom(x)"])[1] == "1 + x + x^2 + O(x^3)\n"
    assert run(["eval", "geom(x)", "--order", "2"])[1] == "1 + x + O(x^2)\n"
    monkeypatch.delenv("MONOIDAL_DEFAULT_ORDER")
    assert run(["eval", "geom(x)"])[1].endswith("O(x^10)\n")
    monkeypatch.setenv("MONOIDAL_DEFAULT_ORDER", "ten")
    assert run(["eval", "geom(x)"])[0] == 2


def test_flags_before_or_after_subcommand():
    assert run(["--ring", "int", "eval", "x+x"]) == run(["eval", "x+x", "--ring", "int"]) == (0, "2*x\n", "")


def test_usage_errors():
    assert run(["eval", "x", "--ring", "real"])[0] == 2
    assert run(["eval", "x", "--order", "0"])[0] == 2
    assert run(["tower", "x", "--levels", "0"])[0] == 2
    assert run(["series", "exp", "--param", "x"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_strict_vars_accepts_declared():
    assert run(["eval", "x*y", "--vars", "x,y", "--strict-vars"]) == (0, "x*y\n", "")
    assert run(["series", "exp", "--var", "t", "--vars", "x", "--strict-vars"])[0] == 1


def test_json_series_and_tower():
    code, out, _ = run(["eval", "exp(x)", "--order", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out) == named_series("exp", QQ).to_json(2)
    code, out, _ = run(["tower", "1+x", "--levels", "2", "--format", "json"])
    levels = json.loads(out)
    assert [lv["level"] for lv in levels] == [1, 2]
    assert levels[1]["poly"]["terms"][1] == {"elem": [{"var": "x", "exp": 1}], "coef": "1/1"}


def test_checks():
    for suite in ("euler", "derivlaws", "completion"):
        code, out, _ = run(["check", suite, "--order", "6"])
        assert code == 0, out
        assert "FAIL" not in out
    code, out, _ = run(["check", "euler", "--format", "json", "--order", "4"])
    assert json.loads(out)["ok"] is True


@pytest.mark.parametrize("expr,ring,order", [
    ("invert(1+x)", QQ, 6), ("(x+y)^3", ZZ, 10), ("exp(I*x)", QQi, 4), ("deriv(sin(x), x, 2)", QQ, 7),
])
def test_cli_is_a_thin_shell(expr, ring, order):
    code, out, _ = run(["eval", expr, "--ring", ring.selector, "--order", str(order)])
    assert out == render(evaluate(expr, ring), order) + "\n"


def test_thin_shell_for_other_commands():
    assert run(["tower", "exp(x)", "--levels", "3"])[1] == tower_of(evaluate("exp(x)", QQ)).to_text(3) + "\n"
    assert run(["series", "cos", "--order", "5"])[1] == named_series("cos", QQ).to_text(5) + "\n"
    assert run(["check", "euler", "--order", "5"])[1] == str(euler_suite(QQi, 5)) + "\n"
    assert json.loads(run(["eval", "x-1", "--format", "json"])[1]) == element_to_json(evaluate("x-1", QQ))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monoidal", "eval", "(1+x)^2", "--ring", "int"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "1 + 2*x + x^2\n"
