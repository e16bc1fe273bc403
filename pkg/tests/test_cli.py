import io
import subprocess
import sys

import pytest

from orderseries.cli import main
from orderseries.series import ChainSeries


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("eval", "d(mu(1,1))"), "2*z[4] + 3*z[5]\n"),
        (("eval", "--nonstrict", "d(mu(1,1))"), "-2*w[4] + 3*w[5]\n"),
        (("expand", "d(1)", "--to", "4"), "0,0,0,1,6\n"),
        (("expand", "z[3] + 2*z[4]", "--to", "4"), "0,0,0,1,6\n"),
        (("expand", "u(1,1)", "--to", "4", "--nonstrict"), "0,1,4,9,16\n"),
        (("expand", "w[2]", "--to", "4", "--nonstrict"), "0,1,3,6,10\n"),
        (("hstar", "d(c2)"), "(1,2,0,0,0,0)\n"),
        (("hstar", "2*z[4] + 3*z[5]", "--to", "4"), "(1,2,0,0,0,0)\n0,1,8,33,98\n"),
        (("invariants", "d(1)"), "points=4 max_chain=3 betti=1 components=1 mu=0 dee=1 leaves=1\n"),
        (("solve", "3*z[6] + 4*z[7]"), "mu(1,d(c3)) mu(d(c3),1)\n"),
        (("solve", "2*z[3] + 3*z[4]"), "no poset found\n"),
        (("oracle", "d(c2)", "--to", "5"), "0,0,0,0,2,13\n"),
        (("nhg", "1,1", "--draws", "2", "--outcome", "1,1"), "1/3\n"),
        (("nhg", "2,3", "--draws", "3"), "normalization 1/1\nE[v_1] 6/5\nE[v_2] 9/5\n"),
        (("verify", "noprod", "--v-max", "5"), "noprod PASS checked=15 v_max=5\n"),
    ],
)
def test_text_output(argv, expected):
    assert run(*argv) == (0, expected)


def test_eval_round_trips():
    code, out = run("eval", "mu(u(1,c2),d(1))")
    assert code == 0
    assert str(ChainSeries.parse(out.strip())) == out.strip()


def test_structured_records():
    code, out = run("eval", "d(c2)", "--format", "structured")
    assert code == 0
    fields = dict(f.split("=", 1) for f in out.rstrip("\n").split("\t"))
    assert fields == {
        "record": "eval",
        "expr": "d(c2)",
        "size": "5",
        "strict": "2*z[4] + 3*z[5]",
        "nonstrict": "-2*w[4] + 3*w[5]",
    }
    assert run("eval", "d(c2)", "--format", "structured") == (code, out)


def test_structured_solve():
    code, out = run("solve", "3*z[6] + 4*z[7]", "--format", "structured")
    assert code == 0
    assert out == "record=class\tindex=0\tseries=3*z[6] + 4*z[7]\tsize=2\tmembers=mu(1,d(c3)) mu(d(c3),1)\n"


def test_structured_verify_failure():
    code, out = run("verify", "noprod", "--v-max", "3", "--perturb", "1", "--format", "structured")
    assert code == 1
    assert "passed=false" in out and "params=n:1,v:1" in out and "lhs=1\trhs=2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "mu(1"),
        ("solve", "z[3] + z[4]"),
        ("solve", "3*z[6] + 4*z[7]", "--sp", "--max-points", "5"),
        ("hstar", "z[1] +"),
        ("nhg", "1,2", "--draws", "3", "--outcome", "1,1"),
        ("verify", "stirling"),
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    code, _ = run(*argv)
    assert code == 1


def test_error_message_names_the_problem(capsys):
    run("solve", "z[3] + z[4]")
    assert "alternating sum is 0" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("expand", "d(1)"),
        ("expand", "d(1)", "--to", "-1"),
        ("verify", "noprod", "--p-max", "3"),
        ("verify", "nonsense"),
        ("expand", "w[2]", "--to", "3"),
        ("solve", "z[2]", "--jobs", "0"),
        ("nhg", "1,x", "--draws", "2"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orderseries", "expand", "d(1)", "--to", "4"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "0,0,0,1,6\n"
