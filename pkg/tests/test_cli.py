import pytest
from click.testing import CliRunner

from cartdiff.cli import cli
from cartdiff.poly import POLY, parse_poly

from helpers import oracles

EX = oracles()["examples"]


def run(*args, env=None):
    return CliRunner().invoke(cli, list(args), env=env)


def same(text_a, text_b, header):
    return POLY.equal(parse_poly(header + text_a).fmap, parse_poly(header + text_b).fmap)


@pytest.mark.parametrize("args,want", [
    (("diff", "x^3+x"), "3*x^2*y + y"),
    (("diff", "0"), "0"),
    (("lin", "x^2*y + 3*x + z + 1"), "3*x + z"),
    (("plin", "--ctx", "z", "z^3*x + z^2*x^3 + x + 1"), "z^3*x + x"),
    (("diff", "--ctx", "z", "z*x^2"), "2*z*x*y"),
    (("diff", "--model", "smooth", "exp(x)*cos(y)"), "exp(x)*cos(y)*z - exp(x)*sin(y)*w"),
])
def test_golden_outputs(args, want):
    res = run(*args)
    assert res.exit_code == 0, res.stderr
    assert res.stdout.strip() == want


def test_derivative_matches_oracle_up_to_term_order():
    res = run("diff", "x^2*y")
    assert same(res.stdout.strip(), EX["d_x2y"].replace("a", "z").replace("b", "w"),
                "args(x,y,z,w) ")


@pytest.mark.parametrize("args", [
    ("diff", "x +* y"),
    ("lin", "(x"),
    ("plin", "x^2"),
    ("plin", "--ctx", "q", "x"),
    ("diff", "--model", "smooth", "tan(x)"),
    ("laws", "--model", "poly", "--suite", "closed"),
    ("laws", "--mutant", "no-such"),
    ("closed", "D(g)"),
    ("closed", "D(f)", "--def", "f=x^2", "--at", "1,2,3"),
])
def test_input_errors_exit_2(args):
    res = run(*args)
    assert res.exit_code == 2
    assert res.stdout == ""
    assert res.stderr.strip()


def test_parse_errors_show_a_caret():
    res = run("diff", "x +* y")
    assert res.stderr.startswith("error:")
    assert res.stderr.rstrip().endswith("^")


def test_unknown_model_is_a_usage_error():
    assert run("laws", "--model", "rings").exit_code == 2
    assert run("laws", "--seed", "-1").exit_code == 2


def test_laws_text_report():
    res = run("laws", "--model", "poly", "--suite", "cd", "--seed", "3", "--budget", "20")
    assert res.exit_code == 0, res.stdout
    lines = res.stdout.splitlines()
    assert lines[0] == "# model=poly suite=cd seed=3 budget=20 eq=exact"
    assert all(line.startswith("PASS") for line in lines[1:-1])
    assert lines[-1].endswith("0 fail, 0 skip")


def test_structured_output_is_byte_identical_across_runs():
    args = ("laws", "--model", "tower", "--suite", "l", "--seed", "9", "--budget", "15",
            "--format", "structured")
    one, two = run(*args), run(*args)
    assert one.exit_code == 0
    assert one.stdout == two.stdout
    for line in one.stdout.splitlines():
        assert line.startswith("law=") and " model=tower seed=9 cases=15 status=pass eq=exact" in line


def test_seed_falls_back_to_the_environment():
    args = ("laws", "--suite", "cd", "--budget", "2")
    assert "seed=17" in run(*args, env={"CARTDIFF_SEED": "17"}).stdout.splitlines()[0]
    assert "seed=0" in run(*args, env={"CARTDIFF_SEED": ""}).stdout.splitlines()[0]
    assert "seed=5" in run(*args, "--seed", "5", env={"CARTDIFF_SEED": "17"}).stdout
    assert run(*args, env={"CARTDIFF_SEED": "abc"}).exit_code == 2


def test_mutant_run_fails_with_counterexamples():
    res = run("laws", "--suite", "cd", "--mutant", "cd3-zero", "--budget", "30", "--seed", "1")
    assert res.exit_code == 1
    assert "mutant=cd3-zero" in res.stdout.splitlines()[0]
    assert "FAIL  CD.3" in res.stdout
    assert "counterexample=case:" in res.stdout


def test_sampled_contract_is_echoed():
    res = run("laws", "--model", "smooth", "--suite", "cd", "--budget", "3", "--tol", "1e-8",
              "--points", "50")
    assert res.exit_code == 0
    assert "eq=sampled:1e-08,50" in res.stdout.splitlines()[0]


def test_interchange_demo():
    res = run("demo", "interchange")
    assert res.exit_code == 0
    rows = dict(line.split(" = ") for line in res.stdout.splitlines() if " = " in line)
    hdr = "args(x,y) "
    assert same(rows["L0[f]    "], "2*x*y^3 + x*y + 3*x", hdr)
    assert same(rows["L1[f]    "], "x*y + 4*y", hdr)
    assert same(rows["L1[L0[f]]"], "x*y", hdr) and same(rows["L0[L1[f]]"], "x*y", hdr)
    assert res.stdout.rstrip().endswith("composites agree: yes")


def test_c1_demo():
    res = run("demo", "c1")
    assert res.exit_code == 0
    assert "|x|^(3/2)" in res.stdout


def test_closed_terms():
    res = run("closed", "D(f)", "--def", "f=x^3+x", "--at", "2,1")
    assert res.exit_code == 0, res.stderr
    assert res.stdout.splitlines() == ["(R*R) -> R", "13"]
    res = run("closed", "uncurry(L(curry(f)))", "--def", "f=ctx(z) args(x) z*x + x^3",
              "--at", "3,9")
    assert res.stdout.splitlines() == ["(R*R) -> R", "27"]
    res = run("closed", "curry(f)", "--def", "f=ctx(z) args(x) z*x", "--at", "1")
    assert res.stdout.splitlines()[-1] == "<function [R,R]>"
    res = run("closed", "then(eta(R,[R,R]), mu(R,R))")
    assert res.stdout.splitlines() == ["[R,R] -> [R,R]"]
