"""End-to-end acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest.
"""
import random
import sys
import time
from pathlib import Path

import pytest
from click.testing import CliRunner

sys.path.insert(0, str(Path(__file__).parent))

from cartdiff.biproduct import BIPRODUCT  # noqa: E402
from cartdiff.cli import cli  # noqa: E402
from cartdiff.laws import replay, run_law, structure_laws  # noqa: E402
from cartdiff.mutants import MUTANTS  # noqa: E402
from cartdiff.poly import POLY, parse_poly  # noqa: E402
from cartdiff.shapes import R  # noqa: E402
from cartdiff.smooth import SMOOTH, SampledEq, finite_difference_gap, parse_smooth  # noqa: E402
from cartdiff.suites import select  # noqa: E402
from cartdiff.tower import shift, tower_linearize, tower_of  # noqa: E402


def _canon(text, names="x,y,z,w"):
    return parse_poly(f"args({names}) {text}").fmap


def _same(a, b, names="x,y,z,w"):
    return POLY.equal(_canon(a, names), _canon(b, names))


def _run(model_id, laws, budget, seed, contract):
    return [run_law(law, model_id, seed, budget, contract) for law in laws]


def _verdict(reports):
    bad = [r.line() for r in reports if r.status != "pass"]
    return not bad, "; ".join(bad)


# ------------------------------------------------------------ criteria


def golden_examples():
    runner = CliRunner()

    def out(*args):
        res = runner.invoke(cli, list(args))
        assert res.exit_code == 0, res.output
        return res.stdout.strip()

    checks = [
        _same(out("lin", "x^2*y+3*x+z+1"), "3*x+z"),
        _same(out("plin", "--ctx", "z", "z^3*x+z^2*x^3+x+1"), "z^3*x+x", "z,x"),
        _same(out("diff", "x^3+x"), "3*x^2*y+y"),
    ]
    rows = dict(line.split(" = ") for line in out("demo", "interchange").splitlines()
                if " = " in line)
    rows = {k.strip(): v for k, v in rows.items()}
    checks += [_same(rows["L0[f]"], "x*y+2*x*y^3+3*x", "x,y"),
               _same(rows["L1[f]"], "x*y+4*y", "x,y"),
               _same(rows["L1[L0[f]]"], "x*y", "x,y"),
               _same(rows["L0[L1[f]]"], "x*y", "x,y")]
    return all(checks), f"{sum(checks)}/{len(checks)} goldens"


POLY_AXIOMS = {f"CD.{i}" for i in range(1, 8)} | {f"L.{i}" for i in range(1, 7)} | \
    {"L.7", "L.7.a", "L.8"}


def poly_axioms():
    sel = select("poly", "all", seed=42)
    laws = [law for law in sel.laws if law.id in POLY_AXIOMS]
    assert {law.id for law in laws} == POLY_AXIOMS
    reps = _run("poly", laws, 500, 42, sel.contract)
    ok, bad = _verdict(reps)
    ok = ok and all(r.cases >= 500 for r in reps)
    return ok, bad or f"{len(reps)} laws x 500 cases"


def poly_round_trips():
    sel = select("poly", "roundtrip", seed=42)
    laws = [law for law in sel.laws if law.id in ("RT.D", "RT.Lc")]
    reps = _run("poly", laws, 200, 42, sel.contract)
    ok, bad = _verdict(reps)
    return ok and all(r.cases >= 200 for r in reps), bad or "D and Lc round trips on 200 maps"


def interchange_equivalence():
    sel = select("poly", "system", seed=42)
    eq = [law for law in sel.laws if law.id == "L.7~L.7.a"]
    reps = _run("poly", eq, 200, 42, sel.contract)
    lift = [law for law in structure_laws(POLY) if law.id == "cat.lift-interchange"]
    reps += _run("poly", lift, 200, 42, sel.contract)
    ok, bad = _verdict(reps)
    return ok, bad or "same verdicts on 200 maps; lift identity exact on 200 shapes"


def biproduct_model():
    sel = select("biproduct", "all", seed=42)
    reps = _run("biproduct", sel.laws, 500, 42, sel.contract)
    ok, bad = _verdict(reps)
    rng = random.Random(42)
    m = BIPRODUCT
    linear = 0
    for _ in range(500):
        f = m.random_map(rng, m.random_shape(rng, 3), m.random_shape(rng, 3))
        linear += m.equal(m.compose(m.inject1(f.dom, f.dom), m.differential(f)), f)
    ok = ok and linear == 500
    return ok, bad or f"{len(reps)} laws pass; {linear}/500 maps linear"


def tower_model():
    rng = random.Random(42)
    agree = 0
    for _ in range(120):
        f = POLY.random_map(rng, POLY.random_shape(rng, 3), POLY.random_shape(rng, 2))
        t = tower_of(f, 3)
        d, lin = shift(t), tower_linearize(t)
        df, lf = POLY.differential(f), POLY.linearize(f)
        ok = all(POLY.equal(d.entry(n), tower_of(df, 2).entry(n)) for n in range(3))
        ok = ok and POLY.equal(lin.entry(0), lf)
        for n in range(1, 4):
            a_n = lin.entry(n - 1).dom
            ok = ok and POLY.equal(lin.entry(n), POLY.compose(POLY.proj1(a_n, a_n),
                                                              lin.entry(n - 1)))
        agree += ok
    return agree == 120, f"{agree}/120 maps agree entrywise at depth 3"


def smooth_model():
    f = parse_smooth("exp(x)*cos(y)").fmap
    lin_gap = SampledEq(tol=1e-9).max_deviation(SMOOTH.linearize(f), parse_smooth("x + 0*y").fmap)
    rng = random.Random(42)
    fd = max(finite_difference_gap(SMOOTH.random_map(rng, SMOOTH.random_shape(rng, 3), R))
             for _ in range(100))
    sel = select("smooth", "cd", seed=42)
    cd7 = [law for law in sel.laws if law.id == "CD.7"]
    ok7, bad = _verdict(_run("smooth", cd7, 100, 42, sel.contract))
    ok = lin_gap <= 1e-9 and fd < 1e-4 and ok7
    return ok, bad or f"L gap {lin_gap:.1e}; FD gap {fd:.1e}; CD.7 sampled at 1e-6"


CLOSED_LAWS = {"L.lambda", "L.ev", "EL.1", "EL.2", "EL.3", "CC.monad",
               "RT.exp-D", "RT.closed-D", "RT.closed-L", "RT.closed-Lc"}


def closed_model():
    sel = select("closed", "closed", seed=42)
    laws = [law for law in sel.laws if law.id in CLOSED_LAWS]
    assert {law.id for law in laws} == CLOSED_LAWS
    reps = _run("closed", laws, 100, 42, sel.contract)
    ok, bad = _verdict(reps)
    ok = ok and all(r.cases >= 100 for r in reps) and sel.contract == "sampled:1e-06,100"
    return ok, bad or f"{len(reps)} laws x 100 cases at {sel.contract}"


KILL_BUDGET = {"poly": 60, "biproduct": 60, "tower": 40, "smooth": 25, "closed": 20}


def mutant_killing():
    killed = []
    for name, mu in sorted(MUTANTS.items()):
        model_id = mu.models[0]
        sel = select(model_id, "all", mutant=name, seed=42)
        for law in sorted(sel.laws, key=lambda law: law.id):
            rep = run_law(law, model_id, 42, KILL_BUDGET[model_id], sel.contract)
            if rep.status == "fail":
                if replay(law, rep) == rep.counterexample:
                    killed.append(name)
                break
    ok = len(killed) == len(MUTANTS) >= 10
    return ok, f"{len(killed)}/{len(MUTANTS)} mutants killed with replayable counterexamples"


CRITERIA = [
    (1, "golden examples", golden_examples, 1.0),
    (2, "poly axiom suite", poly_axioms, 60.0),
    (3, "poly round trips", poly_round_trips, 30.0),
    (4, "interchange forms equivalent", interchange_equivalence, None),
    (5, "biproduct model", biproduct_model, None),
    (6, "tower model", tower_model, None),
    (7, "smooth model", smooth_model, None),
    (8, "closed model", closed_model, 120.0),
    (9, "mutant killing", mutant_killing, None),
]


def evaluate(number, title, check, limit):
    start = time.perf_counter()
    ok, detail = check()
    secs = time.perf_counter() - start
    in_time = limit is None or secs < limit
    budget = f" (limit {limit:g}s)" if limit else ""
    status = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {number} {status}: {title}: {detail}; {secs:.2f}s{budget}"
    return ok and in_time, line


@pytest.mark.parametrize("number,title,check,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, limit, capsys):
    ok, line = evaluate(number, title, check, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
