import pytest
from hypothesis import given, settings, strategies as st

from cartdiff import combinators as C
from cartdiff.laws import LawReport, case_rng, recheck_inputs, replay, run_law, run_suite
from cartdiff.mutants import MUTANTS
from cartdiff.poly import POLY, format_map, parse_poly
from cartdiff.shapes import ONE, R, Prod
from cartdiff.suites import UsageError, build_laws, make_model, select

from helpers import oracles, poly, same_poly

EX = oracles()["examples"]
P = POLY


# ------------------------------------------------------------ combinators


def test_derivative_rebuilt_from_the_system():
    d = C.d_from_system(P, P.partial_linearize)
    f = poly("x^3 + x")
    assert format_map(d(f), ["x", "y"]) == "3*x^2*y + y"
    assert P.equal(d(f), P.differential(f))


def test_total_linearization_from_the_system():
    f = parse_poly("args(x,y) x*y + 2*x*y^3 + 3*x + 4*y").fmap
    back = C.total_l_from_system(P, P.partial_linearize)(f)
    assert format_map(back, ["x", "y"]) == "3*x + 4*y"


def test_partial_pair_and_interchange():
    f = parse_poly("args(x,y) x*y + 2*x*y^3 + 3*x + 4*y").fmap
    f = P.compose(P.proj1(ONE, f.dom), f)
    l0, l1 = C.partial_pair(P, P.partial_linearize, ONE, f)
    names = ["x", "y"]
    assert same_poly(P.compose(P.inject1(ONE, l0.dom.right), l0), "2*x*y^3 + x*y + 3*x", names)
    assert same_poly(P.compose(P.inject1(ONE, l1.dom.right), l1), "x*y + 4*y", names)
    L0, L1 = C.partial_ops(P, P.partial_linearize, ONE)
    assert P.equal(L1(L0(f)), L0(L1(f)))
    assert same_poly(P.compose(P.inject1(ONE, f.dom.right), L1(L0(f))), "x*y", names)


def test_derivative_in_context():
    f = parse_poly("ctx(z) args(x) z*x^2").fmap
    dc = C.d_in_context(P, P.differential, R)(f)
    assert same_poly(dc, EX["dc_z_x2"], ["z", "x", "y"])


def test_context_must_match():
    f = parse_poly("ctx(z) args(x) z*x^2").fmap
    with pytest.raises(Exception, match="context"):
        C.lc_from_d(P, P.differential)(Prod(R, R), f)


# ------------------------------------------------------------ runner


def test_case_streams_are_keyed_by_seed_law_and_index():
    a = case_rng(7, "CD.1", 3).random()
    assert a == case_rng(7, "CD.1", 3).random()
    assert a != case_rng(7, "CD.1", 4).random()
    assert a != case_rng(8, "CD.1", 3).random()
    assert a != case_rng(7, "CD.2", 3).random()


def test_reports_are_deterministic():
    sel = select("poly", "cd")
    one = [r.line() for r in run_suite(sel.laws, "poly", 11, 25, sel.contract)]
    two = [r.line() for r in run_suite(select("poly", "cd").laws, "poly", 11, 25, sel.contract)]
    assert one == two
    assert all("status=pass" in line for line in one)


@given(st.text(alphabet="abcdefghij.:;,()*+-0123456789xy", min_size=1, max_size=30),
       st.integers(0, 10 ** 6), st.integers(0, 500))
@settings(max_examples=50)
def test_report_line_round_trip(payload, seed, index):
    rep = LawReport("CD.2", "poly", seed, index + 1, "fail", "exact",
                    f"case:{index};inputs:{payload}", index)
    back = LawReport.parse_line(rep.line())
    assert back.line() == rep.line()
    assert back.case_index == index


def test_unknown_names_are_usage_errors():
    with pytest.raises(UsageError):
        make_model("rings")
    with pytest.raises(UsageError):
        build_laws("poly", P, "everything")
    with pytest.raises(UsageError):
        build_laws("poly", P, "closed")
    with pytest.raises(UsageError):
        build_laws("poly", P, "cd", mutant="nope")
    with pytest.raises(UsageError):
        build_laws("biproduct", make_model("biproduct"), "cd", mutant="d-at-zero")


def test_every_suite_builds_for_every_model():
    for model_id in ("poly", "biproduct", "tower", "smooth", "closed"):
        m = make_model(model_id)
        ids = [law.id for law in build_laws(model_id, m, "all")]
        assert len(ids) == len(set(ids))
        assert {"CD.1", "CD.7", "L.1", "L.6", "L.7", "L.8"} <= set(ids)


# ------------------------------------------------------------ mutants

KILL_BUDGET = {"poly": 60, "biproduct": 60, "tower": 40, "smooth": 25, "closed": 20}


def _kill(model_id, mutant):
    sel = select(model_id, "all", mutant=mutant, seed=3)
    for law in sorted(sel.laws, key=lambda law: law.id):
        rep = run_law(law, model_id, 3, KILL_BUDGET[model_id], sel.contract, shrink=False)
        if rep.status == "fail":
            return law, rep
    return None, None


CASES = [(model_id, name) for name, mu in sorted(MUTANTS.items()) for model_id in mu.models]


@pytest.mark.parametrize("model_id,name", CASES, ids=[f"{m}-{n}" for m, n in CASES])
def test_mutant_is_killed_and_replays(model_id, name):
    law, rep = _kill(model_id, name)
    assert rep is not None, f"{name} survived on {model_id}"
    assert replay(law, rep, shrink=False) == rep.counterexample
    assert recheck_inputs(law, rep, rep.inputs) is not None


def test_shrinking_keeps_the_failure_and_never_grows():
    sel = select("poly", "cd", mutant="d-double", seed=5)
    law = next(law for law in sel.laws if law.id == "CD.3")
    raw = run_law(law, "poly", 5, 50, sel.contract, shrink=False)
    small = run_law(law, "poly", 5, 50, sel.contract, shrink=True)
    assert raw.status == small.status == "fail"
    assert raw.case_index == small.case_index
    assert len(small.counterexample) <= len(raw.counterexample)
    assert recheck_inputs(law, small, small.inputs) is not None
    assert replay(law, small) == small.counterexample
