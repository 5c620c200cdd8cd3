import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cartdiff import combinators as C
from cartdiff.closed import CLOSED as M, ClosedEq, Closure
from cartdiff.closed import _assemble
from cartdiff.poly import POLY, format_map
from cartdiff.shapes import R, Hom, Prod, ShapeError
from cartdiff.smooth import SmoothMap, parse_smooth

from helpers import oracles

EX = oracles()["examples"]
seeds = st.integers(0, 2 ** 32 - 1)


def embed(text):
    return M.from_smooth(parse_smooth(text).fmap, text)


def at(f, *xs):
    return f(tuple(np.array([float(x)]) for x in xs) if len(xs) > 1 else np.array([float(xs[0])]))


def test_derivative_of_a_cubic():
    f = embed("x^3 + x")
    assert at(M.differential(f), 2, 1)[0] == pytest.approx(float(EX["d_x3_x_at_2_1"]))
    assert at(M.d_from_exp(f), 2, 1)[0] == pytest.approx(13.0)
    assert M.equal(M.d_from_exp(f), M.differential(f))


def test_linearizations():
    assert M.equal(M.linearize(embed("sin(x)")), M.identity(R))
    g = embed("ctx(c) args(a) c*a + a^3")
    assert M.equal(M.partial_linearize(R, g), embed("ctx(c) args(a) c*a"))
    assert M.equal(M.partial_from_total(g), embed("ctx(c) args(a) c*a"))
    assert M.equal(M.partial_linearize(R, embed("ctx(c) args(a) c^2 + 0*a")),
                   M.zero(Prod(R, R), R))
    ev = M.ev(R, R)
    assert M.equal(M.partial_linearize(R, ev), ev)


def test_hom_structure_examples():
    c, a = R, Prod(R, R)
    eta, mu = M.eta(c, Hom(c, a)), M.mu(c, a)
    assert M.equal(M.compose(eta, mu), M.identity(Hom(c, a)))
    assert M.equal(M.hom_map(M.identity(c), M.identity(a)), M.identity(Hom(c, a)))
    assert M.equal(M.curry(M.proj1(c, a)), M.eta(c, a))
    th, inv = M.theta(c, R, R), M.theta_inv(c, R, R)
    assert M.equal(M.compose(th, inv), M.identity(th.dom))
    assert M.equal(M.compose(inv, th), M.identity(inv.dom))


def test_sampled_equality_sees_through_closures():
    f = M.curry(embed("args(c,a) c*a"))
    g = M.curry(embed("args(c,a) c*a + 1/1000*c^2"))
    assert M.equal(f, f) and not M.equal(f, g)
    assert ClosedEq(tol=1e-1).equal(f, g)
    assert isinstance(f(np.array([1.0])), Closure)


def test_shape_errors():
    with pytest.raises(ShapeError):
        M.uncurry(embed("x"))
    with pytest.raises(ShapeError):
        M.curry(embed("x"))
    with pytest.raises(ShapeError):
        M.from_smooth(M.identity(Hom(R, R)))


@given(seeds)
def test_dual_numbers_match_polynomial_derivatives(seed):
    rng = random.Random(seed)
    p = POLY.random_map(rng, POLY.random_shape(rng, 3), R)
    n = p.nvars
    names = [f"x{i + 1}" for i in range(n)]
    text = f"args({','.join(names)}) " + format_map(p, names)
    terms = parse_smooth(text).fmap.comps
    f = M.from_smooth(SmoothMap(p.dom, R, terms))
    dp = POLY.differential(p)
    pt = [rng.randint(-4, 4) / rng.randint(1, 4) for _ in range(2 * n)]
    want = float(POLY.eval(dp, pt)[0])
    value = _assemble(dp.dom, iter(np.array([x]) for x in pt))
    got = float(np.ravel(M.differential(f)(value))[0])
    assert got == pytest.approx(want, rel=1e-9, abs=1e-9)


@given(seeds)
def test_random_maps_satisfy_derivative_routes(seed):
    rng = random.Random(seed)
    a, b = M.random_shape(rng, 2), M.random_shape(rng, 2)
    f = M.random_map(rng, a, b)
    assert M.equal(M.d_from_exp(f), M.differential(f))
    assert M.equal(M.linearize(f), C.l_from_d(M, M.differential)(f))


def test_escaped_infinitesimals_are_reported():
    leak = M.mk(R, R, lambda v: v, "1")
    from cartdiff.closed import fresh_tag, vperturb
    tag = fresh_tag()
    dual = vperturb(np.zeros(3), np.ones(3), tag)
    with pytest.raises(TypeError):
        M.cfg.values_close(dual, dual, R, M.cfg.stream("x"))
    assert M.render(leak) == "R->R:1"
