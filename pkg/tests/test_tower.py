import random

import pytest
from hypothesis import given, settings, strategies as st

from cartdiff import combinators as C
from cartdiff.poly import POLY, format_map, parse_poly
from cartdiff.shapes import R, Prod, ShapeError
from cartdiff.tower import (TOWER as T, DepthError, TowerModel, from_entries, shift, tower_eq,
                            tower_linearize, tower_of, tower_partial_linearize)

from helpers import oracles, poly, same_poly

seeds = st.integers(0, 2 ** 32 - 1)


def random_poly(seed, k=3):
    rng = random.Random(seed)
    return rng, POLY.random_map(rng, POLY.random_shape(rng, k), POLY.random_shape(rng, 2))


def test_entries_of_a_square():
    t = tower_of(poly("x^2"), 2)
    want = oracles()["examples"]["tower_x2"]
    names = ["x", "y", "a", "b"]
    for n, text in enumerate(want):
        assert same_poly(t.entry(n), text, names[:2 ** n])


def test_identity_and_zero_towers():
    ident = T.identity(R)
    assert POLY.equal(ident.entry(1), POLY.proj1(R, R))
    assert POLY.equal(ident.entry(2), POLY.compose(POLY.proj1(Prod(R, R), Prod(R, R)),
                                                   POLY.proj1(R, R)))
    z = T.zero(Prod(R, R), R)
    assert all(not any(e.comps) for e in z.entries)


def test_depth_errors():
    t = tower_of(poly("x^3"), 1)
    with pytest.raises(DepthError):
        shift(shift(t))
    with pytest.raises(DepthError):
        t.entry(2)
    with pytest.raises(DepthError):
        t.truncate(3)
    with pytest.raises(DepthError):
        tower_linearize(tower_of(poly("x"), 0))
    with pytest.raises(DepthError):
        tower_eq(t, tower_of(poly("x^3"), 2))
    with pytest.raises(DepthError):
        tower_of(poly("x"), -1)


def test_linearize_examples():
    f = poly("x^2*y + 3*x + z + 1")
    lin = tower_linearize(tower_of(f, 3))
    assert format_map(lin.entry(0), ["x", "y", "z"]) == "3*x + z"
    assert tower_eq(tower_linearize(lin), lin)
    a = f.dom
    assert POLY.equal(lin.entry(1), POLY.compose(POLY.proj1(a, a), lin.entry(0)))


def test_partial_linearize_checks_its_context():
    f = parse_poly("ctx(z) args(x) z*x + x^2").fmap
    t = tower_of(f, 2)
    lc = tower_partial_linearize(R, t)
    assert same_poly(lc.entry(0), "z*x", ["z", "x"])
    with pytest.raises(ShapeError):
        tower_partial_linearize(Prod(R, R), t)


def test_towers_render_and_parse():
    t = tower_of(poly("x^2 + x"), 2)
    back = T.parse_morphism(T.render(t))
    assert back.depth == 2 and tower_eq(back, t)
    with pytest.raises(ValueError):
        T.parse_morphism("x^2")


@given(seeds)
def test_double_shift_is_the_second_derivative_tower(seed):
    _, f = random_poly(seed)
    t = tower_of(f, 3)
    assert tower_eq(shift(shift(t)), tower_of(POLY.differential(POLY.differential(f)), 1))


@settings(max_examples=100)
@given(seeds)
def test_agrees_with_polynomial_combinators(seed):
    rng, f = random_poly(seed)
    t = tower_of(f, 3)
    assert POLY.equal(shift(t).entry(0), POLY.differential(f))
    assert POLY.equal(tower_linearize(t).entry(0), POLY.linearize(f))
    c, a = POLY.random_shape(rng, 2), POLY.random_shape(rng, 2)
    g = POLY.random_map(rng, Prod(c, a), R)
    assert POLY.equal(tower_partial_linearize(c, tower_of(g, 3)).entry(0),
                      POLY.partial_linearize(c, g))


@given(seeds)
def test_truncation_commutes_with_the_operations(seed):
    rng, f = random_poly(seed)
    g = POLY.random_map(rng, f.cod, R)
    big, small = TowerModel(4), TowerModel(2)
    s, t = big.canonical(f), big.canonical(g)
    assert tower_eq(big.compose(s, t).truncate(2), small.compose(s.truncate(2), t.truncate(2)))
    assert tower_eq(shift(s).truncate(1), shift(s.truncate(2)))
    assert tower_eq(tower_linearize(s).truncate(2), tower_linearize(s.truncate(2)))


def test_explicit_entries():
    f = poly("x^2")
    t = from_entries([f, POLY.differential(f)])
    assert t.depth == 1 and tower_eq(t, tower_of(f, 1))
    with pytest.raises(ShapeError):
        from_entries([f, f]).entry(1)


@given(seeds)
def test_linearize_matches_the_derivative_construction(seed):
    _, f = random_poly(seed)
    t = tower_of(f, 3)
    assert T.equal(tower_linearize(t), C.l_from_d(T, T.differential)(t))


@given(seeds, st.booleans())
def test_linear_towers_are_replicated_projections(seed, linear):
    rng = random.Random(seed)
    a = POLY.random_shape(rng, 3)
    f = POLY.random_map(rng, a, POLY.random_shape(rng, 2), kind="linear" if linear else None)
    t = tower_of(f, 3)
    replicated, dom = True, a
    for n in range(1, 4):
        prev = t.entry(n - 1)
        replicated = replicated and POLY.equal(t.entry(n), POLY.compose(POLY.proj1(dom, dom), prev))
        dom = Prod(dom, dom)
    assert replicated == tower_eq(tower_linearize(t), t)
    if linear:
        assert replicated
