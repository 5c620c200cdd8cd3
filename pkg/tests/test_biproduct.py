import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cartdiff.biproduct import BIPRODUCT as B, MatrixMap, format_matrix, parse_matrix
from cartdiff.shapes import R, Prod, ShapeError, parse_shape

seeds = st.integers(0, 2 ** 32 - 1)


def random_map(seed):
    rng = random.Random(seed)
    return rng, B.random_map(rng, B.random_shape(rng, 3), B.random_shape(rng, 3))


def test_matrix_literals():
    f = parse_matrix("[[1, -2/3], [0, 4]]")
    assert f.dom == Prod(R, R) and f.cod == Prod(R, R)
    assert f.rows[0][1] == mpq(-2, 3)
    assert format_matrix(f) == "[[1,-2/3],[0,4]]"
    g = B.parse_morphism("(R*R)->R:[[2,5]]")
    assert B.render(g) == "(R*R)->R:[[2,5]]"
    with pytest.raises(ValueError):
        parse_matrix("[[1,2],[3]]")
    with pytest.raises(ShapeError):
        MatrixMap(R, R, ((1, 2),))


def test_composition_is_diagrammatic_matrix_product():
    f = parse_matrix("[[1,2],[3,4]]")  # runs first
    g = parse_matrix("[[1,1]]")
    assert format_matrix(B.compose(f, g)) == "[[4,6]]"


def test_derivative_is_block_matrix():
    f = parse_matrix("[[2,3]]")
    assert format_matrix(B.differential(f)) == "[[0,0,2,3]]"
    assert B.linearize(f) is f
    lc = B.partial_linearize(R, B.parse_morphism("(R*R)->R:[[2,3]]"))
    assert format_matrix(lc) == "[[0,3]]"
    with pytest.raises(ShapeError):
        B.partial_linearize(Prod(R, R), B.parse_morphism("(R*R)->R:[[2,3]]"))


@given(seeds)
def test_every_map_is_linear_and_additive(seed):
    rng, f = random_map(seed)
    a = f.dom
    assert B.equal(B.compose(B.inject1(a, a), B.differential(f)), f)
    assert B.is_additive(f)


@given(seeds)
def test_render_parse_round_trip(seed):
    _, f = random_map(seed)
    assert B.parse_morphism(B.render(f)) == f


@given(seeds)
def test_shrinks_stay_parallel_and_smaller(seed):
    _, f = random_map(seed)
    nz = sum(1 for r in f.rows for x in r if x)
    for g in B.shrink(f):
        assert (g.dom, g.cod) == (f.dom, f.cod)
        assert sum(1 for r in g.rows for x in r if x) == nz - 1


def test_shape_annotated_literal():
    f = B.parse_morphism("((R*R)*R)->(R*R):[[1,0,0],[0,0,1]]")
    assert f.dom == parse_shape("((R*R)*R)")
