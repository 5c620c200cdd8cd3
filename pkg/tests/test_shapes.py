import random

import pytest
from hypothesis import given, strategies as st

from cartdiff.shapes import (ONE, R, Hom, Prod, ShapeError, depth, flatten, fmt, parse_shape,
                             random_shape, size)

leaves = st.sampled_from([R, ONE])
shapes = st.recursive(leaves, lambda s: st.builds(Prod, s, s) | st.builds(Hom, s, s),
                      max_leaves=8)


@given(shapes)
def test_print_parse_round_trip(s):
    assert parse_shape(fmt(s)) == s


@given(shapes, shapes)
def test_equality_is_structural(a, b):
    assert (a == b) == (fmt(a) == fmt(b))


def test_canonical_syntax():
    assert fmt(Prod(Prod(R, R), R)) == "((R*R)*R)"
    assert fmt(ONE) == "1"
    assert fmt(Hom(R, Prod(R, ONE))) == "[R,(R*1)]"


def test_flatten_is_left_to_right():
    s = Prod(Prod(R, ONE), Prod(R, R))
    assert size(s) == 3
    assert len(flatten(s)) == size(s)


@pytest.mark.parametrize("bad", ["", "(R*R", "R*R", "(R,R)", "[R*R]", "R)"])
def test_parse_errors(bad):
    with pytest.raises(ShapeError):
        parse_shape(bad)


def test_random_shapes_respect_the_generation_policy():
    rng = random.Random(3)
    for _ in range(300):
        s = random_shape(rng, 3)
        assert 1 <= size(s) <= 3
        assert depth(s) <= 3
