"""The compiled and pure-Python kernels must agree exactly."""
import math

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from cartdiff import _purepy
from cartdiff import kernels

try:
    from cartdiff import _speedups
except ImportError:  # pragma: no cover - only when the extension is not built
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None, reason="compiled kernels not built")
NVARS = 4

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool).map(mpq)
exps = st.lists(st.integers(0, 3), min_size=NVARS, max_size=NVARS)
polys = st.dictionaries(exps.map(_purepy.pack), coeffs, max_size=6)


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.backend_module("python") is _purepy
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


@given(exps)
def test_pack_round_trip(e):
    assert _purepy.exponents(_purepy.pack(e), NVARS) == e
    assert _purepy.key_degree(_purepy.pack(e)) == sum(e)


@needs_compiled
@given(polys, polys)
def test_add_and_mul_agree(a, b):
    assert _speedups.padd(a, b) == _purepy.padd(a, b)
    assert _speedups.pmul(a, b) == _purepy.pmul(a, b)


@needs_compiled
@given(polys, st.integers(0, NVARS - 1))
def test_diff_and_filter_agree(p, lo):
    assert _speedups.pdiff(p, NVARS) == _purepy.pdiff(p, NVARS)
    assert _speedups.pfilter_block(p, lo, NVARS, 1) == _purepy.pfilter_block(p, lo, NVARS, 1)


@needs_compiled
@given(polys, st.lists(polys, min_size=NVARS, max_size=NVARS))
def test_substitution_agrees(p, images):
    one = mpq(1)
    assert _speedups.psubst([p], NVARS, images, one) == _purepy.psubst([p], NVARS, images, one)


@needs_compiled
@given(polys, st.lists(st.integers(-3, 3).map(mpq), min_size=NVARS, max_size=NVARS))
def test_evaluation_agrees(p, pt):
    assert _speedups.peval(p, pt) == _purepy.peval(p, pt)


@given(polys, polys, st.lists(st.integers(-3, 3).map(mpq), min_size=NVARS, max_size=NVARS))
def test_product_evaluates_to_product_of_values(a, b, pt):
    k = kernels
    assert k.peval(k.pmul(a, b), pt) == k.peval(a, pt) * k.peval(b, pt)


@pytest.mark.parametrize("mod", [_purepy] + ([_speedups] if _speedups else []),
                         ids=lambda m: m.BACKEND)
def test_dual_numbers_differentiate(mod):
    x = mod.Dual(1, 0.7, 1.0)
    y = mod.dmul(mod.dsin(x), mod.dexp(x))
    want = math.cos(0.7) * math.exp(0.7) + math.sin(0.7) * math.exp(0.7)
    assert mod.dtangent(y, 1) == pytest.approx(want, rel=1e-14)
    assert mod.dprimal(y, 1) == pytest.approx(math.sin(0.7) * math.exp(0.7), rel=1e-14)


@pytest.mark.parametrize("mod", [_purepy] + ([_speedups] if _speedups else []),
                         ids=lambda m: m.BACKEND)
def test_nested_tags_give_second_derivatives(mod):
    # d/da d/db of (x + a + b)^3 at a = b = 0 is 6x
    x = np.array([0.5, -1.0, 2.0])
    v = mod.dadd(mod.dadd(x, mod.Dual(1, 0.0, 1.0)), mod.Dual(2, 0.0, 1.0))
    y = mod.dpow(v, 3)
    second = mod.dtangent(mod.dtangent(y, 2), 1)
    np.testing.assert_allclose(second, 6 * x)


@needs_compiled
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_dual_arithmetic_agrees(p, t):
    a = _purepy.dcos(_purepy.dmul(_purepy.Dual(3, p, t), _purepy.Dual(3, t, 1.0)))
    b = _speedups.dcos(_speedups.dmul(_speedups.Dual(3, p, t), _speedups.Dual(3, t, 1.0)))
    assert _purepy.dtangent(a, 3) == pytest.approx(_speedups.dtangent(b, 3), abs=1e-15)
