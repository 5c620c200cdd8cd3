"""Shared test utilities: frozen oracle data and parsing shortcuts."""
import json
import random
from functools import lru_cache
from pathlib import Path

from cartdiff.poly import POLY, PolyMap, parse_poly
from cartdiff.shapes import ONE, Prod

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def oracles() -> dict:
    return json.loads((DATA / "oracles.json").read_text())


def poly(text, ctx=None):
    return parse_poly(text, ctx).fmap


def on(text, names):
    """Parse ``text`` as a polynomial in exactly ``names`` (in that order)."""
    return parse_poly(f"args({','.join(names)}) {text}").fmap


def same_poly(f, text, names) -> bool:
    """Compare components of ``f`` with ``text`` read over the variable list ``names``."""
    g = on(text, names)
    return POLY.equal(f, PolyMap(f.dom, f.cod, g.comps))


def in_context(f, k):
    """View a flat map as ``C*A -> B`` with the first ``k`` inputs as context."""
    from cartdiff.poly import flat_shape
    n = f.nvars
    ctx = flat_shape(k) if k else ONE
    return PolyMap(Prod(ctx, flat_shape(n - k)), f.cod, f.comps)


def rngs(n, seed=0):
    return [random.Random(seed * 100003 + i) for i in range(n)]
