"""Truncated towers of iterated derivatives over the polynomial model.

A tower of depth ``k`` out of ``A`` has entries ``f0 .. fk`` with ``fn`` a
polynomial map out of the ``n``-fold doubled shape ``P^n(A)``, ``P(X) = X*X``.
Entries are produced on demand and cached.  Maps between towers are
canonical: composition re-derives the whole tower from the composite of the
base entries.
"""
from __future__ import annotations

from .category import Model
from .poly import POLY, PolyMap, parse_canonical, render_canonical
from .shapes import R, Prod, Shape, ShapeError, fmt


class DepthError(ValueError):
    """Raised when an operation needs more entries than a tower has."""


def doubled(a: Shape, n: int) -> Shape:
    for _ in range(n):
        a = Prod(a, a)
    return a


class Tower:
    __slots__ = ("dom", "cod", "depth", "_gen", "_cache")

    def __init__(self, dom, cod, depth, gen):
        if depth < 0:
            raise DepthError("tower depth must be non-negative")
        self.dom = dom
        self.cod = cod
        self.depth = depth
        self._gen = gen
        self._cache = {}

    def entry(self, n: int) -> PolyMap:
        if not 0 <= n <= self.depth:
            raise DepthError(f"entry {n} of a depth-{self.depth} tower")
        got = self._cache.get(n)
        if got is None:
            got = self._gen(n)
            want = doubled(self.dom, n)
            if got.dom != want or got.cod != self.cod:
                raise ShapeError(f"tower entry {n} has shape {fmt(got.dom)}->{fmt(got.cod)}")
            self._cache[n] = got
        return got

    @property
    def entries(self) -> tuple:
        return tuple(self.entry(n) for n in range(self.depth + 1))

    def truncate(self, depth: int) -> "Tower":
        if depth > self.depth:
            raise DepthError(f"cannot extend a depth-{self.depth} tower to {depth}")
        return Tower(self.dom, self.cod, depth, self.entry)

    def __repr__(self):
        return f"Tower(depth={self.depth}, base={render_canonical(self.entry(0))})"


def tower_of(f: PolyMap, depth: int) -> Tower:
    """The canonical tower ``(f, D f, D D f, ...)``."""
    if depth < 0:
        raise DepthError("tower depth must be non-negative")

    def gen(n):
        if n == 0:
            return f
        return POLY.differential(tower.entry(n - 1))

    tower = Tower(f.dom, f.cod, depth, gen)
    return tower


def from_entries(entries) -> Tower:
    entries = tuple(entries)
    f0 = entries[0]
    return Tower(f0.dom, f0.cod, len(entries) - 1, lambda n: entries[n])


def shift(t: Tower) -> Tower:
    """``(f0, f1, ...) -> (f1, f2, ...)``: the differential of a tower."""
    if t.depth < 1:
        raise DepthError("cannot shift a depth-0 tower")
    return Tower(Prod(t.dom, t.dom), t.cod, t.depth - 1, lambda n: t.entry(n + 1))


def _replicate_proj1(e0: PolyMap, n: int) -> PolyMap:
    out = e0
    a = e0.dom
    for _ in range(n):
        out = POLY.compose(POLY.proj1(a, a), out)
        a = Prod(a, a)
    return out


def tower_linearize(t: Tower) -> Tower:
    """Entry 0 is ``<0,1> f1``; entry ``n`` precomposes it with ``pi1`` ``n`` times."""
    if t.depth < 1:
        raise DepthError("cannot linearize a depth-0 tower")
    a = t.dom

    def gen(n):
        e0 = POLY.compose(POLY.inject1(a, a), t.entry(1))
        return _replicate_proj1(e0, n)

    return Tower(a, t.cod, t.depth, gen)


def _doubled_lift(c: Shape, a: Shape, n: int) -> PolyMap:
    """``P^n(lift)`` for the lift ``C*A -> (C*A)*(C*A)``."""
    ell = POLY.lift(c, a, c, a)
    for _ in range(n):
        ell = POLY.times(ell, ell)
    return ell


def tower_partial_linearize(context: Shape, t: Tower) -> Tower:
    """Entry ``n`` is ``P^n(lift) f_{n+1}``."""
    if t.depth < 1:
        raise DepthError("cannot linearize a depth-0 tower")
    if not isinstance(t.dom, Prod) or t.dom.left != context:
        raise ShapeError(f"tower out of {fmt(t.dom)} is not over context {fmt(context)}")
    a = t.dom.right

    def gen(n):
        return POLY.compose(_doubled_lift(context, a, n), t.entry(n + 1))

    return Tower(t.dom, t.cod, t.depth - 1, gen)


def tower_eq(s: Tower, t: Tower) -> bool:
    if s.depth != t.depth:
        raise DepthError(f"depth {s.depth} vs {t.depth}")
    if s.dom != t.dom or s.cod != t.cod:
        raise ShapeError("towers of different shapes")
    return all(POLY.equal(s.entry(n), t.entry(n)) for n in range(s.depth + 1))


class TowerModel(Model):
    """Canonical towers; equality compares entries up to the smaller depth."""

    name = "tower"
    exact = True
    ground = R

    def __init__(self, depth: int = 3):
        self.depth = depth

    def canonical(self, f: PolyMap, depth=None) -> Tower:
        return tower_of(f, self.depth if depth is None else depth)

    def identity(self, a):
        return self.canonical(POLY.identity(a))

    def proj0(self, a, b):
        return self.canonical(POLY.proj0(a, b))

    def proj1(self, a, b):
        return self.canonical(POLY.proj1(a, b))

    def zero(self, a, b):
        return self.canonical(POLY.zero(a, b))

    def compose(self, s, t):
        self.check_composable(s, t)
        return tower_of(POLY.compose(s.entry(0), t.entry(0)), min(s.depth, t.depth))

    def pair(self, s, t):
        if s.dom != t.dom:
            raise ShapeError(f"cannot pair maps out of {fmt(s.dom)} and {fmt(t.dom)}")
        return Tower(s.dom, Prod(s.cod, t.cod), min(s.depth, t.depth),
                     lambda n: POLY.pair(s.entry(n), t.entry(n)))

    def add(self, s, t):
        self.check_parallel(s, t, "cannot add")
        return Tower(s.dom, s.cod, min(s.depth, t.depth),
                     lambda n: POLY.add(s.entry(n), t.entry(n)))

    def equal(self, s, t):
        self.check_parallel(s, t, "cannot compare")
        d = min(s.depth, t.depth)
        return all(POLY.equal(s.entry(n), t.entry(n)) for n in range(d + 1))

    def render(self, t):
        return f"T{t.depth}<" + "&".join(render_canonical(e) for e in t.entries) + ">"

    def parse_morphism(self, text):
        body = text.strip()
        if not body.startswith("T") or "<" not in body or not body.endswith(">"):
            raise ValueError(f"not a tower: {text!r}")
        inner = body[body.index("<") + 1:-1]
        return from_entries(parse_canonical(e) for e in inner.split("&"))

    # --- combinators ----------------------------------------------------

    def differential(self, t):
        return shift(t)

    def linearize(self, t):
        return tower_linearize(t)

    def partial_linearize(self, context, t):
        return tower_partial_linearize(context, t)

    # --- generation -----------------------------------------------------

    def random_map(self, rng, dom, cod, kind=None, split=0):
        return self.canonical(POLY.random_map(rng, dom, cod, kind=kind, split=split))

    def shrink(self, t):
        for g in POLY.shrink(t.entry(0)):
            yield tower_of(g, t.depth)


TOWER = TowerModel()
