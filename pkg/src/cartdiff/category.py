"""The Cartesian left additive interface shared by every model.

Composition is diagrammatic: ``compose(f, g)`` runs ``f`` first.  A model
implements the primitive operations; everything structural (products of
maps, the symmetry, interchange and lifting maps, the addition map, the
associators used for partial linearization) is derived here.
"""
from __future__ import annotations

from dataclasses import dataclass

from .shapes import ONE, Prod, Shape, ShapeError, expect_prod, fmt, random_shape, require_equal, size


class Model:
    name = "abstract"
    exact = True
    ground: Shape = None

    # --- primitives -----------------------------------------------------

    def identity(self, a: Shape):
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def pair(self, f, g):
        raise NotImplementedError

    def proj0(self, a: Shape, b: Shape):
        raise NotImplementedError

    def proj1(self, a: Shape, b: Shape):
        raise NotImplementedError

    def add(self, f, g):
        raise NotImplementedError

    def zero(self, a: Shape, b: Shape):
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        raise NotImplementedError

    def render(self, f) -> str:
        return repr(f)

    def is_morphism(self, x) -> bool:
        return hasattr(x, "dom") and hasattr(x, "cod")

    def contract(self) -> str:
        return "exact"

    def random_shape(self, rng, max_leaves=3):
        return random_shape(rng, max_leaves, ground=self.ground)

    def random_map(self, rng, dom: Shape, cod: Shape, kind=None, split=0):
        """``kind`` is None, 'reduced', 'constant' or 'linear'.

        With ``split > 0`` the constraint applies only to the leaves after the
        first ``split`` (the argument block of a slice map).
        """
        raise NotImplementedError

    def shrink(self, f):
        return iter(())

    # --- derived --------------------------------------------------------

    def then(self, *fs):
        out = fs[0]
        for g in fs[1:]:
            out = self.compose(out, g)
        return out

    def sum(self, *fs):
        out = fs[0]
        for g in fs[1:]:
            out = self.add(out, g)
        return out

    def times(self, f, g):
        """``f x g = <pi0 f, pi1 g>``."""
        a, b = f.dom, g.dom
        return self.pair(self.compose(self.proj0(a, b), f), self.compose(self.proj1(a, b), g))

    def multiple(self, f, n: int):
        """``f + ... + f`` (n copies); zero for n = 0."""
        out = self.zero(f.dom, f.cod)
        for _ in range(n):
            out = self.add(out, f)
        return out

    def oplus(self, a: Shape):
        return self.add(self.proj0(a, a), self.proj1(a, a))

    def sym(self, a: Shape, b: Shape):
        return self.pair(self.proj1(a, b), self.proj0(a, b))

    def interchange(self, a, b, c, d):
        """``(A*B)*(C*D) -> (A*C)*(B*D)``."""
        return self.pair(
            self.times(self.proj0(a, b), self.proj0(c, d)),
            self.times(self.proj1(a, b), self.proj1(c, d)),
        )

    def inject0(self, a: Shape, b: Shape):
        """``<1, 0> : A -> A*B``."""
        return self.pair(self.identity(a), self.zero(a, b))

    def inject1(self, a: Shape, b: Shape):
        """``<0, 1> : B -> A*B``."""
        return self.pair(self.zero(b, a), self.identity(b))

    def lift(self, a, b, c, d):
        """``A*D -> (A*B)*(C*D)``, inserting zeros in the middle."""
        return self.times(self.inject0(a, b), self.inject1(c, d))

    def alpha(self, c, a, b):
        """``C*(A*B) -> (C*A)*B``."""
        one_c = self.identity(c)
        return self.pair(
            self.times(one_c, self.proj0(a, b)),
            self.then(self.proj1(c, Prod(a, b)), self.proj1(a, b)),
        )

    def alpha_inv(self, c, a, b):
        ca = Prod(c, a)
        return self.pair(
            self.then(self.proj0(ca, b), self.proj0(c, a)),
            self.pair(self.then(self.proj0(ca, b), self.proj1(c, a)), self.proj1(ca, b)),
        )

    def beta(self, c, a, b):
        """``C*(A*B) -> (C*B)*A``."""
        one_c = self.identity(c)
        return self.pair(
            self.times(one_c, self.proj1(a, b)),
            self.then(self.proj1(c, Prod(a, b)), self.proj0(a, b)),
        )

    def beta_inv(self, c, a, b):
        cb = Prod(c, b)
        return self.pair(
            self.then(self.proj0(cb, a), self.proj0(c, b)),
            self.pair(self.proj1(cb, a), self.then(self.proj0(cb, a), self.proj1(c, b))),
        )

    def to_terminal(self, a: Shape):
        return self.zero(a, ONE)

    def const_zero_of(self, f):
        """``0 f`` with ``0 : A -> A``: the constant map at the value ``f(0)``."""
        return self.compose(self.zero(f.dom, f.dom), f)

    # --- predicates -----------------------------------------------------

    def is_reduced(self, f) -> bool:
        return self.equal(self.const_zero_of(f), self.zero(f.dom, f.cod))

    def is_constant(self, f) -> bool:
        return self.equal(self.const_zero_of(f), f)

    def is_semi_additive(self, f) -> bool:
        # tested on generic elements (g, h) = (pi0, pi1) through oplus
        a = f.dom
        return self.equal(
            self.compose(self.oplus(a), f),
            self.add(self.compose(self.proj0(a, a), f), self.compose(self.proj1(a, a), f)),
        )

    def is_additive(self, f) -> bool:
        return self.is_reduced(f) and self.is_semi_additive(f)

    def check_composable(self, f, g):
        if f.cod != g.dom:
            raise ShapeError(f"cannot compose {fmt(f.dom)}->{fmt(f.cod)} with {fmt(g.dom)}->{fmt(g.cod)}")

    def check_parallel(self, f, g, what):
        if f.dom != g.dom or f.cod != g.cod:
            raise ShapeError(
                f"{what}: {fmt(f.dom)}->{fmt(f.cod)} vs {fmt(g.dom)}->{fmt(g.cod)}"
            )


# ------------------------------------------------------------------ slices


@dataclass(frozen=True)
class SliceMorphism:
    """A map ``A -> B`` over context ``C``, stored as ``inner : C*A -> B``."""

    context: Shape
    inner: object

    @property
    def dom(self) -> Shape:
        return self.inner.dom.right

    @property
    def cod(self) -> Shape:
        return self.inner.cod


class Slice(Model):
    """Simple slice over a context: maps ``C*A -> B`` with ``<pi0, f> g`` composition."""

    def __init__(self, base: Model, context: Shape):
        self.base = base
        self.context = context
        self.name = f"{base.name}[{fmt(context)}]"
        self.exact = base.exact
        self.ground = base.ground

    def wrap(self, inner) -> SliceMorphism:
        dom = expect_prod(inner.dom, "slice map domain")
        require_equal(dom.left, self.context, "slice context")
        return SliceMorphism(self.context, inner)

    def lift_base(self, f) -> SliceMorphism:
        """A context-free map ``A -> B`` seen over the context: ``pi1 f``."""
        return self.wrap(self.base.compose(self.base.proj1(self.context, f.dom), f))

    def _own(self, f: SliceMorphism):
        if f.context != self.context:
            raise ShapeError(f"context mismatch: {fmt(f.context)} vs {fmt(self.context)}")
        return f.inner

    def identity(self, a):
        return self.wrap(self.base.proj1(self.context, a))

    def compose(self, f, g):
        self.check_composable(f, g)
        b = self.base
        fi, gi = self._own(f), self._own(g)
        return self.wrap(b.compose(b.pair(b.proj0(self.context, f.dom), fi), gi))

    def pair(self, f, g):
        return self.wrap(self.base.pair(self._own(f), self._own(g)))

    def proj0(self, a, b):
        return self.lift_base(self.base.proj0(a, b))

    def proj1(self, a, b):
        return self.lift_base(self.base.proj1(a, b))

    def add(self, f, g):
        return self.wrap(self.base.add(self._own(f), self._own(g)))

    def zero(self, a, b):
        return self.wrap(self.base.zero(Prod(self.context, a), b))

    def equal(self, f, g):
        return self.base.equal(self._own(f), self._own(g))

    def render(self, f):
        return f"ctx{fmt(self.context)}:{self.base.render(f.inner)}"

    def is_morphism(self, x):
        return isinstance(x, SliceMorphism)

    def contract(self):
        return self.base.contract()

    def random_map(self, rng, dom, cod, kind=None, split=0):
        inner_dom = Prod(self.context, dom)
        return self.wrap(self.base.random_map(rng, inner_dom, cod, kind=kind,
                                              split=size(self.context) + split))

    def shrink(self, f):
        for g in self.base.shrink(f.inner):
            yield SliceMorphism(self.context, g)

    # --- context operations -----------------------------------------------

    def substitute(self, h, f: SliceMorphism) -> SliceMorphism:
        """``h*(f) = (h x 1) f`` for ``h : C' -> C``; lands in the slice over ``C'``."""
        require_equal(h.cod, f.context, "substitution target")
        b = self.base
        inner = b.compose(b.times(h, b.identity(f.dom)), f.inner)
        return SliceMorphism(h.dom, inner)

    def is_additive_in_context(self, f: SliceMorphism) -> bool:
        return self.is_additive(f)

    def is_constant_in_context(self, f: SliceMorphism) -> bool:
        return self.is_constant(f)


def over(base: Model, context: Shape) -> Slice:
    return Slice(base, context)
