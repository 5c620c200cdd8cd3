"""An executable Cartesian closed model with forward-mode derivatives.

Values are batched: a scalar is a numpy array holding one entry per sample
point (or a tagged dual number over such arrays), a pair is a tuple, the
unit value is ``()`` and a function value is a :class:`Closure`.

``D[f](x, v)`` runs ``f`` once on ``x + eps*v`` for a fresh tag ``eps`` and
keeps the ``eps`` coefficient.  Closures are perturbed pointwise, and the
tangent of a closure-valued result is taken after application.
"""
from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass

import numpy as np

from . import combinators as C
from . import kernels as K
from .category import Model
from .shapes import (R, Ground, Hom, Prod, Shape, ShapeError, Unit, expect_prod, flatten,
                     fmt, has_hom, random_shape)
from .smooth import SMOOTH, evaluate, format_term, mul, total, var

DUAL_FUNCS = {"sin": K.dsin, "cos": K.dcos, "exp": K.dexp}

_tags = itertools.count(1)


def fresh_tag() -> int:
    return next(_tags)


class Closure:
    __slots__ = ("fn", "shape")

    def __init__(self, fn, shape: Hom):
        self.fn = fn
        self.shape = shape

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"<closure {fmt(self.shape)}>"


# ------------------------------------------------------------------ values


def vzero(shape: Shape):
    if isinstance(shape, Ground):
        return 0.0
    if isinstance(shape, Unit):
        return ()
    if isinstance(shape, Prod):
        return (vzero(shape.left), vzero(shape.right))
    tgt = shape.tgt
    return Closure(lambda _c: vzero(tgt), shape)


def vadd(a, b):
    if isinstance(a, Closure):
        return Closure(lambda c: vadd(a(c), b(c)), a.shape)
    if isinstance(a, tuple):
        return tuple(vadd(x, y) for x, y in zip(a, b))
    return K.dadd(a, b)


def vperturb(x, v, tag: int):
    """``x + eps_tag * v``, threading the perturbation through closures."""
    if isinstance(x, Closure):
        return Closure(lambda c: vperturb(x(c), v(c), tag), x.shape)
    if isinstance(x, tuple):
        return tuple(vperturb(a, b, tag) for a, b in zip(x, v))
    return K.dadd(x, K.dmul(K.Dual(tag, 0.0, 1.0), v))


def vtangent(x, tag: int):
    if isinstance(x, Closure):
        return Closure(lambda c: vtangent(x(c), tag), x.shape)
    if isinstance(x, tuple):
        return tuple(vtangent(a, tag) for a in x)
    return K.dtangent(x, tag)


def scalar_paths(shape: Shape, path=()):
    """Paths to ground leaves reachable through products only."""
    if isinstance(shape, Ground):
        return [path]
    if isinstance(shape, Prod):
        return scalar_paths(shape.left, path + (0,)) + scalar_paths(shape.right, path + (1,))
    return []


def hom_paths(shape: Shape, path=()):
    if isinstance(shape, Hom):
        return [(path, shape)]
    if isinstance(shape, Prod):
        return hom_paths(shape.left, path + (0,)) + hom_paths(shape.right, path + (1,))
    return []


def at_path(value, path):
    for i in path:
        value = value[i]
    return value


def _assemble(shape: Shape, leaves):
    """Nest an iterator of scalars into a value of a hom-free ``shape``."""
    if isinstance(shape, Ground):
        return next(leaves)
    if isinstance(shape, Unit):
        return ()
    left = _assemble(shape.left, leaves)
    return (left, _assemble(shape.right, leaves))


def has_dual(value) -> bool:
    if isinstance(value, tuple):
        return any(has_dual(v) for v in value)
    return type(value) is K.Dual


# ------------------------------------------------------------------ maps


@dataclass(frozen=True, eq=False)
class ClosedMap:
    dom: Shape
    cod: Shape
    body: object
    label: str = "?"

    def __call__(self, x):
        return self.body(x)


# ------------------------------------------------------------------ sampling


@dataclass
class ClosedEq:
    """Sampled equality; values at function types are compared by applying
    both sides to shared random arguments."""

    tol: float = 1e-6
    points: int = 100
    hom_args: int = 10
    nested_hom_args: int = 3
    seed: int = 0
    box: tuple = (-1.0, 1.0)

    def contract(self) -> str:
        return f"sampled:{self.tol:g},{self.points}"

    def stream(self, *salt) -> np.random.Generator:
        key = zlib.crc32("|".join(map(str, salt)).encode())
        return np.random.default_rng([self.seed, key])

    def sample(self, shape: Shape, rs: np.random.Generator):
        if isinstance(shape, Ground):
            return rs.uniform(*self.box, size=self.points)
        if isinstance(shape, Unit):
            return ()
        if isinstance(shape, Prod):
            return (self.sample(shape.left, rs), self.sample(shape.right, rs))
        return self.sample_closure(shape, rs, 0)

    def _recipe(self, shape: Shape, n_in: int, rs):
        if isinstance(shape, Ground):
            size = (3 * n_in + 1, self.points)
            return ("R", rs.uniform(-1.0, 1.0, size=size))
        if isinstance(shape, Unit):
            return ("1",)
        if isinstance(shape, Prod):
            return ("*", self._recipe(shape.left, n_in, rs), self._recipe(shape.right, n_in, rs))
        extra = len(scalar_paths(shape.src))
        return ("->", shape, self._recipe(shape.tgt, n_in + extra, rs))

    def sample_closure(self, shape: Hom, rs, _level):
        """A random element of ``[S, T]``: smooth in the scalar leaves of its
        argument, with coefficients drawn per sample point."""
        recipe = self._recipe(shape.tgt, len(scalar_paths(shape.src)), rs)
        paths = scalar_paths(shape.src)
        return Closure(lambda c: _run_recipe(recipe, [at_path(c, p) for p in paths]), shape)

    def close(self, a, b) -> bool:
        a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
        scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
        return bool(np.all(np.abs(a - b) <= self.tol * scale))

    def values_close(self, a, b, shape: Shape, rs, level: int = 0) -> bool:
        if isinstance(shape, Unit):
            return True
        if isinstance(shape, Prod):
            return (self.values_close(a[0], b[0], shape.left, rs, level)
                    and self.values_close(a[1], b[1], shape.right, rs, level))
        if isinstance(shape, Hom):
            k = self.hom_args if level == 0 else self.nested_hom_args
            for _ in range(k):
                arg = self.sample(shape.src, rs)
                if not self.values_close(a(arg), b(arg), shape.tgt, rs, level + 1):
                    return False
            return True
        if has_dual(a) or has_dual(b):
            raise TypeError("an infinitesimal escaped a derivative")
        return self.close(a, b)

    def equal(self, f: ClosedMap, g: ClosedMap) -> bool:
        rs = self.stream(fmt(f.dom), fmt(f.cod))
        x = self.sample(f.dom, rs)
        with np.errstate(all="ignore"):
            return self.values_close(f(x), g(x), f.cod, rs)


def _run_recipe(recipe, inputs):
    kind = recipe[0]
    if kind == "R":
        k = recipe[1]
        out = k[0]
        n = len(inputs)
        for j, s in enumerate(inputs):
            out = K.dadd(out, K.dmul(k[1 + j], s))
            out = K.dadd(out, K.dmul(k[1 + n + j], K.dmul(s, s)))
            out = K.dadd(out, K.dmul(k[1 + 2 * n + j], K.dsin(s)))
        return out
    if kind == "1":
        return ()
    if kind == "*":
        return (_run_recipe(recipe[1], inputs), _run_recipe(recipe[2], inputs))
    shape, inner = recipe[1], recipe[2]
    paths = scalar_paths(shape.src)
    return Closure(lambda c: _run_recipe(inner, inputs + [at_path(c, p) for p in paths]), shape)


# ------------------------------------------------------------------ model


def _feature_name(i):
    return f"u{i + 1}"


class ClosedModel(Model):
    """Maps are Python functions on batched values."""

    name = "closed"
    exact = False
    ground = R

    def __init__(self, cfg: ClosedEq | None = None, hom_prob: float = 0.3, term_depth: int = 3):
        self.cfg = cfg or ClosedEq()
        self.hom_prob = hom_prob
        self.term_depth = term_depth

    def contract(self):
        return self.cfg.contract()

    def mk(self, dom, cod, body, label):
        return ClosedMap(dom, cod, body, label)

    # --- Cartesian left additive structure -------------------------------

    def identity(self, a):
        return self.mk(a, a, lambda v: v, "1")

    def proj0(self, a, b):
        return self.mk(Prod(a, b), a, lambda v: v[0], "pi0")

    def proj1(self, a, b):
        return self.mk(Prod(a, b), b, lambda v: v[1], "pi1")

    def zero(self, a, b):
        z = vzero(b)
        return self.mk(a, b, lambda v: z, "0")

    def compose(self, f, g):
        self.check_composable(f, g)
        fb, gb = f.body, g.body
        return self.mk(f.dom, g.cod, lambda v: gb(fb(v)), f"({f.label};{g.label})")

    def pair(self, f, g):
        if f.dom != g.dom:
            raise ShapeError(f"cannot pair maps out of {fmt(f.dom)} and {fmt(g.dom)}")
        fb, gb = f.body, g.body
        return self.mk(f.dom, Prod(f.cod, g.cod), lambda v: (fb(v), gb(v)),
                       f"<{f.label},{g.label}>")

    def add(self, f, g):
        self.check_parallel(f, g, "cannot add")
        fb, gb = f.body, g.body
        return self.mk(f.dom, f.cod, lambda v: vadd(fb(v), gb(v)), f"({f.label}+{g.label})")

    def equal(self, f, g):
        self.check_parallel(f, g, "cannot compare")
        return self.cfg.equal(f, g)

    def render(self, f):
        return f"{fmt(f.dom)}->{fmt(f.cod)}:{f.label}"

    # --- closed structure ------------------------------------------------

    def curry(self, f):
        """``lambda(f) : A -> [C, B]`` for ``f : C*A -> B``."""
        dom = expect_prod(f.dom, "curry")
        c, a = dom.left, dom.right
        hom = Hom(c, f.cod)
        fb = f.body
        return self.mk(a, hom, lambda x: Closure(lambda y: fb((y, x)), hom), f"curry({f.label})")

    def uncurry(self, g):
        """``(1 x g) ev : C*A -> B`` for ``g : A -> [C, B]``."""
        if not isinstance(g.cod, Hom):
            raise ShapeError(f"uncurry needs a map into a function space, got {fmt(g.cod)}")
        gb = g.body
        return self.mk(Prod(g.cod.src, g.dom), g.cod.tgt, lambda v: gb(v[1])(v[0]),
                       f"uncurry({g.label})")

    def ev(self, c, a):
        return self.mk(Prod(c, Hom(c, a)), a, lambda v: v[1](v[0]), "ev")

    def eta(self, c, a):
        m = self.curry(self.proj1(c, a))
        return ClosedMap(m.dom, m.cod, m.body, "eta")

    def mu(self, c, a):
        inner = Hom(c, a)
        body = self.compose(self.pair(self.proj0(c, Hom(c, inner)), self.ev(c, inner)), self.ev(c, a))
        m = self.curry(body)
        return ClosedMap(m.dom, m.cod, m.body, "mu")

    def hom_map(self, f, g):
        """``[f, g] = lambda((f x 1) ev g) : [C, A] -> [C', B]`` for ``f : C' -> C``."""
        c, a = f.cod, g.dom
        body = self.then(self.times(f, self.identity(Hom(c, a))), self.ev(c, a), g)
        m = self.curry(body)
        return ClosedMap(m.dom, m.cod, m.body, f"[{f.label},{g.label}]")

    def theta(self, c, a, b):
        """``[C,A] * [C,B] -> [C, A*B]``."""
        one = self.identity(c)
        left = self.compose(self.times(one, self.proj0(Hom(c, a), Hom(c, b))), self.ev(c, a))
        right = self.compose(self.times(one, self.proj1(Hom(c, a), Hom(c, b))), self.ev(c, b))
        m = self.curry(self.pair(left, right))
        return ClosedMap(m.dom, m.cod, m.body, "theta")

    def theta_inv(self, c, a, b):
        one = self.identity(c)
        m = self.pair(self.hom_map(one, self.proj0(a, b)), self.hom_map(one, self.proj1(a, b)))
        return ClosedMap(m.dom, m.cod, m.body, "theta_inv")

    def phi(self, a, c, b):
        """``[A, [C, B]] -> [C*A, B]``, uncurrying inside the function space."""
        h = Hom(a, Hom(c, b))
        body = self.then(self.alpha_inv(c, a, h),
                         self.times(self.identity(c), self.ev(a, Hom(c, b))),
                         self.ev(c, b))
        m = self.curry(body)
        return ClosedMap(m.dom, m.cod, m.body, "phi")

    def phi_via_mu(self, a, c, b):
        """The same map written as ``[pi1, [pi0, 1]] mu``."""
        ca = Prod(c, a)
        inner = self.hom_map(self.proj0(c, a), self.identity(b))
        m = self.compose(self.hom_map(self.proj1(c, a), inner), self.mu(ca, b))
        return ClosedMap(m.dom, m.cod, m.body, "phi'")

    def phi_inv(self, a, c, b):
        k = Hom(Prod(c, a), b)
        body = self.compose(self.alpha(c, a, k), self.ev(Prod(c, a), b))
        m = self.curry(self.curry(body))
        return ClosedMap(m.dom, m.cod, m.body, "phi_inv")

    # --- combinators -----------------------------------------------------

    def differential(self, f):
        fb = f.body

        def body(v):
            tag = fresh_tag()
            return vtangent(fb(vperturb(v[0], v[1], tag)), tag)

        return self.mk(Prod(f.dom, f.dom), f.cod, body, f"D({f.label})")

    def linearize(self, f):
        """``x |-> d/de f(e x)`` at ``e = 0``."""
        fb = f.body
        z = vzero(f.dom)

        def body(x):
            tag = fresh_tag()
            return vtangent(fb(vperturb(z, x, tag)), tag)

        return self.mk(f.dom, f.cod, body, f"L({f.label})")

    exp_linearize = linearize

    def partial_linearize(self, context, f):
        """Derivative in the argument block at zero, context held fixed."""
        C.check_context(f, context)
        fb = f.body
        z = vzero(f.dom.right)

        def body(v):
            tag = fresh_tag()
            return vtangent(fb((v[0], vperturb(z, v[1], tag))), tag)

        return self.mk(f.dom, f.cod, body, f"Lc({f.label})")

    def partial_from_total(self, f, L=None):
        """``L^C[f] = uncurry(L[curry(f)])``."""
        L = L or self.linearize
        m = self.uncurry(L(self.curry(f)))
        return ClosedMap(m.dom, m.cod, m.body, f"Lc~({f.label})")

    def closed_system(self, L=None):
        return lambda context, f: self.partial_from_total(f, L)

    def d_from_exp(self, f, L=None):
        """``D[f] = uncurry(L[curry(oplus f)])``."""
        L = L or self.linearize
        m = self.uncurry(L(self.curry(self.compose(self.oplus(f.dom), f))))
        return ClosedMap(m.dom, m.cod, m.body, f"D~({f.label})")

    def from_smooth(self, f, label: str | None = None):
        """Run a smooth map's terms on closed-model values (scalar leaves only)."""
        if has_hom(f.dom) or has_hom(f.cod):
            raise ShapeError("only maps between products of the ground object can be embedded")
        paths = scalar_paths(f.dom)
        comps, cod = f.comps, f.cod

        def body(v):
            env = [at_path(v, p) for p in paths]
            memo = {}
            outs = iter([evaluate(t, env, memo, funcs=DUAL_FUNCS) for t in comps])
            return _assemble(cod, outs)

        return self.mk(f.dom, f.cod, body, label or "f")

    # --- generation ------------------------------------------------------

    def random_shape(self, rng, max_leaves=3):
        s = random_shape(rng, max_leaves, ground=R)
        return self._sprinkle_homs(rng, s)

    def _sprinkle_homs(self, rng, s):
        if isinstance(s, Prod):
            return Prod(self._sprinkle_homs(rng, s.left), self._sprinkle_homs(rng, s.right))
        if isinstance(s, Ground) and rng.random() < self.hom_prob:
            src = R if rng.random() < 0.7 else Prod(R, R)
            tgt = R if rng.random() < 0.85 else Hom(R, R)
            return Hom(src, tgt)
        return s

    def random_map(self, rng, dom, cod, kind=None, split=0):
        gen = _MapGen(self, rng)
        if kind == "reduced":
            f = gen.build(dom, cod, None, split)
            return self.add(f, self._negate(self._at_zero_args(f, split)))
        return gen.build(dom, cod, kind, split)

    def _negate(self, f):
        minus = self.mk(f.cod, f.cod, lambda v: _vscale(v, -1.0), "neg")
        return self.compose(f, minus)

    def _at_zero_args(self, f, split):
        """``f`` with every leaf after the first ``split`` replaced by zero."""
        zero_tail = _zero_tail(f.dom, split)
        return self.compose(self.mk(f.dom, f.dom, zero_tail, f"zero>{split}"), f)


def _vscale(v, c):
    if isinstance(v, Closure):
        return Closure(lambda x: _vscale(v(x), c), v.shape)
    if isinstance(v, tuple):
        return tuple(_vscale(x, c) for x in v)
    return K.dmul(v, c)


def _zero_tail(shape, split):
    """Body keeping the first ``split`` leaves of ``shape`` and zeroing the rest."""
    from .shapes import flatten

    def go(s, offset):
        n = len(flatten(s))
        if offset + n <= split:
            return lambda v: v
        if offset >= split:
            z = vzero(s)
            return lambda v: z
        left = go(s.left, offset)
        right = go(s.right, offset + len(flatten(s.left)))
        return lambda v: (left(v[0]), right(v[1]))

    return go(shape, 0)


class _MapGen:
    """Builds random closed maps from smooth terms over extracted features.

    A feature is a scalar computed from the input: a scalar leaf, or a scalar
    leaf of a function-valued leaf applied to an argument built from other
    features.  Features carry a role: ``ctx`` ones may appear anywhere,
    ``arg`` ones only linearly when a linear map is requested.
    """

    def __init__(self, model: ClosedModel, rng):
        self.m = model
        self.rng = rng

    def features(self, shape, get, split, offset=0):
        scalars, homs = [], []

        def walk(s, getter, off):
            if isinstance(s, Ground):
                scalars.append((getter, "ctx" if off < split else "arg"))
            elif isinstance(s, Prod):
                walk(s.left, lambda v, g=getter: g(v)[0], off)
                walk(s.right, lambda v, g=getter: g(v)[1], off + len(flatten(s.left)))
            elif isinstance(s, Hom):
                homs.append((getter, s, "ctx" if off < split else "arg"))

        walk(shape, get, offset)
        out = list(scalars)
        for getter, hom, role in homs:
            pool = [fn for fn, r in scalars if self.free or r == "ctx"]
            out += self._applied(getter, hom, role, pool)
        return out

    def _applied(self, getter, hom, role, pool, depth=0):
        arg = self._value_builder(hom.src, pool)
        applied = lambda v, g=getter, a=arg: g(v)(a(v))
        # applied features are unbounded; squash them unless they must stay linear
        squash = K.dsin if (self.free or role == "ctx") else (lambda x: x)
        out = [(lambda v, p=p, f=applied: squash(at_path(f(v), p)), role)
               for p in scalar_paths(hom.tgt)]
        if depth < 1:
            for path, inner in hom_paths(hom.tgt):
                sub = lambda v, p=path, f=applied: at_path(f(v), p)
                out += self._applied(sub, inner, role, pool, depth + 1)
        return out

    def _value_builder(self, shape, pool):
        """A function of the input producing a value of ``shape`` from ``pool``."""
        if isinstance(shape, Ground):
            t = self.m_term(len(pool), depth=2)
            return lambda v, t=t: evaluate(t, [f(v) for f in pool], funcs=DUAL_FUNCS)
        if isinstance(shape, Unit):
            return lambda v: ()
        if isinstance(shape, Prod):
            l, r = self._value_builder(shape.left, pool), self._value_builder(shape.right, pool)
            return lambda v: (l(v), r(v))
        inner = self._value_builder(shape.tgt, pool)
        return lambda v, s=shape: Closure(lambda _c: inner(v), s)

    def m_term(self, n, depth=None):
        return SMOOTH.random_term(self.rng, n, depth=self.m.term_depth if depth is None else depth)

    def build(self, dom, cod, kind, split):
        self.free = kind not in ("linear", "constant")
        feats = self.features(dom, lambda v: v, split)
        body, label = self._body(cod, feats, kind)
        return ClosedMap(dom, cod, body, label)

    def _body(self, cod, feats, kind):
        if isinstance(cod, Ground):
            return self._scalar(feats, kind)
        if isinstance(cod, Unit):
            return (lambda v: ()), "()"
        if isinstance(cod, Prod):
            lb, ll = self._body(cod.left, feats, kind)
            rb, rl = self._body(cod.right, feats, kind)
            return (lambda v: (lb(v), rb(v))), f"<{ll},{rl}>"
        # a function-valued result: curry a body over (argument, input)
        outer = [(lambda p, f=f: f(p[1]), role) for f, role in feats]
        new = self.features(cod.src, lambda p: p[0], split=10 ** 6)
        inner_feats = outer + [(lambda p, f=f: f(p), "ctx") for f, _ in new]
        ib, il = self._body(cod.tgt, inner_feats, kind)
        return (lambda v, s=cod: Closure(lambda c: ib((c, v)), s)), f"fn[{il}]"

    def _scalar(self, feats, kind):
        ctx = [f for f, role in feats if role == "ctx"]
        arg = [f for f, role in feats if role == "arg"]
        names = [_feature_name(i) for i in range(len(feats))]
        if kind == "constant":
            t = self.m_term(len(ctx)) if ctx else SMOOTH.random_term(self.rng, 0)
            use = ctx
        elif kind == "linear":
            use = ctx + arg
            pieces = []
            for j in range(len(arg)):
                coeff = self.m_term(len(ctx), depth=2) if ctx else SMOOTH.random_term(self.rng, 0)
                pieces.append(mul(coeff, var(len(ctx) + j)))
            t = total(pieces)
        else:
            use = [f for f, _ in feats]
            t = self.m_term(len(use))
        label = format_term(t, names, spaced=False)
        return (lambda v, t=t, use=tuple(use): evaluate(t, [f(v) for f in use], funcs=DUAL_FUNCS)), label


CLOSED = ClosedModel()
