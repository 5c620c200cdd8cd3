"""Tuples of exact-rational polynomials: the flagship exact model."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from . import kernels as K
from .category import Model
from .expr import Program, parse, resolve_blocks
from .expr import Call, Neg, Num, Pow, Var
from .shapes import ONE, R, Prod, Shape, ShapeError, fmt, flatten, parse_shape, require_equal, size

ONE_Q = mpq(1)


def rational(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def flat_shape(n: int) -> Shape:
    """Left-nested product of ``n`` ground leaves (``1`` when empty)."""
    if n == 0:
        return ONE
    s = R
    for _ in range(n - 1):
        s = Prod(s, R)
    return s


def default_names(n: int) -> list:
    return [f"x{i + 1}" for i in range(n)]


@dataclass(frozen=True, eq=False)
class PolyMap:
    dom: Shape
    cod: Shape
    comps: tuple

    def __post_init__(self):
        if len(self.comps) != size(self.cod):
            raise ShapeError(f"{len(self.comps)} components for codomain {fmt(self.cod)}")

    @property
    def nvars(self) -> int:
        return size(self.dom)

    def degree(self) -> int:
        return max((K.degree(p) for p in self.comps), default=-1)

    def __eq__(self, other):
        return (isinstance(other, PolyMap) and self.dom == other.dom
                and self.cod == other.cod and self.comps == other.comps)

    def __hash__(self):
        return hash((self.dom, self.cod, len(self.comps)))

    def __repr__(self):
        return f"PolyMap({format_map(self)})"


def _is_monomial_map(f: PolyMap) -> bool:
    return all(len(p) <= 1 for p in f.comps)


# ------------------------------------------------------------------ printing


def _num_str(c) -> str:
    c = rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _monomial_order(key, n):
    exps = K.exponents(key, n)
    return (-sum(exps), [-e for e in exps])


def format_poly(p: dict, names, spaced: bool = True) -> str:
    n = len(names)
    if not p:
        return "0"
    parts = []
    for key in sorted(p, key=lambda k: _monomial_order(k, n)):
        c = rational(p[key])
        exps = K.exponents(key, n)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _num_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _num_str(mag) + "*" + "*".join(factors)
        parts.append((c < 0, body))
    sep_plus, sep_minus = (" + ", " - ") if spaced else ("+", "-")
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (sep_minus if neg else sep_plus) + body
    return out


def format_map(f: PolyMap, names=None, spaced: bool = True) -> str:
    names = names or default_names(f.nvars)
    comps = [format_poly(p, names, spaced) for p in f.comps]
    if len(comps) == 1:
        return comps[0]
    sep = ", " if spaced else ","
    return "[" + sep.join(comps) + "]"


# ------------------------------------------------------------------ parsing


def ast_to_poly(node, index: dict) -> dict:
    if isinstance(node, Num):
        return {0: rational(node.value)} if node.value else {}
    if isinstance(node, Var):
        try:
            return {K.unit(index[node.name]): ONE_Q}
        except KeyError:
            raise ValueError(f"unknown variable {node.name!r}") from None
    if isinstance(node, Neg):
        return K.pscale(ast_to_poly(node.arg, index), mpq(-1))
    if isinstance(node, Pow):
        base = ast_to_poly(node.base, index)
        out = {0: ONE_Q}
        for _ in range(node.exp):
            out = K.pmul(out, base)
        return out
    if isinstance(node, Call):
        raise ValueError(f"{node.func} is not a polynomial operation")
    a, b = ast_to_poly(node.left, index), ast_to_poly(node.right, index)
    if node.op == "+":
        return K.padd(a, b)
    if node.op == "-":
        return K.padd(a, K.pscale(b, mpq(-1)))
    if node.op == "*":
        return K.pmul(a, b)
    if set(b) - {0} or not b:
        raise ValueError("division is only allowed by a nonzero constant")
    return K.pscale(a, 1 / b[0])


@dataclass(frozen=True)
class Parsed:
    fmap: PolyMap
    ctx: tuple
    args: tuple

    @property
    def names(self) -> tuple:
        return self.ctx + self.args


def parse_poly(text: str, ctx=None) -> Parsed:
    """Parse user syntax into a map on ``ctx * args`` (or just ``args``)."""
    prog = parse(text)
    return program_to_poly(prog, ctx)


def program_to_poly(prog: Program, ctx=None) -> Parsed:
    ctx_names, arg_names = resolve_blocks(prog, ctx)
    names = ctx_names + arg_names
    index = {n: i for i, n in enumerate(names)}
    comps = tuple(ast_to_poly(c, index) for c in prog.components)
    if ctx_names:
        dom = Prod(flat_shape(len(ctx_names)), flat_shape(len(arg_names)))
    else:
        dom = flat_shape(len(arg_names))
    return Parsed(PolyMap(dom, flat_shape(len(comps)), comps), ctx_names, arg_names)


_MAP_RE = re.compile(r"^(?P<dom>[^-]*)->(?P<cod>[^:]*):(?P<body>.*)$")


def render_canonical(f: PolyMap) -> str:
    """Space-free canonical syntax ``dom->cod:[p1,p2]`` with variables ``x1..xn``."""
    body = ",".join(format_poly(p, default_names(f.nvars), spaced=False) for p in f.comps)
    return f"{fmt(f.dom)}->{fmt(f.cod)}:[{body}]"


def parse_canonical(text: str) -> PolyMap:
    m = _MAP_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a canonical polynomial map: {text!r}")
    dom, cod = parse_shape(m.group("dom")), parse_shape(m.group("cod"))
    names = default_names(size(dom))
    index = {n: i for i, n in enumerate(names)}
    body = m.group("body")
    if body == "[]":
        comps = ()
    else:
        prog = parse(body)
        comps = tuple(ast_to_poly(c, index) for c in prog.components)
    return PolyMap(dom, cod, comps)


# ------------------------------------------------------------------ model


class PolyModel(Model):
    name = "poly"
    exact = True
    ground = R

    def __init__(self, max_degree: int = 3, coeff_range: int = 2, max_terms: int = 4):
        self.max_degree = max_degree
        self.coeff_range = coeff_range
        self.max_terms = max_terms

    def make(self, dom, cod, comps):
        return PolyMap(dom, cod, tuple(comps))

    # --- primitives -----------------------------------------------------

    def identity(self, a):
        n = size(a)
        return PolyMap(a, a, tuple({K.unit(i): ONE_Q} for i in range(n)))

    def _projection(self, dom, cod, offset):
        n = size(cod)
        return PolyMap(dom, cod, tuple({K.unit(offset + i): ONE_Q} for i in range(n)))

    def proj0(self, a, b):
        return self._projection(Prod(a, b), a, 0)

    def proj1(self, a, b):
        return self._projection(Prod(a, b), b, size(a))

    def zero(self, a, b):
        return PolyMap(a, b, tuple({} for _ in range(size(b))))

    def pair(self, f, g):
        if f.dom != g.dom:
            raise ShapeError(f"cannot pair maps out of {fmt(f.dom)} and {fmt(g.dom)}")
        return PolyMap(f.dom, Prod(f.cod, g.cod), f.comps + g.comps)

    def add(self, f, g):
        self.check_parallel(f, g, "cannot add")
        return PolyMap(f.dom, f.cod, tuple(K.padd(p, q) for p, q in zip(f.comps, g.comps)))

    def scale(self, f, c):
        c = rational(c)
        return PolyMap(f.dom, f.cod, tuple(K.pscale(p, c) for p in f.comps))

    def compose(self, f, g):
        self.check_composable(f, g)
        n = f.nvars
        if _is_monomial_map(f):
            images = [None if not p else next(iter(p.items()))[::-1] for p in f.comps]
            comps = tuple(K.prename(q, n, images) for q in g.comps)
        else:
            if f.degree() * max(g.degree(), 0) >= K.MAX_DEGREE:
                raise OverflowError("composite degree exceeds the exponent field")
            comps = tuple(K.psubst(list(g.comps), n, list(f.comps), ONE_Q))
        return PolyMap(f.dom, g.cod, comps)

    def equal(self, f, g):
        self.check_parallel(f, g, "cannot compare")
        return f.comps == g.comps

    def render(self, f):
        return render_canonical(f)

    def parse_morphism(self, text):
        return parse_canonical(text)

    # --- combinators ----------------------------------------------------

    def differential(self, f):
        """``D[f](x, v)``: the directional derivative, linear in ``v``."""
        n = f.nvars
        return PolyMap(Prod(f.dom, f.dom), f.cod, tuple(K.pdiff(p, n) for p in f.comps))

    def linearize(self, f):
        """Keep exactly the monomials of total degree one."""
        n = f.nvars
        return PolyMap(f.dom, f.cod, tuple(K.pfilter_block(p, 0, n, 1) for p in f.comps))

    def partial_linearize(self, context, f):
        """Keep the monomials of degree one in the argument block."""
        if not isinstance(f.dom, Prod):
            raise ShapeError(f"partial linearization needs a product domain, got {fmt(f.dom)}")
        require_equal(f.dom.left, context, "context")
        lo, hi = size(context), f.nvars
        return PolyMap(f.dom, f.cod, tuple(K.pfilter_block(p, lo, hi, 1) for p in f.comps))

    def eval(self, f, point):
        if len(point) != f.nvars:
            raise ShapeError(f"point has {len(point)} coordinates, {fmt(f.dom)} needs {f.nvars}")
        pt = [rational(x) for x in point]
        return tuple(rational(K.peval(p, pt)) for p in f.comps)

    # --- generation -----------------------------------------------------

    def random_poly(self, rng, n, kind=None, split=0):
        """Random polynomial in ``n`` variables; ``kind`` constrains the degree in
        the variables ``split..n-1`` (all of them when ``split`` is 0)."""
        r = self.coeff_range
        m = n - split
        p = {}
        for _ in range(rng.randint(1, self.max_terms)):
            if m == 0 or kind == "constant":
                low = high = 0
            elif kind == "linear":
                low = high = 1
            else:
                low, high = (1 if kind == "reduced" else 0), self.max_degree
            if low > 0 and m == 0:
                continue
            deg_arg = rng.randint(low, high)
            deg_ctx = rng.randint(0, self.max_degree - deg_arg) if split else 0
            exps = [0] * n
            for _ in range(deg_arg):
                exps[split + rng.randrange(m)] += 1
            for _ in range(deg_ctx):
                exps[rng.randrange(split)] += 1
            c = rng.randint(-r, r)
            if c:
                p = K.padd(p, {K.pack(exps): mpq(c)})
        return p

    def random_map(self, rng, dom, cod, kind=None, split=0):
        n = size(dom)
        return PolyMap(dom, cod, tuple(self.random_poly(rng, n, kind, split) for _ in range(size(cod))))

    def shrink(self, f):
        n = f.nvars
        for ci, p in enumerate(f.comps):
            for key in sorted(p, key=lambda k: _monomial_order(k, n)):
                q = dict(p)
                del q[key]
                yield self._replace(f, ci, q)
            for key in sorted(p, key=lambda k: _monomial_order(k, n)):
                exps = K.exponents(key, n)
                for i, e in enumerate(exps):
                    if e:
                        lower = list(exps)
                        lower[i] -= 1
                        q = dict(p)
                        c = q.pop(key)
                        q = K.padd(q, {K.pack(lower): c})
                        yield self._replace(f, ci, q)
            for key in p:
                if abs(p[key]) != 1:
                    q = dict(p)
                    q[key] = mpq(1 if p[key] > 0 else -1)
                    yield self._replace(f, ci, q)

    def _replace(self, f, i, p):
        comps = list(f.comps)
        comps[i] = p
        return PolyMap(f.dom, f.cod, tuple(comps))


POLY = PolyModel()


def as_poly_map(dom: Shape, cod: Shape, texts) -> PolyMap:
    """Build a map from component strings over default variable names ``x1..xn``."""
    names = default_names(size(dom))
    index = {n: i for i, n in enumerate(names)}
    comps = tuple(ast_to_poly(parse(t).components[0], index) for t in texts)
    return PolyMap(dom, cod, comps)


def leaves_named(shape: Shape, names) -> dict:
    flat = flatten(shape)
    if len(flat) != len(names):
        raise ShapeError(f"{len(names)} names for {fmt(shape)}")
    return {n: i for i, n in enumerate(names)}
