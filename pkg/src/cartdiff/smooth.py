"""Smooth maps built from sin, cos, exp and rational polynomials.

Terms are immutable DAG nodes.  Substitution and differentiation memoize on
node identity, so shared subterms stay shared.  Equality of maps is decided
by evaluating both sides at seeded random points with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .category import Model
from .expr import FUNCS, BinOp, Call, Neg, Num, Pow, Var, parse, resolve_blocks
from .poly import default_names, flat_shape
from .shapes import R, Prod, Shape, ShapeError, fmt, parse_shape, require_equal, size


class Term:
    __slots__ = ("op", "kids", "val")

    def __init__(self, op, kids=(), val=None):
        self.op = op
        self.kids = kids
        self.val = val

    def __repr__(self):
        return format_term(self, default_names(max_var(self) + 1))


ZERO = Term("const", val=Fraction(0))
ONE_T = Term("const", val=Fraction(1))


def const(c) -> Term:
    c = Fraction(c)
    if c == 0:
        return ZERO
    if c == 1:
        return ONE_T
    return Term("const", val=c)


def var(i: int) -> Term:
    return Term("var", val=i)


def is_const(t: Term, c=None) -> bool:
    return t.op == "const" and (c is None or t.val == c)


def add(a: Term, b: Term) -> Term:
    if is_const(a, 0):
        return b
    if is_const(b, 0):
        return a
    if is_const(a) and is_const(b):
        return const(a.val + b.val)
    return Term("add", (a, b))


def mul(a: Term, b: Term) -> Term:
    if is_const(a, 0) or is_const(b, 0):
        return ZERO
    if is_const(a, 1):
        return b
    if is_const(b, 1):
        return a
    if is_const(a) and is_const(b):
        return const(a.val * b.val)
    return Term("mul", (a, b))


def neg(a: Term) -> Term:
    if is_const(a):
        return const(-a.val)
    if a.op == "neg":
        return a.kids[0]
    return Term("neg", (a,))


def sub(a: Term, b: Term) -> Term:
    return add(a, neg(b))


def power(a: Term, k: int) -> Term:
    if k == 0:
        return ONE_T
    if k == 1:
        return a
    if is_const(a):
        return const(a.val ** k)
    return Term("pow", (a,), k)


_AT_ZERO = {"sin": 0, "cos": 1, "exp": 1}


def call(name: str, a: Term) -> Term:
    if is_const(a, 0):
        return const(_AT_ZERO[name])
    return Term(name, (a,))


def total(terms) -> Term:
    out = ZERO
    for t in terms:
        out = add(out, t)
    return out


def max_var(t: Term) -> int:
    best = -1
    seen = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if n.op == "var":
            best = max(best, n.val)
        stack.extend(n.kids)
    return best


def term_size(t: Term) -> int:
    seen = set()
    stack = [t]
    while stack:
        n = stack.pop()
        if id(n) not in seen:
            seen.add(id(n))
            stack.extend(n.kids)
    return len(seen)


def rebuild(t: Term, leaf, memo=None) -> Term:
    """Rebuild ``t`` bottom-up through the smart constructors; ``leaf`` maps
    variable nodes to replacement terms."""
    memo = {} if memo is None else memo

    def go(n):
        got = memo.get(id(n))
        if got is not None:
            return got
        op = n.op
        if op == "const":
            out = n
        elif op == "var":
            out = leaf(n.val)
        elif op == "add":
            out = add(go(n.kids[0]), go(n.kids[1]))
        elif op == "mul":
            out = mul(go(n.kids[0]), go(n.kids[1]))
        elif op == "neg":
            out = neg(go(n.kids[0]))
        elif op == "pow":
            out = power(go(n.kids[0]), n.val)
        else:
            out = call(op, go(n.kids[0]))
        memo[id(n)] = out
        return out

    return go(t)


def substitute(t: Term, images) -> Term:
    images = tuple(images)
    return rebuild(t, lambda i: images[i])


def directional(t: Term, direction) -> Term:
    """Forward-mode symbolic derivative: ``sum_i (d t / d x_i) * direction[i]``."""
    memo = {}

    def go(n):
        got = memo.get(id(n))
        if got is not None:
            return got
        op = n.op
        if op == "const":
            out = ZERO
        elif op == "var":
            out = direction[n.val]
        elif op == "add":
            out = add(go(n.kids[0]), go(n.kids[1]))
        elif op == "mul":
            a, b = n.kids
            out = add(mul(go(a), b), mul(a, go(b)))
        elif op == "neg":
            out = neg(go(n.kids[0]))
        elif op == "pow":
            a = n.kids[0]
            out = mul(mul(const(n.val), power(a, n.val - 1)), go(a))
        elif op == "sin":
            a = n.kids[0]
            out = mul(call("cos", a), go(a))
        elif op == "cos":
            a = n.kids[0]
            out = neg(mul(call("sin", a), go(a)))
        else:
            a = n.kids[0]
            out = mul(n, go(a))
        memo[id(n)] = out
        return out

    return go(t)


def partial(t: Term, j: int, nvars: int) -> Term:
    return directional(t, [ONE_T if i == j else ZERO for i in range(nvars)])


# ------------------------------------------------------------------ evaluation


_NP = {"sin": np.sin, "cos": np.cos, "exp": np.exp}


def evaluate(t: Term, env, memo=None, funcs=_NP):
    """Evaluate on arrays: ``env[i]`` holds the samples of variable ``i``.

    ``funcs`` supplies sin/cos/exp; pass dual-aware versions to push
    tangents through the term.
    """
    memo = {} if memo is None else memo

    def go(n):
        got = memo.get(id(n))
        if got is not None:
            return got
        op = n.op
        if op == "const":
            out = float(n.val)
        elif op == "var":
            out = env[n.val]
        elif op == "add":
            out = go(n.kids[0]) + go(n.kids[1])
        elif op == "mul":
            out = go(n.kids[0]) * go(n.kids[1])
        elif op == "neg":
            out = -go(n.kids[0])
        elif op == "pow":
            out = go(n.kids[0]) ** n.val
        else:
            out = funcs[op](go(n.kids[0]))
        memo[id(n)] = out
        return out

    return go(t)


# ------------------------------------------------------------------ printing


def _summands(t, sign, out):
    if t.op == "add":
        _summands(t.kids[0], sign, out)
        _summands(t.kids[1], sign, out)
    elif t.op == "neg":
        _summands(t.kids[0], -sign, out)
    else:
        out.append((sign, t))


def _factors(t, acc):
    """Flatten a product into (coefficient, variable powers, other factors)."""
    coeff, powers, others = acc
    if t.op == "mul":
        acc = _factors(t.kids[0], acc)
        return _factors(t.kids[1], acc)
    if t.op == "neg":
        coeff, powers, others = _factors(t.kids[0], acc)
        return -coeff, powers, others
    if t.op == "const":
        return coeff * t.val, powers, others
    if t.op == "var":
        powers[t.val] = powers.get(t.val, 0) + 1
        return coeff, powers, others
    if t.op == "pow" and t.kids[0].op == "var":
        i = t.kids[0].val
        powers[i] = powers.get(i, 0) + t.val
        return coeff, powers, others
    others.append(t)
    return coeff, powers, others


def _num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _atom(t, names, spaced) -> str:
    if t.op == "pow":
        base = t.kids[0]
        inner = _atom(base, names, spaced)
        if base.op == "pow":
            inner = f"({inner})"
        return f"{inner}^{t.val}"
    if t.op in _NP:
        return f"{t.op}({format_term(t.kids[0], names, spaced)})"
    if t.op == "var":
        return names[t.val]
    if t.op == "const" and t.val >= 0 and t.val.denominator == 1:
        return _num(t.val)
    return f"({format_term(t, names, spaced)})"


def format_term(t: Term, names, spaced: bool = True) -> str:
    parts = []
    terms = []
    _summands(t, 1, terms)
    for sign, s in terms:
        coeff, powers, others = _factors(s, (Fraction(sign), {}, []))
        if coeff == 0:
            continue
        fs = [_atom(o, names, spaced) for o in others]
        fs += [names[i] if k == 1 else f"{names[i]}^{k}" for i, k in sorted(powers.items())]
        mag = abs(coeff)
        if not fs:
            body = _num(mag)
        elif mag == 1:
            body = "*".join(fs)
        else:
            body = _num(mag) + "*" + "*".join(fs)
        parts.append((coeff < 0, body))
    if not parts:
        return "0"
    plus, minus = (" + ", " - ") if spaced else ("+", "-")
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for negative, body in parts[1:]:
        out += (minus if negative else plus) + body
    return out


# ------------------------------------------------------------------ maps


@dataclass(frozen=True, eq=False)
class SmoothMap:
    dom: Shape
    cod: Shape
    comps: tuple

    def __post_init__(self):
        if len(self.comps) != size(self.cod):
            raise ShapeError(f"{len(self.comps)} components for codomain {fmt(self.cod)}")

    @property
    def nvars(self) -> int:
        return size(self.dom)


def format_smooth(f: SmoothMap, names=None, spaced=True) -> str:
    names = list(names or default_names(f.nvars))
    comps = [format_term(t, names, spaced) for t in f.comps]
    if len(comps) == 1:
        return comps[0]
    return "[" + (", " if spaced else ",").join(comps) + "]"


def ast_to_term(node, index: dict) -> Term:
    if isinstance(node, Num):
        return const(node.value)
    if isinstance(node, Var):
        try:
            return var(index[node.name])
        except KeyError:
            raise ValueError(f"unknown variable {node.name!r}") from None
    if isinstance(node, Neg):
        return neg(ast_to_term(node.arg, index))
    if isinstance(node, Pow):
        return power(ast_to_term(node.base, index), node.exp)
    if isinstance(node, Call):
        return call(node.func, ast_to_term(node.arg, index))
    assert isinstance(node, BinOp)
    a, b = ast_to_term(node.left, index), ast_to_term(node.right, index)
    if node.op == "+":
        return add(a, b)
    if node.op == "-":
        return sub(a, b)
    if node.op == "*":
        return mul(a, b)
    if not is_const(b) or b.val == 0:
        raise ValueError("division is only allowed by a nonzero constant")
    return mul(a, const(1 / b.val))


@dataclass(frozen=True)
class ParsedSmooth:
    fmap: SmoothMap
    ctx: tuple
    args: tuple

    @property
    def names(self) -> tuple:
        return self.ctx + self.args


def parse_smooth(text: str, ctx=None) -> ParsedSmooth:
    prog = parse(text, FUNCS)
    ctx_names, arg_names = resolve_blocks(prog, ctx)
    names = ctx_names + arg_names
    index = {n: i for i, n in enumerate(names)}
    comps = tuple(ast_to_term(c, index) for c in prog.components)
    if ctx_names:
        dom = Prod(flat_shape(len(ctx_names)), flat_shape(len(arg_names)))
    else:
        dom = flat_shape(len(arg_names))
    return ParsedSmooth(SmoothMap(dom, flat_shape(len(comps)), comps), ctx_names, arg_names)


# ------------------------------------------------------------------ sampling


class SamplingError(RuntimeError):
    pass


@dataclass
class SampledEq:
    """Seeded pointwise comparison with an absolute-or-relative tolerance."""

    tol: float = 1e-6
    points: int = 100
    seed: int = 0
    box: tuple = (-1.0, 1.0)
    notes: list = field(default_factory=list)

    def contract(self) -> str:
        return f"sampled:{self.tol:g},{self.points}"

    def sample(self, nvars: int, salt: int = 0) -> np.ndarray:
        rng = np.random.default_rng([self.seed, nvars, salt])
        lo, hi = self.box
        return rng.uniform(lo, hi, size=(nvars, self.points))

    def close(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
        scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
        return np.abs(a - b) <= self.tol * scale

    def values(self, run, nvars: int):
        """``run(env)`` returns a list of arrays; points where any of them is
        non-finite are redrawn."""
        env = self.sample(nvars)
        with np.errstate(all="ignore"):
            outs = self._shaped(run(env))
        drawn, salt = self.points, 0
        while True:
            bad = np.zeros(self.points, bool)
            for o in outs:
                bad |= ~np.isfinite(o)
            if not bad.any():
                return outs
            k = int(bad.sum())
            drawn += k
            if drawn > 5 * self.points:
                raise SamplingError(f"too many non-finite samples ({drawn} drawn)")
            salt += 1
            self.notes.append(f"resampled {k} point(s) in round {salt}")
            env = np.where(bad, self.sample(nvars, salt), env)
            with np.errstate(all="ignore"):
                outs = self._shaped(run(env))

    def _shaped(self, outs):
        return [np.broadcast_to(np.asarray(o, float), (self.points,)) for o in outs]

    def _both(self, f, g):
        def run(env):
            mf, mg = {}, {}
            out = []
            for s, t in zip(f.comps, g.comps):
                out += [evaluate(s, env, mf), evaluate(t, env, mg)]
            return out
        outs = self.values(run, f.nvars)
        return outs[::2], outs[1::2]

    def max_deviation(self, f: SmoothMap, g: SmoothMap) -> float:
        xs, ys = self._both(f, g)
        return max((float(np.max(np.abs(a - b))) for a, b in zip(xs, ys)), default=0.0)

    def equal(self, f: SmoothMap, g: SmoothMap) -> bool:
        xs, ys = self._both(f, g)
        return all(self.close(a, b).all() for a, b in zip(xs, ys))


def sampled_eq(f: SmoothMap, g: SmoothMap, cfg: SampledEq | None = None) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeError("sampled comparison of maps with different shapes")
    return (cfg or SampledEq()).equal(f, g)


def finite_difference_gap(f: SmoothMap, cfg: SampledEq | None = None, step: float = 1e-5) -> float:
    """Largest gap between the symbolic D and a central difference quotient."""
    cfg = cfg or SampledEq()
    n = f.nvars
    df = SMOOTH.differential(f)
    rng = np.random.default_rng([cfg.seed, n, 7919])
    x = rng.uniform(*cfg.box, size=(n, cfg.points))
    v = rng.uniform(-1.0, 1.0, size=(n, cfg.points))
    worst = 0.0
    for t, dt in zip(f.comps, df.comps):
        sym = evaluate(dt, np.concatenate([x, v]))
        hi = evaluate(t, x + step * v)
        lo = evaluate(t, x - step * v)
        num = (np.asarray(hi, float) - np.asarray(lo, float)) / (2 * step)
        worst = max(worst, float(np.max(np.abs(sym - num), initial=0.0)))
    return worst


# ------------------------------------------------------------------ model


def _ident_terms(n: int, offset: int = 0):
    return tuple(var(offset + i) for i in range(n))


class SmoothModel(Model):
    name = "smooth"
    exact = False
    ground = R

    def __init__(self, cfg: SampledEq | None = None, max_depth: int = 4, coeff_range: int = 2):
        self.cfg = cfg or SampledEq()
        self.max_depth = max_depth
        self.coeff_range = coeff_range

    def contract(self):
        return self.cfg.contract()

    def identity(self, a):
        return SmoothMap(a, a, _ident_terms(size(a)))

    def proj0(self, a, b):
        return SmoothMap(Prod(a, b), a, _ident_terms(size(a)))

    def proj1(self, a, b):
        return SmoothMap(Prod(a, b), b, _ident_terms(size(b), size(a)))

    def zero(self, a, b):
        return SmoothMap(a, b, (ZERO,) * size(b))

    def pair(self, f, g):
        if f.dom != g.dom:
            raise ShapeError(f"cannot pair maps out of {fmt(f.dom)} and {fmt(g.dom)}")
        return SmoothMap(f.dom, Prod(f.cod, g.cod), f.comps + g.comps)

    def add(self, f, g):
        self.check_parallel(f, g, "cannot add")
        return SmoothMap(f.dom, f.cod, tuple(add(s, t) for s, t in zip(f.comps, g.comps)))

    def compose(self, f, g):
        self.check_composable(f, g)
        memo = {}
        images = f.comps
        comps = tuple(rebuild(t, images.__getitem__, memo) for t in g.comps)
        return SmoothMap(f.dom, g.cod, comps)

    def equal(self, f, g):
        self.check_parallel(f, g, "cannot compare")
        return self.cfg.equal(f, g)

    def render(self, f):
        return f"{fmt(f.dom)}->{fmt(f.cod)}:[{','.join(format_term(t, default_names(f.nvars), False) for t in f.comps)}]"

    def parse_morphism(self, text):
        head, body = text.strip().split(":", 1)
        dom_s, cod_s = head.split("->")
        dom, cod = parse_shape(dom_s), parse_shape(cod_s)
        names = default_names(size(dom))
        index = {n: i for i, n in enumerate(names)}
        comps = () if body == "[]" else tuple(
            ast_to_term(c, index) for c in parse(body, FUNCS).components)
        return SmoothMap(dom, cod, comps)

    # --- combinators ----------------------------------------------------

    def differential(self, f):
        n = f.nvars
        direction = _ident_terms(n, n)
        return SmoothMap(Prod(f.dom, f.dom), f.cod,
                         tuple(directional(t, direction) for t in f.comps))

    def linearize(self, f):
        """``sum_j (d f / d x_j)(0) * x_j``, with exp/sin/cos folded at zero."""
        return self._linear_part(f, 0)

    def partial_linearize(self, context, f):
        if not isinstance(f.dom, Prod):
            raise ShapeError(f"partial linearization needs a product domain, got {fmt(f.dom)}")
        require_equal(f.dom.left, context, "context")
        return self._linear_part(f, size(context))

    def _linear_part(self, f, k):
        n = f.nvars
        at = [var(i) if i < k else ZERO for i in range(n)]
        comps = []
        for t in f.comps:
            pieces = []
            for j in range(k, n):
                dj = substitute(partial(t, j, n), at)
                pieces.append(mul(dj, var(j)))
            comps.append(total(pieces))
        return SmoothMap(f.dom, f.cod, tuple(comps))

    # --- generation -----------------------------------------------------

    def random_term(self, rng, nvars, depth=None, exp_ok=True, lo=0):
        depth = self.max_depth if depth is None else depth
        r = self.coeff_range
        if nvars - lo <= 0 or depth == 0 or rng.random() < 0.25:
            if nvars - lo > 0 and rng.random() < 0.75:
                return var(rng.randrange(lo, nvars))
            return const(Fraction(rng.randint(-2 * r, 2 * r), 2))
        op = rng.choice(["add", "add", "mul", "mul", "neg", "sin", "cos", "exp", "pow"])
        if op == "exp" and not exp_ok:
            op = "sin"
        sub_ = lambda: self.random_term(rng, nvars, depth - 1, exp_ok and op != "exp", lo)
        if op == "add":
            return add(sub_(), sub_())
        if op == "mul":
            return mul(sub_(), sub_())
        if op == "neg":
            return neg(sub_())
        if op == "pow":
            return power(sub_(), rng.choice([2, 3]))
        return call(op, sub_())

    def random_component(self, rng, n, kind=None, split=0):
        if kind == "constant":
            return self.random_term(rng, split) if split else const(rng.randint(-2, 2))
        if kind == "linear":
            pieces = []
            for j in range(split, n):
                coeff = self.random_term(rng, split, depth=2) if split else const(rng.randint(-2, 2))
                pieces.append(mul(coeff, var(j)))
            return total(pieces)
        t = self.random_term(rng, n)
        if kind == "reduced":
            at_zero = substitute(t, [var(i) if i < split else ZERO for i in range(n)])
            return sub(t, at_zero)
        return t

    def random_map(self, rng, dom, cod, kind=None, split=0):
        n = size(dom)
        return SmoothMap(dom, cod, tuple(self.random_component(rng, n, kind, split)
                                         for _ in range(size(cod))))

    def shrink(self, f):
        for i, t in enumerate(f.comps):
            candidates = list(t.kids)
            if not is_const(t):
                candidates.append(ZERO)
            for c in candidates:
                if max_var(c) < f.nvars:
                    comps = f.comps[:i] + (c,) + f.comps[i + 1:]
                    yield SmoothMap(f.dom, f.cod, comps)


SMOOTH = SmoothModel()
