"""Command-line front end."""
from __future__ import annotations

import math
import os
import re
import sys

import click
import numpy as np

from . import combinators as C
from .expr import FUNCS, ParseError, fresh_names, parse
from .laws import run_law
from .poly import POLY, PolyMap, flat_shape, format_map, parse_poly
from .shapes import ONE, Prod, ShapeError, fmt, has_hom, parse_shape, size
from .smooth import SMOOTH, format_smooth, parse_smooth
from .suites import MODELS, SUITES, UsageError, default_budget, select

FORMATS = ("text", "structured")


class InputError(Exception):
    """Bad user input; reported on stderr with exit status 2."""


def _ctx_names(values) -> list:
    out = []
    for v in values:
        out += [n for n in re.split(r"[,\s]+", v) if n]
    return out


def _backend(model: str):
    if model == "poly":
        return POLY, parse_poly, format_map
    return SMOOTH, parse_smooth, format_smooth


def _parse(model: str, text: str, ctx=None):
    _, parse, _ = _backend(model)
    try:
        return parse(text, ctx)
    except ParseError:
        raise
    except (ValueError, ShapeError) as exc:
        raise InputError(str(exc)) from None


def _guard(fn):
    """Map input errors to exit status 2 with a message on stderr."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ParseError, InputError, UsageError, ShapeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _require_ctx(text: str, ctx):
    free = parse(text, FUNCS).free_vars()
    missing = [n for n in ctx if n not in free]
    if missing:
        raise InputError(f"unknown variable(s) in --ctx: {', '.join(missing)}")


def derivative_text(model: str, text: str, ctx=()) -> str:
    """``D[f]`` (or ``D^C[f]`` when a context is declared), printed with fresh direction names."""
    m, _, show = _backend(model)
    parsed = _parse(model, text, ctx)
    _require_ctx(text, ctx)
    f = parsed.fmap
    if parsed.ctx:
        df = C.d_in_context(m, m.differential, f.dom.left)(f)
    else:
        df = m.differential(f)
    names = list(parsed.names) + fresh_names(parsed.names, parsed.args)
    return show(df, names)


def linear_text(model: str, text: str) -> str:
    m, _, show = _backend(model)
    parsed = _parse(model, text)
    f = parsed.fmap
    if parsed.ctx:
        # a ctx(...) header makes the map live in a slice; linearize the whole thing anyway
        f = type(f)(flat_shape(f.nvars), f.cod, f.comps)
    return show(m.linearize(f), list(parsed.names))


def partial_linear_text(model: str, text: str, ctx) -> str:
    m, _, show = _backend(model)
    parsed = _parse(model, text, ctx)
    if not parsed.ctx:
        raise InputError("plin needs at least one context variable (--ctx or a ctx(...) header)")
    _require_ctx(text, ctx)
    f = parsed.fmap
    return show(m.partial_linearize(f.dom.left, f), list(parsed.names))


# ------------------------------------------------------------------ demos


def interchange_demo() -> list:
    """Partial linearizations of ``x*y + 2*x*y^3 + 3*x + 4*y`` in each variable."""
    parsed = parse_poly("x*y + 2*x*y^3 + 3*x + 4*y")
    g = parsed.fmap
    f = PolyMap(Prod(ONE, g.dom), g.cod, g.comps)  # empty context
    lc = POLY.partial_linearize
    l0, l1 = C.partial_ops(POLY, lc, ONE)
    names = list(parsed.names)
    a, b = l0(f), l1(f)
    ab, ba = l1(a), l0(b)
    return [
        f"f         = {format_map(f, names)}",
        f"L0[f]     = {format_map(a, names)}",
        f"L1[f]     = {format_map(b, names)}",
        f"L1[L0[f]] = {format_map(ab, names)}",
        f"L0[L1[f]] = {format_map(ba, names)}",
        f"composites agree: {'yes' if POLY.equal(ab, ba) else 'no'}",
    ]


def c1_demo() -> list:
    """``|x|^(3/2)`` has a continuous derivative whose own derivative blows up at 0."""

    def f(x):
        return abs(x) ** 1.5

    def fprime(x):
        return 0.0 if x == 0 else 1.5 * x / math.sqrt(abs(x))

    lines = [
        "f(x) = |x|^(3/2) is continuously differentiable:",
        "  f'(x) = 3x / (2 sqrt|x|), with f'(0) = 0",
    ]
    for h in (1e-2, 1e-4, 1e-6):
        q = (f(h) - f(0.0)) / h
        lines.append(f"  (f(h) - f(0))/h at h={h:g}: {q:.6g}")
    lines.append("The candidate derivative D[f](x, y) = f'(x) y is continuous but not C^1:")
    for h in (1e-2, 1e-4, 1e-6):
        q = (fprime(h) - fprime(0.0)) / h
        lines.append(f"  (f'(h) - f'(0))/h at h={h:g}: {q:.6g}")
    lines += [
        "The quotient grows like 3/(2 sqrt h), so D[f] leaves the class of C^1 maps.",
        "Linearizing at zero is still defined on C^1 maps, but no differential",
        "combinator, and hence no linearization in context, exists there.",
    ]
    return lines


# ------------------------------------------------------------------ closed terms

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SHAPE_ARGS = {"ev": 2, "eta": 2, "mu": 2, "id": 1, "pi0": 2, "pi1": 2}
_UNARY = ("curry", "uncurry", "D", "L", "Lc")
_NARY = ("hom", "then", "pair", "add")


class _TermParser:
    def __init__(self, model, text: str, defs: dict):
        self.m = model
        self.text = text
        self.defs = defs
        self.pos = 0

    def fail(self, msg, pos=None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip()
        if self.text[self.pos:self.pos + 1] != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def ident(self):
        self.skip()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail("expected a name")
        self.pos = m.end()
        return m.group(0), m.start()

    def shape_arg(self):
        self.skip()
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                break
            self.pos += 1
        try:
            return parse_shape(self.text[start:self.pos])
        except ShapeError as exc:
            self.fail(str(exc), start)

    def term(self):
        name, at = self.ident()
        if name in _SHAPE_ARGS:
            self.expect("(")
            shapes = [self.shape_arg()]
            for _ in range(_SHAPE_ARGS[name] - 1):
                self.expect(",")
                shapes.append(self.shape_arg())
            self.expect(")")
            return self.build(name, shapes, at)
        if name in _UNARY or name in _NARY:
            self.expect("(")
            args = [self.term()]
            self.skip()
            while self.text[self.pos:self.pos + 1] == ",":
                self.pos += 1
                args.append(self.term())
                self.skip()
            self.expect(")")
            if name in _UNARY and len(args) != 1:
                self.fail(f"{name} takes one argument", at)
            if name == "hom" and len(args) != 2:
                self.fail("hom takes two arguments", at)
            return self.build(name, args, at)
        if name not in self.defs:
            self.fail(f"unknown map {name!r}", at)
        return self.defs[name]

    def build(self, name, args, at):
        m = self.m
        try:
            if name == "ev":
                return m.ev(*args)
            if name == "eta":
                return m.eta(*args)
            if name == "mu":
                return m.mu(*args)
            if name == "id":
                return m.identity(*args)
            if name == "pi0":
                return m.proj0(*args)
            if name == "pi1":
                return m.proj1(*args)
            if name == "curry":
                return m.curry(args[0])
            if name == "uncurry":
                return m.uncurry(args[0])
            if name == "D":
                return m.differential(args[0])
            if name == "L":
                return m.linearize(args[0])
            if name == "Lc":
                f = args[0]
                if not isinstance(f.dom, Prod):
                    raise ShapeError(f"Lc needs a map out of a product, got {fmt(f.dom)}")
                return m.partial_linearize(f.dom.left, f)
            if name == "hom":
                return m.hom_map(*args)
            if name == "then":
                return m.then(*args)
            if name == "pair":
                return m.pair(args[0], m.pair(*args[1:]) if len(args) > 2 else args[1])
            return m.sum(*args)
        except ShapeError as exc:
            self.fail(str(exc), at)

    def parse(self):
        out = self.term()
        self.skip()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return out


def closed_term(model, text: str, defs: dict):
    return _TermParser(model, text, defs).parse()


def _closed_point(shape, numbers):
    leaves = iter(np.array([x]) for x in numbers)

    def build(s):
        if isinstance(s, Prod):
            left = build(s.left)
            return (left, build(s.right))
        if s == ONE:
            return ()
        return next(leaves)

    return build(shape)


def _show_value(v, shape) -> str:
    if isinstance(shape, Prod):
        return f"({_show_value(v[0], shape.left)}, {_show_value(v[1], shape.right)})"
    if shape == ONE:
        return "()"
    if has_hom(shape):
        return f"<function {fmt(shape)}>"
    return f"{float(np.asarray(v).reshape(-1)[0]):.12g}"


def closed_eval(text: str, defs: dict, at=None) -> list:
    from .closed import CLOSED

    maps = {}
    for name, body in defs.items():
        try:
            maps[name] = CLOSED.from_smooth(parse_smooth(body).fmap, name)
        except ParseError:
            raise
        except ValueError as exc:
            raise InputError(f"--def {name}: {exc}") from None
    f = closed_term(CLOSED, text, maps)
    lines = [f"{fmt(f.dom)} -> {fmt(f.cod)}"]
    if at is not None:
        if has_hom(f.dom):
            raise InputError("--at needs a domain without function spaces")
        if len(at) != size(f.dom):
            raise InputError(f"--at has {len(at)} values, {fmt(f.dom)} needs {size(f.dom)}")
        lines.append(_show_value(f(_closed_point(f.dom, at)), f.cod))
    return lines


# ------------------------------------------------------------------ commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Differential and linearizing combinators: compute them, check their laws."""


_model_opt = click.option("--model", type=click.Choice(["poly", "smooth"]), default="poly",
                          show_default=True)
_ctx_opt = click.option("--ctx", multiple=True, help="context variables, comma separated")


@cli.command()
@_model_opt
@_ctx_opt
@click.argument("expr")
@_guard
def diff(model, ctx, expr):
    """Print the derivative D[f]; with --ctx, the derivative in the remaining variables."""
    click.echo(derivative_text(model, expr, _ctx_names(ctx)))


@cli.command()
@_model_opt
@click.argument("expr")
@_guard
def lin(model, expr):
    """Print the linearization L[f] at zero."""
    click.echo(linear_text(model, expr))


@cli.command()
@_model_opt
@_ctx_opt
@click.argument("expr")
@_guard
def plin(model, ctx, expr):
    """Print the linearization of f in the non-context variables."""
    click.echo(partial_linear_text(model, expr, _ctx_names(ctx)))


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("CARTDIFF_SEED")
    if env is None or env == "":
        return 0
    try:
        value = int(env)
    except ValueError:
        raise InputError(f"CARTDIFF_SEED must be an integer, got {env!r}") from None
    if value < 0:
        raise InputError("CARTDIFF_SEED must be non-negative")
    return value


@cli.command()
@click.option("--model", type=click.Choice(MODELS), default="poly", show_default=True)
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=None,
              help="defaults to $CARTDIFF_SEED, then 0")
@click.option("--budget", type=click.IntRange(min=1), default=None,
              help="cases per law [default: 500 exact, 100 sampled]")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=None,
              help="sampled models only [default: 1e-6]")
@click.option("--points", type=click.IntRange(min=1), default=None,
              help="sampled models only [default: 100]")
@click.option("--format", "fmt_", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--mutant", default=None, help="replace a combinator by a documented broken one")
@click.option("--shrink/--no-shrink", default=True, show_default=True,
              help="minimize counterexamples")
@_guard
def laws(model, suite, seed, budget, tol, points, fmt_, mutant, shrink):
    """Check a law suite; exit status 0 only if every law passes."""
    seed = _resolve_seed(seed)
    sel = select(model, suite, mutant, tol, points, seed)
    budget = budget or default_budget(sel.model)
    contract = sel.contract
    if fmt_ == "text":
        extra = f" mutant={mutant}" if mutant else ""
        click.echo(f"# model={model} suite={suite} seed={seed} budget={budget} "
                   f"eq={contract}{extra}")
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for law in sorted(sel.laws, key=lambda law: law.id):
        rep = run_law(law, model, seed, budget, contract, shrink=shrink)
        counts[rep.status] += 1
        if fmt_ == "structured":
            click.echo(rep.line())
            continue
        row = f"{rep.status.upper():4}  {rep.law:24} cases={rep.cases}"
        if rep.skipped:
            row += f" skipped={rep.skipped}"
        click.echo(row)
        if rep.counterexample:
            click.echo(f"      counterexample={rep.counterexample}")
    if fmt_ == "text":
        click.echo(f"# {sum(counts.values())} laws: {counts['pass']} pass, "
                   f"{counts['fail']} fail, {counts['skip']} skip")
    sys.exit(0 if counts["fail"] == counts["skip"] == 0 else 1)


@cli.command()
@click.argument("name", type=click.Choice(["interchange", "c1"]))
def demo(name):
    """Worked examples: partial linearization in two variables, or a C^1 obstruction."""
    for line in (interchange_demo() if name == "interchange" else c1_demo()):
        click.echo(line)


def _parse_defs(items) -> dict:
    out = {}
    for item in items:
        name, sep, body = item.partition("=")
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name.strip()):
            raise InputError(f"--def expects name=expression, got {item!r}")
        out[name.strip()] = body
    return out


def _parse_point(text):
    if text is None:
        return None
    try:
        return [float(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError:
        raise InputError(f"--at expects numbers, got {text!r}") from None


@cli.command()
@click.argument("term")
@click.option("--def", "defs", multiple=True, metavar="NAME=EXPR",
              help="name a smooth map, e.g. f='ctx(z) args(x) z*x^2'")
@click.option("--at", default=None, help="evaluate at these input values")
@_guard
def closed(term, defs, at):
    """Evaluate a term built from curry, uncurry, ev, eta, mu, hom, D, L and Lc."""
    for line in closed_eval(term, _parse_defs(defs), _parse_point(at)):
        click.echo(line)


def main(argv=None):
    cli.main(args=argv, prog_name="cartdiff")
