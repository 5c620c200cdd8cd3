"""Deliberately broken combinators, used to show the law suite has teeth."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import kernels as K
from .shapes import Prod


@dataclass(frozen=True)
class Mutant:
    name: str
    target: str  # "D", "L" or "Lc"
    doc: str
    build: Callable  # (model, D, L, Lc) -> replacement combinator
    models: tuple = ("poly", "tower", "smooth", "biproduct", "closed")


def _d_zero(m, D, L, Lc):
    return lambda f: m.zero(Prod(f.dom, f.dom), f.cod)


def _d_double(m, D, L, Lc):
    return lambda f: m.add(D(f), D(f))


def _d_swap(m, D, L, Lc):
    return lambda f: m.compose(m.sym(f.dom, f.dom), D(f))


def _d_plus_f(m, D, L, Lc):
    return lambda f: m.add(D(f), m.compose(m.proj0(f.dom, f.dom), f))


def _d_at_zero(m, D, L, Lc):
    def d(f):
        a = f.dom
        return m.compose(m.times(m.zero(a, a), m.identity(a)), D(f))
    return d


def _d_no_power_rule(m, D, L, Lc):
    from .poly import PolyMap

    def pdiff_flat(p, n):
        out = {}
        for key, c in p.items():
            for i, e in enumerate(K.exponents(key, n)):
                if e:
                    out = K.padd(out, {key - K.unit(i) + K.unit(n + i): c})
        return out

    def d(f):
        n = f.nvars
        return PolyMap(Prod(f.dom, f.dom), f.cod, tuple(pdiff_flat(p, n) for p in f.comps))

    return d


def _l_identity(m, D, L, Lc):
    return lambda f: f


def _l_keep_constant(m, D, L, Lc):
    return lambda f: m.add(L(f), m.const_zero_of(f))


def _l_double(m, D, L, Lc):
    return lambda f: m.add(L(f), L(f))


def _l_degree_two(m, D, L, Lc):
    from .poly import PolyMap

    def lin(f):
        comps = tuple({k: c for k, c in p.items() if K.key_degree(k) in (1, 2)} for p in f.comps)
        return PolyMap(f.dom, f.cod, comps)

    return lin


def _lc_total(m, D, L, Lc):
    return lambda ctx, f: L(f)


def _lc_ignore_context(m, D, L, Lc):
    def lc(ctx, f):
        a = f.dom.right
        return m.compose(m.times(m.zero(ctx, ctx), m.identity(a)), Lc(ctx, f))
    return lc


def _lc_keep_constant(m, D, L, Lc):
    def lc(ctx, f):
        a = f.dom.right
        at_zero = m.compose(m.pair(m.proj0(ctx, a), m.zero(Prod(ctx, a), a)), f)
        return m.add(Lc(ctx, f), at_zero)
    return lc


MUTANTS = {mu.name: mu for mu in [
    Mutant("cd3-zero", "D", "D[f] = 0", _d_zero),
    Mutant("d-double", "D", "D[f] doubled", _d_double),
    Mutant("d-swap", "D", "point and direction exchanged", _d_swap),
    Mutant("d-plus-f", "D", "D[f] + pi0 f", _d_plus_f),
    Mutant("d-at-zero", "D", "derivative always taken at the origin", _d_at_zero,
           ("poly", "tower", "smooth", "closed")),
    Mutant("d-no-power-rule", "D", "exponent factor dropped when differentiating",
           _d_no_power_rule, ("poly",)),
    Mutant("l-no-filter", "L", "L[f] = f", _l_identity, ("poly", "tower", "smooth", "closed")),
    Mutant("l-keep-constant", "L", "L[f] keeps the constant term", _l_keep_constant,
           ("poly", "tower", "smooth", "closed")),
    Mutant("l-double", "L", "L[f] doubled", _l_double),
    Mutant("l-degree-two", "L", "keeps monomials of degree one and two", _l_degree_two,
           ("poly",)),
    Mutant("lc-total", "Lc", "context ignored: joint linearization in all variables", _lc_total),
    Mutant("lc-ignore-context", "Lc", "context evaluated at zero", _lc_ignore_context,
           ("poly", "tower", "smooth", "closed")),
    Mutant("lc-keep-constant", "Lc", "keeps the part constant in the argument",
           _lc_keep_constant),
]}


def apply_mutant(name: str, model_id: str, model, D, L, Lc):
    """Return ``(D, L, Lc)`` with the named combinator replaced."""
    try:
        mu = MUTANTS[name]
    except KeyError:
        raise KeyError(f"unknown mutant {name!r}; known: {', '.join(sorted(MUTANTS))}") from None
    if model_id not in mu.models:
        raise ValueError(f"mutant {name} is not defined for model {model_id}")
    broken = mu.build(model, D, L, Lc)
    if mu.target == "D":
        return broken, L, Lc
    if mu.target == "L":
        return D, broken, Lc
    return D, L, broken
