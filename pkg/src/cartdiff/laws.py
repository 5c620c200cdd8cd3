"""Law catalogue, case runner, counterexample shrinking and reports.

A law is a named generator of cases.  A case holds shrinkable input maps and
a check that turns the inputs into pairs of maps that must be equal (or
``None`` when a precondition fails).  Every case draws from its own RNG,
seeded by ``(seed, law id, case index)``, so any failure can be replayed.
"""
from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import combinators as C
from .category import Model, Slice
from .shapes import ONE, Prod


def case_rng(seed: int, law_id: str, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{law_id}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class Case:
    model: Model
    inputs: list
    check: Callable
    compare: Callable | None = None
    show: Callable | None = None

    def sides(self, inputs=None):
        return self.check(list(self.inputs if inputs is None else inputs))

    def failing_pair(self, inputs=None):
        """The first unequal pair, ``None`` when all hold, ``"skip"`` on a failed precondition."""
        pairs = self.sides(inputs)
        if pairs is None:
            return "skip"
        eq = self.compare or self.model.equal
        for lhs, rhs in pairs:
            if not eq(lhs, rhs):
                return lhs, rhs
        return None

    def render(self, x) -> str:
        if self.show is not None:
            return self.show(x)
        if self.model.is_morphism(x):
            return self.model.render(x)
        return str(x)


@dataclass
class Law:
    id: str
    family: str
    make: Callable  # rng -> Case | None
    doc: str = ""


@dataclass
class LawReport:
    law: str
    model: str
    seed: int
    cases: int
    status: str
    eq: str
    counterexample: str | None = None
    case_index: int | None = None
    skipped: int = 0
    seconds: float = 0.0
    note: str = ""
    inputs: list = field(default_factory=list)

    def line(self) -> str:
        out = (f"law={self.law} model={self.model} seed={self.seed} cases={self.cases} "
               f"status={self.status} eq={self.eq}")
        if self.counterexample is not None:
            out += f" counterexample={self.counterexample}"
        return out

    @classmethod
    def parse_line(cls, line: str) -> "LawReport":
        fields = dict(tok.split("=", 1) for tok in line.split())
        cx = fields.get("counterexample")
        idx = None
        if cx is not None:
            idx = int(cx.split(";", 1)[0].split(":", 1)[1])
        return cls(fields["law"], fields["model"], int(fields["seed"]), int(fields["cases"]),
                   fields["status"], fields["eq"], cx, idx)


def _compact(text: str) -> str:
    return "".join(text.split())


def shrink_case(case: Case, inputs: list, max_steps: int = 400) -> list:
    """Greedy minimization: accept any single-input shrink that still fails."""
    steps = 0
    improved = True
    while improved and steps < max_steps:
        improved = False
        for i, x in enumerate(inputs):
            owner = case.model
            if not owner.is_morphism(x):
                continue
            for cand in owner.shrink(x):
                steps += 1
                trial = inputs[:i] + [cand] + inputs[i + 1:]
                try:
                    res = case.failing_pair(trial)
                except Exception:
                    res = None
                if res not in (None, "skip"):
                    inputs = trial
                    improved = True
                    break
                if steps >= max_steps:
                    break
            if improved or steps >= max_steps:
                break
    return inputs


def describe_failure(case: Case, index: int, inputs: list, res) -> str:
    parts = [f"case:{index}", "inputs:" + "|".join(case.render(x) for x in inputs)]
    if isinstance(res, Exception):
        parts.append(f"error:{type(res).__name__}:{res}")
    else:
        parts.append(f"lhs:{case.render(res[0])}")
        parts.append(f"rhs:{case.render(res[1])}")
    return _compact(";".join(parts))


def run_law(law: Law, model_name: str, seed: int, budget: int, contract: str,
            shrink: bool = True) -> LawReport:
    start = time.perf_counter()
    ran = skipped = 0
    for i in range(budget):
        rng = case_rng(seed, law.id, i)
        case = law.make(rng)
        if case is None:
            skipped += 1
            continue
        try:
            res = case.failing_pair()
        except Exception as exc:  # a broken combinator may not even typecheck
            res = exc
        if res == "skip":
            skipped += 1
            continue
        ran += 1
        if res is None:
            continue
        inputs = list(case.inputs)
        if shrink and not isinstance(res, Exception):
            inputs = shrink_case(case, inputs)
            res = case.failing_pair(inputs)
        return LawReport(law.id, model_name, seed, ran, "fail", contract,
                         describe_failure(case, i, inputs, res), i, skipped,
                         time.perf_counter() - start, inputs=inputs)
    status = "pass" if ran else "skip"
    return LawReport(law.id, model_name, seed, ran, status, contract, None, None, skipped,
                     time.perf_counter() - start)


def replay(law: Law, report: LawReport, shrink: bool = True) -> str | None:
    """Rebuild the failing case of ``report`` and return its counterexample (or None)."""
    if report.case_index is None:
        return None
    rng = case_rng(report.seed, law.id, report.case_index)
    case = law.make(rng)
    try:
        res = case.failing_pair()
    except Exception as exc:
        res = exc
    if res in (None, "skip"):
        return None
    inputs = list(case.inputs)
    if shrink and not isinstance(res, Exception):
        inputs = shrink_case(case, inputs)
        res = case.failing_pair(inputs)
    return describe_failure(case, report.case_index, inputs, res)


def recheck_inputs(law: Law, report: LawReport, inputs: list):
    """Run the check of the reported case on explicit inputs; returns the failing pair or None."""
    case = law.make(case_rng(report.seed, law.id, report.case_index))
    return case.failing_pair(inputs)


# ------------------------------------------------------------------ generation


@dataclass
class GenConfig:
    max_leaves: int = 3
    block_leaves: int = 2
    unit_context_prob: float = 0.15


def _shape(model, rng, k):
    return model.random_shape(rng, k)


def _context(model, rng, cfg: GenConfig):
    if rng.random() < cfg.unit_context_prob:
        return ONE
    return model.random_shape(rng, cfg.block_leaves)


def _blocks(model, rng, n, cfg: GenConfig):
    return [model.random_shape(rng, cfg.block_leaves) for _ in range(n)]


def _pairs(*pairs):
    return list(pairs)


# ------------------------------------------------------------------ families


def cd_laws(model: Model, D, cfg: GenConfig = GenConfig(), prefix: str = "CD",
            base=None) -> list:
    """``[CD.1]``-``[CD.7]`` for the differential combinator ``D`` on ``model``.

    ``base`` maps a case RNG to ``(model, D)``; it lets the same laws run in
    a freshly drawn slice for every case.
    """
    pick = base or (lambda rng: (model, D))
    m0 = model

    def shapes(rng, m):
        return _shape(m0, rng, cfg.max_leaves), _shape(m0, rng, cfg.max_leaves - 1 or 1)

    def cd1(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        f, g = m.random_map(rng, a, b), m.random_map(rng, a, b)
        return Case(m, [f, g], lambda xs: _pairs(
            (d(m.add(xs[0], xs[1])), m.add(d(xs[0]), d(xs[1]))),
            (d(m.zero(a, b)), m.zero(Prod(a, a), b))))

    def cd2(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        f = m.random_map(rng, a, b)

        def check(xs):
            df = d(xs[0])
            one = m.identity(a)
            lhs = m.compose(m.times(one, m.oplus(a)), df)
            rhs = m.add(m.compose(m.times(one, m.proj0(a, a)), df),
                        m.compose(m.times(one, m.proj1(a, a)), df))
            return _pairs((lhs, rhs), (m.compose(m.inject0(a, a), df), m.zero(a, b)))

        return Case(m, [f], check)

    def cd3(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        ab = Prod(a, b)
        return Case(m, [], lambda xs: _pairs(
            (d(m.identity(a)), m.proj1(a, a)),
            (d(m.proj0(a, b)), m.compose(m.proj1(ab, ab), m.proj0(a, b))),
            (d(m.proj1(a, b)), m.compose(m.proj1(ab, ab), m.proj1(a, b)))))

    def cd4(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b), m.random_map(rng, a, c)
        return Case(m, [f, g], lambda xs: _pairs(
            (d(m.pair(xs[0], xs[1])), m.pair(d(xs[0]), d(xs[1])))))

    def cd5(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b), m.random_map(rng, b, c)

        def check(xs):
            f, g = xs
            lhs = d(m.compose(f, g))
            rhs = m.compose(m.pair(m.compose(m.proj0(a, a), f), d(f)), d(g))
            return _pairs((lhs, rhs))

        return Case(m, [f, g], check)

    def cd6(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        f = m.random_map(rng, a, b)
        return Case(m, [f], lambda xs: _pairs(
            (m.compose(m.lift(a, a, a, a), d(d(xs[0]))), d(xs[0]))))

    def cd7(rng):
        m, d = pick(rng)
        a, b = shapes(rng, m)
        f = m.random_map(rng, a, b)

        def check(xs):
            ddf = d(d(xs[0]))
            return _pairs((m.compose(m.interchange(a, a, a, a), ddf), ddf))

        return Case(m, [f], check)

    gens = [cd1, cd2, cd3, cd4, cd5, cd6, cd7]
    return [Law(f"{prefix}.{i + 1}", "cd", g) for i, g in enumerate(gens)]


def l_laws(model: Model, L, cfg: GenConfig = GenConfig(), prefix: str = "L",
           base=None) -> list:
    """``[L.1]``-``[L.6]`` plus the constant/reduced/semi-additive simplifications."""
    pick = base or (lambda rng: (model, L))
    m0 = model

    def shapes(rng):
        return _shape(m0, rng, cfg.max_leaves), _shape(m0, rng, 2)

    def l1(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        f, g = m.random_map(rng, a, b), m.random_map(rng, a, b)
        return Case(m, [f, g], lambda xs: _pairs(
            (lin(m.add(xs[0], xs[1])), m.add(lin(xs[0]), lin(xs[1]))),
            (lin(m.zero(a, b)), m.zero(a, b))))

    def l2(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        f = m.random_map(rng, a, b)

        def check(xs):
            lf = lin(xs[0])
            return _pairs(
                (m.compose(m.oplus(a), lf),
                 m.add(m.compose(m.proj0(a, a), lf), m.compose(m.proj1(a, a), lf))),
                (m.const_zero_of(lf), m.zero(a, b)))

        return Case(m, [f], check)

    def l3(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        return Case(m, [], lambda xs: _pairs(
            (lin(m.identity(a)), m.identity(a)),
            (lin(m.proj0(a, b)), m.proj0(a, b)),
            (lin(m.proj1(a, b)), m.proj1(a, b))))

    def l4(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b), m.random_map(rng, a, c)
        return Case(m, [f, g], lambda xs: _pairs(
            (lin(m.pair(xs[0], xs[1])), m.pair(lin(xs[0]), lin(xs[1])))))

    def l5(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b), m.random_map(rng, b, c)

        def check(xs):
            f, g = xs
            shifted = m.add(m.identity(b), m.compose(m.zero(b, a), f))
            return _pairs((lin(m.compose(f, g)), m.compose(lin(f), lin(m.compose(shifted, g)))))

        return Case(m, [f, g], check)

    def l6(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        f = m.random_map(rng, a, b)
        return Case(m, [f], lambda xs: _pairs((lin(lin(xs[0])), lin(xs[0]))))

    def lconst(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        f = m.random_map(rng, a, b, kind="constant")

        def check(xs):
            if not m.is_constant(xs[0]):
                return None
            return _pairs((lin(xs[0]), m.zero(a, b)))

        return Case(m, [f], check)

    def lreduced(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b, kind="reduced"), m.random_map(rng, b, c)

        def check(xs):
            if not m.is_reduced(xs[0]):
                return None
            return _pairs((lin(m.compose(xs[0], xs[1])), m.compose(lin(xs[0]), lin(xs[1]))))

        return Case(m, [f, g], check)

    def lsemi(rng):
        m, lin = pick(rng)
        a, b = shapes(rng)
        c = _shape(m0, rng, 2)
        f, g = m.random_map(rng, a, b), m.random_map(rng, b, c, kind="linear")

        def check(xs):
            if not m.is_semi_additive(xs[1]):
                return None
            return _pairs((lin(m.compose(xs[0], xs[1])), m.compose(lin(xs[0]), lin(xs[1]))))

        return Case(m, [f, g], check)

    gens = [l1, l2, l3, l4, l5, l6]
    out = [Law(f"{prefix}.{i + 1}", "l", g) for i, g in enumerate(gens)]
    out += [Law(f"{prefix}.const", "l", lconst), Law(f"{prefix}.reduced", "l", lreduced),
            Law(f"{prefix}.semiadd", "l", lsemi)]
    return out


def _slice_picker(model, comb, cfg, wrap):
    def pick(rng):
        ctx = _context(model, rng, cfg)
        s = Slice(model, ctx)
        return s, wrap(s, ctx, comb)

    return pick


def system_laws(model: Model, Lc, cfg: GenConfig = GenConfig()) -> list:
    """``[L.1]``-``[L.8]`` for a linearizing system, in randomly drawn slices."""

    def wrap(s, ctx, comb):
        return lambda f: s.wrap(comb(ctx, f.inner))

    pick = _slice_picker(model, Lc, cfg, wrap)
    laws = l_laws(model, None, cfg, prefix="Lc", base=pick)
    m = model

    def l7(rng):
        c = _context(m, rng, cfg)
        a, b, d = _blocks(m, rng, 3, cfg)
        f = m.random_map(rng, Prod(c, Prod(a, b)), d)

        def check(xs):
            l0, l1 = C.partial_ops(m, Lc, c)
            return _pairs((l1(l0(xs[0])), l0(l1(xs[0]))))

        return Case(m, [f], check)

    def l7a(rng):
        c = _context(m, rng, cfg)
        a, b, d, e = _blocks(m, rng, 4, cfg)
        f = m.random_map(rng, Prod(Prod(c, a), Prod(b, d)), e)
        return Case(m, [f], lambda xs: _pairs(C.interchange_sides(m, Lc, xs[0])))

    def l8(rng):
        c2 = _context(m, rng, cfg)
        c1 = _context(m, rng, cfg)
        a, b = _blocks(m, rng, 2, cfg)
        h = m.random_map(rng, c1, c2)
        f = m.random_map(rng, Prod(c2, a), b)

        def check(xs):
            h, f = xs
            h1 = m.times(h, m.identity(a))
            return _pairs((m.compose(h1, Lc(c2, f)), Lc(c1, m.compose(h1, f))))

        return Case(m, [h, f], check)

    laws += [Law("L.7", "system", l7), Law("L.7.a", "system", l7a), Law("L.8", "system", l8)]
    return laws


def interchange_equivalence(model: Model, Lc, cfg: GenConfig = GenConfig()) -> list:
    """Both interchange forms must give the same verdict on a shared map.

    A map ``f : C*(A*B) -> D`` is tested directly by the two-operator form
    and, reshaped to ``(C*A)*(B*1) -> D``, by the interchange form.
    """
    m = model

    def gen(rng):
        c = _context(m, rng, cfg)
        a, b, d = _blocks(m, rng, 3, cfg)
        f = m.random_map(rng, Prod(c, Prod(a, b)), d)

        def check(xs):
            f = xs[0]
            l0, l1 = C.partial_ops(m, Lc, c)
            v7 = m.equal(l1(l0(f)), l0(l1(f)))
            reshaped = m.compose(C.drop_unit(m, c, a, b), f)
            lhs, rhs = C.interchange_sides(m, Lc, reshaped)
            v7a = m.equal(lhs, rhs)
            return _pairs(("pass" if v7 else "fail", "pass" if v7a else "fail"))

        return Case(m, [f], check, compare=lambda x, y: x == y)

    return [Law("L.7~L.7.a", "system", gen)]


def roundtrip_laws(model: Model, D, Lc, L=None, cfg: GenConfig = GenConfig()) -> list:
    """Conversions between the three combinators and back."""
    m = model

    def rt_d(rng):
        a, b = _shape(m, rng, cfg.max_leaves), _shape(m, rng, 2)
        f = m.random_map(rng, a, b)
        d2 = C.d_from_system(m, C.lc_from_d(m, D))
        return Case(m, [f], lambda xs: _pairs((d2(xs[0]), D(xs[0]))))

    def rt_l(rng):
        c = _context(m, rng, cfg)
        a, b = _shape(m, rng, 2), _shape(m, rng, 2)
        f = m.random_map(rng, Prod(c, a), b)
        lc2 = C.lc_from_d(m, C.d_from_system(m, Lc))
        return Case(m, [f], lambda xs: _pairs((lc2(c, xs[0]), Lc(c, xs[0]))))

    def rt_total(rng):
        a, b = _shape(m, rng, cfg.max_leaves), _shape(m, rng, 2)
        f = m.random_map(rng, a, b)
        from_sys = C.total_l_from_system(m, Lc)
        from_d = C.l_from_d(m, D)

        def check(xs):
            out = [(from_sys(xs[0]), from_d(xs[0]))]
            if L is not None:
                out.append((L(xs[0]), from_d(xs[0])))
            return out

        return Case(m, [f], check)

    def rt_forms(rng):
        c = _context(m, rng, cfg)
        a, b = _shape(m, rng, 2), _shape(m, rng, 2)
        f = m.random_map(rng, Prod(c, a), b)

        def check(xs):
            f = xs[0]
            dc = C.d_in_context(m, D, c)(f)
            # <pi0, <0, pi1>> D^C[f]
            via_dc = m.compose(m.pair(m.proj0(c, a), m.compose(m.proj1(c, a), m.inject1(a, a))), dc)
            return _pairs((C.lc_from_d(m, D)(c, f), via_dc), (Lc(c, f), via_dc))

        return Case(m, [f], check)

    def rt_top(rng):
        a, b = _shape(m, rng, cfg.max_leaves), _shape(m, rng, 2)
        f = m.random_map(rng, a, b)
        s = Slice(m, ONE)

        def check(xs):
            f = xs[0]
            lifted = s.lift_base(f)
            dtop = C.d_in_context(m, D, ONE)(lifted.inner)
            # D^1[pi1 f] = (pi1 x 1) ... compared through <0,1>
            back = m.compose(m.inject1(ONE, Prod(a, a)), dtop)
            return _pairs((m.compose(m.inject1(ONE, a), lifted.inner), f), (back, D(f)))

        return Case(m, [f], check)

    return [Law("RT.D", "roundtrip", rt_d), Law("RT.Lc", "roundtrip", rt_l),
            Law("RT.L", "roundtrip", rt_total), Law("RT.forms", "roundtrip", rt_forms),
            Law("RT.top", "roundtrip", rt_top)]


def context_d_laws(model: Model, D, cfg: GenConfig = GenConfig()) -> list:
    """The partial derivative in context is again a differential combinator."""

    def wrap(s, ctx, comb):
        dc = C.d_in_context(model, comb, ctx)
        return lambda f: s.wrap(dc(f.inner))

    pick = _slice_picker(model, D, cfg, wrap)
    laws = cd_laws(model, None, cfg, prefix="Dc", base=pick)
    m = model

    def subst(rng):
        c2 = _context(m, rng, cfg)
        c1 = _context(m, rng, cfg)
        a, b = _blocks(m, rng, 2, cfg)
        h = m.random_map(rng, c1, c2)
        f = m.random_map(rng, Prod(c2, a), b)

        def check(xs):
            h, f = xs
            dc2 = C.d_in_context(m, D, c2)
            dc1 = C.d_in_context(m, D, c1)
            return _pairs((m.compose(m.times(h, m.identity(Prod(a, a))), dc2(f)),
                           dc1(m.compose(m.times(h, m.identity(a)), f))))

        return Case(m, [h, f], check)

    laws.append(Law("Dc.subst", "cd", subst))
    return laws


def linearity_laws(model: Model, D, L=None, Lc=None, cfg: GenConfig = GenConfig()) -> list:
    """Characterizations and closure properties of linear maps."""
    m = model
    lin_d = C.l_from_d(m, D)
    L = L or lin_d

    def is_lin(f):
        return m.equal(lin_d(f), f)

    def char_total(rng):
        a, b = _shape(m, rng, cfg.max_leaves), _shape(m, rng, 2)
        kind = rng.choice([None, "linear"])
        f = m.random_map(rng, a, b, kind=kind)

        def check(xs):
            f = xs[0]
            v1 = m.equal(m.compose(m.inject1(a, a), D(f)), f)
            v2 = m.equal(D(f), m.compose(m.proj1(a, a), f))
            return _pairs((v1, v2))

        return Case(m, [f], check, compare=lambda x, y: x == y)

    def char_context(rng):
        c = _context(m, rng, cfg)
        a, b = _shape(m, rng, 2), _shape(m, rng, 2)
        kind = rng.choice([None, "linear"])
        f = m.random_map(rng, Prod(c, a), b, kind=kind)
        if kind == "linear" and rng.random() < 0.5:
            f = C.lc_from_d(m, D)(c, f)

        def check(xs):
            f = xs[0]
            v1 = m.equal(C.lc_from_d(m, D)(c, f), f)
            dc = C.d_in_context(m, D, c)(f)
            v2 = m.equal(dc, m.compose(m.times(m.identity(c), m.proj1(a, a)), f))
            return _pairs((v1, v2))

        return Case(m, [f], check, compare=lambda x, y: x == y)

    def closure(rng):
        a, b, c = _shape(m, rng, 2), _shape(m, rng, 2), _shape(m, rng, 2)
        f, f2 = m.random_map(rng, a, b, kind="linear"), m.random_map(rng, a, b, kind="linear")
        g = m.random_map(rng, b, c, kind="linear")

        def check(xs):
            f, f2, g = xs
            if not (is_lin(f) and is_lin(f2) and is_lin(g)):
                return None
            built = [m.identity(a), m.zero(a, b), m.proj0(a, b), m.proj1(a, b),
                     m.compose(f, g), m.pair(f, f2), m.add(f, f2)]
            return [(lin_d(x), x) for x in built]

        return Case(m, [f, f2, g], check)

    def l_closure(rng):
        a, b, c = _shape(m, rng, 2), _shape(m, rng, 2), _shape(m, rng, 2)
        f, f2, g = m.random_map(rng, a, b), m.random_map(rng, a, b), m.random_map(rng, b, c)

        def check(xs):
            f, f2, g = (L(x) for x in xs)
            built = [m.compose(f, g), m.pair(f, f2), m.add(f, f2), m.identity(a),
                     m.zero(a, b)]
            return [(L(x), x) for x in built]

        return Case(m, [f, f2, g], check)

    def induced_linear(rng):
        a, b = _shape(m, rng, cfg.max_leaves), _shape(m, rng, 2)
        c = _context(m, rng, cfg)
        f = m.random_map(rng, a, b)
        g = m.random_map(rng, Prod(c, a), b)

        def check(xs):
            f, g = xs
            lf = lin_d(f)
            lc = C.lc_from_d(m, D)
            lg = lc(c, g)
            out = [(lin_d(lf), lf), (lc(c, lg), lg), (lc(Prod(c, a), D(g)), D(g))]
            if Lc is not None:
                dl = C.d_from_system(m, Lc)(f)
                out.append((Lc(a, dl), dl))
            return out

        return Case(m, [f, g], check)

    return [Law("lin.total", "cd", char_total), Law("lin.context", "cd", char_context),
            Law("lin.closure", "cd", closure), Law("lin.Lclosure", "l", l_closure),
            Law("lin.induced", "cd", induced_linear)]


def structure_laws(model: Model, cfg: GenConfig = GenConfig()) -> list:
    """Category, product, additive and structural-map identities."""
    m = model

    def sh(rng, k=2):
        return _shape(m, rng, k)

    def category(rng):
        a, b, c, d = sh(rng, 3), sh(rng), sh(rng), sh(rng)
        f, g, h = m.random_map(rng, a, b), m.random_map(rng, b, c), m.random_map(rng, c, d)
        return Case(m, [f, g, h], lambda xs: _pairs(
            (m.compose(m.compose(xs[0], xs[1]), xs[2]), m.compose(xs[0], m.compose(xs[1], xs[2]))),
            (m.compose(m.identity(a), xs[0]), xs[0]),
            (m.compose(xs[0], m.identity(b)), xs[0])))

    def product(rng):
        a, b, c = sh(rng, 3), sh(rng), sh(rng)
        f, g = m.random_map(rng, a, b), m.random_map(rng, a, c)
        h = m.random_map(rng, a, Prod(b, c))
        return Case(m, [f, g, h], lambda xs: _pairs(
            (m.compose(m.pair(xs[0], xs[1]), m.proj0(b, c)), xs[0]),
            (m.compose(m.pair(xs[0], xs[1]), m.proj1(b, c)), xs[1]),
            (m.pair(m.compose(xs[2], m.proj0(b, c)), m.compose(xs[2], m.proj1(b, c))), xs[2]),
            (m.pair(m.proj0(b, c), m.proj1(b, c)), m.identity(Prod(b, c)))))

    def left_additive(rng):
        a, b, c = sh(rng, 3), sh(rng), sh(rng)
        f = m.random_map(rng, a, b)
        g, h = m.random_map(rng, b, c), m.random_map(rng, b, c)
        return Case(m, [f, g, h], lambda xs: _pairs(
            (m.compose(xs[0], m.add(xs[1], xs[2])),
             m.add(m.compose(xs[0], xs[1]), m.compose(xs[0], xs[2]))),
            (m.compose(xs[0], m.zero(b, c)), m.zero(a, c)),
            (m.add(xs[1], xs[2]), m.add(xs[2], xs[1])),
            (m.add(xs[1], m.zero(b, c)), xs[1])))

    def proj_additive(rng):
        a, b = sh(rng), sh(rng)
        ab = Prod(a, b)
        pairs = []
        for p in (m.proj0(a, b), m.proj1(a, b)):
            pairs.append((m.compose(m.oplus(ab), p),
                          m.add(m.compose(m.proj0(ab, ab), p), m.compose(m.proj1(ab, ab), p))))
            pairs.append((m.const_zero_of(p), m.zero(ab, p.cod)))
        return Case(m, [], lambda xs: pairs)

    def oplus(rng):
        a, b = sh(rng), sh(rng)
        ab = Prod(a, b)
        one = m.identity(a)
        op = m.oplus(a)

        def check(xs):
            aa = Prod(a, a)
            return _pairs(
                (m.compose(m.inject1(a, a), op), one),
                (m.compose(m.inject0(a, a), op), one),
                (m.compose(m.sym(a, a), op), op),
                (m.then(m.interchange(a, a, a, a), m.times(op, op), op), m.then(m.times(op, op), op)),
                (m.oplus(ab), m.compose(m.interchange(a, b, a, b), m.times(m.oplus(a), m.oplus(b)))),
                (m.compose(m.lift(a, b, a, b), m.oplus(ab)), m.identity(ab)),
                (m.compose(m.lift(a, a, a, a), m.times(op, op)), m.identity(aa)))

        return Case(m, [], check)

    def structural(rng):
        a, b, c, d = sh(rng), sh(rng), sh(rng), sh(rng)

        def check(xs):
            return _pairs(
                (m.compose(m.sym(a, b), m.sym(b, a)), m.identity(Prod(a, b))),
                (m.compose(m.interchange(a, b, c, d), m.interchange(a, c, b, d)),
                 m.identity(Prod(Prod(a, b), Prod(c, d)))),
                (m.beta(c, a, b), m.compose(m.times(m.identity(c), m.sym(a, b)), m.alpha(c, b, a))),
                (m.compose(m.alpha(c, a, b), m.alpha_inv(c, a, b)), m.identity(Prod(c, Prod(a, b)))),
                (m.compose(m.alpha_inv(c, a, b), m.alpha(c, a, b)), m.identity(Prod(Prod(c, a), b))),
                (m.compose(m.beta(c, a, b), m.beta_inv(c, a, b)), m.identity(Prod(c, Prod(a, b)))),
                (m.compose(m.beta_inv(c, a, b), m.beta(c, a, b)), m.identity(Prod(Prod(c, b), a))),
                (m.lift(a, b, c, d), m.times(m.inject0(a, b), m.inject1(c, d))))

        return Case(m, [], check)

    def lift_natural(rng):
        a, b, c, d = sh(rng), sh(rng), sh(rng), sh(rng)
        a2, b2, c2, d2 = sh(rng), sh(rng), sh(rng), sh(rng)
        f, k = m.random_map(rng, a, a2), m.random_map(rng, d, d2)
        g, h = m.random_map(rng, b, b2, kind="reduced"), m.random_map(rng, c, c2, kind="reduced")

        def check(xs):
            f, k, g, h = xs
            if not (m.is_reduced(g) and m.is_reduced(h)):
                return None
            lhs = m.compose(m.times(f, k), m.lift(a2, b2, c2, d2))
            rhs = m.compose(m.lift(a, b, c, d), m.times(m.times(f, g), m.times(h, k)))
            return _pairs((lhs, rhs))

        return Case(m, [f, k, g, h], check)

    def lift_interchange(rng):
        c, a, b, d = sh(rng), sh(rng), sh(rng), sh(rng)
        return Case(m, [], lambda xs: _pairs(C.lift_identity_sides(m, c, a, b, d)))

    def slice_category(rng):
        ctx = _context(m, rng, cfg)
        s = Slice(m, ctx)
        a, b, c, d = sh(rng), sh(rng), sh(rng), sh(rng)
        f, g, h = s.random_map(rng, a, b), s.random_map(rng, b, c), s.random_map(rng, c, d)
        return Case(s, [f, g, h], lambda xs: _pairs(
            (s.compose(s.compose(xs[0], xs[1]), xs[2]), s.compose(xs[0], s.compose(xs[1], xs[2]))),
            (s.compose(s.identity(a), xs[0]), xs[0]),
            (s.compose(xs[0], s.identity(b)), xs[0])))

    def slice_plain(rng):
        ctx = _context(m, rng, cfg)
        s = Slice(m, ctx)
        a, b, c = sh(rng), sh(rng), sh(rng)
        f, g = m.random_map(rng, a, b), m.random_map(rng, b, c)
        return Case(m, [f, g], lambda xs: _pairs(
            (s.compose(s.lift_base(xs[0]), s.lift_base(xs[1])).inner,
             s.lift_base(m.compose(xs[0], xs[1])).inner)))

    def substitution(rng):
        c0, c1, c2 = _context(m, rng, cfg), _context(m, rng, cfg), _context(m, rng, cfg)
        a, b = sh(rng), sh(rng)
        h = m.random_map(rng, c1, c2)
        k = m.random_map(rng, c0, c1)
        f = m.random_map(rng, Prod(c2, a), b)

        def check(xs):
            h, k, f = xs
            s2 = Slice(m, c2)
            sf = s2.wrap(f)
            once = s2.substitute(m.compose(k, h), sf).inner
            twice = Slice(m, c1).substitute(k, s2.substitute(h, sf)).inner
            ident = s2.substitute(m.identity(c2), sf).inner
            proj = s2.substitute(h, s2.identity(a)).inner
            return _pairs((once, twice), (ident, f), (proj, m.proj1(c1, a)))

        return Case(m, [h, k, f], check)

    def slice_top(rng):
        a, b = sh(rng, 3), sh(rng)
        f = m.random_map(rng, a, b)
        s = Slice(m, ONE)
        return Case(m, [f], lambda xs: _pairs(
            (m.compose(m.inject1(ONE, a), s.lift_base(xs[0]).inner), xs[0])))

    return [Law("cat.category", "structure", category), Law("cat.product", "structure", product),
            Law("cat.left-additive", "structure", left_additive),
            Law("cat.proj-additive", "structure", proj_additive),
            Law("cat.oplus", "structure", oplus), Law("cat.structural", "structure", structural),
            Law("cat.lift-natural", "structure", lift_natural),
            Law("cat.lift-interchange", "structure", lift_interchange),
            Law("cat.slice", "structure", slice_category),
            Law("cat.slice-plain", "structure", slice_plain),
            Law("cat.substitution", "structure", substitution),
            Law("cat.slice-top", "structure", slice_top)]


SUITES = ("cd", "l", "system", "closed", "roundtrip", "all")


def run_suite(laws, model_name: str, seed: int, budget: int, contract: str, on_report=None,
              shrink: bool = True) -> list:
    out = []
    for law in sorted(laws, key=lambda law: law.id):
        rep = run_law(law, model_name, seed, budget, contract, shrink=shrink)
        out.append(rep)
        if on_report is not None:
            on_report(rep)
    return out
