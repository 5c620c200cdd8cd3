"""Laws tying the combinators to the closed structure (curry, ev, the hom monad)."""
from __future__ import annotations

from . import combinators as C
from .closed import ClosedModel
from .laws import Case, GenConfig, Law
from .shapes import Hom, Prod


def closed_laws(model: ClosedModel, D, L, Lc, cfg: GenConfig = GenConfig()) -> list:
    m = model
    k = cfg.block_leaves

    def shape(rng):
        return m.random_shape(rng, k)

    def curry_laws(rng):
        c, a, b = shape(rng), shape(rng), shape(rng)
        f, g = m.random_map(rng, Prod(c, a), b), m.random_map(rng, Prod(c, a), b)
        h = m.random_map(rng, a, Hom(c, b))

        def check(xs):
            f, g, h = xs
            return [(m.uncurry(m.curry(f)), f),
                    (m.curry(m.uncurry(h)), h),
                    (m.curry(m.add(f, g)), m.add(m.curry(f), m.curry(g))),
                    (m.curry(m.zero(Prod(c, a), b)), m.zero(a, Hom(c, b)))]

        return Case(m, [f, g, h], check)

    def l_lambda(rng):
        c, a, b = shape(rng), shape(rng), shape(rng)
        f = m.random_map(rng, Prod(c, a), b)
        return Case(m, [f], lambda xs: [(L(m.curry(xs[0])), m.curry(Lc(c, xs[0])))])

    def l_ev(rng):
        c, a = shape(rng), shape(rng)
        ev = m.ev(c, a)
        return Case(m, [], lambda xs: [(Lc(c, ev), ev)])

    def el1(rng):
        c, a = shape(rng), shape(rng)
        eta, mu = m.eta(c, a), m.mu(c, a)
        return Case(m, [], lambda xs: [(L(eta), eta), (L(mu), mu)])

    def el2(rng):
        c2, c, a, b = shape(rng), shape(rng), shape(rng), shape(rng)
        f, g = m.random_map(rng, c2, c), m.random_map(rng, a, b)
        return Case(m, [f, g], lambda xs: [(L(m.hom_map(xs[0], xs[1])),
                                            m.hom_map(xs[0], L(xs[1])))])

    def el3(rng):
        a, b, c = shape(rng), shape(rng), shape(rng)
        f = m.random_map(rng, Prod(a, b), c)

        def l1(g):
            return m.uncurry(L(m.curry(g)))

        def l0(g):
            x, y = g.dom.left, g.dom.right
            swapped = m.compose(m.sym(y, x), g)
            return m.compose(m.sym(x, y), m.uncurry(L(m.curry(swapped))))

        return Case(m, [f], lambda xs: [(l0(l1(xs[0])), l1(l0(xs[0])))])

    def monad(rng):
        c, a = shape(rng), shape(rng)
        ca = Hom(c, a)
        mu, mu_outer = m.mu(c, a), m.mu(c, ca)
        one_c = m.identity(c)
        return Case(m, [], lambda xs: [
            (m.compose(mu_outer, mu), m.compose(m.hom_map(one_c, mu), mu)),
            (m.compose(m.eta(c, ca), mu), m.identity(ca)),
            (m.compose(m.hom_map(one_c, m.eta(c, a)), mu), m.identity(ca)),
        ])

    def iso_theta(rng):
        c, a, b = shape(rng), shape(rng), shape(rng)
        th, inv = m.theta(c, a, b), m.theta_inv(c, a, b)
        return Case(m, [], lambda xs: [
            (m.compose(th, inv), m.identity(th.dom)),
            (m.compose(inv, th), m.identity(inv.dom)),
        ])

    def iso_phi(rng):
        a, c, b = shape(rng), shape(rng), shape(rng)
        ph, inv = m.phi(a, c, b), m.phi_inv(a, c, b)
        return Case(m, [], lambda xs: [
            (m.compose(ph, inv), m.identity(ph.dom)),
            (m.compose(inv, ph), m.identity(inv.dom)),
            (ph, m.phi_via_mu(a, c, b)),
        ])

    def cd_lambda(rng):
        c, a, b = shape(rng), shape(rng), shape(rng)
        f = m.random_map(rng, Prod(c, a), b)
        dc = C.d_in_context(m, D, c)
        return Case(m, [f], lambda xs: [(D(m.curry(xs[0])), m.curry(dc(xs[0])))])

    def cd_ev(rng):
        c, a = shape(rng), shape(rng)
        ev = m.ev(c, a)
        hc = Hom(c, a)
        return Case(m, [], lambda xs: [(m.compose(m.lift(c, hc, c, hc), D(ev)), ev)])

    def rt_d_exp(rng):
        a, b = shape(rng), shape(rng)
        f = m.random_map(rng, a, b)
        l_d = C.l_from_d(m, D)
        return Case(m, [f], lambda xs: [(m.d_from_exp(xs[0], l_d), D(xs[0])),
                                        (m.d_from_exp(xs[0], L), D(xs[0]))])

    def rt_d_system(rng):
        a, b = shape(rng), shape(rng)
        f = m.random_map(rng, a, b)
        d2 = C.d_from_system(m, m.closed_system(C.l_from_d(m, D)))
        return Case(m, [f], lambda xs: [(d2(xs[0]), D(xs[0]))])

    def rt_l(rng):
        a, b = shape(rng), shape(rng)
        f = m.random_map(rng, a, b)
        back = C.total_l_from_system(m, m.closed_system(L))
        return Case(m, [f], lambda xs: [(back(xs[0]), L(xs[0]))])

    def rt_lc(rng):
        c, a, b = shape(rng), shape(rng), shape(rng)
        f = m.random_map(rng, Prod(c, a), b)
        via_d = C.lc_from_d(m, D)
        return Case(m, [f], lambda xs: [(m.partial_from_total(xs[0], L), Lc(c, xs[0])),
                                        (via_d(c, xs[0]), Lc(c, xs[0]))])

    return [
        Law("CC.curry", "closed", curry_laws, "curry and uncurry are inverse and additive"),
        Law("L.lambda", "closed", l_lambda, "L[curry f] = curry(Lc[f])"),
        Law("L.ev", "closed", l_ev, "evaluation is linear in its function argument"),
        Law("EL.1", "closed", el1, "L fixes eta and mu"),
        Law("EL.2", "closed", el2, "L[[f,g]] = [f, L[g]]"),
        Law("EL.3", "closed", el3, "the two curried partial linearizations commute"),
        Law("CC.monad", "closed", monad, "monad identities of [C,-]"),
        Law("CC.theta", "closed", iso_theta, "[C,A]*[C,B] ~ [C,A*B]"),
        Law("CC.phi", "closed", iso_phi, "[A,[C,B]] ~ [C*A,B], two constructions agree"),
        Law("CD.lambda", "closed", cd_lambda, "D[curry f] = curry(D^C[f])"),
        Law("CD.ev", "closed", cd_ev, "lift D[ev] = ev"),
        Law("RT.exp-D", "closed", rt_d_exp, "D rebuilt from a total linearization"),
        Law("RT.closed-D", "closed", rt_d_system, "D -> L -> closed system -> D"),
        Law("RT.closed-L", "closed", rt_l, "L -> closed system -> L"),
        Law("RT.closed-Lc", "closed", rt_lc, "the closed system agrees with Lc"),
    ]
