"""Model-polymorphic conversions between the three kinds of combinator.

A differential combinator is a callable ``D(f) -> D[f]``; a linearizing
combinator is ``L(f) -> L[f]``; a linearizing system is ``Lc(C, f)`` for
``f : C*A -> B``.  Each constructor here takes the model and combinators it
needs and returns a new plain callable.
"""
from __future__ import annotations

from .category import Model
from .shapes import ONE, Prod, ShapeError, expect_prod, fmt, require_equal


def _split(f, context=None):
    dom = expect_prod(f.dom, "domain")
    if context is not None:
        require_equal(dom.left, context, "context")
    return dom.left, dom.right


def l_from_d(model: Model, D):
    """``L[f] = <0, 1> D[f]``."""

    def L(f):
        a = f.dom
        return model.compose(model.inject1(a, a), D(f))

    return L


def lc_from_d(model: Model, D):
    """``L^C[f] = lift D[f]``: the derivative in the argument block, taken at zero."""

    def Lc(context, f):
        c, a = _split(f, context)
        return model.compose(model.lift(c, a, c, a), D(f))

    return Lc


def d_in_context(model: Model, D, context):
    """Partial derivative over a fixed context: ``<1 x pi0, 0 x pi1> D[f]``."""

    def Dc(f):
        c, a = _split(f, context)
        m = model
        # domain C*(A*A); first factor (C, a), second factor (0, b)
        first = m.times(m.identity(c), m.proj0(a, a))
        second = m.times(m.zero(c, c), m.proj1(a, a))
        return m.compose(m.pair(first, second), D(f))

    return Dc


def d_from_system(model: Model, Lc):
    """``D_L[f] = L^A[oplus_A f]``."""

    def D(f):
        a = f.dom
        return Lc(a, model.compose(model.oplus(a), f))

    return D


def total_l_from_system(model: Model, Lc):
    """``L[f] = <0, 1> L^1[pi1 f]`` (context is the terminal object)."""

    def L(f):
        a = f.dom
        m = model
        return m.compose(m.inject1(ONE, a), Lc(ONE, m.compose(m.proj1(ONE, a), f)))

    return L


def partial_pair(model: Model, Lc, context, f):
    """Linearize ``f : C*(A*B) -> D`` in ``A`` alone and in ``B`` alone.

    Returns ``(L0, L1)`` with ``L0 = beta L^{C*B}[beta^-1 f]`` and
    ``L1 = alpha L^{C*A}[alpha^-1 f]``.
    """
    c, ab = _split(f, context)
    a, b = expect_prod(ab, "argument").left, ab.right
    m = model
    l0 = m.compose(m.beta(c, a, b), Lc(Prod(c, b), m.compose(m.beta_inv(c, a, b), f)))
    l1 = m.compose(m.alpha(c, a, b), Lc(Prod(c, a), m.compose(m.alpha_inv(c, a, b), f)))
    return l0, l1


def partial_ops(model: Model, Lc, context):
    """``(L0, L1)`` as callables on maps ``C*(A*B) -> D``."""
    return (lambda f: partial_pair(model, Lc, context, f)[0],
            lambda f: partial_pair(model, Lc, context, f)[1])


def interchange_sides(model: Model, Lc, f):
    """Both sides of the interchange form for ``f : (C*A)*(B*D) -> E``.

    ``c L^{C*B}[c L^{C*A}[f]]`` and ``L^{C*A}[c L^{C*B}[c f]]``.
    """
    m = model
    ca, bd = _split(f)
    c, a = expect_prod(ca, "context").left, ca.right
    b, d = expect_prod(bd, "argument").left, bd.right
    c_to = m.interchange(c, b, a, d)   # (C*B)*(A*D) -> (C*A)*(B*D)
    c_from = m.interchange(c, a, b, d)  # (C*A)*(B*D) -> (C*B)*(A*D)
    lhs = m.compose(c_from, Lc(Prod(c, b), m.compose(c_to, Lc(ca, f))))
    rhs = Lc(ca, m.compose(c_from, Lc(Prod(c, b), m.compose(c_to, f))))
    return lhs, rhs


def drop_unit(model: Model, c, a, b):
    """``(C*A)*(B*1) -> C*(A*B)``: reshapes a three-block map for the interchange form."""
    m = model
    ca = Prod(c, a)
    first = m.times(m.identity(ca), m.proj0(b, ONE))
    return m.compose(first, m.alpha_inv(c, a, b))


def lift_identity_sides(model: Model, c, a, b, d):
    """Both sides of the lifting/interchange identity used for the interchange form.

    With ``X = (C*A)*(B*D)`` and ``Y = (C*B)*(A*D)`` both sides are maps
    ``X -> (X*X)*(X*X)``.
    """
    m = model
    X = Prod(Prod(c, a), Prod(b, d))
    c_xy = m.interchange(c, a, b, d)  # X -> Y
    c_yx = m.interchange(c, b, a, d)  # Y -> X
    lift_x = m.lift(Prod(c, a), Prod(b, d), Prod(c, a), Prod(b, d))  # X -> X*X
    lift_y = m.lift(Prod(c, b), Prod(a, d), Prod(c, b), Prod(a, d))  # Y -> Y*Y
    c_outer = m.interchange(X, X, X, X)
    lhs = m.then(c_xy, lift_y, m.times(c_yx, c_yx), m.times(lift_x, lift_x), c_outer)
    rhs = m.then(
        lift_x,
        m.times(c_xy, c_xy),
        m.times(lift_y, lift_y),
        m.times(m.times(c_yx, c_yx), m.times(c_yx, c_yx)),
    )
    return lhs, rhs


def check_context(f, context):
    if not hasattr(f.dom, "left") or f.dom.left != context:
        raise ShapeError(f"map out of {fmt(f.dom)} is not over context {fmt(context)}")
