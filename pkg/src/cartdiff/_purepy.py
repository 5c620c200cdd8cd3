"""Reference kernels in plain Python.

Polynomials are dicts from packed exponent keys to nonzero coefficients.
Variable ``i`` owns bits ``[BITS*i, BITS*(i+1))`` of the key, so multiplying
monomials is adding keys.  The compiled module mirrors this API exactly.
"""
import math

import numpy as np

BITS = 16
FIELD = (1 << BITS) - 1
MAX_DEGREE = FIELD

BACKEND = "python"


def unit(i):
    return 1 << (BITS * i)


def exponents(key, n):
    out = []
    for _ in range(n):
        out.append(key & FIELD)
        key >>= BITS
    return out


def pack(exps):
    key = 0
    for i, e in enumerate(exps):
        key |= e << (BITS * i)
    return key


def key_degree(key):
    d = 0
    while key:
        d += key & FIELD
        key >>= BITS
    return d


def degree(p):
    if not p:
        return -1
    return max(key_degree(k) for k in p)


def block_degree(key, lo, hi):
    key >>= BITS * lo
    d = 0
    for _ in range(hi - lo):
        d += key & FIELD
        key >>= BITS
    return d


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for k, c in b.items():
        v = r.get(k)
        if v is None:
            r[k] = c
        else:
            s = v + c
            if s:
                r[k] = s
            else:
                del r[k]
    return r


def pscale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def pmul(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = {}
    get = r.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            v = get(k)
            r[k] = ca * cb if v is None else v + ca * cb
    return {k: v for k, v in r.items() if v}


def pshift(p, offset):
    """Move every variable ``offset`` slots to the right."""
    s = BITS * offset
    return {k << s: c for k, c in p.items()}


def prename(p, n, images):
    """Substitute monomials: ``images[i]`` is ``(coeff, key)`` or ``None`` for zero."""
    r = {}
    for key, c in p.items():
        k2 = 0
        coeff = c
        i = 0
        while key:
            e = key & FIELD
            if e:
                img = images[i]
                if img is None:
                    coeff = 0
                    break
                ic, ik = img
                k2 += ik * e
                if ic != 1:
                    coeff = coeff * ic ** e
            key >>= BITS
            i += 1
        if coeff:
            v = r.get(k2)
            if v is None:
                r[k2] = coeff
            else:
                s = v + coeff
                if s:
                    r[k2] = s
                else:
                    del r[k2]
    return r


def psubst(polys, n, images, one):
    """Substitute the polynomials ``images`` for the ``n`` variables of each of ``polys``."""
    cache = [{1: img} for img in images]
    const = {0: one}

    def power(i, e):
        pc = cache[i]
        got = pc.get(e)
        if got is None:
            half = power(i, e // 2)
            got = pmul(half, half)
            if e % 2:
                got = pmul(got, images[i])
            pc[e] = got
        return got

    out = []
    for p in polys:
        acc = {}
        for key, c in p.items():
            term = None
            i = 0
            while key:
                e = key & FIELD
                if e:
                    pw = power(i, e)
                    term = pw if term is None else pmul(term, pw)
                    if not term:
                        break
                key >>= BITS
                i += 1
            if term is None:
                term = const
            if term:
                acc = padd(acc, pscale(term, c))
        out.append(acc)
    return out


def pdiff(p, n):
    """Directional derivative: variables ``0..n-1`` are the point, ``n..2n-1`` the direction."""
    r = {}
    for key, c in p.items():
        k = key
        for i in range(n):
            e = k & FIELD
            if e:
                k2 = key - unit(i) + unit(n + i)
                v = r.get(k2)
                d = c * e
                if v is None:
                    r[k2] = d
                else:
                    s = v + d
                    if s:
                        r[k2] = s
                    else:
                        del r[k2]
            k >>= BITS
    return r


def pfilter_block(p, lo, hi, want):
    return {k: c for k, c in p.items() if block_degree(k, lo, hi) == want}


def peval(p, point):
    total = 0
    for key, c in p.items():
        term = c
        i = 0
        while key:
            e = key & FIELD
            if e:
                term = term * point[i] ** e
            key >>= BITS
            i += 1
        total = total + term
    return total


# ---------------------------------------------------------------- dual numbers


class Dual:
    """``primal + eps_tag * tangent`` with ``eps_tag**2 = 0``.

    Different tags are independent infinitesimals; the higher tag sits outside.
    Primal and tangent may be floats, numpy arrays or lower-tagged duals.
    """

    __slots__ = ("tag", "primal", "tangent")
    __array_ufunc__ = None

    def __init__(self, tag, primal, tangent):
        self.tag = tag
        self.primal = primal
        self.tangent = tangent

    def __repr__(self):
        return f"Dual({self.tag}, {self.primal!r}, {self.tangent!r})"

    def __add__(self, other):
        return dadd(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return dadd(self, dneg(other))

    def __rsub__(self, other):
        return dadd(other, dneg(self))

    def __mul__(self, other):
        return dmul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return dneg(self)

    def __pow__(self, e):
        return dpow(self, e)


def tag_of(x):
    return x.tag if type(x) is Dual else 0


def dadd(a, b):
    ta = a.tag if type(a) is Dual else 0
    tb = b.tag if type(b) is Dual else 0
    if ta == tb:
        if ta == 0:
            return a + b
        return Dual(ta, dadd(a.primal, b.primal), dadd(a.tangent, b.tangent))
    if ta > tb:
        return Dual(ta, dadd(a.primal, b), a.tangent)
    return Dual(tb, dadd(a, b.primal), b.tangent)


def dneg(a):
    if type(a) is Dual:
        return Dual(a.tag, dneg(a.primal), dneg(a.tangent))
    return -a


def dmul(a, b):
    ta = a.tag if type(a) is Dual else 0
    tb = b.tag if type(b) is Dual else 0
    if ta == tb:
        if ta == 0:
            return a * b
        return Dual(ta, dmul(a.primal, b.primal),
                    dadd(dmul(a.primal, b.tangent), dmul(a.tangent, b.primal)))
    if ta > tb:
        return Dual(ta, dmul(a.primal, b), dmul(a.tangent, b))
    return Dual(tb, dmul(a, b.primal), dmul(a, b.tangent))


def dpow(a, e):
    if e == 0:
        return 1.0
    r = a
    for _ in range(e - 1):
        r = dmul(r, a)
    return r


def dsin(a):
    if type(a) is Dual:
        return Dual(a.tag, dsin(a.primal), dmul(dcos(a.primal), a.tangent))
    return np.sin(a) if isinstance(a, np.ndarray) else math.sin(a)


def dcos(a):
    if type(a) is Dual:
        return Dual(a.tag, dcos(a.primal), dneg(dmul(dsin(a.primal), a.tangent)))
    return np.cos(a) if isinstance(a, np.ndarray) else math.cos(a)


def dexp(a):
    if type(a) is Dual:
        e = dexp(a.primal)
        return Dual(a.tag, e, dmul(e, a.tangent))
    return np.exp(a) if isinstance(a, np.ndarray) else math.exp(a)


def dtangent(x, tag):
    """Coefficient of ``eps_tag`` in ``x``."""
    if type(x) is Dual:
        if x.tag == tag:
            return x.tangent
        if x.tag > tag:
            return Dual(x.tag, dtangent(x.primal, tag), dtangent(x.tangent, tag))
    return 0.0


def dprimal(x, tag):
    """``x`` with ``eps_tag`` set to zero."""
    if type(x) is Dual:
        if x.tag == tag:
            return x.primal
        if x.tag > tag:
            return Dual(x.tag, dprimal(x.primal, tag), dprimal(x.tangent, tag))
    return x
