# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_purepy``: same functions, same results."""
import math

import numpy as np

BITS = 16
FIELD = (1 << BITS) - 1
MAX_DEGREE = FIELD

BACKEND = "compiled"

cdef int _BITS = 16
cdef object _FIELD = FIELD


cdef object _ONE = 1


def unit(Py_ssize_t i):
    return _ONE << (_BITS * i)


def exponents(key, Py_ssize_t n):
    cdef list out = []
    cdef Py_ssize_t i
    for i in range(n):
        out.append(key & _FIELD)
        key >>= _BITS
    return out


def pack(exps):
    key = 0
    cdef Py_ssize_t i = 0
    for e in exps:
        key |= e << (_BITS * i)
        i += 1
    return key


cpdef long key_degree(object key):
    cdef long d = 0
    while key:
        d += <long>(key & _FIELD)
        key >>= _BITS
    return d


def degree(dict p):
    if not p:
        return -1
    cdef long best = 0, d
    for k in p:
        d = key_degree(k)
        if d > best:
            best = d
    return best


cpdef long block_degree(object key, Py_ssize_t lo, Py_ssize_t hi):
    cdef long d = 0
    cdef Py_ssize_t i
    key >>= _BITS * lo
    for i in range(hi - lo):
        d += <long>(key & _FIELD)
        key >>= _BITS
    return d


cdef inline void _acc(dict r, object k, object c):
    cdef object v = r.get(k)
    if v is None:
        r[k] = c
    else:
        v = v + c
        if v:
            r[k] = v
        else:
            del r[k]


cpdef dict padd(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict r = dict(a)
    for k, c in b.items():
        _acc(r, k, c)
    return r


cpdef dict pscale(dict a, object c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


cpdef dict pmul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict r = {}
    cdef list akeys = list(a.keys()), avals = list(a.values())
    cdef Py_ssize_t i, na = len(akeys)
    cdef object v, k
    for kb, cb in b.items():
        for i in range(na):
            k = akeys[i] + kb
            v = r.get(k)
            if v is None:
                r[k] = avals[i] * cb
            else:
                r[k] = v + avals[i] * cb
    return {k: v for k, v in r.items() if v}


def pshift(dict p, Py_ssize_t offset):
    cdef int s = _BITS * offset
    return {k << s: c for k, c in p.items()}


def prename(dict p, Py_ssize_t n, list images):
    cdef dict r = {}
    cdef Py_ssize_t i
    cdef object key, k2, coeff, e, img
    for key0, c in p.items():
        key = key0
        k2 = 0
        coeff = c
        i = 0
        while key:
            e = key & _FIELD
            if e:
                img = images[i]
                if img is None:
                    coeff = 0
                    break
                k2 = k2 + img[1] * e
                if img[0] != 1:
                    coeff = coeff * img[0] ** e
            key >>= _BITS
            i += 1
        if coeff:
            _acc(r, k2, coeff)
    return r


cdef dict _power(list cache, list images, long i, long e):
    cdef dict pc = cache[i]
    cdef dict got = pc.get(e)
    cdef dict half
    if got is None:
        half = _power(cache, images, i, e // 2)
        got = pmul(half, half)
        if e % 2:
            got = pmul(got, images[i])
        pc[e] = got
    return got


def psubst(list polys, Py_ssize_t n, list images, object one):
    cdef list cache = [{1: img} for img in images]
    cdef dict const = {0: one}
    cdef list out = []
    cdef dict acc, term, p, pw
    cdef long i, e
    cdef object key
    for p in polys:
        acc = {}
        for key0, c in p.items():
            key = key0
            term = None
            i = 0
            while key:
                e = <long>(key & _FIELD)
                if e:
                    pw = _power(cache, images, i, e)
                    term = pw if term is None else pmul(term, pw)
                    if not term:
                        break
                key >>= _BITS
                i += 1
            if term is None:
                term = const
            if term:
                for k, v in term.items():
                    _acc(acc, k, v * c)
        out.append(acc)
    return out


def pdiff(dict p, Py_ssize_t n):
    cdef dict r = {}
    cdef Py_ssize_t i
    cdef object k, e
    for key, c in p.items():
        k = key
        for i in range(n):
            e = k & _FIELD
            if e:
                _acc(r, key - (_ONE << (_BITS * i)) + (_ONE << (_BITS * (n + i))), c * e)
            k >>= _BITS
    return r


def pfilter_block(dict p, Py_ssize_t lo, Py_ssize_t hi, long want):
    return {k: c for k, c in p.items() if block_degree(k, lo, hi) == want}


def peval(dict p, point):
    total = 0
    cdef Py_ssize_t i
    for key0, c in p.items():
        key = key0
        term = c
        i = 0
        while key:
            e = key & _FIELD
            if e:
                term = term * point[i] ** e
            key >>= _BITS
            i += 1
        total = total + term
    return total


# ---------------------------------------------------------------- dual numbers


cdef class Dual:
    """``primal + eps_tag * tangent`` with ``eps_tag**2 = 0``; higher tags sit outside."""

    cdef public long tag
    cdef public object primal
    cdef public object tangent

    __array_ufunc__ = None

    def __init__(self, long tag, primal, tangent):
        self.tag = tag
        self.primal = primal
        self.tangent = tangent

    def __repr__(self):
        return f"Dual({self.tag}, {self.primal!r}, {self.tangent!r})"

    def __add__(self, other):
        return dadd(self, other)

    def __radd__(self, other):
        return dadd(other, self)

    def __sub__(self, other):
        return dadd(self, dneg(other))

    def __rsub__(self, other):
        return dadd(other, dneg(self))

    def __mul__(self, other):
        return dmul(self, other)

    def __rmul__(self, other):
        return dmul(other, self)

    def __neg__(self):
        return dneg(self)

    def __pow__(self, e, mod):
        return dpow(self, e)


cpdef long tag_of(object x):
    return (<Dual>x).tag if type(x) is Dual else 0


cpdef object dadd(object a, object b):
    cdef long ta = (<Dual>a).tag if type(a) is Dual else 0
    cdef long tb = (<Dual>b).tag if type(b) is Dual else 0
    if ta == tb:
        if ta == 0:
            return a + b
        return Dual(ta, dadd((<Dual>a).primal, (<Dual>b).primal),
                    dadd((<Dual>a).tangent, (<Dual>b).tangent))
    if ta > tb:
        return Dual(ta, dadd((<Dual>a).primal, b), (<Dual>a).tangent)
    return Dual(tb, dadd(a, (<Dual>b).primal), (<Dual>b).tangent)


cpdef object dneg(object a):
    if type(a) is Dual:
        return Dual((<Dual>a).tag, dneg((<Dual>a).primal), dneg((<Dual>a).tangent))
    return -a


cpdef object dmul(object a, object b):
    cdef long ta = (<Dual>a).tag if type(a) is Dual else 0
    cdef long tb = (<Dual>b).tag if type(b) is Dual else 0
    cdef Dual x, y
    if ta == tb:
        if ta == 0:
            return a * b
        x = <Dual>a
        y = <Dual>b
        return Dual(ta, dmul(x.primal, y.primal),
                    dadd(dmul(x.primal, y.tangent), dmul(x.tangent, y.primal)))
    if ta > tb:
        x = <Dual>a
        return Dual(ta, dmul(x.primal, b), dmul(x.tangent, b))
    y = <Dual>b
    return Dual(tb, dmul(a, y.primal), dmul(a, y.tangent))


def dpow(a, long e):
    if e == 0:
        return 1.0
    r = a
    cdef long i
    for i in range(e - 1):
        r = dmul(r, a)
    return r


cpdef object dsin(object a):
    cdef Dual x
    if type(a) is Dual:
        x = <Dual>a
        return Dual(x.tag, dsin(x.primal), dmul(dcos(x.primal), x.tangent))
    return np.sin(a) if isinstance(a, np.ndarray) else math.sin(a)


cpdef object dcos(object a):
    cdef Dual x
    if type(a) is Dual:
        x = <Dual>a
        return Dual(x.tag, dcos(x.primal), dneg(dmul(dsin(x.primal), x.tangent)))
    return np.cos(a) if isinstance(a, np.ndarray) else math.cos(a)


cpdef object dexp(object a):
    cdef Dual x
    if type(a) is Dual:
        x = <Dual>a
        e = dexp(x.primal)
        return Dual(x.tag, e, dmul(e, x.tangent))
    return np.exp(a) if isinstance(a, np.ndarray) else math.exp(a)


cpdef object dtangent(object x, long tag):
    cdef Dual d
    if type(x) is Dual:
        d = <Dual>x
        if d.tag == tag:
            return d.tangent
        if d.tag > tag:
            return Dual(d.tag, dtangent(d.primal, tag), dtangent(d.tangent, tag))
    return 0.0


cpdef object dprimal(object x, long tag):
    cdef Dual d
    if type(x) is Dual:
        d = <Dual>x
        if d.tag == tag:
            return d.primal
        if d.tag > tag:
            return Dual(d.tag, dprimal(d.primal, tag), dprimal(d.tangent, tag))
    return x
