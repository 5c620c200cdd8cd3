"""Rational matrices: the model where every map is linear.

A map ``A -> B`` is a ``|B| x |A|`` matrix acting on column vectors, so the
diagrammatic composite ``f g`` is the matrix product ``G F``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .category import Model
from .poly import flat_shape, rational
from .shapes import R, Prod, Shape, ShapeError, fmt, parse_shape, size

Q0 = mpq(0)
Q1 = mpq(1)


@dataclass(frozen=True, eq=False)
class MatrixMap:
    dom: Shape
    cod: Shape
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != size(self.cod) or any(len(r) != size(self.dom) for r in self.rows):
            raise ShapeError(f"matrix does not fit {fmt(self.dom)}->{fmt(self.cod)}")

    def __eq__(self, other):
        return (isinstance(other, MatrixMap) and self.dom == other.dom
                and self.cod == other.cod and self.rows == other.rows)

    __hash__ = object.__hash__

    def entries(self):
        return [[rational(x) for x in r] for r in self.rows]


def _num(c) -> str:
    c = rational(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_matrix(f: MatrixMap) -> str:
    return "[" + ",".join("[" + ",".join(_num(x) for x in r) + "]" for r in f.rows) + "]"


def parse_matrix(text: str, dom: Shape | None = None, cod: Shape | None = None) -> MatrixMap:
    """Read ``[[1,0],[2,3]]``; entries may be integers or ``p/q`` strings."""
    quoted = "".join(f'"{tok}"' if tok not in "[]," else tok
                     for tok in _tokens(text))
    try:
        rows = json.loads(quoted)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad matrix literal {text!r}: {exc}") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError(f"bad matrix literal {text!r}")
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise ValueError("matrix rows have different lengths")
    vals = tuple(tuple(mpq(Fraction(x)) for x in r) for r in rows)
    dom = dom or flat_shape(width)
    cod = cod or flat_shape(len(rows))
    return MatrixMap(dom, cod, vals)


def _tokens(text):
    buf = ""
    for ch in text:
        if ch in "[],":
            if buf.strip():
                yield buf.strip()
            buf = ""
            yield ch
        elif not ch.isspace():
            buf += ch
    if buf.strip():
        yield buf.strip()


class BiproductModel(Model):
    name = "biproduct"
    exact = True
    ground = R

    def __init__(self, coeff_range: int = 2):
        self.coeff_range = coeff_range

    def _mk(self, dom, cod, rows):
        return MatrixMap(dom, cod, tuple(tuple(r) for r in rows))

    def identity(self, a):
        n = size(a)
        return self._mk(a, a, [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)])

    def proj0(self, a, b):
        n, m = size(a), size(b)
        return self._mk(Prod(a, b), a, [[Q1 if i == j else Q0 for j in range(n + m)] for i in range(n)])

    def proj1(self, a, b):
        n, m = size(a), size(b)
        return self._mk(Prod(a, b), b,
                        [[Q1 if j == n + i else Q0 for j in range(n + m)] for i in range(m)])

    def zero(self, a, b):
        return self._mk(a, b, [[Q0] * size(a) for _ in range(size(b))])

    def pair(self, f, g):
        if f.dom != g.dom:
            raise ShapeError(f"cannot pair maps out of {fmt(f.dom)} and {fmt(g.dom)}")
        return MatrixMap(f.dom, Prod(f.cod, g.cod), f.rows + g.rows)

    def add(self, f, g):
        self.check_parallel(f, g, "cannot add")
        return self._mk(f.dom, f.cod, [[x + y for x, y in zip(r, s)] for r, s in zip(f.rows, g.rows)])

    def compose(self, f, g):
        self.check_composable(f, g)
        cols = list(zip(*f.rows)) if f.rows else [()] * size(f.dom)
        rows = [[sum((x * y for x, y in zip(grow, col)), Q0) for col in cols] for grow in g.rows]
        return self._mk(f.dom, g.cod, rows)

    def equal(self, f, g):
        self.check_parallel(f, g, "cannot compare")
        return f.rows == g.rows

    def render(self, f):
        return f"{fmt(f.dom)}->{fmt(f.cod)}:{format_matrix(f)}"

    def parse_morphism(self, text):
        head, body = text.split(":", 1)
        dom, cod = head.split("->")
        return parse_matrix(body, parse_shape(dom), parse_shape(cod))

    # --- combinators ----------------------------------------------------

    def differential(self, f):
        """``D[f] = pi1 f``: the block matrix ``[0 | F]``."""
        return self.compose(self.proj1(f.dom, f.dom), f)

    def linearize(self, f):
        return f

    def partial_linearize(self, context, f):
        """``L^C[f] = (0 x 1) f``: drop the context columns."""
        a = f.dom.right
        if f.dom.left != context:
            raise ShapeError(f"context {fmt(context)} does not match {fmt(f.dom)}")
        return self.compose(self.times(self.zero(context, context), self.identity(a)), f)

    # --- generation -----------------------------------------------------

    def random_map(self, rng, dom, cod, kind=None, split=0):
        r = self.coeff_range
        n = size(dom)
        rows = []
        for _ in range(size(cod)):
            row = []
            for j in range(n):
                if kind == "constant":
                    keep = j < split
                elif kind in ("reduced", "linear"):
                    keep = j >= split
                else:
                    keep = True
                row.append(mpq(rng.randint(-r, r)) if keep else Q0)
            rows.append(row)
        return self._mk(dom, cod, rows)

    def shrink(self, f):
        for i, row in enumerate(f.rows):
            for j, x in enumerate(row):
                if x:
                    rows = [list(r) for r in f.rows]
                    rows[i][j] = Q0
                    yield self._mk(f.dom, f.cod, rows)


BIPRODUCT = BiproductModel()
