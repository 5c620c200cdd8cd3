"""Objects of the categories: binary product trees over a ground object.

Canonical syntax: ``R`` for the ground object, ``1`` for the terminal
object, ``(S*T)`` for products and ``[S,T]`` for internal homs (closed model
only).  Every model flattens a shape into its left-to-right leaf list.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class ShapeError(ValueError):
    """Raised when two morphisms or shapes do not fit together."""


class Shape:
    __slots__ = ()

    def __mul__(self, other: "Shape") -> "Prod":
        return Prod(self, other)

    def __str__(self) -> str:
        return fmt(self)


@dataclass(frozen=True, eq=True, repr=False)
class Ground(Shape):
    name: str = "R"

    def __repr__(self):
        return f"Ground({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Unit(Shape):
    def __repr__(self):
        return "Unit()"


@dataclass(frozen=True, eq=True, repr=False)
class Prod(Shape):
    left: Shape
    right: Shape

    def __repr__(self):
        return f"Prod({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Hom(Shape):
    """Internal hom ``[src, tgt]``; only the closed model uses it."""

    src: Shape
    tgt: Shape

    def __repr__(self):
        return f"Hom({self.src!r}, {self.tgt!r})"


R = Ground("R")
ONE = Unit()


def fmt(s: Shape) -> str:
    if isinstance(s, Ground):
        return s.name
    if isinstance(s, Unit):
        return "1"
    if isinstance(s, Prod):
        return f"({fmt(s.left)}*{fmt(s.right)})"
    if isinstance(s, Hom):
        return f"[{fmt(s.src)},{fmt(s.tgt)}]"
    raise TypeError(f"not a shape: {s!r}")


@lru_cache(maxsize=None)
def flatten(s: Shape) -> tuple:
    """Left-to-right leaves; ``Unit`` contributes nothing, ``Hom`` is a leaf."""
    if isinstance(s, (Ground, Hom)):
        return (s,)
    if isinstance(s, Unit):
        return ()
    if isinstance(s, Prod):
        return flatten(s.left) + flatten(s.right)
    raise TypeError(f"not a shape: {s!r}")


def size(s: Shape) -> int:
    return len(flatten(s))


def depth(s: Shape) -> int:
    if isinstance(s, Prod):
        return 1 + max(depth(s.left), depth(s.right))
    if isinstance(s, Hom):
        return 1 + max(depth(s.src), depth(s.tgt))
    return 0


def has_hom(s: Shape) -> bool:
    if isinstance(s, Hom):
        return True
    if isinstance(s, Prod):
        return has_hom(s.left) or has_hom(s.right)
    return False


def expect_prod(s: Shape, what: str = "shape") -> Prod:
    if not isinstance(s, Prod):
        raise ShapeError(f"{what} must be a product, got {fmt(s)}")
    return s


def require_equal(a: Shape, b: Shape, what: str) -> None:
    if a != b:
        raise ShapeError(f"{what}: {fmt(a)} does not match {fmt(b)}")


def parse_shape(text: str) -> Shape:
    """Inverse of :func:`fmt`."""
    pos = 0
    src = text.replace(" ", "")

    def fail(msg):
        raise ShapeError(f"{msg} at position {pos} in {text!r}")

    def one() -> Shape:
        nonlocal pos
        if pos >= len(src):
            fail("unexpected end")
        ch = src[pos]
        if ch == "(":
            pos += 1
            left = one()
            if pos >= len(src) or src[pos] != "*":
                fail("expected '*'")
            pos += 1
            right = one()
            if pos >= len(src) or src[pos] != ")":
                fail("expected ')'")
            pos += 1
            return Prod(left, right)
        if ch == "[":
            pos += 1
            a = one()
            if pos >= len(src) or src[pos] != ",":
                fail("expected ','")
            pos += 1
            b = one()
            if pos >= len(src) or src[pos] != "]":
                fail("expected ']'")
            pos += 1
            return Hom(a, b)
        if ch == "1":
            pos += 1
            return ONE
        if ch.isalpha():
            start = pos
            while pos < len(src) and src[pos].isalnum():
                pos += 1
            return Ground(src[start:pos])
        fail(f"unexpected {ch!r}")

    s = one()
    if pos != len(src):
        fail("trailing input")
    return s


def random_shape(rng, max_leaves: int = 3, unit_prob: float = 0.1, ground: Shape = R) -> Shape:
    """A random product tree with 1..max_leaves ground leaves, depth <= 3."""
    n = rng.randint(1, max_leaves)

    def build(k: int) -> Shape:
        if k == 1:
            leaf = ground
            if rng.random() < unit_prob:
                return Prod(ONE, leaf) if rng.random() < 0.5 else Prod(leaf, ONE)
            return leaf
        split = rng.randint(1, k - 1)
        return Prod(build(split), build(k - split))

    s = build(n)
    if depth(s) > 3:
        return random_shape(rng, max_leaves, 0.0, ground)
    return s
