"""Expression syntax shared by the polynomial and smooth models.

    top    := [ 'ctx' '(' names ')' ] [ 'args' '(' names ')' ] body
    body   := '[' sum (',' sum)* ']' | sum
    sum    := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom [ '^' INT ]
    atom   := INT | NAME | FUNC '(' sum ')' | '(' sum ')'

Division is only accepted by a nonzero constant, so ``3/2*x`` is a rational
coefficient and ``x/y`` is rejected by the consumers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

FUNCS = ("sin", "cos", "exp")
VAR_ORDER = "xyzwuvstpqrabcdefghijklmno"


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Program:
    """Parsed input: the components plus any declared variable blocks."""

    components: tuple
    ctx: tuple | None
    args: tuple | None
    pos: tuple = ()

    def free_vars(self) -> set:
        out = set()
        for c in self.components:
            _collect(c, out)
        return out


def _collect(node, out):
    if isinstance(node, Var):
        out.add(node.name)
    elif isinstance(node, BinOp):
        _collect(node.left, out)
        _collect(node.right, out)
    elif isinstance(node, (Neg, Call)):
        _collect(node.arg, out)
    elif isinstance(node, Pow):
        _collect(node.base, out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, funcs):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.funcs = funcs

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def names(self):
        self.take("(")
        out = []
        if self.peek()[0] != ")":
            out.append(self.take("name")[1])
            while self.peek()[0] == ",":
                self.take(",")
                out.append(self.take("name")[1])
        self.take(")")
        return tuple(out)

    def program(self):
        ctx = args = None
        if self.peek()[0] == "name" and self.peek()[1] == "ctx" and self.peek(1)[0] == "(":
            self.take()
            ctx = self.names()
        if self.peek()[0] == "name" and self.peek()[1] == "args" and self.peek(1)[0] == "(":
            self.take()
            args = self.names()
        if self.peek()[0] == "[":
            self.take("[")
            comps = [self.sum()]
            while self.peek()[0] == ",":
                self.take(",")
                comps.append(self.sum())
            self.take("]")
        else:
            comps = [self.sum()]
        self.take("end")
        return Program(tuple(comps), ctx, args)

    def sum(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok[0] == "/" and not _is_const(rhs):
                raise ParseError("division is only allowed by a constant", self.text, tok[2])
            if tok[0] == "/" and _const_value(rhs) == 0:
                raise ParseError("division by zero", self.text, tok[2])
            node = BinOp(tok[0], node, rhs)
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return Num(Fraction(int(tok[1])))
        if tok[0] == "name":
            self.take()
            if self.peek()[0] == "(":
                if tok[1] not in self.funcs:
                    raise ParseError(f"unknown function {tok[1]!r}", self.text, tok[2])
                self.take("(")
                arg = self.sum()
                self.take(")")
                return Call(tok[1], arg)
            if tok[1] in FUNCS:
                raise ParseError(f"{tok[1]} needs an argument", self.text, tok[2])
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            node = self.sum()
            self.take(")")
            return node
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", self.text, tok[2])


def _is_const(node) -> bool:
    if isinstance(node, Num):
        return True
    if isinstance(node, Neg):
        return _is_const(node.arg)
    if isinstance(node, BinOp):
        return _is_const(node.left) and _is_const(node.right)
    if isinstance(node, Pow):
        return _is_const(node.base)
    return False


def _const_value(node) -> Fraction:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -_const_value(node.arg)
    if isinstance(node, Pow):
        return _const_value(node.base) ** node.exp
    a, b = _const_value(node.left), _const_value(node.right)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b


def parse(text: str, funcs=()) -> Program:
    """Parse ``text``; ``funcs`` lists the function names allowed in calls."""
    return _Parser(text, tuple(funcs)).program()


def var_sort_key(name: str):
    m = re.fullmatch(r"([A-Za-z]+?)(\d*)", name)
    stem, idx = m.group(1), m.group(2)
    head = stem[0]
    rank = VAR_ORDER.index(head.lower()) if head.lower() in VAR_ORDER else len(VAR_ORDER)
    return (rank, head.isupper(), stem, int(idx) if idx else -1)


def order_vars(names) -> list:
    return sorted(set(names), key=var_sort_key)


def resolve_blocks(prog: Program, ctx=None):
    """Return ``(ctx_names, arg_names)`` for a parsed program.

    Explicit ``ctx(...)``/``args(...)`` headers win; ``ctx`` (a list of names)
    comes from the command line.  Remaining free variables become arguments
    in canonical order.
    """
    free = prog.free_vars()
    ctx_names = tuple(prog.ctx) if prog.ctx is not None else tuple(ctx or ())
    if prog.args is not None:
        arg_names = tuple(prog.args)
    else:
        arg_names = tuple(v for v in order_vars(free) if v not in ctx_names)
    declared = set(ctx_names) | set(arg_names)
    if len(declared) != len(ctx_names) + len(arg_names):
        raise ValueError("a variable is declared twice")
    unknown = free - declared
    if unknown:
        raise ValueError(f"unknown variable(s): {', '.join(sorted(unknown))}")
    return ctx_names, arg_names


def fresh_names(used, count_like) -> list:
    """Names for a derivative block: the next unused names after ``used``.

    Single-letter inputs continue along ``x y z w u v ...``; indexed names
    such as ``x1`` keep their index and move to the next unused stem.
    """
    used = list(used)
    taken = set(used)
    if all(len(n) == 1 for n in count_like):
        out = []
        for ch in VAR_ORDER:
            if len(out) == len(count_like):
                return out
            if ch not in taken:
                out.append(ch)
                taken.add(ch)
        out += [f"d{i}" for i in range(len(count_like) - len(out))]
        return out
    for stem in VAR_ORDER:
        cand = []
        for n in count_like:
            idx = re.fullmatch(r"[A-Za-z]+?(\d*)", n).group(1)
            cand.append(stem + idx)
        if not (set(cand) & taken) and len(set(cand)) == len(cand):
            return cand
    return [f"d_{n}" for n in count_like]
