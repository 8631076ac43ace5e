"""Construction expressions: a small recursive-descent parser, a canonical
printer, and bottom-up evaluation to Hodge polynomials.

Grammar::

    expr  := leaf
           | "product(" expr "," expr ")"
           | "projbundle(" expr "," int ")"
           | "blowup(" expr "," expr "," int ")"
           | "flagbundle(" expr "," "[" int ("," int)* "]" ")"
    leaf  := "P(" int ")" | "torus(" int ")" | "curve(" int ")" | "hopf" | "point"
           | "diamond(" int (";" int "," int "," int)* ")"

Whitespace between tokens is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from . import hodge
from .errors import EvaluationError, ExprSyntaxError, HodgeError, InvalidInputError
from .fixtures import leaf as catalog_leaf
from .hodge import HodgePolynomial


class ExprArityError(ExprSyntaxError):
    pass


class UnknownLeafError(ExprSyntaxError):
    pass


@dataclass(frozen=True)
class Leaf:
    name: str
    arg: Optional[int] = None


@dataclass(frozen=True)
class Diamond:
    n: int
    entries: Tuple[Tuple[int, int, int], ...] = ()


@dataclass(frozen=True)
class Product:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class ProjBundle:
    base: "Expr"
    r: int


@dataclass(frozen=True)
class BlowUp:
    base: "Expr"
    center: "Expr"
    r: int


@dataclass(frozen=True)
class FlagBundle:
    base: "Expr"
    parts: Tuple[int, ...]


Expr = Union[Leaf, Diamond, Product, ProjBundle, BlowUp, FlagBundle]

_UNARY_LEAVES = ("P", "torus", "curve")
_NULLARY_LEAVES = ("hopf", "point")
_NODES = {"product": ("expr", "expr"), "projbundle": ("expr", "int"),
          "blowup": ("expr", "expr", "int"), "flagbundle": ("expr", "list")}
_EXPR_START = tuple(f"{n}(" for n in _UNARY_LEAVES + tuple(_NODES) + ("diamond",)) + _NULLARY_LEAVES

_TOKEN = re.compile(r"(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<punct>[()\[\],;])")


@dataclass(frozen=True)
class Token:
    kind: str   # "int", "ident", "punct" or "end"
    text: str
    offset: int  # bytes from the start of the UTF-8 input


def tokenize(text: str) -> List[Token]:
    def byte_offset(i):
        return len(text[:i].encode())

    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            toks.append(Token("end", "", byte_offset(pos)))
            return toks
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", byte_offset(pos))
        toks.append(Token(m.lastgroup, m.group(), byte_offset(pos)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected, cls=ExprSyntaxError, message=None):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise cls(message or f"unexpected {found}", t.offset, expected)

    def punct(self, ch, arity_of=None):
        if self.tok.kind == "punct" and self.tok.text == ch:
            self.i += 1
            return
        if arity_of and self.tok.kind == "punct" and self.tok.text in ",)":
            self.fail([repr(ch)], ExprArityError, f"wrong number of arguments to {arity_of}")
        self.fail([repr(ch)])

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail(["int"])
        v = int(self.tok.text)
        self.i += 1
        return v

    def expr(self) -> Expr:
        t = self.tok
        if t.kind != "ident":
            self.fail(["expr"])
        name = t.text
        self.i += 1
        if name in _NULLARY_LEAVES:
            return Leaf(name)
        if name in _UNARY_LEAVES:
            self.punct("(")
            arg = self.integer()
            self.punct(")", arity_of=name)
            return Leaf(name, arg)
        if name == "diamond":
            return self.diamond()
        if name not in _NODES:
            self.i -= 1
            self.fail(list(_EXPR_START), UnknownLeafError, f"unknown leaf or constructor {name!r}")
        self.punct("(")
        args = []
        for j, kind in enumerate(_NODES[name]):
            if j:
                self.punct(",", arity_of=name)
            if kind == "expr":
                args.append(self.expr())
            elif kind == "int":
                args.append(self.integer())
            else:
                args.append(self.int_list())
        self.punct(")", arity_of=name)
        if name == "product":
            return Product(*args)
        if name == "projbundle":
            return ProjBundle(*args)
        if name == "blowup":
            return BlowUp(*args)
        return FlagBundle(args[0], tuple(args[1]))

    def int_list(self) -> List[int]:
        self.punct("[")
        out = [self.integer()]
        while self.tok.kind == "punct" and self.tok.text == ",":
            self.i += 1
            out.append(self.integer())
        self.punct("]")
        return out

    def diamond(self) -> Diamond:
        self.punct("(")
        n = self.integer()
        entries = []
        while self.tok.kind == "punct" and self.tok.text == ";":
            self.i += 1
            p = self.integer()
            self.punct(",")
            q = self.integer()
            self.punct(",")
            entries.append((p, q, self.integer()))
        if not (self.tok.kind == "punct" and self.tok.text == ")"):
            self.fail(["';'", "')'"])
        self.i += 1
        return Diamond(n, tuple(entries))


def parse_expr(text: str) -> Expr:
    """Parse a construction expression; errors carry a byte offset and the expected tokens."""
    parser = _Parser(text)
    e = parser.expr()
    if parser.tok.kind != "end":
        parser.fail(["end of input"])
    return e


def to_text(e: Expr) -> str:
    """Canonical text of an expression; ``parse_expr(to_text(e)) == e``."""
    if isinstance(e, Leaf):
        return e.name if e.arg is None else f"{e.name}({e.arg})"
    if isinstance(e, Diamond):
        return "diamond(" + "; ".join([str(e.n)] + [f"{p},{q},{h}" for p, q, h in e.entries]) + ")"
    if isinstance(e, Product):
        return f"product({to_text(e.left)}, {to_text(e.right)})"
    if isinstance(e, ProjBundle):
        return f"projbundle({to_text(e.base)}, {e.r})"
    if isinstance(e, BlowUp):
        return f"blowup({to_text(e.base)}, {to_text(e.center)}, {e.r})"
    if isinstance(e, FlagBundle):
        return f"flagbundle({to_text(e.base)}, [{', '.join(map(str, e.parts))}])"
    raise TypeError(f"not an expression: {e!r}")


def evaluate(e: Expr, path: str = "$") -> HodgePolynomial:
    """Evaluate bottom-up, propagating the ∂∂̄ flag. Errors are re-raised as
    :class:`EvaluationError` carrying the path of the failing node."""
    if isinstance(e, Leaf):
        return _step(path, lambda: catalog_leaf(e.name, e.arg))
    if isinstance(e, Diamond):
        return _step(path, lambda: _diamond(e))
    if isinstance(e, Product):
        a, b = evaluate(e.left, path + ".left"), evaluate(e.right, path + ".right")
        return hodge.kunneth(a, b)
    if isinstance(e, ProjBundle):
        base = evaluate(e.base, path + ".base")
        return _step(path, lambda: hodge.projective_bundle(base, e.r))
    if isinstance(e, BlowUp):
        base = evaluate(e.base, path + ".base")
        center = evaluate(e.center, path + ".center")
        return _step(path, lambda: hodge.blow_up(base, center, e.r))
    if isinstance(e, FlagBundle):
        base = evaluate(e.base, path + ".base")
        return _step(path, lambda: hodge.flag_bundle(base, e.parts))
    raise TypeError(f"not an expression: {e!r}")


def _diamond(e: Diamond) -> HodgePolynomial:
    coeffs = {}
    for p, q, h in e.entries:
        if (p, q) in coeffs:
            raise InvalidInputError(f"diamond literal repeats bidegree {(p, q)}")
        coeffs[(p, q)] = h
    return HodgePolynomial(e.n, coeffs, None, to_text(e))


def _step(path, fn):
    try:
        return fn()
    except HodgeError as exc:
        raise EvaluationError(path, exc) from exc
