"""Recursive-descent parser for the expression language.

Grammar::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor (("*" factor) | ("/" factor))*
    factor := primary ("^" ["-"] integer)*
    primary:= integer | param | field | coord | "i"
            | deriv+ "(" expr ")" | macro "(" args ")" | "(" expr ")"
    deriv  := dt | dx | dy | dz, optionally primed; chains like ``dtdx`` allowed

A divisor must reduce to a nonzero rational times parameter powers.
Macros expand componentwise in three dimensions, in the frame of their
argument: ``lap(f)``, ``gradsq(f)``, ``divg(f, g)`` = sum_i d_i(f d_i g),
``gdot(f, g)`` = sum_i d_i f d_i g.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .calculus import diff
from .expr import (
    COORDS,
    FIELD_NAMES,
    PARAM_NAMES,
    SPATIAL,
    Coord,
    Expr,
    Field,
    I,
    Param,
    Rational,
    add,
    frame_of,
    mul,
    neg,
    power,
    reciprocal,
)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    pass


ALIASES = {
    "γ": "gamma",
    "Φ": "Phi",
    "χ": "chi",
    "Ψ": "Psi",
    "Ψc": "Psic",
    "I": "i",
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-zΦΨχγ][A-Za-z0-9]*(?:'|′)?)|(?P<op>[-+*/^(),]))"
)
_DERIV_CHAIN = re.compile(r"(?:d[txyz])+")


@dataclass
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind).replace("′", "'"), m.start(kind)))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def macro_lap(f: Expr) -> Expr:
    primed = bool(frame_of(f))
    return add(*(diff(diff(f, c), c) for c in _spatial(primed)))


def macro_gradsq(f: Expr) -> Expr:
    primed = bool(frame_of(f))
    return add(*(power(diff(f, c), 2) for c in _spatial(primed)))


def macro_gdot(f: Expr, g: Expr) -> Expr:
    primed = bool(frame_of(add(f, g)))
    return add(*(mul(diff(f, c), diff(g, c)) for c in _spatial(primed)))


def macro_divg(f: Expr, g: Expr) -> Expr:
    primed = bool(frame_of(add(f, g)))
    return add(*(diff(mul(f, diff(g, c)), c) for c in _spatial(primed)))


def _spatial(primed: bool):
    return [Coord(n, primed) for n in SPATIAL]


MACROS = {"lap": (1, macro_lap), "gradsq": (1, macro_gradsq),
          "divg": (2, macro_divg), "gdot": (2, macro_gdot)}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, what: str):
        if self.tok.kind == "eof":
            raise ParseError(f"{what}, got end of input", self.tok.offset)
        raise ParseError(f"{what}, got {self.tok.text!r}", self.tok.offset)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.fail("expected end of input")
        return e

    def expr(self) -> Expr:
        negate = False
        if self.tok.kind == "op" and self.tok.text in "+-":
            negate = self.advance().text == "-"
        e = self.term()
        if negate:
            e = neg(e)
        terms = [e]
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            t = self.term()
            terms.append(neg(t) if op == "-" else t)
        return add(*terms)

    def term(self) -> Expr:
        e = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            rhs = self.factor()
            if op.text == "*":
                e = mul(e, rhs)
            else:
                try:
                    e = mul(e, reciprocal(rhs))
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f"invalid divisor ({exc})", op.offset) from None
        return e

    def factor(self) -> Expr:
        e = self.primary()
        while self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            sign = 1
            if self.tok.kind == "op" and self.tok.text == "-":
                self.advance()
                sign = -1
            if self.tok.kind != "num":
                self.fail("expected integer exponent")
            n = sign * int(self.advance().text)
            try:
                e = power(e, n)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), caret.offset) from None
        return e

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Rational(int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "ident":
            return self.identifier()
        self.fail("expected a factor")

    def identifier(self) -> Expr:
        tok = self.advance()
        text = tok.text
        primed = text.endswith("'")
        name = text[:-1] if primed else text
        name = ALIASES.get(name, name)
        if _DERIV_CHAIN.fullmatch(name):
            coords = [Coord(name[k + 1], primed) for k in range(0, len(name), 2)]
            while self.tok.kind == "ident":
                nxt = self.tok.text
                p = nxt.endswith("'")
                n = nxt[:-1] if p else nxt
                if not _DERIV_CHAIN.fullmatch(n):
                    break
                self.advance()
                coords.extend(Coord(n[k + 1], p) for k in range(0, len(n), 2))
            self.expect("(")
            e = self.expr()
            self.expect(")")
            try:
                for c in coords:
                    e = diff(e, c)
            except ValueError as exc:
                raise ParseError(str(exc), tok.offset) from None
            return e
        if name in MACROS and not primed:
            arity, fn = MACROS[name]
            self.expect("(")
            args = [self.expr()]
            while len(args) < arity:
                self.expect(",")
                args.append(self.expr())
            self.expect(")")
            try:
                return fn(*args)
            except ValueError as exc:
                raise ParseError(str(exc), tok.offset) from None
        if name == "i" and not primed:
            return I
        if name in PARAM_NAMES and not primed:
            return Param(name)
        if name in FIELD_NAMES:
            return Field(name, primed)
        if name in COORDS:
            return Coord(name, primed)
        raise UnknownIdentifierError(f"unknown identifier {text!r}", tok.offset)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    return _Parser(text).parse()
