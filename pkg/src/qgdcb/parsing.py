"""Recursive-descent parser for algebra expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' exponent]
    atom   := int | 'v' | '[' int ']' | gen | '(' expr ')'
    gen    := ('E'|'F') index | ('E'|'F') '(' int (',' int)* ')'
            | 'K' index ["'"] | "K'" index
    exponent := ['-'] int | '(' ['-'] int ['/' int] ')'

Half-integer exponents are only allowed on ``v``.  The parser is generic:
``make_gen`` turns generator tokens into values and the values only need to
support ``+``, ``-``, ``*`` and integer powers together with scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeff import LaurentHalf, RatFunc, qint, vpow


class ParseError(ValueError):
    def __init__(self, message, text=None, pos=None):
        if text is not None and pos is not None:
            message = f"{message} at column {pos + 1}: {text!r}"
        super().__init__(message)
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(K')|([EFKv])|(.))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            pos = m.end()
            continue
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("gen", "K'", start))
        elif m.group(3):
            tok = m.group(3)
            out.append(("var" if tok == "v" else "gen", tok, start))
        else:
            ch = m.group(4)
            if ch not in "+-*/^()[],'":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, make_gen):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.make_gen = make_gen

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}", self.text, tok[2])
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected trailing input")
        return val

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok == ("op", "-", tok[2]):
            self.take()
            sign = -1
        elif tok[0] == "op" and tok[1] == "+":
            self.take()
        val = self.term()
        if sign < 0:
            val = -val
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if tok[1] == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    val = _mul(val, rhs)
                else:
                    if not isinstance(rhs, RatFunc):
                        raise ParseError("can only divide by scalars", self.text, tok[2])
                    if rhs.is_zero():
                        raise ParseError("division by zero", self.text, tok[2])
                    val = _mul(val, RatFunc.const(1) / rhs)
            else:
                return val

    def factor(self):
        start = self.peek()
        val, is_v = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.exponent()
            if is_v:
                return vpow(e)
            if e.denominator != 1:
                raise ParseError("fractional exponent on a non-monomial", self.text, tok[2])
            e = int(e)
            if e < 0:
                if isinstance(val, RatFunc):
                    if val.is_zero():
                        raise ParseError("zero to a negative power", self.text, tok[2])
                    return val ** e
                try:
                    return val.inverse_power(-e)
                except (ValueError, AttributeError) as exc:
                    raise ParseError(str(exc), self.text, start[2]) from None
            return val ** e
        return val

    def exponent(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            num = self.expect("int")[1]
            den = 1
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.expect("int")[1]
                if den == 0:
                    raise self.error("zero denominator in exponent")
            self.expect("op", ")")
            return Fraction(sign * num, den)
        sign = 1
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            sign = -1
        return Fraction(sign * self.expect("int")[1])

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return RatFunc.const(val), False
        if kind == "var":
            return RatFunc.vpow(2), True
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect("op", ")")
            return inner, False
        if kind == "op" and val == "[":
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            n = self.expect("int")[1]
            self.expect("op", "]")
            return RatFunc(qint(sign * n)), False
        if kind == "gen":
            return self.gen(val, pos), False
        raise ParseError("unexpected token", self.text, pos)

    def gen(self, name, pos):
        if self.make_gen is None:
            raise ParseError(f"generator {name!r} not allowed here", self.text, pos)
        nxt = self.peek()
        if name in "EF" and nxt[0] == "op" and nxt[1] == "(":
            self.take()
            coords = [self.expect("int")[1]]
            while self.peek()[0] == "op" and self.peek()[1] == ",":
                self.take()
                coords.append(self.expect("int")[1])
            self.expect("op", ")")
            return self._make(("root", name, tuple(coords)), pos)
        if nxt[0] != "int":
            raise ParseError(f"generator {name} needs an index", self.text, pos)
        index = self.take()[1]
        if name == "K":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "'":
                self.take()
                name = "K'"
        return self._make((name, index), pos)

    def _make(self, spec, pos):
        try:
            return self.make_gen(spec)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), self.text, pos) from None


def _mul(a, b):
    if isinstance(a, RatFunc) and not isinstance(b, RatFunc):
        return b.__rmul__(a)
    return a * b


def parse_expression(text, make_gen=None):
    """Parse `text`; generators are built with make_gen(spec)."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    return _Parser(text, make_gen).parse()


def parse_coeff(text):
    """Parse a scalar such as ``v^-1 - v`` or ``v^2 + 2 + v^(-2)``."""
    return parse_expression(text, None)


__all__ = ["ParseError", "parse_expression", "parse_coeff", "LaurentHalf"]
