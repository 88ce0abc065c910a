"""Expression parsers for polynomials and rational functions.

Strict polynomial grammar (UTF-8, whitespace ignored, no implicit product):

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := 'z' | rational | '(' expr ')' | '-' factor
    rational := int ('/' uint)?

`parse_ratfun` extends the term rule with '/' as a binary operator so that
equation documents may carry rational-function coefficients; those are
cleared to polynomials by the equation loader.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .poly import Poly
from .ratfun import RatFun

_SYMBOLS = set("+-*/^()z")


class _Token:
    __slots__ = ("kind", "value", "offset")

    def __init__(self, kind: str, value, offset: int):
        self.kind = kind  # 'int' | symbol | 'end'
        self.value = value
        self.offset = offset


def _tokenize(text: str) -> list[_Token]:
    data = text.encode("utf-8").decode("utf-8")  # offsets are byte offsets
    raw = text.encode("utf-8")
    toks: list[_Token] = []
    i = 0
    n = len(raw)
    while i < n:
        b = raw[i : i + 1].decode("latin-1")
        if b.isspace():
            i += 1
            continue
        if b.isdigit():
            j = i
            while j < n and raw[j : j + 1].isdigit():
                j += 1
            toks.append(_Token("int", int(raw[i:j]), i))
            i = j
            continue
        if b in _SYMBOLS:
            toks.append(_Token(b, b, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {b!r}", i)
    toks.append(_Token("end", None, n))
    del data
    return toks


class _Parser:
    """Recursive descent over the token stream.

    With allow_div=True the term rule becomes factor (('*'|'/') factor)*
    and the result is a RatFun; otherwise a Poly.
    """

    def __init__(self, text: str, allow_div: bool):
        self.toks = _tokenize(text)
        self.pos = 0
        self.allow_div = allow_div

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.toks[self.pos]
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.offset)
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.kind!r}", tok.offset)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind)
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            kind = self.peek().kind
            if kind == "*":
                self.take("*")
                value = value * self.factor()
            elif kind == "/" and self.allow_div:
                tok = self.take("/")
                rhs = self.factor()
                if (isinstance(rhs, RatFun) and rhs.is_zero) or (
                    isinstance(rhs, Poly) and rhs.is_zero
                ):
                    raise ParseError("division by zero", tok.offset)
                value = self._as_ratfun(value) / self._as_ratfun(rhs)
            else:
                return value

    @staticmethod
    def _as_ratfun(v):
        return v if isinstance(v, RatFun) else RatFun.from_poly(v)

    def factor(self):
        value = self.base()
        if self.peek().kind == "^":
            self.take("^")
            tok = self.take("int")
            value = value ** tok.value
        return value

    def base(self):
        tok = self.peek()
        if tok.kind == "z":
            self.take("z")
            return Poly.z()
        if tok.kind == "int":
            self.take("int")
            num = tok.value
            # rational literal: int '/' uint, only when '/' is not an operator
            if not self.allow_div and self.peek().kind == "/":
                self.take("/")
                dtok = self.take("int")
                if dtok.value == 0:
                    raise ParseError("zero denominator", dtok.offset)
                return Poly.constant(Fraction(num, dtok.value))
            return Poly.constant(num)
        if tok.kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        if tok.kind == "-":
            self.take("-")
            return -self.factor()
        raise ParseError(f"expected a value, found {tok.kind!r}", tok.offset)


def parse_poly(text: str) -> Poly:
    """Parse the strict polynomial grammar; raises ParseError with offset."""
    value = _Parser(text, allow_div=False).parse()
    assert isinstance(value, Poly)
    return value


def parse_ratfun(text: str) -> RatFun:
    """Parse with '/' as an operator; always returns a RatFun."""
    value = _Parser(text, allow_div=True).parse()
    return value if isinstance(value, RatFun) else RatFun.from_poly(value)


def parse_fraction(text: str) -> Fraction:
    """Parse a plain rational like '-3/7' (CLI points, seeds)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational {text!r}: {exc}", 0) from None
