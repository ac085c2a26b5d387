"""Text form of polynomials.

Grammar (whitespace insignificant)::

    expr     := ['+' | '-'] term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := base ('^' natural)?
    base     := integer | name | '(' expr ')'

A divisor must be a nonzero constant, so ``1/2`` is a rational literal and
``x/(s - 1)`` is allowed over Q(s); ``1/x`` is rejected.  Names must be
declared by the caller.  Over the field tag ``"QQ(s)"`` the
name ``s`` (when not declared as a variable) denotes the transcendental
generator of Q(s).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .fields import MultiQuad, RatFunc
from .poly import Derivation, Poly

FIELDS = ("QQ", "QQ(s)")

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^/()])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        num, name, sym = m.groups()
        if num is not None:
            toks.append(("int", num, pos))
        elif name is not None:
            toks.append(("name", name, pos))
        else:
            toks.append((sym, sym, pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str], field: str):
        if field not in FIELDS:
            raise ValueError(f"unknown field tag {field!r}; expected one of {FIELDS}")
        self.toks = _tokenize(text)
        self.i = 0
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.n = len(self.names)
        self.one = Fraction(1) if field == "QQ" else RatFunc(1)
        self.field = field

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def unexpected(self, tok):
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2])

    def const(self, c) -> Poly:
        return Poly.constant(self.one * c, self.n)

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            self.unexpected(tok)
        return p

    def expr(self) -> Poly:
        neg = False
        if self.peek()[0] in "+-":
            neg = self.take()[0] == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            tok = self.peek()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
                continue
            if not rhs.is_constant():
                raise ParseError("division by a non-constant", tok[2])
            if not rhs:
                raise ParseError("malformed rational literal: zero denominator", tok[2])
            acc = acc / rhs.constant_term()
        return acc

    def factor(self) -> Poly:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            return base ** int(tok[1])
        return base

    def base(self) -> Poly:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return self.const(Fraction(int(tok[1])))
        if kind == "name":
            self.take()
            name = tok[1]
            if name in self.names:
                return Poly.var(self.names.index(name), self.n, self.one)
            if name == "s" and self.field == "QQ(s)":
                return Poly.constant(RatFunc.s(), self.n)
            raise ParseError(f"unknown variable {name!r}", tok[2])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        self.unexpected(tok)


def parse_poly(text: str, names: Sequence[str], field: str = "QQ") -> Poly:
    return _Parser(text, names, field).parse()


def split_top_level(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside parentheses, keeping each piece's offset."""
    out, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:k], start))
            start = k + 1
    out.append((text[start:], start))
    return out


def parse_poly_list(text: str, names: Sequence[str], field: str = "QQ") -> list[Poly]:
    if not text.strip():
        return []
    polys = []
    for piece, offset in split_top_level(text):
        try:
            polys.append(parse_poly(piece, names, field))
        except ParseError as exc:
            raise ParseError(exc.message, exc.offset + offset) from None
    return polys


def parse_derivation(text: str, names: Sequence[str], field: str = "QQ") -> Derivation:
    """Comma-separated images of the variables, in declaration order."""
    images = parse_poly_list(text, names, field)
    if len(images) != len(names):
        raise ParseError(
            f"derivation needs {len(names)} images, got {len(images)}", len(text)
        )
    return Derivation(images)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _rational_of(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, RatFunc) and c.is_constant():
        return c.constant_value()
    if isinstance(c, MultiQuad) and c.is_scalar():
        return _rational_of(c.coeff(()))
    return None


def _monomial(exps, names) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(1, n + 1)]


def format_poly(f: Poly, names: Sequence[str] | None = None) -> str:
    """Canonical text, graded lexicographic order, largest term first."""
    names = list(names) if names is not None else default_names(f.nvars)
    if not f.terms:
        return "0"
    pieces: list[tuple[bool, str]] = []
    for exps, c in f.sorted_terms():
        mono = _monomial(exps, names)
        r = _rational_of(c)
        if r is not None:
            neg = r < 0
            r = abs(r)
            if not mono:
                body = str(r)
            elif r == 1:
                body = mono
            else:
                body = f"{r}*{mono}"
        else:
            neg = False
            body = f"({c})" if not mono else f"({c})*{mono}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_derivation(D: Derivation, names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else default_names(D.nvars)
    parts = []
    for im, name in zip(D.images, names):
        if im:
            parts.append(f"({format_poly(im, names)})*d/d{name}")
    return " + ".join(parts) if parts else "0"
