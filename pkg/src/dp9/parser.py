"""Parse and print mixed-degree classes such as ``"one - 1/2 pt + 3l - e1"``.

Grammar::

    expr     := ['-'] term (('+' | '-') term)*
    term     := (rational '*'?)? symbol | rational
    rational := int ('/' posint)?

A bare rational is a multiple of ``one``.  Symbols are the basis names
``l, e1..e9``, the named classes ``f, e, zeta, n1, n2, o1, o2``, and
``one`` / ``pt`` for degrees 0 and 4.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from .lattice import BASIS_NAMES, F, CohClass, H2Class, named_class

SYMBOLS = BASIS_NAMES + ("f", "e", "zeta", "n1", "n2", "o1", "o2", "one", "pt")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Tok(NamedTuple):
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, op: str) -> bool:
        if self.cur.kind == "op" and self.cur.text == op:
            self.i += 1
            return True
        return False

    def expr(self) -> CohClass:
        if self.cur.kind == "end":
            raise ParseError("empty expression", self.cur.pos)
        sign = -1 if self.accept("-") else 1
        total = sign * self.term()
        while True:
            if self.accept("+"):
                total = total + self.term()
            elif self.accept("-"):
                total = total - self.term()
            elif self.cur.kind == "end":
                return total
            else:
                raise ParseError(f"expected '+' or '-', got {self.cur.text!r}",
                                 self.cur.pos)

    def rational(self) -> Optional[Fraction]:
        if self.cur.kind != "int":
            return None
        num = int(self.take().text)
        if self.accept("/"):
            tok = self.cur
            if tok.kind != "int":
                raise ParseError("expected denominator", tok.pos)
            den = int(self.take().text)
            if den == 0:
                raise ParseError("zero denominator", tok.pos)
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> CohClass:
        coef = self.rational()
        star = coef is not None and self.accept("*")
        if self.cur.kind == "name":
            tok = self.take()
            return (Fraction(1) if coef is None else coef) * _symbol(tok.text, tok.pos)
        if coef is None:
            raise ParseError(f"expected a term, got {self.cur.text or 'end of input'!r}",
                             self.cur.pos)
        if star:
            raise ParseError("expected a symbol after '*'", self.cur.pos)
        return CohClass(rank=coef)


def _symbol(name: str, pos: int) -> CohClass:
    if name == "one":
        return CohClass.one()
    if name == "pt":
        return CohClass.pt()
    if name not in SYMBOLS:
        raise ParseError(f"unknown symbol {name!r}", pos)
    return CohClass.of(named_class(name))


def parse_class(text: str) -> CohClass:
    """Parse an expression into a :class:`CohClass`; raises :class:`ParseError`."""
    return _Parser(text).expr()


def parse_h2(text: str) -> H2Class:
    """Parse an expression that must be purely of degree two."""
    c = parse_class(text)
    if c.rank or c.point:
        raise ValueError(f"{text!r} is not a degree-two class")
    return c.div


# -- printing ---------------------------------------------------------------

def _nterms(d: H2Class) -> int:
    return sum(1 for c in d.coeffs if c)


def split_fiber(d: H2Class) -> tuple:
    """Write ``d = k f + r`` with the fewest printed terms.

    Returns ``(k, r)``; ``k`` is zero unless using ``f`` strictly shortens
    the output.  Ties go to the smallest ``|k|``, then to positive ``k``.
    """
    cs = d.coeffs
    best_n, best_k = _nterms(d), 0
    candidates = {Fraction(cs[0], 3)} | {-c for c in cs[1:]}
    for k in sorted(candidates, key=lambda k: (abs(k), -k)):
        if not k:
            continue
        n = 1 + sum(1 for c, fc in zip(cs, F.coeffs) if c != k * fc)
        if n < best_n:
            best_n, best_k = n, k
    return (best_k, d - best_k * F) if best_k else (0, d)


_ORDER = ("e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9", "l")


def _render(terms: list) -> str:
    out = []
    for i, (c, sym) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if sym == "":
            body = str(a)
        elif a == 1:
            body = sym
        elif a.denominator == 1:
            body = f"{a}{sym}"
        else:
            body = f"{a} {sym}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def format_class(c: CohClass) -> str:
    """Canonical text: rank, then e1..e9, l, f, then pt."""
    terms = []
    if c.rank:
        terms.append((c.rank, ""))
    k, r = split_fiber(c.div)
    coeffs = dict(zip(BASIS_NAMES, r.coeffs))
    for name in _ORDER:
        if coeffs[name]:
            terms.append((coeffs[name], name))
    if k:
        terms.append((k, "f"))
    if c.point:
        terms.append((c.point, "pt"))
    return _render(terms)


def format_h2(d: H2Class) -> str:
    return format_class(CohClass.of(d))
