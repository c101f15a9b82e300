"""Text grammar for Laurent polynomials.

    poly     := term (('+' | '-') term)*   | '0'
    term     := [sign] [integer] ['*'] [monomial]
    monomial := var ['^' signed-int] ('*' var ['^' signed-int])*
    var      := 't' (only when m = 1) | 't' digits    (1-based index)

Whitespace is ignored everywhere. ``str(LaurentPoly)`` emits text in this
grammar with terms in lexicographic exponent order.
"""
from __future__ import annotations

from .errors import PolySyntaxError
from .laurent import LaurentPoly


class _Scanner:
    def __init__(self, text):
        # strip whitespace but remember where every kept char came from
        self.chars = []
        self.pos = []
        for i, ch in enumerate(text):
            if not ch.isspace():
                self.chars.append(ch)
                self.pos.append(i)
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.chars[self.i] if self.i < len(self.chars) else ""

    def where(self):
        return self.pos[self.i] if self.i < len(self.pos) else self.end

    def take(self):
        ch = self.peek()
        self.i += 1
        return ch

    def digits(self):
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        return "".join(self.chars[start:self.i])


def _parse_var(sc: _Scanner, nvars: int) -> int:
    at = sc.where()
    sc.take()  # 't'
    idx = sc.digits()
    if not idx:
        if nvars != 1:
            raise PolySyntaxError(f"bare 't' is only allowed when m = 1 (m = {nvars})", at)
        return 0
    k = int(idx)
    if not 1 <= k <= nvars:
        raise PolySyntaxError(f"variable t{k} out of range for lattice rank {nvars}", at)
    return k - 1


def _parse_signed_int(sc: _Scanner) -> int:
    at = sc.where()
    sign = 1
    while sc.peek() in "+-" and sc.peek():
        if sc.take() == "-":
            sign = -sign
    d = sc.digits()
    if not d:
        raise PolySyntaxError("expected integer exponent", at)
    return sign * int(d)


def _parse_monomial(sc: _Scanner, nvars: int, exp: list) -> None:
    while True:
        if sc.peek() != "t":
            raise PolySyntaxError("expected variable", sc.where())
        v = _parse_var(sc, nvars)
        power = 1
        if sc.peek() == "^":
            sc.take()
            power = _parse_signed_int(sc)
        exp[v] += power
        if sc.peek() == "*" and sc.i + 1 < len(sc.chars) and sc.chars[sc.i + 1] == "t":
            sc.take()
            continue
        return


def parse_poly(text: str, nvars: int = 1) -> LaurentPoly:
    """Parse ``text`` into a canonical :class:`LaurentPoly` in ``nvars`` variables.

    >>> str(parse_poly("t1^2*t2^-1 - 3", 2))
    '-3+t1^2*t2^-1'
    """
    sc = _Scanner(text)
    if not sc.chars:
        raise PolySyntaxError("empty polynomial", 0)
    terms: dict = {}
    first = True
    while sc.peek():
        at = sc.where()
        sign = 1
        seen_sign = False
        while sc.peek() in ("+", "-"):
            seen_sign = True
            if sc.take() == "-":
                sign = -sign
        if not first and not seen_sign:
            raise PolySyntaxError(f"expected '+' or '-', got {sc.peek()!r}", at)
        first = False
        coeff_txt = sc.digits()
        coeff = int(coeff_txt) if coeff_txt else 1
        exp = [0] * nvars
        has_mono = False
        if sc.peek() == "*":
            if not coeff_txt:
                raise PolySyntaxError("'*' without a coefficient", sc.where())
            sc.take()
            if sc.peek() != "t":
                raise PolySyntaxError("expected variable after '*'", sc.where())
        if sc.peek() == "t":
            _parse_monomial(sc, nvars, exp)
            has_mono = True
        if not coeff_txt and not has_mono:
            raise PolySyntaxError(f"unexpected {sc.peek()!r}" if sc.peek() else "dangling sign",
                                  sc.where())
        if sc.peek() and sc.peek() not in "+-":
            raise PolySyntaxError(f"unexpected {sc.peek()!r}", sc.where())
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentPoly(terms, nvars)


def format_poly(p: LaurentPoly) -> str:
    return str(p)
