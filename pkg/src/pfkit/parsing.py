"""Parser for the polynomial / rational-function input grammar.

Accepted syntax: integer literals, the variable ``t``, operators
``+ - * / ^``, and parentheses.  A ``/`` may appear only once, at the top
level, separating two polynomial expressions.  Whitespace is ignored.
Example: ``(t^4 + 4*t^2 + 2)/(t^4 + 2*t^2 + 1)``.
"""

from __future__ import annotations

from .poly import Poly
from .ratfunc import RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, object, int]] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j]), i))
                i = j
            elif ch == "t":
                self.toks.append(("var", "t", i))
                i += 1
            elif ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.pos = 0
        self.end = len(text)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, self.end)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok


def _parse_sum(tk: _Tokens) -> Poly:
    sign = 1
    kind, _, _ = tk.peek()
    if kind in ("+", "-"):
        tk.next()
        sign = -1 if kind == "-" else 1
    acc = _parse_term(tk) * sign
    while True:
        kind, _, _ = tk.peek()
        if kind == "+":
            tk.next()
            acc = acc + _parse_term(tk)
        elif kind == "-":
            tk.next()
            acc = acc - _parse_term(tk)
        else:
            return acc


def _parse_term(tk: _Tokens) -> Poly:
    acc = _parse_power(tk)
    while True:
        kind, _, _ = tk.peek()
        if kind == "*":
            tk.next()
            acc = acc * _parse_power(tk)
        elif kind in ("(", "var"):
            # implicit multiplication such as 2t or 3(t+1)
            acc = acc * _parse_power(tk)
        else:
            return acc


def _parse_power(tk: _Tokens) -> Poly:
    base = _parse_atom(tk)
    kind, _, _ = tk.peek()
    if kind == "^":
        tk.next()
        ekind, exponent, epos = tk.next()
        if ekind != "int":
            raise ParseError("exponent must be a nonnegative integer", epos)
        return base ** exponent
    return base


def _parse_atom(tk: _Tokens) -> Poly:
    kind, val, pos = tk.next()
    if kind == "int":
        return Poly([val])
    if kind == "var":
        return Poly([0, 1])
    if kind == "-":
        return -_parse_atom(tk)
    if kind == "(":
        inner = _parse_sum(tk)
        kind2, _, pos2 = tk.next()
        if kind2 != ")":
            raise ParseError("expected ')'", pos2)
        return inner
    raise ParseError("expected a number, 't', or '('", pos)


def parse_polynomial(text: str) -> Poly:
    tk = _Tokens(text)
    p = _parse_sum(tk)
    kind, _, pos = tk.peek()
    if kind == "/":
        raise ParseError("'/' is only allowed between two polynomial expressions", pos)
    if kind is not None:
        raise ParseError("trailing input", pos)
    return p


def parse_rational(text: str) -> RationalFunction:
    """Parse ``P`` or ``P / Q`` with P, Q polynomial expressions."""
    tk = _Tokens(text)
    num = _parse_sum(tk)
    kind, _, pos = tk.peek()
    if kind is None:
        return RationalFunction(num)
    if kind != "/":
        raise ParseError("trailing input", pos)
    tk.next()
    den = _parse_sum(tk)
    kind, _, pos = tk.peek()
    if kind == "/":
        raise ParseError("'/' may appear only once, at the top level", pos)
    if kind is not None:
        raise ParseError("trailing input", pos)
    if den.is_zero():
        raise ParseError("zero denominator", pos)
    return RationalFunction(num, den)
