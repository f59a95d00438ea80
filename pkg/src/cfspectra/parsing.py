"""Parsers for the two input formats.

Surd expressions::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | atom
    atom   := INT | 'sqrt' '(' expr ')' | '(' expr ')'

CF literals::

    [a0; a1, 1_3, (p1, p2, 1_5)]     period in parentheses, 1_s = s ones
    [(1_1, 2)]                       purely periodic, no a0

Errors carry the byte offset of the offending token.
"""

from __future__ import annotations

import re

from .cf_engine import CFExpansion
from .errors import CFSpectraError, ParseError, UnsupportedFieldError
from .exact_core import QuadSurd, surd_sqrt

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("sqrt", "sqrt", start))
        elif m.group(3):
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _SurdParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, off = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", _byte(self.text, off))

    def parse(self) -> QuadSurd:
        value = self.expr()
        kind, v, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", _byte(self.text, off))
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, off = self.take()
            rhs = self.term()
            value = self._apply(op, value, rhs, off)
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, off = self.take()
            rhs = self.unary()
            value = self._apply(op, value, rhs, off)
        return value

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        kind, v, off = self.take()
        if kind == "int":
            return QuadSurd.rational(int(v))
        if kind == "sqrt":
            self.expect("(")
            arg_off = self.peek()[2]
            arg = self.expr()
            self.expect(")")
            if arg.sign() < 0:
                raise UnsupportedFieldError(
                    f"sqrt of negative value {arg} (at byte {_byte(self.text, arg_off)})"
                )
            if arg.is_rational:
                return QuadSurd.sqrt(arg.to_fraction())
            root = surd_sqrt(arg)
            if root is None:
                raise ParseError("sqrt of an irrational surd is not a quadratic surd", _byte(self.text, off))
            return root
        if v == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {v or 'end of input'!r}", _byte(self.text, off))

    def _apply(self, op, x, y, off):
        try:
            if op == "+":
                return x + y
            if op == "-":
                return x - y
            if op == "*":
                return x * y
            return x / y
        except CFSpectraError as exc:
            exc.args = (f"{exc} (at byte {_byte(self.text, off)})",)
            raise


def _byte(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode())


def parse_surd(text: str) -> QuadSurd:
    """Parse e.g. ``(1+sqrt(5))/2`` into an exact :class:`QuadSurd`."""
    return _SurdParser(text).parse()


# ---------------------------------------------------------------------------

_CF_TOKEN = re.compile(r"\s*(?:(-?\d+)(?:_(\d+))?|([\[\];,()]))")


def parse_cf(text: str) -> CFExpansion:
    """Parse a CF literal such as ``[0; 1_2, (2, 1_5)]``."""
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _CF_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte(text, pos))
        if m.group(3):
            toks.append((m.group(3), None, m.start(3)))
        else:
            toks.append(("num", (int(m.group(1)), m.group(2)), m.start(1)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    i = 0

    def take(kind=None):
        nonlocal i
        tok = toks[i]
        if kind is not None and tok[0] != kind:
            found = tok[0] if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", _byte(text, tok[2]))
        i += 1
        return tok

    def items(closing):
        """Comma-separated numbers (with 1_s expansion) up to ``closing``."""
        out = []
        while True:
            kind, val, off = take("num")
            n, rep = val
            if rep is not None:
                if n != 1:
                    raise ParseError("only 1_s shorthand is supported", _byte(text, off))
                out.extend([1] * int(rep))
            else:
                if n < 1:
                    raise ParseError("partial quotients after a0 must be positive", _byte(text, off))
                out.append(n)
            if toks[i][0] == ",":
                take(",")
                if toks[i][0] == "(":
                    return out, True
                continue
            return out, False

    take("[")
    pre: list[int] = []
    period: list[int] = []
    if toks[i][0] == "(":
        take("(")
        period, _ = items(")")
        take(")")
    else:
        kind, val, off = take("num")
        if val[1] is not None:
            raise ParseError("a0 cannot use the 1_s shorthand", _byte(text, off))
        pre.append(val[0])
        if toks[i][0] == ";":
            take(";")
            if toks[i][0] == "(":
                more, to_period = [], True
            else:
                more, to_period = items("]")
            pre.extend(more)
            if to_period:
                take("(")
                period, _ = items(")")
                take(")")
    take("]")
    take("end")
    if not pre and not period:
        raise ParseError("empty continued fraction", 0)
    return CFExpansion(tuple(pre), tuple(period))
