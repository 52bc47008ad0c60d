"""Text syntax for exponential polynomials.

Grammar (whitespace is insignificant)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := atom ('^' nat)?
    atom     := nat | 'x' nat? | 'y' nat? | 'b' nat | 'E' '(' expr ')' | '(' expr ')'

Division is only allowed by a nonzero rational constant, so ``1/2*x`` and
``x/2`` denote the same element.  :func:`format_epoly` emits the canonical
spelling, which parses back to an identical value.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .epoly import EPoly, exp_apply
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][0-9]*)|(\S))")
_VAR = re.compile(r"[xy](\d*)\Z")
_SYM = re.compile(r"b(\d+)\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not m.group(0):
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        else:
            break
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected trailing input", pos, text)
    tokens.append(("end", "", len(text)))
    return tokens


def _var_sort_key(name: str):
    m = _VAR.match(name)
    return (name[0], -1 if not m.group(1) else int(m.group(1)))


def collect_variables(*texts: str) -> tuple[str, ...]:
    """Variables (``x``, ``x3``, ``y``, ...) mentioned in ``texts``, in canonical order."""
    names = set()
    for text in texts:
        for kind, value, pos in _tokenize(text):
            if kind != "name":
                continue
            if _VAR.match(value):
                names.add(value)
            elif value != "E" and not _SYM.match(value):
                raise ParseError(f"unknown symbol {value!r}", pos, text)
    return tuple(sorted(names, key=_var_sort_key))


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind not in ("op",):
            raise ParseError(f"expected {value!r}", pos, self.text)

    def error(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self) -> EPoly:
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self) -> EPoly:
        sign = 1
        kind, v, _ = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            sign = -1 if v == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                t = self.term()
                result = result + t if v == "+" else result - t
            else:
                return result

    def term(self) -> EPoly:
        result = self.factor()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                f = self.factor()
                if v == "*":
                    result = result * f
                else:
                    if not f.is_constant() or f.is_zero():
                        raise ParseError("division only by a nonzero rational constant", pos, self.text)
                    result = result.scale(1 / f.constant_value())
            else:
                return result

    def factor(self) -> EPoly:
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, n, pos = self.take()
            if kind != "num":
                raise ParseError("expected a natural-number exponent", pos, self.text)
            return base ** int(n)
        return base

    def atom(self) -> EPoly:
        kind, v, pos = self.take()
        if kind == "num":
            return EPoly.constant(self.vars, Fraction(int(v)))
        if kind == "name":
            if v == "E":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return exp_apply(inner)
            if _VAR.match(v):
                if v not in self.vars:
                    raise ParseError(f"unknown symbol {v!r}", pos, self.text)
                return EPoly.variable(self.vars, v)
            m = _SYM.match(v)
            if m:
                return EPoly.symbol(self.vars, int(m.group(1)))
            raise ParseError(f"unknown symbol {v!r}", pos, self.text)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {v!r}", pos, self.text)


def parse_epoly(text: str, vars=None) -> EPoly:
    """Parse ``text``; ``vars`` defaults to the variables the text mentions."""
    if vars is None:
        vars = collect_variables(text)
    return _Parser(text, tuple(vars)).parse()


def parse_many(texts, vars=None) -> list[EPoly]:
    """Parse several expressions over one shared variable tuple."""
    texts = list(texts)
    if vars is None:
        vars = collect_variables(*texts)
    return [parse_epoly(t, vars) for t in texts]


def split_list(text: str) -> list[str]:
    """Split a comma-separated generator list, respecting parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    parts = [p.strip() for p in parts]
    if parts == [""]:
        return []
    if any(not p for p in parts):
        raise ParseError("empty element in list", None, text)
    return parts


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_term(p: EPoly, key, c: Fraction) -> tuple[str, str]:
    xexp, arg, bexp = key
    factors = []
    for j, e in enumerate(bexp):
        if e:
            factors.append(f"b{j}" if e == 1 else f"b{j}^{e}")
    for name, e in zip(p.vars, xexp):
        if e:
            factors.append(name if e == 1 else f"{name}^{e}")
    if arg.terms:
        factors.append(f"E({format_epoly(arg)})")
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if not factors:
        return sign, _format_rational(mag)
    body = "*".join(factors)
    if mag != 1:
        body = f"{_format_rational(mag)}*{body}"
    return sign, body


def format_epoly(p: EPoly) -> str:
    """Canonical text for ``p`` (terms in descending canonical order)."""
    if not p.terms:
        return "0"
    out = []
    for i, (key, c) in enumerate(p.terms):
        sign, body = _format_term(p, key, c)
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
