""" Text syntax for noncommutative and trace polynomials.

    poly    := term (('+' | '-') term)*          leading sign allowed
    term    := [coeff ['*']] factor (['*'] factor)*  |  coeff
    factor  := atom ['^' int]
    atom    := 'x' | 'y' | '1' | '(' poly ')' | '[' poly ',' poly ']' | 'Tr' '(' poly ')'
    coeff   := int ['/' int]

`Tr(...)` may only appear in trace polynomials, and never inside another `Tr`.
Examples: "x^3y^2 - 2*yx", "Tr(xy^2x[x,y])", "Tr([[x,y],x])^2 - 1/2*Tr(x)Tr(y)".
"""
import re
from fractions import Fraction
from typing import List, Tuple, Union

from quatlab.errors import WordSyntaxError
from quatlab.words import NCPolynomial, TracePolynomial, commutator, compress_word, trace_reduce

_TOKEN = re.compile(r"\s*(?:(Tr)|(\d+)|([xy()\[\],+\-*^/]))")

Token = Tuple[str, str, int]   # (kind, text, position)
Value = Union[NCPolynomial, TracePolynomial]


def _tokenize(text: str) -> List[Token]:
    tokens = []  # type: List[Token]
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise WordSyntaxError("unexpected character %r" % text[start], text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(('tr', 'Tr', start))
        elif m.group(2):
            tokens.append(('int', m.group(2), start))
        else:
            tokens.append(('sym', m.group(3), start))
        pos = m.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser(object):
    def __init__(self, text: str, traced: bool) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.traced = traced
        self.inside_trace = False

    # ---------------------------- token helpers ----------------------------
    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.text, self.peek()[2])

    def expect(self, sym: str) -> None:
        kind, text, _ = self.peek()
        if kind != 'sym' or text != sym:
            raise self.error("expected %r" % sym)
        self.take()

    def at_sym(self, *syms: str) -> bool:
        kind, text, _ = self.peek()
        return kind == 'sym' and text in syms

    def starts_atom(self) -> bool:
        kind, text, _ = self.peek()
        return kind == 'tr' or (kind == 'sym' and text in ('x', 'y', '(', '[')) or (kind == 'int' and text == '1')

    # ---------------------------- values ----------------------------
    def one(self) -> Value:
        if self.traced and not self.inside_trace:
            return TracePolynomial.constant(1)
        return NCPolynomial.constant(1)

    # ---------------------------- grammar ----------------------------
    def parse(self) -> Value:
        value = self.poly()
        if self.peek()[0] != 'end':
            raise self.error("unexpected %r" % self.peek()[1])
        return value

    def poly(self) -> Value:
        sign = 1
        if self.at_sym('+', '-'):
            sign = -1 if self.take()[1] == '-' else 1
        value = self.term() * sign
        while self.at_sym('+', '-'):
            op = self.take()[1]
            t = self.term()
            value = value + t if op == '+' else value - t
        return value

    def coeff(self) -> Fraction:
        num = int(self.take()[1])
        if self.at_sym('/'):
            self.take()
            if self.peek()[0] != 'int':
                raise self.error("expected a denominator")
            den = int(self.take()[1])
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> Value:
        value = self.one()
        have_factor = False
        kind, text, _ = self.peek()
        if kind == 'int':
            value = value * self.coeff()
            have_factor = True
            if self.at_sym('*'):
                self.take()
                if not self.starts_atom():
                    raise self.error("expected a factor after '*'")
        while self.starts_atom():
            value = value * self.factor()
            have_factor = True
            if self.at_sym('*'):
                self.take()
                if not self.starts_atom():
                    raise self.error("expected a factor after '*'")
        if not have_factor:
            raise self.error("expected a term")
        return value

    def factor(self) -> Value:
        value = self.atom()
        if self.at_sym('^'):
            self.take()
            if self.peek()[0] != 'int':
                raise self.error("expected an exponent")
            value = value ** int(self.take()[1])
        return value

    def atom(self) -> Value:
        kind, text, _ = self.take()
        if kind == 'tr':
            if not self.traced:
                self.i -= 1
                raise self.error("Tr(...) is not allowed in a noncommutative polynomial")
            if self.inside_trace:
                self.i -= 1
                raise self.error("nested Tr(...)")
            self.expect('(')
            self.inside_trace = True
            inner = self.poly()
            self.inside_trace = False
            self.expect(')')
            return trace_reduce(inner)
        if self.traced and not self.inside_trace and (text in ('x', 'y', '[')):
            self.i -= 1
            raise self.error("letters must appear inside Tr(...)")
        if text in ('x', 'y'):
            return NCPolynomial.word(text)
        if kind == 'int' and text == '1':
            return self.one()
        if text == '(':
            inner = self.poly()
            self.expect(')')
            return inner
        if text == '[':
            left = self.poly()
            self.expect(',')
            right = self.poly()
            self.expect(']')
            return commutator(left, right)
        self.i -= 1
        raise self.error("unexpected %r" % text)


def parse_polynomial(text: str) -> NCPolynomial:
    return _Parser(text, traced=False).parse()


def parse_trace_polynomial(text: str) -> TracePolynomial:
    return _Parser(text, traced=True).parse()


def _format_coeff(c: Fraction, body: str, first: bool) -> str:
    sign = '-' if c < 0 else ('' if first else '+')
    mag = abs(c)
    if not body:
        core = str(mag)
    elif mag == 1:
        core = body
    else:
        core = "%s*%s" % (mag, body)
    if first:
        return sign + core
    return " %s %s" % (sign, core)


def format_polynomial(p: NCPolynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for w, c in p.sorted_terms():
        out.append(_format_coeff(c, compress_word(w), not out))
    return "".join(out)


def _format_factors(factors: Tuple[str, ...]) -> str:
    parts = []
    i = 0
    while i < len(factors):
        j = i
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        base = "Tr(%s)" % (compress_word(factors[i]) or "1")
        parts.append(base if j - i == 1 else "%s^%d" % (base, j - i))
        i = j
    return "".join(parts)


def format_trace_polynomial(t: TracePolynomial) -> str:
    if t.is_zero():
        return "0"
    out = []
    for factors, c in t.sorted_terms():
        out.append(_format_coeff(c, _format_factors(factors), not out))
    return "".join(out)
