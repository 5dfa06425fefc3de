"""Recursive-descent parsers for the two text forms used on the command line
and in presentation files.

Laurent expressions::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | var ('^' int)? | '(' expr ')'
    rational := int ('/' posint)?

A leading '-' is allowed at the start of a term. Exponents may be negative
(``u^-1``).

BetaPoly sums, e.g. ``3 t^2 b1 - b2 + 5``: each monomial is an optional
integer coefficient followed by optional ``t^m`` and ``b<i>`` factors,
separated by whitespace or ``*``.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly


class ParseError(ValueError):
    """Raised with a 1-based byte offset into the source text."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8")) + 1
        self.message = message
        super().__init__(f"{message} at byte {self.offset}")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            got = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, got {got!r}")

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.i
        if signed and self.i < len(self.text) and self.text[self.i] in "+-":
            self.i += 1
        digits = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == digits:
            self.i = start
            self.fail("expected an integer")
        return int(self.text[start:self.i])

    def at_end(self) -> bool:
        return self.peek() == ""

    def fail(self, message: str):
        raise ParseError(message, self.text, self.i)


DEFAULT_VARIABLES = ("s", "t", "u", "v", "w")


def parse_expr(text: str, variables=DEFAULT_VARIABLES) -> LaurentPoly:
    """Parse a Laurent expression over the allowed single-letter variables."""
    cur = _Cursor(text)
    allowed = frozenset(variables)
    if cur.at_end():
        cur.fail("empty expression")
    result = _expr(cur, allowed)
    if not cur.at_end():
        cur.fail(f"unexpected {cur.peek()!r}")
    return result


def _expr(cur: _Cursor, allowed) -> LaurentPoly:
    result = _term(cur, allowed)
    while True:
        if cur.take("+"):
            result = result + _term(cur, allowed)
        elif cur.take("-"):
            result = result - _term(cur, allowed)
        else:
            return result


def _term(cur: _Cursor, allowed) -> LaurentPoly:
    negate = cur.take("-")
    result = _factor(cur, allowed)
    while cur.take("*"):
        result = result * _factor(cur, allowed)
    return -result if negate else result


def _factor(cur: _Cursor, allowed) -> LaurentPoly:
    ch = cur.peek()
    if ch == "(":
        cur.i += 1
        inner = _expr(cur, allowed)
        cur.expect(")")
        return inner
    if ch.isdigit():
        num = cur.integer()
        if cur.take("/"):
            pos = cur.i
            den = cur.integer()
            if den <= 0:
                cur.i = pos
                cur.fail("denominator must be positive")
            return LaurentPoly.const(Fraction(num, den))
        return LaurentPoly.const(num)
    if ch.isalpha():
        start = cur.i
        cur.i += 1
        if cur.i < len(cur.text) and cur.text[cur.i].isalnum():
            cur.i = start
            cur.fail("variables are single letters")
        if ch not in allowed:
            cur.i = start
            cur.fail(f"unknown variable {ch!r} (allowed: {', '.join(sorted(allowed))})")
        exponent = 1
        if cur.take("^"):
            exponent = cur.integer(signed=True)
        return LaurentPoly.var(ch, exponent)
    if not ch:
        cur.fail("unexpected end of input")
    cur.fail(f"unexpected {ch!r}")


def parse_beta(text: str):
    """Parse the integer BetaPoly text form into a :class:`BetaPoly`."""
    from .cpring import BetaPoly

    cur = _Cursor(text)
    if cur.at_end():
        cur.fail("empty coefficient")
    terms: dict[tuple[int, int], int] = {}
    first = True
    while not cur.at_end():
        sign = 1
        if cur.take("+"):
            pass
        elif cur.take("-"):
            sign = -1
        elif not first:
            cur.fail(f"expected '+' or '-', got {cur.peek()!r}")
        first = False
        coeff, m, i = _beta_monomial(cur)
        key = (m, i)
        terms[key] = terms.get(key, 0) + sign * coeff
    return BetaPoly(terms)


def _beta_monomial(cur: _Cursor) -> tuple[int, int, int]:
    coeff, m, i = None, 0, 0
    seen_t = seen_b = False
    while True:
        ch = cur.peek()
        if ch.isdigit():
            if coeff is not None or seen_t or seen_b:
                cur.fail("coefficient must come first")
            coeff = cur.integer()
        elif ch == "t":
            if seen_t:
                cur.fail("repeated t factor")
            cur.i += 1
            seen_t = True
            m = cur.integer(signed=True) if cur.take("^") else 1
        elif ch == "b":
            if seen_b:
                cur.fail("repeated b factor")
            cur.i += 1
            start = cur.i
            while cur.i < len(cur.text) and cur.text[cur.i].isdigit():
                cur.i += 1
            if cur.i == start:
                cur.fail("expected a beta index after 'b'")
            i = int(cur.text[start:cur.i])
            seen_b = True
        elif ch == "*" and (coeff is not None or seen_t or seen_b):
            cur.i += 1
            continue
        else:
            break
    if coeff is None and not (seen_t or seen_b):
        cur.fail("expected a monomial")
    return (1 if coeff is None else coeff), m, i
