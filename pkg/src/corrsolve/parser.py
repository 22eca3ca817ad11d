"""Text format for polynomials in x and y.

Grammar (whitespace ignored, variables case-insensitive)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nonneg-int)?
    base   := 'x' | 'y' | int | int '/' int | '(' expr ')'

Multiplication must be explicit, and only integer or ``a/b`` literals are
accepted.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ, Poly

from .poly import GENS, X, Y, bipoly, to_fraction

__all__ = ["PolySyntaxError", "parse", "print_canonical", "print_uni", "parse_univariate"]


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}\n    {' ' * (pos + 1)}^")


class _Parser:
    def __init__(self, text: str, variables: dict):
        self.text = text
        self.pos = 0
        self.variables = variables

    def error(self, msg: str, pos: int | None = None):
        raise PolySyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Poly:
        if not self.text.strip():
            self.error("empty input")
        e = self.expr()
        if self.peek():
            ch = self.peek()
            if ch.isalpha() or ch == "(" or ch.isdigit():
                self.error("missing '*' (implicit multiplication is not allowed)")
            self.error(f"unexpected character {ch!r}")
        return e

    def expr(self) -> Poly:
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        if self.peek() == "/":
            self.error("division is only allowed between integer literals (a/b)")
        return acc

    def factor(self) -> Poly:
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            if self.peek() == "-":
                self.error("negative exponents are not allowed")
            start = self.pos
            n = self.integer()
            if self.peek() in ("/", "."):
                self.error("fractional exponents are not allowed", start)
            b = b**n
        return b

    def base(self) -> Poly:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.take(")")
            return e
        if ch.isdigit():
            num = self.integer()
            if self.peek() == ".":
                self.error("decimal literals are not allowed; use a/b")
            if self.peek() == "/":
                self.pos += 1
                if not self.peek().isdigit():
                    self.error("expected an integer denominator")
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", start)
                return self.const(Fraction(num, den))
            return self.const(Fraction(num))
        if ch.isalpha():
            end = self.pos
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                end += 1
            name = self.text[self.pos:end].lower()
            if name not in self.variables:
                allowed = ", ".join(sorted(self.variables))
                self.error(f"unknown variable {self.text[self.pos:end]!r} (allowed: {allowed})")
            self.pos = end
            return Poly(self.variables[name], *self.gens, domain=QQ)
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    @property
    def gens(self):
        return tuple(self.variables.values()) if len(self.variables) > 1 else tuple(self.variables.values())

    def const(self, v: Fraction) -> Poly:
        return Poly(QQ(v.numerator, v.denominator), *self.gens, domain=QQ)


def parse(text: str) -> Poly:
    """Parse a polynomial in x and y into a BiPoly."""
    return bipoly(_Parser(text, {"x": X, "y": Y}).parse())


def parse_univariate(text: str, var=None) -> Poly:
    """Parse a polynomial in a single variable (x or y); the variable is inferred when not given."""
    p = parse(text)
    used = [g for g in GENS if p.degree(g) > 0] if not p.is_zero else []
    if len(used) > 1:
        raise PolySyntaxError("expected a univariate polynomial", text, 0)
    v = var if var is not None else (used[0] if used else Y)
    if used and used[0] != v:
        raise PolySyntaxError(f"expected a polynomial in {v}", text, 0)
    return Poly(p.as_expr(), v, domain=QQ)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono(exps, names) -> list[str]:
    out = []
    for e, n in zip(exps, names):
        if e == 1:
            out.append(n)
        elif e > 1:
            out.append(f"{n}^{e}")
    return out


def _render(poly: Poly) -> str:
    if poly.is_zero:
        return "0"
    names = [str(g) for g in poly.gens]
    pieces = []
    for exps, c in poly.terms(order="grlex"):
        c = to_fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mons = _mono(exps, names)
        if not mons:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(mons)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(mons)
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def print_canonical(p: Poly) -> str:
    """Deterministic graded-lexicographic rendering, x > y; parse(print_canonical(p)) == p."""
    return _render(bipoly(p))


def print_uni(f: Poly) -> str:
    return _render(f)
