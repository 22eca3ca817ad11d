from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from corrsolve.parser import PolySyntaxError, parse, parse_univariate, print_canonical
from corrsolve.poly import X, Y, bipoly

CORPUS = [
    "x*y - x^2*y - x*y^2 - 1", "x^2 + 3*x*y + y^2", "x*y - 1", "y^2 - x", "x - y", "0", "1", "-1", "7/3",
    "x", "y", "-x", "x^10", "x^2 - y^2", "(x - y)*(x + y)", "(x + y)*(x*y - 1)", "(x - y)*(x*y - 1)",
    "(x + y)*(x*y + 1)", "(x + y - 1)*(x*y - 1)", "x^3*y + y^3 + x", "1/2*x*y - 3/4", "-1/2*x*y",
    "(x + 1)^3", "(x - 2)*(y - 1/2)", "2*x^2*y^3 - 5*x*y + 11", "x^2*y^2 + x^2 + y^2 + 1",
    "((x))", "-(x - y)^2 + x*y", "x*x*y*y", "  x  *  y  -  1  ", "X*Y - 1", "x^0 + y^0", "3*(x - 1/3)",
    "x^2 + 2*x*y + y^2 - 1", "(2*x - 3*y)^2", "x^5 - y^5", "100*x - 100*y", "x^2*y + x*y^2 - x*y + 1",
    "(x*y - 1)^2 - x", "y^3 - x^2", "x^4 + y^4 - 1", "1/3*x + 1/5*y + 1/7", "-x^2 - y^2",
    "(x - 1)*(x - 2)*(y - 3)", "x^2*y - y", "y - x^3 + x^2 + 1", "(1 + x^2 - x^3)*y - (1 + y^2 - y^3)*x",
    "x^6*y^6 - 1", "22/7*x^3 - y", "x - 0*y",
]

MALFORMED = [
    ("", "empty input"), ("x y", "missing '*'"), ("2x", "missing '*'"), ("x + ", "unexpected end"),
    ("x^-1", "negative exponents"), ("x^1/2", "fractional exponents"), ("0.5*x", "decimal"),
    ("x/0", "division is only allowed"), ("1/x", "expected an integer denominator"), ("1/0", "zero denominator"),
    ("z + 1", "unknown variable"),
    ("(x + y", "expected ')'"), ("x + y)", "unexpected character"), ("x ** 2", "unexpected character"),
    ("x^", "expected an integer"), ("x $ y", "unexpected character"),
]


def test_corpus_size():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    p = parse(text)
    s = print_canonical(p)
    assert parse(s) == p
    assert print_canonical(parse(s)) == s


@pytest.mark.parametrize("text,needle", MALFORMED)
def test_malformed_inputs_report_position(text, needle):
    with pytest.raises(PolySyntaxError) as info:
        parse(text)
    err = info.value
    assert needle in err.message
    assert 0 <= err.pos <= len(text)
    assert "^" in str(err)


def test_printing_conventions():
    assert print_canonical(parse("x*y - x^2*y - x*y^2 - 1")) == "-x^2*y - x*y^2 + x*y - 1"
    assert print_canonical(parse("-1/2*y*x")) == "-1/2*x*y"
    assert print_canonical(parse("x - x")) == "0"


def test_exact_rational_coefficients():
    p = parse("1/3*x + 2/6")
    assert p.as_expr() == sympy.Rational(1, 3) * X + sympy.Rational(1, 3)


def test_parse_univariate():
    f = parse_univariate("y^2 + 3*y + 1")
    assert f.gens == (Y,) and f.degree() == 2
    with pytest.raises(PolySyntaxError):
        parse_univariate("x*y")


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeff, max_size=8))
def test_round_trip_random(terms):
    p = bipoly({m: c for m, c in terms.items()}) if terms else bipoly(0)
    assert parse(print_canonical(p)) == p


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
def test_constant_round_trip(c):
    p = bipoly(sympy.Rational(c.numerator, c.denominator))
    assert parse(print_canonical(p)) == p
    assert Fraction(str(print_canonical(p)).replace(" ", "")) == c
