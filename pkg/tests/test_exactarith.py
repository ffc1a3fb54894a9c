import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from isoresidual.errors import ParseError
from isoresidual.exactarith import GaussianRational, falling_f, parse_gaussian_rational


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


class TestFallingF:
    def test_single_factor(self):
        assert falling_f(2, 3) == 2

    def test_empty_product(self):
        assert falling_f(5, 2) == 1

    def test_negative_argument(self):
        # (-1)(-2)(-3), well defined because it is a product, not a
        # factorial quotient
        assert falling_f(-1, 5) == -6

    def test_bubble_weight(self):
        assert falling_f(0, 1) == Fraction(1, 1)
        assert falling_f(3, 1) == Fraction(1, 4)

    def test_bubble_weight_pole(self):
        with pytest.raises(ZeroDivisionError):
            falling_f(-1, 1)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError):
            falling_f(3, 0)

    @pytest.mark.parametrize("a", range(-6, 7))
    @pytest.mark.parametrize("n", range(2, 8))
    def test_shift_recurrence(self, a, n):
        assert falling_f(a, n + 1) == (a - n + 2) * falling_f(a, n)

    @pytest.mark.parametrize("a", range(-6, 7))
    @pytest.mark.parametrize("n", range(1, 8))
    def test_collapse_identity(self, a, n):
        if n == 1 and a == -1:
            return
        assert (a + 1) * falling_f(a, n) == falling_f(a + 1, n + 1)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_at_minus_one(self, n):
        assert falling_f(-1, n) == (-1) ** (n - 2) * math.factorial(n - 2)


class TestGaussianRational:
    def test_exact_field_ops(self):
        x = gr(Fraction(3, 2), Fraction(-1, 3))
        y = gr(Fraction(-2, 7), Fraction(5))
        assert (x + y) - y == x
        assert (x * y) / y == x
        assert x * (1 / x) == gr(1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            gr(1) / gr(0)

    def test_int_interop(self):
        assert gr(Fraction(1, 2)) * 2 == gr(1)
        assert 1 + gr(0, 1) == gr(1, 1)

    def test_conjugate_norm(self):
        x = gr(2, -3)
        assert x * x.conjugate() == gr(13)


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)


@given(rationals, rationals)
def test_format_parse_round_trip(re, im):
    value = GaussianRational(re, im)
    assert parse_gaussian_rational(str(value)) == value


@given(rationals, rationals, rationals, rationals)
def test_multiplication_division_exact(a, b, c, d):
    x = GaussianRational(a, b)
    y = GaussianRational(c, d)
    if y:
        assert (x * y) / y == x


class TestParser:
    @pytest.mark.parametrize(
        "text,re_,im_",
        [
            ("3/2-1/3i", Fraction(3, 2), Fraction(-1, 3)),
            ("0", Fraction(0), Fraction(0)),
            ("i", Fraction(0), Fraction(1)),
            ("-i", Fraction(0), Fraction(-1)),
            ("+i", Fraction(0), Fraction(1)),
            ("1+i", Fraction(1), Fraction(1)),
            ("1-i", Fraction(1), Fraction(-1)),
            ("2i", Fraction(0), Fraction(2)),
            ("-7/3", Fraction(-7, 3), Fraction(0)),
            ("-3/4i", Fraction(0), Fraction(-3, 4)),
            ("-2+5/6i", Fraction(-2), Fraction(5, 6)),
        ],
    )
    def test_grammar(self, text, re_, im_):
        value = parse_gaussian_rational(text)
        assert (value.re, value.im) == (re_, im_)

    @pytest.mark.parametrize(
        "text,position",
        [("", 0), ("abc", 0), ("1+", 1), ("1+2", 3), ("1*2i", 1), ("3/", 1)],
    )
    def test_error_positions(self, text, position):
        with pytest.raises(ParseError) as err:
            parse_gaussian_rational(text)
        assert err.value.position == position

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            parse_gaussian_rational("1/0")

    @pytest.mark.parametrize("text", ["0", "i", "-i", "3/2-1/3i", "1+i", "-5"])
    def test_canonical_round_trip(self, text):
        assert str(parse_gaussian_rational(text)) == text
