import pytest
import mpmath
import numpy as np
from fractions import Fraction
import sys
import os

# Add the package directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from baker_gamma.exceptions import DomainError
from baker_gamma.qcore import (
    RInterval, format_fixed_truncated, format_rational, format_scientific, in_unit_interval,
    parse_rational, reduce, reduced_unit_rationals, require_unit,
)


@pytest.fixture
def random_pairs():
    """Random rational operand pairs with non-zero second operand"""
    rng = np.random.default_rng(7)
    pairs = []
    for _ in range(40):
        a = Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 10**4)))
        b = Fraction(int(rng.integers(1, 10**6)) * int(rng.choice([-1, 1])), int(rng.integers(1, 10**4)))
        pairs.append((a, b))
    return pairs


class TestRationals:
    """Test exact rational helpers"""

    def test_reduce_lowest_terms(self):
        assert reduce(6, 8) == Fraction(3, 4)
        assert reduce(3, -6) == Fraction(-1, 2)
        assert reduce(3, -6).denominator == 2

    def test_reduce_rejects_zero_denominator(self):
        with pytest.raises(DomainError):
            reduce(1, 0)

    def test_reduce_rejects_non_integers(self):
        with pytest.raises(DomainError):
            reduce(1.5, 2)

    def test_unit_interval(self):
        assert in_unit_interval(Fraction(1, 2))
        assert not in_unit_interval(Fraction(0))
        assert not in_unit_interval(Fraction(1))
        assert require_unit(Fraction(3, 7)) == Fraction(3, 7)
        with pytest.raises(DomainError):
            require_unit(Fraction(5, 4))

    def test_parse_rational(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational(" 1 / 3 ") == Fraction(1, 3)
        assert parse_rational("2") == 2

    @pytest.mark.parametrize("text", ["2/4", "1/0", "abc", "1/2/3", "", "0.5"])
    def test_parse_rational_rejects(self, text):
        with pytest.raises(DomainError):
            parse_rational(text)

    def test_format_rational(self):
        assert format_rational(Fraction(5, 12)) == "5/12"

    def test_reduced_unit_rationals(self):
        assert reduced_unit_rationals(4) == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                                             Fraction(2, 3), Fraction(3, 4)]
        # 1 + 2 + 2 + 4 + 2 + 6 + 4 reduced fractions for q = 2..8
        assert len(reduced_unit_rationals(8)) == 21


class TestDecimalFormatting:
    """Test directed decimal output"""

    def test_fixed_truncates_toward_zero(self):
        assert format_fixed_truncated(Fraction(2, 3), 3) == "0.666"
        assert format_fixed_truncated(Fraction(-2, 3), 3) == "-0.666"
        assert format_fixed_truncated(Fraction(7, 2), 0) == "3"

    def test_scientific_directed(self):
        value = Fraction(1234, 1000)
        assert format_scientific(value, 2, upward=True) == "1.3e0"
        assert format_scientific(value, 2, upward=False) == "1.2e0"
        assert format_scientific(-value, 2, upward=True) == "-1.2e0"
        assert format_scientific(-value, 2, upward=False) == "-1.3e0"

    def test_scientific_small_and_rollover(self):
        assert format_scientific(Fraction(123, 100000), 2, upward=True) == "1.3e-3"
        assert format_scientific(Fraction(999, 1000), 2, upward=True) == "1.0e0"
        assert format_scientific(Fraction(0), 2, upward=True) == "0"


class TestRInterval:
    """Test outward-rounded interval arithmetic"""

    def test_from_rational_encloses(self):
        third = RInterval.from_rational(Fraction(1, 3), 64)
        assert third.contains(Fraction(1, 3))
        assert not third.is_point()
        assert third.width_at_most_pow2(-63)

    def test_dyadic_is_point(self):
        assert RInterval.from_rational(Fraction(3, 8), 64).is_point()

    def test_arithmetic_encloses_exact_result(self, random_pairs):
        for a, b in random_pairs:
            ia, ib = RInterval.from_rational(a, 64), RInterval.from_rational(b, 64)
            assert (ia + ib).contains(a + b)
            assert (ia - ib).contains(a - b)
            assert (ia * ib).contains(a * b)
            assert (ia / ib).contains(a / b)
            assert (-ia).contains(-a)

    def test_constants(self):
        with mpmath.workdps(80):
            pi_ref, e_ref = +mpmath.pi, +mpmath.e
        assert RInterval.pi(64).contains(pi_ref)
        assert RInterval.e(64).contains(e_ref)

    def test_elementary_functions(self):
        two = RInterval.from_rational(2, 128)
        with mpmath.workdps(80):
            log2_ref = mpmath.log(2)
            sqrt2_ref = mpmath.sqrt(2)
            sin1_ref = mpmath.sin(1)
        assert two.log().contains(log2_ref)
        assert two.sqrt().contains(sqrt2_ref)
        assert two.log().exp().contains(2)
        assert RInterval.from_rational(1, 128).sin().contains(sin1_ref)

    def test_point_elementary_within_ulps(self):
        value = RInterval.from_rational(3, 64).log()
        assert value.width() <= 4 * value.ulp()

    def test_domain_errors(self):
        straddle = RInterval.from_bounds(-1, 1, 64)
        with pytest.raises(DomainError):
            RInterval.from_rational(1, 64) / straddle
        with pytest.raises(DomainError):
            straddle.log()
        with pytest.raises(DomainError):
            RInterval.from_bounds(1, 0, 64)

    def test_intersection(self):
        a = RInterval.from_bounds(0, 2, 64)
        b = RInterval.from_bounds(1, 3, 64)
        both = a.intersection(b)
        assert both.lower == 1 and both.upper == 2
        with pytest.raises(DomainError):
            a.intersection(RInterval.from_bounds(5, 6, 64))

    def test_ordering_and_margins(self):
        low = RInterval.from_bounds(Fraction(1, 4), Fraction(1, 2), 64)
        high = RInterval.from_bounds(Fraction(3, 4), 1, 64)
        assert low.strictly_below(high)
        assert not high.strictly_below(low)
        assert low.margin_from_zero() == Fraction(1, 4)
        assert RInterval.from_bounds(-1, 1, 64).margin_from_zero() is None

    def test_symmetric_radius(self):
        radius = RInterval.from_bounds(Fraction(-3), Fraction(2), 64)
        spread = RInterval.symmetric(radius)
        assert spread.lower == -3 and spread.upper == 3

    def test_readout(self):
        third = RInterval.from_rational(Fraction(1, 3), 200)
        assert third.truncate_mid(10) == "0.3333333333"
        assert third.lower_decimal(5) == "3.3333e-1"
        assert third.upper_decimal(5) == "3.3334e-1"
        assert RInterval.from_bounds(0, Fraction(1, 3), 64).width_decimal() == "3.4e-1"


def nested(inner, outer):
    return outer.lower <= inner.lower and inner.upper <= outer.upper


@pytest.fixture
def random_points():
    """10^4 random positive rationals as (numerator, denominator) pairs"""
    rng = np.random.default_rng(11)
    nums = rng.integers(1, 10**9, size=10**4)
    dens = rng.integers(1, 10**6, size=10**4)
    return [Fraction(int(n), int(d)) for n, d in zip(nums, dens)]


class TestOutwardRounding:
    """Test enclosure nesting across precisions and operands"""

    def test_double_precision_nests(self, random_points):
        third = Fraction(1, 3)
        for x in random_points:
            low = RInterval.from_rational(x, 64)
            high = RInterval.from_rational(x, 128)
            assert nested(high, low)
            assert nested(((high + third) * high / (high + 1)).sqrt(), ((low + third) * low / (low + 1)).sqrt())

    def test_containment_monotone(self, random_pairs):
        for a, b in random_pairs:
            a, b = abs(a) + 1, abs(b) + 1
            inner_a = RInterval.from_bounds(a, a + Fraction(1, 10**6), 64)
            inner_b = RInterval.from_bounds(b, b + Fraction(1, 10**6), 64)
            outer_a = RInterval.from_bounds(a - Fraction(1, 7), a + 1, 64)
            outer_b = RInterval.from_bounds(b - Fraction(1, 7), b + 1, 64)
            assert nested(inner_a + inner_b, outer_a + outer_b)
            assert nested(inner_a - inner_b, outer_a - outer_b)
            assert nested(inner_a * inner_b, outer_a * outer_b)
            assert nested(inner_a / inner_b, outer_a / outer_b)
            assert nested(inner_a.sqrt(), outer_a.sqrt())
