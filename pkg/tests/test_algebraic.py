import pytest
import mpmath
import sympy
from fractions import Fraction
import sys
import os

# Add the package directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from baker_gamma.algebraic import (
    AlgebraicNumber, IntPolynomial, alg_compare, alg_compare_rational, alg_equal, cyclotomic,
    direct_sin_pi, folded_cyclotomic, minpoly_sin, refine,
)
from baker_gamma.exceptions import DomainError
from baker_gamma.qcore import reduced_unit_rationals

X = sympy.Symbol('x')


def sympy_coeffs(expr):
    """Coefficients lowest degree first"""
    return tuple(int(c) for c in reversed(sympy.Poly(expr, X).all_coeffs()))


@pytest.fixture
def sqrt2():
    return AlgebraicNumber(IntPolynomial((-2, 0, 1)), Fraction(1), Fraction(2))


class TestIntPolynomial:
    """Test integer polynomial arithmetic"""

    def test_trailing_zeros_stripped(self):
        assert IntPolynomial((1, 2, 0, 0)).degree == 1

    def test_primitive(self):
        assert IntPolynomial((4, 0, -6)).primitive().coeffs == (-2, 0, 3)

    def test_exact_quotient(self):
        x2_minus_1 = IntPolynomial((-1, 0, 1))
        assert x2_minus_1.exact_quotient(IntPolynomial((-1, 1))).coeffs == (1, 1)
        with pytest.raises(DomainError):
            IntPolynomial((1, 0, 1)).exact_quotient(IntPolynomial((-1, 1)))

    def test_evaluation_and_sign(self):
        p = IntPolynomial((-3, 0, 4))
        assert p(Fraction(1, 2)) == -2
        assert p.sign_at(Fraction(1)) == 1
        assert p.sign_at(Fraction(-1, 3)) == -1
        assert IntPolynomial((-1, 2)).sign_at(Fraction(1, 2)) == 0

    def test_count_roots(self):
        p = IntPolynomial((-2, 0, 1))
        assert p.count_roots(Fraction(0), Fraction(2)) == 1
        assert p.count_roots(Fraction(-2), Fraction(2)) == 2

    def test_reversed_and_scaled(self):
        p = IntPolynomial((-1, 0, 2))
        assert p.reversed().coeffs == (2, 0, -1)
        assert p.scale_variable(2).coeffs == (-1, 0, 8)

    def test_json(self):
        p = IntPolynomial((-3, 0, 4))
        assert IntPolynomial.from_json(p.to_json()) == p


class TestCyclotomic:
    """Test cyclotomic and folded cyclotomic polynomials"""

    @pytest.mark.parametrize("n", range(1, 41))
    def test_matches_sympy(self, n):
        assert cyclotomic(n).coeffs == sympy_coeffs(sympy.cyclotomic_poly(n, X))

    @pytest.mark.parametrize("n", range(3, 41))
    def test_folding_identity(self, n):
        # Phi_n(z) = z^(phi(n)/2) * Psi_n(z + 1/z), checked at z = 2
        folded = folded_cyclotomic(n)
        assert folded.degree == sympy.totient(n) // 2
        assert cyclotomic(n)(Fraction(2)) == 2 ** folded.degree * folded(Fraction(5, 2))

    def test_small_folds(self):
        assert folded_cyclotomic(1).coeffs == (-2, 1)
        assert folded_cyclotomic(2).coeffs == (2, 1)

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            cyclotomic(0)


class TestMinpolySin:
    """Test minimal polynomials of sin(pi x)"""

    @pytest.mark.parametrize("x,coeffs", [
        (Fraction(1, 4), (-1, 0, 2)),
        (Fraction(1, 3), (-3, 0, 4)),
        (Fraction(1, 6), (-1, 2)),
        (Fraction(1, 2), (-1, 1)),
        (Fraction(5, 12), (1, 0, -16, 0, 16)),
    ])
    def test_known_values(self, x, coeffs):
        assert minpoly_sin(x).minpoly.coeffs == coeffs

    def test_isolator_holds_the_sine(self):
        with mpmath.workdps(100):
            for x in [Fraction(1, 7), Fraction(3, 10), Fraction(11, 24)]:
                alpha = minpoly_sin(x)
                assert alpha.isolates_single_root()
                assert refine(alpha, 256).contains(mpmath.sin(mpmath.pi * x.numerator / x.denominator))

    def test_rational_values_are_points(self):
        half = minpoly_sin(Fraction(1, 6))
        assert half.is_rational()
        assert half.rational_value() == Fraction(1, 2)

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            minpoly_sin(Fraction(3, 2))

    @pytest.mark.slow
    def test_agrees_with_sympy_up_to_denominator_24(self):
        for x in reduced_unit_rationals(24):
            expected = sympy.minimal_polynomial(sympy.sin(sympy.pi * sympy.Rational(x.numerator, x.denominator)), X)
            assert minpoly_sin(x).minpoly.coeffs == sympy_coeffs(expected), f"x={x}"


class TestAlgebraicOrder:
    """Test exact comparison of algebraic numbers"""

    def test_equal_sines(self):
        assert alg_equal(minpoly_sin(Fraction(1, 4)), minpoly_sin(Fraction(3, 4)))
        assert alg_compare(minpoly_sin(Fraction(2, 5)), minpoly_sin(Fraction(3, 5))) == 0

    def test_strict_order(self):
        assert alg_compare(minpoly_sin(Fraction(1, 3)), minpoly_sin(Fraction(1, 4))) == 1
        assert alg_compare(minpoly_sin(Fraction(1, 7)), minpoly_sin(Fraction(1, 5))) == -1

    def test_compare_rational(self, sqrt2):
        assert alg_compare_rational(minpoly_sin(Fraction(1, 6)), Fraction(1, 2)) == 0
        assert alg_compare_rational(minpoly_sin(Fraction(1, 4)), Fraction(7, 10)) == 1
        assert alg_compare_rational(sqrt2, Fraction(141, 100)) == 1
        assert alg_compare_rational(sqrt2, Fraction(142, 100)) == -1

    def test_reciprocal(self):
        k = minpoly_sin(Fraction(1, 4)).reciprocal()
        assert k.minpoly.coeffs == (-2, 0, 1)
        assert alg_compare_rational(k, Fraction(1)) == 1
        assert minpoly_sin(Fraction(1, 2)).reciprocal().rational_value() == 1

    def test_refine_width(self):
        enclosure = refine(minpoly_sin(Fraction(1, 3)), 128)
        assert enclosure.width_at_most_pow2(-127)

    def test_direct_route_agrees(self):
        assert direct_sin_pi(Fraction(1, 6), 64).contains(Fraction(1, 2))
        exact = refine(minpoly_sin(Fraction(5, 12)), 128)
        assert exact.intersects(direct_sin_pi(Fraction(5, 12), 128))

    def test_json(self, sqrt2):
        data = sqrt2.to_json()
        assert data == {'minpoly': [-2, 0, 1], 'isolator': [1, 1, 2, 1]}


@pytest.fixture
def reducible_two():
    """The number 2 written with the reducible polynomial x^2 - 4"""
    return AlgebraicNumber(IntPolynomial((-4, 0, 1)), Fraction(1), Fraction(3))


class TestStructuralLaws:
    """Test identities that hold for every argument in a range"""

    def test_cyclotomic_product_identity(self):
        for n in range(1, 201):
            product = IntPolynomial((1,))
            for d in sympy.divisors(n):
                product = product * cyclotomic(d)
            assert product == IntPolynomial.x_power_minus_one(n), f"n={n}"

    def test_degree_bound(self):
        for x in reduced_unit_rationals(24):
            assert minpoly_sin(x).degree <= sympy.totient(4 * x.denominator) // 2 + 1, f"x={x}"

    def test_root_membership(self):
        for x in reduced_unit_rationals(50):
            alpha = minpoly_sin(x)
            sine = direct_sin_pi(x, 128)
            assert alpha.minpoly.evaluate_interval(sine).contains_zero(), f"x={x}"
            assert refine(alpha, 128).intersects(sine), f"x={x}"

    def test_reflected_sines_equal(self):
        for x in reduced_unit_rationals(24):
            assert alg_equal(minpoly_sin(x), minpoly_sin(1 - x)), f"x={x}"


class TestIrreducibility:
    """Test the irreducibility helpers and comparisons across different polynomials"""

    def test_is_irreducible(self):
        assert IntPolynomial((-2, 0, 1)).is_irreducible()
        assert not IntPolynomial((-4, 0, 1)).is_irreducible()
        assert minpoly_sin(Fraction(5, 12)).minpoly.is_irreducible()

    def test_gcd(self):
        assert IntPolynomial((-4, 0, 1)).gcd(IntPolynomial((-2, 1))).coeffs == (-2, 1)
        assert IntPolynomial((-2, 0, 1)).gcd(IntPolynomial((-3, 0, 4))).degree == 0

    def test_equal_through_common_factor(self, reducible_two):
        two = AlgebraicNumber.from_rational(2)
        assert alg_equal(reducible_two, two)
        assert alg_compare(reducible_two, two) == 0
        assert alg_compare(two, reducible_two) == 0

    def test_compare_against_points(self, reducible_two, sqrt2):
        three = AlgebraicNumber.from_rational(3)
        assert alg_compare(reducible_two, three) == -1
        assert alg_compare(three, reducible_two) == 1
        assert alg_compare(sqrt2, AlgebraicNumber.from_rational(Fraction(3, 2))) == -1
        assert alg_compare(AlgebraicNumber.from_rational(1), sqrt2) == -1
