import pytest
from fractions import Fraction
import sys
import os

# Add the package directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from baker_gamma.services.verification import CheckResult, VerificationService


@pytest.fixture
def service():
    return VerificationService(prec=256)


class TestVerificationService:
    """Test certificate-producing checks"""

    def test_initialization(self, service):
        assert service.logger is not None
        assert service.evaluator is not None

    def test_reflection(self, service):
        result = service.reflection([Fraction(1, 3), Fraction(1, 2), Fraction(7, 8)])
        assert isinstance(result, CheckResult)
        assert result.passed
        assert len(result.details) == 3
        assert all(row['pass'] for row in result.details)

    def test_counterexample(self, service):
        result = service.counterexample()
        assert result.passed
        assert result.details[0]['nullity']['kind'] == 'Null'
        assert result.details[0]['nullity']['reason'] == 'ExactSymmetry'

    def test_symmetry(self, service):
        assert service.symmetry(8).passed

    def test_monotonic(self, service):
        result = service.monotonic(50)
        assert result.passed
        assert result.details == []

    def test_derivative(self):
        service = VerificationService(prec=128)
        assert service.derivative(10).passed

    def test_random_rationals_reproducible(self, service):
        points = service.random_rationals(20)
        assert points == VerificationService(prec=256).random_rationals(20)
        assert all(0 < x < 1 for x in points)

    def test_minimum(self):
        assert VerificationService(prec=128).minimum(40).passed

    def test_nullity_law_small(self, service):
        assert service.nullity_law(8).passed

    def test_witness(self, service):
        assert service.witness_soundness(6).passed

    def test_trichotomy(self, service):
        result = service.trichotomy(8, 3)
        assert result.passed
        assert result.details[0]['counts']['II'] == 1

    def test_appendix(self, service):
        assert service.appendix(100).passed

    @pytest.mark.slow
    def test_nullity_law_to_twenty_four(self, service):
        result = service.nullity_law(24)
        assert result.passed, result.details[:5]

    @pytest.mark.slow
    def test_derivative_fifty_points(self, service):
        assert service.derivative(50).passed

    @pytest.mark.slow
    def test_full_precision_reflection(self):
        assert VerificationService(prec=3456).reflection().passed

    @pytest.mark.slow
    def test_counterexample_at_full_precision(self):
        result = VerificationService(prec=3456).counterexample()
        assert result.passed
        assert result.prec_bits == 3456

    @pytest.mark.slow
    def test_shape_on_two_hundred_points(self):
        service = VerificationService(prec=256, exact_sine_max_den=24)
        assert service.monotonic(100).passed
        for i in range(1, 100):
            x = Fraction(i, 200)
            assert service.evaluator.f_eval(x, 256).intersects(service.evaluator.f_eval(1 - x, 256)), x
        assert service.minimum(200).passed
