"""
Rigorous evaluation of log Gamma, log pi, log sin(pi x), f(x) = log Gamma(x) + log Gamma(1-x)
and its derivative, all as outward-rounded enclosures
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from mpmath.libmp import bernfrac

from baker_gamma.algebraic import direct_sin_pi, minpoly_sin, refine
from baker_gamma.config import MIN_PREC_BITS
from baker_gamma.exceptions import DisagreementError, DomainError, PrecisionExhausted
from baker_gamma.qcore import DEFAULT_PREC_BITS, RInterval, format_rational, require_unit

logger = logging.getLogger(__name__)

DEFAULT_EXACT_SINE_MAX_DEN = 512

# Extra bits carried by every composite evaluation before rounding back to the caller's precision
GUARD_BITS = 16

# (guard bits, shift target as a multiple of prec) tried in order by log_gamma
_LOG_GAMMA_LADDER = ((32, 4), (64, 2))


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n"""
    p, q = bernfrac(n)
    return Fraction(p, q)


@dataclass(frozen=True)
class EvalRequest:
    """Argument/precision pair for one evaluation of f"""

    x: Fraction
    prec: int

    def __post_init__(self):
        object.__setattr__(self, 'x', require_unit(self.x))
        if self.prec < MIN_PREC_BITS:
            raise DomainError(f"Precision must be at least {MIN_PREC_BITS} bits, got {self.prec}")

    @property
    def label(self) -> str:
        return format_rational(self.x)


@dataclass(frozen=True)
class ResidualReport:
    """Enclosure of log Gamma(x) + log Gamma(1-x) - log pi + log sin(pi x)"""

    x: Fraction
    prec_bits: int
    residual: RInterval
    passed: bool

    @property
    def x_num(self) -> int:
        return self.x.numerator

    @property
    def x_den(self) -> int:
        return self.x.denominator


def _stirling(z: Fraction, wp: int) -> Optional[RInterval]:
    """
    log Gamma(z) for rational z >> 1 from the asymptotic series

        (z - 1/2) log z - z + log(2 pi)/2 + sum_k B_2k / (2k (2k-1) z^(2k-1))

    The remainder after any number of terms is bounded by the first omitted term, which is
    added as [-T, T] once it drops below 2^-wp. Returns None when the series starts growing
    before that happens.
    """
    zi = RInterval.from_rational(z, wp)
    inv = 1 / zi
    inv_sq = inv * inv
    half_log_2pi = (RInterval.pi(wp) * 2).log() / 2
    total = (zi - Fraction(1, 2)) * zi.log() - zi + half_log_2pi

    # terms shrink while k < pi * z
    k_max = math.floor(math.pi * z)
    power = inv
    k = 1
    while k < k_max:
        term = power * (bernoulli(2 * k) / (2 * k * (2 * k - 1)))
        if term.abs_at_most_pow2(-wp):
            logger.debug(f"Stirling series at z={z} closed after {k - 1} terms")
            return total + RInterval.symmetric(term)
        total = total + term
        power = power * inv_sq
        k += 1
    return None


class GammaEvaluator:
    """
    Evaluator for the reflection family. sin(pi x) is read off the exact algebraic root when the
    denominator of x is at most `exact_sine_max_den`, otherwise from direct interval sine.
    In verify mode f is computed along both routes and the enclosures are intersected.
    """

    def __init__(self, exact_sine_max_den: int = DEFAULT_EXACT_SINE_MAX_DEN, verify: bool = False):
        self.exact_sine_max_den = exact_sine_max_den
        self.verify = verify
        self.logger = logging.getLogger(__name__)

    def log_gamma(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
        """Enclosure of log Gamma(x) of width at most 2^(8 - prec)"""
        request = EvalRequest(x, prec)
        x = request.x
        for guard, divisor in _LOG_GAMMA_LADDER:
            wp = prec + guard
            m = max(0, math.ceil(Fraction(prec, divisor) + 8 - x))
            z = x + m
            head = _stirling(z, wp)
            if head is None:
                self.logger.warning(f"Stirling series diverged at shift {m}, widening the ladder",
                                    extra={'x': request.label})
                continue
            # log Gamma(x) = log Gamma(x + m) - log prod_{j<m} (x + j)
            shift = math.prod((x + j for j in range(m)), start=Fraction(1))
            result = head - RInterval.from_rational(shift, wp).log()
            if result.width_at_most_pow2(8 - prec):
                self.logger.debug(f"log Gamma at {prec} bits: shift {m}, guard {guard}",
                                  extra={'x': request.label})
                return result.with_prec(prec)
            self.logger.warning(f"log Gamma missed its width target with guard {guard}",
                                extra={'x': request.label})
        raise PrecisionExhausted(f"log Gamma({request.label}) could not reach width 2^{8 - prec}")

    def log_pi(self, prec: int = DEFAULT_PREC_BITS) -> RInterval:
        if prec < MIN_PREC_BITS:
            raise DomainError(f"Precision must be at least {MIN_PREC_BITS} bits, got {prec}")
        result = RInterval.pi(prec + GUARD_BITS).log()
        if not result.width_at_most_pow2(4 - prec):
            raise PrecisionExhausted(f"log pi could not reach width 2^{4 - prec}")
        return result.with_prec(prec)

    def sin_pi(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
        """Enclosure of sin(pi x)"""
        request = EvalRequest(x, prec)
        if request.x.denominator <= self.exact_sine_max_den:
            return refine(minpoly_sin(request.x), prec)
        self.logger.debug(f"Denominator above {self.exact_sine_max_den}, using interval sine",
                          extra={'x': request.label})
        return direct_sin_pi(request.x, prec)

    def log_sin_pi(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
        return self.sin_pi(x, prec + GUARD_BITS).log().with_prec(prec)

    def log_gamma_pair(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> Tuple[RInterval, RInterval]:
        """(log Gamma(x), log Gamma(1 - x))"""
        x = require_unit(x)
        return self.log_gamma(x, prec), self.log_gamma(1 - x, prec)

    def f_eval(self, x: Fraction, prec: int = DEFAULT_PREC_BITS, verify: Optional[bool] = None) -> RInterval:
        """Enclosure of f(x) = log pi - log sin(pi x), cross-checked against the log Gamma sum in verify mode"""
        request = EvalRequest(x, prec)
        verify = self.verify if verify is None else verify
        wp = prec + GUARD_BITS
        self.logger.info(f"Evaluating f at {prec} bits ({'verify' if verify else 'fast'})",
                         extra={'x': request.label})

        reflection = self.log_pi(wp) - self.log_sin_pi(request.x, wp)
        if not verify:
            return reflection.with_prec(prec)

        gamma_sum = self.log_gamma(request.x, wp) + self.log_gamma(1 - request.x, wp)
        if not reflection.intersects(gamma_sum):
            self.logger.error(f"Reflection route {reflection} and log Gamma route {gamma_sum} are disjoint",
                              extra={'x': request.label})
            raise DisagreementError(f"f({request.label}): evaluation routes disagree at {prec} bits")
        return reflection.intersection(gamma_sum).with_prec(prec)

    def f_prime(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
        """Enclosure of f'(x) = -pi cot(pi x)"""
        request = EvalRequest(x, prec)
        wp = prec + GUARD_BITS
        pi = RInterval.pi(wp)
        cos, sin = (pi * request.x).cos_sin()
        return (-(pi * cos / sin)).with_prec(prec)

    def verify_reflection(self, x: Fraction, prec: int = DEFAULT_PREC_BITS) -> ResidualReport:
        """Check log Gamma(x) + log Gamma(1-x) = log pi - log sin(pi x) to width 2^(16 - prec)"""
        request = EvalRequest(x, prec)
        wp = prec + GUARD_BITS
        lg_x, lg_1mx = self.log_gamma_pair(request.x, wp)
        residual = (lg_x + lg_1mx - self.log_pi(wp) + self.log_sin_pi(request.x, wp)).with_prec(prec)
        passed = residual.contains_zero() and residual.width_at_most_pow2(16 - prec)
        if passed:
            self.logger.info(f"Reflection residual {residual} passes", extra={'x': request.label})
        else:
            self.logger.error(f"Reflection residual {residual} fails", extra={'x': request.label})
        return ResidualReport(request.x, prec, residual, passed)


# Global evaluator with the default sine threshold
evaluator = GammaEvaluator()


def log_gamma(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return evaluator.log_gamma(x, prec)


def log_pi(prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return evaluator.log_pi(prec)


def sin_pi(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return evaluator.sin_pi(x, prec)


def log_sin_pi(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return evaluator.log_sin_pi(x, prec)


def log_gamma_pair(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> Tuple[RInterval, RInterval]:
    return evaluator.log_gamma_pair(x, prec)


def f_eval(x: Fraction, prec: int = DEFAULT_PREC_BITS, verify: bool = False) -> RInterval:
    return evaluator.f_eval(x, prec, verify)


def f_prime(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return evaluator.f_prime(x, prec)


def verify_reflection(x: Fraction, prec: int = DEFAULT_PREC_BITS) -> ResidualReport:
    return evaluator.verify_reflection(x, prec)
