import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from baker_gamma.gammaeval import DEFAULT_EXACT_SINE_MAX_DEN, GammaEvaluator
from baker_gamma.periods import NullityKind, evaluate, f_difference, nullity
from baker_gamma.qcore import (
    DEFAULT_PREC_BITS, RInterval, format_rational, reduced_unit_rationals,
)
from baker_gamma.serializers import (
    NullityVerdictSchema, RIntervalSchema, ResidualReportSchema, SweepSummarySchema,
)
from baker_gamma.theorems import appendix_check, trichotomy_sweep

# Arguments for the built-in reflection check
REFLECTION_SAMPLES = tuple(Fraction(*pair) for pair in
                           [(1, 7), (1, 5), (1, 4), (1, 3), (5, 12), (1, 2), (2, 3), (7, 8)])

FINITE_DIFFERENCE_STEP = Fraction(1, 10 ** 20)

_interval_schema = RIntervalSchema()


@dataclass
class CheckResult:
    name: str
    passed: bool
    prec_bits: Optional[int] = None
    summary: str = ''
    details: List[Dict[str, Any]] = field(default_factory=list)


def _nullity_row(x1: Fraction, points: List[Fraction], prec: int) -> List[Dict[str, Any]]:
    """Mismatches of the nullity law for one first argument; runs in a joblib worker"""
    mismatches = []
    for x2 in points:
        verdict = nullity(f_difference(x1, x2), prec)
        expect_null = x1 == x2 or x1 + x2 == 1
        ok = verdict.kind == (NullityKind.NULL if expect_null else NullityKind.NON_NULL)
        if not ok:
            mismatches.append({'x1': format_rational(x1), 'x2': format_rational(x2), 'kind': verdict.kind.value})
    return mismatches


class VerificationService:
    """
    Certificate-producing checks over the reflection family. Every check returns a CheckResult
    whose details carry the enclosures it relied on.
    """

    def __init__(self, prec: int = DEFAULT_PREC_BITS, n_jobs: int = 1,
                 exact_sine_max_den: int = DEFAULT_EXACT_SINE_MAX_DEN, verify: bool = False, seed: int = 2024):
        self.logger = logging.getLogger(__name__)
        self.prec = prec
        self.n_jobs = n_jobs
        self.seed = seed
        self.evaluator = GammaEvaluator(exact_sine_max_den, verify)

    def _finish(self, result: CheckResult) -> CheckResult:
        if result.passed:
            self.logger.info(f"Check {result.name} passed: {result.summary}")
        else:
            self.logger.error(f"Check {result.name} failed: {result.summary}")
        return result

    def reflection(self, samples=REFLECTION_SAMPLES) -> CheckResult:
        """Reflection residual contains 0 and is at most 2^(16 - prec) wide at every sample"""
        reports = [self.evaluator.verify_reflection(x, self.prec) for x in samples]
        failed = [format_rational(r.x) for r in reports if not r.passed]
        return self._finish(CheckResult(
            'reflection', not failed, self.prec,
            f"{len(reports) - len(failed)}/{len(reports)} residuals certified",
            ResidualReportSchema(many=True).dump(reports),
        ))

    def counterexample(self) -> CheckResult:
        """f(1/4) = f(3/4): the difference period is exactly null and the numeric difference contains 0"""
        x1, x2 = Fraction(1, 4), Fraction(3, 4)
        verdict = nullity(f_difference(x1, x2), self.prec)
        f1 = self.evaluator.f_eval(x1, self.prec)
        f2 = self.evaluator.f_eval(x2, self.prec)
        difference = f1 - f2
        # f(1/4) = log pi + log sqrt(2)
        closed_form = self.evaluator.log_pi(self.prec) + RInterval.from_rational(2, self.prec).log() / 2
        passed = (verdict.kind == NullityKind.NULL and difference.contains_zero()
                  and f1.intersects(closed_form))
        return self._finish(CheckResult(
            'counterexample', passed, self.prec,
            f"period(1/4, 3/4) is {verdict.kind.value}; f(1/4) - f(3/4) contains 0: {difference.contains_zero()}",
            [{
                'nullity': NullityVerdictSchema().dump(verdict),
                'difference': _interval_schema.dump(difference),
                'f_quarter': _interval_schema.dump(f1),
                'log_pi_plus_half_log_2': _interval_schema.dump(closed_form),
            }],
        ))

    def symmetry(self, max_den: int = 12) -> CheckResult:
        """f(x) and f(1 - x) enclosures intersect"""
        details = []
        for x in reduced_unit_rationals(max_den):
            if x >= Fraction(1, 2):
                continue
            a, b = self.evaluator.f_eval(x, self.prec), self.evaluator.f_eval(1 - x, self.prec)
            if not a.intersects(b):
                details.append({'x': format_rational(x), 'f_x': _interval_schema.dump(a),
                                'f_1mx': _interval_schema.dump(b)})
        return self._finish(CheckResult('symmetry', not details, self.prec,
                                        f"{len(details)} asymmetric pairs up to denominator {max_den}", details))

    def monotonic(self, count: int = 50) -> CheckResult:
        """Strict decrease on (0, 1/2] and strict increase on [1/2, 1) by interval separation"""
        left = [Fraction(i, 2 * count) for i in range(1, count + 1)]
        right = [1 - x for x in reversed(left)]
        values = {x: self.evaluator.f_eval(x, self.prec) for x in left + right}
        details = []
        for a, b in zip(left, left[1:]):
            if not values[b].strictly_below(values[a]):
                details.append({'x1': format_rational(a), 'x2': format_rational(b), 'expected': 'decreasing'})
        for a, b in zip(right, right[1:]):
            if not values[a].strictly_below(values[b]):
                details.append({'x1': format_rational(a), 'x2': format_rational(b), 'expected': 'increasing'})
        return self._finish(CheckResult('monotonic', not details, self.prec,
                                        f"{len(details)} unseparated neighbours on a {2 * count}-point grid",
                                        details))

    def random_rationals(self, count: int, max_den: int = 1000) -> List[Fraction]:
        rng = np.random.default_rng(self.seed)
        dens = rng.integers(3, max_den, size=count)
        nums = [int(rng.integers(1, d)) for d in dens]
        return [Fraction(n, int(d)) for n, d in zip(nums, dens)]

    def derivative(self, count: int = 50) -> CheckResult:
        """
        Centered differences (f(x+h) - f(x-h)) / 2h against f'(x). With m = min(x, 1-x) - h the
        truncation error is at most h^2/6 * max|f'''| <= 2 h^2 / m^3.
        """
        h = FINITE_DIFFERENCE_STEP
        details = []
        for x in self.random_rationals(count):
            quotient = (self.evaluator.f_eval(x + h, self.prec) - self.evaluator.f_eval(x - h, self.prec)) / (2 * h)
            slope = self.evaluator.f_prime(x, self.prec)
            m = min(x, 1 - x) - h
            gap = (quotient - slope).widen(2 * h * h / m ** 3)
            if not gap.contains_zero():
                details.append({'x': format_rational(x), 'slope': _interval_schema.dump(slope),
                                'quotient': _interval_schema.dump(quotient)})
        return self._finish(CheckResult('derivative', not details, self.prec,
                                        f"{count - len(details)}/{count} slopes agree", details))

    def minimum(self, steps: int = 100) -> CheckResult:
        """f(x) >= log pi on the grid, with equality only at x = 1/2"""
        log_pi = self.evaluator.log_pi(self.prec)
        details = []
        for i in range(1, steps):
            x = Fraction(i, steps)
            value = self.evaluator.f_eval(x, self.prec)
            ok = value.intersects(log_pi) if x == Fraction(1, 2) else log_pi.strictly_below(value)
            if not ok:
                details.append({'x': format_rational(x), 'f': _interval_schema.dump(value)})
        return self._finish(CheckResult('minimum', not details, self.prec,
                                        f"{len(details)} grid points violate the minimum at 1/2", details))

    def nullity_law(self, max_den: int = 24) -> CheckResult:
        """Null iff x1 = x2 or x1 + x2 = 1, NonNull otherwise, over all ordered pairs"""
        points = reduced_unit_rationals(max_den)
        rows = Parallel(n_jobs=self.n_jobs)(delayed(_nullity_row)(x1, points, self.prec) for x1 in points)
        details = [mismatch for row in rows for mismatch in row]
        return self._finish(CheckResult('nullity', not details, self.prec,
                                        f"{len(points) ** 2 - len(details)}/{len(points) ** 2} pairs follow the law",
                                        details))

    def witness_soundness(self, max_den: int = 8) -> CheckResult:
        """NonNull witnesses exclude 0 and meet the same period evaluated at double precision"""
        details = []
        points = reduced_unit_rationals(max_den)
        for x1 in points:
            for x2 in points:
                period = f_difference(x1, x2)
                verdict = nullity(period, self.prec)
                if verdict.kind != NullityKind.NON_NULL:
                    continue
                recomputed = evaluate(period, 2 * self.prec)
                if verdict.witness.contains_zero() or not verdict.witness.intersects(recomputed):
                    details.append({'x1': format_rational(x1), 'x2': format_rational(x2)})
        return self._finish(CheckResult('witness', not details, self.prec,
                                        f"{len(details)} unsound witnesses", details))

    def trichotomy(self, max_den: int = 8, max_size: int = 3) -> CheckResult:
        summary = trichotomy_sweep(max_den, max_size, self.n_jobs)
        return self._finish(CheckResult('trichotomy', summary.passed, None,
                                        f"{summary.total} exception sets analyzed",
                                        [SweepSummarySchema().dump(summary)]))

    def appendix(self, max_den: int = 100) -> CheckResult:
        passed = appendix_check(max_den)
        return self._finish(CheckResult('appendix', passed, None,
                                        f"only 1/2 is self-symmetric up to denominator {max_den}: {passed}"))
