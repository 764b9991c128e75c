"""
Case analysis of hypothetical exception sets (rational x where f(x) would be algebraic) and the
conditional implication for the transcendence of pi*e
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from joblib import Parallel, delayed

from baker_gamma.algebraic import AlgebraicNumber, alg_compare_rational, minpoly_sin, refine
from baker_gamma.exceptions import DomainError
from baker_gamma.qcore import (
    DEFAULT_PREC_BITS, RInterval, format_rational, parse_rational, reduced_unit_rationals, require_unit,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

GUARD_BITS = 16

EXCEPTION_AXIOMS = ('Baker', 'Theorem1', 'Theorem2')
IMPLICATION_AXIOMS = ('HL', 'HL-log')

# Check names, in evaluation order
CHECK_AT_MOST_TWO = 'AtMostTwo'
CHECK_HALF_INTERVAL = 'HalfIntervalBound'
CHECK_SYMMETRY = 'SymmetryClosure'

VIOLATION_TOO_MANY = 'TooManyExceptions'


class TheoremCase(str, Enum):
    I = 'I'
    II = 'II'
    III = 'III'


class LogPiStatus(str, Enum):
    TRANSCENDENTAL = 'Transcendental'
    ALGEBRAIC = 'Algebraic'
    UNDETERMINED = 'Undetermined'


@dataclass(frozen=True)
class HypotheticalExceptionSet:
    """Set of rationals in (0, 1) at which f is assumed to take algebraic values"""

    members: FrozenSet[Fraction] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(require_unit(m) for m in self.members))

    @classmethod
    def of(cls, values: Iterable) -> 'HypotheticalExceptionSet':
        return cls(frozenset(Fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> 'HypotheticalExceptionSet':
        """Comma-separated reduced fractions; the empty string is the empty set"""
        parts = [part for part in (text or '').split(',') if part.strip()]
        return cls(frozenset(parse_rational(part) for part in parts))

    def sorted(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, value):
        return value in self.members

    def __str__(self):
        return '{' + ', '.join(format_rational(m) for m in self.sorted()) + '}'


@dataclass(frozen=True)
class ExceptionVerdict:
    members: Tuple[Fraction, ...]
    consistent: bool
    case: Optional[TheoremCase]
    log_pi_status: LogPiStatus
    violation: Optional[str] = None
    failed_checks: Tuple[str, ...] = ()
    uses: Tuple[str, ...] = EXCEPTION_AXIOMS


@dataclass(frozen=True)
class ImplicationReport:
    """If f(y) is algebraic then pi*e is transcendental, with numeric support for k(y) = 1/sin(pi y)"""

    y: Fraction
    premise: str
    conclusion: str
    k: AlgebraicNumber
    k_at_least_one: bool
    k_equals_one: bool
    k_enclosure: RInterval
    k_pi_e_enclosure: RInterval
    excludes_one: bool
    uses: Tuple[str, ...] = IMPLICATION_AXIOMS

    @property
    def supported(self) -> bool:
        return self.k_at_least_one and self.excludes_one


@dataclass
class SweepSummary:
    max_den: int
    max_size: int
    total: int = 0
    counts: Dict[str, int] = field(default_factory=lambda: {'I': 0, 'II': 0, 'III': 0, 'inconsistent': 0})
    all_large_sets_inconsistent: bool = True
    patterns_match: bool = True
    criteria_agree: bool = True

    @property
    def passed(self) -> bool:
        return self.all_large_sets_inconsistent and self.patterns_match and self.criteria_agree


def halfinterval_bound_check(s: HypotheticalExceptionSet) -> bool:
    """At most one member in (0, 1/2] and at most one in [1/2, 1); 1/2 counts toward both"""
    left = sum(1 for m in s.members if m <= HALF)
    right = sum(1 for m in s.members if m >= HALF)
    return left <= 1 and right <= 1


def symmetry_closure_check(s: HypotheticalExceptionSet) -> bool:
    """Closed under x -> 1 - x, since f(1 - x) = f(x)"""
    return all(1 - m in s.members for m in s.members)


def _violation(s: HypotheticalExceptionSet, failed: Tuple[str, ...]) -> Optional[str]:
    if not failed:
        return None
    if CHECK_AT_MOST_TWO in failed:
        return VIOLATION_TOO_MANY
    # completing {1/2, x} symmetrically would give a third exception
    if CHECK_HALF_INTERVAL in failed and CHECK_SYMMETRY in failed and HALF in s:
        return CHECK_SYMMETRY
    return failed[0]


def _case_for(s: HypotheticalExceptionSet) -> Tuple[TheoremCase, LogPiStatus]:
    if len(s) == 0:
        return TheoremCase.I, LogPiStatus.TRANSCENDENTAL
    if s.members == {HALF}:
        return TheoremCase.II, LogPiStatus.ALGEBRAIC
    return TheoremCase.III, LogPiStatus.TRANSCENDENTAL


def exception_set_analyze(s: HypotheticalExceptionSet) -> ExceptionVerdict:
    """
    A set is consistent when it has at most two members, respects the half-interval bound and is
    closed under x -> 1 - x. Consistent sets fall into exactly one case:
      I    no exceptions          log pi transcendental
      II   only 1/2               log pi algebraic
      III  {x, 1 - x}, x != 1/2   log pi transcendental
    """
    failed = []
    if len(s) > 2:
        failed.append(CHECK_AT_MOST_TWO)
    if not halfinterval_bound_check(s):
        failed.append(CHECK_HALF_INTERVAL)
    if not symmetry_closure_check(s):
        failed.append(CHECK_SYMMETRY)
    failed = tuple(failed)

    if failed:
        return ExceptionVerdict(s.sorted(), False, None, LogPiStatus.UNDETERMINED, _violation(s, failed), failed)
    case, status = _case_for(s)
    return ExceptionVerdict(s.sorted(), True, case, status)


def criteria_statement(s: HypotheticalExceptionSet) -> bool:
    """log pi is algebraic iff the exception set is exactly {1/2}"""
    if not exception_set_analyze(s).consistent:
        raise DomainError(f"Exception set {s} is inconsistent")
    return s.members == {HALF}


def appendix_check(max_den: int) -> bool:
    """Under a single exception, symmetry admits only x = 1/2"""
    if max_den < 2:
        raise DomainError(f"max_den must be at least 2, got {max_den}")
    admissible = [x for x in reduced_unit_rationals(max_den)
                  if symmetry_closure_check(HypotheticalExceptionSet(frozenset({x})))]
    logger.info(f"Self-symmetric singletons up to denominator {max_den}: "
                f"{[format_rational(x) for x in admissible]}")
    return admissible == [HALF]


def pi_e_implication(y: Fraction, prec: int = DEFAULT_PREC_BITS) -> ImplicationReport:
    """k(y) = 1/sin(pi y) is exactly >= 1, so k*pi*e != 1 and HL-log applies to log(k*pi*e)"""
    y = require_unit(y)
    k = minpoly_sin(y).reciprocal()
    order = alg_compare_rational(k, Fraction(1))

    wp = prec + GUARD_BITS
    k_enclosure = refine(k, wp)
    k_pi_e = k_enclosure * RInterval.pi(wp) * RInterval.e(wp)
    excludes_one = not k_pi_e.contains(1)
    if not excludes_one:
        logger.error(f"k*pi*e enclosure {k_pi_e} contains 1", extra={'x': format_rational(y)})

    return ImplicationReport(
        y=y,
        premise=f"f({format_rational(y)}) is algebraic",
        conclusion="pi*e is transcendental",
        k=k,
        k_at_least_one=order >= 0,
        k_equals_one=order == 0,
        k_enclosure=k_enclosure.with_prec(prec),
        k_pi_e_enclosure=k_pi_e.with_prec(prec),
        excludes_one=excludes_one,
    )


def _expected_case(members: Tuple[Fraction, ...]) -> Optional[TheoremCase]:
    if not members:
        return TheoremCase.I
    if members == (HALF,):
        return TheoremCase.II
    if len(members) == 2 and members[0] + members[1] == 1:
        return TheoremCase.III
    return None


def _sweep_one(members: Tuple[Fraction, ...]) -> Tuple[ExceptionVerdict, Optional[bool]]:
    s = HypotheticalExceptionSet(frozenset(members))
    verdict = exception_set_analyze(s)
    criteria = criteria_statement(s) if verdict.consistent else None
    return verdict, criteria


def trichotomy_sweep(max_den: int, max_size: int = 3, n_jobs: int = 1) -> SweepSummary:
    """Analyze every exception set of size <= max_size over denominators <= max_den"""
    points = reduced_unit_rationals(max_den)
    candidates = [c for size in range(max_size + 1) for c in combinations(points, size)]
    logger.info(f"Sweeping {len(candidates)} exception sets over {len(points)} arguments")

    results = Parallel(n_jobs=n_jobs)(delayed(_sweep_one)(c) for c in candidates)

    summary = SweepSummary(max_den, max_size, total=len(candidates))
    for members, (verdict, criteria) in zip(candidates, results):
        expected = _expected_case(members)
        if not verdict.consistent:
            summary.counts['inconsistent'] += 1
            if expected is not None:
                summary.patterns_match = False
            continue
        if len(members) >= 3:
            summary.all_large_sets_inconsistent = False
        summary.counts[verdict.case.value] += 1
        if verdict.case != expected:
            summary.patterns_match = False
        if criteria != (verdict.case == TheoremCase.II):
            summary.criteria_agree = False

    if not summary.passed:
        logger.error(f"Trichotomy sweep up to denominator {max_den} failed: {summary}")
    return summary
