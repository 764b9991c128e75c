"""
Baker periods sum(beta_i * log alpha_i) with rational beta and positive real algebraic alpha.
Nullity of the f-difference periods is decided exactly by normalization; non-nullity is certified
by an interval enclosure that excludes zero.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Iterable, List, Optional, Tuple

from baker_gamma.algebraic import (
    AlgebraicNumber, alg_compare, alg_compare_rational, alg_equal, minpoly_sin, refine,
)
from baker_gamma.exceptions import DomainError
from baker_gamma.qcore import (
    DEFAULT_PREC_BITS, RInterval, format_rational, reduced_unit_rationals, require_unit,
)

logger = logging.getLogger(__name__)

GUARD_BITS = 16

# A witness must clear zero by this many ulps at the working precision
WITNESS_MARGIN_ULPS = 2

# Precision may grow up to this multiple of the requested precision before giving up
MAX_PREC_FACTOR = 4


class NullityKind(str, Enum):
    NULL = 'Null'
    NON_NULL = 'NonNull'
    UNKNOWN = 'Unknown'


class NullityReason(str, Enum):
    EXACT_SYMMETRY = 'ExactSymmetry'
    MERGED = 'Merged'
    INTERVAL_SEPARATION = 'IntervalSeparation'


class Classification(str, Enum):
    ZERO = 'Zero'
    TRANSCENDENTAL = 'Transcendental'
    UNKNOWN = 'Unknown'


class PairKind(str, Enum):
    AT_LEAST_ONE_TRANSCENDENTAL = 'AtLeastOneTranscendental'
    NOT_APPLICABLE = 'NotApplicable'
    UNDETERMINED = 'Undetermined'


@dataclass(frozen=True)
class PeriodTerm:
    beta: Fraction
    alpha: AlgebraicNumber

    def __post_init__(self):
        object.__setattr__(self, 'beta', Fraction(self.beta))


@dataclass(frozen=True)
class BakerPeriod:
    """Linear form in logarithms; the empty term tuple is the zero period"""

    terms: Tuple[PeriodTerm, ...] = ()
    # set by normalization when equal alphas cancelled
    cancelled: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(self.terms))

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Fraction, AlgebraicNumber]]) -> 'BakerPeriod':
        return cls(tuple(PeriodTerm(beta, alpha) for beta, alpha in pairs))

    def is_empty(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class NullityVerdict:
    kind: NullityKind
    witness: Optional[RInterval] = None
    reason: Optional[NullityReason] = None
    prec_bits: int = DEFAULT_PREC_BITS

    def __post_init__(self):
        if self.kind == NullityKind.NON_NULL and (self.witness is None or self.witness.contains_zero()):
            raise ValueError("A NonNull verdict needs a witness that excludes zero")


@dataclass(frozen=True)
class PairVerdict:
    x: Fraction
    y: Fraction
    kind: PairKind
    nullity: Optional[NullityVerdict] = None

    @property
    def witness(self) -> Optional[RInterval]:
        return self.nullity.witness if self.nullity else None


def _merge_alpha(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """Same number, tighter isolator; independent of argument order"""
    return AlgebraicNumber(a.minpoly, max(a.lo, b.lo), min(a.hi, b.hi))


def _normalize(p: BakerPeriod) -> Tuple[BakerPeriod, bool]:
    """Normalized period plus whether two equal alphas cancelled each other"""
    groups: List[List] = []
    for term in p.terms:
        if alg_compare_rational(term.alpha, Fraction(0)) <= 0:
            raise DomainError(f"Logarithm of a non-positive algebraic number {term.alpha}")
        if term.beta == 0 or alg_compare_rational(term.alpha, Fraction(1)) == 0:
            continue
        for group in groups:
            if alg_equal(group[1], term.alpha):
                group[0] += term.beta
                group[1] = _merge_alpha(group[1], term.alpha)
                break
        else:
            groups.append([term.beta, term.alpha])

    cancelled = p.cancelled or any(beta == 0 for beta, _ in groups)
    kept = [PeriodTerm(beta, alpha) for beta, alpha in groups if beta != 0]
    kept.sort(key=cmp_to_key(lambda s, t: alg_compare(s.alpha, t.alpha)))
    return BakerPeriod(tuple(kept), cancelled), cancelled


def normalize(p: BakerPeriod) -> BakerPeriod:
    """Merge equal alphas, drop zero coefficients and log 1 terms, order terms by alpha"""
    return _normalize(p)[0]


def f_difference(x1: Fraction, x2: Fraction) -> BakerPeriod:
    """f(x2) - f(x1) = log sin(pi x1) - log sin(pi x2), normalized"""
    x1, x2 = require_unit(x1), require_unit(x2)
    return normalize(BakerPeriod.of([(1, minpoly_sin(x1)), (-1, minpoly_sin(x2))]))


@lru_cache(maxsize=8192)
def _log_alpha(alpha: AlgebraicNumber, prec: int) -> RInterval:
    return refine(alpha, prec).log()


def evaluate(p: BakerPeriod, prec: int) -> RInterval:
    """Interval enclosure of the period's value"""
    wp = prec + GUARD_BITS
    total = RInterval.from_rational(0, wp)
    for term in p.terms:
        total = total + _log_alpha(term.alpha, wp) * term.beta
    return total.with_prec(prec)


def nullity(p: BakerPeriod, prec: int = DEFAULT_PREC_BITS) -> NullityVerdict:
    """Null when normalization empties the period, NonNull when an enclosure clears zero, else Unknown"""
    normalized, cancelled = _normalize(p)
    if normalized.is_empty():
        reason = NullityReason.EXACT_SYMMETRY if cancelled else NullityReason.MERGED
        return NullityVerdict(NullityKind.NULL, None, reason, prec)

    current = prec
    while current <= MAX_PREC_FACTOR * prec:
        enclosure = evaluate(normalized, current)
        margin = enclosure.margin_from_zero()
        if margin is not None and margin >= WITNESS_MARGIN_ULPS * enclosure.ulp():
            return NullityVerdict(NullityKind.NON_NULL, enclosure, NullityReason.INTERVAL_SEPARATION, current)
        logger.warning(f"Period enclosure {enclosure} too close to zero at {current} bits, doubling")
        current *= 2
    return NullityVerdict(NullityKind.UNKNOWN, None, None, current // 2)


def classify(p: BakerPeriod, prec: int = DEFAULT_PREC_BITS) -> Tuple[Classification, NullityVerdict]:
    """Zero, Transcendental (non-null Baker periods are transcendental) or Unknown"""
    verdict = nullity(p, prec)
    if verdict.kind == NullityKind.NULL:
        return Classification.ZERO, verdict
    if verdict.kind == NullityKind.NON_NULL:
        return Classification.TRANSCENDENTAL, verdict
    return Classification.UNKNOWN, verdict


def pair_classify(x: Fraction, y: Fraction, prec: int = DEFAULT_PREC_BITS) -> PairVerdict:
    """
    For y distinct from x and 1 - x, at least one of f(x) and f(y) is transcendental since their
    difference is a non-null Baker period. The pair is NotApplicable when y = x or y = 1 - x.
    """
    x, y = require_unit(x), require_unit(y)
    if y == x or y == 1 - x:
        return PairVerdict(x, y, PairKind.NOT_APPLICABLE)
    verdict = nullity(f_difference(x, y), prec)
    if verdict.kind == NullityKind.NON_NULL:
        return PairVerdict(x, y, PairKind.AT_LEAST_ONE_TRANSCENDENTAL, verdict)
    logger.warning(f"Pair ({format_rational(x)}, {format_rational(y)}) left undetermined: {verdict.kind.value}")
    return PairVerdict(x, y, PairKind.UNDETERMINED, verdict)


def log_pi_pair_classify(y: Fraction, prec: int = DEFAULT_PREC_BITS) -> PairVerdict:
    """The pair {log pi, log(pi / sin(pi y))}, i.e. x fixed at 1/2"""
    return pair_classify(Fraction(1, 2), y, prec)


def value_collisions(max_den: int, prec: int = DEFAULT_PREC_BITS) -> List[Tuple[Fraction, Fraction]]:
    """All x1 < x2 with denominators <= max_den whose f-values coincide exactly"""
    points = reduced_unit_rationals(max_den)
    collisions = []
    for i, x1 in enumerate(points):
        for x2 in points[i + 1:]:
            if nullity(f_difference(x1, x2), prec).kind == NullityKind.NULL:
                collisions.append((x1, x2))
    logger.info(f"{len(collisions)} value collisions among {len(points)} arguments with denominator <= {max_den}")
    return collisions
