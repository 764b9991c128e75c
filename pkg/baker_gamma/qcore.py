"""
Exact rational arithmetic and outward-rounded interval arithmetic
Every transcendental quantity in the toolkit is carried as an RInterval
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import mpmath
from mpmath.libmp import (
    fzero, fone, finf, fninf, fnan,
    round_floor, round_ceiling,
    from_rational, to_rational, to_str,
    mpf_sub, mpf_shift, mpf_cmp, mpf_le, mpf_lt, mpf_abs, mpf_neg,
)
from mpmath.libmp.libmpi import (
    mpi_add, mpi_sub, mpi_mul, mpi_div, mpi_neg, mpi_abs,
    mpi_log, mpi_exp, mpi_sqrt, mpi_pi, mpi_pow_int, mpi_cos_sin,
)

from baker_gamma.exceptions import DomainError, PrecisionExhausted

logger = logging.getLogger(__name__)

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_PREC_BITS = 3456

# Elementary functions evaluated at a point must come back within this many ulps
MAX_POINT_ULPS = 4

_FRACTION_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


def reduce(num: int, den: int) -> Fraction:
    """Return num/den in lowest terms with a positive denominator"""
    if isinstance(num, bool) or isinstance(den, bool) or not isinstance(num, int) or not isinstance(den, int):
        raise DomainError(f"reduce expects integers, got {num!r}/{den!r}")
    if den == 0:
        raise DomainError(f"Zero denominator in {num}/0")
    return Fraction(num, den)


def in_unit_interval(x: Fraction) -> bool:
    """True iff 0 < x < 1 exactly"""
    return 0 < x < 1


def require_unit(x: Number) -> Fraction:
    """Return x as a Fraction, failing fast unless 0 < x < 1"""
    x = Fraction(x)
    if not in_unit_interval(x):
        raise DomainError(f"Argument {x} is outside the open unit interval")
    return x


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' (or an integer) that is already in lowest terms"""
    match = _FRACTION_RE.match(text or '')
    if not match:
        raise DomainError(f"Malformed fraction {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"Zero denominator in {text!r}")
    if math.gcd(num, den) != 1:
        raise DomainError(f"Fraction {text!r} is not in lowest terms")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _mpf_to_fraction(value) -> Fraction:
    p, q = to_rational(value)
    return Fraction(p, q)


def _magnitude(value) -> int:
    """Exponent e with |value| < 2**e (0 for zero)"""
    if value == fzero:
        return 0
    sign, man, exp, bc = value
    return exp + bc


def _decimal_exponent(a: Fraction) -> int:
    """floor(log10(a)) for a > 0"""
    e = int((a.numerator.bit_length() - a.denominator.bit_length()) * 0.30102999566398120)
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    return e


def format_fixed_truncated(value: Fraction, digits: int) -> str:
    """Fixed-point string with `digits` fractional digits, truncated toward zero"""
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    sign = '-' if value < 0 and scaled != 0 else ''
    if digits == 0:
        return f"{sign}{scaled}"
    int_part, frac_part = divmod(scaled, 10 ** digits)
    return f"{sign}{int_part}.{frac_part:0{digits}d}"


def format_scientific(value: Fraction, sig: int, upward: bool) -> str:
    """Scientific string with `sig` significant digits, rounded toward +inf if upward else -inf"""
    if value == 0:
        return "0"
    negative = value < 0
    magnitude = abs(value)
    # rounding the signed value upward shrinks a negative magnitude
    ceil_magnitude = upward != negative
    e = _decimal_exponent(magnitude)
    scaled = magnitude * Fraction(10) ** (sig - 1 - e)
    m = math.ceil(scaled) if ceil_magnitude else math.floor(scaled)
    if m == 10 ** sig:
        m //= 10
        e += 1
    digits = str(m)
    mantissa = digits[0] + ('.' + digits[1:] if sig > 1 else '')
    return f"{'-' if negative else ''}{mantissa}e{e}"


@dataclass(frozen=True)
class RInterval:
    """
    Closed interval [lo, hi] of binary floating-point endpoints that is guaranteed to contain
    the real number it stands for. Endpoints are raw mpmath mpf tuples; every operation rounds
    lo toward -inf and hi toward +inf at the operands' precision.

    Width growth per operation (w = width, u = one ulp at the working precision):
      add/sub: w(a) + w(b) + 2u
      mul:     |a| w(b) + |b| w(a) + w(a) w(b) + 2u
      div:     bounded by the mul rule applied to a * (1/b) with 1/b monotone on b
      neg/abs: w(a)
      log/exp: Lipschitz constant on [lo, hi] times w(a) + 2u; at most 4u for point inputs
    """

    lo: tuple
    hi: tuple
    prec: int = DEFAULT_PREC_BITS

    def __post_init__(self):
        if fnan in (self.lo, self.hi):
            raise PrecisionExhausted("Interval endpoint is NaN")
        if mpf_lt(self.hi, self.lo):
            raise ValueError("Interval lower endpoint exceeds upper endpoint")

    # -- constructors -----------------------------------------------------------------------

    @classmethod
    def from_rational(cls, value: Number, prec: int = DEFAULT_PREC_BITS) -> 'RInterval':
        value = Fraction(value)
        p, q = value.numerator, value.denominator
        return cls(from_rational(p, q, prec, round_floor), from_rational(p, q, prec, round_ceiling), prec)

    @classmethod
    def from_bounds(cls, lo: Number, hi: Number, prec: int = DEFAULT_PREC_BITS) -> 'RInterval':
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise DomainError(f"Empty interval [{lo}, {hi}]")
        return cls(
            from_rational(lo.numerator, lo.denominator, prec, round_floor),
            from_rational(hi.numerator, hi.denominator, prec, round_ceiling),
            prec,
        )

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC_BITS) -> 'RInterval':
        lo, hi = mpi_pi(prec)
        return cls(lo, hi, prec)

    @classmethod
    def e(cls, prec: int = DEFAULT_PREC_BITS) -> 'RInterval':
        lo, hi = mpi_exp((fone, fone), prec)
        return cls(lo, hi, prec)

    # -- helpers ----------------------------------------------------------------------------

    def _pair(self):
        return self.lo, self.hi

    def _coerce(self, other) -> 'RInterval':
        if isinstance(other, RInterval):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RInterval.from_rational(other, self.prec)
        return NotImplemented

    def _wrap(self, pair, prec) -> 'RInterval':
        lo, hi = pair
        if fnan in (lo, hi):
            raise PrecisionExhausted("Interval operation produced NaN")
        return RInterval(lo, hi, prec)

    def _binary(self, other, fn):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self.prec, other.prec)
        return self._wrap(fn(self._pair(), other._pair(), prec), prec)

    def _elementary(self, fn, name: str) -> 'RInterval':
        result = fn(self._pair(), self.prec)
        if self.is_point() and not _within_ulps(result, self.prec, MAX_POINT_ULPS):
            logger.debug(f"{name} exceeded {MAX_POINT_ULPS} ulp at {self.prec} bits, retrying at {2 * self.prec}")
            result = fn(self._pair(), 2 * self.prec)
            if not _within_ulps(result, self.prec, MAX_POINT_ULPS):
                raise PrecisionExhausted(f"{name} could not meet the {MAX_POINT_ULPS} ulp width contract")
        return self._wrap(result, self.prec)

    # -- arithmetic -------------------------------------------------------------------------

    def __add__(self, other):
        return self._binary(other, mpi_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, mpi_sub)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        return self._binary(other, mpi_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.contains_zero():
            raise DomainError(f"Division by an interval containing zero: {other}")
        return self._binary(other, mpi_div)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return self._wrap(mpi_neg(self._pair(), self.prec), self.prec)

    def __abs__(self):
        return self._wrap(mpi_abs(self._pair(), self.prec), self.prec)

    def pow_int(self, n: int) -> 'RInterval':
        if n < 0:
            return 1 / self.pow_int(-n)
        return self._wrap(mpi_pow_int(self._pair(), n, self.prec), self.prec)

    def log(self) -> 'RInterval':
        if mpf_le(self.lo, fzero):
            raise DomainError(f"Logarithm of an interval touching zero or below: {self}")
        return self._elementary(mpi_log, 'log')

    def exp(self) -> 'RInterval':
        return self._elementary(mpi_exp, 'exp')

    def sqrt(self) -> 'RInterval':
        if mpf_lt(self.lo, fzero):
            raise DomainError(f"Square root of an interval with negative part: {self}")
        return self._elementary(mpi_sqrt, 'sqrt')

    def sin(self) -> 'RInterval':
        return self._elementary(lambda pair, prec: mpi_cos_sin(pair, prec)[1], 'sin')

    def cos(self) -> 'RInterval':
        return self._elementary(lambda pair, prec: mpi_cos_sin(pair, prec)[0], 'cos')

    def cos_sin(self) -> Tuple['RInterval', 'RInterval']:
        return self.cos(), self.sin()

    @classmethod
    def symmetric(cls, radius: 'RInterval') -> 'RInterval':
        """[-r, r] where r bounds |radius| from above"""
        bound = radius.magnitude_bound()
        return cls(mpf_neg(bound), bound, radius.prec)

    def magnitude_bound(self):
        """Raw mpf upper bound of |v| over the interval"""
        a, b = mpf_abs(self.lo), mpf_abs(self.hi)
        return b if mpf_le(a, b) else a

    def abs_at_most_pow2(self, k: int) -> bool:
        return mpf_le(self.magnitude_bound(), mpf_shift(fone, k))

    def with_prec(self, prec: int) -> 'RInterval':
        """Same enclosure, different working precision for subsequent operations"""
        return RInterval(self.lo, self.hi, prec)

    def widen(self, radius: Number) -> 'RInterval':
        """Enclosure of every point within `radius` of this interval"""
        radius = abs(Fraction(radius))
        return self + RInterval.from_bounds(-radius, radius, self.prec)

    # -- predicates -------------------------------------------------------------------------

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        if isinstance(value, RInterval):
            return mpf_le(self.lo, value.lo) and mpf_le(value.hi, self.hi)
        if isinstance(value, mpmath.mpf):
            raw = value._mpf_
            return mpf_le(self.lo, raw) and mpf_le(raw, self.hi)
        value = Fraction(value)
        return _mpf_to_fraction(self.lo) <= value <= _mpf_to_fraction(self.hi)

    def contains_zero(self) -> bool:
        return mpf_le(self.lo, fzero) and mpf_le(fzero, self.hi)

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def intersects(self, other: 'RInterval') -> bool:
        return mpf_le(self.lo, other.hi) and mpf_le(other.lo, self.hi)

    def intersection(self, other: 'RInterval') -> 'RInterval':
        if not self.intersects(other):
            raise DomainError(f"Disjoint intervals {self} and {other}")
        lo = self.lo if mpf_cmp(self.lo, other.lo) >= 0 else other.lo
        hi = self.hi if mpf_cmp(self.hi, other.hi) <= 0 else other.hi
        return RInterval(lo, hi, max(self.prec, other.prec))

    def strictly_below(self, other: 'RInterval') -> bool:
        """Every point of self is smaller than every point of other"""
        return mpf_lt(self.hi, other.lo)

    def width_at_most_pow2(self, k: int) -> bool:
        """True iff hi - lo <= 2**k, decided exactly"""
        return mpf_le(mpf_sub(self.hi, self.lo), mpf_shift(fone, k))

    # -- exact read-out ---------------------------------------------------------------------

    @property
    def lower(self) -> Fraction:
        return _mpf_to_fraction(self.lo)

    @property
    def upper(self) -> Fraction:
        return _mpf_to_fraction(self.hi)

    def width(self) -> Fraction:
        return _mpf_to_fraction(mpf_sub(self.hi, self.lo))

    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def margin_from_zero(self) -> Optional[Fraction]:
        """Distance from zero to the nearest endpoint, None when zero is inside"""
        if self.contains_zero():
            return None
        return min(abs(self.lower), abs(self.upper))

    def ulp(self) -> Fraction:
        """One unit in the last place at this precision for the larger endpoint (absolute below 1)"""
        mag = max(_magnitude(mpf_abs(self.lo)), _magnitude(mpf_abs(self.hi)), 0)
        return Fraction(2) ** (mag - self.prec)

    def lower_decimal(self, sig: int = 20) -> str:
        return format_scientific(self.lower, sig, upward=False)

    def upper_decimal(self, sig: int = 20) -> str:
        return format_scientific(self.upper, sig, upward=True)

    def truncate_mid(self, digits: int) -> str:
        return format_fixed_truncated(self.midpoint(), digits)

    def width_decimal(self) -> str:
        return format_scientific(self.width(), 2, upward=True)

    def __repr__(self):
        return f"RInterval([{to_str(self.lo, 20)}, {to_str(self.hi, 20)}], prec={self.prec})"

    __str__ = __repr__


def _within_ulps(pair, prec: int, count: int) -> bool:
    lo, hi = pair
    if fnan in pair or finf in pair or fninf in pair:
        return False
    mag = max(_magnitude(mpf_abs(lo)), _magnitude(mpf_abs(hi)), 0)
    return _mpf_to_fraction(mpf_sub(hi, lo)) <= count * Fraction(2) ** (mag - prec)


def point(value: Number, prec: int = DEFAULT_PREC_BITS) -> RInterval:
    return RInterval.from_rational(value, prec)


def bits_to_digits(prec: int) -> int:
    return int(prec * 0.30102999566398120)


def reduced_unit_rationals(max_den: int) -> List[Fraction]:
    """Every reduced p/q in (0, 1) with q <= max_den, ascending"""
    values = {Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q) if math.gcd(p, q) == 1}
    return sorted(values)
