"""
Integer polynomials, cyclotomic polynomials and real algebraic numbers
Provides the algebraicity witness for sin(pi*p/q): its minimal polynomial and an isolating interval
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from baker_gamma.exceptions import DomainError, PrecisionExhausted
from baker_gamma.qcore import RInterval, require_unit, format_rational

logger = logging.getLogger(__name__)

_X = sympy.Symbol('x')

# Precision ladder used to pick the vanishing factor and to isolate its root
SELECTION_START_PREC = 64
SELECTION_MAX_PREC = 1 << 16


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first"""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def x_power_minus_one(cls, n: int) -> 'IntPolynomial':
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> 'IntPolynomial':
        """Divide out the content and make the leading coefficient positive"""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'IntPolynomial':
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def exact_quotient(self, divisor: 'IntPolynomial') -> 'IntPolynomial':
        """Quotient of an exact division over the integers"""
        if divisor.is_zero():
            raise DomainError("Polynomial division by zero")
        remainder = list(self.coeffs)
        lead = divisor.leading
        dd = divisor.degree
        quotient = [0] * max(len(remainder) - dd, 0)
        for shift in range(len(remainder) - dd - 1, -1, -1):
            top = remainder[shift + dd]
            if top % lead:
                raise DomainError(f"{divisor} does not divide {self} over the integers")
            factor = top // lead
            quotient[shift] = factor
            if factor:
                for i, c in enumerate(divisor.coeffs):
                    remainder[shift + i] -= factor * c
        if any(remainder):
            raise DomainError(f"{divisor} does not divide {self}")
        return IntPolynomial(tuple(quotient))

    def scale_variable(self, c: int) -> 'IntPolynomial':
        """p(c*x)"""
        return IntPolynomial(tuple(a * c ** i for i, a in enumerate(self.coeffs)))

    def reversed(self) -> 'IntPolynomial':
        """x^deg * p(1/x)"""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Sign of p(x), computed with integers only"""
        if self.is_zero():
            return 0
        x = Fraction(x)
        m, s = x.numerator, x.denominator
        # homogeneous Horner: sum c_i m^i s^(d-i) has the sign of p(m/s) because s > 0
        acc = self.coeffs[-1]
        s_power = 1
        for c in reversed(self.coeffs[:-1]):
            s_power *= s
            acc = acc * m + c * s_power
        return (acc > 0) - (acc < 0)

    def evaluate_interval(self, x: RInterval) -> RInterval:
        acc = RInterval.from_rational(self.leading, x.prec)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)), _X, domain='ZZ')

    def is_irreducible(self) -> bool:
        """Irreducible over the rationals"""
        return self.degree >= 1 and bool(self.to_sympy().is_irreducible)

    def gcd(self, other: 'IntPolynomial') -> 'IntPolynomial':
        common = sympy.gcd(self.to_sympy(), other.to_sympy())
        return IntPolynomial(tuple(int(c) for c in reversed(common.all_coeffs()))).primitive()

    def count_roots(self, a: Fraction, b: Fraction) -> int:
        """Number of distinct real roots in the closed interval [a, b]"""
        if a == b:
            return int(self.sign_at(a) == 0)
        poly = self.to_sympy()
        return int(poly.count_roots(sympy.Rational(a.numerator, a.denominator),
                                    sympy.Rational(b.numerator, b.denominator)))

    def to_json(self) -> List[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> 'IntPolynomial':
        return cls(tuple(int(c) for c in data))

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "x" if mag == 1 else f"{mag}x"}.get(i, f"x^{i}" if mag == 1 else f"{mag}x^{i}")
            terms.append(('-' if c < 0 else '+', body))
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by dividing x^n - 1 by the lower cyclotomic factors"""
    if n < 1:
        raise DomainError(f"Cyclotomic index must be positive, got {n}")
    poly = IntPolynomial.x_power_minus_one(n)
    for d in sympy.divisors(n)[:-1]:
        poly = poly.exact_quotient(cyclotomic(d))
    return poly


@lru_cache(maxsize=None)
def folded_cyclotomic(n: int) -> IntPolynomial:
    """
    Minimal polynomial of 2cos(2*pi/n): Psi_n with Phi_n(z) = z^(phi(n)/2) * Psi_n(z + 1/z)
    """
    if n < 1:
        raise DomainError(f"Cyclotomic index must be positive, got {n}")
    if n == 1:
        return IntPolynomial((-2, 1))
    if n == 2:
        return IntPolynomial((2, 1))
    phi = cyclotomic(n).coeffs
    half = (len(phi) - 1) // 2
    y = IntPolynomial((0, 1))
    # Dickson polynomials D_k(y) = z^k + z^-k
    d_prev, d_cur = IntPolynomial((2,)), y
    result = IntPolynomial((phi[half],))
    for k in range(1, half + 1):
        result = result + d_cur * phi[half + k]
        d_prev, d_cur = d_cur, d_cur * y - d_prev
    return result


@lru_cache(maxsize=None)
def sine_candidates(q: int) -> Tuple[IntPolynomial, ...]:
    """
    Irreducible factors of the folded relation satisfied by sin(pi*p/q) = cos(2*pi*(q-2p)/(4q)):
    the polynomials Psi_d(2t), d | 4q, made primitive
    """
    return tuple(folded_cyclotomic(d).scale_variable(2).primitive() for d in sympy.divisors(4 * q))


@dataclass(frozen=True)
class AlgebraicNumber:
    """Real algebraic number: irreducible primitive minimal polynomial plus an isolating interval"""

    minpoly: IntPolynomial
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if self.hi < self.lo:
            raise DomainError(f"Empty isolator [{self.lo}, {self.hi}]")
        if self.minpoly.degree < 1:
            raise DomainError("A minimal polynomial has degree at least one")
        # rational values collapse to an exact point isolator
        if self.minpoly.degree == 1 and self.lo != self.hi:
            root = Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])
            object.__setattr__(self, 'lo', root)
            object.__setattr__(self, 'hi', root)

    @classmethod
    def from_rational(cls, value) -> 'AlgebraicNumber':
        value = Fraction(value)
        poly = IntPolynomial((-value.numerator, value.denominator)).primitive()
        return cls(poly, value, value)

    @property
    def isolator(self) -> Tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is irrational")
        return self.lo

    def isolates_single_root(self) -> bool:
        return self.minpoly.count_roots(self.lo, self.hi) == 1

    def bisect(self) -> 'AlgebraicNumber':
        """Halve the isolator, keeping the half that holds the root"""
        if self.lo == self.hi:
            return self
        p = self.minpoly
        mid = (self.lo + self.hi) / 2
        s_mid = p.sign_at(mid)
        if s_mid == 0:
            return AlgebraicNumber(p, mid, mid)
        s_lo = p.sign_at(self.lo)
        if s_lo == 0:
            return AlgebraicNumber(p, self.lo, self.lo)
        if s_lo != s_mid:
            return AlgebraicNumber(p, self.lo, mid)
        return AlgebraicNumber(p, mid, self.hi)

    def refined(self, width: Fraction) -> 'AlgebraicNumber':
        """Bisect until the isolator is no wider than `width`"""
        if width <= 0:
            raise DomainError(f"Refinement width must be positive, got {width}")
        current = self
        while current.hi - current.lo > width:
            current = current.bisect()
        return current

    def excluding(self, value: Fraction) -> 'AlgebraicNumber':
        """Bisect until `value` is outside the isolator; self must not equal `value`"""
        current = self
        while current.lo <= value <= current.hi:
            if current.lo == current.hi:
                raise DomainError(f"{self} equals {value}")
            current = current.bisect()
        return current

    def reciprocal(self) -> 'AlgebraicNumber':
        if alg_compare_rational(self, Fraction(0)) == 0:
            raise DomainError("Zero has no reciprocal")
        clear = self.excluding(Fraction(0))
        return AlgebraicNumber(clear.minpoly.reversed().primitive(), 1 / clear.hi, 1 / clear.lo)

    def isolator_ints(self) -> List[int]:
        return [self.lo.numerator, self.lo.denominator, self.hi.numerator, self.hi.denominator]

    def to_json(self) -> Dict:
        return {'minpoly': self.minpoly.to_json(), 'isolator': self.isolator_ints()}

    def __str__(self):
        if self.is_rational():
            return format_rational(self.lo)
        return f"root of {self.minpoly} in [{format_rational(self.lo)}, {format_rational(self.hi)}]"


def direct_sin_pi(x: Fraction, prec: int) -> RInterval:
    """Enclosure of sin(pi*x) by interval trigonometry"""
    return (RInterval.pi(prec + 16) * Fraction(x)).sin().with_prec(prec)


def _isolate(poly: IntPolynomial, target: RInterval) -> Optional[Tuple[Fraction, Fraction]]:
    if poly.degree == 1:
        root = Fraction(-poly.coeffs[0], poly.coeffs[1])
        return root, root
    lo, hi = target.lower, target.upper
    if poly.count_roots(lo, hi) == 1:
        return lo, hi
    return None


@lru_cache(maxsize=4096)
def minpoly_sin(x: Fraction) -> AlgebraicNumber:
    """sin(pi*x) for rational 0 < x < 1 as an AlgebraicNumber"""
    x = require_unit(x)
    candidates = sine_candidates(x.denominator)
    prec = SELECTION_START_PREC
    while prec <= SELECTION_MAX_PREC:
        target = direct_sin_pi(x, prec)
        vanishing = [c for c in candidates if c.evaluate_interval(target).contains_zero()]
        if len(vanishing) == 1:
            isolator = _isolate(vanishing[0], target)
            if isolator is not None:
                logger.debug(f"sin(pi*{x}) has minimal polynomial {vanishing[0]} (selected at {prec} bits)",
                             extra={'x': format_rational(x)})
                return AlgebraicNumber(vanishing[0], *isolator)
        logger.debug(f"{len(vanishing)} candidate factors vanish at {prec} bits, doubling precision",
                     extra={'x': format_rational(x)})
        prec *= 2
    raise PrecisionExhausted(f"Could not select the minimal polynomial of sin(pi*{x})")


def alg_equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """True iff a and b are the same real number"""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    # a root inside both isolators is the unique root of each
    if a.minpoly == b.minpoly:
        return a.minpoly.count_roots(lo, hi) > 0
    common = a.minpoly.gcd(b.minpoly)
    return common.degree >= 1 and common.count_roots(lo, hi) > 0


def alg_compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """-1, 0 or 1 as a < b, a == b, a > b"""
    if alg_equal(a, b):
        return 0
    if a.lo == a.hi:
        return -alg_compare_rational(b, a.lo)
    if b.lo == b.hi:
        return alg_compare_rational(a, b.lo)
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.lo == a.hi or b.lo == b.hi:
            return alg_compare(a, b)
        if a.hi - a.lo >= b.hi - b.lo:
            a = a.bisect()
        else:
            b = b.bisect()


def alg_compare_rational(a: AlgebraicNumber, value: Fraction) -> int:
    """-1, 0 or 1 as a < value, a == value, a > value"""
    value = Fraction(value)
    if a.lo <= value <= a.hi and a.minpoly.sign_at(value) == 0:
        return 0
    clear = a.excluding(value)
    return -1 if clear.hi < value else 1


def refine(a: AlgebraicNumber, prec: int) -> RInterval:
    """Enclosure of a with width at most 2**(1 - prec)"""
    narrow = a.refined(Fraction(1, 1 << prec))
    magnitude = max(abs(narrow.lo), abs(narrow.hi))
    guard = math.ceil(magnitude).bit_length() + 4
    try:
        enclosure = RInterval.from_bounds(narrow.lo, narrow.hi, prec + guard)
    except DomainError as e:
        raise PrecisionExhausted(f"Refinement of {a} failed: {e}")
    if not enclosure.width_at_most_pow2(1 - prec):
        raise PrecisionExhausted(f"Refinement of {a} did not reach width 2^{1 - prec}")
    return enclosure.with_prec(prec)
