"""
marshmallow schemas for every record the command line prints or reads.
Numbers leave as decimal strings or integer numerator/denominator pairs, never as binary floats.
"""

import json
from fractions import Fraction

from marshmallow import Schema, ValidationError, fields, post_load, pre_dump, validate, validates_schema

from baker_gamma.algebraic import AlgebraicNumber, IntPolynomial
from baker_gamma.periods import BakerPeriod, PeriodTerm
from baker_gamma.qcore import format_rational

# Significant digits for interval endpoints
ENDPOINT_DIGITS = 40


def dumps_json(payload) -> str:
    """Deterministic JSON text with a trailing newline"""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _enum_value(value):
    return value.value if value is not None else None


def _build_algebraic(minpoly, isolator) -> AlgebraicNumber:
    poly = IntPolynomial(tuple(minpoly))
    if poly.degree < 1 or poly != poly.primitive():
        raise ValidationError("minpoly must be a primitive polynomial of degree at least one", 'minpoly')
    if isolator[1] == 0 or isolator[3] == 0:
        raise ValidationError("isolator denominators must be non-zero", 'isolator')
    lo, hi = Fraction(isolator[0], isolator[1]), Fraction(isolator[2], isolator[3])
    if hi < lo:
        raise ValidationError("isolator must be an interval [a, b] with a <= b", 'isolator')
    if not poly.is_irreducible():
        raise ValidationError("minpoly must be irreducible over the rationals", 'minpoly')
    # a linear minpoly collapses the isolator to its root, so check containment first
    if poly.degree == 1 and not lo <= Fraction(-poly.coeffs[0], poly.coeffs[1]) <= hi:
        raise ValidationError("isolator must contain the root of minpoly", 'isolator')
    alpha = AlgebraicNumber(poly, lo, hi)
    if not alpha.isolates_single_root():
        raise ValidationError("isolator must contain exactly one root of minpoly", 'isolator')
    return alpha


class RIntervalSchema(Schema):
    """Directed decimal endpoints: lo rounded down, hi rounded up"""

    lo = fields.Function(lambda iv: iv.lower_decimal(ENDPOINT_DIGITS))
    hi = fields.Function(lambda iv: iv.upper_decimal(ENDPOINT_DIGITS))
    width = fields.Function(lambda iv: iv.width_decimal())
    prec_bits = fields.Integer(attribute='prec')


class AlgebraicNumberSchema(Schema):
    minpoly = fields.List(fields.Integer(), required=True, validate=validate.Length(min=2))
    isolator = fields.List(fields.Integer(), required=True, validate=validate.Length(equal=4))

    @pre_dump
    def flatten(self, obj, **kwargs):
        return obj.to_json() if isinstance(obj, AlgebraicNumber) else obj

    @post_load
    def make_number(self, data, **kwargs):
        return _build_algebraic(data['minpoly'], data['isolator'])


class PeriodTermSchema(Schema):
    beta_num = fields.Integer(required=True)
    beta_den = fields.Integer(required=True)
    minpoly = fields.List(fields.Integer(), required=True, validate=validate.Length(min=2))
    isolator = fields.List(fields.Integer(), required=True, validate=validate.Length(equal=4))

    @pre_dump
    def flatten(self, term, **kwargs):
        if not isinstance(term, PeriodTerm):
            return term
        return {'beta_num': term.beta.numerator, 'beta_den': term.beta.denominator, **term.alpha.to_json()}

    @validates_schema
    def check_beta(self, data, **kwargs):
        if data.get('beta_den') == 0:
            raise ValidationError("beta_den must be non-zero", 'beta_den')

    @post_load
    def make_term(self, data, **kwargs):
        beta = Fraction(data['beta_num'], data['beta_den'])
        return PeriodTerm(beta, _build_algebraic(data['minpoly'], data['isolator']))


class BakerPeriodSchema(Schema):
    terms = fields.List(fields.Nested(PeriodTermSchema), required=True)

    @post_load
    def make_period(self, data, **kwargs):
        return BakerPeriod(tuple(data['terms']))


class ResidualReportSchema(Schema):
    x_num = fields.Integer()
    x_den = fields.Integer()
    prec_bits = fields.Integer()
    residual_lo = fields.Function(lambda r: r.residual.lower_decimal(ENDPOINT_DIGITS))
    residual_hi = fields.Function(lambda r: r.residual.upper_decimal(ENDPOINT_DIGITS))
    residual_width = fields.Function(lambda r: r.residual.width_decimal())
    passed = fields.Boolean(data_key='pass')


class NullityVerdictSchema(Schema):
    kind = fields.Function(lambda v: v.kind.value)
    reason = fields.Function(lambda v: _enum_value(v.reason))
    witness = fields.Nested(RIntervalSchema, allow_none=True)
    prec_bits = fields.Integer()


class ClassificationSchema(Schema):
    """Result of `period diff` and `period check`"""

    x1 = fields.String()
    x2 = fields.String()
    classification = fields.Function(lambda c: c['classification'].value)
    period = fields.Nested(BakerPeriodSchema)
    nullity = fields.Nested(NullityVerdictSchema)


class PairVerdictSchema(Schema):
    x = fields.Function(lambda v: format_rational(v.x))
    y = fields.Function(lambda v: format_rational(v.y))
    kind = fields.Function(lambda v: v.kind.value)
    nullity = fields.Nested(NullityVerdictSchema, allow_none=True)


class ExceptionVerdictSchema(Schema):
    members = fields.Function(lambda v: [format_rational(m) for m in v.members])
    consistent = fields.Boolean()
    case = fields.Function(lambda v: _enum_value(v.case))
    log_pi_status = fields.Function(lambda v: v.log_pi_status.value)
    violation = fields.String(allow_none=True)
    failed_checks = fields.List(fields.String())
    uses = fields.List(fields.String())


class ImplicationReportSchema(Schema):
    y_num = fields.Function(lambda r: r.y.numerator)
    y_den = fields.Function(lambda r: r.y.denominator)
    premise = fields.String()
    conclusion = fields.String()
    k_minpoly = fields.Function(lambda r: r.k.minpoly.to_json())
    k_isolator = fields.Function(lambda r: r.k.isolator_ints())
    k_at_least_one = fields.Boolean()
    k_equals_one = fields.Boolean()
    k_enclosure = fields.Nested(RIntervalSchema)
    k_pi_e_enclosure = fields.Nested(RIntervalSchema)
    excludes_one = fields.Boolean()
    uses = fields.List(fields.String())


class SweepSummarySchema(Schema):
    max_den = fields.Integer()
    max_size = fields.Integer()
    total = fields.Integer()
    counts = fields.Dict(keys=fields.String(), values=fields.Integer())
    all_large_sets_inconsistent = fields.Boolean()
    patterns_match = fields.Boolean()
    criteria_agree = fields.Boolean()


class CheckResultSchema(Schema):
    name = fields.String()
    passed = fields.Boolean(data_key='pass')
    prec_bits = fields.Integer(allow_none=True)
    summary = fields.String()
    details = fields.List(fields.Raw())


class ScanSummarySchema(Schema):
    out = fields.String()
    rows = fields.Integer()
    prec_bits = fields.Integer()
    min_x = fields.Function(lambda s: format_rational(s.min_x))
    min_f_mid = fields.String()


class EvalValueSchema(Schema):
    """Truncated midpoint plus directed endpoints for one evaluated quantity"""

    mid = fields.Method('dump_mid')
    width = fields.Function(lambda iv: iv.width_decimal())
    lo = fields.Function(lambda iv: iv.lower_decimal(ENDPOINT_DIGITS))
    hi = fields.Function(lambda iv: iv.upper_decimal(ENDPOINT_DIGITS))

    def __init__(self, digits: int = 50, **kwargs):
        super().__init__(**kwargs)
        self.digits = digits

    def dump_mid(self, iv):
        return iv.truncate_mid(self.digits)
