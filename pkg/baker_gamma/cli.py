"""
Command-line front end: baker-gamma <minpoly|eval|scan|verify|exceptions|period|pie>

Exit codes: 0 pass/consistent, 1 fail/inconsistent, 2 usage error, 3 I/O error.
"""

import functools
import json
import logging
import math
import sys
from fractions import Fraction

import click
from marshmallow import ValidationError

from baker_gamma import __version__, create_toolkit
from baker_gamma.algebraic import minpoly_sin, refine
from baker_gamma.config import MIN_PREC_BITS
from baker_gamma.exceptions import BakerGammaError, ConfigError, DomainError
from baker_gamma.gammaeval import GammaEvaluator
from baker_gamma.periods import classify, f_difference, pair_classify
from baker_gamma.qcore import format_rational, parse_rational, require_unit
from baker_gamma.serializers import (
    BakerPeriodSchema, CheckResultSchema, ClassificationSchema, EvalValueSchema, ExceptionVerdictSchema,
    ImplicationReportSchema, PairVerdictSchema, ScanSummarySchema, dumps_json,
)
from baker_gamma.services.scan import ScanService
from baker_gamma.services.verification import VerificationService
from baker_gamma.theorems import HypotheticalExceptionSet, exception_set_analyze, pi_e_implication

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_IO = 3


class FractionParam(click.ParamType):
    """A reduced fraction p/q strictly between 0 and 1"""

    name = 'fraction'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return require_unit(parse_rational(value))
        except DomainError as e:
            self.fail(str(e), param, ctx)


FRACTION = FractionParam()

prec_option = click.option('--prec', type=click.IntRange(min=MIN_PREC_BITS), default=None,
                           help='Working precision in bits (default: BG_PREC_BITS or 3456).')
digits_option = click.option('--digits', type=click.IntRange(min=1), default=None,
                             help='Decimal digits for printed midpoints (default: BG_DIGITS or 50).')


def guarded(fn):
    """Map toolkit errors onto the exit-code contract"""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DomainError, ConfigError) as e:
            raise click.UsageError(str(e))
        except OSError as e:
            logger.error(f"I/O error: {str(e)}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_IO)
        except BakerGammaError as e:
            logger.error(f"{type(e).__name__}: {str(e)}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_FAIL)
    return wrapper


def emit(payload, code: int = EXIT_OK):
    click.echo(dumps_json(payload), nl=False)
    sys.exit(code)


def _settings(ctx, prec=None, digits=None):
    config = ctx.obj
    return (prec if prec is not None else config.PREC_BITS,
            digits if digits is not None else config.DIGITS)


def _evaluator(ctx, verify=None) -> GammaEvaluator:
    config = ctx.obj
    mode = config.EVAL_MODE == 'verify' if verify is None else verify
    return GammaEvaluator(config.EXACT_SINE_MAX_DEN, mode)


@click.group()
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], case_sensitive=False),
              help='Logging level for stderr (default: LOG_LEVEL or WARNING).')
@click.version_option(__version__, prog_name='baker-gamma')
@click.pass_context
def cli(ctx, log_level):
    """Exact and interval toolkit for f(x) = log Gamma(x) + log Gamma(1-x) at rational x."""
    try:
        ctx.obj = create_toolkit(log_level)
    except ConfigError as e:
        raise click.UsageError(str(e))


@cli.command()
@click.argument('x', type=FRACTION)
@digits_option
@click.pass_context
@guarded
def minpoly(ctx, x, digits):
    """Minimal polynomial and isolating interval of sin(pi x)."""
    _, digits = _settings(ctx, digits=digits)
    alpha = minpoly_sin(x)
    enclosure = refine(alpha, math.ceil(digits * math.log2(10)) + 16)
    emit({
        'x': format_rational(x),
        'minpoly': alpha.minpoly.to_json(),
        'isolator': alpha.isolator_ints(),
        'decimal': enclosure.truncate_mid(digits),
    })


@cli.command('eval')
@click.argument('x', type=FRACTION)
@prec_option
@digits_option
@click.option('--verify/--fast', 'verify', default=None,
              help='Also compute f through log Gamma and intersect (default: BG_EVAL_MODE).')
@click.pass_context
@guarded
def eval_command(ctx, x, prec, digits, verify):
    """Evaluate f, f', log Gamma(x), log Gamma(1-x) and log sin(pi x)."""
    prec, digits = _settings(ctx, prec, digits)
    evaluator = _evaluator(ctx, verify)
    value_schema = EvalValueSchema(digits)
    lg_x, lg_1mx = evaluator.log_gamma_pair(x, prec)
    emit({
        'x': format_rational(x),
        'prec_bits': prec,
        'mode': 'verify' if evaluator.verify else 'fast',
        'f': value_schema.dump(evaluator.f_eval(x, prec)),
        'f_prime': value_schema.dump(evaluator.f_prime(x, prec)),
        'log_gamma_x': value_schema.dump(lg_x),
        'log_gamma_1mx': value_schema.dump(lg_1mx),
        'log_sin_pi': value_schema.dump(evaluator.log_sin_pi(x, prec)),
    })


@cli.command()
@click.option('--from', 'start', type=FRACTION, required=True, help='First grid point.')
@click.option('--to', 'stop', type=FRACTION, required=True, help='Last grid point.')
@click.option('--steps', type=click.IntRange(min=2), required=True, help='Number of grid intervals.')
@click.option('--out', type=click.Path(dir_okay=False), required=True, help='CSV file to write.')
@prec_option
@digits_option
@click.option('--workers', type=int, default=None, help='joblib n_jobs (default: BG_SCAN_WORKERS).')
@click.option('--verify/--fast', 'verify', default=None)
@click.pass_context
@guarded
def scan(ctx, start, stop, steps, out, prec, digits, workers, verify):
    """Write f sampled on an exact rational grid as CSV."""
    config = ctx.obj
    prec, digits = _settings(ctx, prec, digits)
    evaluator = _evaluator(ctx, verify)
    service = ScanService(prec, digits, workers if workers is not None else config.SCAN_WORKERS,
                          evaluator.exact_sine_max_den, evaluator.verify)
    summary = service.scan(start, stop, steps, out)
    emit(ScanSummarySchema().dump(summary))


@cli.group()
@prec_option
@click.option('--workers', type=int, default=None, help='joblib n_jobs (default: BG_SCAN_WORKERS).')
@click.option('--seed', type=int, default=2024, show_default=True, help='Seed for random sample points.')
@click.pass_context
def verify(ctx, prec, workers, seed):
    """Run a certificate-producing check; exit 0 iff it passes."""
    config = ctx.obj
    prec, _ = _settings(ctx, prec)
    evaluator = _evaluator(ctx)
    ctx.meta['verification'] = VerificationService(
        prec, workers if workers is not None else config.SCAN_WORKERS,
        evaluator.exact_sine_max_den, evaluator.verify, seed,
    )


def _run_check(ctx, prec, name, *args):
    service = ctx.meta['verification']
    # a --prec given after the check name overrides the group option
    if prec is not None:
        service.prec = prec
    result = getattr(service, name)(*args)
    emit(CheckResultSchema().dump(result), EXIT_OK if result.passed else EXIT_FAIL)


@verify.command()
@prec_option
@click.pass_context
@guarded
def reflection(ctx, prec):
    """Reflection residual at the built-in sample arguments."""
    _run_check(ctx, prec, 'reflection')


@verify.command()
@prec_option
@click.pass_context
@guarded
def counterexample(ctx, prec):
    """f(1/4) = f(3/4) exactly and numerically."""
    _run_check(ctx, prec, 'counterexample')


@verify.command()
@prec_option
@click.option('--max-den', type=click.IntRange(min=2), default=12, show_default=True)
@click.pass_context
@guarded
def symmetry(ctx, prec, max_den):
    """f(x) and f(1-x) enclosures overlap."""
    _run_check(ctx, prec, 'symmetry', max_den)


@verify.command()
@prec_option
@click.option('--count', type=click.IntRange(min=2), default=50, show_default=True)
@click.pass_context
@guarded
def monotonic(ctx, prec, count):
    """Strict monotonicity on both half-intervals."""
    _run_check(ctx, prec, 'monotonic', count)


@verify.command()
@prec_option
@click.option('--count', type=click.IntRange(min=1), default=50, show_default=True)
@click.pass_context
@guarded
def derivative(ctx, prec, count):
    """f' against centered finite differences at random rationals."""
    _run_check(ctx, prec, 'derivative', count)


@verify.command()
@prec_option
@click.option('--steps', type=click.IntRange(min=2), default=100, show_default=True)
@click.pass_context
@guarded
def minimum(ctx, prec, steps):
    """f >= log pi with equality only at 1/2."""
    _run_check(ctx, prec, 'minimum', steps)


@verify.command()
@prec_option
@click.option('--max-den', type=click.IntRange(min=2), default=24, show_default=True)
@click.pass_context
@guarded
def nullity(ctx, prec, max_den):
    """Exact nullity law for f-difference periods."""
    _run_check(ctx, prec, 'nullity_law', max_den)


@verify.command()
@prec_option
@click.option('--max-den', type=click.IntRange(min=2), default=8, show_default=True)
@click.pass_context
@guarded
def witness(ctx, prec, max_den):
    """NonNull witnesses are sound."""
    _run_check(ctx, prec, 'witness_soundness', max_den)


@verify.command()
@prec_option
@click.option('--max-den', type=click.IntRange(min=2), default=8, show_default=True)
@click.option('--max-size', type=click.IntRange(min=0), default=3, show_default=True)
@click.pass_context
@guarded
def trichotomy(ctx, prec, max_den, max_size):
    """Exhaustive sweep of hypothetical exception sets."""
    _run_check(ctx, prec, 'trichotomy', max_den, max_size)


@verify.command()
@prec_option
@click.option('--max-den', type=click.IntRange(min=2), default=100, show_default=True)
@click.pass_context
@guarded
def appendix(ctx, prec, max_den):
    """Only 1/2 is a self-symmetric single exception."""
    _run_check(ctx, prec, 'appendix', max_den)


@cli.command()
@click.option('--set', 'members', default='', show_default=True,
              help='Comma-separated reduced fractions, e.g. "1/3,2/3".')
@click.pass_context
@guarded
def exceptions(ctx, members):
    """Analyze a hypothetical exception set."""
    verdict = exception_set_analyze(HypotheticalExceptionSet.parse(members))
    emit(ExceptionVerdictSchema().dump(verdict), EXIT_OK if verdict.consistent else EXIT_FAIL)


@cli.group()
def period():
    """Baker periods built from f-differences."""


@period.command()
@click.argument('x1', type=FRACTION)
@click.argument('x2', type=FRACTION)
@prec_option
@click.pass_context
@guarded
def diff(ctx, x1, x2, prec):
    """Classify f(x2) - f(x1) = log sin(pi x1) - log sin(pi x2)."""
    prec, _ = _settings(ctx, prec)
    p = f_difference(x1, x2)
    classification, verdict = classify(p, prec)
    emit(ClassificationSchema().dump({
        'x1': format_rational(x1),
        'x2': format_rational(x2),
        'classification': classification,
        'period': p,
        'nullity': verdict,
    }))


@period.command()
@click.argument('x', type=FRACTION)
@click.argument('y', type=FRACTION)
@prec_option
@click.pass_context
@guarded
def pair(ctx, x, y, prec):
    """At least one of f(x), f(y) is transcendental unless y is x or 1 - x."""
    prec, _ = _settings(ctx, prec)
    emit(PairVerdictSchema().dump(pair_classify(x, y, prec)))


@period.command()
@click.argument('path', type=click.Path(dir_okay=False))
@prec_option
@click.pass_context
@guarded
def check(ctx, path, prec):
    """Load a period from JSON and classify it."""
    prec, _ = _settings(ctx, prec)
    with open(path, encoding='utf-8') as handle:
        try:
            p = BakerPeriodSchema().load(json.load(handle))
        except (ValidationError, json.JSONDecodeError) as e:
            raise click.UsageError(f"Invalid period file {path}: {e}")
    classification, verdict = classify(p, prec)
    emit(ClassificationSchema().dump({'classification': classification, 'period': p, 'nullity': verdict}))


@cli.command()
@click.argument('y', type=FRACTION)
@prec_option
@click.pass_context
@guarded
def pie(ctx, y, prec):
    """If f(y) is algebraic then pi*e is transcendental."""
    prec, _ = _settings(ctx, prec)
    report = pi_e_implication(y, prec)
    emit(ImplicationReportSchema().dump(report), EXIT_OK if report.supported else EXIT_FAIL)


def main():
    cli(prog_name='baker-gamma')


if __name__ == '__main__':
    main()
