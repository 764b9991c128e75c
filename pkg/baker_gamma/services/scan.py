import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import pandas as pd
from joblib import Parallel, delayed

from baker_gamma.exceptions import DomainError
from baker_gamma.gammaeval import DEFAULT_EXACT_SINE_MAX_DEN, GammaEvaluator
from baker_gamma.qcore import DEFAULT_PREC_BITS, RInterval, require_unit

SCAN_COLUMNS = ['x_num', 'x_den', 'f_mid', 'f_width']


@dataclass
class ScanSummary:
    out: str
    rows: int
    prec_bits: int
    min_x: Fraction
    min_f_mid: str


def grid(start: Fraction, stop: Fraction, steps: int) -> List[Fraction]:
    """steps + 1 exact rationals from start to stop inclusive"""
    start, stop = require_unit(start), require_unit(stop)
    if not start < stop:
        raise DomainError(f"Scan range must satisfy from < to, got {start} >= {stop}")
    if steps < 2:
        raise DomainError(f"A scan needs at least 2 steps, got {steps}")
    step = (stop - start) / steps
    return [start + i * step for i in range(steps + 1)]


def _scan_row(x: Fraction, prec: int, exact_sine_max_den: int, verify: bool) -> Tuple[Fraction, RInterval]:
    """Worker for one grid point; runs in a joblib worker"""
    evaluator = GammaEvaluator(exact_sine_max_den, verify)
    return x, evaluator.f_eval(x, prec)


class ScanService:
    """
    Sample f on an exact rational grid and write the curve as CSV.
    Rows are evaluated in parallel and written in grid order.
    """

    def __init__(self, prec: int = DEFAULT_PREC_BITS, digits: int = 50, n_jobs: int = 1,
                 exact_sine_max_den: int = DEFAULT_EXACT_SINE_MAX_DEN, verify: bool = False):
        self.logger = logging.getLogger(__name__)
        self.prec = prec
        self.digits = digits
        self.n_jobs = n_jobs
        self.exact_sine_max_den = exact_sine_max_den
        self.verify = verify

    def evaluate(self, points: List[Fraction]) -> List[Tuple[Fraction, RInterval]]:
        self.logger.info(f"Evaluating f at {len(points)} points with n_jobs={self.n_jobs}")
        return Parallel(n_jobs=self.n_jobs)(
            delayed(_scan_row)(x, self.prec, self.exact_sine_max_den, self.verify) for x in points
        )

    def to_frame(self, results: List[Tuple[Fraction, RInterval]]) -> pd.DataFrame:
        """String-typed table with truncated midpoints and rounded-up widths"""
        rows = [{
            'x_num': str(x.numerator),
            'x_den': str(x.denominator),
            'f_mid': value.truncate_mid(self.digits),
            'f_width': value.width_decimal(),
        } for x, value in results]
        return pd.DataFrame(rows, columns=SCAN_COLUMNS, dtype=str)

    def scan(self, start: Fraction, stop: Fraction, steps: int, out: str) -> ScanSummary:
        """Evaluate f on the grid and write the CSV; OSError propagates when `out` is unwritable"""
        points = grid(start, stop, steps)
        results = self.evaluate(points)
        frame = self.to_frame(results)

        try:
            frame.to_csv(out, index=False, lineterminator="\n", encoding="utf-8")
        except OSError as e:
            self.logger.error(f"Could not write scan to {out}: {str(e)}")
            raise

        min_x, min_value = min(results, key=lambda row: row[1].midpoint())
        summary = ScanSummary(out, len(frame), self.prec, min_x, min_value.truncate_mid(self.digits))
        self.logger.info(f"Wrote {summary.rows} rows to {out}; minimum at x={min_x}")
        return summary


def load_scan(path: str) -> pd.DataFrame:
    """Read a scan CSV back with every column as text"""
    return pd.read_csv(path, dtype=str)
