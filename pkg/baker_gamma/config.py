import os
import logging
from logging.handlers import RotatingFileHandler
import sys

from baker_gamma.exceptions import ConfigError

MIN_PREC_BITS = 64
EVAL_MODES = ('fast', 'verify')


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


class Config:
    """Configuration for the baker-gamma toolkit, read from the environment"""

    def __init__(self):
        # Working precision in bits (3456 bits is roughly 1040 decimal digits)
        self.PREC_BITS = _env_int('BG_PREC_BITS', 3456)

        # Decimal digits printed for midpoints
        self.DIGITS = _env_int('BG_DIGITS', 50)

        # joblib n_jobs for scans and sweeps
        self.SCAN_WORKERS = _env_int('BG_SCAN_WORKERS', 1)

        # sin(pi*p/q) comes from the exact algebraic root up to this denominator
        self.EXACT_SINE_MAX_DEN = _env_int('BG_EXACT_SINE_MAX_DEN', 512)

        self.EVAL_MODE = os.environ.get('BG_EVAL_MODE', 'fast').strip().lower()

        # Logging configuration
        self.LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')
        self.LOG_FILE = os.environ.get('BG_LOG_FILE')

    def validate(self):
        """Reject values the numeric kernel cannot work with"""
        if self.PREC_BITS < MIN_PREC_BITS:
            raise ConfigError(f"BG_PREC_BITS must be at least {MIN_PREC_BITS}, got {self.PREC_BITS}")
        if self.DIGITS < 1:
            raise ConfigError(f"BG_DIGITS must be positive, got {self.DIGITS}")
        if self.SCAN_WORKERS == 0:
            raise ConfigError("BG_SCAN_WORKERS must be non-zero")
        if self.EXACT_SINE_MAX_DEN < 1:
            raise ConfigError(f"BG_EXACT_SINE_MAX_DEN must be positive, got {self.EXACT_SINE_MAX_DEN}")
        if self.EVAL_MODE not in EVAL_MODES:
            raise ConfigError(f"BG_EVAL_MODE must be one of {EVAL_MODES}, got {self.EVAL_MODE!r}")
        if not hasattr(logging, self.LOG_LEVEL.upper()):
            raise ConfigError(f"Unknown LOG_LEVEL {self.LOG_LEVEL!r}")
        return self


class ArgumentContextFilter(logging.Filter):
    """Give records logged without extra={'x': ...} a placeholder argument"""

    def filter(self, record):
        if not hasattr(record, 'x'):
            record.x = 'N/A'
        return True


def configure_logging(config):
    """Configure logging for command-line runs; stdout stays reserved for command output"""

    log_level = getattr(logging, config.LOG_LEVEL.upper())

    # Every record carries the evaluation argument it belongs to
    formatter = logging.Formatter(
        '%(asctime)s %(levelname)s [%(name)s] [x:%(x)s] %(message)s'
    )

    package_logger = logging.getLogger('baker_gamma')
    package_logger.setLevel(log_level)
    package_logger.handlers.clear()
    package_logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(ArgumentContextFilter())
    package_logger.addHandler(console_handler)

    if config.LOG_FILE:
        try:
            file_handler = RotatingFileHandler(
                config.LOG_FILE,
                maxBytes=10485760,  # 10MB
                backupCount=3
            )
            file_handler.setFormatter(formatter)
            file_handler.addFilter(ArgumentContextFilter())
            file_handler.setLevel(log_level)
            package_logger.addHandler(file_handler)
        except OSError as e:
            package_logger.warning(f"Could not create file handler: {e}")

    package_logger.debug("Logging configured")
    return package_logger
