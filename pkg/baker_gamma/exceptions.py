"""
Exception hierarchy for the baker-gamma toolkit
"""


class BakerGammaError(Exception):
    """Base class for every error raised by the toolkit"""


class DomainError(BakerGammaError, ValueError):
    """An argument lies outside the domain of the requested operation"""


class PrecisionExhausted(BakerGammaError, ArithmeticError):
    """A retry ladder ran out of precision before meeting its width contract"""


class DisagreementError(BakerGammaError, RuntimeError):
    """Two independent evaluation routes produced disjoint enclosures"""


class ConfigError(BakerGammaError, ValueError):
    """Invalid configuration value"""
