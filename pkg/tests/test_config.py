import pytest
import logging
import sys
import os

# Add the package directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from baker_gamma.config import ArgumentContextFilter, Config, configure_logging
from baker_gamma.exceptions import ConfigError

ENV_KEYS = ['BG_PREC_BITS', 'BG_DIGITS', 'BG_SCAN_WORKERS', 'BG_EXACT_SINE_MAX_DEN', 'BG_EVAL_MODE',
            'LOG_LEVEL', 'BG_LOG_FILE']


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    yield
    package_logger = logging.getLogger('baker_gamma')
    for handler in package_logger.handlers:
        handler.close()
    package_logger.handlers.clear()
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)


class TestConfig:
    """Test environment-driven configuration"""

    def test_defaults(self):
        config = Config().validate()
        assert config.PREC_BITS == 3456
        assert config.DIGITS == 50
        assert config.SCAN_WORKERS == 1
        assert config.EXACT_SINE_MAX_DEN == 512
        assert config.EVAL_MODE == 'fast'
        assert config.LOG_LEVEL == 'WARNING'
        assert config.LOG_FILE is None

    def test_overrides(self, monkeypatch):
        monkeypatch.setenv('BG_PREC_BITS', '256')
        monkeypatch.setenv('BG_SCAN_WORKERS', '-1')
        monkeypatch.setenv('BG_EVAL_MODE', 'Verify')
        config = Config().validate()
        assert config.PREC_BITS == 256
        assert config.SCAN_WORKERS == -1
        assert config.EVAL_MODE == 'verify'

    def test_blank_value_uses_default(self, monkeypatch):
        monkeypatch.setenv('BG_DIGITS', '  ')
        assert Config().DIGITS == 50

    def test_non_integer(self, monkeypatch):
        monkeypatch.setenv('BG_DIGITS', 'ten')
        with pytest.raises(ConfigError):
            Config()

    @pytest.mark.parametrize("key,value", [
        ('BG_PREC_BITS', '32'),
        ('BG_DIGITS', '0'),
        ('BG_SCAN_WORKERS', '0'),
        ('BG_EXACT_SINE_MAX_DEN', '0'),
        ('BG_EVAL_MODE', 'careful'),
        ('LOG_LEVEL', 'LOUD'),
    ])
    def test_validate_rejects(self, monkeypatch, key, value):
        monkeypatch.setenv(key, value)
        with pytest.raises(ConfigError):
            Config().validate()


class TestLogging:
    """Test logger setup"""

    def test_filter_default(self):
        record = logging.LogRecord('baker_gamma', logging.INFO, __file__, 1, 'message', None, None)
        assert ArgumentContextFilter().filter(record)
        assert record.x == 'N/A'

    def test_filter_keeps_argument(self):
        record = logging.LogRecord('baker_gamma', logging.INFO, __file__, 1, 'message', None, None)
        record.x = '1/3'
        ArgumentContextFilter().filter(record)
        assert record.x == '1/3'

    def test_configure(self):
        config = Config()
        config.LOG_LEVEL = 'debug'
        package_logger = configure_logging(config)
        assert package_logger.level == logging.DEBUG
        assert not package_logger.propagate
        assert len(package_logger.handlers) == 1

    def test_file_handler(self, tmp_path):
        config = Config()
        config.LOG_LEVEL = 'INFO'
        config.LOG_FILE = str(tmp_path / "toolkit.log")
        package_logger = configure_logging(config)
        logging.getLogger('baker_gamma.gammaeval').info("evaluated", extra={'x': '1/4'})
        for handler in package_logger.handlers:
            handler.flush()
        text = (tmp_path / "toolkit.log").read_text()
        assert '[x:1/4] evaluated' in text
