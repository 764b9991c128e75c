"""
baker-gamma: exact and interval toolkit for log Gamma(x) + log Gamma(1-x) at rational x
"""

__version__ = "0.1.0"


def create_toolkit(log_level=None):
    """Load the environment, validate configuration and set up logging"""
    # Load environment variables from .env file
    from dotenv import load_dotenv
    load_dotenv()

    from baker_gamma.config import Config, configure_logging
    config = Config()
    if log_level:
        config.LOG_LEVEL = log_level
    config.validate()
    configure_logging(config)
    return config
