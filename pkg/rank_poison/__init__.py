"""
Reward-poisoning attacks on online learning to rank under binary click feedback.
"""
from .core.config import settings
from .core.logger import get_logger, setup_logging

__version__ = settings.APP_VERSION

__all__ = ["__version__", "get_logger", "settings", "setup_logging"]
