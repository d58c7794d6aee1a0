"""
Logging configuration.
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from ..core.config import settings

# Configure logging format
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Configure the root logger with a console handler and an optional file handler.

    Args:
        level: Log level name; falls back to ``settings.LOG_LEVEL``.
        log_file: Path of a log file; falls back to ``settings.LOG_FILE``. No file
            handler is installed when both are empty.
    """
    # Clear any existing handlers
    root_logger = logging.getLogger()
    root_logger.handlers = []

    # Set the log level
    level_name = (level or settings.LOG_LEVEL).upper()
    numeric_level = getattr(logging, level_name, None)
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    root_logger.setLevel(numeric_level)

    # Create formatter
    formatter = logging.Formatter(LOG_FORMAT)

    # Console handler; stdout is reserved for resolved specs and digests
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    # File handler
    log_path = log_file or settings.LOG_FILE
    if log_path:
        Path(log_path).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """Get a logger for a specific module.

    Args:
        name: The name of the module (usually __name__)

    Returns:
        A configured logger instance
    """
    logger = logging.getLogger(name)
    return logger
