# coulombxs/core/logging_config.py
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional


def setup_logging(level: str = "INFO", log_dir: Optional[str] = None):
    """
    Configure logging for the CLI: console on stderr, rotating files when a
    log directory is configured. stdout is reserved for emitted tables.
    """

    # Configure root logger
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Remove existing handlers to avoid duplicates
    logger.handlers = []

    # ==========================================
    # 1. CONSOLE HANDLER (stderr)
    # ==========================================
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logger.level)
    console_format = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_handler.setFormatter(console_format)
    logger.addHandler(console_handler)

    # ==========================================
    # 2. FILE HANDLERS (rotating, optional)
    # ==========================================
    if log_dir:
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)

        file_format = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        file_handler = RotatingFileHandler(
            os.path.join(log_dir, 'coulombxs.log'),
            maxBytes=10485760,  # 10MB per file
            backupCount=5
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_format)

        # Errors only
        error_file_handler = RotatingFileHandler(
            os.path.join(log_dir, 'error.log'),
            maxBytes=10485760,
            backupCount=5
        )
        error_file_handler.setLevel(logging.ERROR)
        error_file_handler.setFormatter(file_format)

        logger.addHandler(file_handler)
        logger.addHandler(error_file_handler)

    # ==========================================
    # 3. REDUCE NOISE FROM THIRD-PARTY LIBRARIES
    # ==========================================
    logging.getLogger('numpy').setLevel(logging.WARNING)
    logging.getLogger('scipy').setLevel(logging.WARNING)

    logger.debug("=" * 50)
    logger.debug("Logging system initialized")
    logger.debug("=" * 50)

    return logger
