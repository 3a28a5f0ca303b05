"""
Centralized Logger Utility
Provides structured logging for the FairRank library, CLI and tests
"""

import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Optional

from config.config import LOGGING_CONFIG


class FairRankLogger:
    """Process-wide logger for FairRank"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self.logger = None
        self.log_file = None
        self._setup_logger()

    def _setup_logger(self):
        """Setup logger with console and (optional) file handlers"""

        self.logger = logging.getLogger('FairRank')
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        if self.logger.handlers:
            self.logger.handlers.clear()

        detailed_formatter = logging.Formatter(
            LOGGING_CONFIG['file_format'],
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        simple_formatter = logging.Formatter(
            LOGGING_CONFIG['console_format'],
            datefmt='%H:%M:%S'
        )

        # Console goes to stderr so CLI output on stdout stays machine-readable
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(LOGGING_CONFIG['level'])
        console_handler.setFormatter(simple_formatter)
        self.logger.addHandler(console_handler)

        if LOGGING_CONFIG['file_logging']:
            try:
                log_dir = Path(LOGGING_CONFIG['dir'])
                log_dir.mkdir(parents=True, exist_ok=True)
                timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
                self.log_file = log_dir / f'fairrank_{timestamp}.log'

                file_handler = logging.FileHandler(self.log_file, encoding='utf-8')
                file_handler.setLevel(logging.DEBUG)
                file_handler.setFormatter(detailed_formatter)
                self.logger.addHandler(file_handler)
            except OSError as e:
                self.logger.warning(f"File logging disabled: {e}")
                self.log_file = None

        self.logger.debug(f"Logger initialized. Log file: {self.log_file}")

    def get_logger(self, name: Optional[str] = None) -> logging.Logger:
        """Get logger instance"""
        if name:
            return logging.getLogger(f'FairRank.{name}')
        return self.logger

    def log_test_start(self, test_name: str):
        self.logger.info("=" * 80)
        self.logger.info(f"TEST STARTED: {test_name}")
        self.logger.info("=" * 80)

    def log_test_end(self, test_name: str, status: str):
        self.logger.info("=" * 80)
        self.logger.info(f"TEST {status.upper()}: {test_name}")
        self.logger.info("=" * 80)

    def log_step(self, step_name: str):
        self.logger.info(f"STEP: {step_name}")

    def log_action(self, action: str, details: str = ""):
        if details:
            self.logger.info(f"ACTION: {action} | {details}")
        else:
            self.logger.info(f"ACTION: {action}")

    def log_verification(self, item: str, status: bool, details: str = ""):
        status_str = "PASS" if status else "FAIL"
        if details:
            self.logger.info(f"VERIFY: {item} | {status_str} | {details}")
        else:
            self.logger.info(f"VERIFY: {item} | {status_str}")

    def log_data(self, data_type: str, details: dict):
        self.logger.info(f"DATA: {data_type}")
        for key, value in details.items():
            self.logger.info(f"  - {key}: {value}")

    def log_performance(self, operation: str, duration: float):
        self.logger.info(f"PERFORMANCE: {operation} | Duration: {duration:.2f}s")


# Singleton instance
_logger_instance = FairRankLogger()


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get logger instance

    Args:
        name: Optional logger name for sub-modules

    Returns:
        Logger instance under the FairRank namespace
    """
    return _logger_instance.get_logger(name)


def log_info(message: str):
    _logger_instance.logger.info(message)


def log_warning(message: str):
    _logger_instance.logger.warning(message)


def log_error(message: str, exc_info: bool = False):
    _logger_instance.logger.error(message, exc_info=exc_info)


def log_test_start(test_name: str):
    """Log test start banner"""
    _logger_instance.log_test_start(test_name)


def log_test_end(test_name: str, status: str):
    """Log test end banner"""
    _logger_instance.log_test_end(test_name, status)


def log_step(step_name: str):
    _logger_instance.log_step(step_name)


def log_action(action: str, details: str = ""):
    _logger_instance.log_action(action, details)


def log_verification(item: str, status: bool, details: str = ""):
    _logger_instance.log_verification(item, status, details)


def log_data(data_type: str, details: dict):
    _logger_instance.log_data(data_type, details)


def log_performance(operation: str, duration: float):
    _logger_instance.log_performance(operation, duration)
