import os
import logging
from logging.handlers import RotatingFileHandler
from dataclasses import dataclass
from typing import Optional

from salem_lp.models.exception import SalemValidationException

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LEVEL_ENV_PREFIX = "SALEM_LOG_LEVEL_"
FILE_ENV = "SALEM_LOG_FILE"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class SalemLogConfig:
    name: str
    level: Optional[str] = None
    file_path: Optional[str] = None
    max_bytes: int = 1048576


def resolve_level(name: str, level: Optional[str] = None) -> str:
    """Explicit level, else SALEM_LOG_LEVEL_<NAME>, else INFO."""
    chosen = (level or os.environ.get(f"{LEVEL_ENV_PREFIX}{name.upper()}") or "INFO").upper()
    if chosen not in LEVELS:
        raise SalemValidationException(f"Unknown log level {chosen!r} for {name}, expected one of {LEVELS}")
    return chosen


class SalemLoggerUtil(logging.Logger):
    def __init__(self, config: SalemLogConfig):
        super().__init__(config.name, resolve_level(config.name, config.level))
        self.formatter = logging.Formatter(LOG_FORMAT)
        console = logging.StreamHandler()
        console.setFormatter(self.formatter)
        self.addHandler(console)
        file_path = config.file_path or os.environ.get(FILE_ENV)
        if file_path:
            self.attach_file(file_path, config.max_bytes)

    def attach_file(self, file_path: str, max_bytes: int) -> None:
        target = os.path.abspath(file_path)
        for handler in self.handlers:
            if isinstance(handler, RotatingFileHandler) and handler.baseFilename == target:
                return
        handler = RotatingFileHandler(target, maxBytes=max_bytes)
        handler.setFormatter(self.formatter)
        self.addHandler(handler)


class SalemLogger:
    _loggers: dict[str, SalemLoggerUtil] = {}

    @classmethod
    def get_logger(cls, config: SalemLogConfig) -> SalemLoggerUtil:
        logger = cls._loggers.get(config.name)
        if logger is None:
            logger = cls._loggers[config.name] = SalemLoggerUtil(config)
        return logger

    @classmethod
    def set_log_level(cls, name: str, level: Optional[str]):
        if name in cls._loggers:
            cls._loggers[name].setLevel(resolve_level(name, level))

    @classmethod
    def names(cls) -> list[str]:
        return list(cls._loggers)


def get_logger(config: SalemLogConfig) -> SalemLoggerUtil:
    return SalemLogger.get_logger(config)


common_logger = get_logger(SalemLogConfig("COMMON"))
builder_logger = get_logger(SalemLogConfig("BUILDER"))
session_logger = get_logger(SalemLogConfig("SESSION"))
spectrum_logger = get_logger(SalemLogConfig("SPECTRUM"))
harness_logger = get_logger(SalemLogConfig("HARNESS"))


def set_global_log_level(level: Optional[str]):
    """Sets every registered logger; None re-reads the per-logger env levels."""
    for name in SalemLogger.names():
        SalemLogger.set_log_level(name, level)


def log_to_file(file_path: str, max_bytes: int = 1048576):
    for name in SalemLogger.names():
        SalemLogger.get_logger(SalemLogConfig(name)).attach_file(file_path, max_bytes)
