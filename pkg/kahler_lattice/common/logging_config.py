import logging
import atexit
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from pydantic import BaseModel
from pythonjsonlogger.json import JsonFormatter
from rich.console import Console
from rich.logging import RichHandler


class LoggingConfig(BaseModel):
    log_level: str = "WARNING"
    log_path: Optional[str] = None
    file_log: bool = False
    json_log: bool = False


# stdout carries the JSON report, every console log goes to stderr
_stderr_console = Console(stderr=True)


class LoggingManager:
    def __init__(self):
        self.internal_logger = logging.getLogger("kahler.internal")
        self.internal_logger.propagate = False
        self.execution_logger = logging.getLogger("kahler.execution")
        self.execution_logger.propagate = False
        self.internal_console_handler = RichHandler(
            console=_stderr_console, rich_tracebacks=True, show_time=True, show_level=True)
        self.internal_console_handler.setFormatter(logging.Formatter("%(message)s", datefmt="%H:%M:%S"))
        self.execution_console_handler = RichHandler(
            console=_stderr_console, rich_tracebacks=False, show_time=True, show_level=True, markup=True)
        self.execution_console_handler.setFormatter(logging.Formatter("%(message)s"))
        self.internal_logger.addHandler(self.internal_console_handler)
        self.execution_logger.addHandler(self.execution_console_handler)
        self.file_handlers: list[logging.Handler] = []
        self.set_level(logging.WARNING)

    def set_level(self, log_level: int) -> None:
        for logger in (self.internal_logger, self.execution_logger):
            logger.setLevel(log_level)
        self.internal_console_handler.setLevel(log_level)
        self.execution_console_handler.setLevel(log_level)

    def initialize_handlers(self, config):
        """
        Reconfigure levels and file handlers from a Config or LoggingConfig.
        """
        log_level = getattr(logging, str(getattr(config, "log_level", "WARNING")).upper(), logging.WARNING)
        self.set_level(log_level)
        self.remove_file_handlers()
        if not getattr(config, "file_log", False):
            return
        log_path = getattr(config, "log_path", None)
        log_dir = Path(log_path or (Path.cwd() / "logs")).expanduser()
        log_dir.mkdir(parents=True, exist_ok=True)
        formatter = JSON_FORMATTER if getattr(config, "json_log", False) else LOG_FORMATTER
        internal_handler = create_file_handler(log_dir / "internal_logs.log", log_level, formatter)
        execution_handler = create_file_handler(log_dir / "execution_logs.log", log_level, formatter)
        self.internal_logger.addHandler(internal_handler)
        self.execution_logger.addHandler(execution_handler)
        self.file_handlers.extend([internal_handler, execution_handler])

    def remove_file_handlers(self) -> None:
        for handler in self.file_handlers:
            for logger in (self.internal_logger, self.execution_logger):
                logger.removeHandler(handler)
            handler.close()
        self.file_handlers.clear()

    def shutdown_logging(self):
        try:
            for handler in self.file_handlers:
                handler.flush()
            self.remove_file_handlers()
        except Exception as e:  # pylint: disable=broad-except
            self.internal_logger.error(f"Shutdown error: {e}")

    def get_internal_logger(self):
        return self.internal_logger

    def get_execution_logger(self):
        return self.execution_logger


LOG_FORMATTER = logging.Formatter(
    "%(levelname)s | %(asctime)s | %(name)s:%(funcName)s:%(lineno)d | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S"
)

JSON_FORMATTER = JsonFormatter(
    "%(levelname)s %(asctime)s %(name)s %(funcName)s %(lineno)d %(message)s",
    rename_fields={"levelname": "level", "asctime": "time"},
)


def create_file_handler(path, log_level, formatter=None):
    handler = RotatingFileHandler(path, maxBytes=10 * 1024 * 1024, backupCount=10)
    handler.setFormatter(formatter or LOG_FORMATTER)
    handler.setLevel(log_level)
    return handler


logging_manager = LoggingManager()
internal_logger = logging_manager.get_internal_logger()
execution_logger = logging_manager.get_execution_logger()


def initialize_handlers(config):
    """
    Initialize logging handlers. Accepts either a full Config or a LoggingConfig.
    """
    logging_manager.initialize_handlers(config)


def shutdown_logging():
    logging_manager.shutdown_logging()


atexit.register(shutdown_logging)


__all__ = ["internal_logger", "execution_logger", "initialize_handlers",
           "shutdown_logging", "LoggingConfig", "logging_manager"]
