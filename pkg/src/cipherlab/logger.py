"""
Structured logging for CipherLab

Wraps the standard library logger with a text or JSON formatter chosen by
LOG_FORMAT, level chosen by LOG_LEVEL. Keyword fields passed to the log
methods travel as ``extra`` and are emitted as JSON keys.
"""

import json
import logging
import os

_RESERVED = set(vars(logging.makeLogRecord({})).keys()) | {"message", "asctime"}


class JsonFormatter(logging.Formatter):
    """One JSON object per record, structured fields included"""

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            'timestamp': self.formatTime(record, self.datefmt),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'function': record.funcName,
            'line': record.lineno,
        }
        for key, value in vars(record).items():
            if key not in _RESERVED and key not in log_data:
                log_data[key] = value
        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)
        return json.dumps(log_data, default=str)


class ProductionLogger:
    """Structured logging for library and CLI code"""

    def __init__(self, name: str, level: str = "INFO", format_type: str = "text"):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, level.upper(), logging.INFO))
        self.format_type = format_type

        if not self.logger.handlers:
            handler = logging.StreamHandler()
            if format_type == "json":
                handler.setFormatter(JsonFormatter())
            else:
                handler.setFormatter(logging.Formatter(
                    '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
                ))
            self.logger.addHandler(handler)

    def set_level(self, level: str) -> None:
        self.logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    def info(self, message: str, **kwargs):
        self.logger.info(message, extra=kwargs)

    def warning(self, message: str, **kwargs):
        self.logger.warning(message, extra=kwargs)

    def error(self, message: str, **kwargs):
        self.logger.error(message, extra=kwargs)

    def debug(self, message: str, **kwargs):
        self.logger.debug(message, extra=kwargs)


def get_logger(name: str) -> ProductionLogger:
    """Logger configured from LOG_LEVEL / LOG_FORMAT"""
    return ProductionLogger(
        name,
        os.getenv("LOG_LEVEL", "WARNING"),
        os.getenv("LOG_FORMAT", "text"),
    )


def set_log_level(level: str, prefix: str = "cipherlab") -> None:
    """Re-level every logger already created under prefix (the CLI -v flag)."""
    value = getattr(logging, level.upper(), logging.INFO)
    for name, existing in logging.root.manager.loggerDict.items():
        if name.startswith(prefix) and isinstance(existing, logging.Logger):
            existing.setLevel(value)
