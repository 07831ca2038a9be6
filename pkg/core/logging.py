"""
Structured Logging System
Centralized logging with run correlation and stencil context
"""
import logging
import logging.handlers
import json
import traceback
import sys
from datetime import datetime, timezone
from typing import Dict, Any, Optional, List, Tuple
from contextvars import ContextVar, Token
import uuid

# Context variables for run correlation
run_id_ctx: ContextVar[str] = ContextVar('run_id', default='')
command_ctx: ContextVar[str] = ContextVar('command', default='')
stencil_ctx: ContextVar[str] = ContextVar('stencil', default='')

_RESERVED_ATTRS = frozenset((
    'name', 'msg', 'args', 'levelname', 'levelno', 'pathname', 'filename',
    'module', 'lineno', 'funcName', 'created', 'msecs', 'relativeCreated',
    'thread', 'threadName', 'processName', 'process', 'message', 'exc_info',
    'exc_text', 'stack_info', 'taskName',
))

DEFAULT_FORMAT = '%(asctime)s | %(levelname)8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s'


class StructuredFormatter(logging.Formatter):
    """JSON formatter, one object per line"""

    def format(self, record: logging.LogRecord) -> str:
        log_entry: Dict[str, Any] = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'function': record.funcName,
            'line': record.lineno,
            'message': record.getMessage(),
            'run_id': run_id_ctx.get(''),
            'command': command_ctx.get(''),
            'stencil': stencil_ctx.get(''),
        }

        if record.exc_info:
            log_entry['exception'] = {
                'type': record.exc_info[0].__name__ if record.exc_info[0] else None,
                'message': str(record.exc_info[1]) if record.exc_info[1] else None,
                'traceback': traceback.format_exception(*record.exc_info)
            }

        extra = {key: value for key, value in record.__dict__.items()
                 if key not in _RESERVED_ATTRS}
        if extra:
            log_entry['extra'] = extra

        return json.dumps(log_entry, ensure_ascii=False, default=str)


class SimpleFormatter(logging.Formatter):
    """Human-readable formatter"""

    def format(self, record: logging.LogRecord) -> str:
        context_parts = []
        for name, var in (('run_id', run_id_ctx), ('command', command_ctx), ('stencil', stencil_ctx)):
            value = var.get('')
            if value:
                context_parts.append(f"{name}={value}")

        context_str = f" [{', '.join(context_parts)}]" if context_parts else ""
        return f"{super().format(record)}{context_str}"


class LoggerManager:
    """Centralized logger management"""

    _instance = None
    _loggers: Dict[str, logging.Logger] = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def setup_logging(self,
                      level: str = "WARNING",
                      format_str: Optional[str] = None,
                      file_path: Optional[str] = None,
                      max_file_size: int = 10485760,  # 10MB
                      backup_count: int = 5,
                      structured: bool = False) -> None:
        """Setup application-wide logging; console output goes to stderr"""
        numeric_level = getattr(logging, level.upper())

        root_logger = logging.getLogger()
        root_logger.setLevel(numeric_level)
        root_logger.handlers.clear()

        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if file_path:
            handlers.append(logging.handlers.RotatingFileHandler(
                file_path,
                maxBytes=max_file_size,
                backupCount=backup_count,
                encoding='utf-8'
            ))

        for handler in handlers:
            handler.setLevel(numeric_level)
            if structured:
                handler.setFormatter(StructuredFormatter())
            else:
                handler.setFormatter(SimpleFormatter(format_str or DEFAULT_FORMAT))
            root_logger.addHandler(handler)

    def get_logger(self, name: str) -> logging.Logger:
        """Get or create a logger with the specified name"""
        if name not in self._loggers:
            self._loggers[name] = logging.getLogger(name)
        return self._loggers[name]


# Global logger manager instance
logger_manager = LoggerManager()


class LogContext:
    """Context manager binding run correlation fields to every record"""

    def __init__(self,
                 command: str = '',
                 stencil: str = '',
                 run_id: Optional[str] = None):
        self.command = command
        self.stencil = stencil
        self.run_id = run_id or uuid.uuid4().hex[:12]
        self._tokens: List[Tuple[ContextVar[str], Token]] = []

    def __enter__(self) -> "LogContext":
        self._tokens.append((run_id_ctx, run_id_ctx.set(self.run_id)))
        self._tokens.append((command_ctx, command_ctx.set(self.command)))
        self._tokens.append((stencil_ctx, stencil_ctx.set(self.stencil)))
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        for var, token in reversed(self._tokens):
            var.reset(token)
        self._tokens.clear()


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a logger instance"""
    if name is None:
        frame = sys._getframe(1)
        name = frame.f_globals.get('__name__', 'unknown')

    return logger_manager.get_logger(name)


def setup_logging(level: str = "WARNING",
                  structured: bool = False,
                  file_path: Optional[str] = None) -> None:
    """Setup application logging"""
    logger_manager.setup_logging(
        level=level,
        structured=structured,
        file_path=file_path
    )


def log_error(logger: logging.Logger, error: Exception, operation: str = '', **context) -> None:
    """Log error with full context"""
    logger.error(f"Error in {operation}: {error}", extra={
        'event_type': 'error',
        'operation': operation,
        'error_type': error.__class__.__name__,
        **context
    }, exc_info=True)


def log_run_event(logger: logging.Logger, event: str, **context) -> None:
    """Log a run lifecycle event (start, finish, mismatch)"""
    logger.info(f"Run event: {event}", extra={
        'event_type': 'run_event',
        'event': event,
        **context
    })


def log_performance(logger: logging.Logger, operation: str, duration_ms: float, **context) -> None:
    """Log performance metrics"""
    logger.info(f"Performance: {operation} took {duration_ms:.2f}ms", extra={
        'event_type': 'performance',
        'operation': operation,
        'duration_ms': duration_ms,
        **context
    })
