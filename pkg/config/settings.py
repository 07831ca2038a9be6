"""
Configuration Management
Settings read from the environment (and an optional .env file) with validation
"""
import os
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from core.exceptions import ConfigurationError

load_dotenv()


class LogLevel(Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}", setting=name)


def _env_level(name: str, default: str) -> LogLevel:
    raw = os.getenv(name, default).strip().upper()
    try:
        return LogLevel(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be one of {[level.value for level in LogLevel]}, got {raw!r}",
                                 setting=name)


@dataclass
class LoggingConfig:
    """Logging configuration; records go to stderr"""
    level: LogLevel = field(default_factory=lambda: _env_level("LOG_LEVEL", "WARNING"))
    structured: bool = field(default_factory=lambda: _env_bool("LOG_STRUCTURED", "false"))
    file_path: Optional[str] = field(default_factory=lambda: os.getenv("LOG_FILE") or None)


@dataclass
class VerifyConfig:
    """Limits and defaults for the verify command"""
    max_n: int = field(default_factory=lambda: _env_int("VERIFY_MAX_N", "64"))
    default_seed: int = field(default_factory=lambda: _env_int("VERIFY_DEFAULT_SEED", "0"))


@dataclass
class BenchConfig:
    workers: int = field(default_factory=lambda: _env_int("BENCH_WORKERS", "1"))
    seed: int = field(default_factory=lambda: _env_int("BENCH_SEED", "1"))


@dataclass
class AppSettings:
    """Main application settings"""
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)

    def validate(self) -> bool:
        """Raise ConfigurationError on the first out-of-range value"""
        if self.verify.max_n < 1:
            raise ConfigurationError("VERIFY_MAX_N must be positive", setting="VERIFY_MAX_N")
        if self.bench.workers < 1:
            raise ConfigurationError("BENCH_WORKERS must be positive", setting="BENCH_WORKERS")
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary for logging/debugging"""
        result = asdict(self)
        result['logging']['level'] = self.logging.level.value
        return result


_settings: Optional[AppSettings] = None


def get_settings(reload: bool = False) -> AppSettings:
    """Settings instance, built on first use"""
    global _settings
    if _settings is None or reload:
        _settings = AppSettings()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance; the next get_settings() reads the environment again"""
    global _settings
    _settings = None
