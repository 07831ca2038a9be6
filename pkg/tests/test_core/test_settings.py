"""
Tests for environment driven settings
"""
import pytest

from config.settings import AppSettings, LogLevel, get_settings, reset_settings
from core.exceptions import ConfigurationError


def test_defaults():
    settings = get_settings(reload=True)
    assert settings.logging.level is LogLevel.WARNING
    assert settings.logging.structured is False
    assert settings.verify.max_n == 64
    assert settings.bench.workers == 1
    assert settings.validate()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("LOG_STRUCTURED", "true")
    monkeypatch.setenv("VERIFY_MAX_N", "32")
    settings = AppSettings()
    assert settings.logging.level is LogLevel.DEBUG
    assert settings.logging.structured is True
    assert settings.verify.max_n == 32
    assert settings.to_dict()['logging']['level'] == "DEBUG"
    assert list(settings.to_dict()) == ['logging', 'verify', 'bench']


def test_invalid_integer(monkeypatch):
    monkeypatch.setenv("BENCH_WORKERS", "many")
    with pytest.raises(ConfigurationError):
        AppSettings()
    with pytest.raises(ConfigurationError):
        get_settings()


def test_validate_range(monkeypatch):
    monkeypatch.setenv("BENCH_WORKERS", "0")
    with pytest.raises(ConfigurationError) as exc:
        AppSettings().validate()
    assert exc.value.context['setting'] == "BENCH_WORKERS"


def test_cached_instance():
    assert get_settings() is get_settings()


def test_reset_rereads_environment(monkeypatch):
    assert get_settings().bench.workers == 1
    monkeypatch.setenv("BENCH_WORKERS", "3")
    assert get_settings().bench.workers == 1
    reset_settings()
    assert get_settings().bench.workers == 3
