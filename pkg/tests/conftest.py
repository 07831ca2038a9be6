"""
Test Configuration and Fixtures
Provides shared test configuration and fixtures
"""
import os
import tempfile

import numpy as np
import pytest

from core.field import FieldSpec
from core.monitoring import OpCounter
from core.stencil import parse


@pytest.fixture
def temp_file():
    """Create temporary file for testing"""
    with tempfile.NamedTemporaryFile(delete=False) as tf:
        yield tf.name
    os.unlink(tf.name)


@pytest.fixture
def rng():
    """Seeded generator; every test gets the same stream"""
    return np.random.default_rng(20240607)


@pytest.fixture
def gf2():
    return FieldSpec.parse("gf:2")


@pytest.fixture
def gf7():
    return FieldSpec.parse("gf:7")


@pytest.fixture
def rational():
    return FieldSpec.rational()


@pytest.fixture
def counter():
    return OpCounter()


@pytest.fixture
def make_stencil():
    """Build a stencil from csv text and a field spec string"""
    def _make(text: str, field: str = "gf:7"):
        return parse(text, FieldSpec.parse(field))
    return _make


@pytest.fixture(autouse=True)
def reset_settings(monkeypatch):
    """Settings are rebuilt from a clean environment for every test"""
    for name in ("LOG_LEVEL", "LOG_STRUCTURED", "LOG_FILE", "VERIFY_MAX_N",
                 "VERIFY_DEFAULT_SEED", "BENCH_WORKERS", "BENCH_SEED"):
        monkeypatch.delenv(name, raising=False)
    from config import settings
    settings.reset_settings()
    yield
    # monkeypatch restores the environment after this teardown
    settings.reset_settings()
