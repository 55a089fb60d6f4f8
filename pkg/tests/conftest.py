"""Shared fixtures for the wshift test-suite."""

from __future__ import annotations

import os

import pytest

from core.config import Settings, get_settings


@pytest.fixture(autouse=True)
def _default_settings(monkeypatch):
    """Isolate tests from WSHIFT_* variables in the caller's environment."""
    for key in list(os.environ):
        if key.startswith("WSHIFT_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings() -> Settings:
    return Settings()
