"""Shared pytest configuration and fixtures."""

import os

import pytest
from hypothesis import HealthCheck, settings

from ordkit.domain.terms import (
    BIG_I,
    BIG_K,
    ONE,
    ZERO,
    OrdSeq,
    PsiK,
    PsiReg,
    RegSucc,
    Sum,
    ThetaSet,
)
from ordkit.infrastructure.config import ConfigManager

settings.register_profile(
    "ordkit",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("ordkit")


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Run every test against default settings."""
    for key in list(os.environ):
        if key.startswith("ORDKIT_"):
            monkeypatch.delenv(key, raising=False)
    ConfigManager.reset()
    yield
    ConfigManager.reset()


@pytest.fixture
def i_plus_one():
    return Sum((BIG_I, ONE))


@pytest.fixture
def k_plus():
    return RegSucc(BIG_K)


@pytest.fixture
def b_1(k_plus, i_plus_one):
    """psi(K+; 1; I+1), the b constant at subscript 1."""
    return PsiReg(k_plus, 1, i_plus_one)


@pytest.fixture
def small_mahlo():
    """A collapse strictly between w1 and K."""
    return PsiK(1, OrdSeq((ZERO, ZERO)), ThetaSet(), ZERO)
