"""Shared fixtures: catalog measures and a seeded generator"""

import numpy as np
import pytest

from internal.common.python.config import toolkit_config
from internal.measures.python.measures import GeneralizedCauchy, SubExponential, TwoSidedExponential


@pytest.fixture(autouse=True)
def quiet_progress(monkeypatch):
    monkeypatch.setattr(toolkit_config, "show_progress", False)


@pytest.fixture
def cauchy1():
    return GeneralizedCauchy(1.0)


@pytest.fixture
def cauchy_half():
    return GeneralizedCauchy(0.5)


@pytest.fixture
def cauchy2():
    return GeneralizedCauchy(2.0)


@pytest.fixture
def exponential():
    return TwoSidedExponential()


@pytest.fixture
def subexp():
    return SubExponential(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


CATALOG = ["cauchy:1", "cauchy:0.5", "cauchy:2", "exp", "subexp:0.5"]
STRICT_CATALOG = ["cauchy:1", "cauchy:0.5", "cauchy:2", "subexp:0.5"]
