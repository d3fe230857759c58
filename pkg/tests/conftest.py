"""
Pytest configuration and shared fixtures for the episturmian toolkit tests
"""

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from directive import DirectiveWord, parse_directive  # noqa: E402
from numeration import DigitString  # noqa: E402

# Hypothesis profiles: the default one keeps the suite quick, "thorough" is for nightly runs
settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.register_profile("thorough", max_examples=2000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")


# Reference directive words
@pytest.fixture
def fibonacci() -> DirectiveWord:
    """(01)^ω, the Fibonacci word."""
    return parse_directive("periodic:|01")


@pytest.fixture
def tribonacci() -> DirectiveWord:
    return parse_directive("periodic:|012")


@pytest.fixture
def tetranacci() -> DirectiveWord:
    return parse_directive("periodic:|0123")


@pytest.fixture
def three_letter() -> DirectiveWord:
    """(001122)^ω: regular with d = 3 and every a_k = 2."""
    return parse_directive("periodic:|001122")


@pytest.fixture
def reference_systems(fibonacci, tribonacci, tetranacci, three_letter):
    return [fibonacci, tribonacci, tetranacci, three_letter]


@pytest.fixture
def zeros() -> DigitString:
    return DigitString.zeros()


@pytest.fixture
def tribonacci_prefix() -> str:
    """Published 50-symbol prefix of the Tribonacci word."""
    return "01020100102010102010010201020100102010102010010201"
