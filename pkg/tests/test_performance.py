"""
Runtime Budget Tests
====================

Reference computations timed against their budgets:
- numeration golden values and the Tribonacci prefix (< 1 s each)
- checked figure data (< 10 s)
- the tabulated exponent constants (< 30 s together)
- dominant roots (< 1 s)
"""

import io
import time

import pytest

from cli import EXIT_OK, main
from directive import parse_directive
from engine import standard_prefix
from exponents import dio_estimate, dominant_root
from numeration import DigitString, numeration_system, parse_intercept, render_digits

EXPONENT_TARGETS = [
    ("periodic:|01", "zeros", 2.6180, 1e-3),
    ("periodic:|012", "zeros", 2.1915, 1e-3),
    ("periodic:|0123", "zeros", 2.0781, 1e-3),
    ("periodic:|001122", "periodic:|1", 1.9156, 1e-3),
    ("periodic:|0123", "periodic:|001", 1.9873, 1e-3),
    ("periodic:|0123", "periodic:|011", 2.7879, 1e-3),
    ("periodic:|0123", "periodic:|01", 2.0000, 1e-3),
    ("periodic:|01234", "periodic:|001", 1.9148, 2e-3),
    ("periodic:|01234", "periodic:|01", 1.8535, 2e-3),
]


@pytest.mark.performance
class TestRuntimeBudgets:
    """Each reference computation finishes within its budget."""

    def test_numeration_golden_values(self):
        start_time = time.time()
        system = numeration_system(parse_directive("periodic:|012"))
        assert [system.q_length(k) for k in range(7)] == [1, 2, 4, 7, 13, 24, 44]
        assert render_digits(system.rep_digits(7)) == "0001"
        assert render_digits(system.rep_digits(10)) == "1101"
        assert system.val(DigitString.parse("1101")) == 10
        assert time.time() - start_time < 1.0

    def test_tribonacci_prefix(self, tribonacci_prefix):
        start_time = time.time()
        assert str(standard_prefix(parse_directive("periodic:|012"), 50)) == tribonacci_prefix
        assert time.time() - start_time < 1.0

    def test_checked_figure(self):
        out = io.StringIO()
        start_time = time.time()
        assert main(["figure", "--fig", "1", "--check"], out=out) == EXIT_OK
        assert time.time() - start_time < 10.0
        assert out.getvalue().splitlines()[1] == "# intervals: 1,5,17,51,147"

    def test_exponent_constants(self):
        start_time = time.time()
        for spec, intercept, expected, tolerance in EXPONENT_TARGETS:
            estimate = dio_estimate(parse_directive(spec), parse_intercept(intercept), k_max=40)
            assert float(estimate) == pytest.approx(expected, abs=tolerance), spec
        assert time.time() - start_time < 30.0

    def test_root_constants(self):
        start_time = time.time()
        assert float(dominant_root([1, 1, 1, 1])) == pytest.approx(1.9276, abs=1e-4)
        assert float(dominant_root([2, 2, 1])) == pytest.approx(2.8312, abs=1e-4)
        assert time.time() - start_time < 1.0
