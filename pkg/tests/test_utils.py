"""
Facade Tests
============

`utils` re-exports the public API of the flat modules.
"""

import pytest

import utils


@pytest.mark.unit
class TestFacade:
    """Every name in utils.__all__ resolves."""

    def test_all_names_resolve(self):
        missing = [name for name in utils.__all__ if not hasattr(utils, name)]
        assert missing == []

    def test_end_to_end_through_facade(self):
        delta = utils.parse_directive("periodic:|001122")
        result = utils.irep_regular(delta, utils.parse_intercept("periodic:|1"), 2)
        assert (result.value, result.label) == (5, "iii.1")
        assert str(utils.word_from_intercept(delta, utils.DigitString.zeros(), 8)) == "00100100"
