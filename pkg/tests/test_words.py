"""
Finite-word primitive tests
===========================

Palindromic closure, occurrences, primitivity and fractional powers, with
exhaustive checks over small alphabets.
"""

from fractions import Fraction
from itertools import product

import pytest

from errors import InvalidArgumentError
from words import (
    FiniteWord,
    fractional_power,
    is_primitive,
    longest_palindromic_suffix,
    occurrences,
    palindromic_closure,
)


def w(text: str) -> FiniteWord:
    return FiniteWord.parse(text)


def all_words(max_length: int, alphabet: int):
    for length in range(max_length + 1):
        for letters in product(range(alphabet), repeat=length):
            yield FiniteWord(letters, alphabet)


@pytest.mark.unit
class TestFiniteWord:
    """Construction, parsing and rendering."""

    def test_parse_digit_run(self):
        assert w("0102").symbols == (0, 1, 0, 2)
        assert str(w("0102")) == "0102"

    def test_parse_bracketed_list(self):
        word = FiniteWord.parse("[0,11,2]", alphabet=12)
        assert word.symbols == (0, 11, 2)
        assert str(word) == "[0,11,2]"

    def test_empty_word(self):
        assert len(w("")) == 0
        assert str(w("")) == ""

    def test_letter_outside_alphabet_rejected(self):
        with pytest.raises(InvalidArgumentError):
            FiniteWord((0, 3), alphabet=3)

    def test_slicing_returns_words(self):
        word = w("01020")
        assert word[1:3] == w("10")
        assert word[0] == 0

    def test_concatenation_and_power(self):
        assert w("01") + w("2") == w("012")
        assert w("01") * 3 == w("010101")


@pytest.mark.unit
class TestPalindromicClosure:
    """Shortest palindrome with a given prefix."""

    @pytest.mark.parametrize("word, expected", [
        ("", ""),
        ("0", "0"),
        ("001", "00100"),
        ("001001", "00100100"),
        ("0102", "0102010"),
    ])
    def test_known_closures(self, word, expected):
        assert palindromic_closure(w(word)) == w(expected)

    def test_closure_is_minimal_palindrome_with_prefix(self):
        for word in all_words(5, 3):
            closure = palindromic_closure(word)
            assert closure.is_palindrome()
            assert word.is_prefix_of(closure)
            for extra in range(len(closure) - len(word)):
                for tail in product(range(3), repeat=extra):
                    assert not FiniteWord(word.symbols + tail, 3).is_palindrome()

    @pytest.mark.slow
    def test_idempotent_and_length_formula_exhaustive(self):
        for alphabet in (2, 3):
            limit = 12 if alphabet == 2 else 9
            for word in all_words(limit, alphabet):
                closure = palindromic_closure(word)
                assert palindromic_closure(closure) == closure
                assert len(closure) == 2 * len(word) - longest_palindromic_suffix(word)

    def test_length_formula_small(self):
        for word in all_words(6, 3):
            assert len(palindromic_closure(word)) == 2 * len(word) - longest_palindromic_suffix(word)


@pytest.mark.unit
class TestOccurrences:
    """1-based occurrence lists."""

    @pytest.mark.parametrize("pattern, text, expected", [
        ("0", "010", [1, 3]),
        ("010", "010010", [1, 4]),
        ("01", "0101", [1, 3]),
        ("2", "0101", []),
    ])
    def test_known_occurrences(self, pattern, text, expected):
        assert occurrences(w(pattern), w(text)) == expected

    @pytest.mark.edge_case
    def test_empty_pattern_rejected(self):
        with pytest.raises(InvalidArgumentError):
            occurrences(w(""), w("01"))


@pytest.mark.unit
class TestPrimitivity:
    """A word is primitive iff it occurs exactly twice in its square."""

    @pytest.mark.parametrize("word, expected", [
        ("0101", False),
        ("01", True),
        ("01001", True),
        ("000", False),
        ("0", True),
    ])
    def test_known_words(self, word, expected):
        assert is_primitive(w(word)) is expected

    def test_matches_divisor_definition(self):
        for word in all_words(10, 2):
            if not len(word):
                continue
            size = len(word)
            proper_power = any(
                size % p == 0 and word.symbols == word.symbols[:p] * (size // p)
                for p in range(1, size)
            )
            assert is_primitive(word) is not proper_power

    @pytest.mark.edge_case
    def test_empty_word_rejected(self):
        with pytest.raises(InvalidArgumentError):
            is_primitive(w(""))


@pytest.mark.unit
class TestFractionalPower:
    """w^e = (uv)^n u."""

    def test_integer_power(self):
        assert fractional_power(w("01"), 2) == w("0101")

    def test_fractional_exponent(self):
        assert fractional_power(w("010"), Fraction(5, 3)) == w("01001")

    def test_identity(self):
        assert fractional_power(w("0102"), 1) == w("0102")

    @pytest.mark.edge_case
    def test_non_integral_length_rejected(self):
        with pytest.raises(InvalidArgumentError):
            fractional_power(w("010"), Fraction(3, 2))

    @pytest.mark.edge_case
    def test_exponent_below_one_rejected(self):
        with pytest.raises(InvalidArgumentError):
            fractional_power(w("01"), Fraction(1, 2))
