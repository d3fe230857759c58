"""
Finite-word primitives for the episturmian toolkit.
Handles words over integer alphabets, palindromic closure, occurrences, primitivity and fractional powers.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union
import logging

from errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
DEFAULT_ALPHABET = 10


@dataclass(frozen=True)
class FiniteWord:
    """
    An immutable word over the alphabet {0, ..., alphabet - 1}.

    Indexing follows Python conventions; the operations below that report
    positions (occurrences) use 1-based indices.
    """
    symbols: Tuple[int, ...] = ()
    alphabet: int = DEFAULT_ALPHABET

    def __post_init__(self):
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, 'symbols', tuple(self.symbols))
        if self.alphabet < 1:
            raise InvalidArgumentError(f"alphabet size must be positive, got {self.alphabet}")
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= self.alphabet):
            raise InvalidArgumentError(
                f"letters must lie in 0..{self.alphabet - 1}, got {sorted(set(self.symbols))}"
            )

    @classmethod
    def parse(cls, text: str, alphabet: int = DEFAULT_ALPHABET) -> "FiniteWord":
        """Parse a digit run such as "0102" or a bracketed list such as "[0,11,2]"."""
        text = text.strip()
        if text.startswith('[') and text.endswith(']'):
            body = text[1:-1].strip()
            items = [part.strip() for part in body.split(',')] if body else []
            if not all(item.isdigit() for item in items):
                raise InvalidArgumentError(f"not a letter list: {text!r}")
            return cls(tuple(int(item) for item in items), alphabet)
        if text and not text.isdigit():
            raise InvalidArgumentError(f"not a digit run: {text!r}")
        return cls(tuple(int(ch) for ch in text), alphabet)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item: Union[int, slice]):
        if isinstance(item, slice):
            return FiniteWord(self.symbols[item], self.alphabet)
        return self.symbols[item]

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.symbols + tuple(other), max(self.alphabet, _alphabet_of(other)))

    def __mul__(self, power: int) -> "FiniteWord":
        return FiniteWord(self.symbols * power, self.alphabet)

    def __str__(self) -> str:
        if all(letter < 10 for letter in self.symbols):
            return ''.join(str(letter) for letter in self.symbols)
        return '[' + ','.join(str(letter) for letter in self.symbols) + ']'

    def is_palindrome(self) -> bool:
        return self.symbols == self.symbols[::-1]

    def is_prefix_of(self, other: "FiniteWord") -> bool:
        return len(self) <= len(other) and tuple(other)[:len(self)] == self.symbols


def _alphabet_of(word) -> int:
    return word.alphabet if isinstance(word, FiniteWord) else DEFAULT_ALPHABET


def longest_palindromic_suffix(w: FiniteWord) -> int:
    """Return the length of the longest palindromic suffix of w (0 for the empty word)."""
    symbols = w.symbols
    for start in range(len(symbols)):
        tail = symbols[start:]
        if tail == tail[::-1]:
            return len(tail)
    return 0


def palindromic_closure(w: FiniteWord) -> FiniteWord:
    """
    Return the shortest palindrome having w as a prefix.

    Args:
        w: Word to close

    Returns:
        w followed by the reversal of the part preceding its longest palindromic suffix
    """
    head = len(w) - longest_palindromic_suffix(w)
    return FiniteWord(w.symbols + w.symbols[:head][::-1], w.alphabet)


def occurrences(u: FiniteWord, w: FiniteWord) -> List[int]:
    """
    Return the ascending 1-based positions i such that u is a prefix of w[i, |w|].

    Args:
        u: Nonempty pattern
        w: Word to scan

    Returns:
        List of starting positions
    """
    if len(u) == 0:
        raise InvalidArgumentError("occurrences of the empty word are not defined")
    pattern, text = u.symbols, w.symbols
    size = len(pattern)
    return [i + 1 for i in range(len(text) - size + 1) if text[i:i + size] == pattern]


def is_primitive(w: FiniteWord) -> bool:
    """True iff w is not a proper integer power, i.e. w occurs exactly twice in w²."""
    if len(w) == 0:
        raise InvalidArgumentError("primitivity of the empty word is not defined")
    return len(occurrences(w, w + w)) == 2


def fractional_power(w: FiniteWord, e: Union[int, Fraction]) -> FiniteWord:
    """
    Return w^e = (uv)^n u where uv = w and e = n + |u|/|w|.

    Args:
        w: Nonempty base word
        e: Rational exponent e ≥ 1 with e·|w| integral

    Returns:
        The fractional power as a word
    """
    e = Fraction(e)
    if len(w) == 0:
        raise InvalidArgumentError("fractional powers of the empty word are not defined")
    if e < 1:
        raise InvalidArgumentError(f"exponent must be at least 1, got {e}")
    total = e * len(w)
    if total.denominator != 1:
        raise InvalidArgumentError(f"e·|w| = {total} is not an integer")
    whole, rest = divmod(int(total), len(w))
    return FiniteWord(w.symbols * whole + w.symbols[:rest], w.alphabet)
