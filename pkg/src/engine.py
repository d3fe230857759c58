"""
Episturmian construction engine for the episturmian toolkit.
Handles the morphisms L_a, central and standard words, standard-word prefixes, intercepts,
certified prefixes of arbitrary episturmian words, the odometer and desubstitution.
"""
from dataclasses import dataclass
from itertools import chain
from typing import Dict, Iterator, List, Optional, Tuple
import logging
import threading
import weakref

from directive import DirectiveWord
from errors import (
    HorizonExceededError,
    InvalidArgumentError,
    InvalidInterceptError,
    ResourceLimitError,
    ShiftInterceptError,
)
from numeration import DigitString, DigitsLike, as_digits, numeration_system
from words import FiniteWord

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
EXPLICIT_WORD_CAP = 10 ** 7
BLOCK_CACHE_LIMIT = 1 << 12
ODOMETER_STREAM_HORIZON = 64


# =========================
# Types
# =========================
@dataclass(frozen=True)
class SignedWord:
    """A finite word, or the formal inverse x^{-1} of a single letter (length -1)."""
    word: Optional[FiniteWord] = None
    inverse: Optional[int] = None

    def __post_init__(self):
        if (self.word is None) == (self.inverse is None):
            raise InvalidArgumentError("a signed word is either a word or the inverse of one letter")

    @property
    def length(self) -> int:
        return -1 if self.word is None else len(self.word)

    def __str__(self) -> str:
        return f"{self.inverse}^-1" if self.word is None else str(self.word)


def l_image(a: int, w: FiniteWord) -> FiniteWord:
    """Apply L_a letterwise: a -> a, x -> ax for x != a."""
    out: List[int] = []
    for letter in w:
        if letter != a:
            out.append(a)
        out.append(letter)
    return FiniteWord(tuple(out), max(w.alphabet, a + 1))


def _check_cap(length: int, what: str, cap: int) -> None:
    if length > cap:
        raise ResourceLimitError(f"{what} has length {length}, above the explicit-word cap {cap}")


class WordTower:
    """
    Per-directive caches of the standard words s_k and of the images τ_k(y) that are short
    enough to keep explicitly. Everything else is expressed through lengths.
    """

    def __init__(self, directive: DirectiveWord, cap: int = EXPLICIT_WORD_CAP):
        self.directive = directive
        self.numeration = numeration_system(directive)
        self.cap = cap
        self._standard: List[Tuple[int, ...]] = []
        self._blocks: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._lock = threading.Lock()

    def _word(self, symbols: Tuple[int, ...]) -> FiniteWord:
        return FiniteWord(symbols, self.directive.alphabet)

    # -------------------------
    # Standard and central words
    # -------------------------
    def standard_symbols(self, k: int) -> Tuple[int, ...]:
        """s_k as a tuple, built with the s-recursions and cached."""
        if k < 0:
            raise InvalidArgumentError(f"standard words are indexed from 0, got {k}")
        _check_cap(self.numeration.q_length(k), f"s_{k}", self.cap)
        delta = self.directive
        with self._lock:
            while len(self._standard) <= k:
                i = len(self._standard)
                if i == 0:
                    self._standard.append((delta.x(1),))
                    continue
                j = delta.jfun(i)
                parts = [self._standard[m - 1] * delta.a(m) for m in range(i, (j or 0), -1)]
                tail = self._standard[j - 1] if j is not None else (delta.x(i + 1),)
                self._standard.append(tuple(chain.from_iterable(parts)) + tail)
        return self._standard[k]

    def standard_word(self, k: int) -> FiniteWord:
        return self._word(self.standard_symbols(k))

    def central_word(self, n: int) -> FiniteWord:
        """u_n as the product h_{n-2} ... h_0 with h_i = s_j for r_j ≤ i < r_{j+1}."""
        length = self.numeration.central_length(n)
        _check_cap(length, f"u_{n}", self.cap)
        parts = []
        for i in range(n - 2, -1, -1):
            parts.append(self.standard_symbols(self.directive.run_of(i + 1) - 1))
        return self._word(tuple(chain.from_iterable(parts)))

    def h_word(self, i: int) -> FiniteWord:
        """h_i = s_j for the run j with r_j ≤ i < r_{j+1}."""
        return self.standard_word(self.directive.run_of(i + 1) - 1)

    # -------------------------
    # Standard prefixes
    # -------------------------
    def tau_block(self, level: int, y: int) -> Tuple[int, ...]:
        """τ_level(y) for images short enough to cache."""
        key = (level, y)
        block = self._blocks.get(key)
        if block is not None:
            return block
        if level == 0:
            block = (y,)
        else:
            x, a = self.directive.x(level), self.directive.a(level)
            image = (y,) if y == x else (x,) * a + (y,)
            block = tuple(chain.from_iterable(self.tau_block(level - 1, z) for z in image))
        with self._lock:
            self._blocks[key] = block
        return block

    def iter_standard(self, length: int) -> Iterator[Tuple[int, ...]]:
        """
        Stream the prefix of c_Δ of the given length in chunks, expanding
        τ_K(x_{K+1}) depth first with q_K ≥ length.
        """
        if length <= 0:
            return
        system = self.numeration
        top = 0
        while system.q_length(top) < length:
            top += 1
        stack = [(top, self.directive.x(top + 1))]
        remaining = length
        while stack and remaining > 0:
            level, y = stack.pop()
            if system.tau_length(level, y) <= BLOCK_CACHE_LIMIT:
                chunk = self.tau_block(level, y)[:remaining]
                remaining -= len(chunk)
                yield chunk
                continue
            x, a = self.directive.x(level), self.directive.a(level)
            image = (y,) if y == x else (x,) * a + (y,)
            stack.extend((level - 1, z) for z in reversed(image))

    def standard_prefix(self, length: int) -> FiniteWord:
        if length < 0:
            raise InvalidArgumentError(f"prefix length must be nonnegative, got {length}")
        _check_cap(length, "standard prefix", self.cap)
        return self._word(tuple(chain.from_iterable(self.iter_standard(length))))

    def prefix_by_rep(self, n: int) -> FiniteWord:
        """s_{k-1}^{c_k} ... s_0^{c_1} for rep(n) = c_1 ... c_k."""
        _check_cap(n, "prefix by representation", self.cap)
        digits = self.numeration.rep_digits(n)
        parts = [self.standard_symbols(i - 1) * digits[i - 1] for i in range(len(digits), 0, -1)]
        return self._word(tuple(chain.from_iterable(parts)))


# =========================
# Per-directive cache
# =========================
_TOWERS: "weakref.WeakKeyDictionary[DirectiveWord, WordTower]" = weakref.WeakKeyDictionary()
_TOWERS_LOCK = threading.Lock()


def word_tower(directive: DirectiveWord) -> WordTower:
    """Return the shared WordTower of a directive word."""
    with _TOWERS_LOCK:
        tower = _TOWERS.get(directive)
        if tower is None:
            tower = WordTower(directive)
            _TOWERS[directive] = tower
    return tower


def central_word(delta: DirectiveWord, n: int) -> FiniteWord:
    return word_tower(delta).central_word(n)


def standard_word(delta: DirectiveWord, k: int) -> FiniteWord:
    return word_tower(delta).standard_word(k)


def standard_prefix(delta: DirectiveWord, length: int) -> FiniteWord:
    """Prefix of c_Δ of the given length."""
    return word_tower(delta).standard_prefix(length)


def prefix_by_rep(delta: DirectiveWord, n: int) -> FiniteWord:
    return word_tower(delta).prefix_by_rep(n)


def t_word(delta: DirectiveWord, k: int) -> SignedWord:
    """t_k = s_k^{-1} u_{r_k+1} when j(k) exists, else the inverse of x_{k+1}."""
    if delta.jfun(k) is None:
        return SignedWord(inverse=delta.x(k + 1))
    tower = word_tower(delta)
    central = tower.central_word(delta.r(k) + 1)
    return SignedWord(word=central[len(tower.standard_symbols(k)):])


# =========================
# Intercepts
# =========================
def first_letter(delta: DirectiveWord, intercept: DigitsLike, horizon: Optional[int] = None) -> int:
    """First letter of the word with the given intercept: x_j for the least j with c_j < a_j."""
    c = as_digits(intercept)
    limit = horizon or delta.exact_horizon(extra=len(c.digits) + len(c.period) + 2)
    for j in range(1, limit + 1):
        if c.digit(j) < delta.a(j):
            return delta.x(j)
    raise HorizonExceededError(f"no digit below its partial quotient within {limit} runs")


def letter_at(delta: DirectiveWord, n: int) -> int:
    """The letter of c_Δ at 0-based position n, read from rep(n)."""
    return first_letter(delta, numeration_system(delta).rep(n))


def eta(delta: DirectiveWord, intercept: DigitsLike, k: int) -> int:
    """η_k = (a_{k+1} - c_{k+1}) q_k + S_k - val(c_1 ... c_k)."""
    c = as_digits(intercept)
    system = numeration_system(delta)
    return ((delta.a(k + 1) - c.digit(k + 1)) * system.q_length(k)
            + system.prefix_sum(k) - system.val_prefix(c, k))


def common_prefix_length(delta: DirectiveWord, intercept: DigitsLike, k: int) -> int:
    """
    Length of the longest common prefix of T^{val(c_1..c_k)}(c_Δ) and T^{val(c_1..c_{k+n})}(c_Δ),
    n ≥ 1 least with c_{k+n} != 0.
    """
    if k < 1:
        raise InvalidArgumentError(f"k must be at least 1, got {k}")
    c = as_digits(intercept)
    system = numeration_system(delta)
    n = 1
    while c.digit(k + n) == 0:
        n += 1
        if n > delta.exact_horizon(extra=len(c.digits) + k):
            raise HorizonExceededError(f"no nonzero digit after c_{k}")
    top = k + n
    return ((delta.a(top) - c.digit(top)) * system.q_length(top - 1)
            + system.prefix_sum(top - 1) - system.val_prefix(c, k))


def left_shift_intercept(delta: DirectiveWord, letter: int) -> DigitString:
    """Intercept of letter·c_Δ: c_k = 0 where x_k = letter, else a_k."""
    if letter not in delta.infinite_letters():
        raise InvalidArgumentError(f"letter {letter} does not occur infinitely often in {delta}")
    structure = delta.run_structure()
    if structure is None:
        raise InvalidArgumentError("left-shift intercepts need an eventually periodic directive word")
    pre, per = structure
    digits = [0 if delta.x(k) == letter else delta.a(k) for k in range(1, pre + per + 1)]
    return DigitString(tuple(digits[:pre]), tuple(digits[pre:]))


def _require_valid(delta: DirectiveWord, c: DigitString) -> None:
    if not numeration_system(delta).satisfies_ostrowski(c):
        raise InvalidInterceptError(f"intercept {c} violates the Ostrowski conditions of {delta}")


def word_from_intercept(delta: DirectiveWord, intercept: DigitsLike, length: int) -> FiniteWord:
    """
    Prefix of the episturmian word with the given intercept, certified through η_k.

    Args:
        delta: Directive word
        intercept: Ostrowski-valid digits
        length: Number of symbols wanted

    Returns:
        Symbols V_k + 1 ... V_k + length of c_Δ for the least k with η_k ≥ length
    """
    c = as_digits(intercept)
    _require_valid(delta, c)
    k = 0
    while eta(delta, c, k) < length:
        k += 1
    offset = numeration_system(delta).val_prefix(c, k)
    logger.debug(f"🔍 {delta}: prefix of length {length} certified at k={k}, shift {offset}")
    return word_tower(delta).standard_prefix(offset + length)[offset:]


class EpisturmianWord:
    """An episturmian word given by (Δ, intercept) with a cached certified prefix."""

    def __init__(self, directive: DirectiveWord, intercept: DigitsLike):
        self.directive = directive
        self.intercept = as_digits(intercept)
        _require_valid(directive, self.intercept)
        self._prefix = FiniteWord((), directive.alphabet)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"EpisturmianWord({self.directive.text!r}, {str(self.intercept)!r})"

    def prefix(self, length: int) -> FiniteWord:
        with self._lock:
            if len(self._prefix) < length:
                self._prefix = word_from_intercept(self.directive, self.intercept, length)
            return self._prefix[:length]

    def shift(self) -> "EpisturmianWord":
        return EpisturmianWord(self.directive, shift_intercept(self.directive, self.intercept))


def shift_intercept(delta: DirectiveWord, intercept: DigitsLike, horizon: Optional[int] = None) -> DigitString:
    """
    Intercept of T(t) by the odometer: with m the last k where val(c_1..c_k) = q_k - 1,
    c_1..c_{m+1} becomes rep(val(c_1..c_{m+1}) + 1) and the tail is kept.
    """
    c = as_digits(intercept)
    _require_valid(delta, c)
    system = numeration_system(delta)
    structure = delta.run_structure()
    window = max(len(c.period), 1) * (structure[1] if structure else 1) + (delta.regular_period or 2) + 2
    if horizon is None:
        if structure is None:
            horizon = len(c.digits) + ODOMETER_STREAM_HORIZON
        else:
            horizon = len(c.digits) + structure[0] + 2 * window
    carry_point, value = 0, 0
    for k in range(1, horizon + 1):
        value += c.digit(k) * system.q_length(k - 1)
        if value == system.q_length(k) - 1:
            carry_point = k
    if carry_point > horizon - window:
        for letter in sorted(delta.infinite_letters()):
            if all(c.digit(k) == (0 if delta.x(k) == letter else delta.a(k)) for k in range(1, horizon + 1)):
                logger.info(f"🔄 {delta}: intercept {c} is {letter}·c_Δ, shifting to c_Δ")
                return DigitString()
        raise HorizonExceededError(f"odometer carry for {c} still running at k={carry_point}")
    width = carry_point + 1
    head = system.rep_digits(system.val_prefix(c, width) + 1, width=width)
    shifted = c.with_prefix(head)
    if not system.satisfies_ostrowski(shifted):
        raise ShiftInterceptError(f"T(t) has no {delta}-intercept: carrying {c} gives {shifted}")
    return shifted


def intercept_of(delta: DirectiveWord, prefix: FiniteWord) -> Tuple[DigitString, int]:
    """
    Desubstitute a finite prefix: t = T^{b_1} L_{y_1}(t_1), t_1 = T^{b_2} L_{y_2}(t_2), ...

    Returns:
        (digits, certified_count) where c_k counts the b's equal to 1 in run k and only runs
        decoded entirely from residual words of length ≥ 2 are kept
    """
    word = list(prefix)
    bits: List[int] = []
    step = 1
    while len(word) >= 2:
        y = delta.letter(step)
        if word[0] == y:
            bits.append(0)
        else:
            bits.append(1)
            word.insert(0, y)
        decoded: List[int] = []
        p = 0
        while p < len(word) - 1:
            if word[p] != y:
                raise InvalidArgumentError(
                    f"prefix {prefix} is not a T^b∘L_{y} image at desubstitution step {step}"
                )
            if word[p + 1] == y:
                decoded.append(y)
                p += 1
            else:
                decoded.append(word[p + 1])
                p += 2
        if p == len(word) - 1 and word[p] != y:
            raise InvalidArgumentError(f"prefix {prefix} is not a T^b∘L_{y} image at desubstitution step {step}")
        word = decoded
        step += 1
    steps = len(bits)
    digits: List[int] = []
    k = 1
    while delta.r(k) <= steps:
        digits.append(sum(bits[delta.r(k - 1):delta.r(k)]))
        k += 1
    logger.debug(f"🔍 {delta}: desubstituted {len(prefix)} symbols, {len(digits)} digits certified")
    return DigitString(tuple(digits), truncated=True), len(digits)
