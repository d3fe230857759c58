"""
Generalized Ostrowski numeration for the episturmian toolkit.
Handles the lengths q_k, central-word lengths, values and greedy representations of digit strings,
the Ostrowski conditions and the textual intercept grammar.
"""
from dataclasses import dataclass
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union
import logging
import threading
import weakref

from directive import STREAM_HORIZON, DirectiveWord
from errors import InsufficientInterceptError, InvalidArgumentError, SpecParseError

logger = logging.getLogger(__name__)


# =========================
# Digit strings
# =========================
@dataclass(frozen=True)
class DigitString:
    """
    Least-significant-first digits c_1 c_2 ... of an intercept.

    `period` empty means the digits continue with zeros; a nonempty period repeats forever.
    A truncated string (from desubstitution) carries no information past its digits.
    """
    digits: Tuple[int, ...] = ()
    period: Tuple[int, ...] = ()
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'digits', tuple(self.digits))
        object.__setattr__(self, 'period', tuple(self.period))
        if any(c < 0 for c in self.digits + self.period):
            raise InvalidArgumentError("digits must be nonnegative")
        if self.period and not any(self.period):
            object.__setattr__(self, 'period', ())
        if self.truncated and self.period:
            raise InvalidArgumentError("a truncated digit string cannot be periodic")

    @classmethod
    def zeros(cls) -> "DigitString":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Parse `zeros`, `periodic:<pre>|<per>`, `digits:<run>`, a digit run or a bracketed list."""
        text = text.strip()
        if text == 'zeros':
            return cls()
        if text.startswith('periodic:'):
            body = text[len('periodic:'):]
            if '|' not in body:
                raise SpecParseError(f"missing '|' in intercept {text!r}")
            pre, _, per = body.partition('|')
            period = _parse_digits(per, text)
            if not period:
                raise SpecParseError(f"empty period in intercept {text!r}")
            return cls(_parse_digits(pre, text), period)
        if text.startswith('digits:'):
            text = text[len('digits:'):]
        return cls(_parse_digits(text, text))

    def __str__(self) -> str:
        if self.period:
            return f"periodic:{render_digits(self.digits)}|{render_digits(self.period)}"
        if not any(self.digits):
            return 'zeros'
        return f"digits:{render_digits(self.digits)}"

    def digit(self, i: int) -> int:
        """Return c_i (1-based)."""
        if i < 1:
            raise InvalidArgumentError(f"digit index must be at least 1, got {i}")
        if i <= len(self.digits):
            return self.digits[i - 1]
        if self.period:
            return self.period[(i - len(self.digits) - 1) % len(self.period)]
        if self.truncated:
            raise InsufficientInterceptError(f"digit c_{i} is not determined ({len(self.digits)} known)")
        return 0

    def prefix(self, k: int) -> Tuple[int, ...]:
        return tuple(self.digit(i) for i in range(1, k + 1))

    def with_prefix(self, head: Sequence[int]) -> "DigitString":
        """Replace c_1 ... c_{len(head)} by head, keeping every later digit."""
        width = len(head)
        if width <= len(self.digits):
            return DigitString(tuple(head) + self.digits[width:], self.period, self.truncated)
        if not self.period:
            return DigitString(tuple(head), (), self.truncated)
        # realign the period so that it starts right after the new head
        offset = (width - len(self.digits)) % len(self.period)
        return DigitString(tuple(head), self.period[offset:] + self.period[:offset])


def _parse_digits(text: str, spec: str) -> Tuple[int, ...]:
    text = text.strip()
    if text.startswith('[') and text.endswith(']'):
        body = text[1:-1].strip()
        items = [item.strip() for item in body.split(',')] if body else []
        if not all(item.isdigit() for item in items):
            raise SpecParseError(f"expected integers in {spec!r}")
        return tuple(int(item) for item in items)
    if text and not text.isdigit():
        raise SpecParseError(f"expected a digit run in {spec!r}, got {text!r}")
    return tuple(int(ch) for ch in text)


def render_digits(digits: Sequence[int]) -> str:
    if all(c < 10 for c in digits):
        return ''.join(str(c) for c in digits)
    return '[' + ','.join(str(c) for c in digits) + ']'


parse_intercept = DigitString.parse

DigitsLike = Union[DigitString, Sequence[int]]


def as_digits(c: DigitsLike) -> DigitString:
    return c if isinstance(c, DigitString) else DigitString(tuple(c))


# =========================
# Numeration system
# =========================
class NumerationSystem:
    """
    The Ostrowski numeration system of a directive word: place values q_k = |s_k| and the
    prefix sums S_k = a_1 q_0 + ... + a_k q_{k-1} = |u_{r_k + 1}|.

    Both tables are append-only and grow on demand.
    """

    def __init__(self, directive: DirectiveWord):
        self.directive = directive
        self._q: List[int] = [1]
        self._sums: List[int] = [0]
        self._lock = threading.Lock()
        self._validity: Dict[DigitString, bool] = {}

    def __repr__(self) -> str:
        return f"NumerationSystem({self.directive.text!r})"

    def _extend(self, k: int) -> None:
        if k < len(self._q):
            return
        delta = self.directive
        with self._lock:
            while len(self._q) <= k:
                i = len(self._q)
                total = self._sums[i - 1] + delta.a(i) * self._q[i - 1]
                j = delta.jfun(i)
                q = total - self._sums[j] + self.q_length(j - 1) if j is not None else total + 1
                self._sums.append(total)
                self._q.append(q)
        logger.debug(f"📊 {delta.text}: q table extended to k={k}")

    # -------------------------
    # Lengths
    # -------------------------
    def q_length(self, k: int) -> int:
        """Return q_k, with the conventions q_{-1} = 1 and q_{-i} = 0 for i ≥ 2."""
        if k < 0:
            return 1 if k == -1 else 0
        self._extend(k)
        return self._q[k]

    def prefix_sum(self, k: int) -> int:
        """Return S_k = |u_{r_k + 1}| (0 for k ≤ 0)."""
        if k <= 0:
            return 0
        self._extend(k)
        return self._sums[k]

    def run_start_length(self, k: int) -> int:
        """Return |u_{r_k}| with the convention |u_{r_0}| = -1."""
        if k == 0:
            return -1
        return self.prefix_sum(k) - self.q_length(k - 1)

    def central_length(self, n: int) -> int:
        """Return |u_n| for n ≥ 1, from lengths only."""
        if n < 1:
            raise InvalidArgumentError(f"central words are indexed from 1, got {n}")
        # n = r_k + t with 1 ≤ t ≤ a_{k+1}
        k = self.directive.run_of(n) - 1
        t = n - self.directive.r(k)
        return self.prefix_sum(k) + (t - 1) * self.q_length(k)

    def tau_length(self, k: int, y: int) -> int:
        """Return |τ_k(y)|: S_k - S_j + q_{j-1} for the largest j ≤ k with x_j = y, else S_k + 1."""
        for j in range(k, 0, -1):
            if self.directive.x(j) == y:
                return self.prefix_sum(k) - self.prefix_sum(j) + self.q_length(j - 1)
        return self.prefix_sum(k) + 1

    def index_above(self, n: int) -> int:
        """Least k with q_k > n."""
        k = 0
        while self.q_length(k) <= n:
            k += 1
        return k

    # -------------------------
    # Values and representations
    # -------------------------
    def val(self, c: DigitsLike) -> int:
        """Return Σ c_i q_{i-1} for a finite digit string."""
        c = as_digits(c)
        if c.period:
            raise InvalidArgumentError("val needs a finite digit string")
        return sum(digit * self.q_length(i) for i, digit in enumerate(c.digits) if digit)

    def val_prefix(self, c: DigitsLike, k: int) -> int:
        """Return val(c_1 ... c_k); V_k = 0 for k ≤ 0."""
        c = as_digits(c)
        return sum(c.digit(i) * self.q_length(i - 1) for i in range(1, k + 1))

    def rep_digits(self, n: int, width: Optional[int] = None) -> Tuple[int, ...]:
        """Greedy digits of n, least significant first, optionally zero-padded to `width`."""
        if n < 0:
            raise InvalidArgumentError(f"rep needs n ≥ 0, got {n}")
        top = self.index_above(n)
        digits = [0] * top
        rest = n
        for i in range(top - 1, -1, -1):
            digits[i], rest = divmod(rest, self.q_length(i))
        if width is not None:
            if width < top:
                raise InvalidArgumentError(f"rep({n}) needs {top} digits, more than width {width}")
            digits.extend([0] * (width - top))
        return tuple(digits)

    def rep(self, n: int) -> DigitString:
        """Greedy representation of n without trailing zeros; rep(0) = ε."""
        return DigitString(self.rep_digits(n))

    # -------------------------
    # Ostrowski conditions
    # -------------------------
    def _check_horizon(self, c: DigitString) -> int:
        if c.truncated or not c.period:
            return len(c.digits)
        structure = self.directive.run_structure()
        if structure is None:
            return len(c.digits) + STREAM_HORIZON
        pre, per = structure
        return len(c.digits) + pre + 2 * lcm(per, len(c.period)) + per + 2

    def satisfies_ostrowski(self, c: DigitsLike) -> bool:
        """
        True iff 0 ≤ c_i ≤ a_i and, whenever j = j(k) exists and c_i = a_i for j < i ≤ k, c_j = 0.
        Finite strings are checked as their zero extensions; periodic strings exactly.
        """
        c = as_digits(c)
        cached = self._validity.get(c)
        if cached is not None:
            return cached
        horizon = self._check_horizon(c)
        delta = self.directive
        valid = True
        for k in range(1, horizon + 1):
            ck = c.digit(k)
            if ck > delta.a(k):
                valid = False
                break
            j = delta.jfun(k)
            if j is None or ck != delta.a(k):
                continue
            if all(c.digit(i) == delta.a(i) for i in range(j + 1, k)) and c.digit(j) != 0:
                valid = False
                break
        with self._lock:
            self._validity[c] = valid
        return valid

    def ostrowski_strings(self, length: int) -> Iterator[Tuple[int, ...]]:
        """Yield every Ostrowski-valid digit tuple of the given length in lexicographic order."""
        delta = self.directive

        def extend(prefix: List[int]) -> Iterator[Tuple[int, ...]]:
            k = len(prefix)
            if k == length:
                yield tuple(prefix)
                return
            for digit in range(delta.a(k + 1) + 1):
                prefix.append(digit)
                if self._locally_valid(prefix):
                    yield from extend(prefix)
                prefix.pop()

        yield from extend([])

    def _locally_valid(self, prefix: List[int]) -> bool:
        k = len(prefix)
        delta = self.directive
        j = delta.jfun(k)
        if j is None or prefix[k - 1] != delta.a(k):
            return True
        return not (all(prefix[i - 1] == delta.a(i) for i in range(j + 1, k)) and prefix[j - 1] != 0)


# =========================
# Per-directive cache
# =========================
_SYSTEMS: "weakref.WeakKeyDictionary[DirectiveWord, NumerationSystem]" = weakref.WeakKeyDictionary()
_SYSTEMS_LOCK = threading.Lock()


def numeration_system(directive: DirectiveWord) -> NumerationSystem:
    """Return the shared NumerationSystem of a directive word."""
    with _SYSTEMS_LOCK:
        system = _SYSTEMS.get(directive)
        if system is None:
            system = NumerationSystem(directive)
            _SYSTEMS[directive] = system
    return system
