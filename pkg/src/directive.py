"""
Directive words for the episturmian toolkit.
Handles letter access, the multiplicative form x_1^{a_1} x_2^{a_2} ..., the P(k) / j(k) lookups,
regularity detection and the textual directive grammar.
"""
from bisect import bisect_left
from dataclasses import dataclass
from math import lcm
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple
import logging
import threading

from errors import InvalidArgumentError, SpecParseError

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
STREAM_HORIZON = 256
GRAMMAR_ALPHABET_LIMIT = 10


@dataclass(frozen=True)
class MultiplicativeEntry:
    """One maximal run x_k^{a_k} of a directive word, with r_k = a_1 + ... + a_k."""
    k: int
    x: int
    a: int
    r: int


class DirectiveWord:
    """
    An infinite directive word y_1 y_2 ..., either eventually periodic or a regular word
    whose partial quotients come from an eventually periodic list or a stream.

    The run decomposition is computed lazily and only ever grows.
    """

    def __init__(self, letter_at: Optional[Callable[[int], int]], alphabet: int, text: str, *,
                 preperiod: Tuple[int, ...] = (), period: Tuple[int, ...] = (),
                 cycle: Tuple[int, ...] = (), quotient_at: Optional[Callable[[int], int]] = None,
                 quotient_pre: Tuple[int, ...] = (), quotient_per: Tuple[int, ...] = ()):
        self.alphabet = alphabet
        self.text = text
        self.preperiod = preperiod
        self.period = period
        self.cycle = cycle
        self.quotient_pre = quotient_pre
        self.quotient_per = quotient_per
        self._letter_at = letter_at
        self._quotient_at = quotient_at
        self._runs: List[MultiplicativeEntry] = []
        self._ends: List[int] = []
        self._lock = threading.Lock()
        self._regular: Optional[int] = None
        self._regular_checked = False

    # -------------------------
    # Constructors
    # -------------------------
    @classmethod
    def eventually_periodic(cls, preperiod: Sequence[int], period: Sequence[int],
                            alphabet: Optional[int] = None) -> "DirectiveWord":
        """
        Build the directive word preperiod · period^ω.

        Args:
            preperiod: Letters before the period (may be empty)
            period: Nonempty repeated block, not a single repeated letter

        Returns:
            DirectiveWord with exact (decidable) run structure
        """
        pre, per = tuple(preperiod), tuple(period)
        if not per:
            raise InvalidArgumentError("period must be nonempty")
        if len(set(per)) < 2:
            raise InvalidArgumentError("directive word must not be eventually constant")
        letters = pre + per
        if min(letters) < 0:
            raise InvalidArgumentError("letters must be nonnegative")
        size = alphabet if alphabet is not None else max(letters) + 1
        if max(letters) >= size:
            raise InvalidArgumentError(f"letter {max(letters)} outside alphabet of size {size}")

        def letter_at(n: int) -> int:
            if n <= len(pre):
                return pre[n - 1]
            return per[(n - len(pre) - 1) % len(per)]

        text = "periodic:" + _render_letters(pre) + "|" + _render_letters(per)
        return cls(letter_at, size, text, preperiod=pre, period=per)

    @classmethod
    def regular(cls, d: int, partial_quotients, letters: Optional[Sequence[int]] = None) -> "DirectiveWord":
        """
        Build the regular directive word with x-sequence (x_1 ... x_d)^ω.

        Args:
            d: Period of the x-sequence, at least 2
            partial_quotients: Either a (preperiod, period) pair of positive integers or a
                callable k -> a_k (stream; properties then hold up to a horizon only)
            letters: The d pairwise distinct letters, defaults to 0, ..., d-1
        """
        if d < 2:
            raise InvalidArgumentError(f"regular period must be at least 2, got {d}")
        cycle = tuple(letters) if letters is not None else tuple(range(d))
        if len(cycle) != d or len(set(cycle)) != d:
            raise InvalidArgumentError("regular letters must be d pairwise distinct letters")
        if callable(partial_quotients):
            word = cls(None, max(cycle) + 1, f"regular:d={d};a=<stream>", cycle=cycle,
                       quotient_at=partial_quotients)
        else:
            pre, per = (tuple(part) for part in partial_quotients)
            if not per:
                raise InvalidArgumentError("partial quotient period must be nonempty")
            if min(pre + per) < 1:
                raise InvalidArgumentError("partial quotients must be at least 1")

            def quotient_at(k: int) -> int:
                if k <= len(pre):
                    return pre[k - 1]
                return per[(k - len(pre) - 1) % len(per)]

            text = f"regular:d={d};a=" + ",".join(map(str, pre)) + "|" + ",".join(map(str, per))
            word = cls(None, max(cycle) + 1, text, cycle=cycle, quotient_at=quotient_at,
                       quotient_pre=pre, quotient_per=per)
        word._regular, word._regular_checked = d, True
        return word

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"DirectiveWord({self.text!r})"

    # -------------------------
    # Kind queries
    # -------------------------
    @property
    def is_stream(self) -> bool:
        """True when the partial quotients come from a generator (no exact periodic structure)."""
        return self._quotient_at is not None and not self.quotient_per

    @property
    def d(self) -> int:
        """Number of letters of the directive alphabet that occur infinitely often."""
        return len(self.infinite_letters())

    def infinite_letters(self) -> FrozenSet[int]:
        if self.cycle:
            return frozenset(self.cycle)
        return frozenset(self.period)

    # -------------------------
    # Run decomposition
    # -------------------------
    def _extend_runs(self, count: int = 0, position: int = 0) -> None:
        """Grow the run cache until it holds `count` runs and covers `position`."""
        if len(self._runs) >= count and (self._ends and self._ends[-1] >= position):
            return
        with self._lock:
            while len(self._runs) < count or not self._ends or self._ends[-1] < position:
                k = len(self._runs) + 1
                start = self._ends[-1] + 1 if self._ends else 1
                if self.cycle:
                    x = self.cycle[(k - 1) % len(self.cycle)]
                    a = self._quotient_at(k)
                    if a < 1:
                        raise InvalidArgumentError(f"partial quotient a_{k} = {a} must be at least 1")
                else:
                    x = self._letter_at(start)
                    a = 1
                    while self._letter_at(start + a) == x:
                        a += 1
                self._runs.append(MultiplicativeEntry(k=k, x=x, a=a, r=start + a - 1))
                self._ends.append(start + a - 1)
            logger.debug(f"🔄 {self.text}: run cache grown to {len(self._runs)} runs")

    def multiplicative(self, k: int) -> MultiplicativeEntry:
        """Return (x_k, a_k, r_k); r_0 = 0 is represented by k = 0 with x = -1, a = 0."""
        if k < 0:
            raise InvalidArgumentError(f"run index must be nonnegative, got {k}")
        if k == 0:
            return MultiplicativeEntry(k=0, x=-1, a=0, r=0)
        self._extend_runs(count=k)
        return self._runs[k - 1]

    def x(self, k: int) -> int:
        return self.multiplicative(k).x

    def a(self, k: int) -> int:
        return self.multiplicative(k).a

    def r(self, k: int) -> int:
        return self.multiplicative(k).r

    def run_of(self, n: int) -> int:
        """Return the run index k with r_{k-1} < n ≤ r_k."""
        if n < 1:
            raise InvalidArgumentError(f"position must be at least 1, got {n}")
        self._extend_runs(position=n)
        return bisect_left(self._ends, n) + 1

    def letter(self, n: int) -> int:
        """Return y_n."""
        if n < 1:
            raise InvalidArgumentError(f"position must be at least 1, got {n}")
        if self._letter_at is not None:
            return self._letter_at(n)
        return self.x(self.run_of(n))

    def run_structure(self) -> Optional[Tuple[int, int]]:
        """
        Return (run_preperiod, run_period) such that runs k > run_preperiod repeat with
        period run_period, or None for streamed partial quotients.
        """
        if self.is_stream:
            return None
        if self.cycle:
            return len(self.quotient_pre), lcm(len(self.cycle), len(self.quotient_per))
        per = self.period
        boundaries = sum(1 for i in range(len(per)) if per[i] != per[i - 1])
        threshold = len(self.preperiod) + 1
        self._extend_runs(position=threshold)
        return bisect_left(self._ends, threshold) + 1, boundaries

    def exact_horizon(self, extra: int = 0) -> int:
        """Run count after which every eventually periodic property repeats; STREAM_HORIZON for streams."""
        structure = self.run_structure()
        if structure is None:
            return STREAM_HORIZON + extra
        pre, per = structure
        return pre + 2 * per + extra

    # -------------------------
    # P(k) and j(k)
    # -------------------------
    def pfun(self, n: int) -> Optional[int]:
        """Return max{p < n : y_p = y_n} or None."""
        target = self.letter(n)
        for p in range(n - 1, 0, -1):
            if self.letter(p) == target:
                return p
        return None

    def jfun(self, k: int) -> Optional[int]:
        """Return the largest j ≤ k with x_j = x_{k+1}, or None when x_{k+1} is new."""
        if k < 1:
            return None
        if self.cycle:
            d = len(self.cycle)
            return k - d + 1 if k >= d else None
        target = self.x(k + 1)
        for j in range(k, 0, -1):
            if self._runs[j - 1].x == target:
                return j
        return None

    # -------------------------
    # Regularity and quotients
    # -------------------------
    def detect_regular(self, horizon: int = STREAM_HORIZON) -> Optional[int]:
        """
        Return d if x_1, ..., x_d are pairwise distinct and the x-sequence is (x_1 ... x_d)-periodic.

        Exact for eventually periodic specifications (the horizon is extended to cover one
        full period of the run structure); certified up to `horizon` runs for streams.
        """
        if horizon < 2:
            raise InvalidArgumentError(f"horizon must be at least 2, got {horizon}")
        if self.cycle:
            return len(self.cycle)
        seen = []
        k = 1
        while self.x(k) not in seen:
            seen.append(self.x(k))
            k += 1
        d = len(seen)
        if d < 2 or self.x(d + 1) != self.x(1):
            return None
        structure = self.run_structure()
        limit = horizon if structure is None else max(horizon, structure[0] + 2 * structure[1] + d + 2)
        for k in range(d + 1, limit + 1):
            if self.x(k) != self.x(k - d):
                return None
        return d

    @property
    def regular_period(self) -> Optional[int]:
        """Cached detect_regular()."""
        if not self._regular_checked:
            self._regular = self.detect_regular()
            self._regular_checked = True
        return self._regular

    def max_partial_quotient(self, horizon: Optional[int] = None) -> int:
        """Largest a_k over the eventual period, or over the first `horizon` runs for streams."""
        structure = self.run_structure()
        if structure is None:
            return max(self.a(k) for k in range(1, (horizon or STREAM_HORIZON) + 1))
        pre, per = structure
        return max(self.a(k) for k in range(pre + 1, pre + per + 1))

    def has_unbounded_quotients(self, horizon: int = STREAM_HORIZON) -> bool:
        """
        Exact (False) for eventually periodic specifications. For streams the answer is
        certified to the horizon: the running maximum must still be growing in its second half.
        """
        if self.run_structure() is not None:
            return False
        half = max(horizon // 2, 1)
        early = max(self.a(k) for k in range(1, half + 1))
        late = max(self.a(k) for k in range(half + 1, horizon + 1))
        return late > early


# =========================
# Textual grammar
# =========================
def _render_letters(letters: Sequence[int]) -> str:
    return ''.join(str(letter) for letter in letters)


def _parse_digit_run(text: str, spec: str) -> Tuple[int, ...]:
    if text and not text.isdigit():
        raise SpecParseError(f"expected single-digit letters in {spec!r}, got {text!r}")
    return tuple(int(ch) for ch in text)


def _parse_int_list(text: str, spec: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    items = [item.strip() for item in text.split(',')]
    if not all(item.isdigit() for item in items):
        raise SpecParseError(f"expected comma-separated integers in {spec!r}, got {text!r}")
    return tuple(int(item) for item in items)


def parse_directive(spec: str) -> DirectiveWord:
    """
    Parse `periodic:<pre>|<per>` (single-digit letters) or `regular:d=<d>;a=<pre>|<per>`
    (comma-separated partial quotients; `a=k` streams a_k = k).
    """
    spec = spec.strip()
    kind, _, body = spec.partition(':')
    try:
        if kind == 'periodic':
            if '|' not in body:
                raise SpecParseError(f"missing '|' in {spec!r}")
            pre, _, per = body.partition('|')
            return DirectiveWord.eventually_periodic(
                _parse_digit_run(pre, spec), _parse_digit_run(per, spec)
            )
        if kind == 'regular':
            fields = {}
            for part in body.split(';'):
                key, sep, value = part.partition('=')
                if not sep:
                    raise SpecParseError(f"expected key=value in {spec!r}, got {part!r}")
                fields[key.strip()] = value.strip()
            if set(fields) != {'d', 'a'} or not fields['d'].isdigit():
                raise SpecParseError(f"regular spec needs d=<int> and a=<list>: {spec!r}")
            d = int(fields['d'])
            if d > GRAMMAR_ALPHABET_LIMIT:
                raise SpecParseError(f"the textual grammar covers at most {GRAMMAR_ALPHABET_LIMIT} letters, got d={d}")
            if fields['a'] == 'k':
                return DirectiveWord.regular(d, lambda k: k)
            if '|' not in fields['a']:
                raise SpecParseError(f"missing '|' in partial quotients of {spec!r}")
            pre, _, per = fields['a'].partition('|')
            return DirectiveWord.regular(d, (_parse_int_list(pre, spec), _parse_int_list(per, spec)))
    except SpecParseError:
        raise
    except InvalidArgumentError as e:
        raise SpecParseError(f"invalid directive {spec!r}: {e}") from e
    raise SpecParseError(f"unknown directive kind in {spec!r}; expected periodic: or regular:")
