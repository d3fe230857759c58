"""
Initial nonrepetitive complexity for the episturmian toolkit.
Handles the brute-force and Rauzy-graph oracles, the interval / θ / block machinery and the
closed-form case analysis for regular episturmian words.
"""
from dataclasses import dataclass, field
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import networkx as nx

from directive import DirectiveWord
from engine import EXPLICIT_WORD_CAP, standard_prefix, word_from_intercept
from errors import (
    InsufficientHorizonError,
    InvalidArgumentError,
    InvalidInterceptError,
    OracleMismatchError,
    ResourceLimitError,
    UnsupportedDirectiveError,
)
from numeration import DigitString, DigitsLike, NumerationSystem, as_digits, numeration_system
from words import FiniteWord

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
HASH_MODULUS = (1 << 61) - 1
HASH_BASE = 1_000_003
RAUZY_HORIZON_FACTOR = 4


# =========================
# Types
# =========================
@dataclass(frozen=True)
class IntervalIndex:
    """Position of n in the partition I_k = (|u_{r_k}|, |u_{r_{k+1}}|] and its subinterval I_{k,ℓ}."""
    k: int
    ell: int
    lower: int
    upper: int
    sub_lower: int
    sub_upper: int

    @property
    def size(self) -> int:
        return self.sub_upper - self.sub_lower


@dataclass(frozen=True)
class Block:
    """One block x_{k+1}^{a_{k+1}-ℓ} y of the shifts of c_Δ, with its four λ ranges (inclusive, possibly empty)."""
    index: int
    letter: int
    start: int
    width: int
    lambdas: Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class BlockTable:
    k: int
    ell: int
    theta: int
    count: int
    blocks: Tuple[Block, ...]

    @property
    def end(self) -> int:
        """One past the last covered shift, q_{k+d-1}."""
        last = self.blocks[-1]
        return last.start + last.width


@dataclass
class RauzyGraph:
    """Rauzy graph Γ(n) of a language, with its special vertices and cycle structure."""
    order: int
    graph: nx.DiGraph
    left_special: Optional[Tuple[int, ...]]
    right_special: Optional[Tuple[int, ...]]
    central_path_length: int
    cycle_lengths: Dict[int, int] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()


@dataclass(frozen=True)
class IrepRange:
    """A maximal run of n on which one bullet of the case analysis applies; irep is constant on it."""
    case_id: str
    bullet: int
    n_lo: int
    n_hi: int
    value: int


@dataclass(frozen=True)
class IrepResult:
    value: int
    case_id: str
    bullet: int
    shift: int
    k: int

    @property
    def label(self) -> str:
        return f"{self.case_id}.{self.bullet}"


# =========================
# 1. Brute-force oracles
# =========================
def _require_order(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError(f"factor length must be at least 1, got {n}")


def irep_brute(prefix: FiniteWord, n: int) -> Optional[int]:
    """
    Number of pairwise distinct leading length-n windows before the first repeat.

    Args:
        prefix: Finite prefix of the word
        n: Window length

    Returns:
        The count, or None when no repetition is witnessed inside the prefix
    """
    _require_order(n)
    symbols = prefix.symbols
    if len(symbols) < n:
        return None
    top = pow(HASH_BASE, n - 1, HASH_MODULUS)
    value = 0
    for letter in symbols[:n]:
        value = (value * HASH_BASE + letter + 1) % HASH_MODULUS
    seen: Dict[int, List[int]] = {}
    for i in range(len(symbols) - n + 1):
        if i:
            value = ((value - (symbols[i - 1] + 1) * top) * HASH_BASE + symbols[i + n - 1] + 1) % HASH_MODULUS
        starts = seen.setdefault(value, [])
        if starts:
            window = symbols[i:i + n]
            if any(symbols[s:s + n] == window for s in starts):
                return i
        starts.append(i)
    return None


def z_array(symbols: Sequence[int]) -> List[int]:
    """z[i] = length of the longest common prefix of symbols and symbols[i:] (z[0] = len)."""
    size = len(symbols)
    z = [0] * size
    if size:
        z[0] = size
    left = right = 0
    for i in range(1, size):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < size and symbols[z[i]] == symbols[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left, right = i, i + z[i]
    return z


def prep_profile(prefix: FiniteWord, limit: int) -> List[Optional[int]]:
    """prep_brute(prefix, n) for n = 1 ... limit in one pass; entry n - 1 holds n."""
    z = z_array(prefix.symbols)
    profile: List[Optional[int]] = [None] * limit
    filled = 0
    for i in range(1, len(z)):
        reach = min(z[i], limit)
        while filled < reach:
            profile[filled] = i
            filled += 1
        if filled == limit:
            break
    return profile


def prep_brute(prefix: FiniteWord, n: int) -> Optional[int]:
    """Number of shifts before the length-n prefix reoccurs, or None if it does not within the prefix."""
    _require_order(n)
    return prep_profile(prefix, n)[n - 1]


def factor_complexity(prefix: FiniteWord, n: int) -> int:
    """Number of distinct length-n factors of a finite word."""
    symbols = prefix.symbols
    return len({symbols[i:i + n] for i in range(len(symbols) - n + 1)})


def irep_brute_sweep(delta: DirectiveWord, intercept: DigitsLike, n_from: int, n_to: int,
                     length: Optional[int] = None) -> Dict[int, int]:
    """irep_brute for n_from ... n_to on one generated prefix, doubled until every n sees a repeat."""
    _require_order(n_from)
    length = length or RAUZY_HORIZON_FACTOR * (n_to + 1)
    values: Dict[int, int] = {}
    while True:
        word = word_from_intercept(delta, intercept, length)
        for n in range(n_from, n_to + 1):
            if n not in values:
                count = irep_brute(word, n)
                if count is not None:
                    values[n] = count
        if len(values) == n_to - n_from + 1:
            return values
        if 2 * length > EXPLICIT_WORD_CAP:
            raise ResourceLimitError(f"no repetition for some n ≤ {n_to} within {length} symbols")
        logger.debug(f"🔄 brute sweep of {delta}: doubling prefix to {2 * length}")
        length *= 2


# =========================
# 2. Rauzy graphs
# =========================
def _build_graph(symbols: Tuple[int, ...], n: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    for i in range(len(symbols) - n):
        factor = symbols[i:i + n + 1]
        graph.add_edge(factor[:-1], factor[1:], letter=factor[-1])
    return graph


def _cycle_lengths(graph: nx.DiGraph, right: Tuple[int, ...]) -> Dict[int, int]:
    lengths: Dict[int, int] = {}
    for _, target, data in graph.out_edges(right, data=True):
        steps, vertex = 1, target
        while vertex != right:
            successors = list(graph.successors(vertex))
            if len(successors) != 1:
                break
            vertex = successors[0]
            steps += 1
            if steps > graph.number_of_nodes():
                break
        lengths[data['letter']] = steps
    return lengths


def rauzy_graph(delta: DirectiveWord, n: int, horizon: Optional[int] = None) -> RauzyGraph:
    """
    Rauzy graph of order n of the language of c_Δ, collected from a prefix.

    Args:
        delta: Directive word
        n: Order (vertices are length-n factors)
        horizon: Prefix length; when omitted it doubles until the factor sets are complete

    Returns:
        RauzyGraph with special vertices, central path length and cycle lengths by letter
    """
    _require_order(n)
    d = delta.d
    expected = (d - 1) * n + 1
    regular = delta.regular_period is not None
    length = horizon or RAUZY_HORIZON_FACTOR * (d * n + 2)
    previous = None
    while True:
        graph = _build_graph(standard_prefix(delta, length).symbols, n)
        counts = (graph.number_of_nodes(), graph.number_of_edges())
        if horizon is not None:
            break
        if regular and counts == (expected, expected + d - 1):
            break
        if not regular and counts[0] >= expected and counts == previous:
            break
        if 2 * length > EXPLICIT_WORD_CAP:
            break
        previous = counts
        length *= 2
    if graph.number_of_nodes() < expected:
        raise InsufficientHorizonError(
            f"{graph.number_of_nodes()} factors of length {n} from a prefix of length {length}, expected {expected}"
        )
    left = [v for v in graph if graph.in_degree(v) >= 2]
    right = [v for v in graph if graph.out_degree(v) >= 2]
    left_special = left[0] if len(left) == 1 else None
    right_special = right[0] if len(right) == 1 else None
    central = 0
    cycles: Dict[int, int] = {}
    if left_special is not None and right_special is not None:
        central = nx.shortest_path_length(graph, left_special, right_special)
        cycles = _cycle_lengths(graph, right_special)
    logger.debug(f"📊 Γ({n}) of {delta}: {counts[0]} vertices, {counts[1]} edges from {length} symbols")
    return RauzyGraph(n, graph, left_special, right_special, central, cycles)


def irep_rauzy(delta: DirectiveWord, intercept: DigitsLike, n: int, graph: Optional[RauzyGraph] = None) -> int:
    """Walk Γ(n) along the word from its prefix vertex until a vertex repeats."""
    rauzy = graph or rauzy_graph(delta, n)
    word = word_from_intercept(delta, intercept, rauzy.vertex_count + n).symbols
    current = word[:n]
    if current not in rauzy.graph:
        raise InsufficientHorizonError(f"prefix vertex {current} missing from Γ({n})")
    seen = {current}
    for i in range(1, rauzy.vertex_count + 1):
        letter = word[n + i - 1]
        following = [v for _, v, data in rauzy.graph.out_edges(current, data=True) if data['letter'] == letter]
        if not following:
            raise InsufficientHorizonError(f"edge {current}->{letter} missing from Γ({n})")
        current = following[0]
        if current in seen:
            return i
        seen.add(current)
    raise InsufficientHorizonError(f"no repeated vertex within {rauzy.vertex_count} steps of Γ({n})")


# =========================
# 3. Intervals, θ and blocks
# =========================
def interval_of(delta: DirectiveWord, n: int) -> IntervalIndex:
    """The unique (k, ℓ) with n ∈ I_{k,ℓ}, from lengths only."""
    _require_order(n)
    system = numeration_system(delta)
    k = 0
    while n > system.run_start_length(k + 1):
        k += 1
    base = system.prefix_sum(k)
    q = system.q_length(k)
    ell = 0 if n <= base else -(-(n - base) // q)
    sub_upper = base + ell * q
    sub_lower = system.run_start_length(k) if ell == 0 else sub_upper - q
    return IntervalIndex(k, ell, system.run_start_length(k), system.run_start_length(k + 1), sub_lower, sub_upper)


def theta(delta: DirectiveWord, n: int) -> int:
    """θ_n = |u_{r_k+ℓ+1}| - n."""
    return interval_of(delta, n).sub_upper - n


def _regular_period(delta: DirectiveWord) -> int:
    d = delta.regular_period
    if d is None:
        raise UnsupportedDirectiveError(f"{delta} is not regular")
    return d


def _block_letter(delta: DirectiveWord, c: DigitString, k: int, d: int) -> int:
    """Type letter x_t, t the least index in [k+2, k+d-1] with c_t < a_t, else t = k + d."""
    for t in range(k + 2, k + d):
        if c.digit(t) < delta.a(t):
            return delta.x(t)
    return delta.x(k + d)


def _lambda_ranges(start: int, width: int, a: int, ell: int, q: int, th: int):
    first = (start, start + (a - ell - 1) * q + th)
    second = (first[1] + 1, start + (a - ell) * q - 1)
    third = (start + (a - ell) * q, start + (a - ell) * q + th)
    fourth = (third[1] + 1, start + width - 1)
    return first, second, third, fourth


def block_table(delta: DirectiveWord, k: int, ell: int, theta_n: int = 0) -> BlockTable:
    """
    Blocks covering the shifts 0 ... q_{k+d-1} - 1 of c_Δ for n ∈ I_{k,ℓ} with θ_n = theta_n.

    Returns:
        BlockTable with K_d = Π_{i=2}^{d-1} (a_{k+i} + 1) blocks
    """
    d = _regular_period(delta)
    system = numeration_system(delta)
    a = delta.a(k + 1)
    if not 0 <= ell < max(a, 1):
        raise InvalidArgumentError(f"ℓ must lie in [0, {a}), got {ell}")
    q = system.q_length(k)
    end = system.q_length(k + d - 1)
    width_digits = k + d - 1
    blocks: List[Block] = []
    start = 0
    while start < end:
        digits = DigitString(system.rep_digits(start, width=width_digits))
        letter = _block_letter(delta, digits, k, d)
        width = system.tau_length(k + 1, letter)
        blocks.append(Block(len(blocks) + 1, letter, start, width,
                            _lambda_ranges(start, width, a, ell, q, theta_n)))
        start += width
    expected = prod(delta.a(k + i) + 1 for i in range(2, d))
    if start != end or len(blocks) != expected:
        raise OracleMismatchError(
            f"blocks of {delta} at k={k} end at {start} (expected {end}) with {len(blocks)} blocks (expected {expected})"
        )
    return BlockTable(k, ell, theta_n, len(blocks), tuple(blocks))


def irep_shifted_standard(delta: DirectiveWord, m: int, n: int) -> int:
    """
    irep(T^m(c_Δ), n) for 0 ≤ m < q_{k+d-1}, read off the λ range containing m.
    """
    d = _regular_period(delta)
    system = numeration_system(delta)
    where = interval_of(delta, n)
    k, ell, th = where.k, where.ell, where.sub_upper - n
    if not 0 <= m < system.q_length(k + d - 1):
        raise InvalidArgumentError(f"shift {m} outside [0, q_{k + d - 1}) for n={n}")
    digits = DigitString(system.rep_digits(m, width=k + d - 1))
    offset = system.val_prefix(digits, k + 1)
    letter = _block_letter(delta, digits, k, d)
    a, q = delta.a(k + 1), system.q_length(k)
    inner = system.tau_length(k, letter)
    width = a * q + inner
    if offset <= (a - ell - 1) * q + th:
        return q
    if offset < (a - ell) * q:
        return width - offset
    if offset <= (a - ell) * q + th:
        return ell * q + inner
    return q + width - offset


# =========================
# 4. Closed form for regular words
# =========================
def _case_bullets(system: NumerationSystem, delta: DirectiveWord, c: DigitString,
                  k: int, d: int) -> Tuple[str, List[Tuple[int, int]]]:
    """Fired case and its (upper bound, irep) bullets in evaluation order."""
    a = delta.a(k + 1)
    top, low = c.digit(k + 1), (c.digit(k) if k >= 1 else 0)
    q = system.q_length(k)
    head = system.prefix_sum(k)
    right = system.run_start_length(k + 1)
    before, current, after = (system.val_prefix(c, k - 1), system.val_prefix(c, k),
                              system.val_prefix(c, k + 1))
    letter = _block_letter(delta, c, k, d)
    inner = system.tau_length(k, letter)
    outer = a * q + inner

    if top == 0 and all(c.digit(i) == delta.a(i) for i in range(k + 2, k + d + 1)):
        return 'v', [(right, q)]
    if top == a:
        return 'ii', [(head - current, inner), (right, q + inner - current)]
    if top == a - 1 and top > 0 and low != 0:
        return 'iii', [(head, q + inner - current), (head + q - current, q + inner),
                       (right, 2 * q + inner - current)]
    if top > 0:
        return 'i', [(right - after, q), (right - top * q, outer - after),
                     (right + q - after, (a - top) * q + inner), (right, q + outer - after)]
    if low == 0:
        return 'iv.a', [(right - before, q), (right, outer - before)]
    if a == 1:
        return 'iv.b', [(right, outer - current)]
    return 'iv.c', [(right - current, q), (right, outer - current)]


def irep_case_ranges(delta: DirectiveWord, intercept: DigitsLike, k: int) -> List[IrepRange]:
    """
    Tile I_k into the n-ranges of the fired case; irep is constant on each range.

    Args:
        delta: Regular directive word
        intercept: Digits available through k + d
        k: Interval index

    Returns:
        Consecutive IrepRange entries covering I_k ∩ [1, ∞)
    """
    d = _regular_period(delta)
    c = as_digits(intercept)
    system = numeration_system(delta)
    case_id, bullets = _case_bullets(system, delta, c, k, d)
    low = max(system.run_start_length(k), 0)
    right = system.run_start_length(k + 1)
    ranges: List[IrepRange] = []
    for bullet, (bound, value) in enumerate(bullets, start=1):
        high = min(bound, right)
        if high > low:
            ranges.append(IrepRange(case_id, bullet, low + 1, high, value))
            low = high
    return ranges


def case_shift(delta: DirectiveWord, intercept: DigitsLike, k: int, case_id: str) -> int:
    """Shift m of c_Δ whose irep agrees with the word on I_k."""
    d = _regular_period(delta)
    width = k + d if case_id == 'v' else k + d - 1
    return numeration_system(delta).val_prefix(as_digits(intercept), width)


def irep_regular(delta: DirectiveWord, intercept: DigitsLike, n: int) -> IrepResult:
    """
    Closed-form irep of the regular episturmian word with the given intercept.

    Returns:
        IrepResult with the value, the fired case and bullet, and the shift m used
    """
    _regular_period(delta)
    c = as_digits(intercept)
    if not numeration_system(delta).satisfies_ostrowski(c):
        raise InvalidInterceptError(f"intercept {c} violates the Ostrowski conditions of {delta}")
    where = interval_of(delta, n)
    for entry in irep_case_ranges(delta, c, where.k):
        if entry.n_lo <= n <= entry.n_hi:
            return IrepResult(entry.value, entry.case_id, entry.bullet,
                              case_shift(delta, c, where.k, entry.case_id), where.k)
    raise OracleMismatchError(f"n={n} not covered by the case ranges of I_{where.k}")
