"""
Exponents for the episturmian toolkit.
Handles Diophantine and initial critical exponent estimates, closed forms for standard words,
dominant roots of the length recurrences, named constants and irrationality-exponent bounds.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union
import logging

import mpmath as mp

from complexity import irep_brute, irep_case_ranges, prep_profile
from directive import DirectiveWord
from engine import EXPLICIT_WORD_CAP, word_from_intercept
from errors import BadRecurrenceError, InvalidArgumentError, ResourceLimitError, UnsupportedDirectiveError
from numeration import DigitsLike, as_digits, numeration_system

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
ROOT_TOLERANCE = 1e-12
WORKING_DPS = 40
MONOTONE_TOLERANCE = Fraction(1, 10 ** 9)
ICE_PREFIX_FACTOR = 8
POWER_ITERATIONS = 2000


# =========================
# Types
# =========================
@dataclass
class ExponentEstimate:
    """1 + the largest recorded ratio n / irep (or n / prep) over an index range."""
    value: Fraction
    ratios: List[Tuple[int, Fraction]] = field(default_factory=list)
    k_min: int = 0
    k_max: int = 0
    monotone_tail: bool = False
    certified: bool = True
    lower_bound_only: bool = False

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class RecurrenceRoot:
    """Bracket [lower, upper] around the dominant root of x^n - Σ c_i x^{n-i}."""
    coefficients: Tuple[int, ...]
    lower: mp.mpf
    upper: mp.mpf

    @property
    def value(self) -> mp.mpf:
        return (self.lower + self.upper) / 2

    @property
    def width(self) -> mp.mpf:
        return self.upper - self.lower

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class IrrationalityBounds:
    lower: Fraction
    upper: Union[Fraction, float]
    liouville: bool


# =========================
# 1. Dominant roots
# =========================
def _characteristic(coefficients: Sequence[int], x):
    degree = len(coefficients)
    return x ** degree - sum(c * x ** (degree - i) for i, c in enumerate(coefficients, start=1))


def dominant_root(coefficients: Sequence[int], tol: float = ROOT_TOLERANCE) -> RecurrenceRoot:
    """
    Bisect the dominant positive root of q_k = Σ c_i q_{k-i} on [1, 1 + Σ c_i].

    Args:
        coefficients: c_1, ..., c_n
        tol: Bracket width to reach

    Returns:
        RecurrenceRoot whose bracket has width ≤ tol
    """
    coefficients = tuple(coefficients)
    if not coefficients or tol <= 0:
        raise InvalidArgumentError("need at least one coefficient and a positive tolerance")
    with mp.workdps(WORKING_DPS):
        lower, upper = mp.mpf(1), mp.mpf(1 + sum(coefficients))
        low_value, high_value = _characteristic(coefficients, lower), _characteristic(coefficients, upper)
        if low_value * high_value > 0:
            raise BadRecurrenceError(f"no sign change of the characteristic polynomial of {coefficients}")
        while upper - lower > tol:
            middle = (lower + upper) / 2
            middle_value = _characteristic(coefficients, middle)
            if (middle_value > 0) == (high_value > 0):
                upper = middle
            else:
                lower, low_value = middle, middle_value
        return RecurrenceRoot(coefficients, lower, upper)


def bonacci_constant(d: int, tol: float = ROOT_TOLERANCE) -> mp.mpf:
    """ζ_d, the dominant root of x^d - x^{d-1} - ... - 1."""
    return dominant_root([1] * d, tol).value


# =========================
# 2. Named constants
# =========================
NAMED_CONSTANTS = (
    'threeletter_1omega', 'fourbonacci_001', 'fourbonacci_011', 'dbonacci_0d_bound', 'fib_range',
    'dbonacci_standard', 'dbonacci_index', 'dbonacci_long_zero_bound', 'tribonacci_sandwich',
    'sturmian_lower_bound',
)


def named_constant(case_id: str, d: Optional[int] = None, tol: float = ROOT_TOLERANCE):
    """
    Evaluate one of the tabulated exponent constants.

    Args:
        case_id: One of NAMED_CONSTANTS
        d: Number of letters for the d-bonacci families

    Returns:
        An mpf, or an (lower, upper) pair for interval-valued entries
    """
    if case_id not in NAMED_CONSTANTS:
        raise InvalidArgumentError(f"unknown constant {case_id!r}; known: {', '.join(NAMED_CONSTANTS)}")
    with mp.workdps(WORKING_DPS):
        if case_id == 'threeletter_1omega':
            beta = dominant_root([2, 2, 1], tol).value
            return 1 + (beta - 1) / 2
        if case_id == 'fourbonacci_001':
            z = bonacci_constant(4, tol)
            return 1 + (-7 * z ** 3 + 15 * z ** 2 + 13 * z - 4) / 27
        if case_id == 'fourbonacci_011':
            z = bonacci_constant(4, tol)
            return 1 + z ** 2 - z
        if case_id == 'fib_range':
            return mp.mpf(3), 2 + bonacci_constant(2, tol)
        if case_id == 'tribonacci_sandwich':
            z = bonacci_constant(3, tol)
            return 1 + 1 / (z - 1), 2 + 1 / (z - 1)
        if case_id == 'sturmian_lower_bound':
            return mp.mpf(5) / 3 + 4 * mp.sqrt(10) / 15
        if d is None or d < 2:
            raise InvalidArgumentError(f"{case_id} needs d ≥ 2")
        z = bonacci_constant(d, tol)
        if case_id == 'dbonacci_0d_bound':
            return 2 + 1 / (z ** d - z)
        if case_id == 'dbonacci_standard':
            return 1 + 1 / (z - 1)
        if case_id == 'dbonacci_index':
            return 2 + 1 / (z - 1)
        return 1 + z ** d / ((z - 1) * (z ** d - 1))


# =========================
# 3. Estimates
# =========================
def _require_regular(delta: DirectiveWord) -> int:
    d = delta.regular_period
    if d is None:
        raise UnsupportedDirectiveError(f"{delta} is not regular")
    return d


def _joint_period(delta: DirectiveWord, intercept) -> Optional[int]:
    structure = delta.run_structure()
    if structure is None:
        return None
    return lcm(structure[1], max(len(intercept.period), 1))


def ratio_at(delta: DirectiveWord, intercept: DigitsLike, k: int) -> Fraction:
    """Largest n / irep(n) over I_k, attained at a right endpoint of a case range."""
    ranges = irep_case_ranges(delta, intercept, k)
    return max((Fraction(entry.n_hi, entry.value) for entry in ranges), default=Fraction(0))


def dio_estimate(delta: DirectiveWord, intercept: DigitsLike, k_min: Optional[int] = None,
                 k_max: int = 40, fallback: bool = False, length: int = 4000) -> ExponentEstimate:
    """
    Estimate dio = 1 + limsup n / irep(n) from the closed form.

    Args:
        delta: Regular directive word
        intercept: Ostrowski-valid intercept
        k_min: First interval index; defaults to the start of the last full period before k_max
        k_max: Last interval index
        fallback: For non-regular Δ, estimate by brute force over a prefix of `length` instead of raising

    Returns:
        ExponentEstimate over [k_min, k_max]
    """
    c = as_digits(intercept)
    if delta.regular_period is None:
        if not fallback:
            raise UnsupportedDirectiveError(f"{delta} is not regular")
        return dio_brute_estimate(delta, c, length)
    period = _joint_period(delta, c)
    if k_min is None:
        k_min = max(0, k_max - period + 1) if period else k_max // 2
    if not 0 <= k_min <= k_max:
        raise InvalidArgumentError(f"need 0 ≤ k_min ≤ k_max, got {k_min}, {k_max}")
    ratios = [(k, ratio_at(delta, c, k)) for k in range(k_min, k_max + 1)]
    step = period or 1
    monotone = all(
        ratio_at(delta, c, k) >= ratio_at(delta, c, k - step) - MONOTONE_TOLERANCE
        for k in range(max(k_max - step + 1, step), k_max + 1)
    )
    best = max(ratio for _, ratio in ratios)
    logger.info(f"📊 dio({delta}, {c}) ≈ {float(1 + best):.10g} over k ∈ [{k_min}, {k_max}]")
    return ExponentEstimate(1 + best, ratios, k_min, k_max, monotone)


def dio_brute_estimate(delta: DirectiveWord, intercept: DigitsLike, length: int) -> ExponentEstimate:
    """1 + max n / irep(n) over a generated prefix; uncertified."""
    word = word_from_intercept(delta, intercept, length)
    ratios = []
    for n in range(1, length):
        count = irep_brute(word, n)
        if count is None:
            break
        ratios.append((n, Fraction(n, count)))
    if not ratios:
        raise InvalidArgumentError(f"prefix of length {length} witnesses no repetition")
    logger.warning(f"⚠️ dio({delta}) estimated by brute force up to n={ratios[-1][0]}, uncertified")
    best = max(ratio for _, ratio in ratios)
    return ExponentEstimate(1 + best, ratios, ratios[0][0], ratios[-1][0], False, certified=False)


def ice_estimate(delta: DirectiveWord, intercept: DigitsLike, limit: int,
                 length: Optional[int] = None) -> ExponentEstimate:
    """
    1 + max_{n ≤ limit} n / prep(n) over a generated prefix. Always a lower-bound estimate.
    """
    if limit < 1:
        raise InvalidArgumentError(f"need limit ≥ 1, got {limit}")
    length = length or ICE_PREFIX_FACTOR * limit + 64
    if length > EXPLICIT_WORD_CAP:
        raise ResourceLimitError(f"prefix of length {length} exceeds the explicit-word cap")
    word = word_from_intercept(delta, intercept, length)
    profile = prep_profile(word, limit)
    ratios = [(n, Fraction(n, count)) for n, count in enumerate(profile, start=1) if count is not None]
    certified = len(ratios) == limit
    if not certified:
        logger.warning(f"⚠️ ice({delta}): {limit - len(ratios)} prefix lengths did not reoccur in {length} symbols")
    best = max((ratio for _, ratio in ratios), default=Fraction(0))
    return ExponentEstimate(1 + best, ratios, 1, limit, False, certified=certified, lower_bound_only=True)


# =========================
# 4. Closed forms
# =========================
def _transfer(delta: DirectiveWord, k: int, d: int) -> mp.matrix:
    """Matrix mapping (q_k, ..., q_{k-d}, S_{k-d+1}) to the same vector at k + 1."""
    size = d + 2
    matrix = mp.zeros(size, size)
    for t in range(d - 1):
        matrix[0, t] = delta.a(k + 1 - t)
    matrix[0, d - 1] += 1
    for t in range(1, d + 1):
        matrix[t, t - 1] = 1
    matrix[d + 1, d + 1] = 1
    matrix[d + 1, d - 1] = delta.a(k - d + 2)
    return matrix


def dio_standard_closed(delta: DirectiveWord, tol: float = ROOT_TOLERANCE):
    """
    dio(c_Δ) = 1 + limsup_k (a_{k+1} + |u_{r_{k-d+1}}| / q_k).

    Constant partial quotients give a rational expression in the dominant root ρ of the
    q-recurrence; periodic ones use the dominant eigenvector of the period transfer matrix.
    Unbounded partial quotients give +∞.
    """
    d = _require_regular(delta)
    structure = delta.run_structure()
    if structure is None:
        if delta.has_unbounded_quotients():
            return mp.inf
        raise UnsupportedDirectiveError(f"cannot decide boundedness of streamed quotients of {delta}")
    pre, period = structure
    quotients = {delta.a(k) for k in range(pre + 1, pre + period + 1)}
    with mp.workdps(WORKING_DPS):
        if len(quotients) == 1:
            a = quotients.pop()
            rho = dominant_root([a] * (d - 1) + [1], tol).value
            return 1 + a + rho ** (-(d - 1)) * (mp.mpf(a) / (rho - 1) - 1 / rho)
        start = pre + 2 * d + period
        system = numeration_system(delta)
        vector = mp.matrix([system.q_length(start - t) for t in range(d + 1)]
                           + [system.prefix_sum(start - d + 1)])
        cycle = mp.eye(d + 2)
        for k in range(start, start + period):
            cycle = _transfer(delta, k, d) * cycle
        for _ in range(POWER_ITERATIONS):
            following = cycle * vector
            following = following / mp.norm(following)
            if mp.norm(following - vector) < tol:
                vector = following
                break
            vector = following
        best = None
        for k in range(start, start + period):
            value = delta.a(k + 1) + (vector[d + 1] - vector[d]) / vector[0]
            best = value if best is None else max(best, value)
            vector = _transfer(delta, k, d) * vector
        return 1 + best


def index_standard_closed(delta: DirectiveWord, tol: float = ROOT_TOLERANCE):
    """ind(c_Δ) = dio(c_Δ) + 1."""
    return dio_standard_closed(delta, tol) + 1


# =========================
# 5. Hypotheses, growth and bounds
# =========================
def lower_bound_hypothesis(delta: DirectiveWord) -> bool:
    """d = 2 or limsup a_k ≥ 3."""
    d = _require_regular(delta)
    return d == 2 or delta.max_partial_quotient() >= 3


def growth_constant(delta: DirectiveWord) -> int:
    """C = (d - 1) · limsup a_k + 1, so that q_{k+1} ≤ C q_k."""
    d = _require_regular(delta)
    return (d - 1) * delta.max_partial_quotient() + 1


def irrationality_bounds(delta: DirectiveWord, intercept: DigitsLike,
                         k_range: Tuple[Optional[int], int] = (None, 40)) -> IrrationalityBounds:
    """
    Bounds on the irrationality exponent of a number whose expansion is the word.

    Returns:
        lower = dio estimate, upper = (2K + 1)^3 (dio + 1) with K = d (+∞ for unbounded
        partial quotients), and the Liouville flag
    """
    d = _require_regular(delta)
    estimate = dio_estimate(delta, intercept, k_range[0], k_range[1])
    liouville = delta.has_unbounded_quotients()
    upper = float('inf') if liouville else (2 * d + 1) ** 3 * (estimate.value + 1)
    return IrrationalityBounds(estimate.value, upper, liouville)
