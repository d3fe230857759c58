"""
Main utility module for the episturmian toolkit.
This module imports and exposes the public API from the modular components.
"""

# Errors
from errors import (
    EpisturmianError,
    InvalidArgumentError,
    SpecParseError,
    BadRecurrenceError,
    InvalidInterceptError,
    UnsupportedDirectiveError,
    ResourceLimitError,
    InsufficientInterceptError,
    InsufficientHorizonError,
    HorizonExceededError,
    ShiftInterceptError,
    OracleMismatchError
)

# Finite words
from words import (
    FiniteWord,
    palindromic_closure,
    longest_palindromic_suffix,
    occurrences,
    is_primitive,
    fractional_power
)

# Directive words
from directive import (
    DirectiveWord,
    MultiplicativeEntry,
    parse_directive
)

# Ostrowski numeration
from numeration import (
    DigitString,
    NumerationSystem,
    numeration_system,
    parse_intercept
)

# Word construction, intercepts and the odometer
from engine import (
    EpisturmianWord,
    SignedWord,
    central_word,
    standard_word,
    standard_prefix,
    prefix_by_rep,
    t_word,
    first_letter,
    letter_at,
    eta,
    common_prefix_length,
    left_shift_intercept,
    word_from_intercept,
    shift_intercept,
    intercept_of
)

# Nonrepetitive complexity
from complexity import (
    irep_brute,
    irep_brute_sweep,
    prep_brute,
    prep_profile,
    factor_complexity,
    rauzy_graph,
    irep_rauzy,
    interval_of,
    theta,
    block_table,
    irep_shifted_standard,
    irep_case_ranges,
    irep_regular
)

# Exponents
from exponents import (
    ExponentEstimate,
    RecurrenceRoot,
    dominant_root,
    named_constant,
    dio_estimate,
    dio_standard_closed,
    index_standard_closed,
    ice_estimate,
    irrationality_bounds,
    growth_constant,
    lower_bound_hypothesis
)

__all__ = [
    # Errors
    'EpisturmianError',
    'InvalidArgumentError',
    'SpecParseError',
    'BadRecurrenceError',
    'InvalidInterceptError',
    'UnsupportedDirectiveError',
    'ResourceLimitError',
    'InsufficientInterceptError',
    'InsufficientHorizonError',
    'HorizonExceededError',
    'ShiftInterceptError',
    'OracleMismatchError',

    # Finite words
    'FiniteWord',
    'palindromic_closure',
    'longest_palindromic_suffix',
    'occurrences',
    'is_primitive',
    'fractional_power',

    # Directive words
    'DirectiveWord',
    'MultiplicativeEntry',
    'parse_directive',

    # Numeration
    'DigitString',
    'NumerationSystem',
    'numeration_system',
    'parse_intercept',

    # Engine
    'EpisturmianWord',
    'SignedWord',
    'central_word',
    'standard_word',
    'standard_prefix',
    'prefix_by_rep',
    't_word',
    'first_letter',
    'letter_at',
    'eta',
    'common_prefix_length',
    'left_shift_intercept',
    'word_from_intercept',
    'shift_intercept',
    'intercept_of',

    # Complexity
    'irep_brute',
    'irep_brute_sweep',
    'prep_brute',
    'prep_profile',
    'factor_complexity',
    'rauzy_graph',
    'irep_rauzy',
    'interval_of',
    'theta',
    'block_table',
    'irep_shifted_standard',
    'irep_case_ranges',
    'irep_regular',

    # Exponents
    'ExponentEstimate',
    'RecurrenceRoot',
    'dominant_root',
    'named_constant',
    'dio_estimate',
    'dio_standard_closed',
    'index_standard_closed',
    'ice_estimate',
    'irrationality_bounds',
    'growth_constant',
    'lower_bound_hypothesis'
]
