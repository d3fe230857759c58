"""
Command-line entrypoint for the episturmian toolkit.

Subcommands generate prefixes, convert Ostrowski numerations, tabulate irep under the closed form
and the two oracles, emit the figure data and report exponent estimates. Output goes to stdout as
text or CSV; diagnostics go to stderr.
"""
from argparse import ArgumentParser, Namespace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, TextIO
import concurrent.futures
import csv
import logging
import sys

import mpmath as mp

from complexity import irep_brute_sweep, irep_rauzy, irep_regular, rauzy_graph
from directive import DirectiveWord, parse_directive
from engine import word_from_intercept
from errors import EpisturmianError, OracleMismatchError, SpecParseError
from exponents import (
    ROOT_TOLERANCE,
    dio_estimate,
    dio_standard_closed,
    ice_estimate,
    irrationality_bounds,
)
from numeration import DigitString, numeration_system, parse_intercept, render_digits

logger = logging.getLogger(__name__)

# =========================
# Constants & Config
# =========================
SIGNIFICANT_DIGITS = 10
DEFAULT_WORKERS = 4
EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONTRACT = 3
EXIT_MISMATCH = 4
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

FIGURE_DIRECTIVE = 'periodic:|001122'
FIGURE_INTERCEPTS = (('irep_zeros', 'zeros'), ('irep_01', 'periodic:|01'), ('irep_ones', 'periodic:|1'))
FIGURE_LAST_INTERVAL = 5


# =========================
# Formatting helpers
# =========================
def format_number(value) -> str:
    """Render a number with SIGNIFICANT_DIGITS significant digits."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format(float(value), f'.{SIGNIFICANT_DIGITS}g')
    if isinstance(value, mp.mpf):
        if mp.isinf(value):
            return 'inf'
        return mp.nstr(value, SIGNIFICANT_DIGITS)
    return format(float(value), f'.{SIGNIFICANT_DIGITS}g')


def csv_writer(out: TextIO):
    return csv.writer(out, lineterminator='\n')


# =========================
# 1. word / numeration
# =========================
def cmd_word(args: Namespace, out: TextIO) -> int:
    delta = parse_directive(args.directive)
    intercept = parse_intercept(args.intercept)
    out.write(f"{word_from_intercept(delta, intercept, args.length)}\n")
    return EXIT_OK


def cmd_numeration(args: Namespace, out: TextIO) -> int:
    delta = parse_directive(args.directive)
    system = numeration_system(delta)
    if args.action == 'rep':
        if not args.value.isdigit():
            raise SpecParseError(f"rep expects a nonnegative integer, got {args.value!r}")
        out.write(f"{render_digits(system.rep_digits(int(args.value)))}\n")
    elif args.action == 'val':
        out.write(f"{system.val(DigitString.parse(args.value))}\n")
    else:
        valid = system.satisfies_ostrowski(DigitString.parse(args.value))
        out.write('valid\n' if valid else 'invalid\n')
    return EXIT_OK


# =========================
# 2. irep tables
# =========================
def _cross_check(delta: DirectiveWord, intercepts: Sequence[DigitString], n: int,
                 brute: Dict[DigitString, Dict[int, int]]) -> List[str]:
    graph = rauzy_graph(delta, n)
    problems = []
    for intercept in intercepts:
        closed = irep_regular(delta, intercept, n)
        rauzy = irep_rauzy(delta, intercept, n, graph)
        if not closed.value == brute[intercept][n] == rauzy:
            problems.append(f"n={n}: {intercept}: closed={closed.value} ({closed.label}), "
                            f"brute={brute[intercept][n]}, rauzy={rauzy}")
    return problems


def cross_check_range(delta: DirectiveWord, intercepts: Sequence[DigitString], n_from: int, n_to: int,
                      workers: int = DEFAULT_WORKERS) -> Dict[DigitString, Dict[int, int]]:
    """
    Compare the closed form with both oracles for every intercept and every n in [n_from, n_to].
    Γ(n) is built once per n and shared by the intercepts.

    Returns:
        irep by intercept and n when everything agrees; raises OracleMismatchError listing the offending n otherwise
    """
    brute = {intercept: irep_brute_sweep(delta, intercept, n_from, n_to) for intercept in intercepts}
    mismatches: List[str] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_n = {
            executor.submit(_cross_check, delta, intercepts, n, brute): n
            for n in range(n_from, n_to + 1)
        }
        for future in concurrent.futures.as_completed(future_to_n):
            mismatches.extend(future.result())
    if mismatches:
        mismatches.sort(key=lambda line: int(line.split(':')[0][2:]))
        raise OracleMismatchError(f"{len(mismatches)} oracle mismatches for {delta}", mismatches)
    logger.info(f"✅ closed form, brute force and Rauzy walk agree on n ∈ [{n_from}, {n_to}]")
    return brute


def cmd_irep(args: Namespace, out: TextIO) -> int:
    delta = parse_directive(args.directive)
    intercept = parse_intercept(args.intercept)
    if args.n_from < 1 or args.n_to < args.n_from:
        raise SpecParseError(f"need 1 ≤ --n-from ≤ --n-to, got {args.n_from}, {args.n_to}")
    logger.info(f"🚀 irep of {delta}, {intercept} for n ∈ [{args.n_from}, {args.n_to}] ({args.mode})")
    span = range(args.n_from, args.n_to + 1)
    # nothing is written until every row is computed
    if args.mode == 'brute':
        values = irep_brute_sweep(delta, intercept, args.n_from, args.n_to)
        header, rows = ['n', 'irep'], [[n, values[n]] for n in span]
    elif args.mode == 'rauzy':
        header, rows = ['n', 'irep'], [[n, irep_rauzy(delta, intercept, n)] for n in span]
    else:
        if args.mode == 'cross':
            cross_check_range(delta, [intercept], args.n_from, args.n_to, args.workers)
        header = ['n', 'irep', 'case']
        results = [irep_regular(delta, intercept, n) for n in span]
        rows = [[n, result.value, result.label] for n, result in zip(span, results)]
    writer = csv_writer(out)
    writer.writerow(header)
    writer.writerows(rows)
    return EXIT_OK


def cmd_figure(args: Namespace, out: TextIO) -> int:
    delta = parse_directive(FIGURE_DIRECTIVE)
    system = numeration_system(delta)
    intervals = [system.run_start_length(k) for k in range(1, FIGURE_LAST_INTERVAL + 1)]
    subintervals = [system.prefix_sum(k) for k in range(1, FIGURE_LAST_INTERVAL)]
    last = intervals[-1]
    intercepts = [(column, parse_intercept(text)) for column, text in FIGURE_INTERCEPTS]
    if args.check:
        cross_check_range(delta, [intercept for _, intercept in intercepts], 1, last, args.workers)
    out.write(f"# directive: {delta}\n")
    out.write(f"# intervals: {','.join(map(str, intervals))}\n")
    out.write(f"# subintervals: {','.join(map(str, subintervals))}\n")
    writer = csv_writer(out)
    writer.writerow(['n'] + [column for column, _ in intercepts])
    for n in range(1, last + 1):
        writer.writerow([n] + [irep_regular(delta, intercept, n).value for _, intercept in intercepts])
    return EXIT_OK


# =========================
# 3. exponents
# =========================
def cmd_exponent(args: Namespace, out: TextIO) -> int:
    delta = parse_directive(args.directive)
    intercept = parse_intercept(args.intercept)
    if args.kind == 'closed':
        if intercept != DigitString.zeros():
            logger.warning(f"⚠️ closed form is for the standard word; ignoring intercept {intercept}")
        out.write(f"{format_number(dio_standard_closed(delta, args.tol))}\n")
        return EXIT_OK
    if args.kind == 'bounds':
        bounds = irrationality_bounds(delta, intercept, (args.k_min, args.k_max))
        writer = csv_writer(out)
        writer.writerow(['lower', 'upper', 'liouville'])
        writer.writerow([format_number(bounds.lower), format_number(bounds.upper), str(bounds.liouville).lower()])
        return EXIT_OK
    if args.kind == 'ice':
        estimate = ice_estimate(delta, intercept, args.length)
        label = 'n'
    else:
        estimate = dio_estimate(delta, intercept, args.k_min, args.k_max,
                                fallback=args.fallback, length=args.prefix_length)
        label = 'k' if estimate.certified else 'n'
    if not args.trace:
        out.write(f"{format_number(estimate.value)}\n")
        return EXIT_OK
    out.write(f"# {args.kind}: {format_number(estimate.value)}\n")
    out.write(f"# range: {estimate.k_min}-{estimate.k_max}\n")
    writer = csv_writer(out)
    writer.writerow([label, 'max_ratio'])
    writer.writerows([index, format_number(ratio)] for index, ratio in estimate.ratios)
    return EXIT_OK


# =========================
# Parser
# =========================
def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='episturmian', description='Episturmian words: numeration, irep tables and exponents')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')
    subparsers = parser.add_subparsers(dest='command', required=True)

    word = subparsers.add_parser('word', help='Print a prefix of the word with the given intercept')
    word.add_argument('directive')
    word.add_argument('intercept')
    word.add_argument('--length', type=int, default=50)
    word.set_defaults(handler=cmd_word)

    numeration = subparsers.add_parser('numeration', help='Ostrowski conversions')
    numeration.add_argument('directive')
    numeration.add_argument('action', choices=['rep', 'val', 'check'])
    numeration.add_argument('value')
    numeration.set_defaults(handler=cmd_numeration)

    irep = subparsers.add_parser('irep', help='Tabulate irep as CSV')
    irep.add_argument('directive')
    irep.add_argument('intercept')
    irep.add_argument('--n-from', type=int, default=1)
    irep.add_argument('--n-to', type=int, default=50)
    irep.add_argument('--mode', choices=['closed', 'brute', 'rauzy', 'cross'], default='closed')
    irep.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    irep.set_defaults(handler=cmd_irep)

    figure = subparsers.add_parser('figure', help='Emit figure data as CSV')
    figure.add_argument('--fig', type=int, choices=[1], default=1)
    figure.add_argument('--check', action='store_true', help='Cross-check every column against both oracles')
    figure.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    figure.set_defaults(handler=cmd_figure)

    exponent = subparsers.add_parser('exponent', help='Exponent estimates and closed forms')
    exponent.add_argument('directive')
    exponent.add_argument('intercept', nargs='?', default='zeros')
    exponent.add_argument('--kind', choices=['dio', 'ice', 'bounds', 'closed'], default='dio')
    exponent.add_argument('--k-min', type=int, default=None)
    exponent.add_argument('--k-max', type=int, default=40)
    exponent.add_argument('--length', type=int, default=200, help='Largest n for --kind ice')
    exponent.add_argument('--tol', type=float, default=ROOT_TOLERANCE)
    exponent.add_argument('--fallback', action='store_true',
                          help='For non-regular directives, estimate dio by brute force (uncertified)')
    exponent.add_argument('--prefix-length', type=int, default=4000, help='Prefix length for --fallback')
    exponent.add_argument('--trace', action='store_true', help='Append the per-index maxima as CSV')
    exponent.set_defaults(handler=cmd_exponent)
    return parser


# =========================
# Entrypoint
# =========================
def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    out = out or sys.stdout
    try:
        return args.handler(args, out)
    except SpecParseError as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OracleMismatchError as e:
        logger.error(f"❌ {e}")
        for line in e.mismatches:
            print(line, file=sys.stderr)
        return EXIT_MISMATCH
    except EpisturmianError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
