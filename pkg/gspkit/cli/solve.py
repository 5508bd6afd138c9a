"""
solve: pack an instance file and write the solution
"""

import argparse
import logging
import time

from gspkit.cli.common import EXIT_OK, add_solver_options, budgets_from_args, parse_epsilon, sibling
from gspkit.core.portfolio import ALGORITHMS, run_algorithm
from gspkit.storage.formats import load_instance, save_solution

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("solve", help="pack an instance")
    parser.add_argument("instance", help="instance file")
    parser.add_argument("--alg", choices=list(ALGORITHMS), default="portfolio")
    add_solver_options(parser)
    parser.add_argument("--emit-cuts", action="store_true", help="append the cut tree to the solution")
    parser.add_argument("-o", "--output", default=None, help="solution file (default: <instance>.sol)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    epsilon = parse_epsilon(args.eps)
    budgets = budgets_from_args(args)

    started = time.perf_counter()
    result = run_algorithm(args.alg, instance, epsilon, budgets)
    elapsed = time.perf_counter() - started

    output = args.output or sibling(args.instance, ".sol")
    save_solution(output, result.packing, result.cut_tree if args.emit_cuts else None)
    logger.info(f"{result.algorithm}: wrote {output}")

    print(f"algorithm: {result.algorithm}")
    print(f"height: {result.height}")
    print(f"lower bound: {result.lower_bound}")
    print(f"ratio: {float(result.ratio):.4f}")
    print(f"time: {elapsed:.3f}s")
    return EXIT_OK
