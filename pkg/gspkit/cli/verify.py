"""
verify: feasibility and guillotine separability of a solution file
"""

import argparse
import logging

from gspkit.cli.common import EXIT_NEGATIVE, EXIT_OK
from gspkit.core.guillotine import NotSeparable, check_separable, stage_counts, validate_tree
from gspkit.core.models import Rect
from gspkit.core.verification import verify_packing
from gspkit.storage.formats import dump_cut_tree, load_instance, load_solution, write_text

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="check a solution")
    parser.add_argument("instance", help="instance file")
    parser.add_argument("solution", help="solution file")
    parser.add_argument("--emit-cuts", action="store_true", help="print the cut tree")
    parser.add_argument("-o", "--output", default=None, help="write the cut tree here instead")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    packing, supplied = load_solution(args.solution, instance)

    report = verify_packing(packing)
    if not report.ok:
        for violation in report.violations:
            print(violation)
        return EXIT_NEGATIVE

    tree = check_separable(packing)
    if isinstance(tree, NotSeparable):
        print(tree)
        return EXIT_NEGATIVE

    if supplied is not None:
        problems = validate_tree(supplied, packing.rects(), Rect(0, 0, instance.strip_width, packing.height))
        if problems:
            for problem in problems:
                print(f"supplied cuts: {problem}")
            return EXIT_NEGATIVE

    without_trim, with_trim = stage_counts(tree)
    print(f"ok: height {packing.height}, {without_trim} stages ({with_trim} with trim cuts)")
    if args.emit_cuts or args.output:
        expression = dump_cut_tree(tree)
        if args.output:
            write_text(args.output, expression + "\n")
        else:
            print(expression)
    return EXIT_OK
