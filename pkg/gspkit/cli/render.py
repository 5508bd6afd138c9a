"""
render: SVG picture of a solution
"""

import argparse
import logging

from gspkit.cli.common import EXIT_OK, sibling
from gspkit.core.errors import ParameterError
from gspkit.core.guillotine import NotSeparable, check_separable
from gspkit.core.render import save_svg
from gspkit.core.verification import verify_packing
from gspkit.storage.formats import load_instance, load_solution

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("render", help="draw a solution as SVG")
    parser.add_argument("instance", help="instance file")
    parser.add_argument("solution", help="solution file")
    parser.add_argument("-o", "--output", default=None, help="SVG file (default: <solution>.svg)")
    parser.add_argument("--cuts", action="store_true", help="draw guillotine cuts coloured by stage")
    parser.add_argument("--scale", type=float, default=20, help="pixels per unit")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    packing, supplied = load_solution(args.solution, instance)
    placed = {p.item_id for p in packing.placements}
    if placed != set(range(instance.n)):
        raise ParameterError(f"solution {args.solution} does not match instance {args.instance}")

    tree = None
    if args.cuts:
        tree = supplied
        if tree is None and verify_packing(packing).ok:
            found = check_separable(packing)
            tree = None if isinstance(found, NotSeparable) else found
        if tree is None:
            logger.warning("No cut tree available; drawing items only")

    output = args.output or sibling(args.solution, ".svg")
    save_svg(packing, output, tree, args.scale)
    print(output)
    return EXIT_OK
