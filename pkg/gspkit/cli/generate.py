"""
generate: random, partition, planted and bin packing instances
"""

import argparse
import logging
import sys
from typing import List, Optional

from gspkit.cli.common import EXIT_OK, parse_epsilon, sibling
from gspkit.core.errors import ParameterError
from gspkit.core.generators import (
    SKEWS,
    binpacking_instance,
    partition_instance,
    planted_instance,
    random_binpacking,
    random_instance,
    random_partition,
)
from gspkit.core.models import Certificate, Instance
from gspkit.storage.formats import dump_instance, save_certificate, save_instance

logger = logging.getLogger(__name__)


def _ints(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise ParameterError(f"expected a comma separated list of integers, got {text!r}")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("generate", help="write a generated instance")
    parser.add_argument("kind", choices=["random", "partition", "planted", "binpacking"])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n", type=int, default=10, help="number of items (random kinds)")
    parser.add_argument("--width", type=int, default=100, help="strip width / bin capacity")
    parser.add_argument("--height", type=int, default=100, help="max item height / planted layout height")
    parser.add_argument("--skew", choices=SKEWS, default="uniform")
    parser.add_argument("--values", default=None, help="partition values, e.g. 1,2,3")
    parser.add_argument("--max-value", type=int, default=20, help="largest random partition value")
    parser.add_argument("--sizes", default=None, help="bin packing item sizes")
    parser.add_argument("--containers", type=int, default=3, help="planted layout boxes")
    parser.add_argument("--tall", type=int, default=0, help="flushed tall items in a planted layout")
    parser.add_argument("--eps", default=None, help="small-container ratio for planted layouts")
    parser.add_argument("-o", "--output", default=None, help="instance file (default: stdout)")
    parser.add_argument("--cert", default=None, help="certificate file (default: <output>.cert)")
    parser.set_defaults(handler=run)


def build(args: argparse.Namespace) -> tuple:
    certificate: Optional[Certificate] = None
    if args.kind == "random":
        instance: Instance = random_instance(args.n, args.width, args.height, args.seed, args.skew)
    elif args.kind == "partition":
        values = _ints(args.values)
        if values is not None:
            instance, certificate = partition_instance(values)
        else:
            instance, certificate = random_partition(args.n, args.max_value, args.seed)
    elif args.kind == "planted":
        instance, certificate = planted_instance(
            args.width, args.height, args.containers, args.seed, parse_epsilon(args.eps), args.tall
        )
    else:
        sizes = _ints(args.sizes)
        if sizes is not None:
            instance, certificate = binpacking_instance(sizes, args.width)
        else:
            instance, certificate = random_binpacking(args.n, args.width, args.seed)
    return instance, certificate


def run(args: argparse.Namespace) -> int:
    instance, certificate = build(args)
    if args.output:
        save_instance(args.output, instance)
        logger.info(f"Wrote {args.output} ({instance.n} items)")
    else:
        sys.stdout.write(dump_instance(instance))
    if certificate is not None and (args.cert or args.output):
        path = args.cert or sibling(args.output, ".cert")
        save_certificate(path, certificate)
        logger.info(f"Wrote certificate {path}")
    return EXIT_OK
