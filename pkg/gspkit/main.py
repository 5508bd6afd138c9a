"""
gspkit - guillotine strip packing toolkit
Command-line entry point
"""

import argparse
import logging
import sys
from typing import List, Optional

from gspkit import __version__
from gspkit.cli import bench, generate, render, solve, verify
from gspkit.cli.common import EXIT_INTERNAL, EXIT_USAGE
from gspkit.core.config import settings
from gspkit.core.errors import InfeasibleError, ParameterError, ParseError, ResourceLimitError, VerificationError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gspkit", description="Guillotine strip packing toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.log_level,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper)
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Register subcommands
    for command in (solve, verify, generate, render, bench):
        command.register(subparsers)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    logger.debug(f"{settings.service_name} {__version__}: {args.command}")

    try:
        return args.handler(args)
    except VerificationError as exc:
        # Solvers verify everything they emit; reaching this is a bug
        logger.error(f"Internal verification failure: {exc}")
        for violation in exc.violations:
            print(violation, file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, ParameterError, ResourceLimitError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
