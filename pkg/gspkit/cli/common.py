"""
Helpers shared by the subcommands: exit codes, option parsing, budgets
"""

import argparse
from fractions import Fraction
from pathlib import Path
from typing import Optional

from gspkit.core.config import settings
from gspkit.core.errors import ParameterError
from gspkit.core.models import Budgets
from gspkit.storage.formats import load_layout

EXIT_OK = 0
EXIT_NEGATIVE = 1  # verification said no
EXIT_USAGE = 2  # usage, parse or parameter problem
EXIT_INTERNAL = 3  # a solver emitted something that failed verification


def parse_epsilon(text: Optional[str]) -> Fraction:
    """'p/q' (or a decimal) as an exact rational in (0, 1) with integral 1/eps"""
    if text is None:
        return settings.epsilon
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"cannot read epsilon {text!r}; use the form p/q")
    if not (0 < eps < 1) or (1 / eps).denominator != 1:
        raise ParameterError(f"epsilon must lie in (0, 1) with 1/epsilon integral, got {eps}")
    return eps


def add_solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", default=None, help=f"accuracy p/q (default {settings.default_epsilon})")
    parser.add_argument("--budget-containers", type=int, default=None,
                        help=f"container budget g (default {settings.container_budget})")
    parser.add_argument("--layout", default=None, help="layout file tried as a supplied template")


def budgets_from_args(args: argparse.Namespace) -> Budgets:
    fields = {}
    if getattr(args, "budget_containers", None):
        if args.budget_containers < 1:
            raise ParameterError("--budget-containers must be positive")
        fields["max_containers"] = args.budget_containers
    if getattr(args, "layout", None):
        fields["templates"] = (load_layout(args.layout),)
    return Budgets(**fields)


def sibling(path: str, suffix: str) -> str:
    return str(Path(path).with_suffix(suffix))
