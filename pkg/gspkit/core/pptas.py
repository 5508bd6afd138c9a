"""
Budgeted PPTAS pipeline: OPT' guessing, template layouts, GAP filling
"""

import logging
from fractions import Fraction
from typing import List, Optional

from gspkit.core.models import Budgets, Classification, ConstantProfile, Instance, SolveResult
from gspkit.core.pipeline import Attempt, RealizeOptions, search
from gspkit.core.templates import library

logger = logging.getLogger(__name__)


def _plan(
    instance: Instance,
    opt_estimate: int,
    profile: ConstantProfile,
    classification: Classification,
    budgets: Budgets,
) -> List[Attempt]:
    return [
        (template, RealizeOptions())
        for template in library(instance, classification, opt_estimate, budgets)
    ]


def solve_pptas(
    instance: Instance,
    epsilon: Optional[Fraction] = None,
    budgets: Optional[Budgets] = None,
) -> SolveResult:
    """
    Pack into container layouts of height OPT' plus medium and small top boxes.

    Heights are normalised first (undone at output), OPT' runs over a
    (1 + eps)-geometric grid from the lower bound to the NFDH height, and
    every template within budgets is filled through GAP. Falls back to NFDH
    when no layout does better; the result is always verified.
    """
    result = search(instance, "pptas", _plan, epsilon, budgets)
    logger.info(
        f"pptas: height {result.height}, lower bound {result.lower_bound}, "
        f"{result.trace.layouts_tried} layouts over {result.trace.guesses_tried} guesses"
    )
    return result
