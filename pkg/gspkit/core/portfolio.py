"""
Best-of portfolio and the algorithm registry used by the CLI
"""

import logging
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from gspkit.core.config import settings
from gspkit.core.errors import ParameterError
from gspkit.core.heuristics import nfdh_strip
from gspkit.core.models import Budgets, Instance, SolveResult, SolveTrace
from gspkit.core.oracle import exact_oracle
from gspkit.core.pipeline import finalize
from gspkit.core.pptas import solve_pptas
from gspkit.core.three_halves import solve_three_halves

logger = logging.getLogger(__name__)

Solver = Callable[[Instance, Optional[Fraction], Optional[Budgets]], SolveResult]


def solve_nfdh(instance: Instance, epsilon: Optional[Fraction] = None, budgets: Optional[Budgets] = None) -> SolveResult:
    started = time.perf_counter()
    packing, _ = nfdh_strip(instance)
    trace = SolveTrace(algorithm="nfdh", stats={"elapsed": round(time.perf_counter() - started, 6)})
    return finalize(instance, packing, trace)


def solve_oracle(instance: Instance, epsilon: Optional[Fraction] = None, budgets: Optional[Budgets] = None) -> SolveResult:
    return exact_oracle(instance)


def solve_portfolio(
    instance: Instance,
    epsilon: Optional[Fraction] = None,
    budgets: Optional[Budgets] = None,
    include_oracle: bool = True,
) -> SolveResult:
    """
    Run oracle (when n is within its limit), pptas, three-halves and NFDH;
    return the lowest packing, earliest on ties. Never worse than NFDH.
    """
    runs: List[SolveResult] = []
    if include_oracle and instance.n <= settings.oracle_item_limit:
        runs.append(exact_oracle(instance))
    runs.append(solve_pptas(instance, epsilon, budgets))
    runs.append(solve_three_halves(instance, epsilon, budgets))
    runs.append(solve_nfdh(instance))

    best = min(runs, key=lambda r: r.height)
    heights = {r.algorithm: r.height for r in runs}
    logger.info(f"Portfolio: {heights} -> {best.algorithm}")
    stats = dict(best.trace.stats)
    stats["portfolio"] = heights
    trace = best.trace.model_copy(update={"stats": stats, "notes": best.trace.notes + (f"winner {best.algorithm}",)})
    return best.model_copy(update={"trace": trace})


ALGORITHMS: Dict[str, Solver] = {
    "nfdh": solve_nfdh,
    "pptas": solve_pptas,
    "three-halves": solve_three_halves,
    "portfolio": solve_portfolio,
    "oracle": solve_oracle,
}


def run_algorithm(
    name: str,
    instance: Instance,
    epsilon: Optional[Fraction] = None,
    budgets: Optional[Budgets] = None,
) -> SolveResult:
    """Dispatch by registry name"""
    try:
        solver = ALGORITHMS[name]
    except KeyError:
        raise ParameterError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return solver(instance, epsilon, budgets)
