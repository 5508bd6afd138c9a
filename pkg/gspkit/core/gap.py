"""
Maximum generalized assignment with a constant number of bins

solve_exact runs the pseudo-polynomial recurrence

    P[i, c] = max(P[i-1, c], max_j p_ij + P[i-1, c - s_ij * e_j])

over a dense numpy table indexed by capacity tuples. Only the previous item
layer is kept; a per-item int8 decision table (-1 = unassigned, j = bin)
is enough to reconstruct the witness. Ties prefer leaving the item out, then
the lowest bin index.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from gspkit.core.config import settings
from gspkit.core.errors import ParameterError, ResourceLimitError
from gspkit.core.models import Assignment, GapInstance, GapItem

logger = logging.getLogger(__name__)


def required_cells(capacities: Sequence[int]) -> int:
    """Cells of the capacity table: prod(C_j + 1)"""
    return math.prod(c + 1 for c in capacities)


def _check_bins(instance: GapInstance) -> None:
    if instance.k > settings.max_gap_bins:
        raise ParameterError(f"{instance.k} bins exceed the configured maximum of {settings.max_gap_bins}")


def solve_exact(instance: GapInstance, table_budget: Optional[int] = None) -> Assignment:
    """Profit-maximal assignment; raises ResourceLimitError if the table is too large"""
    _check_bins(instance)
    budget = table_budget or settings.table_budget
    caps = instance.capacities
    cells = required_cells(caps)
    if cells > budget:
        raise ResourceLimitError("GAP capacity table exceeds budget", cells, budget)
    if not instance.items:
        return Assignment(bins=(), profit=0)

    k = instance.k
    shape = tuple(c + 1 for c in caps)
    table = np.zeros(shape, dtype=np.int64)
    decisions: List[Optional[np.ndarray]] = []

    for item in instance.items:
        options = [
            (j, s, p)
            for j, (s, p) in enumerate(zip(item.sizes, item.profits))
            if s is not None and s <= caps[j] and p > 0
        ]
        if not options:
            decisions.append(None)
            continue
        layer = table.copy()
        choice = np.full(shape, -1, dtype=np.int8)
        for j, s, p in options:
            dst = [slice(None)] * k
            src = [slice(None)] * k
            dst[j] = slice(s, None)
            src[j] = slice(0, shape[j] - s)
            candidate = table[tuple(src)] + p
            target = layer[tuple(dst)]
            better = candidate > target
            target[better] = candidate[better]
            choice[tuple(dst)][better] = j
        table = layer
        decisions.append(choice)

    remaining = list(caps)
    bins: List[Optional[int]] = [None] * len(instance.items)
    for i in range(len(instance.items) - 1, -1, -1):
        choice = decisions[i]
        if choice is None:
            continue
        j = int(choice[tuple(remaining)])
        if j >= 0:
            bins[i] = j
            remaining[j] -= instance.items[i].sizes[j]

    profit = int(table[tuple(caps)])
    logger.debug(f"GAP exact: {len(instance.items)} items, {k} bins, {cells} cells, profit {profit}")
    return Assignment(bins=tuple(bins), profit=profit)


def _scale_factors(caps: Sequence[int], n: int, epsilon: Fraction, budget: int) -> List[int]:
    factors = [max(1, math.floor(epsilon * c / max(n, 1))) for c in caps]
    while required_cells([c // f for c, f in zip(caps, factors)]) > budget:
        widest = max(range(len(caps)), key=lambda j: caps[j] // factors[j])
        factors[widest] *= 2
    return factors


def solve_scaled(
    instance: GapInstance,
    epsilon: Fraction,
    table_budget: Optional[int] = None,
) -> Assignment:
    """
    Exact DP on floor-scaled capacities and ceil-scaled sizes.

    Identical to solve_exact when the table already fits. Otherwise every
    bin j gets a factor f_j, starting at max(1, floor(eps * C_j / n)) and
    doubled on the widest dimension until the table fits; since
    sum ceil(s/f) <= floor(C/f) implies sum s <= C, the result is always
    feasible at the original capacities.
    """
    _check_bins(instance)
    budget = table_budget or settings.table_budget
    caps = instance.capacities
    if required_cells(caps) <= budget:
        return solve_exact(instance, budget)

    factors = _scale_factors(caps, len(instance.items), Fraction(epsilon), budget)
    scaled = GapInstance(
        capacities=tuple(c // f for c, f in zip(caps, factors)),
        items=tuple(
            GapItem(
                sizes=tuple(None if s is None else -(-s // f) for s, f in zip(item.sizes, factors)),
                profits=item.profits,
            )
            for item in instance.items
        ),
    )
    logger.info(
        f"GAP scaled: capacities {list(caps)} -> {list(scaled.capacities)} "
        f"(factors {factors}, {required_cells(scaled.capacities)} cells)"
    )
    result = solve_exact(scaled, budget)
    return Assignment(bins=result.bins, profit=result.profit)
