"""
Exact oracle for small instances

Every guillotine packing of an item set S either has a horizontal first cut
(two packings stacked, width max(w1, w2), height h1 + h2) or a vertical one
(side by side, width w1 + w2 <= W, height max(h1, h2)). The oracle keeps,
for every subset, the Pareto frontier of (width, height) over all guillotine
packings, built bottom-up over subset masks. Widths on a frontier are sums of
item widths, so only subset-sum width splits are ever considered.
"""

import logging
import time
from typing import Dict, List, Optional, Tuple

from gspkit.core.config import settings
from gspkit.core.errors import ResourceLimitError
from gspkit.core.models import Instance, Packing, Placement, SolveResult, SolveTrace
from gspkit.core.pipeline import finalize

logger = logging.getLogger(__name__)

# (width, height, provenance); provenance is ("I", item) or (cut, sub, idx, other, idx)
Entry = Tuple[int, int, tuple]


def _pareto(candidates: Dict[int, Tuple[int, tuple]]) -> List[Entry]:
    frontier: List[Entry] = []
    best = None
    for width in sorted(candidates):
        height, how = candidates[width]
        if best is None or height < best:
            frontier.append((width, height, how))
            best = height
    return frontier


def frontiers(instance: Instance) -> List[List[Entry]]:
    """Pareto frontier of (width, height) for every item subset mask"""
    n = instance.n
    W = instance.strip_width
    table: List[List[Entry]] = [[] for _ in range(1 << n)]
    for i, item in enumerate(instance.items):
        table[1 << i] = [(item.width, item.height, ("I", i))]

    for mask in range(1, 1 << n):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        candidates: Dict[int, Tuple[int, tuple]] = {}

        def offer(width: int, height: int, how: tuple) -> None:
            current = candidates.get(width)
            if current is None or height < current[0]:
                candidates[width] = (height, how)

        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                other = mask ^ sub
                for a, (w1, h1, _) in enumerate(table[sub]):
                    for b, (w2, h2, _) in enumerate(table[other]):
                        offer(max(w1, w2), h1 + h2, ("H", sub, a, other, b))
                        if w1 + w2 <= W:
                            offer(w1 + w2, max(h1, h2), ("V", sub, a, other, b))
            sub = (sub - 1) & mask
        table[mask] = _pareto(candidates)
    return table


def _place(table: List[List[Entry]], mask: int, index: int, x: int, y: int, out: List[Placement]) -> None:
    stack = [(mask, index, x, y)]
    while stack:
        mask, index, x, y = stack.pop()
        width, height, how = table[mask][index]
        if how[0] == "I":
            out.append(Placement(item_id=how[1], left=x, bottom=y))
            continue
        cut, sub, a, other, b = how
        stack.append((sub, a, x, y))
        if cut == "H":
            stack.append((other, b, x, y + table[sub][a][1]))
        else:
            stack.append((other, b, x + table[sub][a][0], y))


def optimal_height(instance: Instance, item_limit: Optional[int] = None) -> int:
    """Minimum guillotine packing height"""
    return exact_oracle(instance, item_limit).height


def exact_oracle(instance: Instance, item_limit: Optional[int] = None) -> SolveResult:
    """
    Optimal guillotine packing for n <= item_limit (default from settings).

    Raises ResourceLimitError above the limit: the subset recursion grows as 3^n.
    """
    limit = item_limit or settings.oracle_item_limit
    if instance.n > limit:
        raise ResourceLimitError("exact oracle item limit", instance.n, limit)
    started = time.perf_counter()
    if instance.n == 0:
        return finalize(instance, Packing.build(instance, []), SolveTrace(algorithm="oracle"))

    table = frontiers(instance)
    full = (1 << instance.n) - 1
    index = min(range(len(table[full])), key=lambda k: (table[full][k][1], k))
    placements: List[Placement] = []
    _place(table, full, index, 0, 0, placements)
    packing = Packing.build(instance, placements)
    elapsed = round(time.perf_counter() - started, 6)
    logger.debug(f"Oracle: n={instance.n}, optimum {packing.height}, {elapsed}s")
    trace = SolveTrace(
        algorithm="oracle",
        opt_guess=packing.height,
        stats={"frontier_size": len(table[full]), "elapsed": elapsed},
    )
    return finalize(instance, packing, trace)
