"""
Container layout templates searched by the pipelines

Every template fits inside [0, W] x [0, OPT'] and is guillotine separable by
construction: column layouts split the strip vertically, row layouts split
it horizontally, flushed-tall layouts put the tall items bottom-left and
arrange the rest of the strip to their right and above them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from gspkit.core.heuristics import bottom_left_flush, shelf_pack
from gspkit.core.models import (
    Box,
    Budgets,
    Classification,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
    Item,
    ItemClass,
)

logger = logging.getLogger(__name__)

MAX_COLUMNS = 4


@dataclass
class Template:
    """
    A layout plus items pinned to specific containers (container index -> item id).

    An exact template asks for a full item-to-container match before falling
    back to GAP.
    """
    name: str
    layout: ContainerLayout
    pinned: Dict[int, int] = field(default_factory=dict)
    exact: bool = False


def candidate_coordinates(values: Iterable[int], limit: int, cap: int) -> List[int]:
    """
    Subset sums of the values up to limit, thinned to at most cap entries.

    Container edges only need to sit at such sums; thinning keeps the
    smallest and largest sum and spreads the rest evenly.
    """
    if limit <= 0:
        return [0]
    mask = (1 << (limit + 1)) - 1
    bits = 1
    for v in values:
        if v > 0:
            bits = (bits | (bits << v)) & mask
    sums = [s for s in range(limit + 1) if bits >> s & 1]
    if len(sums) <= cap:
        return sums
    if cap == 1:
        return [sums[-1]]
    step = (len(sums) - 1) / (cap - 1)
    return sorted({sums[round(i * step)] for i in range(cap)})


def _nearest(candidates: Sequence[int], target: int, low: int, high: int) -> int:
    inside = [c for c in candidates if low < c < high]
    if not inside:
        return -1
    return min(inside, key=lambda c: (abs(c - target), c))


def shelf_heights(items: Sequence[Item], width: int) -> List[int]:
    """Shelf heights NFDH would open for these items in the given width"""
    packed = shelf_pack(items, width)
    bottoms = sorted({p.bottom for p in packed.placements})
    tops = bottoms[1:] + [packed.used_height]
    return [t - b for b, t in zip(bottoms, tops)]


def _rows(left: int, bottom: int, width: int, top: int, heights: Sequence[int], limit: int) -> List[Container]:
    rows: List[Container] = []
    y = bottom
    for h in heights:
        if y + h > top or len(rows) >= limit:
            break
        rows.append(Container(box=Box(left=left, bottom=y, width=width, height=h),
                              kind=ContainerKind.VERTICAL_SIDE_BY_SIDE))
        y += h
    return rows


def _columns(left: int, bottom: int, edges: Sequence[int], height: int) -> List[Container]:
    return [
        Container(box=Box(left=a, bottom=bottom, width=b - a, height=height), kind=ContainerKind.HORIZONTAL_STACK)
        for a, b in zip([left, *edges], [*edges])
        if b > a
    ]


def column_layouts(instance: Instance, opt_estimate: int, budgets: Budgets) -> List[Template]:
    """k stack columns of height OPT', split at candidate widths near W*i/k"""
    W = instance.strip_width
    widths = candidate_coordinates((item.width for item in instance.items), W, budgets.candidate_grid_size)
    templates: List[Template] = []
    for k in range(1, min(MAX_COLUMNS, budgets.max_containers) + 1):
        edges: List[int] = []
        for i in range(1, k):
            cut = _nearest(widths, W * i // k, edges[-1] if edges else 0, W)
            if cut < 0:
                break
            edges.append(cut)
        if len(edges) != k - 1:
            continue
        containers = _columns(0, 0, [*edges, W], opt_estimate)
        layout = ContainerLayout(strip_width=W, height=opt_estimate, containers=tuple(containers))
        templates.append(Template(name=f"columns-{k}", layout=layout))
    return templates


def row_layouts(instance: Instance, opt_estimate: int, budgets: Budgets) -> List[Template]:
    """Side-by-side rows at the shelf heights NFDH would use"""
    W = instance.strip_width
    heights = shelf_heights(instance.items, W)
    rows = _rows(0, 0, W, opt_estimate, heights, budgets.max_containers)
    if not rows:
        return []
    layout = ContainerLayout(strip_width=W, height=opt_estimate, containers=tuple(rows))
    return [Template(name="rows", layout=layout)]


def flushed_tall_layouts(
    instance: Instance,
    classification: Classification,
    opt_estimate: int,
    budgets: Budgets,
) -> List[Template]:
    """
    Tall items bottom-left-flushed as pinned single containers, a stack
    above the tall block, and the region to the right filled by one stack
    column, NFDH-height rows, or two stack columns.
    """
    W = instance.strip_width
    tall = [instance.items[i] for i in classification.members(ItemClass.TALL)]
    block = sum(item.width for item in tall)
    if block > W or any(item.height > opt_estimate for item in tall):
        return []

    base: List[Container] = []
    pinned: Dict[int, int] = {}
    by_id = {item.id: item for item in tall}
    for placement in bottom_left_flush(tall, W) if tall else []:
        item = by_id[placement.item_id]
        pinned[len(base)] = item.id
        base.append(Container(box=Box(left=placement.left, bottom=0, width=item.width, height=item.height),
                              kind=ContainerKind.SINGLE_LARGE))
    if tall:
        roof = max(item.height for item in tall)
        if opt_estimate > roof:
            base.append(Container(box=Box(left=0, bottom=roof, width=block, height=opt_estimate - roof),
                                  kind=ContainerKind.HORIZONTAL_STACK))

    side = W - block
    variants: List[Template] = []

    def add(name: str, extra: List[Container]) -> None:
        layout = ContainerLayout(strip_width=W, height=opt_estimate, containers=tuple(base + extra))
        variants.append(Template(name=name, layout=layout, pinned=dict(pinned)))

    if side <= 0:
        add("flushed", [])
        return variants

    rest = [item for item in instance.items if item.id not in by_id]
    add("flushed-stack", _columns(block, 0, [W], opt_estimate))
    room = max(1, budgets.max_containers - len(base))
    rows = _rows(block, 0, side, opt_estimate, shelf_heights(rest, side), room)
    if rows:
        add("flushed-rows", rows)
    widths = candidate_coordinates((item.width for item in rest), side, budgets.candidate_grid_size)
    split = _nearest([block + w for w in widths], block + side // 2, block, W)
    if split > 0:
        add("flushed-2col", _columns(block, 0, [split, W], opt_estimate))
    return variants


def library(
    instance: Instance,
    classification: Classification,
    opt_estimate: int,
    budgets: Budgets,
) -> List[Template]:
    """All library templates for one OPT' guess, most promising first"""
    templates = row_layouts(instance, opt_estimate, budgets)
    if classification.members(ItemClass.TALL):
        templates += flushed_tall_layouts(instance, classification, opt_estimate, budgets)
    templates += column_layouts(instance, opt_estimate, budgets)
    logger.debug(f"Template library for OPT'={opt_estimate}: {[t.name for t in templates]}")
    return templates


def supplied_template(instance: Instance, layout: ContainerLayout) -> Template:
    """
    Wrap a given layout as an exact template.

    Single containers are pinned to items of exactly their size, largest
    box first; items of equal size are interchangeable, so this never rules
    out a full match the layout admits.
    """
    free: Dict[Tuple[int, int], List[int]] = {}
    for item in sorted(instance.items, key=lambda it: it.id):
        free.setdefault((item.width, item.height), []).append(item.id)
    pinned: Dict[int, int] = {}
    singles = [j for j, c in enumerate(layout.containers) if c.kind == ContainerKind.SINGLE_LARGE]
    for j in sorted(singles, key=lambda j: (-layout.containers[j].box.area, j)):
        box = layout.containers[j].box
        ids = free.get((box.width, box.height))
        if ids:
            pinned[j] = ids.pop(0)
    logger.debug(f"Supplied layout: {len(pinned)} of {len(singles)} single containers pinned")
    return Template(name="supplied", layout=layout, pinned=pinned, exact=True)
