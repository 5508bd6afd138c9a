"""
Constructive baselines: NFDH shelves, bottom-left flushing, Steinberg's condition

All shelf packers share one engine. Items are taken in non-increasing height
(ties: wider first, then lower id); a shelf's height is set by its first item,
items go left to right, and a new shelf opens on top when the next item does
not fit. Every shelf packing comes with its 2-stage cut tree (plus trim cuts).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from gspkit.core.errors import InfeasibleError, ParameterError
from gspkit.core.guillotine import CutTree, HorizontalCut, Leaf, VerticalCut
from gspkit.core.models import Instance, Item, Packing, Placement, Rect

logger = logging.getLogger(__name__)

REJECT_TOO_WIDE = "wider than the box"
REJECT_NOT_SMALL = "exceeds epsilon fit"
REJECT_BOX_FULL = "box full"


@dataclass
class _Shelf:
    bottom: int
    height: int
    cells: List[Tuple[Item, int]] = field(default_factory=list)  # (item, left)


@dataclass
class ShelfPack:
    """Result of a shelf fill inside a region"""
    placements: List[Placement]
    rejected: List[Tuple[int, str]]
    used_height: int
    region: Rect
    tree: CutTree

    @property
    def packed_ids(self) -> List[int]:
        return [p.item_id for p in self.placements]


def nfdh_order(items: Iterable[Item]) -> List[Item]:
    return sorted(items, key=lambda item: (-item.height, -item.width, item.id))


def _cell_tree(item: Item, cell: Rect) -> CutTree:
    if item.height < cell.height:
        y = cell.bottom + item.height
        return HorizontalCut(
            cell, y,
            Leaf(Rect(cell.left, cell.bottom, cell.right, y), item.id),
            Leaf(Rect(cell.left, y, cell.right, cell.top)),
        )
    return Leaf(cell, item.id)


def _shelf_tree(shelf: _Shelf, left: int, right: int) -> CutTree:
    top = shelf.bottom + shelf.height
    cells = [
        (item, Rect(x, shelf.bottom, x + item.width, top)) for item, x in shelf.cells
    ]
    end = cells[-1][1].right
    node: CutTree = (
        Leaf(Rect(end, shelf.bottom, right, top)) if end < right else _cell_tree(*cells.pop())
    )
    for item, cell in reversed(cells):
        node = VerticalCut(Rect(cell.left, shelf.bottom, right, top), cell.right, _cell_tree(item, cell), node)
    return node


def _stack_tree(shelves: List[_Shelf], region: Rect) -> CutTree:
    if not shelves:
        return Leaf(region)
    last = shelves[-1]
    last_top = last.bottom + last.height
    if last_top < region.top:
        node: CutTree = Leaf(Rect(region.left, last_top, region.right, region.top))
        rows = shelves
    else:
        node = _shelf_tree(last, region.left, region.right)
        rows = shelves[:-1]
    for shelf in reversed(rows):
        top = shelf.bottom + shelf.height
        node = HorizontalCut(
            Rect(region.left, shelf.bottom, region.right, region.top), top,
            _shelf_tree(shelf, region.left, region.right), node,
        )
    return node


def shelf_pack(
    items: Iterable[Item],
    width: int,
    origin: Tuple[int, int] = (0, 0),
    max_height: Optional[int] = None,
) -> ShelfPack:
    """
    Next Fit Decreasing Height inside a region of the given width.

    With max_height set, a shelf that would cross it is not opened; later
    (shorter) items still try the current shelf, the rest are rejected.
    """
    ox, oy = origin
    shelves: List[_Shelf] = []
    rejected: List[Tuple[int, str]] = []
    cursor = 0
    closed = False
    for item in nfdh_order(items):
        if item.width > width:
            rejected.append((item.id, REJECT_TOO_WIDE))
            continue
        if shelves and cursor + item.width <= width:
            shelves[-1].cells.append((item, cursor))
            cursor += item.width
            continue
        bottom = shelves[-1].bottom + shelves[-1].height if shelves else 0
        if closed or (max_height is not None and bottom + item.height > max_height):
            closed = True
            rejected.append((item.id, REJECT_BOX_FULL))
            continue
        shelves.append(_Shelf(bottom=bottom, height=item.height, cells=[(item, 0)]))
        cursor = item.width

    used = shelves[-1].bottom + shelves[-1].height if shelves else 0
    for shelf in shelves:
        shelf.bottom += oy
        shelf.cells = [(item, x + ox) for item, x in shelf.cells]
    region = Rect(ox, oy, ox + width, oy + (used if max_height is None else max_height))
    placements = [
        Placement(item_id=item.id, left=x, bottom=shelf.bottom)
        for shelf in shelves
        for item, x in shelf.cells
    ]
    return ShelfPack(
        placements=placements,
        rejected=rejected,
        used_height=used,
        region=region,
        tree=_stack_tree(shelves, region),
    )


def nfdh_strip(instance: Instance) -> Tuple[Packing, CutTree]:
    """NFDH over the whole strip; height <= 2 * area / W + max height"""
    result = shelf_pack(instance.items, instance.strip_width)
    packing = Packing.build(instance, result.placements)
    logger.debug(f"NFDH strip: {instance.n} items, height {packing.height}")
    return packing, result.tree


def nfdh_into_box(
    items: Sequence[Item],
    width: int,
    height: int,
    epsilon: Fraction,
    origin: Tuple[int, int] = (0, 0),
) -> ShelfPack:
    """
    NFDH into a w x h box for items with w_i <= eps*w and h_i <= eps*h.

    Items violating the fit condition are rejected with a reason. Packed
    area is at least min(total area, (1 - 2*eps) * w * h).
    """
    epsilon = Fraction(epsilon)
    fitting: List[Item] = []
    rejected: List[Tuple[int, str]] = []
    for item in items:
        if item.width > epsilon * width or item.height > epsilon * height:
            rejected.append((item.id, REJECT_NOT_SMALL))
        else:
            fitting.append(item)
    result = shelf_pack(fitting, width, origin=origin, max_height=height)
    result.rejected = rejected + result.rejected
    return result


def flush_order(items: Iterable[Item]) -> List[Item]:
    return sorted(items, key=lambda item: (-item.height, -item.width, item.id))


def bottom_left_flush(tall_items: Sequence[Item], strip_width: int) -> List[Placement]:
    """Tall items by non-increasing height, abutting left to right on the floor"""
    total = sum(item.width for item in tall_items)
    if total > strip_width:
        raise InfeasibleError(f"tall items need width {total} > strip width {strip_width}")
    placements: List[Placement] = []
    left = 0
    for item in flush_order(tall_items):
        placements.append(Placement(item_id=item.id, left=left, bottom=0))
        left += item.width
    return placements


def steinberg_feasible(items: Sequence[Item], width: int, height: int) -> bool:
    """2 a(I) <= w h - (2 w_max - w)+ (2 h_max - h)+ ; True certifies packability"""
    for item in items:
        if item.width > width or item.height > height:
            raise ParameterError(f"item {item.id} ({item.width}x{item.height}) does not fit a {width}x{height} box")
    if not items:
        return True
    area = sum(item.area for item in items)
    w_max = max(item.width for item in items)
    h_max = max(item.height for item in items)
    return 2 * area <= width * height - max(0, 2 * w_max - width) * max(0, 2 * h_max - height)
