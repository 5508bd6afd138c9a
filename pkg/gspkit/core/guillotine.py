"""
Guillotine cut trees: separability checking, stage analysis and validation

A CutTree node owns a region. Vertical and horizontal cuts split the region
in two at a coordinate strictly inside it; leaves hold one item or waste.
The checker works on coordinates compressed to ranks (at most 2n distinct
values per axis), cuts only at item edges, and prefers vertical cuts and then
smaller coordinates, so identical input always yields the identical tree.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from gspkit.core.errors import VerificationError
from gspkit.core.models import ContainerLayout, Instance, Packing, Placement, Rect
from gspkit.core.verification import ensure_valid, find_overlaps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Leaf:
    region: Rect
    item: Optional[int] = None  # None marks waste

    @property
    def is_waste(self) -> bool:
        return self.item is None


@dataclass(frozen=True)
class VerticalCut:
    region: Rect
    x: int
    left: "CutTree"
    right: "CutTree"

    @property
    def children(self) -> Tuple["CutTree", "CutTree"]:
        return (self.left, self.right)


@dataclass(frozen=True)
class HorizontalCut:
    region: Rect
    y: int
    bottom: "CutTree"
    top: "CutTree"

    @property
    def children(self) -> Tuple["CutTree", "CutTree"]:
        return (self.bottom, self.top)


CutTree = Union[Leaf, VerticalCut, HorizontalCut]


@dataclass(frozen=True)
class NotSeparable:
    """Witness: a region holding two or more rectangles with no feasible cut"""
    region: Rect
    item_ids: Tuple[int, ...]

    def __str__(self) -> str:
        return f"no feasible cut in {self.region} (items {', '.join(map(str, self.item_ids))})"


# ============================================================================
# Checker
# ============================================================================

def _compress(rects: Sequence[Tuple[int, Rect]], region: Rect) -> Tuple[List[Tuple[int, Rect]], Rect, List[int], List[int]]:
    xs = sorted({region.left, region.right, *(r.left for _, r in rects), *(r.right for _, r in rects)})
    ys = sorted({region.bottom, region.top, *(r.bottom for _, r in rects), *(r.top for _, r in rects)})
    xr = {x: i for i, x in enumerate(xs)}
    yr = {y: i for i, y in enumerate(ys)}
    compressed = [(i, Rect(xr[r.left], yr[r.bottom], xr[r.right], yr[r.top])) for i, r in rects]
    cregion = Rect(xr[region.left], yr[region.bottom], xr[region.right], yr[region.top])
    return compressed, cregion, xs, ys


def _first_gap(intervals: List[Tuple[int, int]]) -> Optional[int]:
    """Smallest coordinate separating the intervals into two non-empty groups"""
    intervals.sort()
    reach = intervals[0][1]
    for start, end in intervals[1:]:
        if start >= reach:
            return reach
        reach = max(reach, end)
    return None


def _split(entries: List[Tuple[int, Rect]], region: Rect) -> Union[CutTree, NotSeparable]:
    if not entries:
        return Leaf(region)
    if len(entries) == 1:
        return Leaf(region, entries[0][0])

    x = _first_gap([(r.left, r.right) for _, r in entries])
    if x is not None:
        lower = [e for e in entries if e[1].right <= x]
        upper = [e for e in entries if e[1].left >= x]
        left = _split(lower, Rect(region.left, region.bottom, x, region.top))
        if isinstance(left, NotSeparable):
            return left
        right = _split(upper, Rect(x, region.bottom, region.right, region.top))
        if isinstance(right, NotSeparable):
            return right
        return VerticalCut(region, x, left, right)

    y = _first_gap([(r.bottom, r.top) for _, r in entries])
    if y is not None:
        lower = [e for e in entries if e[1].top <= y]
        upper = [e for e in entries if e[1].bottom >= y]
        bottom = _split(lower, Rect(region.left, region.bottom, region.right, y))
        if isinstance(bottom, NotSeparable):
            return bottom
        top = _split(upper, Rect(region.left, y, region.right, region.top))
        if isinstance(top, NotSeparable):
            return top
        return HorizontalCut(region, y, bottom, top)

    return NotSeparable(region, tuple(sorted(i for i, _ in entries)))


def _expand(node: Union[CutTree, NotSeparable], xs: List[int], ys: List[int]) -> Union[CutTree, NotSeparable]:
    def rect(r: Rect) -> Rect:
        return Rect(xs[r.left], ys[r.bottom], xs[r.right], ys[r.top])

    if isinstance(node, NotSeparable):
        return NotSeparable(rect(node.region), node.item_ids)
    if isinstance(node, Leaf):
        return Leaf(rect(node.region), node.item)
    if isinstance(node, VerticalCut):
        return VerticalCut(rect(node.region), xs[node.x], _expand(node.left, xs, ys), _expand(node.right, xs, ys))
    return HorizontalCut(rect(node.region), ys[node.y], _expand(node.bottom, xs, ys), _expand(node.top, xs, ys))


def check_rectangles(rects: Sequence[Tuple[int, Rect]], region: Rect) -> Union[CutTree, NotSeparable]:
    """
    Guillotine separability of pairwise disjoint rectangles inside a region.

    Args:
        rects: (id, rectangle) pairs; ids label the leaves
        region: bounding region the tree must partition

    Returns:
        A CutTree covering the region, or NotSeparable with the blocked sub-region
    """
    for _, r in rects:
        if not region.contains(r):
            raise VerificationError([f"rectangle {r} lies outside region {region}"])
    compressed, cregion, xs, ys = _compress(rects, region)
    return _expand(_split(compressed, cregion), xs, ys)


def check_separable(packing: Packing) -> Union[CutTree, NotSeparable]:
    """Cut tree over [0, W] x [0, H] for a feasible packing, or a witness region"""
    ensure_valid(packing)
    region = Rect(0, 0, packing.instance.strip_width, packing.height)
    result = check_rectangles(packing.rects(), region)
    if isinstance(result, NotSeparable):
        logger.debug(f"Packing not guillotine separable: {result}")
    return result


def cuts_separating_boxes(layout: ContainerLayout, extra: Sequence[Rect] = ()) -> Union[CutTree, NotSeparable]:
    """
    Separability of a layout's boxes (plus extra opaque rectangles such as
    flushed tall items). Leaf ids index containers first, then the extras.
    Zero-area boxes take no part in the check.
    """
    boxes = [(i, c.box.rect) for i, c in enumerate(layout.containers)]
    boxes += [(len(layout.containers) + j, r) for j, r in enumerate(extra)]
    boxes = [(i, r) for i, r in boxes if r.area > 0]
    overlaps = find_overlaps(boxes)
    if overlaps:
        raise VerificationError([f"boxes {a} and {b} overlap" for a, b in overlaps])
    top = max([layout.height] + [r.top for _, r in boxes])
    return check_rectangles(boxes, Rect(0, 0, layout.strip_width, top))


# ============================================================================
# Analysis
# ============================================================================

def is_trim(node: CutTree) -> bool:
    """A cut that only separates one item from waste"""
    if isinstance(node, Leaf):
        return False
    a, b = node.children
    return (
        isinstance(a, Leaf) and isinstance(b, Leaf)
        and (a.is_waste != b.is_waste)
    )


def stage_count(tree: CutTree, include_trim: bool = False) -> int:
    """Maximum number of same-orientation runs on any root-to-leaf path"""

    def walk(node: CutTree, last: Optional[str], stages: int) -> int:
        if isinstance(node, Leaf):
            return stages
        orientation = "V" if isinstance(node, VerticalCut) else "H"
        if not include_trim and is_trim(node):
            return max(walk(child, last, stages) for child in node.children)
        nxt = stages if orientation == last else stages + 1
        return max(walk(child, orientation, nxt) for child in node.children)

    return walk(tree, None, 0)


def stage_counts(tree: CutTree) -> Tuple[int, int]:
    """(stages without trim cuts, stages with trim cuts)"""
    return stage_count(tree), stage_count(tree, include_trim=True)


def leaves(tree: CutTree) -> Iterator[Leaf]:
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            yield node
        else:
            stack.extend(reversed(node.children))


def iter_cuts(tree: CutTree) -> Iterator[Tuple[CutTree, int]]:
    """Every cut node with its 1-based stage index along its path"""

    def walk(node: CutTree, last: Optional[str], stage: int):
        if isinstance(node, Leaf):
            return
        orientation = "V" if isinstance(node, VerticalCut) else "H"
        here = stage if orientation == last else stage + 1
        yield node, here
        for child in node.children:
            yield from walk(child, orientation, here)

    yield from walk(tree, None, 0)


def validate_tree(tree: CutTree, rects: Sequence[Tuple[int, Rect]], region: Optional[Rect] = None) -> List[str]:
    """
    Check a tree independently of how it was built: children partition their
    parent, cuts lie strictly inside, no cut crosses a rectangle, every
    rectangle sits inside exactly one leaf.
    """
    violations: List[str] = []
    by_id: Dict[int, Rect] = dict(rects)
    seen: Dict[int, int] = {}
    if region is not None and tree.region != region:
        violations.append(f"root region {tree.region} differs from {region}")

    stack: List[Tuple[CutTree, List[int]]] = [(tree, [i for i, _ in rects])]
    while stack:
        node, inside = stack.pop()
        r = node.region
        if isinstance(node, Leaf):
            if node.item is not None:
                seen[node.item] = seen.get(node.item, 0) + 1
                if node.item not in by_id:
                    violations.append(f"leaf references unknown item {node.item}")
                elif not r.contains(by_id[node.item]):
                    violations.append(f"leaf {r} does not contain item {node.item}")
            stray = [i for i in inside if i != node.item]
            if stray:
                violations.append(f"leaf {r} overlaps items {stray}")
            continue
        if isinstance(node, VerticalCut):
            a, b = node.left, node.right
            if not (r.left < node.x < r.right):
                violations.append(f"vertical cut x={node.x} not inside {r}")
            if a.region != Rect(r.left, r.bottom, node.x, r.top) or b.region != Rect(node.x, r.bottom, r.right, r.top):
                violations.append(f"vertical cut x={node.x} children do not partition {r}")
            low = [i for i in inside if by_id[i].right <= node.x]
            high = [i for i in inside if by_id[i].left >= node.x]
        else:
            a, b = node.bottom, node.top
            if not (r.bottom < node.y < r.top):
                violations.append(f"horizontal cut y={node.y} not inside {r}")
            if a.region != Rect(r.left, r.bottom, r.right, node.y) or b.region != Rect(r.left, node.y, r.right, r.top):
                violations.append(f"horizontal cut y={node.y} children do not partition {r}")
            low = [i for i in inside if by_id[i].top <= node.y]
            high = [i for i in inside if by_id[i].bottom >= node.y]
        crossed = sorted(set(inside) - set(low) - set(high))
        for i in crossed:
            violations.append(f"cut in {r} intersects item {i}")
        stack.append((b, high))
        stack.append((a, low))

    for i in by_id:
        count = seen.get(i, 0)
        if count != 1:
            violations.append(f"item {i} appears in {count} leaves")
    return violations


def compact_from_tree(tree: CutTree, instance: Instance) -> Packing:
    """
    Re-flow items along a cut tree with the instance's heights: every
    horizontal piece sits directly on top of the one below it. Item widths
    must match the tree's source packing; heights may differ.
    """
    placements: List[Placement] = []

    def flow(node: CutTree, y0: int) -> int:
        if isinstance(node, Leaf):
            if node.item is None:
                return 0
            placements.append(Placement(item_id=node.item, left=node.region.left, bottom=y0))
            return instance.items[node.item].height
        if isinstance(node, VerticalCut):
            return max(flow(node.left, y0), flow(node.right, y0))
        below = flow(node.bottom, y0)
        return below + flow(node.top, y0 + below)

    flow(tree, 0)
    return Packing.build(instance, placements)
