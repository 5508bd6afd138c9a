"""
Nice-packing containers: filling, GAP assignment, top boxes and layout checks

A container is a placed box tagged with the kind of nice packing it holds:
a single item, a horizontal stack, a side-by-side row, a medium shelf block,
or an NFDH fill of small items.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from gspkit.core.config import settings
from gspkit.core.errors import ParameterError, VerificationError
from gspkit.core.gap import solve_exact, solve_scaled
from gspkit.core.guillotine import (
    CutTree,
    HorizontalCut,
    Leaf,
    NotSeparable,
    VerticalCut,
    check_rectangles,
    cuts_separating_boxes,
    validate_tree,
)
from gspkit.core.heuristics import nfdh_into_box, shelf_pack
from gspkit.core.models import (
    Assignment,
    Box,
    Classification,
    Container,
    ContainerKind,
    ContainerLayout,
    GapInstance,
    GapItem,
    Instance,
    Item,
    ItemClass,
    Placement,
    Rect,
)
from gspkit.core.verification import find_overlaps

logger = logging.getLogger(__name__)

# Classes each kind may hold when a classification is checked
ADMISSIBLE: Dict[ContainerKind, Tuple[ItemClass, ...]] = {
    ContainerKind.HORIZONTAL_STACK: (ItemClass.HORIZONTAL,),
    ContainerKind.VERTICAL_SIDE_BY_SIDE: (ItemClass.TALL, ItemClass.VERTICAL),
}

MEDIUM_AREA_FACTOR = 1  # area(I_medium) <= eps * OPT * W
MEDIUM_HEIGHT_FACTOR = 3  # NFDH block height <= 3 eps OPT
SMALL_LEFTOVER_FACTOR = 9  # B_small height budget 9 eps OPT


class AssignMode(str, Enum):
    """How a container is turned into a GAP bin"""
    HEIGHT = "height"
    WIDTH = "width"
    AREA = "area"
    SINGLE = "single"
    AUTO = "auto"


@dataclass
class Overflow:
    item_id: int
    reason: str


@dataclass
class FillResult:
    """Placements inside one container plus what did not fit"""
    container: Container
    placements: List[Placement]
    tree: CutTree
    overflow: Optional[Overflow] = None
    rejected: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.rejected


def _check_kind(container: Container, items: Sequence[Item], classification: Optional[Classification]) -> None:
    allowed = ADMISSIBLE.get(container.kind)
    if classification is None or allowed is None:
        return
    for item in items:
        if classification.of(item.id) not in allowed:
            raise ParameterError(
                f"item {item.id} ({classification.of(item.id).value}) cannot go into a {container.kind.value} container"
            )


def _fill_linear(container: Container, items: Sequence[Item], vertical: bool) -> FillResult:
    box = container.box
    placements: List[Placement] = []
    rejected: List[Tuple[int, str]] = []
    overflow: Optional[Overflow] = None
    cursor = box.bottom if vertical else box.left
    for index, item in enumerate(items):
        if vertical:
            fits = item.width <= box.width and cursor + item.height <= box.top
        else:
            fits = item.height <= box.height and cursor + item.width <= box.right
        if not fits:
            overflow = Overflow(item.id, "exceeds container capacity")
            rejected = [(item.id, overflow.reason)] + [(rest.id, "after overflow") for rest in items[index + 1:]]
            break
        if vertical:
            placements.append(Placement(item_id=item.id, left=box.left, bottom=cursor))
            cursor += item.height
        else:
            placements.append(Placement(item_id=item.id, left=cursor, bottom=box.bottom))
            cursor += item.width
    return FillResult(container, placements, _local_tree(container, items, placements), overflow, rejected)


def _local_tree(container: Container, items: Sequence[Item], placements: Sequence[Placement]) -> CutTree:
    by_id = {item.id: item for item in items}
    rects = [(p.item_id, p.rect(by_id[p.item_id])) for p in placements]
    tree = check_rectangles(rects, container.box.rect)
    if isinstance(tree, NotSeparable):
        raise VerificationError([f"container fill is not guillotine separable: {tree}"])
    return tree


def fill_container(
    container: Container,
    items: Sequence[Item],
    classification: Optional[Classification] = None,
) -> FillResult:
    """
    Pack items into one container following its kind.

    Stacks and side-by-side rows keep the given order and stop at the first
    item that does not fit (the overflow); everything placed before it is
    feasible. SmallNfdh delegates to nfdh_into_box, MediumBlock to a shelf fill.
    """
    _check_kind(container, items, classification)
    box = container.box
    kind = container.kind

    if kind == ContainerKind.HORIZONTAL_STACK:
        return _fill_linear(container, items, vertical=True)
    if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
        return _fill_linear(container, items, vertical=False)

    if kind == ContainerKind.SINGLE_LARGE:
        if not items:
            return FillResult(container, [], Leaf(box.rect))
        first = items[0]
        if first.width > box.width or first.height > box.height:
            overflow = Overflow(first.id, "larger than the container")
            return FillResult(container, [], Leaf(box.rect), overflow,
                              [(item.id, overflow.reason if item is first else "after overflow") for item in items])
        placements = [Placement(item_id=first.id, left=box.left, bottom=box.bottom)]
        result = FillResult(container, placements, _local_tree(container, items[:1], placements))
        if len(items) > 1:
            result.overflow = Overflow(items[1].id, "single item container already full")
            result.rejected = [(item.id, "single item container already full") for item in items[1:]]
        return result

    if kind == ContainerKind.SMALL_NFDH:
        packed = nfdh_into_box(items, box.width, box.height, container.epsilon, origin=(box.left, box.bottom))
    else:
        packed = shelf_pack(items, box.width, origin=(box.left, box.bottom), max_height=box.height)
    overflow = Overflow(*packed.rejected[0]) if packed.rejected else None
    return FillResult(container, packed.placements, packed.tree, overflow, packed.rejected)


# ============================================================================
# Assignment
# ============================================================================

def _resolve_mode(container: Container, mode: AssignMode) -> AssignMode:
    if mode != AssignMode.AUTO:
        return mode
    if container.kind == ContainerKind.SINGLE_LARGE:
        return AssignMode.SINGLE
    if container.kind == ContainerKind.HORIZONTAL_STACK:
        return AssignMode.HEIGHT
    if container.kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
        return AssignMode.WIDTH
    return AssignMode.AREA


def _area_fit(item: Item, container: Container, epsilon: Fraction) -> bool:
    box = container.box
    if container.kind == ContainerKind.SMALL_NFDH:
        eps = container.epsilon
    elif container.kind == ContainerKind.MEDIUM_BLOCK:
        eps = Fraction(1)
    else:
        eps = epsilon
    return item.width <= eps * box.width and item.height <= eps * box.height


def build_gap(
    items: Sequence[Item],
    containers: Sequence[Container],
    mode: AssignMode,
    epsilon: Optional[Fraction] = None,
) -> GapInstance:
    """One GAP bin per container; infeasible pairs get size None"""
    epsilon = Fraction(epsilon) if epsilon is not None else Fraction(1)
    capacities: List[int] = []
    modes: List[AssignMode] = []
    for container in containers:
        resolved = _resolve_mode(container, mode)
        modes.append(resolved)
        box = container.box
        capacities.append(
            box.height if resolved == AssignMode.HEIGHT
            else box.width if resolved == AssignMode.WIDTH
            else 1 if resolved == AssignMode.SINGLE
            else box.area
        )

    gap_items: List[GapItem] = []
    for item in items:
        sizes: List[Optional[int]] = []
        profits: List[int] = []
        for container, resolved in zip(containers, modes):
            box = container.box
            if resolved == AssignMode.HEIGHT:
                size = item.height if item.width <= box.width else None
            elif resolved == AssignMode.WIDTH:
                size = item.width if item.height <= box.height else None
            elif resolved == AssignMode.SINGLE:
                size = 1 if item.width <= box.width and item.height <= box.height else None
            else:
                size = item.area if _area_fit(item, container, epsilon) else None
            sizes.append(size)
            if size is None:
                profits.append(0)
            elif mode in (AssignMode.AUTO, AssignMode.SINGLE):
                profits.append(item.area)
            else:
                profits.append(size)
        gap_items.append(GapItem(sizes=tuple(sizes), profits=tuple(profits)))
    return GapInstance(capacities=tuple(capacities), items=tuple(gap_items))


def assign_to_containers(
    items: Sequence[Item],
    containers: Sequence[Container],
    mode: AssignMode,
    epsilon: Optional[Fraction] = None,
    table_budget: Optional[int] = None,
    scale: bool = False,
) -> Assignment:
    """
    Assign items to containers through the GAP dynamic program.

    Height mode: capacity h(B), size h_i, feasible iff w_i <= w(B).
    Width mode: capacity w(B), size w_i, feasible iff h_i <= h(B).
    Area mode: capacity w(B) h(B), size w_i h_i, feasible iff the item eps-fits.
    Single mode: capacity 1, size 1, feasible iff the item fits the box.
    Auto picks the mode per container kind and uses item areas as profits.
    With scale set, solve_scaled replaces solve_exact when the table is too large.
    """
    if not containers:
        return Assignment(bins=tuple(None for _ in items), profit=0)
    gap = build_gap(items, containers, mode, epsilon)
    if scale:
        return solve_scaled(gap, epsilon or Fraction(1, 4), table_budget)
    return solve_exact(gap, table_budget)


def group_assignment(items: Sequence[Item], assignment: Assignment, k: int) -> Tuple[List[List[Item]], List[Item]]:
    """(items per container, unassigned items), in input order"""
    groups: List[List[Item]] = [[] for _ in range(k)]
    unassigned: List[Item] = []
    for item, j in zip(items, assignment.bins):
        if j is None:
            unassigned.append(item)
        else:
            groups[j].append(item)
    return groups, unassigned


def canonical_order(container: Container, items: Sequence[Item]) -> List[Item]:
    """Tallest first for stacks and rows; NFDH kinds sort on their own"""
    if container.kind in (ContainerKind.HORIZONTAL_STACK, ContainerKind.VERTICAL_SIDE_BY_SIDE, ContainerKind.SINGLE_LARGE):
        return sorted(items, key=lambda item: (-item.height, -item.width, item.id))
    return list(items)


# ============================================================================
# Exact assignment
# ============================================================================

MAX_EXACT_ITEMS = 400  # recursion depth of the search


@dataclass
class _Slot:
    """A container being filled during the exact search"""
    container: Container
    members: List[Item] = field(default_factory=list)
    used: int = 0

    def _size(self, item: Item) -> int:
        kind = self.container.kind
        if kind == ContainerKind.HORIZONTAL_STACK:
            return item.height
        if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
            return item.width
        if kind == ContainerKind.SINGLE_LARGE:
            return 1
        return item.area

    def free_area(self) -> int:
        box = self.container.box
        kind = self.container.kind
        if kind == ContainerKind.HORIZONTAL_STACK:
            return (box.height - self.used) * box.width
        if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
            return (box.width - self.used) * box.height
        if kind == ContainerKind.SINGLE_LARGE:
            return 0 if self.members else box.area
        return box.area - self.used

    def admits(self, item: Item) -> bool:
        """Capacity test; NFDH kinds are confirmed by packs()"""
        box = self.container.box
        kind = self.container.kind
        if item.width > box.width or item.height > box.height:
            return False
        if kind == ContainerKind.HORIZONTAL_STACK:
            return self.used + item.height <= box.height
        if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
            return self.used + item.width <= box.width
        if kind == ContainerKind.SINGLE_LARGE:
            return not self.members
        if kind == ContainerKind.SMALL_NFDH:
            eps = self.container.epsilon
            if item.width > eps * box.width or item.height > eps * box.height:
                return False
        return self.used + item.area <= box.area

    def packs(self, item: Item) -> bool:
        box = self.container.box
        if self.container.kind == ContainerKind.SMALL_NFDH:
            return not nfdh_into_box(self.members + [item], box.width, box.height, self.container.epsilon).rejected
        if self.container.kind == ContainerKind.MEDIUM_BLOCK:
            return not shelf_pack(self.members + [item], box.width, max_height=box.height).rejected
        return True

    def waste(self, item: Item) -> Tuple[int, int]:
        """(area the item would claim but not cover, free area left after it)"""
        before = self.free_area()
        self.add(item)
        after = self.free_area()
        self.remove(item)
        return before - after - item.area, after

    def signature(self) -> Tuple[Any, ...]:
        box = self.container.box
        held = tuple(sorted((m.width, m.height) for m in self.members))
        return self.container.kind, box.width, box.height, self.container.epsilon, self.used, held

    def add(self, item: Item) -> None:
        self.members.append(item)
        self.used += self._size(item)

    def remove(self, item: Item) -> None:
        self.members.remove(item)
        self.used -= self._size(item)


def exact_assignment(
    items: Sequence[Item],
    containers: Sequence[Container],
    node_budget: Optional[int] = None,
) -> Optional[List[List[Item]]]:
    """
    Items per container such that every container's fill takes all of its
    items, or None if no such assignment turns up within node_budget nodes.

    Depth-first search that always branches on the item with the fewest
    admissible containers, trying the containers it would waste least area
    in first. Identical items go to non-decreasing container indices and
    containers in identical states are tried once.
    """
    budget = node_budget or settings.assignment_node_budget
    if len(items) > MAX_EXACT_ITEMS:
        return None
    slots = [_Slot(container) for container in containers]
    pending: Dict[Tuple[int, int], List[Item]] = {}
    for item in sorted(items, key=lambda it: it.id):
        pending.setdefault((item.width, item.height), []).append(item)
    floors: Dict[Tuple[int, int], int] = {}
    nodes = 0

    def walk() -> bool:
        nonlocal nodes
        if not pending:
            return True
        nodes += 1
        if nodes > budget:
            return False
        if sum(w * h * len(group) for (w, h), group in pending.items()) > sum(s.free_area() for s in slots):
            return False

        chosen: Optional[Tuple[Tuple[int, int], List[int]]] = None
        for dims, group in pending.items():
            options = [j for j in range(floors.get(dims, 0), len(slots)) if slots[j].admits(group[-1])]
            if not options:
                return False
            if chosen is None or (len(options), -dims[0] * dims[1]) < (len(chosen[1]), -chosen[0][0] * chosen[0][1]):
                chosen = (dims, options)

        dims, options = chosen
        group = pending[dims]
        item = group.pop()
        if not group:
            del pending[dims]
        previous = floors.get(dims, 0)
        options.sort(key=lambda j: (*slots[j].waste(item), j))
        seen = set()
        for j in options:
            slot = slots[j]
            signature = slot.signature()
            if signature in seen:
                continue
            seen.add(signature)
            if not slot.packs(item):
                continue
            slot.add(item)
            floors[dims] = j
            if walk():
                return True
            slot.remove(item)
        floors[dims] = previous
        pending.setdefault(dims, []).append(item)
        return False

    if not walk():
        logger.debug(f"Exact assignment of {len(items)} items to {len(slots)} containers failed after {nodes} nodes")
        return None
    logger.debug(f"Exact assignment of {len(items)} items to {len(slots)} containers in {nodes} nodes")
    return [sorted(slot.members, key=lambda it: it.id) for slot in slots]


# ============================================================================
# Top boxes
# ============================================================================

@dataclass
class BlockPack:
    """A full-width shelf block placed on top of a layout"""
    container: Container
    placements: List[Placement]
    tree: CutTree
    budget: Optional[int] = None

    @property
    def height(self) -> int:
        return self.container.box.height

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.height <= self.budget


def _block(items: Sequence[Item], strip_width: int, origin: Tuple[int, int]) -> Tuple[Container, List[Placement], CutTree]:
    packed = shelf_pack(items, strip_width, origin=origin)
    box = Box(left=origin[0], bottom=origin[1], width=strip_width, height=packed.used_height)
    return Container(box=box, kind=ContainerKind.MEDIUM_BLOCK), packed.placements, packed.tree


def pack_medium(
    medium_items: Sequence[Item],
    opt_estimate: int,
    strip_width: int,
    epsilon: Fraction,
    origin: Tuple[int, int] = (0, 0),
) -> BlockPack:
    """
    All medium items in one width-W container B_med of height <= 3 eps OPT.

    Raises ParameterError when the area or height precondition fails.
    """
    epsilon = Fraction(epsilon)
    area = sum(item.area for item in medium_items)
    if area > MEDIUM_AREA_FACTOR * epsilon * opt_estimate * strip_width:
        raise ParameterError(
            f"medium area {area} exceeds eps*OPT*W = {epsilon * opt_estimate * strip_width}"
        )
    for item in medium_items:
        if item.height > epsilon * opt_estimate:
            raise ParameterError(f"medium item {item.id} height {item.height} exceeds eps*OPT = {epsilon * opt_estimate}")
    container, placements, tree = _block(medium_items, strip_width, origin)
    budget = int(MEDIUM_HEIGHT_FACTOR * epsilon * opt_estimate)
    return BlockPack(container, placements, tree, budget)


def pack_small_leftovers(
    items: Sequence[Item],
    strip_width: int,
    opt_estimate: int,
    epsilon: Fraction,
    origin: Tuple[int, int] = (0, 0),
) -> BlockPack:
    """
    Full-width NFDH box B_small for small leftovers; budget 9 eps OPT.

    The box is tagged small_nfdh with the largest item-to-box side ratio as
    its epsilon.
    """
    container, placements, tree = _block(items, strip_width, origin)
    height = container.box.height
    fit = max(
        [Fraction(1, strip_width)] + [max(Fraction(item.width, strip_width), Fraction(item.height, height)) for item in items]
    ) if height else Fraction(1)
    container = container.model_copy(update={"kind": ContainerKind.SMALL_NFDH, "epsilon": fit})
    budget = int(SMALL_LEFTOVER_FACTOR * Fraction(epsilon) * opt_estimate)
    result = BlockPack(container, placements, tree, budget)
    if not result.within_budget:
        logger.debug(f"Small leftover box height {result.height} exceeds budget {budget}")
    return result


def pack_leftover_block(items: Sequence[Item], strip_width: int, origin: Tuple[int, int] = (0, 0)) -> BlockPack:
    """Unbudgeted NFDH block for whatever nothing else absorbed"""
    container, placements, tree = _block(items, strip_width, origin)
    return BlockPack(container, placements, tree)


def route_to_reserved(items: Sequence[Item], reserved: Box) -> Tuple[List[Placement], List[Item]]:
    """Place items side by side into B*; returns (placements, items that did not fit)"""
    placements: List[Placement] = []
    overflow: List[Item] = []
    cursor = reserved.left
    for item in sorted(items, key=lambda it: (-it.height, -it.width, it.id)):
        if item.height <= reserved.height and cursor + item.width <= reserved.right:
            placements.append(Placement(item_id=item.id, left=cursor, bottom=reserved.bottom))
            cursor += item.width
        else:
            overflow.append(item)
    return placements, overflow


# ============================================================================
# Layout verification
# ============================================================================

class LayoutReport(BaseModel):
    """Problems found in a container layout; tree is the composed item cut tree"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    violations: List[str] = []
    tree: Any = None

    @property
    def ok(self) -> bool:
        return not self.violations


def embed(tree: CutTree, inner: Rect, outer: Rect) -> CutTree:
    """Grow a tree over `inner` to cover `outer`, trimming the margins as waste"""
    node, cur = tree, inner
    if cur.top < outer.top:
        grown = Rect(cur.left, cur.bottom, cur.right, outer.top)
        node = HorizontalCut(grown, cur.top, node, Leaf(Rect(cur.left, cur.top, cur.right, outer.top)))
        cur = grown
    if cur.right < outer.right:
        grown = Rect(cur.left, cur.bottom, outer.right, cur.top)
        node = VerticalCut(grown, cur.right, node, Leaf(Rect(cur.right, cur.bottom, outer.right, cur.top)))
        cur = grown
    if cur.bottom > outer.bottom:
        grown = Rect(cur.left, outer.bottom, cur.right, cur.top)
        node = HorizontalCut(grown, cur.bottom, Leaf(Rect(cur.left, outer.bottom, cur.right, cur.bottom)), node)
        cur = grown
    if cur.left > outer.left:
        grown = Rect(outer.left, cur.bottom, cur.right, cur.top)
        node = VerticalCut(grown, cur.left, Leaf(Rect(outer.left, cur.bottom, cur.left, cur.top)), node)
    return node


def _compose(node: CutTree, local: Dict[int, Tuple[Rect, CutTree]]) -> CutTree:
    if isinstance(node, Leaf):
        if node.item is None or node.item not in local:
            return Leaf(node.region)
        inner, subtree = local[node.item]
        return embed(subtree, inner, node.region)
    if isinstance(node, VerticalCut):
        return VerticalCut(node.region, node.x, _compose(node.left, local), _compose(node.right, local))
    return HorizontalCut(node.region, node.y, _compose(node.bottom, local), _compose(node.top, local))


def _nice_violations(index: int, container: Container, rects: List[Tuple[int, Rect]]) -> List[str]:
    kind = container.kind
    label = f"container {index} ({kind.value})"
    if kind == ContainerKind.SINGLE_LARGE and len(rects) > 1:
        return [f"{label} holds {len(rects)} items"]
    if kind == ContainerKind.HORIZONTAL_STACK:
        spans = sorted((r.bottom, r.top) for _, r in rects)
        if any(b < prev_top for (_, prev_top), (b, _) in zip(spans, spans[1:])):
            return [f"{label} items are not stacked"]
    if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
        spans = sorted((r.left, r.right) for _, r in rects)
        if any(a < prev_right for (_, prev_right), (a, _) in zip(spans, spans[1:])):
            return [f"{label} items are not side by side"]
    if kind == ContainerKind.SMALL_NFDH:
        eps = container.epsilon
        box = container.box
        return [
            f"item {i} too large for {label}"
            for i, r in rects
            if r.width > eps * box.width or r.height > eps * box.height
        ]
    return []


def verify_layout(
    layout: ContainerLayout,
    instance: Instance,
    placements: Sequence[Placement],
    classification: Optional[Classification] = None,
) -> LayoutReport:
    """
    Check a filled layout: containers inside the strip and pairwise disjoint,
    every item inside a container, each container nice for its kind, class
    admissibility (when a classification is given), and global guillotine
    separability of the items through the composed cut tree.
    """
    violations: List[str] = []
    W = layout.strip_width
    boxes = [(j, c.box.rect) for j, c in enumerate(layout.containers)]

    for j, r in boxes:
        if r.left < 0 or r.bottom < 0 or r.right > W or r.top > layout.height:
            violations.append(f"container {j} {r} lies outside [0,{W}]x[0,{layout.height}]")
    for a, b in find_overlaps([(j, r) for j, r in boxes if r.area > 0]):
        violations.append(f"containers {a} and {b} overlap")

    items = instance.items
    rects = [(p.item_id, p.rect(items[p.item_id])) for p in placements]
    for a, b in find_overlaps(rects):
        violations.append(f"items {a} and {b} overlap")

    members: Dict[int, List[Tuple[int, Rect]]] = {j: [] for j, _ in boxes}
    for item_id, r in rects:
        owner = next((j for j, box in boxes if box.contains(r)), None)
        if owner is None:
            violations.append(f"item {item_id} lies in no container")
        else:
            members[owner].append((item_id, r))

    local: Dict[int, Tuple[Rect, CutTree]] = {}
    for j, container in enumerate(layout.containers):
        inside = members[j]
        violations.extend(_nice_violations(j, container, inside))
        allowed = ADMISSIBLE.get(container.kind)
        if classification is not None and allowed is not None:
            for item_id, _ in inside:
                if classification.of(item_id) not in allowed:
                    violations.append(
                        f"item {item_id} ({classification.of(item_id).value}) not admissible in container {j} ({container.kind.value})"
                    )
        if container.box.rect.area == 0:
            continue
        subtree = check_rectangles(inside, container.box.rect)
        if isinstance(subtree, NotSeparable):
            violations.append(f"container {j}: {subtree}")
        else:
            local[j] = (container.box.rect, subtree)

    if violations:
        return LayoutReport(violations=violations)

    try:
        outer = cuts_separating_boxes(layout)
    except VerificationError as exc:
        return LayoutReport(violations=exc.violations)
    if isinstance(outer, NotSeparable):
        return LayoutReport(violations=[f"containers are not guillotine separable: {outer}"])

    tree = _compose(outer, local)
    problems = validate_tree(tree, rects, outer.region)
    if problems:
        return LayoutReport(violations=problems)
    return LayoutReport(tree=tree)
