"""
Shared machinery of the container pipelines

realize() turns one template into a verified packing: pinned items go into
their containers, the rest are matched to containers exactly (supplied
layouts) or assigned by GAP in small batches of containers, every
container is filled by kind, and whatever is left is stacked on top in
full-width boxes (B*, B_hor, B_med, leftovers, B_small).
The filled layout is verified, its composed cut tree is used to drop every
piece as far down as it will go, and the result is checked again.
search() runs a plan of templates over the OPT' grid and keeps the best.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from gspkit.core.classification import choose_constants, classify, lower_bound, normalize_heights
from gspkit.core.config import settings
from gspkit.core.containers import (
    ADMISSIBLE,
    BlockPack,
    FillResult,
    assign_to_containers,
    AssignMode,
    canonical_order,
    exact_assignment,
    fill_container,
    group_assignment,
    pack_leftover_block,
    pack_medium,
    pack_small_leftovers,
    route_to_reserved,
    verify_layout,
)
from gspkit.core.errors import ParameterError, VerificationError
from gspkit.core.guillotine import CutTree, NotSeparable, check_separable, compact_from_tree
from gspkit.core.heuristics import nfdh_strip
from gspkit.core.models import (
    Box,
    Budgets,
    Classification,
    ConstantProfile,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
    Item,
    ItemClass,
    Packing,
    Placement,
    SolveResult,
    SolveTrace,
)
from gspkit.core.templates import Template, supplied_template
from gspkit.core.verification import ensure_valid

logger = logging.getLogger(__name__)


def opt_grid(lower: int, upper: int, epsilon: Fraction, steps: int) -> List[int]:
    """Geometric OPT' guesses lower, ceil(lower(1+eps)), ... up to upper"""
    if lower <= 0:
        return []
    guesses: List[int] = []
    guess = lower
    while guess <= upper and len(guesses) < steps:
        guesses.append(guess)
        guess = max(guess + 1, math.ceil(guess * (1 + epsilon)))
    return guesses or [lower]


def finalize(instance: Instance, packing: Packing, trace: SolveTrace) -> SolveResult:
    """Verify feasibility and separability, then attach bound and ratio"""
    ensure_valid(packing)
    tree = check_separable(packing)
    if isinstance(tree, NotSeparable):
        raise VerificationError([f"{trace.algorithm} produced a non-separable packing: {tree}"])
    bound = lower_bound(instance)
    ratio = Fraction(packing.height, bound) if bound else Fraction(1)
    return SolveResult(
        packing=packing,
        cut_tree=tree,
        height=packing.height,
        lower_bound=bound,
        ratio=ratio,
        trace=trace,
    )


def profile_for(
    instance: Instance,
    opt_estimate: int,
    epsilon: Fraction,
    budgets: Budgets,
) -> Optional[Tuple[ConstantProfile, Classification]]:
    """Constants and classes for a guess; None when the guess is below h_max"""
    if opt_estimate < instance.max_height or opt_estimate <= 0:
        return None
    profile = choose_constants(epsilon, instance, opt_estimate, container_budget=budgets.max_containers)
    return profile, classify(instance, opt_estimate, profile.delta, profile.mu)


# ============================================================================
# Realizing one template
# ============================================================================

@dataclass
class RealizeOptions:
    """Extra top-of-layout boxes used by the (3/2 + eps) pipeline"""
    reserved: Optional[Box] = None  # B*
    hor_budget: Optional[int] = None  # height of B_hor


@dataclass
class Realization:
    packing: Packing
    tree: CutTree
    layout: ContainerLayout
    leftover_boxes: List[Box]
    spilled: int
    stats: Dict[str, Any] = field(default_factory=dict)


def _settle(container: Container, fill: FillResult, by_id: Dict[int, Item],
            classification: Optional[Classification]) -> List[Container]:
    """
    Keep a filled container if its items suit its kind, otherwise re-tag it
    into single-item slices of the same box (a slice per stacked row or per
    side-by-side column).
    """
    placed = [(p, by_id[p.item_id]) for p in fill.placements]
    if not placed:
        return [container]
    kind = container.kind
    allowed = ADMISSIBLE.get(kind)
    suits = allowed is None or classification is None or all(
        classification.of(item.id) in allowed for _, item in placed
    )
    if suits:
        return [container]

    box = container.box
    slices: List[Container] = []
    for p, item in placed:
        if kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
            sliced = Box(left=p.left, bottom=box.bottom, width=item.width, height=box.height)
        else:
            sliced = Box(left=box.left, bottom=p.bottom, width=box.width, height=item.height)
        slices.append(Container(box=sliced, kind=ContainerKind.SINGLE_LARGE))
    return slices


def _fill(container: Container, items: Sequence[Item]) -> FillResult:
    return fill_container(container, canonical_order(container, items))


def _batches(containers: Sequence[Tuple[int, Container]], size: int) -> List[List[Tuple[int, Container]]]:
    return [list(containers[i:i + size]) for i in range(0, len(containers), size)]


def realize(
    instance: Instance,
    template: Template,
    opt_estimate: int,
    epsilon: Fraction,
    budgets: Budgets,
    classification: Optional[Classification] = None,
    options: Optional[RealizeOptions] = None,
) -> Optional[Realization]:
    """Fill one template; None if the filled layout fails verification"""
    options = options or RealizeOptions()
    W = instance.strip_width
    by_id = {item.id: item for item in instance.items}
    layout = template.layout
    placements: List[Placement] = []
    final: List[Container] = []
    stats: Dict[str, Any] = {}

    pinned_ids = set(template.pinned.values())
    for index, item_id in sorted(template.pinned.items()):
        container = layout.containers[index]
        fill = fill_container(container, [by_id[item_id]])
        if fill.rejected:
            logger.debug(f"Template {template.name}: pinned item {item_id} does not fit its container")
            return None
        placements.extend(fill.placements)
        final.append(container)

    free = [(j, c) for j, c in enumerate(layout.containers) if j not in template.pinned]
    remaining = [item for item in instance.items if item.id not in pinned_ids]
    spill: List[Item] = []
    if template.exact and free and remaining:
        groups = exact_assignment(remaining, [c for _, c in free])
        if groups is not None:
            for (_, container), group in zip(free, groups):
                fill = _fill(container, group)
                placements.extend(fill.placements)
                spill.extend(by_id[i] for i, _ in fill.rejected)
                final.extend(_settle(container, fill, by_id, classification))
            free, remaining = [], []
        else:
            logger.info(f"Template {template.name}: no exact match found, assigning by GAP")
    batch = max(1, min(settings.gap_batch_bins, settings.max_gap_bins))
    for chunk in _batches(free, batch):
        containers = [c for _, c in chunk]
        if not remaining:
            final.extend(containers)
            continue
        assignment = assign_to_containers(
            remaining, containers, AssignMode.AUTO, epsilon, budgets.table_budget, scale=True
        )
        groups, remaining = group_assignment(remaining, assignment, len(containers))
        for container, group in zip(containers, groups):
            fill = _fill(container, group)
            placements.extend(fill.placements)
            spill.extend(by_id[i] for i, _ in fill.rejected)
            final.extend(_settle(container, fill, by_id, classification))

    leftovers = sorted(remaining + spill, key=lambda item: item.id)
    top = max([layout.height] + [c.box.top for c in final])
    boxes: List[Box] = []

    if options.reserved is not None and options.reserved.width > 0 and options.reserved.height > 0:
        reserved = options.reserved
        vertical = [item for item in leftovers if classification and classification.of(item.id) == ItemClass.VERTICAL]
        routed, overflow = route_to_reserved(vertical, reserved)
        routed_ids = {p.item_id for p in routed}
        leftovers = [item for item in leftovers if item.id not in routed_ids]
        placements.extend(routed)
        final.append(Container(box=reserved, kind=ContainerKind.VERTICAL_SIDE_BY_SIDE, reserved=True))
        boxes.append(reserved)
        stats["reserved_width_used"] = sum(by_id[i].width for i in routed_ids)
        stats["reserved_width_budget"] = reserved.width
        stats["reserved_overflow"] = len(overflow)
        top = max(top, reserved.top)

    def stack_block(block: BlockPack) -> None:
        nonlocal top
        if block.height == 0:
            return
        placements.extend(block.placements)
        final.append(block.container)
        boxes.append(block.container.box)
        top = block.container.box.top

    if options.hor_budget is not None and options.hor_budget > 0:
        wide = [item for item in leftovers
                if classification and classification.of(item.id) in (ItemClass.HORIZONTAL, ItemClass.LARGE)]
        if wide:
            box = Box(left=0, bottom=top, width=W, height=options.hor_budget)
            container = Container(box=box, kind=ContainerKind.HORIZONTAL_STACK)
            fill = _fill(container, wide)
            used = sum(by_id[p.item_id].height for p in fill.placements)
            if fill.placements:
                placements.extend(fill.placements)
                final.extend(_settle(container, fill, by_id, classification))
                boxes.append(box)
                top = box.top
            placed = {p.item_id for p in fill.placements}
            leftovers = [item for item in leftovers if item.id not in placed]
            stats["hor_height_used"] = used
        stats["hor_height_budget"] = options.hor_budget

    if classification is not None:
        medium = [item for item in leftovers if classification.of(item.id) == ItemClass.MEDIUM]
        small = [item for item in leftovers if classification.of(item.id) == ItemClass.SMALL]
    else:
        medium, small = [], []
    taken = {item.id for item in medium + small}
    rest = [item for item in leftovers if item.id not in taken]

    if medium:
        try:
            block = pack_medium(medium, opt_estimate, W, epsilon, origin=(0, top))
        except ParameterError as exc:
            logger.debug(f"Medium block precondition failed ({exc}); packing by NFDH anyway")
            block = pack_leftover_block(medium, W, origin=(0, top))
        stats["medium_height"] = block.height
        stack_block(block)
    if rest:
        stack_block(pack_leftover_block(rest, W, origin=(0, top)))
    if small:
        block = pack_small_leftovers(small, W, opt_estimate, epsilon, origin=(0, top))
        stats["small_height"] = block.height
        stats["small_budget"] = block.budget
        stack_block(block)

    filled = ContainerLayout(strip_width=W, height=top, containers=tuple(final))
    report = verify_layout(filled, instance, placements, classification)
    if not report.ok:
        logger.warning(f"Template {template.name} rejected: {report.violations[0]}")
        return None

    compacted = compact_from_tree(report.tree, instance)
    tree = check_separable(compacted)
    if isinstance(tree, NotSeparable):
        logger.warning(f"Template {template.name}: compaction broke separability ({tree})")
        return None
    stats["template"] = template.name
    return Realization(
        packing=compacted,
        tree=tree,
        layout=filled,
        leftover_boxes=boxes,
        spilled=len(leftovers),
        stats=stats,
    )


# ============================================================================
# Search over guesses and templates
# ============================================================================

Attempt = Tuple[Template, RealizeOptions]
Plan = Callable[[Instance, int, ConstantProfile, Classification, Budgets], List[Attempt]]


@dataclass
class _Best:
    packing: Packing
    guess: Optional[int] = None
    realization: Optional[Realization] = None


def search(
    instance: Instance,
    algorithm: str,
    plan: Plan,
    epsilon: Optional[Fraction] = None,
    budgets: Optional[Budgets] = None,
    supplied: Optional[Callable[[Instance, ContainerLayout, ConstantProfile, Classification], RealizeOptions]] = None,
) -> SolveResult:
    """
    Run a template plan over the OPT' grid; NFDH is the fallback.

    Supplied templates (budgets.templates) are tried on the original
    instance; the library plan runs on the height-normalised instance and
    its packings are mapped back along their cut trees. The grid stops at
    the first guess where some template absorbs every item without spill.
    """
    eps = Fraction(epsilon) if epsilon is not None else settings.epsilon
    budgets = budgets or Budgets()
    started = time.perf_counter()

    fallback, _ = nfdh_strip(instance)
    if instance.n == 0:
        return finalize(instance, fallback, SolveTrace(algorithm=algorithm))

    best: Optional[_Best] = None
    tried = 0
    guesses_tried = 0
    exhausted = False
    notes: List[str] = []

    def consider(packing: Packing, guess: int, realization: Realization) -> None:
        nonlocal best
        if best is None or packing.height < best.packing.height:
            best = _Best(packing=packing, guess=guess, realization=realization)

    for layout in budgets.templates:
        guess = max(layout.height, 1)
        found = profile_for(instance, guess, eps, budgets)
        profile, classification = found if found else (None, None)
        options = supplied(instance, layout, profile, classification) if supplied and found else RealizeOptions()
        tried += 1
        result = realize(instance, supplied_template(instance, layout), guess, eps, budgets, classification, options)
        if result is not None:
            consider(result.packing, guess, result)
        else:
            notes.append(f"supplied template of height {layout.height} failed verification")

    work, changed = normalize_heights(instance, eps)
    if changed:
        notes.append("heights normalised")
    work_fallback, _ = nfdh_strip(work)
    guesses = opt_grid(lower_bound(work), work_fallback.height, eps, budgets.opt_grid_steps)

    for guess in guesses:
        found = profile_for(work, guess, eps, budgets)
        if found is None:
            continue
        profile, classification = found
        guesses_tried += 1
        attempts = plan(work, guess, profile, classification, budgets)
        if len(attempts) > budgets.max_layouts:
            exhausted = True
            attempts = attempts[:budgets.max_layouts]
        complete = False
        for template, options in attempts:
            tried += 1
            result = realize(work, template, guess, eps, budgets, classification, options)
            if result is None:
                continue
            packing = compact_from_tree(result.tree, instance) if changed else result.packing
            consider(packing, guess, result)
            complete = complete or result.spilled == 0
        logger.debug(f"{algorithm}: OPT'={guess}, {len(attempts)} templates, best height "
                     f"{best.packing.height if best else None}")
        if complete:
            break

    use_fallback = best is None or fallback.height < best.packing.height
    if use_fallback:
        logger.info(f"{algorithm}: falling back to NFDH (height {fallback.height})")
        chosen = _Best(packing=fallback)
    else:
        chosen = best

    realization = chosen.realization
    stats = dict(realization.stats) if realization else {}
    stats["elapsed"] = round(time.perf_counter() - started, 6)
    trace = SolveTrace(
        algorithm=algorithm,
        opt_guess=chosen.guess,
        guesses_tried=guesses_tried,
        layouts_tried=tried,
        layout=realization.layout if realization else None,
        leftover_boxes=tuple(realization.leftover_boxes) if realization else (),
        budget_exhausted=exhausted,
        fallback=use_fallback,
        notes=tuple(notes),
        stats=stats,
    )
    return finalize(instance, chosen.packing, trace)
