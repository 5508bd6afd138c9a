"""
Budgeted (3/2 + eps) pipeline

Tall items are bottom-left-flushed; the remaining strip is covered by
rounded containers, each tried with and without a guessed widest (stacks)
or tallest (rows) item reserved in its corner. An empty box B* of width
eps1*W and height OPT'/2 absorbs vertical items the assignment could not
place, a B_hor stack of height 4*eps*OPT' takes unplaced horizontal and
large items, and medium and small leftovers go to their own top boxes.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional

from gspkit.core.models import (
    Box,
    Budgets,
    Classification,
    ConstantProfile,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
    ItemClass,
    SolveResult,
)
from gspkit.core.pipeline import Attempt, RealizeOptions, search
from gspkit.core.templates import Template, flushed_tall_layouts

logger = logging.getLogger(__name__)

HOR_BOX_FACTOR = 4


def round_down(value: int, unit: Fraction) -> int:
    """floor(value / unit) * unit, floored to an integer; unchanged if that is 0"""
    if unit <= 0:
        return value
    rounded = math.floor(math.floor(Fraction(value) / unit) * unit)
    return rounded if rounded > 0 else value


def round_container(container: Container, profile: ConstantProfile, opt_estimate: int, strip_width: int) -> Container:
    """h^(B) for stacks (unit eps2*OPT'), w^(B) for side-by-side rows (unit eps3*W)"""
    box = container.box
    if container.kind == ContainerKind.HORIZONTAL_STACK:
        box = box.model_copy(update={"height": round_down(box.height, profile.eps2 * opt_estimate)})
    elif container.kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
        box = box.model_copy(update={"width": round_down(box.width, profile.eps3 * strip_width)})
    elif container.kind == ContainerKind.SMALL_NFDH:
        box = box.model_copy(update={
            "width": round_down(box.width, profile.eps4 * strip_width),
            "height": round_down(box.height, profile.eps4 * opt_estimate),
        })
    return container.model_copy(update={"box": box})


def _rounded(template: Template, profile: ConstantProfile, opt_estimate: int) -> Template:
    W = template.layout.strip_width
    containers = tuple(
        c if j in template.pinned else round_container(c, profile, opt_estimate, W)
        for j, c in enumerate(template.layout.containers)
    )
    layout = ContainerLayout(strip_width=W, height=template.layout.height, containers=containers)
    return Template(name=f"{template.name}-rounded", layout=layout, pinned=dict(template.pinned))


def reserve_extremes(template: Template, instance: Instance, classification: Classification) -> Template:
    """
    Guess the widest horizontal item of every stack and the tallest vertical
    item of every side-by-side row, and reserve its slot.

    The guessed item gets a pinned single container in the bottom-left
    corner of the box. A stack shrinks to the guessed width above it, a row
    shrinks to the guessed height to its right. Each item is guessed at most
    once; boxes with no candidate stay as they are.
    """
    by_id = {item.id: item for item in instance.items}
    taken = set(template.pinned.values())
    pools = {
        ContainerKind.HORIZONTAL_STACK: sorted(
            (by_id[i] for i in classification.members(ItemClass.HORIZONTAL)),
            key=lambda item: (-item.width, -item.height, item.id),
        ),
        ContainerKind.VERTICAL_SIDE_BY_SIDE: sorted(
            (by_id[i] for i in classification.members(ItemClass.VERTICAL)),
            key=lambda item: (-item.height, -item.width, item.id),
        ),
    }
    containers: List[Container] = []
    pinned: Dict[int, int] = {}
    for j, container in enumerate(template.layout.containers):
        box = container.box
        guess = None
        if j not in template.pinned:
            guess = next(
                (item for item in pools.get(container.kind, [])
                 if item.id not in taken and item.width <= box.width and item.height <= box.height),
                None,
            )
        if guess is None:
            if j in template.pinned:
                pinned[len(containers)] = template.pinned[j]
            containers.append(container)
            continue
        taken.add(guess.id)
        pinned[len(containers)] = guess.id
        containers.append(Container(
            box=Box(left=box.left, bottom=box.bottom, width=guess.width, height=guess.height),
            kind=ContainerKind.SINGLE_LARGE,
        ))
        if container.kind == ContainerKind.HORIZONTAL_STACK:
            rest = Box(left=box.left, bottom=box.bottom + guess.height, width=guess.width,
                       height=box.height - guess.height)
        else:
            rest = Box(left=box.left + guess.width, bottom=box.bottom, width=box.width - guess.width,
                       height=guess.height)
        if rest.width > 0 and rest.height > 0:
            containers.append(container.model_copy(update={"box": rest}))
    layout = template.layout.model_copy(update={"containers": tuple(containers)})
    return Template(name=f"{template.name}-guessed", layout=layout, pinned=pinned)


def reserved_box(profile: ConstantProfile, opt_estimate: int, strip_width: int) -> Optional[Box]:
    """B*: eps1*W wide, OPT'/2 high, on top of the OPT' region"""
    width = math.floor(profile.eps1 * strip_width)
    height = opt_estimate // 2
    if width <= 0 or height <= 0:
        return None
    return Box(left=0, bottom=opt_estimate, width=width, height=height)


def options_for(profile: ConstantProfile, opt_estimate: int, strip_width: int) -> RealizeOptions:
    return RealizeOptions(
        reserved=reserved_box(profile, opt_estimate, strip_width),
        hor_budget=math.floor(HOR_BOX_FACTOR * profile.epsilon * opt_estimate),
    )


def _plan(
    instance: Instance,
    opt_estimate: int,
    profile: ConstantProfile,
    classification: Classification,
    budgets: Budgets,
) -> List[Attempt]:
    options = options_for(profile, opt_estimate, instance.strip_width)
    attempts: List[Attempt] = []
    for template in flushed_tall_layouts(instance, classification, opt_estimate, budgets):
        rounded = _rounded(template, profile, opt_estimate)
        guessed = reserve_extremes(rounded, instance, classification)
        if guessed.pinned != rounded.pinned:
            attempts.append((guessed, options))
        attempts.append((rounded, options))
    return attempts


def _supplied(
    instance: Instance,
    layout: ContainerLayout,
    profile: ConstantProfile,
    classification: Classification,
) -> RealizeOptions:
    return options_for(profile, max(layout.height, 1), instance.strip_width)


def solve_three_halves(
    instance: Instance,
    epsilon: Optional[Fraction] = None,
    budgets: Optional[Budgets] = None,
) -> SolveResult:
    """
    Flushed-tall pipeline; the trace records how much of B* and B_hor the
    leftover routing used against their budgets.
    """
    result = search(instance, "three-halves", _plan, epsilon, budgets, supplied=_supplied)
    stats = result.trace.stats
    if "reserved_width_used" in stats:
        logger.debug(f"B* width {stats['reserved_width_used']}/{stats['reserved_width_budget']}")
    logger.info(f"three-halves: height {result.height}, lower bound {result.lower_bound}")
    return result
