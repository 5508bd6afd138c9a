"""
Instance generators

All generators are pure functions of their parameters and seed (one
random.Random per call). Partition and bin packing instances come from the
classic hardness reductions and carry their optimum; planted instances are
cut out of a random nice container layout, which certifies OPT <= H.
"""

import logging
import math
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from gspkit.core.errors import ParameterError
from gspkit.core.models import (
    Box,
    Certificate,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
)

logger = logging.getLogger(__name__)

SKEWS = ("uniform", "tall", "wide", "narrow", "small", "mixed")


# ============================================================================
# Random
# ============================================================================

def _draw(rng: random.Random, skew: str, W: int, H: int) -> Tuple[int, int]:
    if skew == "tall":
        return rng.randint(1, max(1, W // 4)), rng.randint(H // 2 + 1, H)
    if skew == "wide":
        return rng.randint(W // 2 + 1, W), rng.randint(1, max(1, H // 10))
    if skew == "narrow":
        return rng.randint(1, max(1, W // 10)), rng.randint(max(1, H // 4), H)
    if skew == "small":
        return rng.randint(1, max(1, W // 10)), rng.randint(1, max(1, H // 10))
    return rng.randint(1, W), rng.randint(1, H)


def random_instance(n: int, strip_width: int, max_height: int, seed: int, skew: str = "uniform") -> Instance:
    """
    Widths uniform in [1, W], heights uniform in [1, H_max]; a skew biases
    draws toward tall, wide, narrow or small items ('mixed' picks one per item).
    """
    if skew not in SKEWS:
        raise ParameterError(f"unknown skew {skew!r}; choose from {', '.join(SKEWS)}")
    if n < 0 or strip_width < 1 or max_height < 1:
        raise ParameterError("need n >= 0, strip width >= 1 and max height >= 1")
    rng = random.Random(seed)
    dims = []
    for _ in range(n):
        kind = rng.choice(SKEWS[:-1]) if skew == "mixed" else skew
        dims.append(_draw(rng, kind, strip_width, max_height))
    return Instance.from_dims(strip_width, dims)


# ============================================================================
# Partition reduction
# ============================================================================

def subset_sums(values: Sequence[int]) -> int:
    """Bitset of reachable subset sums (bit s set iff some subset sums to s)"""
    reachable = 1
    for v in values:
        reachable |= reachable << v
    return reachable


def has_partition(values: Sequence[int]) -> bool:
    total = sum(values)
    return total % 2 == 0 and bool(subset_sums(values) >> (total // 2) & 1)


def partition_instance(values: Sequence[int]) -> Tuple[Instance, Certificate]:
    """
    Strip of width T/2 with unit-height items of width i_k. Height 2 is
    reachable iff the values split into two halves of sum T/2; otherwise every
    packing needs height 3 or more.
    """
    if not values or any(v < 1 for v in values):
        raise ParameterError("partition values must be positive integers")
    total = sum(values)
    if total % 2:
        raise ParameterError(f"partition needs an even total, got T={total}")
    half = total // 2
    if max(values) > half:
        raise ParameterError(f"value {max(values)} exceeds T/2 = {half}")
    instance = Instance.from_dims(half, [(v, 1) for v in values])
    if has_partition(values):
        certificate = Certificate(kind="partition", relation="=", value=2, answer=True)
    else:
        certificate = Certificate(kind="partition", relation=">=", value=3, answer=False)
    return instance, certificate


def random_partition(n: int, max_value: int, seed: int) -> Tuple[Instance, Certificate]:
    """Random values with an even total and no value above T/2"""
    if n < 2 or max_value < 1:
        raise ParameterError("need at least two values and max value >= 1")
    rng = random.Random(seed)
    while True:
        values = [rng.randint(1, max_value) for _ in range(n)]
        if sum(values) % 2:
            values[-1] += 1
        if max(values) <= sum(values) // 2:
            return partition_instance(values)


# ============================================================================
# Bin packing reduction
# ============================================================================

EXACT_BINS_LIMIT = 12


def _min_bins(sizes: Sequence[int], capacity: int) -> int:
    ordered = sorted(sizes, reverse=True)
    best = len(ordered)

    def place(index: int, loads: List[int]) -> None:
        nonlocal best
        if len(loads) >= best:
            return
        if index == len(ordered):
            best = len(loads)
            return
        size = ordered[index]
        tried = set()
        for j, load in enumerate(loads):
            if load + size <= capacity and load not in tried:
                tried.add(load)
                loads[j] += size
                place(index + 1, loads)
                loads[j] -= size
        loads.append(size)
        place(index + 1, loads)
        loads.pop()

    place(0, [])
    return best


def binpacking_instance(sizes: Sequence[int], capacity: int) -> Tuple[Instance, Certificate]:
    """Strip width = bin capacity, unit heights: optimal height = optimal bin count"""
    if capacity < 1 or not sizes or any(s < 1 or s > capacity for s in sizes):
        raise ParameterError(f"sizes must lie in [1, {capacity}]")
    instance = Instance.from_dims(capacity, [(s, 1) for s in sizes])
    if len(sizes) <= EXACT_BINS_LIMIT:
        certificate = Certificate(kind="binpacking", relation="=", value=_min_bins(sizes, capacity))
    else:
        certificate = Certificate(kind="binpacking", relation=">=", value=-(-sum(sizes) // capacity))
    return instance, certificate


def random_binpacking(n: int, capacity: int, seed: int) -> Tuple[Instance, Certificate]:
    rng = random.Random(seed)
    return binpacking_instance([rng.randint(1, capacity) for _ in range(n)], capacity)


# ============================================================================
# Planted layouts
# ============================================================================

def _split_length(rng: random.Random, length: int, parts: int) -> List[int]:
    cuts = sorted(rng.sample(range(1, length), parts - 1)) if parts > 1 else []
    return [b - a for a, b in zip([0, *cuts], [*cuts, length])]


def _partition_region(rng: random.Random, region: Box, count: int) -> List[Box]:
    boxes = [region]
    while len(boxes) < count:
        splittable = [b for b in boxes if b.width >= 2 or b.height >= 2]
        if not splittable:
            break
        box = max(splittable, key=lambda b: (b.area, -boxes.index(b)))
        boxes.remove(box)
        vertical = box.width >= 2 and (box.height < 2 or rng.random() < 0.5)
        if vertical:
            x = rng.randint(1, box.width - 1)
            boxes += [box.model_copy(update={"width": x}),
                      box.model_copy(update={"left": box.left + x, "width": box.width - x})]
        else:
            y = rng.randint(1, box.height - 1)
            boxes += [box.model_copy(update={"height": y}),
                      box.model_copy(update={"bottom": box.bottom + y, "height": box.height - y})]
    return boxes


def _fill_box(rng: random.Random, box: Box, epsilon: Fraction, kinds: Sequence[ContainerKind]) -> Tuple[Container, List[Tuple[int, int]]]:
    kind = rng.choice(list(kinds))
    per_side = math.ceil(1 / epsilon)
    if kind == ContainerKind.SMALL_NFDH and (box.width < per_side or box.height < per_side):
        kind = ContainerKind.SINGLE_LARGE

    if kind == ContainerKind.HORIZONTAL_STACK:
        heights = _split_length(rng, box.height, rng.randint(1, min(4, box.height)))
        dims = [(rng.randint(max(1, box.width // 2), box.width), h) for h in heights]
    elif kind == ContainerKind.VERTICAL_SIDE_BY_SIDE:
        widths = _split_length(rng, box.width, rng.randint(1, min(4, box.width)))
        dims = [(w, rng.randint(max(1, box.height // 2), box.height)) for w in widths]
    elif kind == ContainerKind.SMALL_NFDH:
        dims = [(box.width // per_side, box.height // per_side)] * (per_side * per_side)
    else:
        dims = [(box.width, box.height)]
    container = Container(box=box, kind=kind, epsilon=epsilon if kind == ContainerKind.SMALL_NFDH else None)
    return container, dims


def planted_instance(
    strip_width: int,
    height: int,
    containers: int,
    seed: int,
    epsilon: Fraction = Fraction(1, 4),
    tall: int = 0,
) -> Tuple[Instance, Certificate]:
    """
    Cut [0, W] x [0, H] into `containers` guillotine boxes, fill each with a
    random nice packing, and return the items plus the layout as witness.

    With tall > 0, that many tall items (height > H/2) are bottom-left
    flushed first and the boxes cover the strip to their right and above them.
    """
    if strip_width < 2 or height < 2 or containers < 1:
        raise ParameterError("planted layouts need W >= 2, H >= 2 and at least one container")
    epsilon = Fraction(epsilon)
    rng = random.Random(seed)
    layout: List[Container] = []
    dims: List[Tuple[int, int]] = []
    kinds = [ContainerKind.SINGLE_LARGE, ContainerKind.HORIZONTAL_STACK,
             ContainerKind.VERTICAL_SIDE_BY_SIDE, ContainerKind.SMALL_NFDH]

    block = 0
    regions: List[Box] = []
    if tall > 0:
        slot = max(1, strip_width // (2 * tall))
        widths = [rng.randint(1, slot) for _ in range(tall)]
        heights = sorted((rng.randint(height // 2 + 1, height) for _ in range(tall)), reverse=True)
        for w, h in zip(widths, heights):
            if block + w > strip_width - 1:
                break
            layout.append(Container(box=Box(left=block, bottom=0, width=w, height=h), kind=ContainerKind.SINGLE_LARGE))
            dims.append((w, h))
            block += w
        roof = max((c.box.top for c in layout), default=0)
        if block and roof < height:
            regions.append(Box(left=0, bottom=roof, width=block, height=height - roof))
    regions = _partition_region(rng, Box(left=block, bottom=0, width=strip_width - block, height=height), containers) + regions

    for region in regions:
        container, box_dims = _fill_box(rng, region, epsilon, kinds)
        layout.append(container)
        dims.extend(box_dims)

    order = list(range(len(dims)))
    rng.shuffle(order)
    instance = Instance.from_dims(strip_width, [dims[i] for i in order])
    witness = ContainerLayout(strip_width=strip_width, height=height, containers=tuple(layout))
    logger.debug(f"Planted layout: {len(layout)} containers, {instance.n} items, H={height}")
    return instance, Certificate(kind="planted", relation="<=", value=height, layout=witness)
