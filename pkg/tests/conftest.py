"""
Shared fixtures: hand-built packings and small instances
"""

import random
from typing import Dict, List, Sequence, Tuple

import pytest

from gspkit.core.models import Instance, Packing, Placement, Rect


def packing_from(strip_width: int, boxes: Sequence[Tuple[int, int, int, int]]) -> Packing:
    """Packing from (left, bottom, right, top) rectangles; item i is box i"""
    instance = Instance.from_dims(strip_width, [(r - l, t - b) for l, b, r, t in boxes])
    placements = [Placement(item_id=i, left=l, bottom=b) for i, (l, b, _, _) in enumerate(boxes)]
    return Packing.build(instance, placements)


def random_packing(rng: random.Random, strip_width: int, height: int, n: int, max_side: int = 3) -> Packing:
    """Up to n random non-overlapping rectangles on an integer grid"""
    boxes: List[Tuple[int, int, int, int]] = []
    for _ in range(20 * n):
        if len(boxes) == n:
            break
        w = rng.randint(1, min(max_side, strip_width))
        h = rng.randint(1, min(max_side, height))
        l = rng.randint(0, strip_width - w)
        b = rng.randint(0, height - h)
        r = Rect(l, b, l + w, b + h)
        if not any(r.overlaps(Rect(*other)) for other in boxes):
            boxes.append((l, b, l + w, b + h))
    return packing_from(strip_width, boxes)


def brute_separable(rects: Dict[int, Rect], region: Rect) -> bool:
    """Try every integer cut line; exponential, for tiny inputs only"""
    if len(rects) <= 1:
        return True
    for x in range(region.left + 1, region.right):
        left = {i: r for i, r in rects.items() if r.right <= x}
        right = {i: r for i, r in rects.items() if r.left >= x}
        if len(left) + len(right) == len(rects) and left and right:
            if brute_separable(left, Rect(region.left, region.bottom, x, region.top)) and \
                    brute_separable(right, Rect(x, region.bottom, region.right, region.top)):
                return True
    for y in range(region.bottom + 1, region.top):
        low = {i: r for i, r in rects.items() if r.top <= y}
        high = {i: r for i, r in rects.items() if r.bottom >= y}
        if len(low) + len(high) == len(rects) and low and high:
            if brute_separable(low, Rect(region.left, region.bottom, region.right, y)) and \
                    brute_separable(high, Rect(region.left, y, region.right, region.top)):
                return True
    return False


@pytest.fixture
def pinwheel() -> Packing:
    """Four items around the centre of [0,3]^2; every cut line crosses one"""
    return packing_from(3, [(0, 0, 2, 1), (2, 0, 3, 2), (1, 2, 3, 3), (0, 1, 1, 3)])


@pytest.fixture
def blocking() -> Packing:
    """Four large items locked around a small centre item"""
    return packing_from(5, [(0, 0, 3, 2), (3, 0, 5, 3), (2, 3, 5, 5), (0, 2, 2, 5), (2, 2, 3, 3)])


@pytest.fixture
def staircase() -> Packing:
    """Alternating left columns and bottom rows; needs one stage per item but the last"""
    return packing_from(4, [
        (0, 0, 1, 4),
        (1, 0, 4, 1),
        (1, 1, 2, 4),
        (2, 1, 4, 2),
        (2, 2, 3, 4),
        (3, 2, 4, 3),
    ])


@pytest.fixture
def nfdh_fixture() -> Instance:
    """W=10 with (5,4),(5,4),(6,3): shelves of height 4 and 3"""
    return Instance.from_dims(10, [(5, 4), (5, 4), (6, 3)])


@pytest.fixture
def yes_partition() -> Instance:
    return Instance.from_dims(3, [(1, 1), (2, 1), (3, 1)])


@pytest.fixture
def no_partition() -> Instance:
    return Instance.from_dims(3, [(2, 1), (2, 1), (2, 1)])
