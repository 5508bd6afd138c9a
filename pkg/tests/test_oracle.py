import random
from typing import List, Optional, Sequence, Tuple

import pytest

from gspkit.core.classification import lower_bound
from gspkit.core.errors import ResourceLimitError
from gspkit.core.generators import has_partition, random_partition
from gspkit.core.guillotine import NotSeparable, check_separable
from gspkit.core.heuristics import nfdh_strip
from gspkit.core.models import Instance, Rect
from gspkit.core.oracle import exact_oracle, frontiers, optimal_height
from gspkit.core.verification import verify_packing

from conftest import brute_separable


def _grid_optimum(instance: Instance) -> int:
    """
    Smallest H with a guillotine packing, by placing items cell by cell:
    the lowest-leftmost free cell either takes an item's corner or stays empty.
    """
    W = instance.strip_width
    items = instance.items
    area = instance.area

    def feasible(H: int) -> bool:
        grid = [[False] * W for _ in range(H)]
        rects: List[Tuple[int, Rect]] = []
        used = [False] * len(items)
        slack = W * H - area

        def free(x: int, y: int, w: int, h: int) -> bool:
            if x + w > W or y + h > H:
                return False
            return all(not grid[yy][xx] for yy in range(y, y + h) for xx in range(x, x + w))

        def mark(x: int, y: int, w: int, h: int, value: bool) -> None:
            for yy in range(y, y + h):
                for xx in range(x, x + w):
                    grid[yy][xx] = value

        def first_free() -> Optional[Tuple[int, int]]:
            for y in range(H):
                for x in range(W):
                    if not grid[y][x]:
                        return x, y
            return None

        def walk(waste: int) -> bool:
            if len(rects) == len(items):
                return brute_separable(dict(rects), Rect(0, 0, W, H))
            cell = first_free()
            if cell is None:
                return False
            x, y = cell
            tried = set()
            for i, item in enumerate(items):
                if used[i] or (item.width, item.height) in tried:
                    continue
                tried.add((item.width, item.height))
                if free(x, y, item.width, item.height):
                    used[i] = True
                    mark(x, y, item.width, item.height, True)
                    rects.append((i, Rect(x, y, x + item.width, y + item.height)))
                    if walk(waste):
                        return True
                    rects.pop()
                    mark(x, y, item.width, item.height, False)
                    used[i] = False
            if waste < slack:
                grid[y][x] = True
                found = walk(waste + 1)
                grid[y][x] = False
                if found:
                    return True
            return False

        return walk(0)

    H = lower_bound(instance)
    while not feasible(H):
        H += 1
    return H


def test_yes_partition_packs_in_two(yes_partition):
    assert optimal_height(yes_partition) == 2


def test_no_partition_needs_three(no_partition):
    assert optimal_height(no_partition) == 3


def test_single_item_is_its_own_height():
    assert optimal_height(Instance.from_dims(10, [(4, 7)])) == 7


def test_empty_instance():
    assert exact_oracle(Instance(strip_width=3)).height == 0


def test_item_limit_is_enforced():
    instance = Instance.from_dims(5, [(1, 1)] * 4)
    with pytest.raises(ResourceLimitError) as info:
        exact_oracle(instance, item_limit=3)
    assert info.value.required == 4


def test_frontiers_are_pareto():
    instance = Instance.from_dims(4, [(2, 1), (2, 2), (1, 3)])
    table = frontiers(instance)
    full = table[(1 << instance.n) - 1]
    widths = [w for w, _, _ in full]
    heights = [h for _, h, _ in full]
    assert widths == sorted(widths)
    assert heights == sorted(heights, reverse=True)
    assert len(set(heights)) == len(heights)


def test_oracle_decides_partition():
    for seed in range(50):
        rng = random.Random(seed)
        instance, certificate = random_partition(rng.randint(2, 8), rng.randint(1, 6), seed)
        values: Sequence[int] = [item.width for item in instance.items]
        height = optimal_height(instance)
        assert certificate.answer == has_partition(values)
        if certificate.answer:
            assert height == 2
        else:
            assert height >= 3


def test_oracle_matches_grid_enumeration():
    rng = random.Random(41)
    for _ in range(100):
        W = rng.randint(1, 4)
        n = rng.randint(1, 5)
        instance = Instance.from_dims(W, [(rng.randint(1, W), rng.randint(1, 3)) for _ in range(n)])
        result = exact_oracle(instance)
        assert result.height == _grid_optimum(instance)


def test_oracle_packings_are_valid_and_beat_nfdh():
    rng = random.Random(8)
    for _ in range(30):
        W = rng.randint(2, 8)
        instance = Instance.from_dims(W, [(rng.randint(1, W), rng.randint(1, 6)) for _ in range(rng.randint(1, 7))])
        result = exact_oracle(instance)
        assert verify_packing(result.packing).ok
        assert not isinstance(check_separable(result.packing), NotSeparable)
        assert lower_bound(instance) <= result.height <= nfdh_strip(instance)[0].height


def test_oracle_is_monotone():
    rng = random.Random(12)
    for _ in range(25):
        W = rng.randint(2, 6)
        dims = [(rng.randint(1, W), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))]
        base = optimal_height(Instance.from_dims(W, dims))
        extra = (rng.randint(1, W), rng.randint(1, 4))
        assert optimal_height(Instance.from_dims(W, dims + [extra])) >= base
        assert optimal_height(Instance.from_dims(W + 1, dims)) <= base
