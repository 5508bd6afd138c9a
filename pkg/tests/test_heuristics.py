import random
from fractions import Fraction

import pytest

from gspkit.core.classification import lower_bound
from gspkit.core.errors import InfeasibleError, ParameterError
from gspkit.core.guillotine import NotSeparable, check_rectangles, check_separable, stage_count, validate_tree
from gspkit.core.heuristics import (
    REJECT_NOT_SMALL,
    bottom_left_flush,
    nfdh_into_box,
    nfdh_strip,
    shelf_pack,
    steinberg_feasible,
)
from gspkit.core.models import Instance, Item, Rect
from gspkit.core.verification import verify_packing


def _items(dims):
    return [Item(id=i, width=w, height=h) for i, (w, h) in enumerate(dims)]


# ============================================================================
# NFDH
# ============================================================================

def test_nfdh_fixture(nfdh_fixture):
    packing, tree = nfdh_strip(nfdh_fixture)
    assert packing.height == 7
    bottoms = {p.item_id: (p.left, p.bottom) for p in packing.placements}
    assert bottoms == {0: (0, 0), 1: (5, 0), 2: (0, 4)}
    assert validate_tree(tree, packing.rects(), Rect(0, 0, 10, 7)) == []


def test_nfdh_single_item():
    packing, _ = nfdh_strip(Instance.from_dims(10, [(3, 8)]))
    assert packing.height == 8


def test_nfdh_full_width_items_stack():
    packing, _ = nfdh_strip(Instance.from_dims(6, [(6, 1)] * 5))
    assert packing.height == 5


def test_nfdh_empty_instance():
    packing, tree = nfdh_strip(Instance(strip_width=5))
    assert packing.height == 0
    assert packing.placements == ()


def test_nfdh_bound_and_two_stages_on_fuzzed_instances():
    rng = random.Random(22)
    for _ in range(1000):
        W = rng.randint(1, 60)
        n = rng.randint(1, 200)
        instance = Instance.from_dims(W, [(rng.randint(1, W), rng.randint(1, 40)) for _ in range(n)])
        packing, tree = nfdh_strip(instance)
        assert verify_packing(packing).ok
        # H <= 2A/W + h_max, compared in integers
        assert packing.height * W <= 2 * instance.area + instance.max_height * W
        assert packing.height <= 3 * lower_bound(instance)
        assert not isinstance(check_separable(packing), NotSeparable)
        assert validate_tree(tree, packing.rects(), Rect(0, 0, W, packing.height)) == []
        assert stage_count(tree) <= 2


def test_shelf_pack_with_cap_rejects_rows_that_do_not_fit():
    packed = shelf_pack(_items([(4, 3), (4, 2), (4, 1), (1, 1)]), 5, max_height=5)
    assert packed.packed_ids == [0, 1, 3]
    assert packed.rejected == [(2, "box full")]
    assert packed.region == Rect(0, 0, 5, 5)


def test_shelf_pack_rejects_items_wider_than_region():
    packed = shelf_pack(_items([(6, 1), (2, 1)]), 5)
    assert packed.rejected == [(0, "wider than the box")]
    assert packed.packed_ids == [1]


# ============================================================================
# NFDH into a box
# ============================================================================

def test_into_box_packs_everything_below_the_area_threshold():
    eps = Fraction(1, 10)
    items = _items([(10, 10)] * 50)  # area 5000 <= 0.8 * 10000
    packed = nfdh_into_box(items, 100, 100, eps)
    assert len(packed.placements) == 50
    assert packed.rejected == []


def test_into_box_area_guarantee_when_overfull():
    eps = Fraction(1, 10)
    items = _items([(10, 10)] * 200)
    packed = nfdh_into_box(items, 100, 100, eps, origin=(7, 3))
    area = sum(items[p.item_id].area for p in packed.placements)
    assert area >= (1 - 2 * eps) * 100 * 100
    rects = [(p.item_id, p.rect(items[p.item_id])) for p in packed.placements]
    assert all(Rect(7, 3, 107, 103).contains(r) for _, r in rects)
    assert not isinstance(check_rectangles(rects, Rect(7, 3, 107, 103)), NotSeparable)


def test_into_box_rejects_items_that_are_not_small():
    packed = nfdh_into_box(_items([(2, 2), (30, 2), (2, 30)]), 100, 100, Fraction(1, 4))
    assert packed.packed_ids == [0]
    assert packed.rejected == [(1, REJECT_NOT_SMALL), (2, REJECT_NOT_SMALL)]


def test_into_box_empty():
    packed = nfdh_into_box([], 10, 10, Fraction(1, 2))
    assert packed.placements == [] and packed.rejected == []


# ============================================================================
# Flushing and Steinberg
# ============================================================================

def test_flush_orders_by_height():
    placements = bottom_left_flush(_items([(1, 3), (1, 5), (1, 4)]), 10)
    assert [(p.item_id, p.left, p.bottom) for p in placements] == [(1, 0, 0), (2, 1, 0), (0, 2, 0)]


def test_flush_single_item_at_origin():
    assert [(p.left, p.bottom) for p in bottom_left_flush(_items([(4, 9)]), 10)] == [(0, 0)]


def test_flush_ties_prefer_wider_items():
    placements = bottom_left_flush(_items([(2, 4), (3, 4)]), 10)
    assert [p.item_id for p in placements] == [1, 0]
    assert [p.left for p in placements] == [0, 3]


def test_flush_too_wide():
    with pytest.raises(InfeasibleError):
        bottom_left_flush(_items([(6, 4), (5, 4)]), 10)


def test_steinberg():
    assert steinberg_feasible(_items([(6, 6), (2, 2)]), 10, 10)
    assert not steinberg_feasible(_items([(10, 10)]), 10, 10)
    assert steinberg_feasible([], 10, 10)
    with pytest.raises(ParameterError):
        steinberg_feasible(_items([(11, 1)]), 10, 10)
