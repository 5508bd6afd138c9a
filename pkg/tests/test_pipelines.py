import random
from fractions import Fraction

import pytest

from gspkit.core.classification import choose_constants
from gspkit.core.errors import ParameterError
from gspkit.core.generators import planted_instance
from gspkit.core.guillotine import NotSeparable, check_separable
from gspkit.core.heuristics import nfdh_strip
from gspkit.core.models import (
    Box,
    Budgets,
    Classification,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
    ItemClass,
)
from gspkit.core.oracle import optimal_height
from gspkit.core.pipeline import opt_grid, profile_for, realize
from gspkit.core.portfolio import ALGORITHMS, run_algorithm, solve_portfolio
from gspkit.core.pptas import solve_pptas
from gspkit.core.templates import Template, row_layouts, supplied_template
from gspkit.core.three_halves import options_for, reserve_extremes, reserved_box, round_down, solve_three_halves
from gspkit.core.verification import verify_packing

EPS = Fraction(1, 4)
SMALL = Budgets(opt_grid_steps=2, max_layouts=3, table_budget=20_000)
PIPELINES = [solve_pptas, solve_three_halves]


def _assert_sound(result):
    assert verify_packing(result.packing).ok
    assert not isinstance(check_separable(result.packing), NotSeparable)
    assert result.height == result.packing.height
    assert result.height >= result.lower_bound


# ============================================================================
# Building blocks
# ============================================================================

def test_opt_grid_is_geometric():
    assert opt_grid(10, 20, EPS, 12) == [10, 13, 17]
    assert opt_grid(10, 20, EPS, 2) == [10, 13]
    assert opt_grid(5, 3, EPS, 12) == [5]
    assert opt_grid(0, 3, EPS, 12) == []


def test_round_down_keeps_positive_values():
    assert round_down(10, Fraction(3)) == 9
    assert round_down(2, Fraction(3)) == 2
    assert round_down(7, Fraction(0)) == 7


def test_reserved_box_sits_on_the_guess():
    instance = Instance.from_dims(30, [(3, 4)])
    profile = choose_constants(EPS, instance, 10, container_budget=1)
    assert reserved_box(profile, 10, 30) == Box(left=0, bottom=10, width=10, height=5)


def test_realize_fills_nfdh_rows(nfdh_fixture):
    (template,) = row_layouts(nfdh_fixture, 7, SMALL)
    realization = realize(nfdh_fixture, template, 7, EPS, SMALL)
    assert realization is not None
    assert realization.spilled == 0
    assert realization.packing.height == 7
    assert verify_packing(realization.packing).ok



@pytest.mark.parametrize("tall", [0, 3])
def test_supplied_planted_layouts_are_rebuilt(tall):
    budgets = Budgets()
    for seed in range(30):
        instance, certificate = planted_instance(48, 40, 4, seed, EPS, tall=tall)
        _, classification = profile_for(instance, 40, EPS, budgets)
        template = supplied_template(instance, certificate.layout)
        realization = realize(instance, template, 40, EPS, budgets, classification)
        assert realization is not None
        assert realization.spilled == 0
        assert realization.packing.height <= 40
        assert verify_packing(realization.packing).ok


def test_supplied_template_pins_exact_singles():
    instance = Instance.from_dims(10, [(3, 4), (2, 9), (3, 4)])
    layout = ContainerLayout(strip_width=10, height=9, containers=(
        Container(box=Box(left=0, bottom=0, width=2, height=9), kind=ContainerKind.SINGLE_LARGE),
        Container(box=Box(left=2, bottom=0, width=3, height=4), kind=ContainerKind.SINGLE_LARGE),
        Container(box=Box(left=5, bottom=0, width=5, height=9), kind=ContainerKind.HORIZONTAL_STACK),
    ))
    template = supplied_template(instance, layout)
    assert template.exact
    assert template.pinned == {0: 1, 1: 0}


def _hand_classification(instance, classes, opt):
    profile = choose_constants(EPS, instance, opt, container_budget=1)
    return profile, Classification(opt_estimate=opt, strip_width=instance.strip_width, delta=profile.delta,
                                   mu=profile.mu, classes=tuple(classes))


def test_widest_and_tallest_items_are_reserved():
    instance = Instance.from_dims(20, [(12, 2), (8, 3), (2, 6), (3, 5)])
    _, classification = _hand_classification(
        instance, [ItemClass.HORIZONTAL, ItemClass.HORIZONTAL, ItemClass.VERTICAL, ItemClass.VERTICAL], 10)
    layout = ContainerLayout(strip_width=20, height=10, containers=(
        Container(box=Box(left=0, bottom=0, width=12, height=10), kind=ContainerKind.HORIZONTAL_STACK),
        Container(box=Box(left=12, bottom=0, width=8, height=10), kind=ContainerKind.VERTICAL_SIDE_BY_SIDE),
    ))
    guessed = reserve_extremes(Template(name="two", layout=layout), instance, classification)
    boxes = [c.box for c in guessed.layout.containers]
    assert guessed.pinned == {0: 0, 2: 2}
    assert boxes == [
        Box(left=0, bottom=0, width=12, height=2),
        Box(left=0, bottom=2, width=12, height=8),
        Box(left=12, bottom=0, width=2, height=6),
        Box(left=14, bottom=0, width=6, height=6),
    ]
    realization = realize(instance, guessed, 10, EPS, SMALL, classification)
    assert realization is not None
    assert realization.spilled == 0
    assert verify_packing(realization.packing).ok


def test_leftovers_are_routed_into_reserved_boxes():
    # no containers: every vertical item goes to B*, every horizontal one to B_hor
    instance = Instance.from_dims(60, [(3, 8), (4, 9), (30, 2), (40, 3)])
    profile, classification = _hand_classification(
        instance, [ItemClass.VERTICAL, ItemClass.VERTICAL, ItemClass.HORIZONTAL, ItemClass.HORIZONTAL], 20)
    options = options_for(profile, 20, 60)
    template = Template(name="empty", layout=ContainerLayout(strip_width=60, height=20))
    realization = realize(instance, template, 20, EPS, SMALL, classification, options)
    assert realization is not None
    assert realization.spilled == 0
    stats = realization.stats
    assert stats["reserved_width_used"] == 7
    assert stats["reserved_width_budget"] == 20 <= profile.eps1 * 60
    assert stats["reserved_overflow"] == 0
    assert stats["hor_height_used"] == 5
    assert stats["hor_height_budget"] == 20 == 4 * EPS * 20
    assert verify_packing(realization.packing).ok


# ============================================================================
# Pipelines
# ============================================================================

@pytest.mark.parametrize("solve", PIPELINES)
def test_single_item_is_packed_exactly(solve):
    result = solve(Instance.from_dims(10, [(4, 7)]), EPS, SMALL)
    assert result.height == 7
    _assert_sound(result)


@pytest.mark.parametrize("solve", PIPELINES)
def test_side_by_side_tall_items_reach_the_tallest(solve):
    result = solve(Instance.from_dims(10, [(2, 9), (3, 8), (4, 7)]), EPS, SMALL)
    assert result.height == 9


@pytest.mark.parametrize("solve", PIPELINES)
def test_empty_instance(solve):
    result = solve(Instance(strip_width=5), EPS, SMALL)
    assert result.height == 0


@pytest.mark.parametrize("solve", PIPELINES)
def test_never_worse_than_nfdh(solve):
    rng = random.Random(31)
    for _ in range(8):
        W = rng.randint(4, 20)
        instance = Instance.from_dims(W, [(rng.randint(1, W), rng.randint(1, 12)) for _ in range(rng.randint(1, 15))])
        result = solve(instance, EPS, SMALL)
        _assert_sound(result)
        assert result.height <= nfdh_strip(instance)[0].height


def test_tall_heights_are_normalised_and_mapped_back():
    instance = Instance.from_dims(10, [(3, 1000), (7, 400), (5, 300)])
    result = solve_pptas(instance, EPS, SMALL)
    _assert_sound(result)
    assert "heights normalised" in result.trace.notes
    assert result.height >= 1000


def test_pptas_within_bound_on_planted_layouts():
    for seed in range(30):
        instance, certificate = planted_instance(20, 20, 3, seed, EPS)
        budgets = SMALL.model_copy(update={"templates": (certificate.layout,)})
        result = solve_pptas(instance, EPS, budgets)
        _assert_sound(result)
        assert result.height <= (1 + 16 * EPS + 3 * EPS + 9 * EPS) * certificate.value


def test_three_halves_within_bound_on_planted_tall_layouts():
    budgets = Budgets(max_containers=2, opt_grid_steps=2, max_layouts=3, table_budget=20_000)
    for seed in range(30):
        instance, certificate = planted_instance(24, 20, 3, seed, EPS, tall=2)
        result = solve_three_halves(instance, EPS, budgets.model_copy(update={"templates": (certificate.layout,)}))
        _assert_sound(result)
        assert result.height <= (Fraction(3, 2) + EPS) * certificate.value
        stats = result.trace.stats
        if "reserved_width_used" in stats:
            assert stats["reserved_width_used"] <= stats["reserved_width_budget"]
        if "hor_height_used" in stats:
            assert stats["hor_height_used"] <= stats["hor_height_budget"]


# ============================================================================
# Portfolio
# ============================================================================

def test_portfolio_matches_the_oracle_on_tiny_instances(yes_partition, no_partition):
    for instance in (yes_partition, no_partition, Instance.from_dims(4, [(2, 1), (2, 2), (1, 3), (3, 1)])):
        result = solve_portfolio(instance, EPS, SMALL)
        assert result.height == optimal_height(instance)
        assert result.ratio <= 3
        assert set(result.trace.stats["portfolio"]) == {"oracle", "pptas", "three-halves", "nfdh"}


def test_portfolio_without_oracle_is_bounded_by_nfdh(nfdh_fixture):
    result = solve_portfolio(nfdh_fixture, EPS, SMALL, include_oracle=False)
    assert "oracle" not in result.trace.stats["portfolio"]
    assert result.height <= 7


def test_registry_dispatch():
    instance = Instance.from_dims(10, [(5, 4), (5, 4), (6, 3)])
    assert set(ALGORITHMS) == {"nfdh", "pptas", "three-halves", "portfolio", "oracle"}
    assert run_algorithm("nfdh", instance).height == 7
    with pytest.raises(ParameterError, match="unknown algorithm"):
        run_algorithm("best-fit", instance)
