import random
from typing import List, Optional

import pytest

from gspkit.core.errors import ParameterError, ResourceLimitError
from gspkit.core.gap import required_cells, solve_exact, solve_scaled
from gspkit.core.models import Assignment, GapInstance, GapItem


def _uniform(capacities, sizes, profits) -> GapInstance:
    """Items with the same size and profit in every bin"""
    k = len(capacities)
    return GapInstance(
        capacities=tuple(capacities),
        items=tuple(GapItem(sizes=(s,) * k, profits=(p,) * k) for s, p in zip(sizes, profits)),
    )


def _check_feasible(instance: GapInstance, assignment: Assignment) -> None:
    assert len(assignment.bins) == len(instance.items)
    for load, capacity in zip(assignment.loads(instance), instance.capacities):
        assert load <= capacity
    profit = 0
    for item, j in zip(instance.items, assignment.bins):
        if j is not None:
            assert item.sizes[j] is not None
            profit += item.profits[j]
    assert profit == assignment.profit


def _brute_force(instance: GapInstance) -> int:
    best = 0
    loads = [0] * instance.k

    def walk(i: int, profit: int) -> None:
        nonlocal best
        if i == len(instance.items):
            best = max(best, profit)
            return
        walk(i + 1, profit)
        item = instance.items[i]
        for j in range(instance.k):
            size = item.sizes[j]
            if size is not None and loads[j] + size <= instance.capacities[j]:
                loads[j] += size
                walk(i + 1, profit + item.profits[j])
                loads[j] -= size

    walk(0, 0)
    return best


def test_no_items():
    result = solve_exact(GapInstance(capacities=(4, 4)))
    assert result == Assignment(bins=(), profit=0)


def test_two_bins_three_items():
    instance = _uniform((3, 3), (2, 2, 2), (1, 1, 1))
    result = solve_exact(instance)
    assert result.profit == 2
    assert sorted(j for j in result.bins if j is not None) == [0, 1]
    _check_feasible(instance, result)


def test_single_bin_prefers_the_more_profitable_item():
    instance = _uniform((5,), (3, 3), (2, 3))
    result = solve_exact(instance)
    assert result.profit == 3
    assert result.bins == (None, 0)


def test_infeasible_pairs_are_respected():
    instance = GapInstance(
        capacities=(5, 5),
        items=(GapItem(sizes=(None, 4), profits=(0, 4)), GapItem(sizes=(3, None), profits=(3, 0))),
    )
    result = solve_exact(instance)
    assert result.bins == (1, 0)
    assert result.profit == 7


def test_table_budget_is_enforced():
    instance = _uniform((100, 100), (1,), (1,))
    with pytest.raises(ResourceLimitError) as info:
        solve_exact(instance, table_budget=1000)
    assert info.value.required == required_cells((100, 100)) == 10201
    assert info.value.limit == 1000


def test_too_many_bins_is_a_parameter_error():
    with pytest.raises(ParameterError):
        solve_exact(_uniform((1,) * 20, (1,), (1,)))


def test_malformed_instances_are_rejected():
    with pytest.raises(ValueError):
        GapInstance(capacities=(3,), items=(GapItem(sizes=(1, 1), profits=(1, 1)),))
    with pytest.raises(ValueError):
        GapInstance(capacities=())


def test_exact_profit_matches_enumeration():
    rng = random.Random(18)
    for _ in range(200):
        k = rng.randint(1, 3)
        n = rng.randint(0, 10)
        capacities = tuple(rng.randint(0, 12) for _ in range(k))
        items = []
        for _ in range(n):
            sizes: List[Optional[int]] = [None if rng.random() < 0.2 else rng.randint(1, 8) for _ in range(k)]
            profits = [0 if s is None else rng.randint(1, 9) for s in sizes]
            items.append(GapItem(sizes=tuple(sizes), profits=tuple(profits)))
        instance = GapInstance(capacities=capacities, items=tuple(items))
        result = solve_exact(instance)
        _check_feasible(instance, result)
        assert result.profit == _brute_force(instance)


def test_extra_bin_never_lowers_the_optimum():
    rng = random.Random(29)
    for _ in range(150):
        k = rng.randint(1, 3)
        capacities = [rng.randint(0, 10) for _ in range(k + 1)]
        rows = []
        for _ in range(rng.randint(1, 8)):
            sizes = [None if rng.random() < 0.2 else rng.randint(1, 6) for _ in range(k + 1)]
            rows.append((sizes, [0 if s is None else rng.randint(1, 9) for s in sizes]))
        fewer = GapInstance(
            capacities=tuple(capacities[:k]),
            items=tuple(GapItem(sizes=tuple(s[:k]), profits=tuple(p[:k])) for s, p in rows),
        )
        more = GapInstance(
            capacities=tuple(capacities),
            items=tuple(GapItem(sizes=tuple(s), profits=tuple(p)) for s, p in rows),
        )
        assert solve_exact(more).profit >= solve_exact(fewer).profit


def test_scaled_equals_exact_when_table_fits():
    instance = _uniform((6, 4), (2, 3, 1, 4), (2, 3, 1, 4))
    assert solve_scaled(instance, 0.25) == solve_exact(instance)


def test_scaled_assignment_is_feasible_at_original_capacities():
    rng = random.Random(5)
    sizes = [rng.randint(1, 300_000) for _ in range(12)]
    instance = _uniform((1_000_000,), sizes, sizes)
    result = solve_scaled(instance, 0.25, table_budget=20_000)
    _check_feasible(instance, result)
    assert result.profit > 0


def test_scaled_with_nothing_feasible():
    instance = GapInstance(
        capacities=(10**6, 10**6),
        items=tuple(GapItem(sizes=(None, None), profits=(0, 0)) for _ in range(3)),
    )
    result = solve_scaled(instance, 0.25, table_budget=10_000)
    assert result.bins == (None, None, None)
    assert result.profit == 0
