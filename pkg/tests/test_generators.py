import pytest

from gspkit.core.errors import ParameterError
from gspkit.core.generators import (
    SKEWS,
    binpacking_instance,
    has_partition,
    partition_instance,
    planted_instance,
    random_binpacking,
    random_instance,
    random_partition,
    subset_sums,
)
from gspkit.core.guillotine import NotSeparable, cuts_separating_boxes
from gspkit.core.models import ContainerKind


def test_partition_reduction():
    instance, certificate = partition_instance([1, 2, 3])
    assert instance.strip_width == 3
    assert [(i.width, i.height) for i in instance.items] == [(1, 1), (2, 1), (3, 1)]
    assert (certificate.answer, certificate.relation, certificate.value) == (True, "=", 2)


def test_partition_without_a_split():
    _, certificate = partition_instance([2, 2, 2])
    assert (certificate.answer, certificate.relation, certificate.value) == (False, ">=", 3)


def test_partition_rejects_bad_values():
    with pytest.raises(ParameterError, match="even total"):
        partition_instance([1, 2])
    with pytest.raises(ParameterError):
        partition_instance([5, 1])
    with pytest.raises(ParameterError):
        partition_instance([])


def test_subset_sums():
    assert subset_sums([2, 3]) == 0b101101
    assert has_partition([3, 1, 1, 2, 2, 1])
    assert not has_partition([1, 5])


def test_random_partition_is_reproducible():
    assert random_partition(6, 9, 4) == random_partition(6, 9, 4)
    instance, _ = random_partition(6, 9, 4)
    assert sum(i.width for i in instance.items) == 2 * instance.strip_width


def test_random_instances_are_reproducible_and_in_range():
    for skew in SKEWS:
        first = random_instance(40, 30, 50, 7, skew)
        assert first == random_instance(40, 30, 50, 7, skew)
        assert all(1 <= i.width <= 30 and 1 <= i.height <= 50 for i in first.items)
    assert random_instance(40, 30, 50, 7) != random_instance(40, 30, 50, 8)
    with pytest.raises(ParameterError):
        random_instance(4, 10, 10, 0, "sideways")


def test_binpacking_exact_count():
    instance, certificate = binpacking_instance([4, 4, 3, 3, 2, 2, 2], 10)
    assert instance.strip_width == 10
    assert (certificate.relation, certificate.value) == ("=", 2)


def test_binpacking_large_inputs_get_a_bound():
    _, certificate = random_binpacking(20, 10, 3)
    assert certificate.relation == ">="


def test_binpacking_rejects_oversized_items():
    with pytest.raises(ParameterError):
        binpacking_instance([11], 10)


def test_planted_certificate_and_witness():
    for seed in range(20):
        instance, certificate = planted_instance(20, 16, 4, seed)
        assert (certificate.relation, certificate.value) == ("<=", 16)
        layout = certificate.layout
        assert not isinstance(cuts_separating_boxes(layout), NotSeparable)
        assert all(c.box.right <= 20 and c.box.top <= 16 for c in layout.containers)
        assert sum(c.box.area for c in layout.containers) >= instance.area


def test_planted_tall_items_are_flushed():
    instance, certificate = planted_instance(24, 20, 3, 5, tall=2)
    singles = [c for c in certificate.layout.containers
               if c.kind == ContainerKind.SINGLE_LARGE and c.box.bottom == 0 and c.box.height > 10]
    assert singles and singles[0].box.left == 0
    assert sum(1 for i in instance.items if 2 * i.height > 20) >= len(singles)


def test_planted_is_reproducible():
    assert planted_instance(20, 16, 4, 11) == planted_instance(20, 16, 4, 11)
    with pytest.raises(ParameterError):
        planted_instance(1, 16, 4, 0)
