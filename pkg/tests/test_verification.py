import pytest

from gspkit.core.errors import VerificationError
from gspkit.core.models import Instance, Packing, Placement, Rect
from gspkit.core.verification import ensure_valid, find_overlaps, verify_packing

from conftest import packing_from


def test_valid_packing_has_no_violations(pinwheel):
    report = verify_packing(pinwheel)
    assert report.ok
    assert report.overlaps == []


def test_overlap_reported_as_pair():
    packing = packing_from(4, [(0, 0, 2, 2), (1, 1, 3, 3)])
    report = verify_packing(packing)
    assert not report.ok
    assert report.overlaps == [(0, 1)]
    assert "items 0 and 1 overlap" in report.violations


def test_touching_edges_do_not_overlap():
    assert find_overlaps([(0, Rect(0, 0, 2, 2)), (1, Rect(2, 0, 4, 2)), (2, Rect(0, 2, 2, 4))]) == []


def test_missing_and_duplicate_items():
    instance = Instance.from_dims(4, [(1, 1), (1, 1), (1, 1)])
    placements = (
        Placement(item_id=0, left=0, bottom=0),
        Placement(item_id=0, left=1, bottom=0),
        Placement(item_id=7, left=0, bottom=0),
    )
    report = verify_packing(Packing(instance=instance, placements=placements, height=1))
    assert "item 0 placed more than once" in report.violations
    assert "placement for unknown item 7" in report.violations
    assert "items not placed: 1, 2" in report.violations


def test_strip_width_and_height_bounds():
    instance = Instance.from_dims(4, [(3, 2)])
    wide = Packing(instance=instance, placements=(Placement(item_id=0, left=2, bottom=0),), height=2)
    assert any("exceeds strip width" in v for v in verify_packing(wide).violations)
    short = Packing(instance=instance, placements=(Placement(item_id=0, left=0, bottom=0),), height=1)
    assert any("exceeds packing height" in v for v in verify_packing(short).violations)
    loose = Packing(instance=instance, placements=(Placement(item_id=0, left=0, bottom=0),), height=5)
    assert verify_packing(loose).violations == ["declared height 5 differs from max top 2"]


def test_ensure_valid_raises_with_every_violation():
    packing = packing_from(4, [(0, 0, 2, 2), (1, 1, 3, 3), (0, 0, 1, 1)])
    with pytest.raises(VerificationError) as info:
        ensure_valid(packing)
    assert len(info.value.violations) == 2


def test_build_derives_height_from_tops():
    packing = packing_from(5, [(0, 0, 2, 3), (2, 1, 5, 6)])
    assert packing.height == 6
