"""
Packing verification: bounds, completeness and pairwise disjointness
"""

import logging
from typing import List, Sequence, Tuple

from pydantic import BaseModel

from gspkit.core.errors import VerificationError
from gspkit.core.models import Packing, Rect

logger = logging.getLogger(__name__)


class PackingReport(BaseModel):
    """Result of verifying a packing; empty violations means feasible"""
    violations: List[str] = []
    overlaps: List[Tuple[int, int]] = []

    @property
    def ok(self) -> bool:
        return not self.violations


def find_overlaps(rects: Sequence[Tuple[int, Rect]]) -> List[Tuple[int, int]]:
    """All overlapping (id, id) pairs via a sweep over left edges"""
    ordered = sorted(rects, key=lambda pair: (pair[1].left, pair[0]))
    pairs: List[Tuple[int, int]] = []
    for index, (a_id, a) in enumerate(ordered):
        for b_id, b in ordered[index + 1:]:
            if b.left >= a.right:
                break
            if a.overlaps(b):
                pairs.append((min(a_id, b_id), max(a_id, b_id)))
    pairs.sort()
    return pairs


def verify_packing(packing: Packing) -> PackingReport:
    """Check a packing against its instance; every problem is reported"""
    instance = packing.instance
    violations: List[str] = []

    seen = {}
    for placement in packing.placements:
        if placement.item_id >= instance.n:
            violations.append(f"placement for unknown item {placement.item_id}")
            continue
        if placement.item_id in seen:
            violations.append(f"item {placement.item_id} placed more than once")
        seen[placement.item_id] = placement
    missing = [i for i in range(instance.n) if i not in seen]
    if missing:
        violations.append(f"items not placed: {', '.join(map(str, missing))}")

    rects = [(item_id, p.rect(instance.items[item_id])) for item_id, p in seen.items()]
    top = 0
    for item_id, rect in rects:
        if rect.right > instance.strip_width:
            violations.append(
                f"item {item_id} exceeds strip width: right {rect.right} > {instance.strip_width}"
            )
        if rect.top > packing.height:
            violations.append(f"item {item_id} exceeds packing height: top {rect.top} > {packing.height}")
        top = max(top, rect.top)
    if top != packing.height and not any("exceeds packing height" in v for v in violations):
        violations.append(f"declared height {packing.height} differs from max top {top}")

    overlaps = find_overlaps(rects)
    for a, b in overlaps:
        violations.append(f"items {a} and {b} overlap")

    return PackingReport(violations=violations, overlaps=overlaps)


def ensure_valid(packing: Packing) -> None:
    """Raise VerificationError unless the packing is feasible"""
    report = verify_packing(packing)
    if not report.ok:
        raise VerificationError(report.violations)
