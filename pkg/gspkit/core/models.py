"""
Pydantic models for instances, packings, containers and solver results

All models are frozen: once built they are safe to share between threads and
worker processes. Rationals are kept as exact Fractions.
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gspkit.core.config import settings


class Rect(NamedTuple):
    """Axis-aligned rectangle, treated as an open set"""
    left: int
    bottom: int
    right: int
    top: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.top - self.bottom

    @property
    def area(self) -> int:
        return self.width * self.height

    def overlaps(self, other: "Rect") -> bool:
        """Open-set intersection test (touching edges do not overlap)"""
        return (
            self.left < other.right and other.left < self.right
            and self.bottom < other.top and other.bottom < self.top
        )

    def contains(self, other: "Rect") -> bool:
        return (
            self.left <= other.left and other.right <= self.right
            and self.bottom <= other.bottom and other.top <= self.top
        )

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]x[{self.bottom},{self.top}]"


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# ============================================================================
# Instance Models
# ============================================================================

class Item(_Frozen):
    """A rectangle to pack; never rotated"""
    id: int = Field(..., ge=0)
    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)

    @property
    def area(self) -> int:
        return self.width * self.height


class Instance(_Frozen):
    """Strip width W plus the items to pack"""
    strip_width: int = Field(..., ge=1)
    items: Tuple[Item, ...] = ()

    @model_validator(mode="after")
    def _check_items(self) -> "Instance":
        for index, item in enumerate(self.items):
            if item.id != index:
                raise ValueError(f"item ids must be contiguous from 0 (position {index} has id {item.id})")
            if item.width > self.strip_width:
                raise ValueError(f"item {item.id} width {item.width} exceeds strip width {self.strip_width}")
        return self

    @classmethod
    def from_dims(cls, strip_width: int, dims: Iterable[Tuple[int, int]]) -> "Instance":
        """Build an instance from (width, height) pairs"""
        items = tuple(Item(id=i, width=w, height=h) for i, (w, h) in enumerate(dims))
        return cls(strip_width=strip_width, items=items)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def area(self) -> int:
        return sum(item.area for item in self.items)

    @property
    def max_height(self) -> int:
        return max((item.height for item in self.items), default=0)


class Placement(_Frozen):
    """Bottom-left corner of a placed item"""
    item_id: int = Field(..., ge=0)
    left: int = Field(..., ge=0)
    bottom: int = Field(..., ge=0)

    def rect(self, item: Item) -> Rect:
        return Rect(self.left, self.bottom, self.left + item.width, self.bottom + item.height)


class Packing(_Frozen):
    """Placements for the items of an instance plus the achieved height H"""
    instance: Instance
    placements: Tuple[Placement, ...] = ()
    height: int = Field(0, ge=0)

    @classmethod
    def build(cls, instance: Instance, placements: Iterable[Placement]) -> "Packing":
        """Sort placements by item id and derive the height from the top edges"""
        ordered = tuple(sorted(placements, key=lambda p: p.item_id))
        height = 0
        for placement in ordered:
            if placement.item_id < instance.n:
                height = max(height, placement.bottom + instance.items[placement.item_id].height)
        return cls(instance=instance, placements=ordered, height=height)

    def rects(self) -> List[Tuple[int, Rect]]:
        """(item_id, rectangle) pairs for placements that reference real items"""
        items = self.instance.items
        return [
            (p.item_id, p.rect(items[p.item_id]))
            for p in self.placements
            if p.item_id < len(items)
        ]


# ============================================================================
# Classification Models
# ============================================================================

class ItemClass(str, Enum):
    """Size classes relative to (W, OPT, delta, mu)"""
    TALL = "tall"
    LARGE = "large"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    MEDIUM = "medium"
    SMALL = "small"


class Classification(_Frozen):
    """Class of every item for one choice of OPT estimate, delta and mu"""
    opt_estimate: int = Field(..., ge=0)
    strip_width: int
    delta: Fraction
    mu: Fraction
    classes: Tuple[ItemClass, ...] = ()

    def of(self, item_id: int) -> ItemClass:
        return self.classes[item_id]

    def members(self, *wanted: ItemClass) -> List[int]:
        return [i for i, cls in enumerate(self.classes) if cls in wanted]

    def counts(self) -> Dict[str, int]:
        counts = {cls.value: 0 for cls in ItemClass}
        for cls in self.classes:
            counts[cls.value] += 1
        return counts


class ConstantProfile(_Frozen):
    """Epsilon-derived constants (delta, mu, eps1..eps6) for one pipeline run"""
    epsilon: Fraction
    delta: Fraction
    mu: Fraction
    container_budget: int = Field(..., ge=1)  # g
    hor_budget: int = Field(..., ge=1)  # |B_hor| bound used for eps2
    ver_budget: int = Field(..., ge=1)  # |B_ver| bound used for eps3
    eps1: Fraction
    eps2: Fraction
    eps3: Fraction
    eps4: Fraction
    eps5: Fraction
    eps6: Fraction
    window_index: int = 0
    medium_area: int = 0
    medium_area_ok: bool = True


# ============================================================================
# Generalized Assignment Models
# ============================================================================

class GapItem(_Frozen):
    """Per-bin sizes (None = infeasible in that bin) and profits"""
    sizes: Tuple[Optional[int], ...]
    profits: Tuple[int, ...]


class GapInstance(_Frozen):
    """Bins with capacities C_j and items with per-bin sizes s_ij and profits p_ij"""
    capacities: Tuple[int, ...]
    items: Tuple[GapItem, ...] = ()

    @model_validator(mode="after")
    def _check_shape(self) -> "GapInstance":
        k = len(self.capacities)
        if k < 1:
            raise ValueError("a GAP instance needs at least one bin")
        if any(c < 0 for c in self.capacities):
            raise ValueError("capacities must be non-negative")
        for index, item in enumerate(self.items):
            if len(item.sizes) != k or len(item.profits) != k:
                raise ValueError(f"item {index} must give a size and a profit for each of the {k} bins")
            if any(p < 0 for p in item.profits):
                raise ValueError(f"item {index} has a negative profit")
            if any(s is not None and s < 0 for s in item.sizes):
                raise ValueError(f"item {index} has a negative size")
        return self

    @property
    def k(self) -> int:
        return len(self.capacities)


class Assignment(_Frozen):
    """Bin index per item (None = unassigned) and the total profit"""
    bins: Tuple[Optional[int], ...] = ()
    profit: int = 0

    def loads(self, instance: GapInstance) -> List[int]:
        loads = [0] * instance.k
        for item, j in zip(instance.items, self.bins):
            if j is not None:
                loads[j] += item.sizes[j] or 0
        return loads

    def members(self, j: int) -> List[int]:
        return [i for i, b in enumerate(self.bins) if b == j]

    @property
    def unassigned(self) -> List[int]:
        return [i for i, b in enumerate(self.bins) if b is None]


# ============================================================================
# Container Models
# ============================================================================

class Box(_Frozen):
    """A placed axis-aligned region inside the strip"""
    left: int = Field(..., ge=0)
    bottom: int = Field(..., ge=0)
    width: int = Field(..., ge=0)
    height: int = Field(..., ge=0)

    @property
    def right(self) -> int:
        return self.left + self.width

    @property
    def top(self) -> int:
        return self.bottom + self.height

    @property
    def rect(self) -> Rect:
        return Rect(self.left, self.bottom, self.right, self.top)

    @property
    def area(self) -> int:
        return self.width * self.height


class ContainerKind(str, Enum):
    """Nice-packing kinds"""
    SINGLE_LARGE = "single_large"
    HORIZONTAL_STACK = "horizontal_stack"
    VERTICAL_SIDE_BY_SIDE = "vertical_side_by_side"
    MEDIUM_BLOCK = "medium_block"
    SMALL_NFDH = "small_nfdh"


class Container(_Frozen):
    """A box tagged with the kind of nice packing it holds"""
    box: Box
    kind: ContainerKind
    epsilon: Optional[Fraction] = None  # small_nfdh fit ratio
    reserved: bool = False  # B*

    @model_validator(mode="after")
    def _check_epsilon(self) -> "Container":
        if self.kind == ContainerKind.SMALL_NFDH and self.epsilon is None:
            raise ValueError("small_nfdh containers need an epsilon")
        if self.epsilon is not None and not (0 < self.epsilon <= 1):
            raise ValueError("container epsilon must lie in (0, 1]")
        return self


class ContainerLayout(_Frozen):
    """Placed containers inside [0, W] x [0, height]"""
    strip_width: int = Field(..., ge=1)
    height: int = Field(0, ge=0)
    containers: Tuple[Container, ...] = ()


# ============================================================================
# Solver Models
# ============================================================================

class Budgets(_Frozen):
    """Search limits for the container pipelines"""
    max_containers: int = Field(default_factory=lambda: settings.container_budget, ge=1)
    candidate_grid_size: int = Field(default_factory=lambda: settings.candidate_grid_size, ge=1)
    max_layouts: int = Field(default_factory=lambda: settings.max_layouts, ge=1)
    opt_grid_steps: int = Field(default_factory=lambda: settings.opt_grid_steps, ge=1)
    table_budget: int = Field(default_factory=lambda: settings.table_budget, ge=1)
    templates: Tuple[ContainerLayout, ...] = ()


class SolveTrace(_Frozen):
    """How a solver reached its packing"""
    algorithm: str
    opt_guess: Optional[int] = None
    guesses_tried: int = 0
    layouts_tried: int = 0
    layout: Optional[ContainerLayout] = None
    leftover_boxes: Tuple[Box, ...] = ()
    budget_exhausted: bool = False
    fallback: bool = False
    notes: Tuple[str, ...] = ()
    stats: Dict[str, Any] = Field(default_factory=dict)


class SolveResult(_Frozen):
    """A verified, guillotine separable packing plus its quality figures"""
    packing: Packing
    cut_tree: Any
    height: int
    lower_bound: int
    ratio: Fraction
    trace: SolveTrace

    @model_validator(mode="after")
    def _check_ratio(self) -> "SolveResult":
        if self.ratio < 1:
            raise ValueError(f"ratio {self.ratio} below 1: lower bound exceeds height")
        return self

    @property
    def algorithm(self) -> str:
        return self.trace.algorithm


# ============================================================================
# Generator Models
# ============================================================================

class Certificate(_Frozen):
    """What a generator knows about the optimum of the instance it built"""
    kind: str  # partition | planted | binpacking
    relation: str = Field(..., pattern=r"^(=|<=|>=)$")
    value: int = Field(..., ge=0)
    answer: Optional[bool] = None  # partition YES / NO
    layout: Optional[ContainerLayout] = None  # planted witness
