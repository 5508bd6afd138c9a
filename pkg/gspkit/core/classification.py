"""
Lower bounds, item classification and the epsilon constant calculus

Thresholds are compared with exact integer/Fraction arithmetic so items sitting
exactly on a boundary (h = OPT/2, w = delta*W, ...) always land in the same class.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from gspkit.core.config import settings
from gspkit.core.errors import ParameterError
from gspkit.core.models import Classification, ConstantProfile, Instance, Item, ItemClass

logger = logging.getLogger(__name__)


def lower_bound(instance: Instance) -> int:
    """max(ceil(area / W), max height); 0 for an empty instance"""
    if not instance.items:
        return 0
    area_bound = -(-instance.area // instance.strip_width)
    return max(area_bound, instance.max_height)


def _check_window(delta: Fraction, mu: Fraction) -> None:
    if not (0 < mu < delta <= 1):
        raise ParameterError(f"need 1 >= delta > mu > 0, got delta={delta}, mu={mu}")


def class_of(item: Item, strip_width: int, opt_estimate: int, delta: Fraction, mu: Fraction) -> ItemClass:
    """Class of a single item; the six classes partition all (w, h)"""
    w, h = item.width, item.height
    # Tall is strict: an item of height exactly OPT/2 is not tall
    if 2 * h > opt_estimate:
        return ItemClass.TALL
    wide = w > delta * strip_width
    if h > delta * opt_estimate:
        return ItemClass.LARGE if wide else ItemClass.VERTICAL
    if wide and h <= mu * opt_estimate:
        return ItemClass.HORIZONTAL
    if w <= mu * strip_width and h <= mu * opt_estimate:
        return ItemClass.SMALL
    return ItemClass.MEDIUM


def classify(instance: Instance, opt_estimate: int, delta: Fraction, mu: Fraction) -> Classification:
    """Assign every item exactly one class"""
    delta, mu = Fraction(delta), Fraction(mu)
    _check_window(delta, mu)
    if opt_estimate < instance.max_height:
        raise ParameterError(
            f"opt_estimate {opt_estimate} is below the tallest item ({instance.max_height})"
        )
    classes = tuple(
        class_of(item, instance.strip_width, opt_estimate, delta, mu) for item in instance.items
    )
    return Classification(
        opt_estimate=opt_estimate,
        strip_width=instance.strip_width,
        delta=delta,
        mu=mu,
        classes=classes,
    )


def medium_area(instance: Instance, opt_estimate: int, delta: Fraction, mu: Fraction) -> int:
    """Total area of the items that are medium for the window (delta, mu)"""
    return sum(
        item.area
        for item in instance.items
        if class_of(item, instance.strip_width, opt_estimate, delta, mu) == ItemClass.MEDIUM
    )


def shrink(x: Fraction, epsilon: Fraction, container_budget: int) -> Fraction:
    """f(x) = x * eps / g^2"""
    return x * epsilon / (container_budget * container_budget)


def _check_epsilon(epsilon: Fraction) -> None:
    if not (0 < epsilon < 1):
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if (1 / epsilon).denominator != 1:
        raise ParameterError(f"1/epsilon must be integral, got epsilon={epsilon}")


def choose_constants(
    epsilon: Fraction,
    instance: Instance,
    opt_estimate: int,
    container_budget: Optional[int] = None,
    hor_budget: Optional[int] = None,
    ver_budget: Optional[int] = None,
) -> ConstantProfile:
    """
    Pick (delta, mu) down the chain f(eps), f(f(eps)), ... so the medium items
    cover at most eps * OPT * W, then derive eps1..eps6.

    Each item is medium in at most two windows (once through its width, once
    through its height), so among 2/eps windows one always qualifies when
    OPT * W bounds the total area. If the estimate is too small for that, the
    window with the least medium area is returned with medium_area_ok False.

    Args:
        epsilon: accuracy parameter with 1/epsilon integral
        instance: the instance whose medium area is measured
        opt_estimate: the OPT value thresholds refer to
        container_budget: g, defaults to settings.container_budget
        hor_budget: bound on horizontal containers used by eps2 (defaults to g)
        ver_budget: bound on vertical containers used by eps3 (defaults to g)
    """
    epsilon = Fraction(epsilon)
    _check_epsilon(epsilon)
    g = container_budget or settings.container_budget
    if g < 1:
        raise ParameterError(f"container budget must be positive, got {g}")
    hor = hor_budget or g
    ver = ver_budget or g

    limit = epsilon * opt_estimate * instance.strip_width
    windows = 2 * int(1 / epsilon)
    candidate = shrink(epsilon, epsilon, g)
    best: Optional[Tuple[int, int, Fraction, Fraction]] = None
    chosen: Optional[Tuple[int, int, Fraction, Fraction]] = None
    for index in range(windows):
        delta, mu = candidate, shrink(candidate, epsilon, g)
        area = medium_area(instance, opt_estimate, delta, mu) if opt_estimate > 0 else 0
        if best is None or area < best[1]:
            best = (index, area, delta, mu)
        if area <= limit:
            chosen = (index, area, delta, mu)
            break
        candidate = mu

    ok = chosen is not None
    if chosen is None:
        chosen = best
        logger.warning(
            f"No (delta, mu) window keeps medium area within eps*OPT*W for OPT={opt_estimate}; "
            f"using window {chosen[0]} with medium area {chosen[1]}"
        )
    index, area, delta, mu = chosen
    logger.debug(f"Constants: window={index} delta={delta} mu={mu} medium_area={area}")

    eps1 = Fraction(1, 3 * g)
    return ConstantProfile(
        epsilon=epsilon,
        delta=delta,
        mu=mu,
        container_budget=g,
        hor_budget=hor,
        ver_budget=ver,
        eps1=eps1,
        eps2=epsilon / (4 * hor),
        eps3=eps1 / (4 * ver),
        eps4=mu,
        eps5=eps1 * delta / 6,
        eps6=epsilon * delta / 6,
        window_index=index,
        medium_area=area,
        medium_area_ok=ok,
    )


def normalize_heights(instance: Instance, epsilon: Fraction) -> Tuple[Instance, bool]:
    """
    Rescale heights to h' = ceil(h * n / (eps * h_max)) when h_max > ceil(n / eps).

    Costs at most a (1 + eps) factor in the optimum; returns the instance
    unchanged (and False) when heights are already small.
    """
    epsilon = Fraction(epsilon)
    n = instance.n
    if n == 0:
        return instance, False
    h_max = instance.max_height
    if h_max <= math.ceil(n / epsilon):
        return instance, False
    factor = Fraction(n) / (epsilon * h_max)
    dims: List[Tuple[int, int]] = [
        (item.width, math.ceil(item.height * factor)) for item in instance.items
    ]
    logger.debug(f"Normalized heights: h_max {h_max} -> {max(h for _, h in dims)}")
    return Instance.from_dims(instance.strip_width, dims), True
