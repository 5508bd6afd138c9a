"""
SVG rendering of packings and their cut trees
"""

import logging
from typing import Optional

import svgwrite

from gspkit.core.guillotine import CutTree, VerticalCut, iter_cuts
from gspkit.core.models import Packing

logger = logging.getLogger(__name__)

PALETTE = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"]
STAGE_COLORS = ("#d62728", "#1f77b4")  # odd stages, even stages
MARGIN = 10


def render_svg(
    packing: Packing,
    tree: Optional[CutTree] = None,
    scale: float = 20,
    filename: str = "packing.svg",
) -> svgwrite.Drawing:
    """
    Draw the strip outline, every item as a labelled rectangle and, when a
    cut tree is given, its cuts coloured by stage parity. The strip floor is
    at the bottom of the picture.
    """
    W = packing.instance.strip_width
    H = packing.height
    width = W * scale + 2 * MARGIN
    height = H * scale + 2 * MARGIN
    dwg = svgwrite.Drawing(filename, size=(width, height), profile="tiny")

    def sx(x: float) -> float:
        return MARGIN + x * scale

    def sy(y: float) -> float:
        return MARGIN + (H - y) * scale

    dwg.add(dwg.rect(insert=(sx(0), sy(H)), size=(W * scale, H * scale),
                     fill="white", stroke="black", stroke_width=2))

    font_size = max(6, min(14, scale * 0.6))
    for item_id, r in packing.rects():
        dwg.add(dwg.rect(
            insert=(sx(r.left), sy(r.top)),
            size=(r.width * scale, r.height * scale),
            fill=PALETTE[item_id % len(PALETTE)],
            stroke="black",
            stroke_width=1,
        ))
        dwg.add(dwg.text(
            str(item_id),
            insert=(sx(r.left) + 2, sy(r.top) + font_size),
            font_size=font_size,
            font_family="Arial",
        ))

    if tree is not None:
        cuts = 0
        for node, stage in iter_cuts(tree):
            color = STAGE_COLORS[(stage - 1) % 2]
            region = node.region
            if isinstance(node, VerticalCut):
                start, end = (sx(node.x), sy(region.bottom)), (sx(node.x), sy(region.top))
            else:
                start, end = (sx(region.left), sy(node.y)), (sx(region.right), sy(node.y))
            dwg.add(dwg.line(start=start, end=end, stroke=color, stroke_width=2))
            cuts += 1
        logger.debug(f"Rendered {cuts} cuts")
    return dwg


def save_svg(packing: Packing, path: str, tree: Optional[CutTree] = None, scale: float = 20) -> None:
    dwg = render_svg(packing, tree, scale, filename=path)
    dwg.save()
    logger.info(f"Wrote {path}")
