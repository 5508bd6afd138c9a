"""
Plain-text file formats

All files are LF-terminated text with whitespace-separated decimal integers.

Instance (*.inst):
    strip <W>
    <n>
    <w> <h>            (n lines)

Solution (*.sol):
    height <H>
    <item_id> <left> <bottom>
    cuts               (optional, followed by the cut-tree expression)
    (V 4 (I 0) (H 2 (I 1) (W)))

Cut tree: (V <x> <left> <right>), (H <y> <bottom> <top>), (I <item_id>), (W)
for waste. Regions are implied by the root region [0,W] x [0,H].

Layout (*.layout):
    strip <W>
    height <H>
    box <left> <bottom> <w> <h> <kind> [eps=<p/q>] [reserved]

Certificate (*.cert): one of
    yes, opt=2 | no, opt>=3          partition reduction
    opt <= <H>  + layout lines       planted layout
    opt=<k> | opt>=<k>               bin packing reduction
"""

import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from pydantic import ValidationError

from gspkit.core.errors import ParseError
from gspkit.core.guillotine import CutTree, HorizontalCut, Leaf, VerticalCut
from gspkit.core.models import (
    Box,
    Certificate,
    Container,
    ContainerKind,
    ContainerLayout,
    Instance,
    Item,
    Packing,
    Placement,
    Rect,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_PARTITION = re.compile(r"^(yes|no),\s*opt\s*(=|>=)\s*(\d+)$")
_BOUND = re.compile(r"^opt\s*(<=|>=|=)\s*(\d+)$")


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """(1-based line number, tokens) for every non-blank line"""
    for number, line in enumerate(text.split("\n"), start=1):
        tokens = line.split()
        if tokens:
            yield number, tokens


def _int(token: str, line: int, source: Optional[str], what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {token!r}", line, source)


def _keyword(tokens: List[str], keyword: str, line: int, source: Optional[str]) -> int:
    if len(tokens) != 2 or tokens[0] != keyword:
        raise ParseError(f"expected '{keyword} <value>'", line, source)
    return _int(tokens[1], line, source, keyword)


# ============================================================================
# Instances
# ============================================================================

def parse_instance(text: str, source: Optional[str] = None) -> Instance:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty instance file", 1, source)
    number, tokens = lines[0]
    strip = _keyword(tokens, "strip", number, source)
    if strip < 1:
        raise ParseError(f"strip width must be positive, got {strip}", number, source)
    if len(lines) < 2:
        raise ParseError("missing item count", number + 1, source)
    number, tokens = lines[1]
    if len(tokens) != 1:
        raise ParseError("expected the item count on its own line", number, source)
    n = _int(tokens[0], number, source, "item count")
    if n < 0:
        raise ParseError(f"item count must be non-negative, got {n}", number, source)
    body = lines[2:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else number + 1)
        raise ParseError(f"expected {n} item lines, found {len(body)}", where, source)

    items: List[Item] = []
    for index, (number, tokens) in enumerate(body):
        if len(tokens) != 2:
            raise ParseError("expected '<width> <height>'", number, source)
        w = _int(tokens[0], number, source, "width")
        h = _int(tokens[1], number, source, "height")
        if w < 1 or h < 1:
            raise ParseError(f"item dimensions must be positive, got {w}x{h}", number, source)
        if w > strip:
            raise ParseError(f"item width {w} exceeds strip width {strip}", number, source)
        items.append(Item(id=index, width=w, height=h))
    return Instance(strip_width=strip, items=tuple(items))


def dump_instance(instance: Instance) -> str:
    rows = [f"strip {instance.strip_width}", str(instance.n)]
    rows += [f"{item.width} {item.height}" for item in instance.items]
    return "\n".join(rows) + "\n"


# ============================================================================
# Cut trees
# ============================================================================

def dump_cut_tree(tree: CutTree) -> str:
    if isinstance(tree, Leaf):
        return "(W)" if tree.item is None else f"(I {tree.item})"
    if isinstance(tree, VerticalCut):
        return f"(V {tree.x} {dump_cut_tree(tree.left)} {dump_cut_tree(tree.right)})"
    return f"(H {tree.y} {dump_cut_tree(tree.bottom)} {dump_cut_tree(tree.top)})"


def parse_cut_tree(text: str, region: Rect, line: Optional[int] = None, source: Optional[str] = None) -> CutTree:
    """Rebuild a tree from its expression; regions follow from the root region"""
    tokens = _TOKEN.findall(text)
    position = 0

    def fail(message: str) -> ParseError:
        return ParseError(f"cut tree: {message} (token {position})", line, source)

    def take() -> str:
        nonlocal position
        if position >= len(tokens):
            raise fail("unexpected end of expression")
        token = tokens[position]
        position += 1
        return token

    def number() -> int:
        token = take()
        try:
            return int(token)
        except ValueError:
            raise fail(f"expected integer, got {token!r}")

    def node(r: Rect) -> CutTree:
        if take() != "(":
            raise fail("expected '('")
        tag = take()
        if tag == "W":
            result: CutTree = Leaf(r)
        elif tag == "I":
            result = Leaf(r, number())
        elif tag == "V":
            x = number()
            left = node(Rect(r.left, r.bottom, x, r.top))
            result = VerticalCut(r, x, left, node(Rect(x, r.bottom, r.right, r.top)))
        elif tag == "H":
            y = number()
            bottom = node(Rect(r.left, r.bottom, r.right, y))
            result = HorizontalCut(r, y, bottom, node(Rect(r.left, y, r.right, r.top)))
        else:
            raise fail(f"unknown node tag {tag!r}")
        if take() != ")":
            raise fail("expected ')'")
        return result

    tree = node(region)
    if position != len(tokens):
        raise fail("trailing tokens after the expression")
    return tree


# ============================================================================
# Solutions
# ============================================================================

def parse_solution(text: str, instance: Instance, source: Optional[str] = None) -> Tuple[Packing, Optional[CutTree]]:
    """
    Placements are taken as written: unknown, duplicate or missing items are
    left for verification to report. The declared height is kept as is.
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty solution file", 1, source)
    number, tokens = lines[0]
    height = _keyword(tokens, "height", number, source)
    if height < 0:
        raise ParseError("height must be non-negative", number, source)

    placements: List[Placement] = []
    tree: Optional[CutTree] = None
    for index in range(1, len(lines)):
        number, tokens = lines[index]
        if tokens == ["cuts"]:
            expression = " ".join(" ".join(t) for _, t in lines[index + 1:])
            region = Rect(0, 0, instance.strip_width, height)
            tree = parse_cut_tree(expression, region, number + 1, source)
            break
        if len(tokens) != 3:
            raise ParseError("expected '<item_id> <left> <bottom>'", number, source)
        item_id, left, bottom = (_int(t, number, source, what) for t, what in zip(tokens, ("item id", "left", "bottom")))
        if item_id < 0 or left < 0 or bottom < 0:
            raise ParseError("item id and coordinates must be non-negative", number, source)
        placements.append(Placement(item_id=item_id, left=left, bottom=bottom))

    packing = Packing(instance=instance, placements=tuple(placements), height=height)
    return packing, tree


def dump_solution(packing: Packing, tree: Optional[CutTree] = None) -> str:
    rows = [f"height {packing.height}"]
    rows += [f"{p.item_id} {p.left} {p.bottom}" for p in sorted(packing.placements, key=lambda p: p.item_id)]
    if tree is not None:
        rows += ["cuts", dump_cut_tree(tree)]
    return "\n".join(rows) + "\n"


# ============================================================================
# Layouts and certificates
# ============================================================================

def _container(tokens: List[str], line: int, source: Optional[str]) -> Container:
    if len(tokens) < 6 or tokens[0] != "box":
        raise ParseError("expected 'box <left> <bottom> <w> <h> <kind>'", line, source)
    left, bottom, width, height = (_int(t, line, source, "box coordinate") for t in tokens[1:5])
    try:
        kind = ContainerKind(tokens[5])
    except ValueError:
        raise ParseError(f"unknown container kind {tokens[5]!r}", line, source)
    epsilon: Optional[Fraction] = None
    reserved = False
    for extra in tokens[6:]:
        if extra == "reserved":
            reserved = True
        elif extra.startswith("eps="):
            try:
                epsilon = Fraction(extra[4:])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad epsilon {extra!r}", line, source)
        else:
            raise ParseError(f"unexpected token {extra!r}", line, source)
    try:
        return Container(
            box=Box(left=left, bottom=bottom, width=width, height=height),
            kind=kind,
            epsilon=epsilon,
            reserved=reserved,
        )
    except ValidationError as exc:
        raise ParseError(f"invalid container: {exc.errors()[0]['msg']}", line, source)


def _parse_layout_lines(lines: List[Tuple[int, List[str]]], source: Optional[str]) -> ContainerLayout:
    if len(lines) < 2:
        raise ParseError("layout needs 'strip' and 'height' headers", lines[0][0] if lines else 1, source)
    strip = _keyword(lines[0][1], "strip", lines[0][0], source)
    height = _keyword(lines[1][1], "height", lines[1][0], source)
    if strip < 1 or height < 0:
        raise ParseError("strip must be positive and height non-negative", lines[0][0], source)
    containers = tuple(_container(tokens, number, source) for number, tokens in lines[2:])
    return ContainerLayout(strip_width=strip, height=height, containers=containers)


def parse_layout(text: str, source: Optional[str] = None) -> ContainerLayout:
    return _parse_layout_lines(list(_lines(text)), source)


def _format_container(container: Container) -> str:
    box = container.box
    row = f"box {box.left} {box.bottom} {box.width} {box.height} {container.kind.value}"
    if container.epsilon is not None:
        row += f" eps={container.epsilon}"
    if container.reserved:
        row += " reserved"
    return row


def dump_layout(layout: ContainerLayout) -> str:
    rows = [f"strip {layout.strip_width}", f"height {layout.height}"]
    rows += [_format_container(c) for c in layout.containers]
    return "\n".join(rows) + "\n"


def parse_certificate(text: str, source: Optional[str] = None) -> Certificate:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty certificate", 1, source)
    number, tokens = lines[0]
    head = " ".join(tokens)
    match = _PARTITION.match(head)
    if match:
        answer, relation, value = match.groups()
        return Certificate(kind="partition", relation=relation, value=int(value), answer=answer == "yes")
    match = _BOUND.match(head)
    if not match:
        raise ParseError(f"unrecognised certificate {head!r}", number, source)
    relation, value = match.group(1), int(match.group(2))
    if relation == "<=":
        layout = _parse_layout_lines(lines[1:], source) if len(lines) > 1 else None
        return Certificate(kind="planted", relation=relation, value=value, layout=layout)
    return Certificate(kind="binpacking", relation=relation, value=value)


def dump_certificate(certificate: Certificate) -> str:
    if certificate.kind == "partition":
        return f"{'yes' if certificate.answer else 'no'}, opt{certificate.relation}{certificate.value}\n"
    if certificate.kind == "planted":
        head = f"opt <= {certificate.value}\n"
        return head + (dump_layout(certificate.layout) if certificate.layout else "")
    return f"opt{certificate.relation}{certificate.value}\n"


# ============================================================================
# Files
# ============================================================================

def read_text(path: PathLike) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", None, str(path))


def write_text(path: PathLike, text: str) -> None:
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.debug(f"Wrote {target}")


def load_instance(path: PathLike) -> Instance:
    return parse_instance(read_text(path), str(path))


def save_instance(path: PathLike, instance: Instance) -> None:
    write_text(path, dump_instance(instance))


def load_solution(path: PathLike, instance: Instance) -> Tuple[Packing, Optional[CutTree]]:
    return parse_solution(read_text(path), instance, str(path))


def save_solution(path: PathLike, packing: Packing, tree: Optional[CutTree] = None) -> None:
    write_text(path, dump_solution(packing, tree))


def load_layout(path: PathLike) -> ContainerLayout:
    return parse_layout(read_text(path), str(path))


def save_layout(path: PathLike, layout: ContainerLayout) -> None:
    write_text(path, dump_layout(layout))


def load_certificate(path: PathLike) -> Certificate:
    return parse_certificate(read_text(path), str(path))


def save_certificate(path: PathLike, certificate: Certificate) -> None:
    write_text(path, dump_certificate(certificate))
