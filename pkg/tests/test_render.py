from gspkit.core.guillotine import check_separable
from gspkit.core.heuristics import nfdh_strip
from gspkit.core.models import Instance, Packing, Placement
from gspkit.core.render import render_svg, save_svg


def test_single_item_draws_strip_and_item():
    instance = Instance.from_dims(4, [(2, 3)])
    packing = Packing.build(instance, [Placement(item_id=0, left=0, bottom=0)])
    svg = render_svg(packing).tostring()
    assert svg.count("<rect") == 2
    assert ">0</text>" in svg
    assert "<line" not in svg


def test_cuts_are_drawn_one_line_each(nfdh_fixture):
    packing, _ = nfdh_strip(nfdh_fixture)
    tree = check_separable(packing)
    svg = render_svg(packing, tree).tostring()
    assert svg.count("<rect") == 4
    assert svg.count("<line") == 2


def test_empty_packing_draws_the_strip_only():
    packing = Packing.build(Instance(strip_width=5), [])
    assert render_svg(packing).tostring().count("<rect") == 1


def test_save_writes_the_file(tmp_path, nfdh_fixture):
    packing, tree = nfdh_strip(nfdh_fixture)
    target = tmp_path / "nfdh.svg"
    save_svg(packing, str(target), tree, scale=5)
    assert target.read_text().lstrip().startswith("<?xml")
