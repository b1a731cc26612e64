import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from sos_cayley.paper_tables import paper_catalog
from sos_cayley.plot import parse_fix, parse_window, phase_cells, plot_phase_diagram, verify_svg

F = Fraction
SVG = "{http://www.w3.org/2000/svg}"


def test_parse_window():
    assert parse_window("-1,1,-1/2,3") == (F(-1), F(1), F(-1, 2), F(3))
    for bad in ("1,-1,0,1", "0,1,0", "0.5,1,0,1"):
        with pytest.raises(ValueError):
            parse_window(bad)


def test_parse_fix():
    assert parse_fix(None, 1) == {}
    assert parse_fix("alpha2=-1/2", 2) == {2: F(-1, 2)}
    with pytest.raises(ValueError):
        parse_fix("alpha2=1", 1)
    with pytest.raises(ValueError):
        parse_fix(None, 2)
    with pytest.raises(ValueError):
        parse_fix("beta=1", 2)


def test_ti18_cells():
    cells = phase_cells(paper_catalog("ti18"), parse_window("-1,1,-1,1"))
    full = {c.forms for c in cells if c.dimension == 2 and not c.region.equalities()}
    # one cell per quadrant: 2a and 0 for J < 0, -3J+2a and -3J for J > 0
    assert full == {(17,), (18,), (15,), (6,)}
    assert any(set(c.forms) >= {7, 8, 9} for c in cells)


def test_svg_is_valid_and_sound():
    cat = paper_catalog("ti18")
    svg, cells = plot_phase_diagram(cat, parse_window("-1,1,-1,1"), catalog_id="ti18")
    root = ET.fromstring(svg)
    assert root.tag == SVG + "svg" and root.get("version") == "1.1"
    labelled = [el for el in root.iter() if el.get("data-forms")]
    assert len(labelled) == len(cells)
    checks = verify_svg(svg, cat, n_samples=200)
    assert all(c["ok"] for c in checks)


@pytest.mark.parametrize("fix", ["alpha2=1/2", "alpha2=-1", "alpha1=0"])
def test_two_class_slices_are_sound(fix):
    cat = paper_catalog("p29")
    f = parse_fix(fix, 2)
    svg, _ = plot_phase_diagram(cat, parse_window("-1,1,-1,1"), catalog_id="p29", fix=f)
    assert all(c["ok"] for c in verify_svg(svg, cat, n_samples=100))


def test_verify_svg_catches_a_wrong_label():
    cat = paper_catalog("ti18")
    svg, _ = plot_phase_diagram(cat, parse_window("-1,1,-1,1"), catalog_id="ti18")
    root = ET.fromstring(svg)
    poly = next(el for el in root.iter(SVG + "polygon") if el.get("data-forms") == "17")
    poly.set("data-forms", "6")
    checks = verify_svg(ET.tostring(root, encoding="unicode"), cat, n_samples=50)
    assert not all(c["ok"] for c in checks)


def test_plot_is_deterministic():
    cat = paper_catalog("p29")
    a, _ = plot_phase_diagram(cat, parse_window("-2,1,-1,1"), catalog_id="p29", fix={2: F(1, 3)})
    b, _ = plot_phase_diagram(cat, parse_window("-2,1,-1,1"), catalog_id="p29", fix={2: F(1, 3)})
    assert a == b
