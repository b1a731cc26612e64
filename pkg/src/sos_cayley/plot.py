"""SVG phase diagrams: the (J, alpha) window partitioned into argmin cells.

Each full-dimensional cell is emitted as a ``<polygon>`` carrying its exact
rational vertices and the indices of the forms minimal on it, so the picture
can be re-checked without trusting this module (see :func:`verify_svg`).
"""
from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .energy import EnergyCatalog, ParameterPoint
from .rational import fmt, parse_rational
from .regions import LinearConstraint, Region, argmin_region, region_equal, simplify

PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)
SIZE = 480
MARGIN = 60


@dataclass(frozen=True)
class Cell:
    forms: tuple[int, ...]
    vertices: tuple[tuple[Fraction, Fraction], ...]
    region: Region

    @property
    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def to_json(self) -> dict:
        return {
            "forms": list(self.forms),
            "vertices": [[fmt(x), fmt(y)] for x, y in self.vertices],
            "region": self.region.pretty(),
        }


def parse_window(text: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    parts = [parse_rational(p) for p in text.split(",")]
    if len(parts) != 4 or parts[0] >= parts[1] or parts[2] >= parts[3]:
        raise ValueError(f"window must be Jmin,Jmax,amin,amax with min < max, got {text!r}")
    return tuple(parts)  # type: ignore[return-value]


def parse_fix(text: str | None, r: int) -> dict[int, Fraction]:
    """``alpha2=p/q`` -> ``{2: p/q}`` (coordinate index in the parameter vector)."""
    if r == 1:
        if text:
            raise ValueError("--fix only applies to two-class catalogs")
        return {}
    if not text:
        raise ValueError("a two-class catalog needs --fix alpha1=.. or alpha2=..")
    name, _, value = text.partition("=")
    idx = {"alpha1": 1, "a1": 1, "alpha2": 2, "a2": 2}.get(name.strip())
    if idx is None:
        raise ValueError(f"cannot fix {name!r}; use alpha1 or alpha2")
    return {idx: parse_rational(value)}


def _window_region(window) -> Region:
    j0, j1, a0, a1 = window
    return Region(2, (
        LinearConstraint((-1, 0), "le", j0),
        LinearConstraint((1, 0), "le", -j1),
        LinearConstraint((0, -1), "le", a0),
        LinearConstraint((0, 1), "le", -a1),
    ))


def _slice(region: Region, fix: dict[int, Fraction]) -> Region:
    for idx in sorted(fix, reverse=True):
        region = region.substitute(idx, fix[idx])
    return region


def _vertices(region: Region) -> list[tuple[Fraction, Fraction]]:
    """Exact vertices of a bounded planar region, counter-clockwise."""
    lines = list(region.constraints)
    pts: set[tuple[Fraction, Fraction]] = set()
    for i, c in enumerate(lines):
        for d in lines[i + 1:]:
            (a, b), (p, q) = c.coeffs, d.coeffs
            det = a * q - b * p
            if det == 0:
                continue
            x = (-c.constant * q + d.constant * b) / det
            y = (-a * d.constant + p * c.constant) / det
            if region.contains_point((x, y)):
                pts.add((x, y))
    pts_list = sorted(pts)
    if len(pts_list) < 3:
        return pts_list
    cx = sum(p[0] for p in pts_list) / len(pts_list)
    cy = sum(p[1] for p in pts_list) / len(pts_list)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(pts_list, key=cmp_to_key(cmp))


def phase_cells(catalog: EnergyCatalog, window, fix: dict[int, Fraction] | None = None) -> list[Cell]:
    """Distinct argmin sets inside the window, full-dimensional ones first."""
    fix = fix or {}
    if len(fix) != catalog.r - 1:
        raise ValueError(f"{catalog.r}-class catalog needs {catalog.r - 1} fixed field value(s)")
    box = _window_region(window)
    groups: list[tuple[Region, list[int]]] = []
    for i in range(1, len(catalog) + 1):
        reg = simplify(Region(2, _slice(argmin_region(catalog, i), fix).constraints + box.constraints))
        if reg.empty:
            continue
        for known, members in groups:
            if region_equal(known, reg):
                members.append(i)
                break
        else:
            groups.append((reg, [i]))
    cells = [Cell(tuple(members), tuple(_vertices(reg)), reg) for reg, members in groups]
    cells.sort(key=lambda c: (bool(c.region.equalities()), c.forms))
    return cells


def render_svg(cells: Sequence[Cell], window, *, catalog_id: str, fix: dict[int, Fraction] | None = None,
               axis_names: tuple[str, str] = ("J", "alpha")) -> str:
    fix = fix or {}
    j0, j1, a0, a1 = window
    span_x, span_y = float(j1 - j0), float(a1 - a0)

    def px(x, y):
        return (MARGIN + SIZE * float(x - j0) / span_x, MARGIN + SIZE * (1 - float(y - a0) / span_y))

    total = SIZE + 2 * MARGIN
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": str(total),
        "height": str(total),
        "viewBox": f"0 0 {total} {total}",
        "data-catalog": catalog_id,
        "data-window": ",".join(fmt(v) for v in window),
        "data-fix": ";".join(f"{k}={fmt(v)}" for k, v in sorted(fix.items())),
    })
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(total), "height": str(total), "fill": "white"})
    full = [c for c in cells if c.dimension == 2 and not c.region.equalities()]
    lower = [c for c in cells if c not in full]
    for n, cell in enumerate(full):
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in (px(*v) for v in cell.vertices))
        ET.SubElement(svg, "polygon", {
            "points": coords,
            "fill": PALETTE[n % len(PALETTE)],
            "stroke": "black",
            "stroke-width": "1",
            "class": "cell",
            "data-forms": ",".join(str(i) for i in cell.forms),
            "data-vertices": ";".join(f"{fmt(x)},{fmt(y)}" for x, y in cell.vertices),
        })
        cx = sum(v[0] for v in cell.vertices) / len(cell.vertices)
        cy = sum(v[1] for v in cell.vertices) / len(cell.vertices)
        tx, ty = px(cx, cy)
        label = ET.SubElement(svg, "text", {"x": f"{tx:.1f}", "y": f"{ty:.1f}", "font-size": "14",
                                            "text-anchor": "middle", "font-family": "sans-serif"})
        label.text = "U" + ",".join(str(i) for i in cell.forms)
    for cell in lower:
        if len(cell.vertices) == 2:
            (x1, y1), (x2, y2) = (px(*v) for v in cell.vertices)
            ET.SubElement(svg, "line", {
                "x1": f"{x1:.3f}", "y1": f"{y1:.3f}", "x2": f"{x2:.3f}", "y2": f"{y2:.3f}",
                "stroke": "#d62728", "stroke-width": "3", "class": "tie",
                "data-forms": ",".join(str(i) for i in cell.forms),
                "data-vertices": ";".join(f"{fmt(x)},{fmt(y)}" for x, y in cell.vertices),
            })
        elif len(cell.vertices) == 1:
            x, y = px(*cell.vertices[0])
            ET.SubElement(svg, "circle", {
                "cx": f"{x:.3f}", "cy": f"{y:.3f}", "r": "4", "fill": "#d62728", "class": "tie",
                "data-forms": ",".join(str(i) for i in cell.forms),
                "data-vertices": f"{fmt(cell.vertices[0][0])},{fmt(cell.vertices[0][1])}",
            })
    for text, x, y, rot in (
        (axis_names[0], MARGIN + SIZE / 2, total - 15, None),
        (axis_names[1], 20, MARGIN + SIZE / 2, "-90"),
    ):
        attrs = {"x": f"{x:.1f}", "y": f"{y:.1f}", "font-size": "16", "text-anchor": "middle",
                 "font-family": "sans-serif"}
        if rot:
            attrs["transform"] = f"rotate({rot} {x:.1f} {y:.1f})"
        ET.SubElement(svg, "text", attrs).text = text
    for val, (x, y), anchor in (
        (j0, px(j0, a0), "start"), (j1, px(j1, a0), "end"),
    ):
        ET.SubElement(svg, "text", {"x": f"{x:.1f}", "y": f"{y + 18:.1f}", "font-size": "12",
                                    "text-anchor": anchor}).text = fmt(val)
    for val, (x, y) in ((a0, px(j0, a0)), (a1, px(j0, a1))):
        ET.SubElement(svg, "text", {"x": f"{x - 6:.1f}", "y": f"{y + 4:.1f}", "font-size": "12",
                                    "text-anchor": "end"}).text = fmt(val)
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def plot_phase_diagram(catalog: EnergyCatalog, window, *, catalog_id: str,
                       fix: dict[int, Fraction] | None = None) -> tuple[str, list[Cell]]:
    cells = phase_cells(catalog, window, fix)
    free = [i for i in range(1, catalog.r + 1) if i not in (fix or {})]
    alpha_name = "alpha" if catalog.r == 1 else f"alpha{free[0]}"
    return render_svg(cells, window, catalog_id=catalog_id, fix=fix, axis_names=("J", alpha_name)), cells


def _params(catalog: EnergyCatalog, x: Fraction, y: Fraction, fix: dict[int, Fraction]) -> ParameterPoint:
    vec: list[Fraction] = [x]
    free = iter([y])
    for i in range(1, catalog.r + 1):
        vec.append(fix[i] if i in fix else next(free))
    return ParameterPoint.from_vector(vec)


def verify_svg(svg_text: str, catalog: EnergyCatalog, n_samples: int = 1000, seed: int = 0) -> list[dict]:
    """Sample rational points in every labelled cell and confirm its forms are minimal there.

    Works from the SVG alone (plus the catalog): vertices are read back from
    the ``data-vertices`` attributes and points are random convex combinations.
    """
    root = ET.fromstring(svg_text)
    fix = {}
    if root.get("data-fix"):
        for part in root.get("data-fix").split(";"):
            k, v = part.split("=")
            fix[int(k)] = parse_rational(v)
    rng = random.Random(seed)
    results = []
    for el in root.iter():
        if el.get("data-forms") is None:
            continue
        forms = [int(i) for i in el.get("data-forms").split(",")]
        verts = [tuple(parse_rational(c) for c in v.split(",")) for v in el.get("data-vertices").split(";")]
        failures = []
        for _ in range(n_samples):
            w = [Fraction(rng.randint(1, 1000)) for _ in verts]
            tot = sum(w)
            x = sum(wi * v[0] for wi, v in zip(w, verts)) / tot
            y = sum(wi * v[1] for wi, v in zip(w, verts)) / tot
            p = _params(catalog, x, y, fix)
            low = catalog.minimum(p)
            if any(catalog.form(i).evaluate(p) != low for i in forms):
                failures.append([fmt(x), fmt(y)])
        results.append({"forms": forms, "kind": el.get("class"), "samples": n_samples, "ok": not failures, "failures": failures[:5]})
    return results
