"""Deterministic SVG figures and CPLEX-style LP exports.

All geometry stays rational until the final coordinate conversion; the same
instance always renders to the same bytes.  The display transform scales the
axes independently (the reduction polygons are far taller than wide) and the
factors are recorded in a comment at the top of the SVG.
"""

from __future__ import annotations

from .formats import InstanceFile
from .polytope import h_to_v
from .ratgeo import rat
from .search import Walk

__all__ = ["svg_document", "lp_document"]

_W, _H = 1000.0, 620.0


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def svg_document(inst: InstanceFile, walk: Walk | None = None) -> str:
    verts = h_to_v(inst.polygon).vertices
    pts = list(verts) + [inst.start]
    if inst.target is not None:
        pts.append(inst.target)
    if walk is not None:
        pts.extend(walk.points)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    spanx = xmax - xmin
    spany = ymax - ymin
    padx = spanx / 20 if spanx else rat(1, 20)
    pady = spany / 20 if spany else rat(1, 20)
    x0, y0 = xmin - padx, ymin - pady
    sx = _W / float(spanx + 2 * padx)
    sy = _H / float(spany + 2 * pady)

    def to_px(p) -> tuple[float, float]:
        return (float(p.x - x0) * sx, _H - float(p.y - y0) * sy)

    def path(points, close: bool) -> str:
        cmds = []
        for i, p in enumerate(points):
            px, py = to_px(p)
            cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(px)} {_fmt(py)}")
        if close:
            cmds.append("Z")
        return " ".join(cmds)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W:g} {_H:g}">',
        f"<!-- display scaling is nonuniform: x is stretched by {sx:.6g} px/unit, "
        f"y by {sy:.6g} px/unit; the drawn shape is distorted for readability -->",
        f'<path d="{path(verts, close=True)}" fill="#eef2fb" stroke="#27427c" '
        f'stroke-width="1.5"/>',
    ]
    for v in verts:
        px, py = to_px(v)
        out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2.5" fill="#27427c"/>')
    if walk is not None and len(walk.points) > 1:
        out.append(
            f'<path d="{path(walk.points, close=False)}" fill="none" '
            f'stroke="#c2410c" stroke-width="2"/>'
        )
        for p in walk.points:
            px, py = to_px(p)
            out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" fill="#c2410c"/>')
    spx, spy = to_px(inst.start)
    out.append(f'<circle cx="{_fmt(spx)}" cy="{_fmt(spy)}" r="5" fill="#15803d"/>')
    if inst.target is not None:
        tpx, tpy = to_px(inst.target)
        out.append(
            f'<circle cx="{_fmt(tpx)}" cy="{_fmt(tpy)}" r="5" fill="none" '
            f'stroke="#b91c1c" stroke-width="2"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _terms(coeffs: list[tuple[int, str]]) -> str:
    parts: list[str] = []
    for coeff, name in coeffs:
        if coeff == 0:
            continue
        if not parts:
            parts.append(f"{coeff} {name}" if coeff > 0 else f"- {-coeff} {name}")
        else:
            sign = "+" if coeff > 0 else "-"
            parts.append(f"{sign} {abs(coeff)} {name}")
    return " ".join(parts) if parts else "0 x"


def lp_document(inst: InstanceFile) -> str:
    """CPLEX LP text: maximize the cost over the polygon, variables free.

    Rows are already integral, so the export is lossless.
    """
    out = [
        "\\ circuitwalks instance export",
        "Maximize",
        f" obj: {_terms([(inst.cost.dx, 'x'), (inst.cost.dy, 'y')])}",
        "Subject To",
    ]
    for i, (a1, a2, b) in enumerate(inst.polygon.rows, start=1):
        out.append(f" r{i}: {_terms([(a1, 'x'), (a2, 'y')])} <= {b}")
    out += ["Bounds", " x free", " y free", "End"]
    return "\n".join(out) + "\n"
