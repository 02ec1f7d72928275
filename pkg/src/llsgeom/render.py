"""Deterministic SVG drawings of kernels, broken lines and sails.

Coordinates are converted to floats only here, for display, and printed
with a fixed number of decimals so equal scenes give equal bytes.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import EmptyScene
from .forms import kernel_directions

__all__ = ["render_scene"]

PALETTE = ("#1f4e9c", "#b3401a", "#2d7a3a", "#7a2d6e")


def _f(x) -> str:
    s = f"{float(x):.2f}"
    return "0.00" if s == "-0.00" else s


class _Viewport:
    def __init__(self, box, width):
        xmin, ymin, xmax, ymax = box
        self.xmin, self.ymax = xmin, ymax
        self.scale = width / (xmax - xmin)
        self.width = width
        self.height = round((ymax - ymin) * self.scale)
        self.box = box

    def __call__(self, x, y):
        return (float(x) - self.xmin) * self.scale, (self.ymax - float(y)) * self.scale

    def ray_end(self, d):
        """Far point along direction d, well outside the box."""
        dx, dy = float(d[0]), float(d[1])
        n = max(abs(dx), abs(dy))
        reach = 4 * max(abs(v) for v in self.box)
        return dx / n * reach, dy / n * reach


def _auto_box(objects):
    pts = [(0.0, 0.0)]
    for o in objects:
        if o["type"] in ("line", "sail"):
            pts += [(float(p[0]), float(p[1])) for p in o["vertices"]]
        elif o["type"] == "point":
            pts.append((float(o["at"][0]), float(o["at"][1])))
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    if max(xs) - min(xs) < 1e-9 and max(ys) - min(ys) < 1e-9:
        return (-5.0, -5.0, 5.0, 5.0)
    pad = 0.15 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _label(text, x, y, cls):
    # trailing digits become a subscript: A12 -> A with subscript 12
    head = text.rstrip("0123456789")
    sub = text[len(head):]
    inner = escape(head) + (f'<tspan class="sub" dy="3">{sub}</tspan>' if sub else "")
    return f'<text class="{cls}" x="{_f(x)}" y="{_f(y)}">{inner}</text>'


def render_scene(scene: dict) -> str:
    """SVG 1.1 text for a validated scene (see ``scene.schema.json``)."""
    from .io import read_form
    from .exactnum import parse_scalar

    objects = scene.get("objects", [])
    if not objects:
        raise EmptyScene("nothing to draw")
    # exact parse first so bad scalars fail before drawing
    def pt(p):
        return parse_scalar(p[0]), parse_scalar(p[1])

    box = tuple(float(v) for v in scene["viewport"]) if "viewport" in scene else _auto_box(
        [dict(o, vertices=[pt(p) for p in o["vertices"]]) if "vertices" in o else
         (dict(o, at=pt(o["at"])) if "at" in o else o) for o in objects])
    if box[2] <= box[0] or box[3] <= box[1]:
        raise EmptyScene("viewport has no area")
    vp = _Viewport(box, scene.get("width", 600))
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{vp.width}" '
        f'height="{vp.height}" viewBox="0 0 {vp.width} {vp.height}">',
        "<style>"
        ".axis{stroke:#999;stroke-width:0.8}"
        ".kernel{stroke:#444;stroke-width:1.2;stroke-dasharray:6 4;fill:none}"
        ".line{stroke-width:1.8;fill:none}"
        ".sail{stroke-width:1.5;fill-opacity:0.18}"
        ".vertex{stroke:none}"
        ".lbl{font-family:serif;font-size:13px}"
        ".sub{font-size:9px}"
        "</style>",
        f'<clipPath id="view"><rect x="0" y="0" width="{vp.width}" height="{vp.height}"/></clipPath>',
        '<g clip-path="url(#view)">',
    ]
    x0, y0 = vp(0, 0)
    out.append(f'<line class="axis" x1="0" y1="{_f(y0)}" x2="{vp.width}" y2="{_f(y0)}"/>')
    out.append(f'<line class="axis" x1="{_f(x0)}" y1="0" x2="{_f(x0)}" y2="{vp.height}"/>')
    labels = []
    for i, o in enumerate(objects):
        color = PALETTE[i % len(PALETTE)]
        kind = o["type"]
        if kind == "kernel":
            for d in kernel_directions(read_form(o["form"])):
                ex, ey = vp.ray_end(d)
                ax, ay = vp(-ex, -ey)
                bx, by = vp(ex, ey)
                out.append(f'<line class="kernel" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}"/>')
        elif kind == "line":
            vs = [vp(*pt(p)) for p in o["vertices"]]
            path = " ".join(f"{_f(x)},{_f(y)}" for x, y in vs)
            out.append(f'<polyline class="line" stroke="{color}" points="{path}"/>')
            prefix = o.get("label", "A")
            for k, (x, y) in enumerate(vs):
                out.append(f'<circle class="vertex" fill="{color}" cx="{_f(x)}" cy="{_f(y)}" r="3"/>')
                labels.append(_label(f"{prefix}{k}", x + 5, y - 6, "lbl"))
        elif kind == "sail":
            r1, r2 = (vp.ray_end(pt(r)) for r in o["rays"])
            vs = [vp(*pt(p)) for p in o["vertices"]]
            region = [vp(*r1)] + vs + [vp(*r2)]
            path = " ".join(f"{_f(x)},{_f(y)}" for x, y in region)
            out.append(f'<polygon class="sail" fill="{color}" stroke="{color}" points="{path}"/>')
            for x, y in vs:
                out.append(f'<circle class="vertex" fill="{color}" cx="{_f(x)}" cy="{_f(y)}" r="2.5"/>')
            if "label" in o:
                labels.append(_label(o["label"], vs[0][0] + 5, vs[0][1] - 6, "lbl"))
        elif kind == "point":
            x, y = vp(*pt(o["at"]))
            out.append(f'<circle class="vertex" fill="{color}" cx="{_f(x)}" cy="{_f(y)}" r="3"/>')
            if "label" in o:
                labels.append(_label(o["label"], x + 5, y - 6, "lbl"))
    out.append("</g>")
    out.extend(labels)
    out.append("</svg>")
    return "\n".join(out) + "\n"
