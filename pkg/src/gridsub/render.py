"""Standalone SVG drawings of subdivisions and triangulations."""

from __future__ import annotations

from pathlib import Path

from .enumeration import Subdivision
from .flips import Triangulation
from .geometry import is_bimonotone

SCALE = 60
MARGIN = 30


def _xy(p, height: int) -> tuple[int, int]:
    # SVG y grows downwards.
    return MARGIN + p.x * SCALE, MARGIN + (height - p.y) * SCALE


def svg_document(obj: Subdivision | Triangulation) -> str:
    cfg = obj.cfg
    if isinstance(obj, Subdivision):
        if not obj.is_valid():
            raise ValueError("refusing to draw an invalid subdivision")
        edges = sorted(obj.edges)
    else:
        errors = obj.invariant_errors()
        if errors:
            raise ValueError(f"refusing to draw an invalid triangulation: {errors[0]}")
        edges = list(obj.key)
    width = max(p.x for p in cfg.points)
    height = max(p.y for p in cfg.points)
    w, h = 2 * MARGIN + width * SCALE, 2 * MARGIN + height * SCALE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f"<title>{cfg.describe()}</title>",
    ]
    hull = " ".join("%d,%d" % _xy(p, height) for p in cfg.hull)
    out.append(f'<polygon points="{hull}" fill="#f4f4f4" stroke="black" stroke-width="3"/>')
    for e in edges:
        (x1, y1), (x2, y2) = _xy(e.a, height), _xy(e.b, height)
        colour = "black" if is_bimonotone(e) else "#d62728"
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" stroke-width="2"/>')
    for p in cfg.points:
        cx, cy = _xy(p, height)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(obj: Subdivision | Triangulation, path) -> Path:
    path = Path(path)
    try:
        path.write_text(svg_document(obj), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc}") from exc
    return path
