"""SVG output: one path per tile, optional pale-gray fundamental region."""
from __future__ import annotations

from .tiling import Tiling

UNIT_PX = 40.0
STROKE_PX = 0.5
HIGHLIGHT = "#d9d9d9"
MARGIN_PX = 4.0


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(t: Tiling, highlight: set[int] | None = None, unit_px: float = UNIT_PX) -> str:
    """SVG text for ``t``; tiles whose index is in ``highlight`` are filled gray.

    Output depends only on the tiling, so identical input gives identical bytes.
    """
    highlight = highlight or set()
    polys = [p.float_vertices() for p in t.polygons]
    xs = [z.real for p in polys for z in p] or [0.0]
    ys = [z.imag for p in polys for z in p] or [0.0]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0) * unit_px + 2 * MARGIN_PX
    h = (y1 - min(ys)) * unit_px + 2 * MARGIN_PX

    def px(z: complex) -> str:
        # flip y so the picture is not mirrored
        return f"{_fmt((z.real - x0) * unit_px + MARGIN_PX)},{_fmt((y1 - z.imag) * unit_px + MARGIN_PX)}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]
    for i, p in enumerate(polys):
        d = "M" + " L".join(px(z) for z in p) + " Z"
        fill = HIGHLIGHT if i in highlight else "none"
        lines.append(f'<path d="{d}" fill="{fill}" stroke="black" stroke-width="{_fmt(STROKE_PX)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def region_indices(t: Tiling) -> set[int]:
    """Tile indices recorded as the fundamental region in the tiling's metadata."""
    return set(int(i) for i in t.meta.get("fundamental_region", []))
