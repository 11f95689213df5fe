"""Static SVG export of one attribute's rangeset over the embedding."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .binning import PALETTES
from .document import RangesetDocument

GLYPH_RADIUS = 3.0
OUTLIER_RADIUS_FACTOR = 1.8
FILL_OPACITY = 0.5


def _resolve_color(key: str, palette: dict[str, str]) -> str:
    return palette.get(key, key)


def export_svg(
    doc: RangesetDocument,
    attribute: str,
    width: int = 800,
    height: int = 600,
    palette_name: str = "spectral5",
    glyph_radius: float = GLYPH_RADIUS,
) -> bytes:
    """Scatterplot of the embedding with the attribute's bin polygons drawn
    as translucent fills beneath the glyphs; outliers re-drawn on top with
    an enlarged radius."""
    rangeset = doc.rangeset_fragment(attribute)
    coords = doc.fragment("embedding")["coords"]
    palette = PALETTES.get(palette_name, PALETTES["spectral5"])

    xs = [p[0] for p in coords]
    ys = [p[1] for p in coords]
    margin = 2.5 * glyph_radius
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span_x = (max_x - min_x) or 1.0
    span_y = (max_y - min_y) or 1.0

    def sx(x: float) -> float:
        return margin + (x - min_x) / span_x * (width - 2 * margin)

    def sy(y: float) -> float:
        return height - margin - (y - min_y) / span_y * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(attribute)}</title>",
        '<g id="contours">',
    ]
    point_color: dict[int, str] = {}
    outlier_points: list[tuple[int, str]] = []
    for b in rangeset["bins"]:
        color = _resolve_color(b["color"], palette)
        for pid in b["member_ids"]:
            point_color[pid] = color
        for pid in b["outlier_ids"]:
            outlier_points.append((pid, color))
        for polygon in b["polygons"]:
            path = []
            for ring in polygon:
                path.append(
                    "M "
                    + " L ".join(f"{sx(x):.2f} {sy(y):.2f}" for x, y in ring[:-1])
                    + " Z"
                )
            parts.append(
                f'<path class="contour" d={quoteattr(" ".join(path))} '
                f'fill={quoteattr(color)} fill-opacity="{FILL_OPACITY}" '
                f'fill-rule="evenodd" stroke={quoteattr(color)} stroke-width="1"/>'
            )
    parts.append("</g>")

    outlier_ids = {pid for pid, _ in outlier_points}
    parts.append('<g id="points">')
    for pid, (x, y) in enumerate(coords):
        if pid in outlier_ids:
            continue
        color = point_color.get(pid, "#888888")
        parts.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{glyph_radius}" '
            f'fill={quoteattr(color)} stroke="#333333" stroke-width="0.5"/>'
        )
    parts.append("</g>")

    parts.append('<g id="outliers">')
    r_out = glyph_radius * OUTLIER_RADIUS_FACTOR
    for pid, color in outlier_points:
        x, y = coords[pid]
        parts.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{r_out}" '
            f'fill={quoteattr(color)} stroke="#333333" stroke-width="1"/>'
        )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")
