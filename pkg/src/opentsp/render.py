"""Standalone SVG drawings of collection routes.

The start is a red circle, collectibles are small dark dots, and each route
is a polyline from the start through its visit order. A legend lists each
route with its length rounded to whole map units. Map y grows downwards,
as in screen coordinates.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence, Union
from xml.sax.saxutils import escape, quoteattr

from .geometry import Instance, InvalidRouteError, Route, path_length

MAX_ROUTES = 4

DEFAULT_STYLES = [
    {"stroke": "#1f77b4", "dasharray": ""},
    {"stroke": "#ff7f0e", "dasharray": "6 3"},
    {"stroke": "#2ca02c", "dasharray": ""},
    {"stroke": "#9467bd", "dasharray": "2 2"},
]


def _num(v: float) -> str:
    s = f"{v:.10g}"
    return "0" if s == "-0" else s


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def render_routes_svg(
    instance: Instance,
    routes: Union[Mapping[str, Route], Sequence[tuple[str, Route]]] = (),
    styles: Mapping[str, dict] | None = None,
    width_px: int = 600,
) -> str:
    """Return an SVG document drawing ``routes`` over ``instance``.

    ``routes`` is an ordered mapping (or list of pairs) from label to route.
    ``styles`` may override ``stroke``/``dasharray`` per label.
    """
    items = list(routes.items()) if isinstance(routes, Mapping) else list(routes)
    if len(items) > MAX_ROUTES:
        raise ValueError(f"at most {MAX_ROUTES} routes per drawing, got {len(items)}")
    items = [(label, r if isinstance(r, Route) else Route(tuple(r))) for label, r in items]
    for label, r in items:
        try:
            r.validate(instance.n)
        except InvalidRouteError as exc:
            raise InvalidRouteError(f"route {label!r}: {exc}") from None

    pts = [instance.start, *instance.collectibles]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    margin = 0.05 * span
    # square canvas centred on the bounding box so the legend always fits
    side = span + 2 * margin
    vx = (min(xs) + max(xs)) / 2 - side / 2
    vy = (min(ys) + max(ys)) / 2 - side / 2
    vw = vh = side
    height_px = width_px
    unit = span / 100.0

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{height_px}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">',
        f'<rect class="background" x="{_num(vx)}" y="{_num(vy)}" width="{_num(vw)}" '
        f'height="{_num(vh)}" fill="white"/>',
        '<g class="routes" fill="none">',
    ]
    totals = []
    for k, (label, r) in enumerate(items):
        style = dict(DEFAULT_STYLES[k])
        if styles and label in styles:
            style.update(styles[label])
        total = path_length(instance, r)
        totals.append((label, total, style))
        coords = [instance.start] + [instance.collectibles[i] for i in r.order]
        points = " ".join(f"{_num(p.x)},{_num(p.y)}" for p in coords)
        dash = f' stroke-dasharray="{style["dasharray"]}"' if style["dasharray"] else ""
        out.append(
            f'<polyline class="route" data-label={quoteattr(label)} stroke="{style["stroke"]}" '
            f'stroke-width="{_num(0.4 * unit)}"{dash} points="{points}"/>'
        )
    out.append("</g>")

    out.append('<g class="collectibles" fill="#333333">')
    for i, c in enumerate(instance.collectibles):
        out.append(
            f'<circle class="collectible" data-index="{i}" cx="{_num(c.x)}" cy="{_num(c.y)}" r="{_num(unit)}"/>'
        )
    out.append("</g>")
    s = instance.start
    out.append(
        f'<circle class="start" cx="{_num(s.x)}" cy="{_num(s.y)}" r="{_num(1.8 * unit)}" '
        f'fill="none" stroke="red" stroke-width="{_num(0.5 * unit)}"/>'
    )

    font = 3 * unit
    out.append(f'<g class="legend" font-family="sans-serif" font-size="{_num(font)}">')
    for k, (label, total, style) in enumerate(totals):
        y = vy + margin + font * (k + 1)
        out.append(
            f'<text x="{_num(vx + margin)}" y="{_num(y)}" fill="{style["stroke"]}">'
            f"{escape(label)}: {round_half_up(total)}</text>"
        )
    if totals:
        caption = "-".join(str(round_half_up(t)) for _, t, _ in totals)
        y = vy + margin + font * (len(totals) + 1)
        out.append(f'<text class="caption" x="{_num(vx + margin)}" y="{_num(y)}" fill="black">{caption}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
