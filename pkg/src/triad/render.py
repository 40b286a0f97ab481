"""SVG drawing of a 2-D partition rebuilt from its trace.

The trace only records which cell was split at each step, so the partition
is replayed with the same split geometry the engine used.  No objective is
evaluated.  Trial points are numbered 1, 2, 3, ... in evaluation order.
"""

from __future__ import annotations

from typing import Sequence

from . import geometry as geo
from .engine import TraceEvent
from .errors import RenderError
from .strategies import split_geometry

VIEW = 600
MARGIN = 10


def replay_cells(events: Sequence[TraceEvent]) -> list[geo.Cell]:
    if not events or events[0].domain is None:
        raise RenderError("trace does not start with an initialisation event")
    root = geo.root_cell(events[0].domain)
    cells = {root.id: root}
    for ev in events[1:]:
        if ev.cell not in cells:
            raise RenderError(f"trace splits unknown cell {ev.cell} at k={ev.k}")
        _, children, _ = split_geometry(ev.strategy, cells[ev.cell], len(cells) + 1)
        for c in children:
            cells[c.id] = c
        if len(cells) != ev.cells:
            raise RenderError(f"replay diverged at k={ev.k}: {len(cells)} cells, trace says {ev.cells}")
    return [cells[cid] for cid in sorted(cells)]


def evaluated_points(events: Sequence[TraceEvent]) -> list[geo.Point]:
    return [p for ev in events for p, hit in ev.candidates if not hit]


def render_svg(events: Sequence[TraceEvent]) -> str:
    if not events or events[0].domain is None:
        raise RenderError("empty trace")
    domain = events[0].domain
    if len(domain) != 2:
        raise RenderError(f"only 2-D traces can be rendered, got N={len(domain)}")
    cells = replay_cells(events)
    points = evaluated_points(events)

    (x0, x1), (y0, y1) = [(float(lo), float(hi)) for lo, hi in domain]
    span = VIEW - 2 * MARGIN

    def sx(x: float) -> float:
        return MARGIN + (x - x0) / (x1 - x0) * span

    def sy(y: float) -> float:
        # y axis points up, as in a plotted figure
        return VIEW - MARGIN - (y - y0) / (y1 - y0) * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" '
        f'viewBox="0 0 {VIEW} {VIEW}">',
        '<g fill="none" stroke="black" stroke-width="1">',
    ]
    for c in cells:
        lo, hi = c.box()
        left, right = sx(float(lo[0])), sx(float(hi[0]))
        top, bottom = sy(float(hi[1])), sy(float(lo[1]))
        out.append(
            f'<rect class="cell" data-id="{c.id}" x="{left:.3f}" y="{top:.3f}" '
            f'width="{right - left:.3f}" height="{bottom - top:.3f}"/>'
        )
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for n, p in enumerate(points, start=1):
        cx, cy = sx(float(p[0])), sy(float(p[1]))
        out.append(f'<circle class="trial" cx="{cx:.3f}" cy="{cy:.3f}" r="4" fill="black"/>')
        out.append(f'<text class="label" x="{cx + 5:.3f}" y="{cy - 5:.3f}">{n}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
