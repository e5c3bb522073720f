"""Static SVG drawings of level-1 networks, optionally coloured by vertex values."""

from __future__ import annotations

import math

from .cells import CellStructure, adjacency

Q = ((0.5, math.sqrt(3) / 2), (0.0, 0.0), (1.0, 0.0))  # q0, q1, q2


def positions(s: CellStructure) -> list[tuple[float, float]]:
    if s.coords is not None:
        n = s.level
        return [
            (Q[1][0] + a / n * (Q[2][0] - Q[1][0]) + b / n * (Q[0][0] - Q[1][0]),
             Q[1][1] + a / n * (Q[2][1] - Q[1][1]) + b / n * (Q[0][1] - Q[1][1]))
            for a, b in s.coords
        ]
    # no embedding: boundary on the outer triangle, the rest on a small circle
    cx = sum(x for x, _ in Q) / 3
    cy = sum(y for _, y in Q) / 3
    pos = [(cx, cy)] * s.vertex_count
    for j, p in enumerate(s.boundary):
        angle = math.pi / 2 + 2 * math.pi * j / s.k
        pos[p] = Q[j] if s.k == 3 else (cx + 0.5 * math.cos(angle), cy + 0.5 * math.sin(angle))
    inner = s.interior
    for t, p in enumerate(inner):
        angle = math.pi / 2 + 2 * math.pi * t / max(len(inner), 1)
        pos[p] = (cx + 0.18 * math.cos(angle), cy + 0.18 * math.sin(angle)) if len(inner) > 1 else (cx, cy)
    return pos


def _color(t: float) -> str:
    # blue (low) -> white -> red (high)
    t = min(max(t, 0.0), 1.0)
    if t < 0.5:
        u = t / 0.5
        rgb = (int(40 + 215 * u), int(80 + 175 * u), 255)
    else:
        u = (t - 0.5) / 0.5
        rgb = (255, int(255 - 175 * u), int(255 - 215 * u))
    return "#%02x%02x%02x" % rgb


def to_svg(s: CellStructure, values=None, size: int = 480) -> str:
    pos = positions(s)
    pad = 30
    scale = size - 2 * pad

    def xy(p):
        x, y = pos[p]
        return pad + x * scale, size - pad - y * scale

    g = adjacency(s)
    radius = max(2.0, min(8.0, 120.0 / (s.level or 4)))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for p, q in sorted(g.edges):
        (x1, y1), (x2, y2) = xy(p), xy(q)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="#555" stroke-width="1"/>')
    if values is not None:
        vals = [float(x) for x in values]
        lo, hi = min(vals), max(vals)
        span = hi - lo or 1.0
    boundary = set(s.boundary)
    for p in range(s.vertex_count):
        x, y = xy(p)
        fill = _color((vals[p] - lo) / span) if values is not None else "#ddd"
        stroke = ' stroke="black" stroke-width="2.5"' if p in boundary else ' stroke="#333" stroke-width="0.8"'
        title = f"<title>{p}: {values[p]}</title>" if values is not None else f"<title>{p}</title>"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius:.1f}" fill="{fill}"{stroke}>{title}</circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
