"""Deterministic SVG 1.1 diagrams of a configured mesh.

Each TBU sits on its lattice edge and is drawn as two short arms, one per
side of the edge. A bar TBU keeps its arms parallel; a cross TBU draws them
crossed. Highlighted paths are red polylines through the arms they use.
"""
from __future__ import annotations

import math
from typing import Sequence

from .config import Configuration
from .mesh import MeshGraph, _centroid, vertex_xy
from .tracer import TracedPath

SCALE = 80.0
MARGIN = 30.0
INSET = 0.22
OFFSET = 0.09


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def port_positions(mesh: MeshGraph) -> list[tuple[tuple[float, float], ...]]:
    """Drawing position of every TBU port in mesh coordinates (y up)."""
    fam = mesh.spec.family
    out = []
    for seg, tbu in zip(mesh.segments, mesh.tbus):
        (x0, y0), (x1, y1) = vertex_xy(fam, seg[0]), vertex_xy(fam, seg[1])
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy)
        ux, uy = dx / norm, dy / norm
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        row = []
        for end in (0, 1):
            ex, ey = (x0, y0) if end == 0 else (x1, y1)
            sign = 1 if end == 0 else -1
            for cell in (tbu.cell_a, tbu.cell_b):
                cx, cy = _centroid(fam, cell)
                nx, ny = -uy, ux
                if (cx - mx) * nx + (cy - my) * ny < 0:
                    nx, ny = -nx, -ny
                row.append((ex + sign * INSET * norm * ux + OFFSET * nx, ey + sign * INSET * norm * uy + OFFSET * ny))
        out.append(tuple(row))
    return out


def _port_walk(mesh: MeshGraph, cross: Sequence[bool], start: int) -> list[tuple[int, int, int]]:
    """``(tbu, entry port, exit port)`` for the path leaving floating node ``start``."""
    t, p = mesh.node_ports[start][0]
    steps = []
    while True:
        q = p ^ 3 if cross[t] else p ^ 2
        steps.append((t, p, q))
        n = mesh.port_nodes[t][q]
        if mesh.floating[n]:
            return steps
        a, b = mesh.node_ports[n]
        t, p = b if a[0] == t and a[1] == q else a


def render_svg(mesh: MeshGraph, config: Configuration, highlight: Sequence[TracedPath] = ()) -> str:
    ports = port_positions(mesh)
    fam = mesh.spec.family
    pts = [vertex_xy(fam, v) for seg in mesh.segments for v in seg]
    xmin, xmax = min(p[0] for p in pts), max(p[0] for p in pts)
    ymin, ymax = min(p[1] for p in pts), max(p[1] for p in pts)
    width = (xmax - xmin) * SCALE + 2 * MARGIN
    height = (ymax - ymin) * SCALE + 2 * MARGIN

    def xy(p: tuple[float, float]) -> str:
        return f"{_fmt((p[0] - xmin) * SCALE + MARGIN)},{_fmt((ymax - p[1]) * SCALE + MARGIN)}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f"<title>{mesh.spec} {config.to_bits()}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
        '<g stroke="#bbbbbb" stroke-width="1" stroke-dasharray="3,3">',
    ]
    for u, v in mesh.segments:
        a, b = xy(vertex_xy(fam, u)).split(","), xy(vertex_xy(fam, v)).split(",")
        lines.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"/>')
    lines.append("</g>")

    lines.append('<g stroke="black" stroke-width="2" fill="none">')
    for t, row in enumerate(ports):
        state = "cross" if config.cross[t] else "bar"
        arms = ((0, 3), (1, 2)) if config.cross[t] else ((0, 2), (1, 3))
        d = " ".join(f"M{xy(row[p])} L{xy(row[q])}" for p, q in arms)
        lines.append(f'<path class="{state}" data-tbu="{mesh.tbus[t]}" d="{d}"/>')
    lines.append("</g>")

    lines.append('<g fill="#444444">')
    for node in mesh.floating_nodes():
        t, p = mesh.node_ports[node][0]
        cx, cy = xy(ports[t][p]).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="2.5"/>')
    lines.append("</g>")

    if highlight:
        lines.append('<g stroke="red" stroke-width="3" fill="none" stroke-linejoin="round">')
        index = mesh.node_index
        for path in highlight:
            steps = _port_walk(mesh, config.cross, index[path.start])
            coords = []
            for t, p, q in steps:
                coords += [xy(ports[t][p]), xy(ports[t][q])]
            lines.append(f'<polyline data-length="{path.length}" points="{" ".join(coords)}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
