"""Text and SVG drawings of grid representations."""

from __future__ import annotations

import string

from .graph import maximal_cliques
from .grid import EpgRepresentation, find_claw, intersection_graph

GLYPHS = string.ascii_lowercase + string.ascii_uppercase + string.digits
SHARED = "#"
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def glyph(v: int) -> str:
    return GLYPHS[v] if v < len(GLYPHS) else "?"


def claw_centers(rep: EpgRepresentation):
    """Centers of maximal cliques that sit on a claw without a common edge."""
    masks = rep.edge_masks
    out = set()
    for clique in maximal_cliques(intersection_graph(rep)):
        common = -1
        for v in clique:
            common &= masks[v]
        if not common:
            claw = find_claw(rep, clique)
            if claw is not None:
                out.add(claw.center)
    return sorted(out)


def render_ascii(rep: EpgRepresentation) -> str:
    """Point cells at even offsets, edge cells between them; top row is the highest y."""
    w, h = rep.width, rep.height
    cells: dict[tuple[int, int], set[int]] = {}
    for v, p in enumerate(rep.paths):
        for q in p.points:
            cells.setdefault((2 * q.x, 2 * q.y), set()).add(v)
        for e in p.edges:
            cells.setdefault((e.a.x + e.b.x, e.a.y + e.b.y), set()).add(v)
    claws = {(2 * c.x, 2 * c.y) for c in claw_centers(rep)}
    lines = []
    for row in range(2 * h - 2, -1, -1):
        chars = []
        for col in range(2 * w - 1):
            owners = cells.get((col, row))
            if (col, row) in claws:
                chars.append("@")
            elif owners:
                chars.append(glyph(min(owners)) if len(owners) == 1 else SHARED)
            elif col % 2 == 0 and row % 2 == 0:
                chars.append(".")
            else:
                chars.append(" ")
        lines.append("".join(chars).rstrip())
    lines.append("")
    for v, p in enumerate(rep.paths):
        lines.append(f"{glyph(v)} {v} : {p}")
    if claws:
        lines.append(f"@ claw center {' '.join(f'({c.x},{c.y})' for c in claw_centers(rep))}")
    return "\n".join(lines) + "\n"


def render_svg(rep: EpgRepresentation, scale: int = 40) -> str:
    w, h = rep.width, rep.height
    margin = scale // 2
    n = max(rep.n, 1)
    step = scale / (3 * n)
    X = lambda x, off: margin + x * scale + off  # noqa: E731
    Y = lambda y, off: margin + (h - 1 - y) * scale - off  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * margin + (w - 1) * scale}" '
        f'height="{2 * margin + (h - 1) * scale}">'
    ]
    for x in range(w):
        for y in range(h):
            out.append(f'<circle cx="{X(x, 0)}" cy="{Y(y, 0)}" r="1.5" fill="#bbb"/>')
    for v, p in enumerate(rep.paths):
        off = round((v - (n - 1) / 2) * step, 2)
        pts = " ".join(f"{X(q.x, off)},{Y(q.y, off)}" for q in p.corners())
        color = PALETTE[v % len(PALETTE)]
        out.append(
            f'<polyline data-vertex="{v}" points="{pts}" fill="none" stroke="{color}" stroke-width="3"/>'
        )
    for c in claw_centers(rep):
        out.append(f'<circle class="claw" cx="{X(c.x, 0)}" cy="{Y(c.y, 0)}" r="6" fill="none" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(rep: EpgRepresentation, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(rep)
    if fmt == "svg":
        return render_svg(rep)
    raise ValueError(f"unknown format {fmt!r}; use ascii or svg")
