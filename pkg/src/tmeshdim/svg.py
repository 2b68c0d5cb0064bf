"""Deterministic SVG drawings of meshes and CVR graphs."""
from __future__ import annotations

from fractions import Fraction

from .cvr import CVRGraph, cvr_graph
from .mesh import TMesh

WIDTH = 480
MARGIN = 20
_STYLE = """
.frame{fill:#ffffff}
.level-0{stroke:#000000;stroke-width:1.6}
.level-1{stroke:#1f4fd8;stroke-width:1.2}
.level-2{stroke:#199a3c;stroke-width:1.0}
.level-3{stroke:#b8860b;stroke-width:0.9}
.level-deep{stroke:#7a3fa0;stroke-width:0.8}
.tledge{stroke:#d81b1b;stroke-width:2.4}
.cvr{stroke:#ff8c00;stroke-width:1.4;stroke-dasharray:4 3}
.vertex{fill:#000000}
.vertex.multi{fill:#d81b1b}
"""


def _level_class(level: int) -> str:
    return f"level-{level}" if level <= 3 else "level-deep"


def _fmt(v: Fraction | float) -> str:
    return f"{float(v):.3f}"


class _Frame:
    def __init__(self, domain):
        x0, y0, x1, y1 = domain
        self.x0, self.y1 = x0, y1
        span = max(x1 - x0, y1 - y0)
        self.k = Fraction(WIDTH - 2 * MARGIN) / span
        self.w = int((x1 - x0) * self.k) + 2 * MARGIN
        self.h = int((y1 - y0) * self.k) + 2 * MARGIN

    def pt(self, x, y) -> tuple[str, str]:
        # SVG y axis points down
        return _fmt(MARGIN + (x - self.x0) * self.k), _fmt(MARGIN + (self.y1 - y) * self.k)


def _line(frame: _Frame, p, q, cls: str) -> str:
    (ax, ay), (bx, by) = frame.pt(*p), frame.pt(*q)
    return f'<line class="{cls}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>'


def render_svg(target: TMesh | CVRGraph, cvr: bool = False, vertices: bool = True) -> bytes:
    """Draw a mesh (t-ledges highlighted, lines coloured by level).

    With ``cvr`` the CVR graph is overlaid.  A ``CVRGraph`` argument draws
    the graph alone on the parent's frame.
    """
    if isinstance(target, CVRGraph):
        mesh, graph, draw_mesh = target.parent, target, False
    else:
        mesh, graph, draw_mesh = target, cvr_graph(target) if cvr else None, True
    frame = _Frame(mesh.domain)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.w}" height="{frame.h}" '
           f'viewBox="0 0 {frame.w} {frame.h}">',
           f"<style>{_STYLE}</style>",
           f'<rect class="frame" x="0" y="0" width="{frame.w}" height="{frame.h}"/>']
    if draw_mesh:
        out.append('<g id="edges">')
        for e in mesh.l_edges:
            p, q = mesh.vertices[e.vertices[0]], mesh.vertices[e.vertices[-1]]
            cls = _level_class(e.level) + (" tledge" if e.is_t else "")
            out.append(_line(frame, p, q, cls))
        out.append("</g>")
        if vertices:
            out.append('<g id="vertices">')
            for v, p in enumerate(mesh.vertices):
                multi = not mesh.on_boundary(p) and mesh.vertex_class(v).multiplicity == "multi"
                x, y = frame.pt(*p)
                out.append(f'<circle class="vertex{" multi" if multi else ""}" cx="{x}" cy="{y}" r="2"/>')
            out.append("</g>")
    if graph is not None:
        out.append('<g id="cvr">')
        for s in graph.segments:
            out.append(_line(frame, (s.x0, s.y0), (s.x1, s.y1), "cvr"))
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
