"""Planar T-meshes built from axis-aligned segments.

A mesh is assembled from raw segments: overlapping collinear pieces are
merged, every crossing or touching point becomes a vertex, and points where
a line merely passes straight through are dropped.  Faces are found on the
fine grid spanned by all vertex coordinates.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidKnots, InvalidMesh
from .linalg import as_rational

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

BOUNDARY = "boundary"
CROSS_CUT = "cross-cut"
RAY = "ray"
T_LEDGE = "t-ledge"

Point = tuple[Fraction, Fraction]
Rect = tuple[Fraction, Fraction, Fraction, Fraction]

# direction codes at a vertex
_E, _W, _N, _S = "E", "W", "N", "S"


@dataclass(frozen=True)
class Segment:
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction
    level: int = 0

    @classmethod
    def of(cls, p, q, level: int = 0) -> "Segment":
        x0, y0 = (as_rational(c) for c in p)
        x1, y1 = (as_rational(c) for c in q)
        if x0 != x1 and y0 != y1:
            raise InvalidMesh(f"segment {p}-{q} is not axis-aligned")
        if x0 == x1 and y0 == y1:
            raise InvalidMesh(f"segment {p}-{q} has zero length")
        if (x0, y0) > (x1, y1):
            x0, y0, x1, y1 = x1, y1, x0, y0
        return cls(x0, y0, x1, y1, level)

    @property
    def horizontal(self) -> bool:
        return self.y0 == self.y1


@dataclass(frozen=True)
class LEdge:
    """A maximal collinear chain of mesh edges."""

    index: int
    orientation: str
    fixed: Fraction
    vertices: tuple[int, ...]
    kind: str
    level: int = 0

    @property
    def is_t(self) -> bool:
        return self.kind == T_LEDGE


@dataclass(frozen=True)
class VertexClass:
    position: str  # "boundary" or "interior"
    valence: int
    multiplicity: str | None  # "mono"/"multi" for interior vertices


@dataclass(frozen=True)
class MeshStats:
    v: int
    t: int
    t_T: int
    b: int
    b_v: int
    c: int
    n_v: int


@dataclass(frozen=True)
class TConnectedComponent:
    """A set of l-edges together with the vertices that carry cofactors.

    ``vertices`` may be a strict subset of the vertices lying on ``edges``;
    that is how the reduced half of a bipartite partition is represented.
    """

    edges: tuple[LEdge, ...]
    vertices: frozenset[int]
    coords: Mapping[int, Point] = field(compare=False, repr=False, hash=False)

    def edge_vertices(self, e: LEdge) -> tuple[int, ...]:
        return tuple(v for v in e.vertices if v in self.vertices)

    def free_coordinate(self, e: LEdge, v: int) -> Fraction:
        x, y = self.coords[v]
        return x if e.orientation == HORIZONTAL else y

    def restrict(self, edges: Iterable[LEdge], vertices: Iterable[int] | None = None
                 ) -> "TConnectedComponent":
        edges = tuple(edges)
        if vertices is None:
            vertices = {v for e in edges for v in e.vertices if v in self.vertices}
        return TConnectedComponent(edges, frozenset(vertices), self.coords)

    def sub_components(self) -> list["TConnectedComponent"]:
        """Split into edge-vertex connected pieces (ordered by first edge)."""
        parent = list(range(len(self.edges)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        owner: dict[int, int] = {}
        for i, e in enumerate(self.edges):
            for v in self.edge_vertices(e):
                if v in owner:
                    a, b = find(owner[v]), find(i)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    owner[v] = i
        groups: dict[int, list[LEdge]] = defaultdict(list)
        for i, e in enumerate(self.edges):
            groups[find(i)].append(e)
        out = []
        for root in sorted(groups):
            es = groups[root]
            vs = {v for e in es for v in self.edge_vertices(e)}
            out.append(TConnectedComponent(tuple(es), frozenset(vs), self.coords))
        return out

    @property
    def t_count(self) -> int:
        return len(self.edges)

    @property
    def v_count(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TMesh:
    """An immutable planar T-mesh.

    ``faces`` lists each face as the fine-grid rectangles composing it; on an
    ordinary mesh every face is one rectangle and ``cells`` gives them.
    """

    vertices: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[Rect, ...], ...]
    domain: Rect
    is_cvr: bool = False
    vertex_levels: tuple[int, ...] = ()
    edge_levels: tuple[int, ...] = ()

    @cached_property
    def cells(self) -> tuple[Rect, ...]:
        out = []
        for face in self.faces:
            out.append((min(r[0] for r in face), min(r[1] for r in face),
                        max(r[2] for r in face), max(r[3] for r in face)))
        return tuple(out)

    @cached_property
    def vertex_index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    def on_boundary(self, p: Point) -> bool:
        x0, y0, x1, y1 = self.domain
        return p[0] in (x0, x1) or p[1] in (y0, y1)

    @cached_property
    def neighbours(self) -> tuple[dict[str, int], ...]:
        nb: list[dict[str, int]] = [dict() for _ in self.vertices]
        for a, b in self.edges:
            pa, pb = self.vertices[a], self.vertices[b]
            if pa[1] == pb[1]:
                nb[a][_E] = b
                nb[b][_W] = a
            else:
                nb[a][_N] = b
                nb[b][_S] = a
        return tuple(nb)

    def valence(self, v: int) -> int:
        return len(self.neighbours[v])

    @cached_property
    def _edge_level_map(self) -> dict[tuple[int, int], int]:
        levels = self.edge_levels or (0,) * len(self.edges)
        return {e: lv for e, lv in zip(self.edges, levels)}

    @cached_property
    def l_edges(self) -> tuple[LEdge, ...]:
        nb = self.neighbours
        out: list[LEdge] = []
        for orient, back, fwd in ((HORIZONTAL, _W, _E), (VERTICAL, _S, _N)):
            for v in range(len(self.vertices)):
                if fwd not in nb[v] or back in nb[v]:
                    continue
                chain = [v]
                while fwd in nb[chain[-1]]:
                    chain.append(nb[chain[-1]][fwd])
                p0, p1 = self.vertices[chain[0]], self.vertices[chain[-1]]
                fixed = p0[1] if orient == HORIZONTAL else p0[0]
                x0, y0, x1, y1 = self.domain
                if orient == HORIZONTAL and fixed in (y0, y1) or orient == VERTICAL and fixed in (x0, x1):
                    kind = BOUNDARY
                else:
                    ends = self.on_boundary(p0) + self.on_boundary(p1)
                    kind = (T_LEDGE, RAY, CROSS_CUT)[ends]
                level = min(self._edge_level_map[(a, b)] for a, b in zip(chain, chain[1:]))
                out.append(LEdge(0, orient, fixed, tuple(chain), kind, level))
        out.sort(key=lambda e: (e.orientation != HORIZONTAL, e.fixed,
                                self.vertices[e.vertices[0]]))
        return tuple(LEdge(i, e.orientation, e.fixed, e.vertices, e.kind, e.level)
                     for i, e in enumerate(out))

    @cached_property
    def t_ledges(self) -> tuple[LEdge, ...]:
        return tuple(e for e in self.l_edges if e.is_t)

    def vertex_class(self, v: int) -> VertexClass:
        if self.on_boundary(self.vertices[v]):
            return VertexClass("boundary", self.valence(v), None)
        on_t = sum(v in e.vertices for e in self.t_ledges)
        return VertexClass("interior", self.valence(v), "multi" if on_t >= 2 else "mono")

    @property
    def coords(self) -> Mapping[int, Point]:
        return dict(enumerate(self.vertices))

    def component(self, edges: Iterable[LEdge], vertices: Iterable[int] | None = None
                  ) -> TConnectedComponent:
        edges = tuple(edges)
        if vertices is None:
            vertices = {v for e in edges for v in e.vertices}
        return TConnectedComponent(edges, frozenset(vertices), self.coords)

    @cached_property
    def level(self) -> int:
        return max(self.vertex_levels, default=0)

    def segments(self) -> list[Segment]:
        """Maximal segments (one per l-edge) which rebuild this mesh."""
        out = []
        for e in self.l_edges:
            p, q = self.vertices[e.vertices[0]], self.vertices[e.vertices[-1]]
            out.append(Segment(p[0], p[1], q[0], q[1], e.level))
        return out


def l_edges(mesh: TMesh) -> list[LEdge]:
    return list(mesh.l_edges)


def t_connected_component(mesh: TMesh) -> TConnectedComponent:
    """All t-ledges of the mesh with every vertex on them."""
    return mesh.component(mesh.t_ledges)


def mesh_stats(mesh: TMesh) -> MeshStats:
    le = mesh.l_edges
    on_t = {v for e in le if e.is_t for v in e.vertices}
    boundary = [v for v, p in enumerate(mesh.vertices) if mesh.on_boundary(p)]
    b = sum(1 for a, c in mesh.edges
            if _edge_on_boundary(mesh, mesh.vertices[a], mesh.vertices[c]))
    n_v = sum(1 for v, p in enumerate(mesh.vertices)
              if not mesh.on_boundary(p) and v not in on_t)
    return MeshStats(
        v=len(mesh.vertices),
        t=len(le),
        t_T=sum(e.is_t for e in le),
        b=b,
        b_v=len(boundary),
        c=sum(e.kind == CROSS_CUT for e in le),
        n_v=n_v,
    )


def _edge_on_boundary(mesh: TMesh, p: Point, q: Point) -> bool:
    x0, y0, x1, y1 = mesh.domain
    if p[1] == q[1]:
        return p[1] in (y0, y1)
    return p[0] in (x0, x1)


def _merge_intervals(items: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    items = sorted(items)
    out: list[list[Fraction]] = []
    for a, b in items:
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def build_mesh(segments: Iterable, *, is_cvr: bool = False) -> TMesh:
    """Compute the arrangement of axis-aligned segments and validate it.

    ``segments`` holds ``Segment`` objects or point pairs ``((x0, y0), (x1, y1))``.
    Collinear overlaps are merged.  L-nodes (interior valence-2 corners) and
    non-rectangular faces are accepted only when ``is_cvr`` is set.
    """
    segs = [s if isinstance(s, Segment) else Segment.of(*s) for s in segments]
    if not segs:
        raise InvalidMesh("no segments")

    xs = [c for s in segs for c in (s.x0, s.x1)]
    ys = [c for s in segs for c in (s.y0, s.y1)]
    domain = (min(xs), min(ys), max(xs), max(ys))
    if domain[0] == domain[2] or domain[1] == domain[3]:
        raise InvalidMesh("segments do not span a rectangle")

    # line -> list of (lo, hi, level)
    hlines: dict[Fraction, list[tuple[Fraction, Fraction, int]]] = defaultdict(list)
    vlines: dict[Fraction, list[tuple[Fraction, Fraction, int]]] = defaultdict(list)
    for s in segs:
        if s.horizontal:
            hlines[s.y0].append((s.x0, s.x1, s.level))
        else:
            vlines[s.x0].append((s.y0, s.y1, s.level))
    hcover = {y: _merge_intervals([(a, b) for a, b, _ in iv]) for y, iv in hlines.items()}
    vcover = {x: _merge_intervals([(a, b) for a, b, _ in iv]) for x, iv in vlines.items()}

    x0, y0, x1, y1 = domain
    for fixed, cover, lo, hi, name in ((y0, hcover, x0, x1, "bottom"), (y1, hcover, x0, x1, "top"),
                                       (x0, vcover, y0, y1, "left"), (x1, vcover, y0, y1, "right")):
        if cover.get(fixed) != [(lo, hi)]:
            raise InvalidMesh(f"{name} side of the bounding box is not fully covered; "
                              "region is not a rectangle")

    # candidate points: endpoints of the raw pieces and all crossings; raw
    # endpoints that turn out to be pass-throughs are dropped below
    cand_h: dict[Fraction, set[Fraction]] = defaultdict(set)
    cand_v: dict[Fraction, set[Fraction]] = defaultdict(set)
    for y, iv in hlines.items():
        for a, b, _ in iv:
            cand_h[y].update((a, b))
    for x, iv in vlines.items():
        for a, b, _ in iv:
            cand_v[x].update((a, b))
    vkeys = sorted(vcover)
    for y, hcov in hcover.items():
        for a, b in hcov:
            for x in vkeys:
                if x < a or x > b:
                    continue
                if any(c <= y <= d for c, d in vcover[x]):
                    cand_h[y].add(x)
                    cand_v[x].add(y)
    # a horizontal endpoint lying on a vertical piece is already a crossing;
    # a vertical endpoint must also be registered on the horizontal line
    for x, ys_ in cand_v.items():
        for y in ys_:
            if y in hcover and any(c <= x <= d for c, d in hcover[y]):
                cand_h[y].add(x)
    for y, xs_ in cand_h.items():
        for x in xs_:
            if x in vcover and any(c <= y <= d for c, d in vcover[x]):
                cand_v[x].add(y)

    def piece_level(pieces: list[tuple[Fraction, Fraction, int]], a: Fraction, b: Fraction) -> int:
        return min(lv for lo, hi, lv in pieces if lo <= a and b <= hi)

    # raw edges between consecutive candidates inside a covered interval
    dirs: dict[Point, dict[str, tuple[Point, int]]] = defaultdict(dict)
    for y, cov in hcover.items():
        pts = sorted(cand_h[y])
        for a, b in zip(pts, pts[1:]):
            if any(c <= a and b <= d for c, d in cov):
                lv = piece_level(hlines[y], a, b)
                dirs[(a, y)][_E] = ((b, y), lv)
                dirs[(b, y)][_W] = ((a, y), lv)
    for x, cov in vcover.items():
        pts = sorted(cand_v[x])
        for a, b in zip(pts, pts[1:]):
            if any(c <= a and b <= d for c, d in cov):
                lv = piece_level(vlines[x], a, b)
                dirs[(x, a)][_N] = ((x, b), lv)
                dirs[(x, b)][_S] = ((x, a), lv)

    def passes_through(ds) -> bool:
        keys = set(ds)
        return keys == {_E, _W} or keys == {_N, _S}

    def first_vertex_level(ds: dict[str, tuple[Point, int]]) -> int:
        # smallest level at which this point is a vertex of the partial mesh
        for lv in sorted({l for _, l in ds.values()}):
            sub = {k for k, (_, l) in ds.items() if l <= lv}
            if sub and not passes_through(sub):
                return lv
        return max(l for _, l in ds.values())

    keep = sorted(p for p, ds in dirs.items() if not passes_through(ds))
    keep_set = set(keep)
    index = {p: i for i, p in enumerate(keep)}

    edges: list[tuple[int, int]] = []
    elevels: list[int] = []
    for p in keep:
        for fwd in (_E, _N):
            if fwd not in dirs[p]:
                continue
            q, lv = dirs[p][fwd]
            while q not in keep_set:
                q, l2 = dirs[q][fwd]
                lv = min(lv, l2)
            edges.append((index[p], index[q]))
            elevels.append(lv)

    valence = [0] * len(keep)
    for a, b in edges:
        valence[a] += 1
        valence[b] += 1
    for i, p in enumerate(keep):
        if valence[i] == 1:
            raise InvalidMesh(f"dangling segment end at {_fmt(p)}")
        interior = not (p[0] in (x0, x1) or p[1] in (y0, y1))
        if interior and valence[i] == 2 and not is_cvr:
            raise InvalidMesh(f"L-node at {_fmt(p)} (only allowed in CVR graphs)")

    vlevels = tuple(first_vertex_level(dirs[p]) for p in keep)
    faces = _faces(keep, edges)
    if not is_cvr:
        for face in faces:
            if len(face) > 1:
                bx = (min(r[0] for r in face), min(r[1] for r in face),
                      max(r[2] for r in face), max(r[3] for r in face))
                area = sum((r[2] - r[0]) * (r[3] - r[1]) for r in face)
                if area != (bx[2] - bx[0]) * (bx[3] - bx[1]):
                    raise InvalidMesh("non-rectangular face")
        faces = tuple(((min(r[0] for r in f), min(r[1] for r in f),
                        max(r[2] for r in f), max(r[3] for r in f)),) for f in faces)
        faces = tuple(sorted(faces, key=lambda f: (f[0][1], f[0][0])))
    return TMesh(tuple(keep), tuple(edges), faces, domain, is_cvr, vlevels, tuple(elevels))


def _fmt(p: Point) -> str:
    return f"({p[0]}, {p[1]})"


def _faces(points: Sequence[Point], edges: Sequence[tuple[int, int]]) -> tuple[tuple[Rect, ...], ...]:
    """Group fine-grid cells into faces; mesh edges separate cells."""
    X = sorted({p[0] for p in points})
    Y = sorted({p[1] for p in points})
    xi = {x: i for i, x in enumerate(X)}
    yi = {y: j for j, y in enumerate(Y)}
    # walls[(i, j)] for vertical wall at X[i] between Y[j], Y[j+1]
    vwall: set[tuple[int, int]] = set()
    hwall: set[tuple[int, int]] = set()
    for a, b in edges:
        pa, pb = points[a], points[b]
        if pa[1] == pb[1]:
            j = yi[pa[1]]
            for i in range(xi[pa[0]], xi[pb[0]]):
                hwall.add((i, j))
        else:
            i = xi[pa[0]]
            for j in range(yi[pa[1]], yi[pb[1]]):
                vwall.add((i, j))
    nx, ny = len(X) - 1, len(Y) - 1
    parent = list(range(nx * ny))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for j in range(ny):
        for i in range(nx):
            if i + 1 < nx and (i + 1, j) not in vwall:
                union(j * nx + i, j * nx + i + 1)
            if j + 1 < ny and (i, j + 1) not in hwall:
                union(j * nx + i, (j + 1) * nx + i)
    groups: dict[int, list[Rect]] = defaultdict(list)
    for j in range(ny):
        for i in range(nx):
            groups[find(j * nx + i)].append((X[i], Y[j], X[i + 1], Y[j + 1]))
    return tuple(tuple(groups[k]) for k in sorted(groups))


def tensor_mesh(x_knots: Sequence, y_knots: Sequence) -> TMesh:
    """Full tensor-product grid on the given knot vectors."""
    xs = [as_rational(v) for v in x_knots]
    ys = [as_rational(v) for v in y_knots]
    for name, k in (("x", xs), ("y", ys)):
        if len(k) < 2:
            raise InvalidKnots(f"{name} needs at least two knots")
        if any(b <= a for a, b in zip(k, k[1:])):
            raise InvalidKnots(f"{name} knots are not strictly increasing")
    segs = [Segment(x, ys[0], x, ys[-1]) for x in xs]
    segs += [Segment(xs[0], y, xs[-1], y) for y in ys]
    return build_mesh(segs)
