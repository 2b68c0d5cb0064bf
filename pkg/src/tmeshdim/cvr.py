"""CVR graphs: keep the cross-vertices of a mesh and the lines joining them.

Along every l-edge the cross-vertices are joined in order; vertices that
are not crosses are passed through rather than leaving gaps.  The graph is
again a mesh, possibly with L-nodes and L-shaped faces.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property

from .conformality import dim_cvs
from .dimension import dim_homogeneous
from .errors import InvalidMesh, NonRectangularCVR
from .hierarchy import HierarchicalTMesh
from .mesh import Segment, TMesh, build_mesh
from .oracle import bnet_dim_homogeneous


@dataclass(frozen=True)
class CVRGraph:
    parent: TMesh = field(repr=False)
    vertices: tuple[int, ...]  # parent ids of the cross-vertices
    segments: tuple[Segment, ...]
    edge_source: tuple[int, ...]  # parent l-edge index per segment

    @property
    def empty(self) -> bool:
        return not self.segments

    @cached_property
    def mesh(self) -> TMesh:
        """The graph as a mesh flagged ``is_cvr``; vertex levels come from the parent."""
        return _cvr_mesh(self)

    def vertex_provenance(self) -> dict[int, int]:
        m = self.mesh
        return {i: self.parent.vertex_index[p] for i, p in enumerate(m.vertices)}


def cvr_graph(mesh: TMesh) -> CVRGraph:
    cross = {v for v in range(len(mesh.vertices))
             if mesh.valence(v) == 4 and not mesh.on_boundary(mesh.vertices[v])}
    segs, src = [], []
    for e in mesh.l_edges:
        on = [v for v in e.vertices if v in cross]
        if len(on) >= 2:
            p, q = mesh.vertices[on[0]], mesh.vertices[on[-1]]
            segs.append(Segment(p[0], p[1], q[0], q[1], e.level))
            src.append(e.index)
    return CVRGraph(mesh, tuple(sorted(cross)), tuple(segs), tuple(src))


def _cvr_mesh(g: CVRGraph) -> TMesh:
    if g.empty:
        raise NonRectangularCVR("the CVR graph is empty")
    try:
        m = build_mesh(g.segments, is_cvr=True)
    except InvalidMesh as exc:
        raise NonRectangularCVR(f"CVR graph does not bound a rectangle: {exc}") from None
    levels = tuple(g.parent.vertex_levels[g.parent.vertex_index[p]] for p in m.vertices)
    return dataclasses.replace(m, vertex_levels=levels)


def subdivide_boundary_cells(hmesh: HierarchicalTMesh) -> HierarchicalTMesh:
    """At each level that splits a boundary cell, split every boundary cell of that level."""
    sets = [set(s) for s in hmesh.index_sets()]
    for k in range(1, len(sets) + 1):
        h = hmesh.with_sets(sets)
        if any(not h.is_interior(k - 1, c) for c in sets[k - 1]):
            sets[k - 1].update(c for c in h.cells(k - 1) if not h.is_interior(k - 1, c))
    return hmesh.with_sets(sets)


def _level_component(mesh: TMesh, k: int):
    vl = mesh.vertex_levels
    edges = [e for e in mesh.t_ledges if e.level == k]
    verts = {v for e in edges for v in e.vertices if vl[v] == k}
    return mesh.component(edges, verts)


@dataclass(frozen=True)
class CVRCheck:
    degree: int
    lhs: int
    lhs_oracle: int
    rhs: int
    levels: tuple[tuple[int, int, int], ...]  # (level, cvs on mesh at d, cvs on CVR at d-2)

    @property
    def levels_match(self) -> bool:
        return all(a == b for _, a, b in self.levels)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs == self.lhs_oracle


def verify_cvr_conjecture(hmesh: HierarchicalTMesh, d: int,
                          subdivide_boundary: bool = False) -> CVRCheck:
    """Compare dim of the homogeneous space at degree d with that of the CVR graph at d-2."""
    if d < 2:
        raise ValueError("need d >= 2")
    if subdivide_boundary:
        hmesh = subdivide_boundary_cells(hmesh)
    mesh = hmesh.mesh
    lhs = dim_homogeneous(mesh, d)
    lhs_oracle = bnet_dim_homogeneous(mesh, d, d - 1)
    cm = cvr_graph(mesh).mesh
    rhs = bnet_dim_homogeneous(cm, d - 2, d - 3)
    levels = tuple((k, dim_cvs(_level_component(mesh, k), d), dim_cvs(_level_component(cm, k), d - 2))
                   for k in range(1, hmesh.lev + 1))
    return CVRCheck(d, lhs, lhs_oracle, rhs, levels)
