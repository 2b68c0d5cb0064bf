"""Spline-space dimension by every available route.

All routes return plain integers.  ``dimension_report`` runs a selection
of them and records agreement, the mesh counts and any unmet assumptions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .conformality import dim_cvs, reasonable_order
from .errors import InconsistentStats, PreconditionViolated
from .hierarchy import HierarchicalTMesh, isolated_block_components, level_sets
from .mesh import (BOUNDARY, HORIZONTAL, T_LEDGE, VERTICAL, LEdge, MeshStats, Segment,
                   TConnectedComponent, TMesh, build_mesh, mesh_stats, t_connected_component)
from .oracle import bnet_dim, bnet_dim_homogeneous


# ---------------------------------------------------------------- tensor components

@dataclass(frozen=True)
class TensorComponentStats:
    m: int  # horizontal t-ledges
    n: int  # vertical t-ledges
    p: int  # vertices per horizontal edge
    q: int  # vertices per vertical edge
    p_mono: int
    q_mono: int

    def check(self) -> None:
        if min(self.m, self.n, self.p, self.q, self.p_mono, self.q_mono) < 0:
            raise InconsistentStats(f"negative count in {self}")
        if self.m != self.q - self.q_mono or self.n != self.p - self.p_mono:
            raise InconsistentStats(f"need m = q - q_mono and n = p - p_mono: {self}")

    def diagonalizable(self, d: int) -> bool:
        return self.p_mono >= d + 1 or self.q_mono >= d + 1


def tensor_component_stats(comp: TConnectedComponent) -> TensorComponentStats | None:
    """Counts for a tensor-product component, or None if it is not one.

    Every horizontal edge must carry the same abscissae, every vertical edge
    the same ordinates, and each horizontal must meet each vertical.
    """
    hs = [e for e in comp.edges if e.orientation == HORIZONTAL]
    vs = [e for e in comp.edges if e.orientation == VERTICAL]
    if not hs or not vs:
        return None
    hx = {tuple(comp.free_coordinate(e, v) for v in comp.edge_vertices(e)) for e in hs}
    vy = {tuple(comp.free_coordinate(e, v) for v in comp.edge_vertices(e)) for e in vs}
    if len(hx) != 1 or len(vy) != 1:
        return None
    hset = {v for e in hs for v in comp.edge_vertices(e)}
    vset = {v for e in vs for v in comp.edge_vertices(e)}
    if len(hset & vset) != len(hs) * len(vs):
        return None
    p, q = len(next(iter(hx))), len(next(iter(vy)))
    return TensorComponentStats(len(hs), len(vs), p, q, p - len(vs), q - len(hs))


def synthetic_tensor_component(xs: Sequence, ys: Sequence, x_mono: Sequence = (),
                               y_mono: Sequence = ()) -> TConnectedComponent:
    """Tensor-product component without a surrounding mesh.

    Horizontal t-ledges sit at ordinates ``ys`` and vertical ones at
    abscissae ``xs``; they cross at multi-vertices.  Each horizontal edge
    also carries mono-vertices at abscissae ``x_mono``, each vertical at
    ordinates ``y_mono``.
    """
    xs, ys = [Fraction(v) for v in xs], [Fraction(v) for v in ys]
    xm, ym = [Fraction(v) for v in x_mono], [Fraction(v) for v in y_mono]
    if len(set(xs + xm)) != len(xs) + len(xm) or len(set(ys + ym)) != len(ys) + len(ym):
        raise InconsistentStats("coordinates must be distinct")
    pts: dict[tuple[Fraction, Fraction], int] = {}

    def vid(p):
        return pts.setdefault(p, len(pts))

    edges = []
    for y in ys:
        vs = tuple(vid((x, y)) for x in sorted(xs + xm))
        edges.append(LEdge(len(edges), HORIZONTAL, y, vs, T_LEDGE))
    for x in xs:
        vs = tuple(vid((x, y)) for y in sorted(ys + ym))
        edges.append(LEdge(len(edges), VERTICAL, x, vs, T_LEDGE))
    coords = {i: p for p, i in pts.items()}
    return TConnectedComponent(tuple(edges), frozenset(coords), coords)


def dim_tensor_component(stats: TensorComponentStats, d: int) -> int:
    """CVS dimension of a tensor-product component from its counts alone.

    Non-diagonalizable: (p-d-1)(q-d-1).  Diagonalizable: peeling the edges
    with at least d+1 mono-vertices first leaves the crossing family with
    all of its vertices, so every multi-vertex is counted once.
    """
    stats.check()
    m, n, p, q, pt, qt = stats.m, stats.n, stats.p, stats.q, stats.p_mono, stats.q_mono
    if not stats.diagonalizable(d):
        if p < d + 1 or q < d + 1:
            raise InconsistentStats("vanishable tensor component; the product formula does not apply")
        return (p - d - 1) * (q - d - 1)
    if pt >= d + 1:
        return m * (pt - d - 1) + n * max(0, q - d - 1)
    return n * (qt - d - 1) + m * max(0, p - d - 1)


def dim_tensor_component_printed_form(stats: TensorComponentStats, d: int) -> int:
    """The diagonalizable branch as printed: m(p-d-1) + n(q-d-1)."""
    stats.check()
    if not stats.diagonalizable(d):
        return (stats.p - d - 1) * (stats.q - d - 1)
    return stats.m * (stats.p - d - 1) + stats.n * (stats.q - d - 1)


# ---------------------------------------------------------------- direct routes

def dim_rank(mesh: TMesh, d: int) -> int:
    """(d+1)^2 + c(d+1) + n_v + dim CVS of all t-ledges."""
    s = mesh_stats(mesh)
    return (d + 1) ** 2 + s.c * (d + 1) + s.n_v + dim_cvs(t_connected_component(mesh), d)


def extend_mesh(mesh: TMesh, d: int) -> TMesh:
    """Copy each boundary side d times outward at unit spacing and extend
    every l-edge that ends on the boundary out to the new boundary."""
    if d == 0:
        return mesh
    x0, y0, x1, y1 = mesh.domain
    X0, Y0, X1, Y1 = x0 - d, y0 - d, x1 + d, y1 + d
    segs = []
    for k in range(d + 1):
        segs += [Segment(X0, y0 - k, X1, y0 - k), Segment(X0, y1 + k, X1, y1 + k),
                 Segment(x0 - k, Y0, x0 - k, Y1), Segment(x1 + k, Y0, x1 + k, Y1)]
    for e in mesh.l_edges:
        if e.kind == BOUNDARY:
            continue
        (ax, ay), (bx, by) = mesh.vertices[e.vertices[0]], mesh.vertices[e.vertices[-1]]
        if e.orientation == HORIZONTAL:
            ax = X0 if ax == x0 else ax
            bx = X1 if bx == x1 else bx
        else:
            ay = Y0 if ay == y0 else ay
            by = Y1 if by == y1 else by
        segs.append(Segment(ax, ay, bx, by, e.level))
    return build_mesh(segs)


def _homogeneous_parts(mesh: TMesh):
    le = mesh.l_edges
    p = sum(1 for e in le if e.orientation == HORIZONTAL and e.kind in (BOUNDARY, "cross-cut"))
    q = sum(1 for e in le if e.orientation == VERTICAL and e.kind in (BOUNDARY, "cross-cut"))
    rest = mesh.component([e for e in le if e.kind in ("ray", "t-ledge")])
    return p, q, rest


def dim_homogeneous(mesh: TMesh, d: int) -> int:
    """Boundary/cross-cut tensor part plus CVS of all rays and t-ledges.

    Falls back to the oracle when the tensor part has fewer than d+1
    lines in a direction.
    """
    p, q, rest = _homogeneous_parts(mesh)
    if p < d + 1 or q < d + 1:
        return bnet_dim_homogeneous(mesh, d, d - 1)
    return max(0, p - d - 1) * max(0, q - d - 1) + dim_cvs(rest, d)


def dim_homogeneous_blocks(hmesh: HierarchicalTMesh, d: int) -> int:
    """v - (d+1)t + (d+1)^2 + gamma over the whole mesh (block family)."""
    _require_blocks(hmesh, d, interior=False)
    s = mesh_stats(hmesh.mesh)
    return s.v - (d + 1) * s.t + (d + 1) ** 2 + isolated_block_components(hmesh, d).gamma


# ---------------------------------------------------------------- level recursion

@dataclass(frozen=True)
class LevelTerm:
    level: int
    route: str  # "tensor", "reasonable-order", "rank" or "free"
    v: int
    t: int
    value: int


def recursive_terms(hmesh: HierarchicalTMesh, d: int) -> list[LevelTerm]:
    terms = []
    for k in range(1, hmesh.lev + 1):
        for comp in level_sets(hmesh, k).T.sub_components():
            stats = tensor_component_stats(comp)
            if stats is not None and (stats.diagonalizable(d) or min(stats.p, stats.q) >= d + 1):
                route, value = "tensor", dim_tensor_component(stats, d)
            elif reasonable_order(comp, d) is not None:
                route, value = "reasonable-order", comp.v_count - (d + 1) * comp.t_count
            else:
                route, value = "rank", dim_cvs(comp, d)
            terms.append(LevelTerm(k, route, comp.v_count, comp.t_count, value))
    # a level-k vertex lying only on coarser t-ledges (a finer ray ends there)
    # is constrained by no edge of N_{k-1}; it is a free unknown
    m = hmesh.mesh
    vl = m.vertex_levels
    on_t = {v for e in m.t_ledges for v in e.vertices}
    for k in range(1, hmesh.lev + 1):
        own = {v for e in m.t_ledges if e.level == k for v in e.vertices}
        free = sum(1 for v in on_t if vl[v] == k and v not in own)
        if free:
            terms.append(LevelTerm(k, "free", free, 0, free))
    return terms


def dim_recursive(hmesh: HierarchicalTMesh, d: int) -> int:
    """Sum of per-level component CVS dimensions, assembled as in dim_rank."""
    s = mesh_stats(hmesh.mesh)
    cvs = sum(t.value for t in recursive_terms(hmesh, d))
    return (d + 1) ** 2 + s.c * (d + 1) + s.n_v + cvs


# ---------------------------------------------------------------- block closed forms

def _require_blocks(hmesh: HierarchicalTMesh, d: int, interior: bool) -> None:
    from .stabilize import is_stable_form

    if d < 2:
        raise PreconditionViolated("block formulas need d >= 2")
    if not is_stable_form(hmesh, d):
        raise PreconditionViolated(f"subdivisions are not unions of {d - 1}x{d - 1} blocks")
    if interior:
        for k in range(1, hmesh.lev + 1):
            if any(not hmesh.is_interior(k - 1, c) for c in hmesh.subdivided(k)):
                raise PreconditionViolated(f"a boundary cell is subdivided at level {k}")
        if min(len(hmesh.x_knots), len(hmesh.y_knots)) < d + 1:
            raise PreconditionViolated("level-0 grid needs d+1 lines per direction")


@dataclass(frozen=True)
class ClosedForm:
    printed_value: int
    corrected_value: int


def dim_closed_form(hmesh: HierarchicalTMesh, d: int) -> ClosedForm:
    """v + d*b + C + gamma0 - t(d+1) with C = (d-1)^2 as printed and (d+1)^2 corrected.

    t counts l-edges and b boundary edge segments.
    """
    _require_blocks(hmesh, d, interior=True)
    s = mesh_stats(hmesh.mesh)
    g0 = isolated_block_components(hmesh, d).gamma0
    base = s.v + d * s.b + g0 - s.t * (d + 1)
    return ClosedForm(base + (d - 1) ** 2, base + (d + 1) ** 2)


def dim_cvs_blocks(hmesh: HierarchicalTMesh, d: int, level: int | None = None) -> int:
    """v - (d+1)t + gamma for the t-ledges of one level (or all levels)."""
    _require_blocks(hmesh, d, interior=False)
    report = isolated_block_components(hmesh, d)
    levels = range(1, hmesh.lev + 1) if level is None else [level]
    total = 0
    for k in levels:
        comp = level_sets(hmesh, k).T
        total += comp.v_count - (d + 1) * comp.t_count + report.gamma_at(k)
    return total


# ---------------------------------------------------------------- stability probe

def sample_knots(rng: random.Random, n: int) -> list[Fraction]:
    """Strictly increasing knots with spacings drawn from a small set.

    Drawing from few distinct spacings makes exact coincidences (equal or
    symmetric spacings) common, which is where special positions live.
    """
    steps = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2), Fraction(3)]
    out = [Fraction(0)]
    for _ in range(n - 1):
        out.append(out[-1] + rng.choice(steps))
    return out


def probe_samples(hmesh: HierarchicalTMesh, d: int, samples: int, seed: int
                  ) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...], int]]:
    """dim_rank over ``samples`` knot re-samplings (same topology)."""
    if samples < 2:
        raise ValueError("need at least two samples")
    out = []
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        xk = sample_knots(rng, len(hmesh.x_knots))
        yk = sample_knots(rng, len(hmesh.y_knots))
        h = hmesh.with_knots(xk, yk)
        out.append((tuple(xk), tuple(yk), dim_rank(h.mesh, d)))
    return out


def stability_probe(hmesh: HierarchicalTMesh, d: int, samples: int, seed: int) -> frozenset[int]:
    return frozenset(v for _, _, v in probe_samples(hmesh, d, samples, seed))


# ---------------------------------------------------------------- reports

PRINTED_CONSTANT = "closed_form_paper_constant"
CORRECTED_CONSTANT = "closed_form_corrected_constant"


@dataclass
class DimensionReport:
    degree: int
    methods: dict[str, int]
    stats: MeshStats
    gamma: int | None = None
    gamma0: int | None = None
    warnings: list[str] = field(default_factory=list)
    homogeneous: bool = False
    include_printed_constant: bool = False

    def compared(self) -> dict[str, int]:
        return {k: v for k, v in self.methods.items()
                if k != PRINTED_CONSTANT or self.include_printed_constant}

    @property
    def agree(self) -> bool:
        return len(set(self.compared().values())) <= 1


METHODS = ("rank", "tensor_formula", "recursive", "closed", "bnet")


def _vanishable(mesh: TMesh, d: int) -> list:
    return [e for e in mesh.t_ledges if len(e.vertices) < d + 1]


def dimension_report(target: TMesh | HierarchicalTMesh, d: int,
                     methods: Sequence[str] = METHODS, homogeneous: bool = False,
                     include_printed_constant: bool = False) -> DimensionReport:
    hmesh = target if isinstance(target, HierarchicalTMesh) else None
    mesh = hmesh.mesh if hmesh is not None else target
    stats = mesh_stats(mesh)
    rep = DimensionReport(d, {}, stats, homogeneous=homogeneous,
                          include_printed_constant=include_printed_constant)
    if hmesh is not None and d >= 2:
        blocks = isolated_block_components(hmesh, d)
        rep.gamma, rep.gamma0 = blocks.gamma, blocks.gamma0
    if _vanishable(mesh, d):
        rep.warnings.append(f"{len(_vanishable(mesh, d))} vanishable t-ledge(s) present")

    if homogeneous:
        if "rank" in methods:
            p, q, _ = _homogeneous_parts(mesh)
            if p < d + 1 or q < d + 1:
                rep.warnings.append("boundary/cross-cut grid too small; decomposition used the oracle")
            rep.methods["homogeneous_decomposition"] = dim_homogeneous(mesh, d)
        if "closed" in methods and hmesh is not None:
            try:
                rep.methods["homogeneous_block_formula"] = dim_homogeneous_blocks(hmesh, d)
            except PreconditionViolated as exc:
                rep.warnings.append(f"block formula skipped: {exc}")
        if "bnet" in methods:
            rep.methods["bnet_oracle"] = bnet_dim_homogeneous(mesh, d, d - 1)
        return rep

    if "rank" in methods:
        rep.methods["rank"] = dim_rank(mesh, d)
    if "tensor_formula" in methods:
        comps = t_connected_component(mesh).sub_components()
        all_stats = [tensor_component_stats(c) for c in comps]
        if all(s is not None for s in all_stats):
            try:
                cvs = sum(dim_tensor_component(s, d) for s in all_stats)
                rep.methods["tensor_formula"] = (d + 1) ** 2 + stats.c * (d + 1) + stats.n_v + cvs
            except InconsistentStats as exc:
                rep.warnings.append(f"tensor formula skipped: {exc}")
    if "recursive" in methods and hmesh is not None:
        if min(len(hmesh.x_knots), len(hmesh.y_knots)) < d + 1:
            rep.warnings.append("recursion assumes d+1 level-0 lines per direction")
        terms = recursive_terms(hmesh, d)
        if any(t.route == "rank" for t in terms):
            rep.warnings.append("some level component has neither tensor form nor a reasonable order")
        rep.methods["recursive"] = dim_recursive(hmesh, d)
    if "closed" in methods and hmesh is not None:
        try:
            cf = dim_closed_form(hmesh, d)
            rep.methods[PRINTED_CONSTANT] = cf.printed_value
            rep.methods[CORRECTED_CONSTANT] = cf.corrected_value
            rep.warnings.append("closed form reads t as the l-edge count")
        except PreconditionViolated as exc:
            rep.warnings.append(f"closed form skipped: {exc}")
    if "bnet" in methods:
        rep.methods["bnet_oracle"] = bnet_dim(mesh, d, d - 1)
    return rep
