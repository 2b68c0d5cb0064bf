"""Hierarchical T-meshes: a tensor grid refined level by level.

Internally every level ``k`` has a virtual knot grid obtained by inserting
midpoints ``k`` times into the level-0 knots.  A level-``k`` cell is a cell
of that grid whose parent was cross-subdivided.  The public interface
addresses cells by exact min-corner coordinates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlreadySubdivided, Infeasible, InvalidKnots, LevelGap, NoSuchCell
from .linalg import as_rational
from .mesh import HORIZONTAL, LEdge, Segment, TConnectedComponent, TMesh, build_mesh

CROSS = "cross"
TENSOR = "tensor"

Index = tuple[int, int]


@dataclass(frozen=True)
class SubdivisionRecord:
    level: int
    mode: str
    cells: tuple[tuple[Fraction, Fraction], ...]
    shape: tuple[int, int] | None = None  # (m, n) block size in tensor mode


def _refine(knots: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    out = [knots[0]]
    for a, b in zip(knots, knots[1:]):
        out += [(a + b) / 2, b]
    return tuple(out)


def _check_knots(knots: Sequence, name: str) -> tuple[Fraction, ...]:
    k = tuple(as_rational(v) for v in knots)
    if len(k) < 2:
        raise InvalidKnots(f"{name} needs at least two knots")
    if any(b <= a for a, b in zip(k, k[1:])):
        raise InvalidKnots(f"{name} knots are not strictly increasing")
    return k


@dataclass(frozen=True)
class HierarchicalTMesh:
    x_knots: tuple[Fraction, ...]
    y_knots: tuple[Fraction, ...]
    subdivisions: tuple[SubdivisionRecord, ...] = field(default=(), compare=False)
    _sets: tuple[frozenset[Index], ...] = field(default=(), repr=False)

    @classmethod
    def from_knots(cls, x_knots: Sequence, y_knots: Sequence) -> "HierarchicalTMesh":
        return cls(_check_knots(x_knots, "x"), _check_knots(y_knots, "y"))

    @property
    def lev(self) -> int:
        return len(self._sets)

    def grid(self, level: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return self._grids[level] if level < len(self._grids) else self._grid_at(level)

    @cached_property
    def _grids(self) -> list:
        return [self._grid_at(k) for k in range(self.lev + 2)]

    def _grid_at(self, level: int):
        x, y = self.x_knots, self.y_knots
        for _ in range(level):
            x, y = _refine(x), _refine(y)
        return x, y

    def subdivided(self, level: int) -> frozenset[Index]:
        """Indices (in the level-(k-1) grid) of the cells split at level ``k``."""
        if 1 <= level <= self.lev:
            return self._sets[level - 1]
        return frozenset()

    def cell_exists(self, level: int, idx: Index) -> bool:
        x, y = self.grid(level)
        i, j = idx
        if not (0 <= i < len(x) - 1 and 0 <= j < len(y) - 1):
            return False
        return level == 0 or (i // 2, j // 2) in self.subdivided(level)

    def cells(self, level: int) -> list[Index]:
        """All cells that exist at ``level`` (subdivided or not)."""
        x, y = self.grid(level)
        if level == 0:
            return [(i, j) for j in range(len(y) - 1) for i in range(len(x) - 1)]
        return sorted(((2 * i + a, 2 * j + b) for i, j in self.subdivided(level)
                       for a in (0, 1) for b in (0, 1)), key=lambda c: (c[1], c[0]))

    def is_interior(self, level: int, idx: Index) -> bool:
        x, y = self.grid(level)
        i, j = idx
        return 0 < i < len(x) - 2 and 0 < j < len(y) - 2

    def corner(self, level: int, idx: Index) -> tuple[Fraction, Fraction]:
        x, y = self.grid(level)
        return x[idx[0]], y[idx[1]]

    def index_of(self, level: int, corner) -> Index:
        x, y = self.grid(level)
        cx, cy = (as_rational(c) for c in corner)
        try:
            i, j = x.index(cx), y.index(cy)
        except ValueError:
            raise NoSuchCell(f"no level-{level} cell with min-corner ({cx}, {cy})") from None
        if not self.cell_exists(level, (i, j)):
            raise NoSuchCell(f"no level-{level} cell with min-corner ({cx}, {cy})")
        return i, j

    def with_sets(self, sets: Sequence[Iterable[Index]]) -> "HierarchicalTMesh":
        """Rebuild from per-level index sets (trailing empty levels dropped)."""
        sets = [frozenset(s) for s in sets]
        while sets and not sets[-1]:
            sets.pop()
        h = HierarchicalTMesh(self.x_knots, self.y_knots)
        recs = []
        for k, s in enumerate(sets, start=1):
            if not s:
                raise LevelGap(f"level {k} is empty but level {k + 1} is not")
            cells = tuple(h.corner(k - 1, c) for c in sorted(s, key=lambda c: (c[1], c[0])))
            for c in s:
                if not h.cell_exists(k - 1, c):
                    raise NoSuchCell(f"level-{k - 1} cell {h.corner(k - 1, c)} does not exist")
            recs.append(SubdivisionRecord(k, CROSS, cells))
            h = HierarchicalTMesh(self.x_knots, self.y_knots, tuple(recs), tuple(sets[:k]))
        return h

    def with_knots(self, x_knots: Sequence, y_knots: Sequence) -> "HierarchicalTMesh":
        """Same topology over new level-0 knot vectors."""
        x, y = _check_knots(x_knots, "x"), _check_knots(y_knots, "y")
        if len(x) != len(self.x_knots) or len(y) != len(self.y_knots):
            raise InvalidKnots("knot vector length changed")
        return HierarchicalTMesh(x, y).with_sets(self._sets)

    def index_sets(self) -> tuple[frozenset[Index], ...]:
        return self._sets

    @cached_property
    def mesh(self) -> TMesh:
        return flatten(self)


def subdivide(hmesh: HierarchicalTMesh, level: int, cells: Iterable, mode: str = CROSS,
              shape: tuple[int, int] | None = None) -> HierarchicalTMesh:
    """Return a new mesh with the given level-(level-1) cells cross-split.

    In tensor mode each listed corner anchors an m x n block of parent cells
    and every cell of the block is split.
    """
    if level < 1 or level > hmesh.lev + 1:
        raise LevelGap(f"level {level} not in 1..{hmesh.lev + 1}")
    corners = [tuple(as_rational(c) for c in cell) for cell in cells]
    targets: list[Index] = []
    for corner in corners:
        i, j = hmesh.index_of(level - 1, corner)
        if mode == CROSS:
            targets.append((i, j))
        elif mode == TENSOR:
            if shape is None:
                raise ValueError("tensor mode needs a block shape")
            m, n = shape
            for b in range(n):
                for a in range(m):
                    c = (i + a, j + b)
                    if not hmesh.cell_exists(level - 1, c):
                        raise NoSuchCell(f"block at {corner} leaves the level-{level - 1} cells")
                    targets.append(c)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    existing = hmesh.subdivided(level)
    if any(c in existing for c in targets) or (mode == CROSS and len(set(targets)) != len(targets)):
        raise AlreadySubdivided("a cell is subdivided twice")
    sets = list(hmesh.index_sets())
    if level > len(sets):
        sets.append(frozenset())
    sets[level - 1] = sets[level - 1] | frozenset(targets)
    rec = SubdivisionRecord(level, mode, tuple(corners), tuple(shape) if mode == TENSOR else None)
    return HierarchicalTMesh(hmesh.x_knots, hmesh.y_knots, hmesh.subdivisions + (rec,),
                             tuple(sets))


def from_records(x_knots: Sequence, y_knots: Sequence,
                 records: Iterable[SubdivisionRecord]) -> HierarchicalTMesh:
    h = HierarchicalTMesh.from_knots(x_knots, y_knots)
    for r in records:
        h = subdivide(h, r.level, r.cells, r.mode, r.shape)
    return h


def flatten(hmesh: HierarchicalTMesh) -> TMesh:
    x, y = hmesh.grid(0)
    segs = [Segment(xi, y[0], xi, y[-1], 0) for xi in x]
    segs += [Segment(x[0], yj, x[-1], yj, 0) for yj in y]
    for k in range(1, hmesh.lev + 1):
        px, py = hmesh.grid(k - 1)
        for i, j in sorted(hmesh.subdivided(k)):
            mx, my = (px[i] + px[i + 1]) / 2, (py[j] + py[j + 1]) / 2
            segs.append(Segment(px[i], my, px[i + 1], my, k))
            segs.append(Segment(mx, py[j], mx, py[j + 1], k))
    return build_mesh(segs)


@dataclass(frozen=True)
class LevelSets:
    T: TConnectedComponent
    N: TConnectedComponent


def level_sets(hmesh: HierarchicalTMesh, k: int) -> LevelSets:
    """T_k (level-k t-ledges with level-k vertices) and N_k (everything finer)."""
    if not 0 <= k <= hmesh.lev:
        raise ValueError(f"level {k} not in 0..{hmesh.lev}")
    m = hmesh.mesh
    vl = m.vertex_levels
    tk = [e for e in m.t_ledges if e.level == k]
    nk = [e for e in m.t_ledges if e.level > k]
    tv = {v for e in tk for v in e.vertices if vl[v] == k}
    nv = {v for e in nk for v in e.vertices if vl[v] > k}
    return LevelSets(m.component(tk, tv), m.component(nk, nv))


@dataclass(frozen=True)
class BlockComponent:
    level: int
    component: TConnectedComponent
    isolated: bool
    interior: bool
    anchor: Index | None


@dataclass(frozen=True)
class BlockComponentReport:
    components: tuple[BlockComponent, ...]

    @property
    def gamma(self) -> int:
        return sum(c.isolated for c in self.components)

    @property
    def gamma0(self) -> int:
        return sum(c.isolated and c.interior for c in self.components)

    def gamma_at(self, level: int) -> int:
        return sum(c.isolated for c in self.components if c.level == level)


def level_components(hmesh: HierarchicalTMesh, k: int) -> list[TConnectedComponent]:
    """Connected pieces of the level-k subdivision lines (all non-boundary l-edges)."""
    m = hmesh.mesh
    edges = [e for e in m.l_edges if e.level == k and e.kind != "boundary"]
    vl = m.vertex_levels
    verts = {v for e in edges for v in e.vertices if vl[v] == k}
    return m.component(edges, verts).sub_components()


def _match_block(hmesh: HierarchicalTMesh, k: int, comp: TConnectedComponent, s: int) -> Index | None:
    # the component must be exactly the 2s midlines of one s x s block of
    # level-(k-1) cells, all of them subdivided at level k
    m = hmesh.mesh
    px, py = hmesh.grid(k - 1)
    hs = [e for e in comp.edges if e.orientation == HORIZONTAL]
    vs = [e for e in comp.edges if e.orientation != HORIZONTAL]
    if len(hs) != s or len(vs) != s:
        return None

    def span(e: LEdge) -> tuple[Fraction, Fraction]:
        a, b = m.vertices[e.vertices[0]], m.vertices[e.vertices[-1]]
        return (a[0], b[0]) if e.orientation == HORIZONTAL else (a[1], b[1])

    xlo, xhi = span(hs[0])
    ylo, yhi = span(vs[0])
    if xlo not in px or ylo not in py:
        return None
    i0, j0 = px.index(xlo), py.index(ylo)
    if i0 + s >= len(px) or j0 + s >= len(py) or px[i0 + s] != xhi or py[j0 + s] != yhi:
        return None
    want_h = {(py[j0 + t] + py[j0 + t + 1]) / 2 for t in range(s)}
    want_v = {(px[i0 + t] + px[i0 + t + 1]) / 2 for t in range(s)}
    if {e.fixed for e in hs} != want_h or {e.fixed for e in vs} != want_v:
        return None
    if any(span(e) != (xlo, xhi) for e in hs) or any(span(e) != (ylo, yhi) for e in vs):
        return None
    sub = hmesh.subdivided(k)
    if any((i0 + a, j0 + b) not in sub for a in range(s) for b in range(s)):
        return None
    return i0, j0


def isolated_block_components(hmesh: HierarchicalTMesh, d: int) -> BlockComponentReport:
    if d < 2:
        raise ValueError("isolated blocks need d >= 2")
    s = d - 1
    out = []
    for k in range(1, hmesh.lev + 1):
        for comp in level_components(hmesh, k):
            anchor = _match_block(hmesh, k, comp, s)
            interior = anchor is not None and all(
                hmesh.is_interior(k - 1, (anchor[0] + a, anchor[1] + b))
                for a in range(s) for b in range(s))
            out.append(BlockComponent(k, comp, anchor is not None, interior, anchor))
    return BlockComponentReport(tuple(out))


def random_hmesh(seed: int, levels: int = 1, block_size: int = 2, count_per_level: int = 1,
                 allow_overlap: bool = False, interior_only: bool = True,
                 grid: int | tuple[int, int] = 8, knots: str = "uniform") -> HierarchicalTMesh:
    """Random mesh made of block_size x block_size cross-subdivided blocks.

    ``grid`` is the level-0 cell count per direction.  ``knots`` is
    ``"uniform"`` (integer knots) or ``"random"`` (random rational spacing).
    Blocks may touch; with ``allow_overlap`` they may also share cells.
    """
    rng = random.Random(seed)
    gx, gy = (grid, grid) if isinstance(grid, int) else grid
    if knots == "uniform":
        xk, yk = list(range(gx + 1)), list(range(gy + 1))
    else:
        xk, yk = random_knots(rng, gx + 1), random_knots(rng, gy + 1)
    h = HierarchicalTMesh.from_knots(xk, yk)
    b = block_size
    sets: list[frozenset[Index]] = []
    for k in range(1, levels + 1):
        parent = h.cells(k - 1)
        parent_set = set(parent)
        anchors = []
        for i, j in parent:
            block = [(i + a, j + c) for a in range(b) for c in range(b)]
            if not all(q in parent_set for q in block):
                continue
            if interior_only and not all(h.is_interior(k - 1, q) for q in block):
                continue
            anchors.append((block, (i, j)))
        chosen: set[Index] = set()
        placed = 0
        rng.shuffle(anchors)
        for block, _ in anchors:
            if placed == count_per_level:
                break
            if not allow_overlap and any(q in chosen for q in block):
                continue
            chosen.update(block)
            placed += 1
        if placed < count_per_level:
            raise Infeasible(f"could place only {placed} of {count_per_level} blocks at level {k}")
        sets.append(frozenset(chosen))
        h = h.with_sets(sets)
    return h


def random_knots(rng: random.Random, n: int) -> list[Fraction]:
    """Strictly increasing rationals with random spacing."""
    out = [Fraction(rng.randint(-3, 3), rng.randint(1, 3))]
    for _ in range(n - 1):
        out.append(out[-1] + Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    return out
