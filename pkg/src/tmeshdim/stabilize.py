"""Cover every level's subdivided region with (d-1) x (d-1) blocks.

The result belongs to the block family for which the dimension has a
geometry-free closed form.

Placement rule: take the uncovered subdivided cells in raster order (top
row first, then left to right).  Among template positions containing the
cell, prefer one needing no new coarser cells, then the one covering most
still-uncovered cells, then the one subdividing fewest new cells, then the
top-most and left-most anchor.
"""
from __future__ import annotations

from .errors import CannotCover
from .hierarchy import HierarchicalTMesh, Index


def _block(anchor: Index, s: int) -> list[Index]:
    return [(anchor[0] + a, anchor[1] + b) for b in range(s) for a in range(s)]


def _full_blocks(cells: set[Index], s: int) -> set[Index]:
    """Cells lying in at least one s x s block contained in ``cells``."""
    out: set[Index] = set()
    for i, j in cells:
        for a in range(s):
            for b in range(s):
                blk = _block((i - a, j - b), s)
                if all(c in cells for c in blk):
                    out.update(blk)
    return out


def is_stable_form(hmesh: HierarchicalTMesh, d: int) -> bool:
    s = d - 1
    if s < 1:
        return True
    for k in range(1, hmesh.lev + 1):
        cells = set(hmesh.subdivided(k))
        if _full_blocks(cells, s) != cells:
            return False
    return True


def _raster(c: Index) -> tuple[int, int]:
    return (-c[1], c[0])


def stabilize(hmesh: HierarchicalTMesh, d: int, homogeneous: bool = False) -> HierarchicalTMesh:
    """Smallest-effort greedy superset of ``hmesh`` in block form.

    Templates must lie inside interior cells of the previous level unless
    ``homogeneous`` is set.  When a template needs coarser cells that do not
    exist yet, those are subdivided too and the sweep restarts.
    """
    s = d - 1
    if s < 1 or is_stable_form(hmesh, d):
        return hmesh
    sets = [set(c) for c in hmesh.index_sets()]
    restart = True
    while restart:
        restart = False
        for k in range(1, len(sets) + 1):
            h = hmesh.with_sets(sets)
            px, py = h.grid(k - 1)
            nx, ny = len(px) - 1, len(py) - 1
            cells = sets[k - 1]
            covered = _full_blocks(cells, s)
            uncovered = cells - covered
            while uncovered:
                i, j = min(uncovered, key=_raster)
                best = None
                for a in range(i - s + 1, i + 1):
                    for b in range(j - s + 1, j + 1):
                        blk = _block((a, b), s)
                        if a < 0 or b < 0 or a + s > nx or b + s > ny:
                            continue
                        if not homogeneous and not all(h.is_interior(k - 1, c) for c in blk):
                            continue
                        missing = [c for c in blk if not h.cell_exists(k - 1, c)]
                        key = (bool(missing), -sum(c in uncovered for c in blk),
                               sum(c not in cells for c in blk), -b, a)
                        if best is None or key < best[0]:
                            best = (key, blk, missing)
                if best is None:
                    where = h.corner(k - 1, (i, j))
                    raise CannotCover(f"no {s}x{s} template fits around level-{k - 1} cell "
                                      f"({where[0]}, {where[1]})")
                _, blk, missing = best
                if missing:
                    for c in missing:
                        _add_ancestors(h, sets, k - 1, c)
                    restart = True
                    break
                cells.update(blk)
                uncovered.difference_update(blk)
            if restart:
                break
    out = hmesh.with_sets(sets)
    assert is_stable_form(out, d)
    return out


def _add_ancestors(h: HierarchicalTMesh, sets: list[set[Index]], level: int, cell: Index) -> None:
    # make ``cell`` exist at ``level`` by subdividing its ancestors as needed
    while level > 0 and not h.cell_exists(level, cell):
        parent = (cell[0] // 2, cell[1] // 2)
        sets[level - 1].add(parent)
        h = h.with_sets(sets)
        level, cell = level - 1, parent
