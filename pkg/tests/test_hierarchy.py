from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tmeshdim.errors import AlreadySubdivided, Infeasible, InvalidKnots, LevelGap, NoSuchCell
from tmeshdim.hierarchy import (TENSOR, HierarchicalTMesh, flatten, from_records,
                                isolated_block_components, level_sets, random_hmesh, subdivide)
from tmeshdim.mesh import mesh_stats


def base(n=5):
    return HierarchicalTMesh.from_knots(range(n), range(n))


def test_two_level_level_sets(two_level):
    ls = level_sets(two_level, 1)
    assert (len(ls.T.edges), len(ls.T.vertices)) == (4, 16)
    assert (len(ls.N.edges), len(ls.N.vertices)) == (5, 14)
    assert two_level.lev == 2


def test_two_level_isolated_blocks(two_level):
    assert isolated_block_components(two_level, 2).gamma == 1  # the lone level-2 cell
    assert isolated_block_components(two_level, 3).gamma == 1  # the level-1 2x2 block


def test_cross_split_counts():
    h = subdivide(base(), 1, [(1, 1)])
    s = mesh_stats(h.mesh)
    assert s.v == 25 + 5
    assert len(h.mesh.cells) == 16 - 1 + 4
    assert h.cells(1) == [(2, 2), (3, 2), (2, 3), (3, 3)]


def test_tensor_mode_equals_cross_cells():
    a = subdivide(base(), 1, [(1, 1)], TENSOR, (2, 2))
    b = subdivide(base(), 1, [(1, 1), (2, 1), (1, 2), (2, 2)])
    assert a == b
    assert a.mesh.vertices == b.mesh.vertices


def test_errors():
    h = subdivide(base(), 1, [(1, 1)])
    with pytest.raises(AlreadySubdivided):
        subdivide(h, 1, [(1, 1)])
    with pytest.raises(NoSuchCell):
        subdivide(h, 1, [(Fraction(1, 2), 1)])
    with pytest.raises(NoSuchCell):
        subdivide(h, 2, [(0, 0)])  # level-1 cells exist only inside (1,1)
    with pytest.raises(LevelGap):
        subdivide(base(), 2, [(1, 1)])
    with pytest.raises(InvalidKnots):
        HierarchicalTMesh.from_knots([0, 1, 1], [0, 1])


def test_flatten_matches_records():
    h = subdivide(subdivide(base(), 1, [(1, 1), (2, 1)]), 2, [(Fraction(3, 2), 1)])
    again = from_records(h.x_knots, h.y_knots, h.subdivisions)
    assert again == h
    assert flatten(again).vertices == h.mesh.vertices


def test_with_knots_keeps_topology():
    h = subdivide(base(), 1, [(1, 1), (2, 2)])
    g = h.with_knots([0, 1, 3, 4, 7], [0, 2, 3, 5, 6])
    assert g.index_sets() == h.index_sets()
    assert mesh_stats(g.mesh) == mesh_stats(h.mesh)


def test_random_hmesh_is_deterministic():
    a = random_hmesh(7, levels=2, block_size=2, count_per_level=2, grid=6)
    b = random_hmesh(7, levels=2, block_size=2, count_per_level=2, grid=6)
    assert a == b and a.mesh.vertices == b.mesh.vertices


def test_random_hmesh_infeasible():
    with pytest.raises(Infeasible):
        random_hmesh(1, levels=1, block_size=3, count_per_level=1, grid=3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.booleans(), st.booleans())
def test_random_blocks_are_placed(seed, block, overlap, interior):
    try:
        h = random_hmesh(seed, levels=2, block_size=block, count_per_level=2,
                         allow_overlap=overlap, interior_only=interior, grid=7)
    except Infeasible:
        return
    for k in (1, 2):
        cells = h.subdivided(k)
        assert len(cells) >= block * block
        if interior:
            assert all(h.is_interior(k - 1, c) for c in cells)
        if not overlap:
            assert len(cells) % (block * block) == 0
    # every vertex level is at most the mesh level
    assert max(h.mesh.vertex_levels) <= h.lev
