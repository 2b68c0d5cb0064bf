from fractions import Fraction as F

import pytest

from tmeshdim.cvr import cvr_graph, subdivide_boundary_cells, verify_cvr_conjecture
from tmeshdim.errors import NonRectangularCVR
from tmeshdim.hierarchy import HierarchicalTMesh, subdivide
from tmeshdim.mesh import tensor_mesh
from tmeshdim.stabilize import stabilize


@pytest.fixture(scope="module")
def plus_covered(plus_pattern):
    return stabilize(plus_pattern, 4)


def test_covered_plus_level1_segments(plus_covered):
    g = cvr_graph(plus_covered.mesh)
    got = sorted((s.x0, s.y0, s.x1, s.y1) for s in g.segments if s.level == 1)
    want = [(2.5, 5.5, 4.5, 5.5), (2.5, 3.5, 2.5, 5.5), (2.5, 4.5, 5.5, 4.5), (5.5, 2.5, 5.5, 4.5),
            (3.5, 2.5, 3.5, 5.5), (3.5, 2.5, 5.5, 2.5), (2.5, 3.5, 5.5, 3.5), (4.5, 2.5, 4.5, 5.5)]
    assert got == sorted(tuple(F(v) for v in w) for w in want)


def test_cvr_mesh(plus_covered):
    g = cvr_graph(plus_covered.mesh)
    m = g.mesh
    assert m.is_cvr and m.domain == (2, 2, 6, 6)
    assert len(m.faces) == 42
    prov = g.vertex_provenance()
    assert all(plus_covered.mesh.vertices[prov[i]] == p for i, p in enumerate(m.vertices))


@pytest.mark.parametrize("d,dim", [(2, 42), (3, 27), (4, 14)])
def test_conjecture_on_covered_plus(plus_covered, d, dim):
    chk = verify_cvr_conjecture(plus_covered, d)
    assert chk.equal and chk.levels_match
    assert chk.lhs == dim


def test_empty_graph():
    g = cvr_graph(tensor_mesh(range(3), range(3)))
    assert g.empty and len(g.vertices) == 1
    with pytest.raises(NonRectangularCVR):
        g.mesh


def test_tensor_cvr_is_the_inner_grid():
    g = cvr_graph(tensor_mesh(range(6), range(5)))
    assert g.mesh.domain == (1, 1, 4, 3)
    assert len(g.mesh.faces) == 3 * 2


def test_low_degree_rejected():
    with pytest.raises(ValueError):
        verify_cvr_conjecture(HierarchicalTMesh.from_knots(range(5), range(5)), 1)


def test_subdivide_boundary_cells():
    h = subdivide(HierarchicalTMesh.from_knots(range(5), range(5)), 1, [(0, 0), (1, 1)])
    out = subdivide_boundary_cells(h)
    boundary = {c for c in out.cells(0) if not out.is_interior(0, c)}
    assert boundary <= out.subdivided(1)
    assert (1, 1) in out.subdivided(1)
    interior_only = subdivide(HierarchicalTMesh.from_knots(range(5), range(5)), 1, [(1, 1)])
    assert subdivide_boundary_cells(interior_only) == interior_only
