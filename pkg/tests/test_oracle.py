from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tmeshdim.hierarchy import HierarchicalTMesh, subdivide
from tmeshdim.mesh import tensor_mesh
from tmeshdim.oracle import bnet_dim, bnet_dim_homogeneous, constraint_rows


def test_single_cell():
    m = tensor_mesh([0, 1], [0, 1])
    assert bnet_dim(m, 2) == 9
    assert bnet_dim_homogeneous(m, 2) == 0


def test_discontinuous_counts_all_coefficients():
    m = tensor_mesh([0, 1, 2], [0, 1])
    assert bnet_dim(m, 2, r=-1) == 18
    assert constraint_rows(m, 2, -1) == []


def test_c0_bilinear_strip():
    assert bnet_dim(tensor_mesh([0, 1, 2], [0, 1]), 1, 0) == 6


def test_homogeneous_small():
    assert bnet_dim_homogeneous(tensor_mesh(range(3), range(3)), 1) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(2, 6), st.integers(2, 6),
       st.lists(st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4),
                min_size=10, max_size=10))
def test_tensor_spline_dimension(d, nx, ny, steps):
    xs = [sum(steps[:i], Fraction(0)) for i in range(nx)]
    ys = [sum(steps[5:5 + j], Fraction(0)) for j in range(ny)]
    m = tensor_mesh(xs, ys)
    assert bnet_dim(m, d) == (nx - 2 + d + 1) * (ny - 2 + d + 1)
    assert bnet_dim_homogeneous(m, d) == max(0, nx - d - 1) * max(0, ny - d - 1)


def test_lower_smoothness_is_larger():
    h = subdivide(HierarchicalTMesh.from_knots(range(5), range(5)), 1, [(1, 1), (2, 1)])
    dims = [bnet_dim(h.mesh, 2, r) for r in (-1, 0, 1)]
    assert dims[0] > dims[1] > dims[2]
