import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tmeshdim.conformality import (assemble, bipartite_reduce, dim_cvs, edge_system, is_vanishable,
                                   lagrange_rref, reasonable_order, reasonable_order_exhaustive,
                                   vandermonde_rref)
from tmeshdim.dimension import synthetic_tensor_component
from tmeshdim.errors import DuplicateNodes
from tmeshdim.hierarchy import HierarchicalTMesh, random_hmesh, subdivide
from tmeshdim.errors import Infeasible
from tmeshdim.linalg import exact_rank
from tmeshdim.mesh import t_connected_component


def test_edge_system():
    assert edge_system([1, 2, 3], 2) == [[1, 1, 1], [1, 2, 3], [1, 4, 9]]
    with pytest.raises(DuplicateNodes):
        edge_system([1, 1], 1)


def test_vanishable():
    assert is_vanishable(3, 3) and not is_vanishable(4, 3)
    comp = synthetic_tensor_component([0], [0], [1, 2])
    short = [e for e in comp.edges if len(e.vertices) == 1]
    assert is_vanishable(short[0], 1)


def test_block_system_shape():
    h = subdivide(HierarchicalTMesh.from_knots(range(6), range(6)), 1, [(1, 1), (2, 1), (1, 2), (2, 2)])
    sys_ = assemble(t_connected_component(h.mesh), 3)
    assert sys_.shape == (16, 16)
    assert sys_.rank().rank == exact_rank(sys_.dense()).rank


def test_single_edge_cvs():
    comp = synthetic_tensor_component([], [0], list(range(6)))
    assert dim_cvs(comp, 2) == 6 - 3


def test_reasonable_order_with_many_monos():
    comp = synthetic_tensor_component([0, 1], [0, 1], [2, 3, 4, 5], [2, 3, 4, 5])
    order = reasonable_order(comp, 3)
    assert order is not None and len(order) == 4
    assert dim_cvs(comp, 3) == comp.v_count - 4 * comp.t_count


def test_no_reasonable_order_for_tight_grid():
    comp = synthetic_tensor_component([0, 1, 2], [0, 1, 2], [3], [3])
    assert reasonable_order(comp, 3) is None
    assert reasonable_order_exhaustive(comp, 3) is None


def test_empty_component_order():
    comp = synthetic_tensor_component([], [], [], [])
    assert reasonable_order(comp, 2) == []


def _components(seed):
    rng = random.Random(seed)
    try:
        h = random_hmesh(seed, levels=rng.randint(1, 2), block_size=rng.randint(1, 3),
                         count_per_level=rng.randint(1, 3), allow_overlap=True, interior_only=False,
                         grid=6)
    except Infeasible:
        return []
    return t_connected_component(h.mesh).sub_components()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_greedy_order_matches_exhaustive(seed, d):
    for comp in _components(seed):
        if len(comp.edges) > 10:
            continue
        greedy = reasonable_order(comp, d)
        full = reasonable_order_exhaustive(comp, d)
        assert (greedy is None) == (full is None)
        if greedy is not None:
            assert dim_cvs(comp, d) == comp.v_count - (d + 1) * comp.t_count


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_bipartite_reduction_preserves_dimension(seed, d):
    for comp in _components(seed):
        red = bipartite_reduce(comp, d)
        assert dim_cvs(comp, d) == dim_cvs(red.core, d) + red.peeled_dim
        assert dim_cvs(red.peeled_component, d) == red.peeled_dim


def test_lagrange_example():
    assert vandermonde_rref([0, 1, 2, 3], 1) == [[1, 0, -1, -2], [0, 1, 2, 3]]
    assert lagrange_rref([0, 1, 2, 3], 1) == [[1, 0, -1, -2], [0, 1, 2, 3]]
    with pytest.raises(ValueError):
        vandermonde_rref([0, 1], 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5),
                                   min_size=2, max_size=9, unique=True))
def test_vandermonde_closed_form(n, nodes):
    if len(nodes) <= n + 1:
        return
    assert vandermonde_rref(nodes, n) == lagrange_rref(nodes, n)
