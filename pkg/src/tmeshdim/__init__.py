"""Exact dimensions of C^(d-1) bi-degree d spline spaces over T-meshes."""
from .conformality import (assemble, bipartite_reduce, dim_cvs, is_vanishable, lagrange_rref,
                           reasonable_order, vandermonde_rref)
from .cvr import CVRGraph, cvr_graph, subdivide_boundary_cells, verify_cvr_conjecture
from .dimension import (DimensionReport, dim_closed_form, dim_cvs_blocks, dim_homogeneous,
                        dim_homogeneous_blocks, dim_rank, dim_recursive, dim_tensor_component,
                        dimension_report, extend_mesh, stability_probe, tensor_component_stats)
from .errors import *  # noqa: F401,F403
from .hierarchy import (HierarchicalTMesh, flatten, isolated_block_components, level_sets,
                        random_hmesh, subdivide)
from .io import parse_mesh_file, parse_report, serialize_mesh, serialize_report
from .mesh import Segment, TMesh, build_mesh, l_edges, mesh_stats, t_connected_component, tensor_mesh
from .oracle import bnet_dim, bnet_dim_homogeneous
from .stabilize import is_stable_form, stabilize
from .svg import render_svg

__version__ = "0.1.0"
