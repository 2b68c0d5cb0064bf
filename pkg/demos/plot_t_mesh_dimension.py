"""
Spline dimension on a small T-mesh
==================================

Build a T-mesh from segments, look at its l-edges, and compute the
dimension of the C^(d-1) bi-degree d spline space three ways.
"""

from tmeshdim import build_mesh, dim_rank, mesh_stats, t_connected_component
from tmeshdim.conformality import dim_cvs, reasonable_order
from tmeshdim.oracle import bnet_dim

# the boundary, two cross-cuts, a few rays and two T l-edges
segments = [((1, 1), (6, 1)), ((6, 1), (6, 7)), ((6, 7), (1, 7)), ((1, 7), (1, 1)),
            ((1, 6), (6, 6)), ((1, 4), (6, 4)), ((2, 6), (2, 1)), ((2, 5), (6, 5)),
            ((4, 7), (4, 2)), ((1, 2), (5, 2)), ((5, 6), (5, 1)), ((3, 5), (3, 2)),
            ((2, 3), (5, 3))]
mesh = build_mesh(segments)

for e in mesh.l_edges:
    a, b = mesh.vertices[e.vertices[0]], mesh.vertices[e.vertices[-1]]
    print(f"{e.kind:10s} {tuple(map(str, a))} -> {tuple(map(str, b))}  ({len(e.vertices)} vertices)")

s = mesh_stats(mesh)
print(f"v={s.v} t={s.t} c={s.c} n_v={s.n_v}")

# %%
# The dimension splits into a polynomial part, one term per cross-cut,
# one per interior vertex off the t-ledges, and the conformality space of
# the t-ledges.  The oracle solves the smoothness conditions cell by cell.
comp = t_connected_component(mesh)
for d in (1, 2, 3):
    cvs = dim_cvs(comp, d)
    order = reasonable_order(comp, d)
    print(f"d={d}: cvs={cvs} reasonable order={'yes' if order is not None else 'no'} "
          f"rank route={dim_rank(mesh, d)} oracle={bnet_dim(mesh, d)}")
