"""
Hierarchical meshes made of blocks
==================================

When each level is a union of (d-1) x (d-1) cell blocks the dimension
depends only on counts.  The closed form below is checked against the
direct rank and the per-cell oracle on a few random meshes.
"""

from tmeshdim import dim_closed_form, dim_rank, dimension_report, random_hmesh
from tmeshdim.errors import Infeasible
from tmeshdim.oracle import bnet_dim

d = 3
seed, shown = 0, 0
while shown < 4:
    seed += 1
    try:
        h = random_hmesh(seed, levels=2, block_size=d - 1, count_per_level=2,
                         allow_overlap=True, interior_only=True, grid=6)
    except Infeasible:
        continue
    cf = dim_closed_form(h, d)
    print(f"seed {seed}: closed form {cf.corrected_value} (printed constant gives {cf.printed_value}),"
          f" rank {dim_rank(h.mesh, d)}, oracle {bnet_dim(h.mesh, d)}")
    shown += 1

# %%
# A report runs every route at once.  ``agree`` ignores the uncorrected
# constant unless it is asked for.
rep = dimension_report(h, d)
print(rep.methods, rep.agree)
print(dimension_report(h, d, include_printed_constant=True).agree)
