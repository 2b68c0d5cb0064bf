"""
Geometry-dependent dimension and how to remove it
=================================================

The same topology with different knot positions can give different
dimensions.  Covering each level with (d-1) x (d-1) templates removes the
dependence, and the CVR graph of the covered mesh carries the same
homogeneous dimension two degrees lower.
"""

from collections import Counter

from tmeshdim import HierarchicalTMesh, subdivide, stabilize, render_svg, verify_cvr_conjecture
from tmeshdim.dimension import probe_samples

d = 4
h = HierarchicalTMesh.from_knots(range(1, 8), range(1, 8))
h = subdivide(h, 1, [(2, 4), (3, 4), (4, 4), (3, 3), (4, 3), (5, 3), (4, 2), (3, 5)])

rows = probe_samples(h, d, 50, seed=0)
print("dimensions over 50 knot draws:", dict(Counter(v for _, _, v in rows)))
for xk, yk, v in rows:
    if v == max(r[2] for r in rows):
        print("special knots:", [str(x) for x in xk], [str(y) for y in yk])
        break

# %%
# Cover the subdivided cells with 3 x 3 blocks.
st = stabilize(h, d)
print("cells added:", len(st.subdivided(1)) - len(h.subdivided(1)))
print("dimensions after covering:", dict(Counter(v for _, _, v in probe_samples(st, d, 20, seed=0))))

# %%
# The CVR graph keeps the cross vertices only.
for deg in (2, 3, 4):
    chk = verify_cvr_conjecture(st, deg)
    print(f"d={deg}: mesh {chk.lhs}, CVR graph {chk.rhs}, per level {chk.levels}")

with open("stabilized_with_cvr.svg", "wb") as f:
    f.write(render_svg(st.mesh, cvr=True))
