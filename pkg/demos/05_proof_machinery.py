"""
The objects the proof works with
================================

Maximum principle, monotone chains towards the boundary, geodesic chains and
level-set cell clusters, all on a concrete harmonic function on SG_4.
"""

# %%
from sgharmonic import build_sg, homogeneous_structure, assemble_h1, harmonic_extend, adjacency
from sgharmonic import verify_maximum_principle, monotone_chain, geodesic_chain, cell_cluster, reachability_set

s = build_sg(4)
cand = homogeneous_structure(s)
H1 = assemble_h1(s, cand.D, cand.r)
v = harmonic_extend(H1, s, [3, -1, 0])

# %%
# Every interior value lies strictly between the boundary extremes it can see.
print(verify_maximum_principle(H1, s.boundary, v))
p = s.interior[4]
print("U_p for p =", p, ":", reachability_set(H1, s.boundary, p))

# %%
# Strictly increasing and decreasing chains from p to the boundary.
for direction in ("increasing", "decreasing"):
    chain = monotone_chain(H1, s, v, p, direction)
    print(direction, chain, [str(v[q]) for q in chain])

# %%
# No cell is flat at any level.
print(sum(len(cell_cluster(s, v, c)) for c in set(v)), "flat clusters")

# %%
# A geodesic chain across the bottom row of cells.
g = adjacency(s)
bottom = {i for i, (a, b) in enumerate(s.coords) if b <= 1}
print(geodesic_chain(g, bottom, s.boundary[1], s.boundary[2]))
