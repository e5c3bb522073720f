"""
The level-2 gasket, end to end
==============================

Build SG_2, find the weight that makes the unit-conductance triangle a
harmonic structure, and read off the extension matrices.
"""

# %%
# Six vertices, three cells.  Corner j of each cell is the image of q_j.
from sgharmonic import build_sg, standard_d, solve_homogeneous_ratio
from sgharmonic import HarmonicStructureCandidate, extension_matrices, nondegeneracy_report
from sgharmonic import assemble_h1, harmonic_extend, schur_restriction

s = build_sg(2)
print(s.cells)

# %%
# With every cell weighted 1, the network seen from the boundary is the
# original triangle scaled by 3/5.  That factor is the harmonic weight.
D = standard_d()
H = assemble_h1(s, D, [1, 1, 1])
print(schur_restriction(H, s.boundary))
r = solve_homogeneous_ratio(s, D)
print("r* =", r)

# %%
# Harmonic extension of (1, 0, 0): the classical 2/5, 2/5, 1/5 pattern.
cand = HarmonicStructureCandidate(D, [r] * 3)
v = harmonic_extend(assemble_h1(s, D, cand.r), s, [1, 0, 0])
print([str(x) for x in v])

# %%
# Extension matrices and their determinants.
mats = extension_matrices(s, cand)
print(mats[0])
print(nondegeneracy_report(mats).to_dict())
