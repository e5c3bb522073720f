"""
A network that *is* degenerate
==============================

Three cells glued at one centre.  Each cell has a private corner that no
other cell touches, and the interior graph falls apart when the centre is
removed.  A nonconstant harmonic function can then vanish on a whole cell.
"""

# %%
from sgharmonic import build_star_toy, adjacency, is_two_connected
from sgharmonic import homogeneous_structure, extension_matrices, nondegeneracy_report
from sgharmonic import assemble_h1, harmonic_extend, check_cell_constancy

t = build_star_toy()
print("interior 2-connected:", is_two_connected(adjacency(t), t.interior))

# %%
cand = homogeneous_structure(t)
print("r* =", cand.r[0])
rep = nondegeneracy_report(extension_matrices(t, cand))
print(rep.verdict, "cell", rep.witness_cell, "kernel", [str(x) for x in rep.witness])

# %%
# The witness boundary data (0, 1, -1) extends to a function that is 0 on
# all of cell 0.
v = harmonic_extend(assemble_h1(t, cand.D, cand.r), t, [0, 1, -1])
print([str(x) for x in v])
print(check_cell_constancy(t, v))
