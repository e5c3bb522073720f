"""
Certifying non-degeneracy for n = 2..12
=======================================

Exact determinants of every extension matrix, for the homogeneous structure
and a few orbit-weighted ones.  Any zero would be a counterexample.
"""

# %%
import numpy as np

from sgharmonic import build_sg, homogeneous_structure, extension_matrices, nondegeneracy_report
from sgharmonic import HarmonicStructureCandidate, cell_orbits, is_harmonic_structure, solve_orbit_scale, standard_d
from sgharmonic.harmonic import random_orbit_weights

for n in range(2, 13):
    s = build_sg(n)
    cand = homogeneous_structure(s)
    rep = nondegeneracy_report(extension_matrices(s, cand))
    print(f"n={n:2d}  r*={cand.r[0]}  min|det|~{float(rep.min_metric):.3e}  {rep.verdict}")

# %%
# Weights constant on symmetry orbits still give harmonic structures, after
# one global rescaling.
rng = np.random.default_rng(0)
D = standard_d()
s = build_sg(4)
print("orbits:", cell_orbits(s))
for _ in range(3):
    w = random_orbit_weights(s, rng)
    cand = HarmonicStructureCandidate(D, solve_orbit_scale(s, D, w))
    ok, _ = is_harmonic_structure(s, cand)
    print(w, ok, nondegeneracy_report(extension_matrices(s, cand)).verdict)
