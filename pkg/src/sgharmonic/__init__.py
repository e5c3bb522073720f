"""Harmonic structures on level-n Sierpinski gaskets, certified in exact arithmetic."""

from .cells import (
    AdjacencyGraph,
    CellStructure,
    LatticePoint,
    adjacency,
    build_sg,
    build_star_toy,
    cell_orbits,
    is_two_connected,
    subset_boundary,
)
from .harmonic import (
    ExtensionMatrices,
    HarmonicStructureCandidate,
    NondegeneracyReport,
    check_cell_constancy,
    evaluate_at_address,
    extension_matrices,
    homogeneous_structure,
    is_harmonic_structure,
    nondegeneracy_report,
    solve_homogeneous_ratio,
    solve_orbit_scale,
    standard_d,
)
from .laplacian import (
    EXACT,
    FLOAT,
    Tolerances,
    assemble_h1,
    dirichlet_energy,
    exact_array,
    float_array,
    harmonic_extend,
    schur_restriction,
    validate_laplacian,
)
from .verifiers import (
    cell_cluster,
    geodesic_chain,
    monotone_chain,
    reachability_set,
    verify_maximum_principle,
)

__version__ = "0.1.0"
