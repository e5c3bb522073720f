from fractions import Fraction as F

import numpy as np
import pytest

from sgharmonic import laplacian as la
from sgharmonic.cells import M, Q0, Q1, Q2, W0, adjacency, build_sg, build_star_toy
from sgharmonic.certify import random_boundary
from sgharmonic.errors import InvalidParameter, NoChain, NoPath, PreconditionViolated
from sgharmonic.harmonic import homogeneous_structure
from sgharmonic.verifiers import (
    DECREASING,
    INCREASING,
    cell_cluster,
    geodesic_chain,
    is_chain,
    level_set,
    monotone_chain,
    reachability_set,
    verify_maximum_principle,
)

SG2_Q0, SG2_M01, SG2_M02, SG2_Q1, SG2_M12, SG2_Q2 = range(6)


def network(s, mode=la.EXACT):
    cand = homogeneous_structure(s, mode)
    return la.assemble_h1(s, cand.D, cand.r)


def all_simple_path_lengths(g, A, a, b):
    """Edge counts of every simple path from a to b inside A (exhaustive DFS)."""
    out = []

    def walk(x, seen):
        if x == b:
            out.append(len(seen) - 1)
            return
        for q in g.neighbors(x):
            if q in A and q not in seen:
                walk(q, seen | {q})

    walk(a, {a})
    return out


@pytest.fixture
def sg2():
    s = build_sg(2)
    H = network(s)
    return s, H, la.harmonic_extend(H, s, [1, 0, 0])


def test_reachability(sg2):
    s, H, _ = sg2
    assert reachability_set(H, s.boundary, SG2_M01) == {SG2_Q0, SG2_Q1, SG2_Q2}
    rest = set(range(6)) - {SG2_M12}
    assert reachability_set(H, rest, SG2_M12) == set(adjacency(s).neighbors(SG2_M12))
    t = build_star_toy()
    assert reachability_set(network(t), {Q0, Q1, Q2, M}, W0) == {Q0, M}
    with pytest.raises(InvalidParameter):
        reachability_set(H, s.boundary, SG2_Q0)


def test_maximum_principle_examples(sg2):
    s, H, v = sg2
    res = verify_maximum_principle(H, s.boundary, v)
    assert res.passed and res.strict == 3
    assert verify_maximum_principle(H, s.boundary, [F(4)] * 6).passed
    tampered = v.copy()
    tampered[SG2_M01] = F(2)
    with pytest.raises(PreconditionViolated):
        verify_maximum_principle(H, s.boundary, tampered)


def test_maximum_principle_detects_violation():
    # a non-Laplacian operator can make harmonic-off-U functions break the bound
    H = la.exact_array([[-1, 0, 0], [0, -1, 0], [0, 0, 0]])
    H[2, 0] = H[0, 2] = F(1)
    H[2, 1] = H[1, 2] = F(-2)
    H[2, 2] = F(1)
    v = la.exact_array([1, 0, -1])  # (Hv)(2) = 1 + 0 - 1 = 0
    res = verify_maximum_principle(H, {0, 1}, v)
    assert not res.passed and res.vertex == 2


@pytest.mark.parametrize("n", [2, 3, 5])
def test_maximum_principle_random_supersets(n):
    rng = np.random.default_rng(n)
    s = build_sg(n)
    H = network(s)
    interior = list(s.interior)
    for _ in range(50):
        extra = rng.choice(interior, size=int(rng.integers(0, len(interior))), replace=False)
        U = set(s.boundary) | {int(x) for x in extra}
        # harmonic off U: prescribe random data on U, extend
        values = la.exact_array(rng.integers(-9, 10, size=len(U)))
        v = la.harmonic_extend(H, sorted(U), values)
        assert verify_maximum_principle(H, U, v).passed


def test_monotone_chain_examples(sg2):
    s, H, v = sg2
    up = monotone_chain(H, s, v, SG2_M12, INCREASING)
    assert up == [SG2_M12, SG2_M01, SG2_Q0]
    assert [v[p] for p in up] == [F(1, 5), F(2, 5), 1]
    assert monotone_chain(H, s, v, SG2_M12, DECREASING) == [SG2_M12, SG2_Q1]
    with pytest.raises(NoChain):
        monotone_chain(H, s, la.exact_array([1] * 6), SG2_M12)
    with pytest.raises(NoChain):
        monotone_chain(H, s, v, SG2_Q0)
    with pytest.raises(InvalidParameter):
        monotone_chain(H, s, v, SG2_M12, "sideways")


def test_monotone_chain_needs_differing_neighbour():
    t = build_star_toy()
    H = network(t)
    v = la.harmonic_extend(H, t, [0, 1, -1])
    with pytest.raises(NoChain):
        monotone_chain(H, t, v, W0)  # w0, q0 and m all sit at 0
    assert monotone_chain(H, t, v, M, INCREASING)[-1] in t.boundary


@pytest.mark.parametrize("n", range(2, 9))
def test_monotone_chains_from_every_vertex(n):
    rng = np.random.default_rng(300 + n)
    s = build_sg(n)
    H = network(s)
    g = adjacency(s)
    for _ in range(20):
        v = la.harmonic_extend(H, s, random_boundary(rng))
        for p in s.interior:
            if all(v[q] == v[p] for q in g.neighbors(p)):
                continue
            for direction, sign in ((INCREASING, 1), (DECREASING, -1)):
                chain = monotone_chain(H, s, v, p, direction)
                assert chain[0] == p and chain[-1] in s.boundary
                assert is_chain(g, chain)
                assert all(sign * (v[b] - v[a]) > 0 for a, b in zip(chain, chain[1:]))


def test_monotone_chain_float():
    s = build_sg(4)
    H = network(s, la.FLOAT)
    v = la.harmonic_extend(H, s, [1.0, 0.0, -1.0])
    chain = monotone_chain(H, s, v, s.interior[3], DECREASING)
    assert chain[-1] in s.boundary
    assert all(v[b] < v[a] for a, b in zip(chain, chain[1:]))


def test_geodesic_examples():
    s = build_sg(2)
    g = adjacency(s)
    mids = {SG2_M01, SG2_M02, SG2_M12}
    assert geodesic_chain(g, mids, SG2_M01, SG2_M12) == [SG2_M01, SG2_M12]
    assert geodesic_chain(g, mids, SG2_M02, SG2_M02) == [SG2_M02]
    with pytest.raises(NoPath):
        geodesic_chain(g, {SG2_Q0, SG2_Q1}, SG2_Q0, SG2_Q1)
    with pytest.raises(NoPath):
        geodesic_chain(g, mids, SG2_M01, SG2_Q0)


def test_geodesic_along_side():
    s = build_sg(4)
    g = adjacency(s)
    # bottom row of cells; their vertices are lattice rows b = 0 and b = 1
    A = {i for i, (a, b) in enumerate(s.coords) if b <= 1}
    index = {pt: i for i, pt in enumerate(s.coords)}
    chain = geodesic_chain(g, A, index[0, 0], index[4, 0])
    assert len(chain) - 1 == 4
    assert len(chain) - 1 == min(all_simple_path_lengths(g, A, index[0, 0], index[4, 0]))


@pytest.mark.parametrize("n", [2, 3])
def test_geodesic_is_shortest(n):
    s = build_sg(n)
    g = adjacency(s)
    rng = np.random.default_rng(n)
    verts = list(range(s.vertex_count))
    for _ in range(20):
        A = set(int(x) for x in rng.choice(verts, size=int(rng.integers(2, len(verts) + 1)), replace=False))
        a1, a2 = sorted(A)[0], sorted(A)[-1]
        lengths = all_simple_path_lengths(g, A, a1, a2)
        if not lengths:
            with pytest.raises(NoPath):
                geodesic_chain(g, A, a1, a2)
            continue
        chain = geodesic_chain(g, A, a1, a2)
        assert is_chain(g, chain) and set(chain) <= A
        assert len(chain) - 1 == min(lengths)


def test_cell_cluster_examples(sg2):
    s, H, v = sg2
    assert cell_cluster(s, v, F(2, 5)) == []
    const = la.exact_array([5] * 6)
    assert cell_cluster(s, const, 5) == [({0, 1, 2}, set(range(6)))]
    t = build_star_toy()
    vt = la.harmonic_extend(network(t), t, [0, 1, -1])
    assert cell_cluster(t, vt, 0) == [({0}, {Q0, M, W0})]
    assert level_set(vt, 0) == {Q0, M, W0}


def test_cell_cluster_groups_by_shared_vertex():
    s = build_sg(3)
    v = la.exact_array([0] * s.vertex_count)
    for p in s.cells[2]:  # one middle cell moved to another level
        v[p] = F(1)
    clusters = cell_cluster(s, v, 0)
    cells = set().union(*(c for c, _ in clusters))
    assert 2 not in cells
    assert all(set(s.cells[i]) <= verts for c, verts in clusters for i in c)


@pytest.mark.parametrize("n", range(2, 13))
def test_no_flat_cells_for_generated_structures(n):
    from sgharmonic.harmonic import HarmonicStructureCandidate, random_orbit_weights, solve_orbit_scale, standard_d

    rng = np.random.default_rng(700 + n)
    s = build_sg(n)
    D = standard_d()
    cands = [homogeneous_structure(s)]
    cands += [HarmonicStructureCandidate(D, solve_orbit_scale(s, D, random_orbit_weights(s, rng))) for _ in range(5)]
    boundaries = [[1, 0, 0], [0, 1, 0], [0, 0, 1]] + [random_boundary(rng) for _ in range(20)]
    for cand in cands:
        H = la.assemble_h1(s, cand.D, cand.r)
        V = la.extend_columns(H, s.boundary, np.array(boundaries, dtype=object).T)
        for j in range(V.shape[1]):
            v = V[:, j]
            for c in set(v):
                assert cell_cluster(s, v, c) == []
