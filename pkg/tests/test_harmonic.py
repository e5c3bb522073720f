from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp

from sgharmonic import laplacian as la
from sgharmonic.cells import M, W0, build_sg, build_star_toy, cell_orbits
from sgharmonic.errors import InvalidAddress, MalformedMatrix, NotProportional
from sgharmonic.harmonic import (
    ExtensionMatrices,
    HarmonicStructureCandidate,
    check_cell_constancy,
    evaluate_at_address,
    extension_matrices,
    homogeneous_structure,
    is_harmonic_structure,
    nondegeneracy_report,
    random_orbit_weights,
    solve_homogeneous_ratio,
    solve_orbit_scale,
    standard_d,
)
from sgharmonic.laplacian import EXACT, FLOAT, exact_array

from oracles import det3, schur, sg_laplacian

D_STD = standard_d()
A0_SG2 = [[1, 0, 0], [F(2, 5), F(2, 5), F(1, 5)], [F(2, 5), F(1, 5), F(2, 5)]]


def test_standard_d():
    assert (D_STD == exact_array([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])).all()
    assert standard_d(FLOAT).dtype == float


def test_is_harmonic_sg2():
    s = build_sg(2)
    cand = HarmonicStructureCandidate(D_STD, [F(3, 5)] * 3)
    assert is_harmonic_structure(s, cand) == (True, 0)
    assert cand.verified
    bad = HarmonicStructureCandidate(D_STD, [1, 1, 1])
    ok, residual = is_harmonic_structure(s, bad)
    assert not ok and residual == F(4, 5)  # diagonal -6/5 vs -2; off-diagonals differ by 2/5
    S = la.schur_restriction(la.assemble_h1(s, D_STD, [1, 1, 1]), s.boundary)
    assert S[0, 1] - D_STD[0, 1] == F(-2, 5)
    assert not bad.verified


def test_candidate_rejects_bad_input():
    with pytest.raises(MalformedMatrix):
        HarmonicStructureCandidate(D_STD, [1, 0, 1])
    with pytest.raises(MalformedMatrix):
        HarmonicStructureCandidate(exact_array([[1, -1], [-1, 1]]), [1])
    with pytest.raises(MalformedMatrix):
        is_harmonic_structure(build_sg(2), HarmonicStructureCandidate(D_STD, [1, 1]))


@pytest.mark.parametrize("n, expected", [(2, F(3, 5)), (3, F(7, 15)), (4, F(41, 103)), (5, F(591, 1663))])
def test_homogeneous_ratio(n, expected):
    # expected values come from the sympy oracle (tests/oracles.py)
    assert solve_homogeneous_ratio(build_sg(n), D_STD) == expected


@pytest.mark.parametrize("n", [3, 4])
def test_homogeneous_ratio_oracle(n):
    H, boundary, *_ = sg_laplacian(n)
    S = schur(H, boundary)
    lam = S[0, 1]
    assert S == lam * sp.Matrix([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    r = solve_homogeneous_ratio(build_sg(n), D_STD)
    assert sp.Rational(r.numerator, r.denominator) == lam


def test_star_toy_ratio():
    t = build_star_toy()
    r = solve_homogeneous_ratio(t, D_STD)
    assert r == F(1, 2)
    assert is_harmonic_structure(t, HarmonicStructureCandidate(D_STD, [r] * 3))[0]


def test_not_proportional():
    D = exact_array([[-3, 1, 2], [1, -4, 3], [2, 3, -5]])
    with pytest.raises(NotProportional) as info:
        solve_homogeneous_ratio(build_sg(2), D)
    assert info.value.schur is not None


def test_orbit_scale():
    s3 = build_sg(3)
    assert (solve_orbit_scale(s3, D_STD, [1, 1]) == F(7, 15)).all()
    r = solve_orbit_scale(s3, D_STD, [1, 2])
    # sympy oracle: corner cells weight 1, middle cells 2 -> trace factor 4/11
    corner, middle = cell_orbits(s3)
    assert all(r[i] == F(4, 11) for i in corner) and all(r[i] == F(8, 11) for i in middle)
    assert is_harmonic_structure(s3, HarmonicStructureCandidate(D_STD, r)) == (True, 0)

    s4 = build_sg(4)
    r4 = solve_orbit_scale(s4, D_STD, [1, 2, 3])
    assert len(set(r4)) == 3
    assert is_harmonic_structure(s4, HarmonicStructureCandidate(D_STD, r4))[0]
    with pytest.raises(MalformedMatrix):
        solve_orbit_scale(s4, D_STD, [1, 2])


def test_orbit_scale_oracle():
    n = 3
    corners = {(n, n), (0, 0), (2 * n, 0)}
    H, boundary, *_ = sg_laplacian(n, lambda tri: 1 if set(tri) & corners else 2)
    assert schur(H, boundary)[0, 1] == sp.Rational(4, 11)


def test_extension_matrices_sg2():
    s = build_sg(2)
    mats = extension_matrices(s, HarmonicStructureCandidate(D_STD, [F(3, 5)] * 3))
    assert (mats[0] == exact_array(A0_SG2)).all()
    for A in mats.matrices:
        assert list(A @ exact_array([1, 1, 1])) == [1, 1, 1]
    rep = nondegeneracy_report(mats)
    assert rep.metrics == [F(3, 25)] * 3
    assert rep.verdict == "nondegenerate"
    assert det3(A0_SG2) == F(3, 25)


def test_extension_matrices_star_toy():
    t = build_star_toy()
    cand = HarmonicStructureCandidate(D_STD, [F(1, 2)] * 3)
    mats = extension_matrices(t, cand)
    assert list(mats[0] @ exact_array([0, 1, -1])) == [0, 0, 0]
    rep = nondegeneracy_report(mats)
    assert rep.degenerate and rep.witness_cell == 0
    assert list(rep.witness) == [0, 1, -1]
    assert all(x == 0 for x in mats[rep.witness_cell] @ rep.witness)


def test_extension_does_not_need_harmonicity():
    s = build_sg(3)
    mats = extension_matrices(s, HarmonicStructureCandidate(D_STD, [1, 2, 3, 4, 5, 6]))
    assert not nondegeneracy_report(mats).degenerate


def test_identity_report():
    rep = nondegeneracy_report(ExtensionMatrices([la.identity(3, EXACT)] * 2))
    assert rep.metrics == [1, 1] and not rep.degenerate


def test_float_report():
    s = build_sg(4)
    mats = extension_matrices(s, homogeneous_structure(s, FLOAT))
    rep = nondegeneracy_report(mats)
    assert rep.mode == FLOAT and not rep.degenerate
    exact = nondegeneracy_report(extension_matrices(s, homogeneous_structure(s)))
    # det = product of singular values, so |det|^(1/3) bounds the smallest from above
    for sv, d in zip(rep.metrics, exact.metrics):
        assert 0 < sv <= abs(float(d)) ** (1 / 3) + 1e-12
    t = build_star_toy()
    frep = nondegeneracy_report(extension_matrices(t, homogeneous_structure(t, FLOAT)))
    assert frep.degenerate and frep.witness_cell == 0
    w = frep.witness / frep.witness[1]
    assert np.allclose(w, [0, 1, -1])


def test_report_serialization():
    s = build_sg(2)
    rep = nondegeneracy_report(extension_matrices(s, homogeneous_structure(s)), n=2)
    doc = rep.to_dict()
    assert doc["cells"][0] == {"cell": 0, "det": "3/25"}
    assert doc["r"] == ["3/5"] * 3 and doc["verdict"] == "nondegenerate" and "witness" not in doc
    t = build_star_toy()
    tdoc = nondegeneracy_report(extension_matrices(t, homogeneous_structure(t))).to_dict()
    assert tdoc["witness"] == {"cell": 0, "kernel": ["0/1", "1/1", "-1/1"]}


@pytest.mark.parametrize("n", range(2, 9))
def test_consistency_and_constants(n):
    rng = np.random.default_rng(n)
    s = build_sg(n)
    cand = homogeneous_structure(s)
    H1 = la.assemble_h1(s, cand.D, cand.r)
    mats = extension_matrices(s, cand)
    for _ in range(5):
        u = exact_array(rng.integers(-9, 10, size=3))
        v = la.harmonic_extend(H1, s, u)
        for i, cell in enumerate(s.cells):
            assert (v[list(cell)] == mats[i] @ u).all()
    for A in mats.matrices:
        assert (A @ exact_array([1, 1, 1]) == 1).all()


@pytest.mark.parametrize("n", range(2, 13))
def test_every_generated_structure_nondegenerate(n):
    rng = np.random.default_rng(1000 + n)
    s = build_sg(n)
    cands = [homogeneous_structure(s)]
    for _ in range(5):
        cands.append(HarmonicStructureCandidate(D_STD, solve_orbit_scale(s, D_STD, random_orbit_weights(s, rng))))
    for cand in cands:
        assert is_harmonic_structure(s, cand)[0]
        rep = nondegeneracy_report(extension_matrices(s, cand))
        assert all(d != 0 for d in rep.metrics)


def test_scale_invariance():
    rng = np.random.default_rng(9)
    s = build_sg(4)
    cand = homogeneous_structure(s)
    base = extension_matrices(s, cand)
    for _ in range(3):
        c = F(int(rng.integers(1, 50)), int(rng.integers(1, 50)))
        scaled = extension_matrices(s, HarmonicStructureCandidate(c * cand.D, cand.r))
        assert all((a == b).all() for a, b in zip(base.matrices, scaled.matrices))


def test_cell_constancy():
    s = build_sg(2)
    cand = homogeneous_structure(s)
    H1 = la.assemble_h1(s, cand.D, cand.r)
    assert check_cell_constancy(s, la.harmonic_extend(H1, s, [1, 0, 0])) == []
    assert check_cell_constancy(s, [F(3)] * 6) == [(0, 3), (1, 3), (2, 3)]
    t = build_star_toy()
    ct = homogeneous_structure(t)
    v = la.harmonic_extend(la.assemble_h1(t, ct.D, ct.r), t, [0, 1, -1])
    assert v[M] == 0 and v[W0] == 0
    assert check_cell_constancy(t, v) == [(0, 0)]


def test_evaluate_at_address():
    s = build_sg(2)
    mats = extension_matrices(s, homogeneous_structure(s))
    assert list(evaluate_at_address(mats, [], [1, 0, 0])) == [1, 0, 0]
    assert list(evaluate_at_address(mats, [0], [1, 0, 0])) == [1, F(2, 5), F(2, 5)]
    # A0 (A0 e0) = A0 (1, 2/5, 2/5) = (1, 16/25, 16/25), cross-checked in sympy
    expected = sp.Matrix(A0_SG2) ** 2 * sp.Matrix([1, 0, 0])
    got = evaluate_at_address(mats, [0, 0], [1, 0, 0])
    assert list(got) == [1, F(16, 25), F(16, 25)]
    assert [sp.Rational(x.numerator, x.denominator) for x in got] == list(expected)
    for i in range(3):
        assert (evaluate_at_address(mats, [i], [3, -1, 2]) == mats[i] @ exact_array([3, -1, 2])).all()
    with pytest.raises(InvalidAddress):
        evaluate_at_address(mats, [3], [1, 0, 0])
    with pytest.raises(InvalidAddress):
        evaluate_at_address(mats, [-1], [1, 0, 0])

