"""Batch checks: per-n sweep rows and randomized property suites."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import laplacian as la
from .cells import CellStructure, build_sg, subset_boundary
from .errors import SGError
from .harmonic import (
    HarmonicStructureCandidate,
    check_cell_constancy,
    extension_matrices,
    homogeneous_structure,
    is_harmonic_structure,
    nondegeneracy_report,
    random_orbit_weights,
    solve_orbit_scale,
    standard_d,
)
from .laplacian import DEFAULT_TOL, EXACT, Tolerances
from .verifiers import DECREASING, INCREASING, monotone_chain, verify_maximum_principle


@dataclass
class SweepRow:
    n: int
    mode: str
    r_star: object
    min_metric: object
    verdict: str
    millis: float

    CSV_HEADER = "n,mode,r_star,min_metric,verdict,millis"

    def csv(self, timing: bool = True) -> str:
        ms = f"{self.millis:.1f}" if timing else ""
        return f"{self.n},{self.mode},{la.format_scalar(self.r_star)},{la.format_scalar(self.min_metric)},{self.verdict},{ms}"


def certify_structure(s: CellStructure, cand: HarmonicStructureCandidate, tol: Tolerances = DEFAULT_TOL):
    """Harmonicity check plus non-degeneracy report for one candidate."""
    ok, residual = is_harmonic_structure(s, cand, tol.entry)
    report = nondegeneracy_report(extension_matrices(s, cand), tol.sv_floor, n=s.level)
    return ok, residual, report


def sweep_row(n: int, mode: str = EXACT, tol: Tolerances = DEFAULT_TOL, orbit_samples: int = 0, rng=None) -> SweepRow:
    """Homogeneous structure on SG_n (plus optional orbit-weighted ones), certified."""
    t0 = time.perf_counter()
    s = build_sg(n)
    cand = homogeneous_structure(s, mode, tol.entry)
    ok, _, report = certify_structure(s, cand, tol)
    metric = report.min_metric
    good = ok and not report.degenerate
    if orbit_samples:
        rng = np.random.default_rng(0) if rng is None else rng
        D = standard_d(mode)
        for _ in range(orbit_samples):
            r = solve_orbit_scale(s, D, random_orbit_weights(s, rng), tol.entry)
            ok2, _, rep2 = certify_structure(s, HarmonicStructureCandidate(D, r), tol)
            good = good and ok2 and not rep2.degenerate
            metric = min(metric, rep2.min_metric)
    millis = (time.perf_counter() - t0) * 1000
    return SweepRow(n, mode, cand.r[0], metric, "nondegenerate" if good else "degenerate", millis)


def random_boundary(rng, k: int = 3, low: int = -9, high: int = 9) -> list[int]:
    """Small-integer boundary data, constants rejected."""
    while True:
        u = [int(x) for x in rng.integers(low, high + 1, size=k)]
        if len(set(u)) > 1:
            return u


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, detail):
        self.failures.append(detail)


def property_suite(s: CellStructure, cand: HarmonicStructureCandidate, samples: int, rng,
                   tol: Tolerances = DEFAULT_TOL) -> dict[str, SuiteResult]:
    """Maximum principle, monotone chains, cell constancy and A_i consistency on random boundary data."""
    H1 = la.assemble_h1(s, cand.D, cand.r)
    mats = extension_matrices(s, cand)
    boundary = set(s.boundary)
    out = {name: SuiteResult(name) for name in ("maximum_principle", "monotone_chains", "cell_constancy", "extension_consistency")}
    for _ in range(samples):
        u = la.as_mode(random_boundary(rng, s.k), cand.mode)
        v = la.harmonic_extend(H1, s, u)

        res = verify_maximum_principle(H1, boundary, v, tol.level, tol.residual)
        out["maximum_principle"].checked += 1
        if not res:
            out["maximum_principle"].fail({"boundary": u.tolist(), "vertex": res.vertex, "reason": res.reason})

        for p in s.interior:
            row = H1[p]
            if all(la.is_zero(v[q] - v[p], tol.level) for q in range(s.vertex_count) if q != p and row[q] > 0):
                continue
            for direction in (INCREASING, DECREASING):
                out["monotone_chains"].checked += 1
                try:
                    monotone_chain(H1, s, v, p, direction, tol.level, tol.residual)
                except SGError as exc:
                    out["monotone_chains"].fail({"boundary": u.tolist(), "vertex": p, "direction": direction, "error": str(exc)})

        flat = check_cell_constancy(s, v, tol.level)
        out["cell_constancy"].checked += 1
        if flat:
            out["cell_constancy"].fail({"boundary": u.tolist(), "cells": [i for i, _ in flat]})

        for i, cell in enumerate(s.cells):
            out["extension_consistency"].checked += 1
            if not la.allclose(v[list(cell)], mats[i] @ u, tol.residual):
                out["extension_consistency"].fail({"boundary": u.tolist(), "cell": i})
    return out


def boundary_subset_suite(s: CellStructure, trials: int, rng) -> SuiteResult:
    """``|boundary(A)| >= 2`` for random proper interior subsets with ``|A| >= 2``."""
    result = SuiteResult("subset_boundary")
    interior = list(s.interior)
    if len(interior) < 3:
        return result
    for _ in range(trials):
        size = int(rng.integers(2, len(interior)))
        A = set(int(x) for x in rng.choice(interior, size=size, replace=False))
        result.checked += 1
        b = subset_boundary(s, A)
        if len(b) < 2:
            result.fail({"A": sorted(A), "boundary": sorted(b)})
    return result

