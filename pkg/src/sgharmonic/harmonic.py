"""Harmonic structures, extension matrices and the non-degeneracy certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import laplacian as la
from .cells import CellStructure, cell_orbits, orbit_labels
from .errors import InvalidAddress, MalformedMatrix, NotProportional
from .laplacian import DEFAULT_TOL, EXACT, FLOAT


def standard_d(mode: str = EXACT, k: int = 3) -> np.ndarray:
    """Unit-conductance complete graph on ``k`` boundary points."""
    D = la.zeros((k, k), mode)
    for p in range(k):
        for q in range(k):
            D[p, q] = (1 - k) if p == q else 1
    return la.as_mode(D, mode)


@dataclass
class HarmonicStructureCandidate:
    D: np.ndarray
    r: np.ndarray
    verified: bool = False

    def __post_init__(self):
        self.D = np.asarray(self.D)
        self.r = la.as_mode(self.r, la.mode_of(self.D))
        verdict = la.validate_laplacian(self.D)
        if not verdict.ok:
            raise MalformedMatrix("D is not a Laplacian: " + "; ".join(verdict.messages))
        for i, x in enumerate(self.r):
            if not x > 0:
                raise MalformedMatrix(f"weight r_{i} = {x} violates r_i > 0")

    @property
    def mode(self) -> str:
        return la.mode_of(self.D)


def _check_dims(s: CellStructure, cand: HarmonicStructureCandidate):
    if cand.D.shape != (s.k, s.k):
        raise MalformedMatrix(f"D must be {s.k}x{s.k} for {s.name}")
    if cand.r.shape != (s.n_cells,):
        raise MalformedMatrix(f"{s.name} needs {s.n_cells} weights, got {cand.r.shape[0]}")


def boundary_trace(s: CellStructure, D, r) -> np.ndarray:
    return la.schur_restriction(la.assemble_h1(s, D, r), s.boundary)


def is_harmonic_structure(s: CellStructure, cand: HarmonicStructureCandidate, tol: float = DEFAULT_TOL.entry):
    """Whether the boundary trace of ``H1(D, r)`` equals ``D``.

    Returns ``(ok, residual)`` with the largest entrywise deviation, and sets
    ``cand.verified`` accordingly.
    """
    _check_dims(s, cand)
    S = boundary_trace(s, cand.D, cand.r)
    residual = la.max_abs(S - cand.D)
    ok = la.is_zero(residual, tol)
    cand.verified = ok
    return ok, residual


def proportionality_factor(S, D, tol: float = DEFAULT_TOL.entry):
    """``lam`` with ``S == lam * D``, or ``None``."""
    S = np.asarray(S)
    D = np.asarray(D)
    p, q = np.unravel_index(max(range(D.size), key=lambda i: abs(D.flat[i])), D.shape)
    lam = S[p, q] / D[p, q]
    return lam if la.allclose(S, lam * D, tol) else None


def solve_homogeneous_ratio(s: CellStructure, D, tol: float = DEFAULT_TOL.entry):
    """The common weight ``r*`` making ``(D, (r*, ..., r*))`` harmonic.

    Uses ``H1(t r) = H1(r) / t``: with unit weights the trace is ``lam * D``
    and ``r* = lam``.
    """
    D = np.asarray(D)
    ones = [1] * s.n_cells
    S = boundary_trace(s, D, ones)
    lam = proportionality_factor(S, D, tol)
    if lam is None:
        raise NotProportional(f"trace of {s.name} with unit weights is not a multiple of D", S)
    return lam


def solve_orbit_scale(s: CellStructure, D, orbit_weights: Sequence, tol: float = DEFAULT_TOL.entry) -> np.ndarray:
    """Harmonic weights of the form ``t * rho`` with ``rho`` constant on symmetry orbits.

    ``orbit_weights[j]`` is the value of ``rho`` on orbit ``j`` of
    :func:`~sgharmonic.cells.cell_orbits`.
    """
    D = np.asarray(D)
    mode = la.mode_of(D)
    orbits = cell_orbits(s)
    if len(orbit_weights) != len(orbits):
        raise MalformedMatrix(f"{s.name} has {len(orbits)} orbits, got {len(orbit_weights)} weights")
    labels = orbit_labels(s, orbits)
    rho = la.as_mode([orbit_weights[j] for j in labels], mode)
    S = boundary_trace(s, D, rho)
    lam = proportionality_factor(S, D, tol)
    if lam is None:
        raise NotProportional(f"trace of {s.name} with orbit weights is not a multiple of D", S)
    return lam * rho


def homogeneous_structure(s: CellStructure, mode: str = EXACT, tol: float = DEFAULT_TOL.entry) -> HarmonicStructureCandidate:
    D = standard_d(mode, s.k)
    lam = solve_homogeneous_ratio(s, D, tol)
    return HarmonicStructureCandidate(D, [lam] * s.n_cells)


def random_orbit_weights(s: CellStructure, rng, low: int = 1, high: int = 9) -> list[int]:
    return [int(rng.integers(low, high + 1)) for _ in cell_orbits(s)]


# extension matrices -------------------------------------------------------------


@dataclass
class ExtensionMatrices:
    """``A[i]`` maps boundary values to values on the corners of cell ``i``.

    Rows follow the cell's corner order, columns the boundary order.
    """

    matrices: list[np.ndarray]
    structure: str = ""
    r: np.ndarray | None = None
    level: int | None = None

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    @property
    def mode(self) -> str:
        return la.mode_of(self.matrices[0])


def extension_matrices(s: CellStructure, cand: HarmonicStructureCandidate) -> ExtensionMatrices:
    """Works for any valid level-1 network; ``cand`` need not be harmonic."""
    _check_dims(s, cand)
    H1 = la.assemble_h1(s, cand.D, cand.r)
    basis = la.identity(s.k, cand.mode)
    V = la.extend_columns(H1, s.boundary, basis)
    mats = [V[list(cell), :] for cell in s.cells]
    return ExtensionMatrices(mats, s.name, cand.r, s.level)


@dataclass
class NondegeneracyReport:
    mode: str
    metrics: list  # exact determinants, or minimum singular values
    degenerate: bool
    witness_cell: int | None = None
    witness: np.ndarray | None = None
    structure: str = ""
    n: int | None = None
    r: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "degenerate" if self.degenerate else "nondegenerate"

    @property
    def min_metric(self):
        return min(abs(x) for x in self.metrics)

    def to_dict(self) -> dict:
        key = "det" if self.mode == EXACT else "min_singular_value"
        doc = {
            "structure": self.structure,
            "n": self.n,
            "mode": self.mode,
            "r": [la.format_scalar(x) for x in self.r],
            "cells": [{"cell": i, key: la.format_scalar(x)} for i, x in enumerate(self.metrics)],
            "verdict": self.verdict,
        }
        if self.degenerate:
            doc["witness"] = {"cell": self.witness_cell, "kernel": [la.format_scalar(x) for x in self.witness]}
        return doc


def nondegeneracy_report(m: ExtensionMatrices, sv_floor: float = DEFAULT_TOL.sv_floor, n: int | None = None) -> NondegeneracyReport:
    """Exact determinants (exact mode) or smallest singular values (float mode).

    A degenerate verdict carries the first singular cell and a kernel vector
    of it: exact, normalised to a leading 1, in exact mode; the bottom right
    singular vector in float mode.
    """
    mode = m.mode
    r = [] if m.r is None else list(m.r)
    n = m.level if n is None else n
    if mode == EXACT:
        dets = [la.determinant(A) for A in m.matrices]
        bad = next((i for i, d in enumerate(dets) if d == 0), None)
        report = NondegeneracyReport(EXACT, dets, bad is not None, structure=m.structure, n=n, r=r)
        if bad is not None:
            report.witness_cell = bad
            report.witness = la.nullspace(m.matrices[bad])[0]
        return report
    svs = []
    for A in m.matrices:
        svs.append(float(np.linalg.svd(np.asarray(A, dtype=float), compute_uv=False)[-1]))
    bad = next((i for i, x in enumerate(svs) if x <= sv_floor), None)
    report = NondegeneracyReport(FLOAT, svs, bad is not None, structure=m.structure, n=n, r=r)
    if bad is not None:
        report.witness_cell = bad
        report.witness = np.linalg.svd(np.asarray(m.matrices[bad], dtype=float))[2][-1]
    return report


def check_cell_constancy(s: CellStructure, v, tol: float = DEFAULT_TOL.level) -> list[tuple[int, object]]:
    """Cells on which ``v`` takes a single value, with that value."""
    v = np.asarray(v)
    out = []
    for i, cell in enumerate(s.cells):
        vals = [v[p] for p in cell]
        if all(la.is_zero(x - vals[0], tol) for x in vals[1:]):
            out.append((i, vals[0]))
    return out


def evaluate_at_address(m: ExtensionMatrices, address: Sequence[int], boundary_values) -> np.ndarray:
    """``A[i_m] ... A[i_1] u`` for the address ``(i_1, ..., i_m)``."""
    u = la.as_mode(boundary_values, m.mode)
    k = m.matrices[0].shape[1]
    if u.shape != (k,):
        raise MalformedMatrix(f"expected {k} boundary values")
    for i in address:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < len(m):
            raise InvalidAddress(f"no cell {i!r} (have {len(m)})")
        u = m.matrices[i] @ u
    return u
