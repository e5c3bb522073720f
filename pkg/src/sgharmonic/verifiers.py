"""Executable checks for the maximum principle, monotone chains and level-set cells."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import laplacian as la
from .cells import AdjacencyGraph, CellStructure
from .errors import InvalidParameter, NoChain, NoPath, PreconditionViolated
from .laplacian import DEFAULT_TOL

INCREASING = "increasing"
DECREASING = "decreasing"


def _positive_neighbors(H, p: int, tol: float) -> list[int]:
    row = H[p]
    return [q for q in range(H.shape[0]) if q != p and row[q] > 0 and not la.is_zero(row[q], tol)]


def reachability_set(H, U: Iterable[int], p: int, tol: float = DEFAULT_TOL.entry) -> set[int]:
    """``U_p``: vertices of ``U`` reached from ``p`` by walking in ``V \\ U`` and stepping once into ``U``."""
    H = np.asarray(H)
    U = set(U)
    if p in U:
        raise InvalidParameter(f"p = {p} lies in U")
    if not U or len(U) >= H.shape[0]:
        raise InvalidParameter("U must be a proper nonempty subset")
    seen = {p}
    queue = deque([p])
    hits = set()
    while queue:
        x = queue.popleft()
        for q in _positive_neighbors(H, x, tol):
            if q in U:
                hits.add(q)
            elif q not in seen:
                seen.add(q)
                queue.append(q)
    return hits


@dataclass
class MaxPrincipleResult:
    passed: bool
    vertex: int | None = None
    reason: str = ""
    strict: int = 0  # vertices where both inequalities are strict

    def __bool__(self):
        return self.passed


def verify_maximum_principle(H, U: Iterable[int], v, tol: float = DEFAULT_TOL.level,
                             residual_tol: float = DEFAULT_TOL.residual) -> MaxPrincipleResult:
    """Check ``min v(U_p) <= v(p) <= max v(U_p)`` off ``U`` and the equality case.

    The equality case is checked both ways: hitting the max or the min forces
    ``v`` to be constant on ``U_p``, and a constant ``U_p`` forces ``v(p)``
    to equal that constant.
    """
    H = np.asarray(H)
    U = set(U)
    v = np.asarray(v)
    off = [p for p in range(H.shape[0]) if p not in U]
    res = la.harmonic_residual(H, U, v)
    if not la.is_zero(res, residual_tol):
        raise PreconditionViolated(f"v is not harmonic off U (residual {res})")
    strict = 0
    for p in off:
        Up = reachability_set(H, U, p)
        vals = [v[q] for q in Up]
        lo, hi = min(vals), max(vals)
        vp = v[p]
        below = vp < lo and not la.is_zero(vp - lo, tol)
        above = vp > hi and not la.is_zero(vp - hi, tol)
        if below or above:
            return MaxPrincipleResult(False, p, f"v({p}) = {vp} outside [{lo}, {hi}]")
        const = la.is_zero(hi - lo, tol)
        at_extreme = la.is_zero(vp - hi, tol) or la.is_zero(vp - lo, tol)
        if at_extreme != const:
            what = "attains an extreme without U_p constant" if at_extreme else "misses the constant value of U_p"
            return MaxPrincipleResult(False, p, f"v({p}) {what}")
        strict += not at_extreme
    return MaxPrincipleResult(True, strict=strict)


def monotone_chain(H1, s: CellStructure, v, p: int, direction: str = INCREASING,
                   tol: float = DEFAULT_TOL.level, residual_tol: float = DEFAULT_TOL.residual) -> list[int]:
    """Strictly monotone chain from interior ``p`` to the boundary.

    Each step moves to the neighbour with the largest change in the requested
    direction, lowest id on ties.
    """
    if direction not in (INCREASING, DECREASING):
        raise InvalidParameter(f"direction must be {INCREASING!r} or {DECREASING!r}")
    H1 = np.asarray(H1)
    v = np.asarray(v)
    boundary = set(s.boundary)
    if p in boundary or not 0 <= p < s.vertex_count:
        raise NoChain(f"p = {p} is not an interior vertex")
    res = la.harmonic_residual(H1, s.boundary, v)
    if not la.is_zero(res, residual_tol):
        raise NoChain(f"v does not solve the interior equation (residual {res})")
    if all(la.is_zero(x - v[0], tol) for x in v):
        raise NoChain("v is constant")
    sgn = 1 if direction == INCREASING else -1
    if all(la.is_zero(v[q] - v[p], tol) for q in _positive_neighbors(H1, p, tol)):
        raise NoChain(f"every neighbour of {p} shares its value")
    chain = [p]
    while chain[-1] not in boundary:
        x = chain[-1]
        best, gain = None, 0
        for q in _positive_neighbors(H1, x, tol):
            d = sgn * (v[q] - v[x])
            if d > gain and not la.is_zero(d, tol):
                best, gain = q, d
        if best is None:
            raise NoChain(f"no {direction} step from {x}; v is not harmonic there")
        chain.append(best)
    return chain


def is_chain(g: AdjacencyGraph, chain: list[int]) -> bool:
    return len(set(chain)) == len(chain) and all(g.has_edge(a, b) for a, b in zip(chain, chain[1:]))


def geodesic_chain(g: AdjacencyGraph, A: Iterable[int], a1: int, a2: int) -> list[int]:
    """Shortest path from ``a1`` to ``a2`` inside the subgraph induced on ``A``."""
    A = set(A)
    if a1 not in A or a2 not in A:
        raise NoPath("endpoints must lie in A")
    parent = {a1: None}
    queue = deque([a1])
    while queue:
        x = queue.popleft()
        if x == a2:
            break
        for q in g.neighbors(x):  # sorted, so lowest id wins ties
            if q in A and q not in parent:
                parent[q] = x
                queue.append(q)
    if a2 not in parent:
        raise NoPath(f"{a1} and {a2} are not connected inside A")
    path = [a2]
    while path[-1] != a1:
        path.append(parent[path[-1]])
    return path[::-1]


def level_set(v, c, tol: float = DEFAULT_TOL.level) -> set[int]:
    """``E(v, c)``."""
    return {p for p, x in enumerate(v) if la.is_zero(x - c, tol)}


def cell_cluster(s: CellStructure, v, c, tol: float = DEFAULT_TOL.level) -> list[tuple[set[int], set[int]]]:
    """Maximal vertex-connected unions of cells lying entirely in ``E(v, c)``.

    Each cluster is ``(cell ids, vertices)``; an empty list means no cell of
    ``s`` is constant at level ``c``.
    """
    E = level_set(v, c, tol)
    flat = [i for i, cell in enumerate(s.cells) if set(cell) <= E]
    clusters = []
    left = list(flat)
    while left:
        cells = {left.pop(0)}
        verts = set(s.cells[next(iter(cells))])
        grown = True
        while grown:
            grown = False
            for i in list(left):
                if verts & set(s.cells[i]):
                    cells.add(i)
                    verts |= set(s.cells[i])
                    left.remove(i)
                    grown = True
        clusters.append((cells, verts))
    return clusters
