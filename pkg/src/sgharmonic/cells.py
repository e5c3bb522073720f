"""Combinatorial cell structures: SG_n level-1 networks and friends.

A structure is a vertex count, an ordered boundary and a list of cells.  Cell
``i`` is a tuple whose position ``j`` holds the vertex that the ``i``-th
contraction sends boundary point ``q_j`` to.  Two vertices are neighbours
when they lie in a common cell.

SG_n vertices live on the triangular lattice ``{(a, b) : a, b >= 0,
a + b <= n}``; ``(a, b)`` sits at ``q1 + (a/n)(q2 - q1) + (b/n)(q0 - q1)``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InvalidParameter, InvalidSubset, MalformedMatrix, UnsupportedStructure


class LatticePoint(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class CellStructure:
    name: str
    k: int
    vertex_count: int
    boundary: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]
    coords: tuple[LatticePoint, ...] | None = None

    def __post_init__(self):
        if len(self.boundary) != self.k or len(set(self.boundary)) != self.k:
            raise MalformedMatrix(f"boundary must hold {self.k} distinct vertices")
        seen = set()
        for i, cell in enumerate(self.cells):
            if len(cell) != self.k or len(set(cell)) != self.k:
                raise MalformedMatrix(f"cell {i} is not an injective {self.k}-tuple")
            for p in cell:
                if not 0 <= p < self.vertex_count:
                    raise MalformedMatrix(f"cell {i} references vertex {p} out of range")
            seen.update(cell)
        if len(seen) != self.vertex_count:
            raise MalformedMatrix("every vertex must belong to some cell")
        if self.coords is not None and len(self.coords) != self.vertex_count:
            raise MalformedMatrix("coords must list one lattice point per vertex")
        if not adjacency(self).is_connected():
            raise MalformedMatrix("cell-sharing graph is not connected")

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def interior(self) -> tuple[int, ...]:
        b = set(self.boundary)
        return tuple(p for p in range(self.vertex_count) if p not in b)

    @property
    def level(self) -> int | None:
        """Lattice side length for SG_n structures, ``None`` otherwise."""
        if self.coords is None:
            return None
        return max(a + b for a, b in self.coords)

    def cells_containing(self, p: int) -> list[int]:
        return [i for i, cell in enumerate(self.cells) if p in cell]

    # serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        doc = {
            "name": self.name,
            "k": self.k,
            "vertex_count": self.vertex_count,
            "boundary": list(self.boundary),
            "cells": [list(c) for c in self.cells],
        }
        if self.coords is not None:
            doc["coords"] = [[a, b] for a, b in self.coords]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, doc: dict) -> "CellStructure":
        try:
            coords = doc.get("coords")
            return cls(
                name=str(doc["name"]),
                k=int(doc["k"]),
                vertex_count=int(doc["vertex_count"]),
                boundary=tuple(int(p) for p in doc["boundary"]),
                cells=tuple(tuple(int(p) for p in c) for c in doc["cells"]),
                coords=None if coords is None else tuple(LatticePoint(int(a), int(b)) for a, b in coords),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedMatrix(f"bad cell-structure document: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "CellStructure":
        return cls.from_dict(json.loads(text))


def _lattice_rows(n: int):
    # top row first (b descending), left to right inside a row
    for b in range(n, -1, -1):
        for a in range(0, n - b + 1):
            yield LatticePoint(a, b)


def build_sg(n: int) -> CellStructure:
    """Level-1 network of the level-``n`` Sierpinski gasket."""
    if not isinstance(n, int) or n < 2:
        raise InvalidParameter(f"SG_n needs an integer n >= 2, got {n!r}")
    coords = tuple(_lattice_rows(n))
    index = {pt: i for i, pt in enumerate(coords)}
    cells = []
    for b in range(n - 1, -1, -1):
        for a in range(0, n - b):
            # corner order: images of q0 (up), q1 (lower left), q2 (lower right)
            cells.append((index[a, b + 1], index[a, b], index[a + 1, b]))
    boundary = (index[0, n], index[0, 0], index[n, 0])
    return CellStructure(f"sg{n}", 3, len(coords), boundary, tuple(cells), coords)


# star toy vertex ids
Q0, Q1, Q2, M, W0, W1, W2 = range(7)


def build_star_toy() -> CellStructure:
    """Three cells glued at one centre ``m``, each with a private vertex ``w_i``.

    Cell ``i`` holds ``{q_i, m, w_i}`` laid out cyclically from position
    ``i``: position ``i`` is ``q_i``, then ``m``, then ``w_i``.  The ``w_i``
    belong to a single cell each, which is what makes harmonic structures on
    this network degenerate.
    """
    cells = []
    for i in range(3):
        cell = [0, 0, 0]
        cell[i] = (Q0, Q1, Q2)[i]
        cell[(i + 1) % 3] = M
        cell[(i + 2) % 3] = (W0, W1, W2)[i]
        cells.append(tuple(cell))
    return CellStructure("star-toy", 3, 7, (Q0, Q1, Q2), tuple(cells))


@dataclass(frozen=True)
class AdjacencyGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def neighbors(self, p: int) -> list[int]:
        return self._nbrs[p]

    def __post_init__(self):
        nbrs = [[] for _ in range(self.vertex_count)]
        for p, q in self.edges:
            nbrs[p].append(q)
            nbrs[q].append(p)
        for lst in nbrs:
            lst.sort()
        object.__setattr__(self, "_nbrs", nbrs)

    def degree(self, p: int) -> int:
        return len(self._nbrs[p])

    def has_edge(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components of the subgraph induced on ``vertices``."""
        keep = set(range(self.vertex_count)) if vertices is None else set(vertices)
        seen = set()
        comps = []
        for start in sorted(keep):
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                p = queue.popleft()
                comp.append(p)
                for q in self._nbrs[p]:
                    if q in keep and q not in seen:
                        seen.add(q)
                        queue.append(q)
            comps.append(sorted(comp))
        return comps

    def is_connected(self, vertices: Iterable[int] | None = None) -> bool:
        return len(self.components(vertices)) <= 1


def adjacency(s: CellStructure) -> AdjacencyGraph:
    edges = set()
    for cell in s.cells:
        for p, q in itertools.combinations(cell, 2):
            edges.add((min(p, q), max(p, q)))
    return AdjacencyGraph(s.vertex_count, frozenset(edges))


def articulation_points(g: AdjacencyGraph, vertices: Iterable[int]) -> set[int]:
    """Cut vertices of the induced subgraph (iterative Hopcroft-Tarjan)."""
    keep = set(vertices)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts = set()
    counter = 0
    for root in sorted(keep):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            p, parent, it = stack[-1]
            advanced = False
            for q in it:
                if q not in keep or q == parent:
                    continue
                if q in disc:
                    low[p] = min(low[p], disc[q])
                else:
                    disc[q] = low[q] = counter
                    counter += 1
                    stack.append((q, p, iter(g.neighbors(q))))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[p])
                if parent == root:
                    root_children += 1
                elif low[p] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return cuts


def is_two_connected(g: AdjacencyGraph, vertices: Iterable[int] | None = None) -> bool:
    """True iff the induced subgraph is connected and has no cut vertex."""
    verts = list(range(g.vertex_count)) if vertices is None else sorted(set(vertices))
    if len(verts) < 3:
        raise InvalidParameter("2-connectivity is only meaningful on >= 3 vertices")
    return g.is_connected(verts) and not articulation_points(g, verts)


def subset_boundary(s: CellStructure, A: Iterable[int]) -> set[int]:
    """Members of ``A`` adjacent to an interior vertex outside ``A``."""
    A = set(A)
    interior = set(s.interior)
    if not A:
        raise InvalidSubset("A must be nonempty")
    if not A <= interior:
        raise InvalidSubset(f"A contains non-interior vertices {sorted(A - interior)}")
    if A == interior:
        raise InvalidSubset("A must be a proper subset of the interior")
    g = adjacency(s)
    outside = interior - A
    return {p for p in A if any(q in outside for q in g.neighbors(p))}


# symmetry ------------------------------------------------------------------


def _barycentric(pt: LatticePoint, n: int) -> tuple[int, int, int]:
    # integer weights on (q0, q1, q2), summing to n
    return (pt.b, n - pt.a - pt.b, pt.a)


def _from_barycentric(w: tuple[int, int, int]) -> LatticePoint:
    return LatticePoint(w[2], w[0])


# the 6 permutations of the corners, i.e. the dihedral group of the triangle
SYMMETRIES = tuple(itertools.permutations(range(3)))


def vertex_symmetry(s: CellStructure, perm: tuple[int, int, int]) -> list[int]:
    """Vertex relabelling induced by sending corner ``q_j`` to ``q_perm[j]``."""
    if s.coords is None:
        raise UnsupportedStructure(f"{s.name} has no lattice coordinates")
    n = s.level
    index = {pt: i for i, pt in enumerate(s.coords)}
    out = []
    for pt in s.coords:
        w = _barycentric(pt, n)
        moved = [0, 0, 0]
        for j in range(3):
            moved[perm[j]] = w[j]
        out.append(index[_from_barycentric(tuple(moved))])
    return out


def cell_symmetry(s: CellStructure, perm: tuple[int, int, int]) -> list[int]:
    """Cell permutation induced by a corner permutation."""
    vmap = vertex_symmetry(s, perm)
    by_set = {frozenset(c): i for i, c in enumerate(s.cells)}
    try:
        return [by_set[frozenset(vmap[p] for p in c)] for c in s.cells]
    except KeyError as exc:
        raise UnsupportedStructure(f"{s.name} is not closed under the triangle symmetries") from exc


def cell_orbits(s: CellStructure) -> list[list[int]]:
    """Orbits of cells under the 6 triangle symmetries, ordered by smallest member."""
    maps = [cell_symmetry(s, perm) for perm in SYMMETRIES]
    orbits = []
    seen = set()
    for i in range(s.n_cells):
        if i in seen:
            continue
        orbit = sorted({m[i] for m in maps})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def orbit_labels(s: CellStructure, orbits: list[list[int]] | None = None) -> list[int]:
    """Orbit index of every cell."""
    orbits = cell_orbits(s) if orbits is None else orbits
    label = [0] * s.n_cells
    for j, orbit in enumerate(orbits):
        for i in orbit:
            label[i] = j
    return label
