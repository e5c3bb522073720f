"""Dense linear algebra over exact rationals or doubles.

Matrices are numpy arrays.  ``dtype=object`` arrays holding
:class:`fractions.Fraction` run in *exact* mode, ``float64`` arrays in
*float* mode; a computation stays in the mode of its inputs.  Float-mode
comparisons take an absolute tolerance, exact-mode comparisons ignore it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import MalformedMatrix, SingularMatrix

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class Tolerances:
    entry: float = 1e-10  # entrywise matrix equality
    residual: float = 1e-9  # |(H1 v)(p)| at interior vertices
    sv_floor: float = 1e-12  # minimum singular value counted as nonzero
    level: float = 1e-10  # equality of vertex values (level sets)

    def __post_init__(self):
        for name in ("entry", "residual", "sv_floor", "level"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")


DEFAULT_TOL = Tolerances()


# scalars and arrays ---------------------------------------------------------


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    return Fraction(x)


def exact_array(data) -> np.ndarray:
    arr = np.array(data, dtype=object)
    flat = [to_fraction(x) for x in arr.ravel()]
    out = np.empty(arr.shape, dtype=object)
    out.ravel()[:] = flat  # ravel of a fresh array is a view
    return out


def float_array(data) -> np.ndarray:
    arr = np.array(data, dtype=object)
    return np.array([float(x) for x in arr.ravel()], dtype=float).reshape(arr.shape)


def as_mode(data, mode: str) -> np.ndarray:
    if mode == EXACT:
        return exact_array(data)
    if mode == FLOAT:
        return float_array(data)
    raise ValueError(f"unknown mode {mode!r}")


def mode_of(arr) -> str:
    return EXACT if np.asarray(arr).dtype == object else FLOAT


def zeros(shape, mode: str) -> np.ndarray:
    if mode == EXACT:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def identity(n: int, mode: str) -> np.ndarray:
    out = zeros((n, n), mode)
    for i in range(n):
        out[i, i] = Fraction(1) if mode == EXACT else 1.0
    return out


def is_zero(x, tol: float = DEFAULT_TOL.entry) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    return abs(x) <= tol


def max_abs(arr) -> Fraction | float:
    arr = np.asarray(arr)
    if arr.size == 0:
        return 0
    return max(abs(x) for x in arr.ravel())


def allclose(a, b, tol: float = DEFAULT_TOL.entry) -> bool:
    diff = np.asarray(a) - np.asarray(b)
    return is_zero(max_abs(diff), tol) if diff.size else True


def format_scalar(x) -> str:
    """Rationals as canonical ``p/q``; floats as shortest round-trip decimal."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def parse_scalar(text, mode: str):
    x = to_fraction(text)
    return x if mode == EXACT else float(x)


def matrix_to_dict(M) -> dict:
    M = np.asarray(M)
    return {"dimension": int(M.shape[0]), "entries": [[format_scalar(x) for x in row] for row in M]}


def matrix_from_dict(doc: dict, mode: str = EXACT) -> np.ndarray:
    try:
        dim = int(doc["dimension"])
        rows = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise MalformedMatrix(f"bad matrix document: {exc!r}") from exc
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise MalformedMatrix(f"declared dimension {dim} does not match entries")
    try:
        return np.array([[parse_scalar(x, mode) for x in row] for row in rows], dtype=object if mode == EXACT else float)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedMatrix(f"unparseable matrix entry: {exc}") from exc


# elimination ----------------------------------------------------------------


def _nonzero(v) -> np.ndarray:
    if v.dtype == object:
        return np.flatnonzero([x != 0 for x in v])
    return np.flatnonzero(v)


def _eliminate(A: np.ndarray, B: np.ndarray | None):
    """Forward elimination in place; returns (pivot count, sign of the row permutation).

    Exact mode takes the first nonzero pivot, float mode the largest in
    magnitude.  Only rows with a nonzero in the pivot column are touched, so
    banded inputs stay cheap.  Stops early at the first missing pivot.
    """
    n = A.shape[0]
    exact = A.dtype == object
    sign = 1
    for k in range(n):
        col = A[k:, k]
        if exact:
            nz = _nonzero(col)
            if nz.size == 0:
                return k, sign
            piv = k + int(nz[0])
        else:
            piv = k + int(np.argmax(np.abs(col)))
            if A[piv, k] == 0:
                return k, sign
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            if B is not None:
                B[[k, piv]] = B[[piv, k]]
            sign = -sign
        rows = k + 1 + _nonzero(A[k + 1:, k])
        if rows.size == 0:
            continue
        factors = A[rows, k] / A[k, k]
        cols = k + 1 + _nonzero(A[k, k + 1:])
        if cols.size:
            A[np.ix_(rows, cols)] -= np.outer(factors, A[k, cols])
        A[rows, k] = 0
        if B is not None:
            B[rows] -= np.outer(factors, B[k])
    return n, sign


def solve(A, B) -> np.ndarray:
    """Solve ``A X = B`` by Gaussian elimination with partial pivoting."""
    A = np.array(A, copy=True)
    B = np.array(B, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise MalformedMatrix(f"solve needs a square matrix, got shape {A.shape}")
    vector = B.ndim == 1
    if vector:
        B = B[:, None]
    if B.shape[0] != A.shape[0]:
        raise MalformedMatrix("right-hand side has the wrong number of rows")
    if A.dtype == object:
        B = B.astype(object)
    else:
        A = A.astype(float)
        B = B.astype(float)
    n = A.shape[0]
    rank, _ = _eliminate(A, B)
    if rank < n:
        raise SingularMatrix(f"matrix is singular (no pivot in column {rank})")
    X = zeros(B.shape, mode_of(A))
    for k in range(n - 1, -1, -1):
        cols = k + 1 + _nonzero(A[k, k + 1:])
        acc = B[k] - A[k, cols] @ X[cols] if cols.size else B[k]
        X[k] = acc / A[k, k]
    return X[:, 0] if vector else X


def determinant(A):
    A = np.array(A, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise MalformedMatrix("determinant needs a square matrix")
    if A.dtype != object:
        A = A.astype(float)
    n = A.shape[0]
    rank, sign = _eliminate(A, None)
    if rank < n:
        return Fraction(0) if A.dtype == object else 0.0
    det = Fraction(sign) if A.dtype == object else float(sign)
    for i in range(n):
        det *= A[i, i]
    return det


def rref(A) -> tuple[np.ndarray, list[int]]:
    """Exact reduced row echelon form and pivot columns."""
    R = exact_array(A)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        R[[r, i]] = R[[i, r]]
        R[r] = R[r] / R[r, c]
        for j in range(rows):
            if j != r and R[j, c] != 0:
                R[j] = R[j] - R[j, c] * R[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A, tol: float = DEFAULT_TOL.entry) -> int:
    if mode_of(A) == EXACT:
        return len(rref(A)[1])
    return int(np.linalg.matrix_rank(np.asarray(A, dtype=float), tol=tol))


def nullspace(A) -> list[np.ndarray]:
    """Exact kernel basis, each vector scaled so its first nonzero entry is 1."""
    R, pivots = rref(A)
    ncols = R.shape[1]
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = zeros(ncols, EXACT)
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -R[row, free]
        lead = next(x for x in v if x != 0)
        basis.append(v / lead)
    return basis


# Laplacians -------------------------------------------------------------------

# condition codes reported by validate_laplacian
SIGN = "offdiag-nonnegative"  # H_pq >= 0 for p != q
ROW_SUM = "zero-row-sums"  # constants in the kernel
KERNEL = "kernel-is-constants"  # Hu = 0 iff u constant
DEFINITE = "non-positive-definite"


@dataclass
class LaplacianVerdict:
    violations: list[str] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str):
        self.violations.append(code)
        self.messages.append(message)

    def __bool__(self):
        return self.ok


def check_square_symmetric(M, tol: float = DEFAULT_TOL.entry) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise MalformedMatrix(f"expected a square matrix, got shape {M.shape}")
    if not allclose(M, M.T, tol):
        raise MalformedMatrix("matrix is not symmetric")
    return M


def _support_connected(M, tol) -> bool:
    n = M.shape[0]
    seen = {0}
    stack = [0]
    while stack:
        p = stack.pop()
        for q in range(n):
            if q not in seen and q != p and not is_zero(M[p, q], tol):
                seen.add(q)
                stack.append(q)
    return len(seen) == n


def _is_nsd_exact(M) -> bool:
    # symmetric LDL^T on -M; a zero pivot forces its whole row to vanish
    P = -exact_array(M)
    remaining = list(range(P.shape[0]))
    while remaining:
        diag = [(P[i, i], i) for i in remaining]
        if any(d < 0 for d, _ in diag):
            return False
        pick = next((i for d, i in diag if d > 0), None)
        if pick is None:
            return all(P[i, j] == 0 for i in remaining for j in remaining)
        remaining.remove(pick)
        if remaining:
            idx = np.array(remaining)
            col = P[idx, pick]
            P[np.ix_(idx, idx)] -= np.outer(col, col) / P[pick, pick]
    return True


def validate_laplacian(M, tol: float = DEFAULT_TOL.entry) -> LaplacianVerdict:
    """Check the three defining conditions of a Laplacian, each reported separately.

    With non-negative off-diagonals and zero row sums the matrix is a
    weighted graph Laplacian (up to sign), so definiteness is automatic and
    the kernel condition reduces to connectivity of the support.  Otherwise
    both are decided directly.  Float mode also confirms definiteness with an
    eigenvalue bound.
    """
    M = check_square_symmetric(M, tol)
    n = M.shape[0]
    if n < 2:
        raise MalformedMatrix("a Laplacian needs at least 2 points")
    exact = mode_of(M) == EXACT
    verdict = LaplacianVerdict()

    bad = [(p, q) for p in range(n) for q in range(p + 1, n) if M[p, q] < 0 and not is_zero(M[p, q], tol)]
    if bad:
        p, q = bad[0]
        verdict.add(SIGN, f"off-diagonal sign fails: H[{p}][{q}] = {M[p, q]} < 0")
    sums = M.sum(axis=1)
    nonzero_rows = [p for p in range(n) if not is_zero(sums[p], tol * n)]
    if nonzero_rows:
        p = nonzero_rows[0]
        verdict.add(ROW_SUM, f"row {p} sums to {sums[p]}, so constants are not in the kernel")

    if not bad and not nonzero_rows:
        if not _support_connected(M, tol):
            verdict.add(KERNEL, "kernel condition fails: support graph is disconnected, kernel exceeds the constants")
        nsd = True
    else:
        if nonzero_rows:
            verdict.add(KERNEL, "kernel condition fails: constants are not annihilated")
        elif rank(M, tol) != n - 1:
            verdict.add(KERNEL, f"kernel condition fails: kernel has dimension {n - rank(M, tol)}")
        nsd = _is_nsd_exact(M) if exact else True

    if not exact:
        top = float(np.linalg.eigvalsh(np.asarray(M, dtype=float)).max())
        nsd = nsd and top <= tol * max(1.0, float(max_abs(M)))
    if not nsd:
        verdict.add(DEFINITE, "non-positive definiteness fails: matrix has a positive direction")
    return verdict


def dirichlet_energy(D, u, v):
    """``E(u, v) = -u^T D v``."""
    D = np.asarray(D)
    u = np.asarray(u)
    v = np.asarray(v)
    if D.ndim != 2 or D.shape[0] != D.shape[1] or u.shape != (D.shape[0],) or v.shape != (D.shape[0],):
        raise MalformedMatrix("dimension mismatch in dirichlet_energy")
    if mode_of(D) == EXACT:
        u, v = exact_array(u), exact_array(v)
    return -(u @ D @ v)


def _weights(r, mode) -> np.ndarray:
    r = as_mode(r, mode)
    if r.ndim != 1:
        raise MalformedMatrix("weights must be a flat sequence")
    for i, x in enumerate(r):
        if not x > 0:
            raise MalformedMatrix(f"weight r_{i} = {x} violates r_i > 0")
    return r


def assemble_h1(s, D, r) -> np.ndarray:
    """``H1 = sum_i r_i^{-1} R_i^T D R_i`` on the vertices of ``s``."""
    D = np.asarray(D)
    mode = mode_of(D)
    if D.shape != (s.k, s.k):
        raise MalformedMatrix(f"D must be {s.k}x{s.k}, got {D.shape}")
    r = _weights(r, mode)
    if r.shape[0] != s.n_cells:
        raise MalformedMatrix(f"need {s.n_cells} weights, got {r.shape[0]}")
    H = zeros((s.vertex_count, s.vertex_count), mode)
    for ri, cell in zip(r, s.cells):
        idx = np.array(cell)
        H[np.ix_(idx, idx)] += D / ri
    return H


def _split(H, boundary: Sequence[int]):
    H = np.asarray(H)
    n = H.shape[0]
    boundary = list(boundary)
    bset = set(boundary)
    if len(bset) != len(boundary) or not bset or not bset < set(range(n)):
        raise MalformedMatrix("boundary must be a proper nonempty subset of distinct vertices")
    interior = [p for p in range(n) if p not in bset]
    b = np.array(boundary)
    i = np.array(interior)
    return H[np.ix_(b, b)], H[np.ix_(i, b)], H[np.ix_(i, i)], interior


def schur_restriction(H, boundary: Sequence[int]) -> np.ndarray:
    """Trace of ``H`` on ``boundary``: ``T - J^T X^{-1} J``."""
    T, J, X, _ = _split(H, boundary)
    try:
        Y = solve(X, J)
    except SingularMatrix as exc:
        raise MalformedMatrix(f"interior block is singular; input is not a Laplacian ({exc})") from exc
    return T - J.T @ Y


def extend_columns(H1, boundary: Sequence[int], U) -> np.ndarray:
    """Harmonic extension of every column of ``U`` (boundary x m) to all vertices."""
    H1 = np.asarray(H1)
    mode = mode_of(H1)
    U = as_mode(U, mode)
    if U.ndim == 1:
        U = U[:, None]
    if U.shape[0] != len(boundary):
        raise MalformedMatrix(f"expected {len(boundary)} boundary values per column")
    _, J, X, interior = _split(H1, boundary)
    try:
        inner = solve(X, -(J @ U))
    except SingularMatrix as exc:
        raise MalformedMatrix(f"interior block is singular; input is not a Laplacian ({exc})") from exc
    out = zeros((H1.shape[0], U.shape[1]), mode)
    out[list(boundary)] = U
    out[interior] = inner
    return out


def harmonic_extend(H1, s, boundary_values) -> np.ndarray:
    """Unique ``v`` with the given boundary values and ``(H1 v)(p) = 0`` off the boundary.

    ``s`` is a :class:`~sgharmonic.cells.CellStructure` or a plain sequence of
    boundary vertex ids.
    """
    boundary = getattr(s, "boundary", s)
    values = np.asarray(boundary_values)
    if values.ndim != 1:
        raise MalformedMatrix("boundary values must be a flat sequence")
    return extend_columns(H1, boundary, values)[:, 0]


def harmonic_residual(H1, boundary: Sequence[int], v):
    """Largest ``|(H1 v)(p)|`` over non-boundary ``p``."""
    H1 = np.asarray(H1)
    bset = set(boundary)
    interior = [p for p in range(H1.shape[0]) if p not in bset]
    if not interior:
        return 0
    return max_abs((H1 @ np.asarray(v))[interior])
