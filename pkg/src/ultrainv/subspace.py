"""Canonical subspace arithmetic in reduced column echelon form.

A subspace of F^n is stored as the unique basis of columns in reduced column
echelon form: pivots normalized to 1, zeros in every other basis vector at
pivot coordinates, pivot rows strictly increasing.  On the exact backend two
subspaces are equal exactly when their stored bases are entry-wise equal,
which makes lattice equalities infallible.

Float-backend rank rule: entries whose magnitude falls below
1e-9 * (largest singular value of the input, or 1 for the zero matrix) are
treated as zero.  The float path exists for demo reports only.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .matrix import Matrix
from .scalar import EXACT, FLOAT, coerce, one_of, zero_of

FLOAT_RANK_RTOL = 1e-9


class Subspace:
    """A subspace of F^n held as its canonical RCEF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "backend", "tol")

    def __init__(self, ambient_dim, basis, pivots, backend, tol=0.0):
        # Internal constructor: callers go through canonicalize().
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "tol", tol)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return len(self.basis) == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.backend == other.backend
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def contains_vector(self, vector):
        """Membership by reduction against the RCEF basis; early exit."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient_dim")
        coeffs = [vector[p] for p in self.pivots]
        basis = self.basis
        pivot_set = set(self.pivots)
        if self.backend == FLOAT:
            tol = max(self.tol, FLOAT_RANK_RTOL * max(
                [abs(x) for x in vector], default=0.0))
            for i in range(self.ambient_dim):
                if i in pivot_set:
                    continue
                acc = vector[i]
                for c, b in zip(coeffs, basis):
                    acc = acc - c * b[i]
                if abs(acc) > tol:
                    return False
            return True
        for i in range(self.ambient_dim):
            if i in pivot_set:
                continue
            acc = vector[i]
            for c, b in zip(coeffs, basis):
                if c and b[i]:
                    acc = acc - c * b[i]
            if acc:
                return False
        return True

    def __contains__(self, vector):
        return self.contains_vector(vector)

    def __repr__(self):
        return (f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, "
                f"backend={self.backend})")


def zero_space(ambient_dim, backend=EXACT) -> Subspace:
    return Subspace(ambient_dim, (), (), backend)


def full_space(ambient_dim, backend=EXACT) -> Subspace:
    z = zero_of(backend)
    o = one_of(backend)
    basis = tuple(tuple(o if i == j else z for i in range(ambient_dim))
                  for j in range(ambient_dim))
    return Subspace(ambient_dim, basis, tuple(range(ambient_dim)), backend)


def _rref(rows, ncols):
    """In-place exact Gauss-Jordan on a list of row lists; returns pivot cols."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        row = rows[r]
        head = row[c]
        if head != 1:
            inv = head.inverse()
            row = [x * inv for x in row]
            rows[r] = row
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                cur = rows[i]
                rows[i] = [x - f * y if y else x for x, y in zip(cur, row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rref_float(rows, ncols, tol, max_rank=None):
    """Gauss-Jordan with magnitude pivoting; entries below tol count as zero."""
    pivots = []
    r = 0
    nrows = len(rows)
    limit = nrows if max_rank is None else min(nrows, max_rank)
    for c in range(ncols):
        if r >= limit:
            break
        piv = max(range(r, nrows), key=lambda i: abs(rows[i][c]), default=None)
        if piv is None or abs(rows[piv][c]) <= tol:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1.0 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and abs(rows[i][c]) > 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(nrows):
        rows[i] = [0j if abs(x) <= tol else complex(x) for x in rows[i]]
    return pivots


def _float_tol(columns):
    import numpy as np
    if not columns:
        return FLOAT_RANK_RTOL
    arr = np.array(columns, dtype=complex)
    if not arr.size:
        return FLOAT_RANK_RTOL
    smax = np.linalg.svd(arr, compute_uv=False)[0] if arr.any() else 0.0
    return FLOAT_RANK_RTOL * (smax if smax > 0 else 1.0)


def canonicalize(vectors, ambient_dim, backend=EXACT) -> Subspace:
    """RCEF basis of the span of the given column vectors; idempotent."""
    cols = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"column of length {len(v)} in ambient dimension {ambient_dim}")
        cols.append([coerce(x, backend) for x in v])
    if backend == FLOAT:
        tol = _float_tol(cols)
        pivots = _rref_float(cols, ambient_dim, tol)
        basis = tuple(tuple(row) for row in cols[:len(pivots)])
        return Subspace(ambient_dim, basis, tuple(pivots), FLOAT, tol)
    pivots = _rref(cols, ambient_dim)
    basis = tuple(tuple(row) for row in cols[:len(pivots)])
    return Subspace(ambient_dim, basis, tuple(pivots), EXACT)


def kernel(m: Matrix) -> Subspace:
    """The solution space {x : Mx = 0} in canonical form."""
    n = m.cols
    if m.backend == FLOAT:
        import numpy as np
        arr = np.array(m.data, dtype=complex)
        _, s, vh = np.linalg.svd(arr)
        smax = s[0] if len(s) else 0.0
        tol = FLOAT_RANK_RTOL * (smax if smax > 0 else 1.0)
        rank = int((s > tol).sum())
        null = vh[rank:].conj()
        return canonicalize([tuple(row) for row in null], n, FLOAT)
    rows = [list(r) for r in m.data]
    pivots = _rref(rows, n)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    z = zero_of(m.backend)
    vectors = []
    for f in free:
        vec = [z] * n
        vec[f] = one_of(m.backend)
        for j, p in enumerate(pivots):
            if rows[j][f]:
                vec[p] = -rows[j][f]
        vectors.append(vec)
    return canonicalize(vectors, n, m.backend)


def image(m: Matrix) -> Subspace:
    """The column span of M in canonical form."""
    return canonicalize(m.columns(), m.rows, m.backend)


def _check_compatible(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim or u.backend != v.backend:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def meet_join(u: Subspace, v: Subspace):
    """Intersection and span; dim U + dim V = dim meet + dim join."""
    _check_compatible(u, v)
    join = canonicalize(u.basis + v.basis, u.ambient_dim, u.backend)
    if u.is_zero() or v.is_zero():
        return zero_space(u.ambient_dim, u.backend), join
    stacked = Matrix.from_columns(u.basis + tuple(tuple(-x for x in col)
                                                  for col in v.basis), u.backend)
    combos = kernel(stacked)
    z = zero_of(u.backend)
    vectors = []
    for combo in combos.basis:
        vec = [z] * u.ambient_dim
        for coeff, col in zip(combo[:u.dim], u.basis):
            if coeff:
                vec = [a + coeff * b for a, b in zip(vec, col)]
        vectors.append(vec)
    meet = canonicalize(vectors, u.ambient_dim, u.backend)
    return meet, join


def meet(u: Subspace, v: Subspace) -> Subspace:
    return meet_join(u, v)[0]


def join(u: Subspace, v: Subspace) -> Subspace:
    return meet_join(u, v)[1]


def contains(u: Subspace, v: Subspace) -> bool:
    """Whether every basis vector of V reduces to zero against U's basis."""
    _check_compatible(u, v)
    if v.dim > u.dim:
        return False
    return all(u.contains_vector(col) for col in v.basis)


def map_subspace(m: Matrix, u: Subspace) -> Subspace:
    """The image subspace M.U = span{M x : x in U}."""
    if m.cols != u.ambient_dim:
        raise DimensionMismatch("matrix cols != subspace ambient dimension")
    return canonicalize([m.matvec(col) for col in u.basis], m.rows, m.backend)


def projection_matrix(u: Subspace) -> Matrix:
    """Projection onto U along the span of U's non-pivot coordinates."""
    n = u.ambient_dim
    z = zero_of(u.backend)
    cols = [[z] * n for _ in range(n)]
    for p, b in zip(u.pivots, u.basis):
        cols[p] = list(b)
    return Matrix.from_columns([tuple(c) for c in cols], u.backend)
