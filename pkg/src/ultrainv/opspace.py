"""Linear spaces of operators as subspaces of F^(m*n) under vectorization.

Vectorization is column-major throughout the project: entry (i, j) of an
m x n matrix lands at position j*m + i.  An OperatorSpace keeps both the
canonical subspace of F^(m*n) and the de-vectorized basis matrices, and
carries the brute-force multiplicative oracles (product closure and
multiplier spaces) used to cross-check the closed-form constructions.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotSquareAmbient
from .matrix import Matrix
from .scalar import EXACT, zero_of
from . import subspace as sub


def vec(m: Matrix):
    """Column-major vectorization of a matrix."""
    return tuple(x for col in zip(*m.data) for x in col)


def unvec(column, cod_dim, dom_dim, backend=EXACT) -> Matrix:
    """Inverse of vec for a cod_dim x dom_dim matrix."""
    if len(column) != cod_dim * dom_dim:
        raise DimensionMismatch("vector length != cod_dim * dom_dim")
    rows = tuple(tuple(column[j * cod_dim + i] for j in range(dom_dim))
                 for i in range(cod_dim))
    return Matrix(rows, backend, _raw=True)


class OperatorSpace:
    """A subspace of the m x n matrices, canonical under vectorization."""

    __slots__ = ("dom_dim", "cod_dim", "space", "basis_matrices")

    def __init__(self, space: sub.Subspace, cod_dim, dom_dim):
        if space.ambient_dim != cod_dim * dom_dim:
            raise DimensionMismatch("ambient dimension != cod_dim * dom_dim")
        object.__setattr__(self, "dom_dim", dom_dim)
        object.__setattr__(self, "cod_dim", cod_dim)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "basis_matrices",
                           tuple(unvec(col, cod_dim, dom_dim, space.backend)
                                 for col in space.basis))

    def __setattr__(self, name, value):
        raise AttributeError("OperatorSpace is immutable")

    @classmethod
    def from_matrices(cls, matrices, cod_dim, dom_dim, backend=EXACT):
        for m in matrices:
            if m.shape != (cod_dim, dom_dim):
                raise DimensionMismatch("matrix shape mismatch")
        space = sub.canonicalize([vec(m) for m in matrices],
                                 cod_dim * dom_dim, backend)
        return cls(space, cod_dim, dom_dim)

    @classmethod
    def full(cls, cod_dim, dom_dim, backend=EXACT):
        return cls(sub.full_space(cod_dim * dom_dim, backend), cod_dim, dom_dim)

    @classmethod
    def zero(cls, cod_dim, dom_dim, backend=EXACT):
        return cls(sub.zero_space(cod_dim * dom_dim, backend), cod_dim, dom_dim)

    @property
    def dim(self):
        return self.space.dim

    @property
    def backend(self):
        return self.space.backend

    def __eq__(self, other):
        if not isinstance(other, OperatorSpace):
            return NotImplemented
        return (self.dom_dim == other.dom_dim and self.cod_dim == other.cod_dim
                and self.space == other.space)

    def __hash__(self):
        return hash((self.dom_dim, self.cod_dim, self.space))

    def __repr__(self):
        return (f"OperatorSpace(dim={self.dim}, shape={self.cod_dim}x"
                f"{self.dom_dim}, backend={self.backend})")


def member(s: Matrix, v: OperatorSpace) -> bool:
    """Whether the matrix lies in the operator space."""
    if s.shape != (v.cod_dim, v.dom_dim):
        raise DimensionMismatch(f"member shape {s.shape} vs "
                                f"{(v.cod_dim, v.dom_dim)}")
    return v.space.contains_vector(vec(s))


def apply_to_subspace(v: OperatorSpace, m: sub.Subspace) -> sub.Subspace:
    """The span V.M of all images of M under operators in V."""
    if v.dom_dim != m.ambient_dim:
        raise DimensionMismatch("operator domain != subspace ambient")
    vectors = [b.matvec(x) for b in v.basis_matrices for x in m.basis]
    return sub.canonicalize(vectors, v.cod_dim, v.backend)


def is_product_closed(v: OperatorSpace) -> bool:
    """Brute-force oracle: every ordered product of basis matrices stays in V."""
    if v.dom_dim != v.cod_dim:
        raise NotSquareAmbient("product closure needs a square matrix space")
    mats = v.basis_matrices
    for left in mats:
        for right in mats:
            if not v.space.contains_vector(vec(left * right)):
                return False
    return True


def multiplier_space(v: OperatorSpace, side: str) -> OperatorSpace:
    """All T with T*B in V for every basis B (left) or B*T in V (right).

    Assembled as the kernel of a stacked linear system on vec(T); membership
    in V is expressed through the coordinate projector that annihilates
    V.space (residual at non-pivot coordinates after pivot reduction).
    """
    if v.dom_dim != v.cod_dim:
        raise NotSquareAmbient("multiplier space needs a square matrix space")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = v.dom_dim
    nn = n * n
    backend = v.backend
    z = zero_of(backend)
    pivots = v.space.pivots
    pivot_set = set(pivots)
    nonpivots = [q for q in range(nn) if q not in pivot_set]
    space_basis = v.space.basis
    rows = []
    for b in v.basis_matrices:
        bd = b.data
        for q in nonpivots:
            r_hat, c_hat = q % n, q // n
            row = [z] * nn
            if side == "left":
                # w[q] of T*B depends on row r_hat of T: coeff B[j][c_hat].
                for j in range(n):
                    x = bd[j][c_hat]
                    if x:
                        row[j * n + r_hat] = row[j * n + r_hat] + x
                for col, p in zip(space_basis, pivots):
                    s = col[q]
                    if s:
                        r_l, c_l = p % n, p // n
                        for j in range(n):
                            x = bd[j][c_l]
                            if x:
                                idx = j * n + r_l
                                row[idx] = row[idx] - s * x
            else:
                # w[q] of B*T depends on column c_hat of T: coeff B[r_hat][j].
                for j in range(n):
                    x = bd[r_hat][j]
                    if x:
                        row[c_hat * n + j] = row[c_hat * n + j] + x
                for col, p in zip(space_basis, pivots):
                    s = col[q]
                    if s:
                        r_l, c_l = p % n, p // n
                        for j in range(n):
                            x = bd[r_l][j]
                            if x:
                                idx = c_l * n + j
                                row[idx] = row[idx] - s * x
            if any(row):
                rows.append(tuple(row))
    if not rows:
        return OperatorSpace.full(n, n, backend)
    system = Matrix(tuple(rows), backend, _raw=True)
    return OperatorSpace(sub.kernel(system), n, n)


def meet(u: OperatorSpace, v: OperatorSpace) -> OperatorSpace:
    if (u.dom_dim, u.cod_dim) != (v.dom_dim, v.cod_dim):
        raise DimensionMismatch("operator spaces of different shapes")
    return OperatorSpace(sub.meet(u.space, v.space), u.cod_dim, u.dom_dim)


def join(u: OperatorSpace, v: OperatorSpace) -> OperatorSpace:
    if (u.dom_dim, u.cod_dim) != (v.dom_dim, v.cod_dim):
        raise DimensionMismatch("operator spaces of different shapes")
    return OperatorSpace(sub.join(u.space, v.space), u.cod_dim, u.dom_dim)
