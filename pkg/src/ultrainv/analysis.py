"""Invariance, ultrainvariance, the four-way algebra criterion and the
ultrainvariant closure."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (BadSplit, DimensionMismatch, InternalInconsistency,
                     NotSquare)
from .matrix import Matrix
from .opspace import OperatorSpace, apply_to_subspace, is_product_closed
from .solver import girder_of_space, local_commutant
from . import subspace as sub


@dataclass(frozen=True)
class AlgebraVerdict:
    """Result of the four equivalent algebra tests for a local commutant.

    For a non-scalar operator the four `via_*` booleans must agree; any
    disagreement is an implementation bug, never a data error.  For a scalar
    operator the local commutant is the full matrix algebra and the verdict
    is `algebra` unconditionally.
    """

    is_scalar_operator: bool
    via_product_closure: bool
    via_cm_subset_girder: bool
    via_cm_equals_girder: bool
    via_girder_invariant: bool
    consistent: bool
    subspace_is_ultrainvariant: bool

    @property
    def is_algebra(self) -> bool:
        return self.is_scalar_operator or self.via_product_closure


def _maps_into(space: OperatorSpace, source: sub.Subspace,
               target: sub.Subspace) -> bool:
    """Whether every basis operator of the space sends `source` into `target`."""
    for t in space.basis_matrices:
        for x in source.basis:
            if not target.contains_vector(t.matvec(x)):
                return False
    return True


def is_invariant(a: Matrix, m: sub.Subspace) -> bool:
    """A M inside M."""
    if a.cols != m.ambient_dim:
        raise DimensionMismatch("matrix cols != subspace ambient")
    return all(m.contains_vector(a.matvec(x)) for x in m.basis)


def is_ultrainvariant(a: Matrix, m: sub.Subspace) -> bool:
    """M invariant for every operator in its own local commutant."""
    if not a.is_square():
        raise NotSquare("ultrainvariance needs a square matrix")
    c = local_commutant(a, m)
    return _maps_into(c, m, m)


def algebra_status(a: Matrix, m: sub.Subspace) -> AlgebraVerdict:
    """Evaluate all four algebra criteria and assert that they agree.

    (i) product closure of the local commutant on its echelon basis;
    (ii) the commutant's reach of M lies inside the girder;
    (iii) the reach equals the girder;
    (iv) the girder is invariant under the local commutant.
    """
    if not a.is_square():
        raise NotSquare("algebra status needs a square matrix")
    if a.rows != m.ambient_dim:
        raise DimensionMismatch("matrix dim != subspace ambient")
    scalar = a.scalar_multiple_of_identity() is not None
    c = local_commutant(a, m)
    reach = apply_to_subspace(c, m)
    g = girder_of_space(a, a, c, lower=m)
    cond_i = is_product_closed(c)
    cond_ii = sub.contains(g, reach)
    cond_iii = reach == g
    cond_iv = _maps_into(c, g, g)
    if scalar:
        ultra = m.is_zero() or m.is_full()
        return AlgebraVerdict(True, cond_i, cond_ii, cond_iii, cond_iv,
                              True, ultra)
    consistent = cond_i == cond_ii == cond_iii == cond_iv
    if not consistent:
        raise InternalInconsistency(
            "the four algebra criteria disagree for a non-scalar operator: "
            f"(i)={cond_i} (ii)={cond_ii} (iii)={cond_iii} (iv)={cond_iv}")
    ultra = cond_i and m == g
    return AlgebraVerdict(False, cond_i, cond_ii, cond_iii, cond_iv,
                          True, ultra)


def ultrainvariant_closure(a: Matrix, m: sub.Subspace) -> sub.Subspace:
    """The smallest ultrainvariant subspace containing M.

    Exactly two reach steps: take N = C(A;M).M, then C(A;N).N.  The result
    is asserted to be a fixed point instead of iterating to convergence.
    """
    if not a.is_square():
        raise NotSquare("closure needs a square matrix")
    if a.rows != m.ambient_dim:
        raise DimensionMismatch("matrix dim != subspace ambient")
    n_space = apply_to_subspace(local_commutant(a, m), m)
    closure = apply_to_subspace(local_commutant(a, n_space), n_space)
    if not sub.contains(closure, m):
        raise InternalInconsistency("closure lost the starting subspace")
    if not is_ultrainvariant(a, closure):
        raise InternalInconsistency("two-step closure is not a fixed point")
    return closure


def conjugate_problem(a: Matrix, m: sub.Subspace, u: Matrix):
    """Transport the instance through an invertible U: (U A U^-1, U M)."""
    if not u.is_square() or u.rows != a.rows:
        raise DimensionMismatch("U must be square of the same size as A")
    u_inv = u.inverse()
    return u * a * u_inv, sub.map_subspace(u, m)


def reduce_components(a: Matrix, sizes, m: sub.Subspace):
    """Project M onto the declared diagonal blocks of A.

    Returns one (block, projected subspace) pair per declared block.  If M
    is ultrainvariant for A, each projection is ultrainvariant for its
    block; the converse is not asserted.
    """
    if not a.is_square():
        raise NotSquare("block reduction needs a square matrix")
    sizes = list(sizes)
    if any(s < 1 for s in sizes) or sum(sizes) != a.rows:
        raise BadSplit(f"declared sizes {sizes} do not split dimension {a.rows}")
    if m.ambient_dim != a.rows:
        raise DimensionMismatch("matrix dim != subspace ambient")
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    for bi in range(len(sizes)):
        for bj in range(len(sizes)):
            if bi == bj:
                continue
            for i in range(offsets[bi], offsets[bi + 1]):
                for j in range(offsets[bj], offsets[bj + 1]):
                    if a.data[i][j]:
                        raise BadSplit("matrix is not block-diagonal for the "
                                       "declared split")
    out = []
    for bi, size in enumerate(sizes):
        lo, hi = offsets[bi], offsets[bi + 1]
        block = Matrix(tuple(r[lo:hi] for r in a.data[lo:hi]), a.backend,
                       _raw=True)
        proj = sub.canonicalize([x[lo:hi] for x in m.basis], size, m.backend)
        out.append((block, proj))
    return out
