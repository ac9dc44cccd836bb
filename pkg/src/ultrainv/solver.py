"""Solvers for local intertwiner spaces, commutants, girders and the
largest module algebras.

Every solve reduces to one exact kernel extraction of a stacked linear
system; constraint rows are assembled per basis vector of the localizing
subspace, never as an explicit Kronecker product.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotSquare
from .matrix import Matrix
from .opspace import OperatorSpace, apply_to_subspace
from .scalar import zero_of
from . import opspace
from . import subspace as sub


def _check_square(m: Matrix, name):
    if not m.is_square():
        raise NotSquare(f"{name} must be square, got {m.shape}")


def intertwiner_space(a: Matrix, b: Matrix, m: sub.Subspace) -> OperatorSpace:
    """All S with S A x = B S x for every x in M.

    M = {0} yields the full matrix space, M = F^n yields the global
    intertwiner space of A and B.
    """
    _check_square(a, "A")
    _check_square(b, "B")
    if m.ambient_dim != a.rows:
        raise DimensionMismatch("subspace ambient != dim of A")
    if a.backend != b.backend or a.backend != m.backend:
        raise DimensionMismatch("mixed scalar backends")
    n = a.rows
    mm = b.rows
    backend = a.backend
    z = zero_of(backend)
    rows = []
    bd = b.data
    for x in m.basis:
        u = a.matvec(x)
        for r in range(mm):
            row = [z] * (mm * n)
            for j in range(n):
                if u[j]:
                    row[j * mm + r] = row[j * mm + r] + u[j]
            br = bd[r]
            for i in range(mm):
                f = br[i]
                if f:
                    for j in range(n):
                        if x[j]:
                            idx = j * mm + i
                            row[idx] = row[idx] - f * x[j]
            if any(row):
                rows.append(tuple(row))
    if not rows:
        return OperatorSpace.full(mm, n, backend)
    system = Matrix(tuple(rows), backend, _raw=True)
    return OperatorSpace(sub.kernel(system), mm, n)


def local_commutant(a: Matrix, m: sub.Subspace) -> OperatorSpace:
    """All T with T A x = A T x for x in M; the A = B intertwiner case."""
    return intertwiner_space(a, a, m)


def commutant(a: Matrix) -> OperatorSpace:
    """The global commutant of A."""
    _check_square(a, "A")
    return intertwiner_space(a, a, sub.full_space(a.rows, a.backend))


def alg_of(m: sub.Subspace) -> OperatorSpace:
    """All T with T M inside M, as the kernel of coordinate constraints.

    The component outside M is expressed on the coordinates that are not
    pivotal in M's echelon basis, so no arbitrary complement enters.
    """
    n = m.ambient_dim
    backend = m.backend
    z = zero_of(backend)
    pivots = m.pivots
    pivot_set = set(pivots)
    nonpivots = [r for r in range(n) if r not in pivot_set]
    rows = []
    for x in m.basis:
        for r in nonpivots:
            row = [z] * (n * n)
            for j in range(n):
                xv = x[j]
                if xv:
                    row[j * n + r] = row[j * n + r] + xv
                    for p, col in zip(pivots, m.basis):
                        s = col[r]
                        if s:
                            idx = j * n + p
                            row[idx] = row[idx] - s * xv
            if any(row):
                rows.append(tuple(row))
    if not rows:
        return OperatorSpace.full(n, n, backend)
    system = Matrix(tuple(rows), backend, _raw=True)
    return OperatorSpace(sub.kernel(system), n, n)


def girder_of_space(a: Matrix, b: Matrix, space: OperatorSpace,
                    lower: sub.Subspace | None = None) -> sub.Subspace:
    """Intersection of ker(S A - B S) over the basis of an intertwiner space.

    When `lower` is the localizing subspace, the intersection can stop as
    soon as it shrinks to the dimension of `lower`, since the result always
    contains it.
    """
    n = a.rows
    current = sub.full_space(n, a.backend)
    floor_dim = lower.dim if lower is not None else -1
    for s in space.basis_matrices:
        if current.dim == floor_dim:
            break
        current = sub.meet(current, sub.kernel(s * a - b * s))
    return current


def girder(a: Matrix, b: Matrix, m: sub.Subspace) -> sub.Subspace:
    """The largest subspace inducing the same local intertwiner space as M."""
    space = intertwiner_space(a, b, m)
    return girder_of_space(a, b, space, lower=m)


def largest_inner_algebra(a: Matrix, m: sub.Subspace) -> OperatorSpace:
    """The largest algebra contained in the local commutant at M."""
    c = local_commutant(a, m)
    reach = apply_to_subspace(c, m)
    return local_commutant(a, reach)


def left_module_algebra(a: Matrix, b: Matrix, m: sub.Subspace) -> OperatorSpace:
    """The largest algebra acting on the left of the local intertwiners."""
    space = intertwiner_space(a, b, m)
    reach = apply_to_subspace(space, m)
    return local_commutant(b, reach)


def right_module_algebra(a: Matrix, m: sub.Subspace) -> OperatorSpace:
    """The largest algebra acting on the right of the local commutant at M."""
    g = girder(a, a, m)
    return opspace.meet(local_commutant(a, g), alg_of(g))
