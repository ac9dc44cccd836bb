import pytest

from ultrainv import (DimensionMismatch, Matrix, NotSquareAmbient,
                      apply_to_subspace, canonicalize, full_space,
                      is_product_closed, local_commutant, member,
                      multiplier_space, unvec, vec, zero_space)
from ultrainv.fixtures import (example_projection_3block, rand_matrix,
                               rand_subspace, rng_for)
from ultrainv.opspace import OperatorSpace
from ultrainv.subspace import join


def unit(i, j, rows, cols):
    return Matrix([[1 if (r, c) == (i, j) else 0 for c in range(cols)]
                   for r in range(rows)])


def test_vec_is_column_major():
    assert vec(Matrix.identity(2)) == tuple(
        Matrix.identity(2).column(0) + Matrix.identity(2).column(1))
    assert [x.a for x in vec(unit(0, 1, 2, 2))] == [0, 0, 1, 0]


def test_vec_unvec_round_trip():
    rng = rng_for(11, "vec")
    m = rand_matrix(rng, 2, 3)
    assert unvec(vec(m), 2, 3) == m
    with pytest.raises(DimensionMismatch):
        unvec((1, 2, 3), 2, 2)


def test_member_basics():
    a, m = example_projection_3block(1, 1, 1)
    c = local_commutant(a, m)
    assert member(Matrix.zeros(3, 3), c)
    assert member(Matrix.identity(3), c)
    # zero pattern of the projection example: blocks (1,3), (2,3), (3,1)
    assert not member(unit(0, 2, 3, 3), c)
    assert not member(unit(1, 2, 3, 3), c)
    assert not member(unit(2, 0, 3, 3), c)
    assert member(unit(1, 0, 3, 3), c)


def test_apply_to_subspace():
    zero = OperatorSpace.zero(3, 3)
    m = canonicalize([(1, 0, 0)], 3)
    assert apply_to_subspace(zero, m) == zero_space(3)
    span_id = OperatorSpace.from_matrices([Matrix.identity(3)], 3, 3)
    assert apply_to_subspace(span_id, m) == m
    a, mm = example_projection_3block(1, 1, 1)
    c = local_commutant(a, mm)
    assert apply_to_subspace(c, mm) == full_space(3)


def test_apply_distributes_over_join():
    rng = rng_for(5, "distribute")
    a = rand_matrix(rng, 3, 3)
    v = local_commutant(a, rand_subspace(rng, 3))
    m1 = rand_subspace(rng, 3)
    m2 = rand_subspace(rng, 3)
    lhs = apply_to_subspace(v, join(m1, m2))
    rhs = join(apply_to_subspace(v, m1), apply_to_subspace(v, m2))
    assert lhs == rhs


def test_product_closure_oracle():
    idempotent = Matrix([[1, 0], [0, 0]])
    v = OperatorSpace.from_matrices([Matrix.identity(2), idempotent], 2, 2)
    assert is_product_closed(v)
    assert is_product_closed(OperatorSpace.full(2, 2))
    a, m = example_projection_3block(1, 1, 1)
    assert not is_product_closed(local_commutant(a, m))
    with pytest.raises(NotSquareAmbient):
        is_product_closed(OperatorSpace.full(2, 3))


def test_multiplier_space_edges():
    full = OperatorSpace.full(2, 2)
    assert multiplier_space(full, "left") == full
    assert multiplier_space(OperatorSpace.zero(2, 2), "right") == full


def test_left_multiplier_matches_local_commutant_of_reach():
    a, m = example_projection_3block(1, 1, 1)
    c = local_commutant(a, m)
    reach = apply_to_subspace(c, m)  # the full space here
    oracle = multiplier_space(c, "left")
    assert oracle == local_commutant(a, reach)
    from ultrainv import commutant
    assert oracle == commutant(a)


def test_multiplier_space_is_algebra():
    rng = rng_for(9, "mult")
    a = rand_matrix(rng, 3, 3)
    c = local_commutant(a, rand_subspace(rng, 3))
    for side in ("left", "right"):
        assert is_product_closed(multiplier_space(c, side))


def test_basis_matrices_are_members():
    rng = rng_for(13, "members")
    a = rand_matrix(rng, 3, 3)
    c = local_commutant(a, rand_subspace(rng, 3))
    assert all(member(b, c) for b in c.basis_matrices)
