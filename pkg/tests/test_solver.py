import pytest

from ultrainv import (Matrix, alg_of, canonicalize, commutant, contains,
                      full_space, girder, intertwiner_space,
                      largest_inner_algebra, left_module_algebra,
                      local_commutant, right_module_algebra, zero_space)
from ultrainv.errors import DimensionMismatch
from ultrainv.fixtures import (build_jordan, example_projection_3block,
                               rand_matrix, rand_subspace, rng_for)
from ultrainv.opspace import (OperatorSpace, is_product_closed,
                              multiplier_space, vec)
from ultrainv.subspace import kernel


def e(i, n):
    return tuple(1 if k == i else 0 for k in range(n))


J3 = build_jordan([3], 0)


class TestIntertwinerSpace:
    def test_zero_subspace_gives_everything(self):
        a = rand_matrix(rng_for(1, "a"), 3, 3)
        b = rand_matrix(rng_for(1, "b"), 2, 2)
        assert intertwiner_space(a, b, zero_space(3)).dim == 6

    def test_scalar_pair_gives_everything(self):
        lam = 2
        a = Matrix.identity(3) * lam
        b = Matrix.identity(2) * lam
        m = canonicalize([(1, 1, 0)], 3)
        assert intertwiner_space(a, b, m).dim == 6

    def test_rank_one_target_by_hand(self):
        # S is 1x2 with S J2 x = 0 for all x, so the first slot is forced to 0
        a = build_jordan([2], 0)
        b = Matrix([[0]])
        space = intertwiner_space(a, b, full_space(2))
        assert space.dim == 1
        assert [x.a for x in vec(space.basis_matrices[0])] == [0, 1]

    def test_shape_checks(self):
        with pytest.raises(DimensionMismatch):
            intertwiner_space(Matrix.identity(2), Matrix.identity(2),
                              zero_space(3))


class TestLocalCommutant:
    def test_projection_example_pattern(self):
        a, m = example_projection_3block(1, 1, 1)
        assert local_commutant(a, m).dim == 6

    def test_full_subspace_is_commutant(self):
        a = rand_matrix(rng_for(2, "c"), 3, 3)
        assert local_commutant(a, full_space(3)) == commutant(a)

    def test_jordan_first_column_constraint(self):
        space = local_commutant(J3, canonicalize([e(0, 3)], 3))
        assert space.dim == 7
        for t in space.basis_matrices:
            assert kernel(J3).contains_vector(t.matvec(e(0, 3)))


class TestCommutantAndAlg:
    def test_commutant_of_identity(self):
        assert commutant(Matrix.identity(2)).dim == 4

    def test_alg_of_trivial_spaces(self):
        assert alg_of(zero_space(3)).dim == 9
        assert alg_of(full_space(3)).dim == 9

    def test_commutant_of_jordan_is_polynomials(self):
        c = commutant(J3)
        assert c.dim == 3
        polys = OperatorSpace.from_matrices(
            [Matrix.identity(3), J3, J3 * J3], 3, 3)
        assert c == polys

    def test_alg_of_line(self):
        m = canonicalize([e(0, 3)], 3)
        space = alg_of(m)
        # T e1 in span{e1}: two entries of the first column vanish
        assert space.dim == 7
        for t in space.basis_matrices:
            assert m.contains_vector(t.matvec(e(0, 3)))


class TestGirder:
    def test_full_space_is_its_own_girder(self):
        a = rand_matrix(rng_for(3, "g"), 3, 3)
        b = rand_matrix(rng_for(4, "g"), 3, 3)
        assert girder(a, b, full_space(3)) == full_space(3)

    def test_projection_example_girder_is_m(self):
        a, m = example_projection_3block(1, 1, 1)
        assert girder(a, a, m) == m

    def test_zero_girder_for_nonscalar(self):
        assert girder(J3, J3, zero_space(3)) == zero_space(3)

    def test_girder_scalar_pair_is_everything(self):
        a = Matrix.identity(3) * 2
        assert girder(a, a, zero_space(3)) == full_space(3)

    def test_girder_preserves_intertwiners(self):
        rng = rng_for(5, "g")
        a = rand_matrix(rng, 4, 4)
        m = rand_subspace(rng, 4)
        g = girder(a, a, m)
        assert contains(g, m)
        assert intertwiner_space(a, a, g) == intertwiner_space(a, a, m)


class TestModuleAlgebras:
    def test_inner_algebra_on_projection_example(self):
        a, m = example_projection_3block(1, 1, 1)
        inner = largest_inner_algebra(a, m)
        c = local_commutant(a, m)
        assert is_product_closed(inner)
        assert contains(c.space, inner.space)

    def test_inner_algebra_scalar(self):
        a = Matrix.identity(3) * 5
        m = canonicalize([e(0, 3)], 3)
        assert largest_inner_algebra(a, m).dim == 9

    def test_algebra_case_fixed_point(self):
        # invariant M whose commutant is an algebra: inner algebra is all of it
        a = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 1]])
        m = canonicalize([e(0, 3)], 3)
        inner = largest_inner_algebra(a, m)
        assert inner == local_commutant(a, m)

    def test_left_algebra_of_zero_subspace(self):
        a = rand_matrix(rng_for(6, "l"), 3, 3)
        b = rand_matrix(rng_for(7, "l"), 3, 3)
        left = left_module_algebra(a, b, zero_space(3))
        assert left.dim == 9

    def test_left_right_match_oracles(self):
        rng = rng_for(8, "lr")
        for _ in range(5):
            n = rng.randint(2, 3)
            a = rand_matrix(rng, n, n)
            b = rand_matrix(rng, n, n)
            m = rand_subspace(rng, n)
            v = intertwiner_space(a, b, m)
            assert left_module_algebra(a, b, m) == multiplier_space(v, "left")
            c = local_commutant(a, m)
            assert right_module_algebra(a, m) == multiplier_space(c, "right")

    def test_right_algebra_of_full_subspace(self):
        a = rand_matrix(rng_for(9, "r"), 3, 3)
        assert right_module_algebra(a, full_space(3)) == commutant(a)

    def test_left_algebra_of_full_subspace(self):
        a = rand_matrix(rng_for(10, "l"), 3, 3)
        assert left_module_algebra(a, a, full_space(3)) == commutant(a)
