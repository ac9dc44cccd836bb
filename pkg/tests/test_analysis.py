import pytest

from ultrainv import (BadSplit, Matrix, SingularU, algebra_status,
                      canonicalize, conjugate_problem, contains, full_space,
                      is_invariant, is_ultrainvariant, kernel,
                      reduce_components, ultrainvariant_closure, zero_space)
from ultrainv.fixtures import (build_jordan, direct_sum,
                               example_projection_3block, rand_matrix,
                               rand_subspace, rng_for)
from ultrainv.subspace import image, map_subspace


def e(i, n):
    return tuple(1 if k == i else 0 for k in range(n))


J3 = build_jordan([3], 0)


class TestInvariance:
    def test_trivial_subspaces(self):
        a = rand_matrix(rng_for(1, "inv"), 3, 3)
        assert is_invariant(a, zero_space(3))
        assert is_invariant(a, full_space(3))

    def test_transpose_shift_moves_e1(self):
        assert not is_invariant(J3.transpose(), canonicalize([e(0, 3)], 3))
        assert is_invariant(J3, canonicalize([e(0, 3)], 3))


class TestUltrainvariance:
    def test_eigenvector_kernels(self):
        a = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
        lam2 = kernel(a - Matrix.identity(3) * 2)
        lam3 = kernel(a - Matrix.identity(3) * 3)
        assert is_ultrainvariant(a, lam2)
        assert is_ultrainvariant(a, lam3)

    def test_projection_example_m_fails(self):
        a, m = example_projection_3block(1, 1, 1)
        assert not is_ultrainvariant(a, m)

    def test_jordan_image_fails(self):
        # only the kernels ker(J^j) are ultrainvariant for a nilpotent
        a = build_jordan([2, 1], 0)
        assert not is_ultrainvariant(a, image(a))
        assert is_ultrainvariant(a, kernel(a))

    def test_single_block_images_are_kernels(self):
        # for one Jordan block the image chain coincides with the kernel
        # chain, so every image passes
        assert image(J3) == kernel(J3.power(2))
        assert is_ultrainvariant(J3, image(J3))


class TestAlgebraStatus:
    def test_scalar_short_circuit(self):
        a = Matrix.identity(3) * 4
        verdict = algebra_status(a, canonicalize([e(0, 3)], 3))
        assert verdict.is_scalar_operator and verdict.is_algebra
        assert verdict.consistent

    def test_scalar_trivial_subspaces_are_ultra(self):
        a = Matrix.identity(2) * 4
        assert algebra_status(a, zero_space(2)).subspace_is_ultrainvariant
        assert algebra_status(a, full_space(2)).subspace_is_ultrainvariant
        assert not algebra_status(
            a, canonicalize([e(0, 2)], 2)).subspace_is_ultrainvariant

    def test_projection_example_all_false(self):
        a, m = example_projection_3block(1, 1, 1)
        verdict = algebra_status(a, m)
        assert not verdict.is_algebra
        assert not (verdict.via_product_closure
                    or verdict.via_cm_subset_girder
                    or verdict.via_cm_equals_girder
                    or verdict.via_girder_invariant)
        assert verdict.consistent and not verdict.subspace_is_ultrainvariant

    def test_disjoint_block_spectra_yield_algebra(self):
        a = Matrix([[0, 1, 2], [0, 0, 1], [0, 0, 1]])  # J2(0) over (1)
        m = canonicalize([e(0, 3), e(1, 3)], 3)
        verdict = algebra_status(a, m)
        assert verdict.is_algebra and verdict.subspace_is_ultrainvariant

    def test_trivial_subspaces_for_nonscalar(self):
        verdict = algebra_status(J3, zero_space(3))
        assert verdict.is_algebra and verdict.subspace_is_ultrainvariant
        verdict = algebra_status(J3, full_space(3))
        assert verdict.is_algebra and verdict.subspace_is_ultrainvariant

    def test_verdict_matches_direct_definition(self):
        rng = rng_for(3, "verdict")
        for _ in range(10):
            n = rng.randint(2, 4)
            a = rand_matrix(rng, n, n)
            m = rand_subspace(rng, n)
            verdict = algebra_status(a, m)
            assert verdict.subspace_is_ultrainvariant == is_ultrainvariant(a, m)


class TestClosure:
    def test_fixed_point_on_ultrainvariant_input(self):
        assert ultrainvariant_closure(J3, kernel(J3)) == kernel(J3)

    def test_projection_example_closure_is_full(self):
        a, m = example_projection_3block(1, 1, 1)
        assert ultrainvariant_closure(a, m) == full_space(3)

    def test_nilpotent_images_close_to_kernels(self):
        for n, j in ((3, 1), (3, 2), (4, 2), (4, 3)):
            a = build_jordan([n], 0)
            start = image(a.power(n - j))
            assert ultrainvariant_closure(a, start) == kernel(a.power(j))

    def test_monotone(self):
        rng = rng_for(4, "closure")
        a = rand_matrix(rng, 4, 4)
        m = rand_subspace(rng, 4)
        closure = ultrainvariant_closure(a, m)
        assert contains(closure, m)
        assert ultrainvariant_closure(a, closure) == closure


class TestConjugation:
    def test_identity_transport(self):
        m = canonicalize([e(0, 3)], 3)
        a2, m2 = conjugate_problem(J3, m, Matrix.identity(3))
        assert a2 == J3 and m2 == m

    def test_permutation_preserves_verdicts(self):
        perm = Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        m = kernel(J3)
        a2, m2 = conjugate_problem(J3, m, perm)
        assert is_ultrainvariant(J3, m) == is_ultrainvariant(a2, m2)

    def test_random_transport_agrees(self):
        rng = rng_for(5, "conj")
        from ultrainv.fixtures import rand_invertible
        for _ in range(5):
            a = rand_matrix(rng, 4, 4)
            m = rand_subspace(rng, 4)
            u = rand_invertible(rng, 4)
            a2, m2 = conjugate_problem(a, m, u)
            assert m2 == map_subspace(u, m)
            assert is_ultrainvariant(a, m) == is_ultrainvariant(a2, m2)

    def test_singular_u_rejected(self):
        with pytest.raises(SingularU):
            conjugate_problem(J3, zero_space(3), Matrix.zeros(3, 3))


class TestReduceComponents:
    def test_recovers_factors(self):
        a = direct_sum([build_jordan([2], 0), build_jordan([3], 0)])
        m = kernel(a)
        parts = reduce_components(a, (2, 3), m)
        (a1, m1), (a2, m2) = parts
        assert m1 == kernel(a1) and m2 == kernel(a2)
        assert is_ultrainvariant(a1, m1) and is_ultrainvariant(a2, m2)

    def test_full_projects_to_full(self):
        a = direct_sum([build_jordan([1], 1), build_jordan([2], 0)])
        parts = reduce_components(a, (1, 2), full_space(3))
        assert all(p.is_full() for _, p in parts)

    def test_bad_split_rejected(self):
        with pytest.raises(BadSplit):
            reduce_components(J3, (1, 1), zero_space(3))
        with pytest.raises(BadSplit):
            reduce_components(J3, (1, 2), zero_space(3))  # J3 is one block
