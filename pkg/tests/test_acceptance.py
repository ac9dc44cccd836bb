"""Acceptance criteria, one test per numbered criterion.

Everything runs on the exact backend with zero tolerance: equality means
structural equality of canonical bases.  Each test prints one pass line
(visible with `pytest -s`) and asserts its stated wall-clock budget.
"""

import time

from ultrainv import (Matrix, algebra_status, canonicalize, commutant,
                      full_space, intertwiner_space, is_invariant,
                      is_product_closed, is_ultrainvariant, kernel,
                      left_module_algebra, local_commutant, multiplier_space,
                      right_module_algebra, ultrainvariant_closure)
from ultrainv.cli import main
from ultrainv.fixtures import (InstanceSpec, build_jordan,
                               build_truncated_shift, direct_sum,
                               example_graph_subspace,
                               example_projection_3block, generate,
                               rand_fraction, rand_matrix, rand_subspace,
                               random_similarity, rng_for)
from ultrainv.opspace import OperatorSpace, apply_to_subspace
from ultrainv.properties import (check_girder_laws, check_join_law,
                                 check_projection_criterion,
                                 check_proper_inclusion,
                                 check_similarity_transport,
                                 check_translation_invariance)
from ultrainv.scalar import GaussianRational, as_exact
from ultrainv.spectral import (algebraic_ultra_lattice, ascent_descent,
                               nilpotent_ultra_lattice, primary_decomposition,
                               riesz_projection, spectral_subspace,
                               spectrum_from_roots)
from ultrainv.subspace import image
from ultrainv import eval_poly


def announce(num, text):
    print(f"ACCEPTANCE {num}: PASS  {text}")


def unit_columns(n, coords):
    return canonicalize([tuple(1 if i == c else 0 for i in range(n))
                         for c in coords], n)


def partitions(total):
    if total == 0:
        yield []
        return
    for first in range(total, 0, -1):
        for rest in partitions(total - first):
            if not rest or rest[0] <= first:
                yield [first] + rest


def test_criterion_1_projection_example():
    started = time.perf_counter()
    for d1, d2, d3 in ((1, 1, 1), (2, 2, 2)):
        a, m = example_projection_3block(d1, d2, d3)
        n = d1 + d2 + d3
        c = local_commutant(a, m)
        # the exact zero-block pattern, built independently entry by entry
        free = []
        blocks = {(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (2, 2)}
        offsets = (0, d1, d1 + d2, n)
        for bi in range(3):
            for bj in range(3):
                if (bi, bj) not in blocks:
                    continue
                for i in range(offsets[bi], offsets[bi + 1]):
                    for j in range(offsets[bj], offsets[bj + 1]):
                        free.append(Matrix([[1 if (r, s) == (i, j) else 0
                                             for s in range(n)]
                                            for r in range(n)]))
        pattern = OperatorSpace.from_matrices(free, n, n)
        assert c == pattern
        from ultrainv.solver import girder
        assert girder(a, a, m) == m
        assert apply_to_subspace(c, m) == full_space(n)
        verdict = algebra_status(a, m)
        assert not verdict.is_algebra
        assert ultrainvariant_closure(a, m) == full_space(n)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    announce(1, f"projection example pattern/girder/closure exact "
                f"({elapsed:.2f}s)")


def test_criterion_2_graph_example():
    started = time.perf_counter()
    for dims in ((2, 2, 1), (1, 1, 1)):
        q, l_space = example_graph_subspace(*dims)
        assert local_commutant(q, l_space) == commutant(q)
        assert not is_invariant(q, l_space)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    announce(2, f"graph example C(Q;L) = (Q)' and L not invariant "
                f"({elapsed:.2f}s)")


def test_criterion_3_four_way_criterion():
    started = time.perf_counter()
    cases = 500
    algebras = 0
    for index in range(cases):
        rng = rng_for(2024, "four-way", index)
        n = rng.randint(2, 5)
        a = rand_matrix(rng, n, n)
        m = rand_subspace(rng, n)
        # algebra_status raises InternalInconsistency if (i)-(iv) disagree
        verdict = algebra_status(a, m)
        assert verdict.consistent
        oracle = is_product_closed(local_commutant(a, m))
        assert verdict.via_product_closure == oracle
        algebras += verdict.is_algebra
    elapsed = time.perf_counter() - started
    assert elapsed < 180.0
    announce(3, f"{cases} seeded pairs, 100% four-way agreement "
                f"({algebras} algebras, {elapsed:.1f}s)")


def test_criterion_4_module_structure_oracles():
    started = time.perf_counter()
    cases = 200
    for index in range(cases):
        rng = rng_for(77, "module", index)
        n = rng.randint(2, 4)
        a = rand_matrix(rng, n, n)
        b = a if rng.random() < 0.5 else rand_matrix(rng, n, n)
        m = rand_subspace(rng, n)
        v = intertwiner_space(a, b, m)
        left = left_module_algebra(a, b, m)
        assert left == multiplier_space(v, "left")
        assert is_product_closed(left)
        right = right_module_algebra(a, m)
        assert right == multiplier_space(local_commutant(a, m), "right")
        assert is_product_closed(right)
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    announce(4, f"{cases} instances, module algebras match multiplier "
                f"oracles ({elapsed:.1f}s)")


def test_criterion_5_nilpotent_lattices():
    started = time.perf_counter()
    checked = 0
    for total in range(1, 7):
        for partition in partitions(total):
            plain = build_jordan(partition, 0)
            _, moved = random_similarity(plain, 1000 + checked)
            for a in (plain, moved):
                order = max(partition)
                lattice = nilpotent_ultra_lattice(a)
                kernels = [kernel(a.power(j)) for j in range(order + 1)]
                assert [m.subspace for m in lattice.members] == kernels
                for member in lattice.members:
                    assert is_ultrainvariant(a, member.subspace)
                for j in range(order + 1):
                    im_j = image(a.power(order - j))
                    if im_j == kernels[j]:
                        continue
                    assert not is_ultrainvariant(a, im_j)
                    assert ultrainvariant_closure(a, im_j) == kernels[j]
                checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    announce(5, f"{checked} nilpotent matrices: chains exact, image gaps "
                f"close to kernels ({elapsed:.1f}s)")


ALGEBRAIC_FIXTURES = [
    [(0, [1])],
    [(0, [2])],
    [(1, [2, 1])],
    [(0, [3])],
    [(2, [3, 2])],
    [((0, 1), [2])],              # eigenvalue i
    [(0, [1]), (1, [1])],
    [(0, [2]), (1, [1])],
    [(0, [2]), (1, [2])],
    [(0, [2, 1]), (1, [2])],
    [(0, [3]), (1, [2])],
    [(0, [3]), (1, [3])],
    [(0, [3, 1]), (1, [2])],
    [((0, 1), [2]), (0, [1])],
    [(-1, [2]), (2, [2, 2])],
    [(0, [1]), (1, [1]), (-1, [1])],
    [(0, [2]), (1, [1]), (-1, [1])],
    [(0, [2]), (1, [2]), (-1, [1])],
    [(0, [2]), (1, [2]), (-1, [2])],
    [(0, [3]), (1, [2]), (-1, [1])],
    [(0, [2, 1]), (1, [1]), (-1, [1])],
    [((0, 1), [1]), (0, [2]), (1, [1])],
]


def _build_algebraic(fixture):
    blocks = []
    roots = []
    for lam, partition in fixture:
        scalar = GaussianRational(*lam) if isinstance(lam, tuple) \
            else as_exact(lam)
        blocks.append(build_jordan(partition, scalar))
        roots.append((scalar, max(partition)))
    return direct_sum(blocks), spectrum_from_roots(roots)


def test_criterion_6_algebraic_lattices():
    started = time.perf_counter()
    assert len(ALGEBRAIC_FIXTURES) >= 20
    for idx, fixture in enumerate(ALGEBRAIC_FIXTURES):
        a, spectrum = _build_algebraic(fixture)
        if idx % 5 == 0:
            _, a2 = random_similarity(a, 3000 + idx)
            spectrum2 = spectrum
        else:
            a2, spectrum2 = None, None
        for mat, spec in ((a, spectrum), (a2, spectrum2)):
            if mat is None:
                continue
            lattice = algebraic_ultra_lattice(mat, spec)
            expected = 1
            for _, mult in spec.roots:
                expected *= mult + 1
            assert len(lattice) == expected
            assert all(m.ultrainvariant for m in lattice.members)
            # meet/join closure double-checked here against the member set
            spaces = {m.exponents: m.subspace for m in lattice.members}
            keys = list(spaces)
            for s in keys:
                for t in keys:
                    if s < t:
                        from ultrainv.subspace import meet_join
                        met, joined = meet_join(spaces[s], spaces[t])
                        assert met == spaces[tuple(map(min, s, t))]
                        assert joined == spaces[tuple(map(max, s, t))]
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    announce(6, f"{len(ALGEBRAIC_FIXTURES)} algebraic fixtures enumerate "
                f"prod(n_j+1) members, closed lattices ({elapsed:.1f}s)")


def test_criterion_7_intertwiner_laws():
    started = time.perf_counter()
    laws = (check_join_law, check_similarity_transport, check_girder_laws,
            check_translation_invariance, check_projection_criterion,
            check_proper_inclusion)
    cases = 100
    for index in range(cases):
        spec = InstanceSpec.make(555, "random-pair", index=index, dim_max=4)
        inst = generate(spec)
        for law in laws:
            law(inst, rng_for(555, law.__name__, index))
    elapsed = time.perf_counter() - started
    assert elapsed < 180.0
    announce(7, f"6 intertwiner laws x {cases} cases, 100% pass "
                f"({elapsed:.1f}s)")


def test_criterion_8_spectral_suite():
    started = time.perf_counter()
    # finite-dimensional disjoint-spectrum vanishing
    disjoint_pairs = [
        (build_jordan([2], 0), build_jordan([1], 1)),
        (build_jordan([3], 0), build_jordan([2], 2)),
        (Matrix([[1, 0], [0, 2]]), build_jordan([2], 3)),
        (build_jordan([2], GaussianRational(0, 1)), build_jordan([2], 1)),
    ]
    for a, b in disjoint_pairs:
        assert intertwiner_space(a, b, full_space(a.rows)).dim == 0
        assert intertwiner_space(b, a, full_space(b.rows)).dim == 0
    # kernels of polynomials in A are ultrainvariant
    poly_checks = 0
    for index in range(25):
        rng = rng_for(888, "poly", index)
        n = rng.randint(2, 4)
        a = rand_matrix(rng, n, n)
        for _ in range(4):
            degree = rng.randint(1, 3)
            coeffs = [as_exact(rng.randint(-2, 2))
                      for _ in range(degree + 1)]
            if not any(coeffs):
                coeffs[-1] = as_exact(1)
            assert is_ultrainvariant(a, kernel(eval_poly(coeffs, a)))
            poly_checks += 1
    assert poly_checks >= 100
    # Riesz projections and spectral subspaces over the algebraic fixtures
    for fixture in ALGEBRAIC_FIXTURES:
        a, spectrum = _build_algebraic(fixture)
        decomp = primary_decomposition(a, spectrum)
        k = len(decomp.blocks)
        sigmas = [[j] for j in range(k)] + [list(range(1, k))]
        for sigma in sigmas:
            p = riesz_projection(a, decomp, sigma)
            assert p * p == p and a * p == p * a
            assert is_ultrainvariant(a, image(p))
        for j in range(k):
            part = spectral_subspace(a, decomp,
                                     [decomp.blocks[j].eigenvalue])
            assert is_ultrainvariant(a, part)
    # ascent/descent: stable kernel and image are ultrainvariant
    for index in range(10):
        rng = rng_for(999, "ascent", index)
        partition = [rng.randint(1, 3), rng.randint(1, 2)]
        lam = rng.randint(-1, 1)
        a = build_jordan(partition, lam)
        alpha, delta, ker_chain, im_chain = ascent_descent(a, lam)
        assert alpha == delta == max(partition)
        assert is_ultrainvariant(a, ker_chain[-1])
        assert is_ultrainvariant(a, im_chain[-1])
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    announce(8, f"spectral suite: Rosenblum, {poly_checks} polynomial "
                f"kernels, Riesz/spectral subspaces, ascent "
                f"({elapsed:.1f}s)")


def test_criterion_9_shifts_and_diagonals():
    started = time.perf_counter()
    for top in range(1, 7):
        rng = rng_for(4040, "weights", top)
        weights = []
        for _ in range(top):
            w = rand_fraction(rng)
            while w == 0:
                w = rand_fraction(rng)
            weights.append(w)
        shift = build_truncated_shift(weights)
        n = top + 1
        for j in range(n + 1):
            span = unit_columns(n, range(j))
            assert is_ultrainvariant(shift, span)
            assert span == kernel(shift.power(j))
    for index in range(8):
        rng = rng_for(5050, "diag", index)
        n = rng.randint(2, 6)
        values = [rng.choice([-1, 0, 1, 2]) for _ in range(n)]
        a = Matrix([[values[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])
        levels = {}
        for pos, v in enumerate(values):
            levels.setdefault(v, []).append(pos)
        for coords in levels.values():
            assert is_ultrainvariant(a, unit_columns(n, coords))
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    announce(9, f"weighted shifts (N<=6) and diagonal level sets all "
                f"ultrainvariant ({elapsed:.1f}s)")


def test_criterion_10_end_to_end(tmp_path):
    started = time.perf_counter()
    assert main(["examples"]) == 0
    out = str(tmp_path / "fuzz.json")
    assert main(["fuzz", "--seed", "42", "--cases", "50", "--dim-max", "4",
                 "--out", out]) == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    announce(10, f"cmd_examples and cmd_fuzz(seed=42, cases=50, dim<=4) "
                 f"exit 0 ({elapsed:.1f}s)")
