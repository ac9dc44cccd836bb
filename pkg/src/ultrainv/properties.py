"""Registry of machine-checkable invariants and the seeded fuzz runner.

Each check is registered for the instance kinds it applies to.  A failing
check raises PropertyViolation carrying the instance, which the runner
serializes into a counterexample after trying smaller instances first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (algebra_status, is_invariant, is_ultrainvariant,
                       reduce_components, ultrainvariant_closure)
from .errors import UltrainvError
from .fixtures import (ALL_KINDS, KIND_BLOCK_DISJOINT, KIND_DIAGONAL,
                       KIND_GRAPH, KIND_JORDAN, KIND_NILPOTENT,
                       KIND_PROJECTION, KIND_RANDOM_PAIR, KIND_SHIFT,
                       Instance, InstanceSpec, build_jordan,
                       build_locally_global_pair, derive_seed, direct_sum,
                       generate, graph_subspace_facts,
                       projection_3block_facts, rand_matrix, rand_partition,
                       rand_scalar, rand_subspace, rng_for)
from .matrix import Matrix, eval_poly
from .opspace import (OperatorSpace, apply_to_subspace, is_product_closed,
                      member, multiplier_space)
from .scalar import as_exact
from .solver import (commutant, girder, intertwiner_space,
                     left_module_algebra, local_commutant,
                     right_module_algebra)
from .spectral import (algebraic_ultra_lattice, ascent_descent,
                       find_rational_spectrum, minimal_polynomial,
                       nilpotent_ultra_lattice, spectrum_from_roots)
from . import subspace as sub


class PropertyViolation(UltrainvError):
    def __init__(self, check, message, instance: Instance):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.message = message
        self.instance = instance


@dataclass(frozen=True)
class Check:
    name: str
    kinds: tuple
    run: callable


def _fail(check, message, inst):
    raise PropertyViolation(check, message, inst)


def _a_m(inst):
    return inst.matrices["A"], inst.subspaces["M"]


# --- linear core -----------------------------------------------------------

def check_canonicalize_stable(inst, rng):
    m = inst.subspaces["M"]
    if m.is_zero():
        return
    shuffled = list(m.basis)
    rng.shuffle(shuffled)
    scaled = []
    for col in shuffled:
        c = rand_scalar(rng)
        while not c:
            c = rand_scalar(rng)
        scaled.append(tuple(c * x for x in col))
    again = sub.canonicalize(scaled, m.ambient_dim)
    if again != m:
        _fail("canonicalize-stable", "permuted/scaled input changed the "
              "canonical basis", inst)
    twice = sub.canonicalize(m.basis, m.ambient_dim)
    if twice != m:
        _fail("canonicalize-stable", "canonicalize is not idempotent", inst)


def check_grassmann(inst, rng):
    n = inst.matrices["A"].rows
    u = rand_subspace(rng, n)
    v = rand_subspace(rng, n)
    met, joined = sub.meet_join(u, v)
    if u.dim + v.dim != met.dim + joined.dim:
        _fail("grassmann-identity", f"dims {u.dim}+{v.dim} != "
              f"{met.dim}+{joined.dim}", inst)
    if not (sub.contains(u, met) and sub.contains(v, met)
            and sub.contains(joined, u) and sub.contains(joined, v)):
        _fail("grassmann-identity", "meet/join containment broken", inst)


def check_rank_nullity(inst, rng):
    a = inst.matrices["A"]
    if sub.image(a).dim + sub.kernel(a).dim != a.cols:
        _fail("rank-nullity", "rank + nullity != cols", inst)


def check_mutual_containment(inst, rng):
    n = inst.matrices["A"].rows
    u = rand_subspace(rng, n)
    v = rand_subspace(rng, n)
    both = sub.contains(u, v) and sub.contains(v, u)
    if both != (u == v):
        _fail("containment-antisymmetry", "mutual containment does not match "
              "basis equality", inst)


# --- operator spaces -------------------------------------------------------

def check_basis_membership(inst, rng):
    a, m = _a_m(inst)
    c = local_commutant(a, m)
    if not all(member(b, c) for b in c.basis_matrices):
        _fail("basis-membership", "stored basis matrix failed membership",
              inst)
    if not member(Matrix.identity(a.rows), c):
        _fail("basis-membership", "identity escaped the local commutant",
              inst)


def check_apply_join_distributes(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m1 = inst.subspaces["M"]
    m2 = inst.subspaces["M2"]
    v = intertwiner_space(a, b, m1)
    lhs = apply_to_subspace(v, sub.join(m1, m2))
    rhs = sub.join(apply_to_subspace(v, m1), apply_to_subspace(v, m2))
    if lhs != rhs:
        _fail("apply-join-distributes", "V(M1 v M2) != VM1 v VM2", inst)


def check_multiplier_is_algebra(inst, rng):
    a, m = _a_m(inst)
    c = local_commutant(a, m)
    for side in ("left", "right"):
        if not is_product_closed(multiplier_space(c, side)):
            _fail("multiplier-product-closed", f"{side} multiplier space is "
                  "not an algebra", inst)


# --- intertwiner laws ------------------------------------------------------

def _sub_subspace(rng, m):
    take = [col for col in m.basis if rng.random() < 0.6]
    return sub.canonicalize(take, m.ambient_dim)


def check_anti_monotonicity(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m1 = inst.subspaces["M"]
    m2 = _sub_subspace(rng, m1)
    big = intertwiner_space(a, b, m1)
    small = intertwiner_space(a, b, m2)
    if not sub.contains(small.space, big.space):
        _fail("anti-monotonicity", "I(A,B;M1) not inside I(A,B;M2) for "
              "M2 inside M1", inst)


def check_join_law(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m1 = inst.subspaces["M"]
    m2 = inst.subspaces["M2"]
    joined = intertwiner_space(a, b, sub.join(m1, m2))
    met = sub.meet(intertwiner_space(a, b, m1).space,
                   intertwiner_space(a, b, m2).space)
    if joined.space != met:
        _fail("join-law", "I(A,B;M1 v M2) != I(M1) ^ I(M2)", inst)


def check_similarity_transport(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m = inst.subspaces["M"]
    u = inst.matrices["U"]
    v = inst.matrices["V"]
    base = intertwiner_space(a, b, m)
    moved = intertwiner_space(u * a * u.inverse(), v * b * v.inverse(),
                              sub.map_subspace(u, m))
    v_inv = v.inverse()
    pulled = OperatorSpace.from_matrices(
        [v_inv * s * u for s in moved.basis_matrices], b.rows, a.rows)
    if pulled != base:
        _fail("similarity-transport", "conjugated intertwiners do not pull "
              "back", inst)


def check_block_criterion(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    n, mm = a.rows, b.rows
    k = rng.randint(1, n - 1)
    lead = sub.canonicalize([tuple(1 if i == c else 0 for i in range(n))
                             for c in range(k)], n)
    space = intertwiner_space(a, b, lead)
    a11 = Matrix(tuple(r[:k] for r in a.data[:k]))
    a21 = Matrix(tuple(r[:k] for r in a.data[k:]))
    for _ in range(3):
        s = rand_matrix(rng, mm, n)
        s1 = Matrix(tuple(r[:k] for r in s.data))
        s2 = Matrix(tuple(r[k:] for r in s.data))
        rhs = s1 * a11 + s2 * a21
        direct = (b * s1 == rhs)
        if direct != member(s, space):
            _fail("block-criterion", "membership disagrees with the leading "
                  "block identity", inst)


def check_girder_laws(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m = inst.subspaces["M"]
    g = girder(a, b, m)
    if not sub.contains(g, m):
        _fail("girder-laws", "girder does not contain M", inst)
    if girder(a, b, g) != g:
        _fail("girder-laws", "girder is not idempotent", inst)
    if intertwiner_space(a, b, g) != intertwiner_space(a, b, m):
        _fail("girder-laws", "girder changed the intertwiner space", inst)
    k = sub.join(m, inst.subspaces["M2"])
    if not sub.contains(girder(a, b, k), g):
        _fail("girder-laws", "girder is not monotone", inst)


def check_translation_invariance(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m = inst.subspaces["M"]
    lam = as_exact(rng.randint(-2, 2))
    shifted = intertwiner_space(a - Matrix.identity(a.rows) * lam,
                                b - Matrix.identity(b.rows) * lam, m)
    if shifted != intertwiner_space(a, b, m):
        _fail("translation-invariance", "shifting both operators changed "
              "the space", inst)


def check_proper_inclusion(inst, rng):
    a = inst.matrices["A"]
    if a.scalar_multiple_of_identity() is not None:
        return
    n = a.rows
    m = _invariant_subspace(a, rng)
    if m.is_full():
        m = sub.zero_space(n)
    if not commutant(a).dim < local_commutant(a, m).dim:
        _fail("proper-inclusion", "commutant not strictly smaller than the "
              "local commutant", inst)


def _invariant_subspace(a, rng):
    n = a.rows
    v = tuple(as_exact(rng.randint(-2, 2)) for _ in range(n))
    vectors = []
    current = v
    for _ in range(n):
        vectors.append(current)
        current = a.matvec(current)
    return sub.canonicalize(vectors, n)


def check_shift_composition(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m = inst.subspaces["M"]
    base = intertwiner_space(a, b, m)
    c = local_commutant(a, m)
    for t in c.basis_matrices[:4]:
        moved = intertwiner_space(a, b, sub.map_subspace(t, m))
        for s in moved.basis_matrices[:4]:
            if not member(s * t, base):
                _fail("shift-composition", "S T escaped I(A,B;M)", inst)


def check_projection_criterion(inst, rng):
    a, m = _a_m(inst)
    p = sub.projection_matrix(m)
    in_commutant = member(p, local_commutant(a, m))
    if in_commutant != is_invariant(a, m):
        _fail("projection-criterion", "projection membership disagrees with "
              "invariance", inst)


def check_rosenblum(inst, rng):
    sizes = inst.meta["sizes"]
    a = inst.matrices["A"]
    d1 = sizes[0]
    a11 = Matrix(tuple(r[:d1] for r in a.data[:d1]))
    a22 = Matrix(tuple(r[d1:] for r in a.data[d1:]))
    space = intertwiner_space(a11, a22, sub.full_space(d1))
    if space.dim != 0:
        _fail("rosenblum-disjoint", "disjoint spectra admit a nonzero "
              "intertwiner", inst)


# --- invariance analysis ---------------------------------------------------

def check_four_way(inst, rng):
    a, m = _a_m(inst)
    verdict = algebra_status(a, m)  # raises InternalInconsistency itself
    oracle = is_product_closed(local_commutant(a, m))
    if verdict.via_product_closure != oracle:
        _fail("four-way-agreement", "verdict disagrees with the brute-force "
              "oracle", inst)
    direct = is_ultrainvariant(a, m)
    if verdict.subspace_is_ultrainvariant != direct:
        _fail("four-way-agreement", "verdict ultrainvariance flag disagrees "
              "with the definition", inst)


def check_closure_laws(inst, rng):
    a, m = _a_m(inst)
    closure = ultrainvariant_closure(a, m)
    if not sub.contains(closure, m):
        _fail("closure-laws", "closure lost M", inst)
    if ultrainvariant_closure(a, closure) != closure:
        _fail("closure-laws", "closure is not idempotent", inst)


def check_closure_minimal_nilpotent(inst, rng):
    a, m = _a_m(inst)
    closure = ultrainvariant_closure(a, m)
    power = Matrix.identity(a.rows)
    for _ in range(a.rows + 1):
        ker = sub.kernel(power)
        if sub.contains(ker, m):
            if closure != ker:
                _fail("closure-minimal", "closure differs from the smallest "
                      "kernel power containing M", inst)
            return
        power = power * a
    _fail("closure-minimal", "no kernel power contains M", inst)


def check_ultra_lattice_closed(inst, rng):
    a, m = _a_m(inst)
    u1 = ultrainvariant_closure(a, m)
    u2 = ultrainvariant_closure(a, rand_subspace(rng, a.rows))
    met, joined = sub.meet_join(u1, u2)
    if not is_ultrainvariant(a, met) or not is_ultrainvariant(a, joined):
        _fail("ultra-lattice-closed", "meet or join of ultrainvariant "
              "subspaces is not ultrainvariant", inst)


def check_conjugation_transport(inst, rng):
    a, m = _a_m(inst)
    u = inst.matrices["U"]
    a2 = u * a * u.inverse()
    m2 = sub.map_subspace(u, m)
    if is_ultrainvariant(a, m) != is_ultrainvariant(a2, m2):
        _fail("conjugation-transport", "ultrainvariance not preserved by "
              "similarity", inst)


def check_direct_sum_assembly(inst, rng):
    parts = []
    lams = rng.sample([-2, -1, 0, 1, 2], 2)
    total_sub = []
    offset = 0
    sizes = []
    for lam in lams:
        partition = rand_partition(rng, rng.randint(1, 2))
        nilp = build_jordan(partition, 0)
        order = max(partition)
        m_exp = rng.randint(0, order)
        block = build_jordan(partition, lam)
        parts.append(block)
        ker = sub.kernel(nilp.power(m_exp))
        sizes.append(nilp.rows)
        for col in ker.basis:
            total_sub.append((offset, col))
        offset += nilp.rows
    a = direct_sum(parts)
    n = a.rows
    vectors = []
    for off, col in total_sub:
        vec_ = [as_exact(0)] * n
        for i, x in enumerate(col):
            vec_[off + i] = x
        vectors.append(tuple(vec_))
    m = sub.canonicalize(vectors, n)
    if not is_ultrainvariant(a, m):
        _fail("direct-sum-assembly", "sum of per-block kernels is not "
              "ultrainvariant", inst)
    for (block, proj), size in zip(reduce_components(a, sizes, m), sizes):
        if not is_ultrainvariant(block, proj):
            _fail("direct-sum-assembly", "component projection lost "
                  "ultrainvariance", inst)


def check_reducing_pair(inst, rng):
    d1 = rng.randint(1, 2)
    d2 = rng.randint(1, 2)
    a1 = rand_matrix(rng, d1, d1)
    a2 = rand_matrix(rng, d2, d2)
    a = direct_sum([a1, a2])
    first = sub.canonicalize([tuple(1 if i == c else 0 for i in range(d1 + d2))
                              for c in range(d1)], d1 + d2)
    ultra = is_ultrainvariant(a, first)
    no_intertwiner = intertwiner_space(a1, a2, sub.full_space(d1)).dim == 0
    if ultra != no_intertwiner:
        _fail("reducing-pair", "block ultrainvariance disagrees with "
              "I(A1,A2) = 0", inst)


# --- module algebras -------------------------------------------------------

def check_module_algebras(inst, rng):
    a = inst.matrices["A"]
    b = inst.matrices["B"]
    m = inst.subspaces["M"]
    if a.rows != b.rows:
        b = a  # the oracle needs a square ambient of matching size
    v = intertwiner_space(a, b, m)
    left = left_module_algebra(a, b, m)
    if left != multiplier_space(v, "left"):
        _fail("module-algebras", "left module algebra disagrees with the "
              "multiplier oracle", inst)
    if not is_product_closed(left):
        _fail("module-algebras", "left module algebra is not an algebra",
              inst)
    right = right_module_algebra(a, m)
    if right != multiplier_space(local_commutant(a, m), "right"):
        _fail("module-algebras", "right module algebra disagrees with the "
              "multiplier oracle", inst)
    if not is_product_closed(right):
        _fail("module-algebras", "right module algebra is not an algebra",
              inst)


def check_largest_inner_algebra(inst, rng):
    a, m = _a_m(inst)
    from .solver import largest_inner_algebra
    inner = largest_inner_algebra(a, m)
    c = local_commutant(a, m)
    if not sub.contains(c.space, inner.space):
        _fail("largest-inner-algebra", "inner algebra escaped the local "
              "commutant", inst)
    if not is_product_closed(inner):
        _fail("largest-inner-algebra", "inner algebra is not product closed",
              inst)


# --- spectral --------------------------------------------------------------

def check_polynomial_kernels(inst, rng):
    a = inst.matrices["A"]
    degree = rng.randint(1, 3)
    coeffs = [as_exact(rng.randint(-2, 2)) for _ in range(degree + 1)]
    if not any(coeffs):
        coeffs[0] = as_exact(1)
    ker = sub.kernel(eval_poly(coeffs, a))
    if not is_ultrainvariant(a, ker):
        _fail("polynomial-kernels", "ker(p(A)) not ultrainvariant", inst)


def check_krylov_independence(inst, rng):
    a = inst.matrices["A"]
    n = a.rows
    e = tuple(as_exact(rng.randint(-2, 2)) for _ in range(n))
    if not any(e):
        e = tuple(as_exact(1 if i == 0 else 0) for i in range(n))
    chain = [e]
    current = e
    for _ in range(n):
        current = a.matvec(current)
        if not any(current):
            break
        chain.append(current)
    span = sub.canonicalize(chain, n)
    if span.dim != len(chain):
        _fail("krylov-independence", "iterates of a vector under a nilpotent "
              "matrix are dependent", inst)


def check_ascent_descent_ultra(inst, rng):
    a = inst.matrices["A"]
    lam = inst.meta.get("eigenvalue", as_exact(0))
    alpha, delta, ker_chain, im_chain = ascent_descent(a, lam)
    if alpha != delta:
        _fail("ascent-descent", "ascent != descent", inst)
    if not is_ultrainvariant(a, ker_chain[-1]):
        _fail("ascent-descent", "stable kernel not ultrainvariant", inst)
    if not is_ultrainvariant(a, im_chain[-1]):
        _fail("ascent-descent", "stable image not ultrainvariant", inst)


def check_diagonal_normal(inst, rng):
    a = inst.matrices["A"]
    levels = inst.meta["levels"]
    n = a.rows
    for value, indices in levels.items():
        span = sub.canonicalize([tuple(1 if i == c else 0 for i in range(n))
                                 for c in indices], n)
        if not is_ultrainvariant(a, span):
            _fail("diagonal-level-sets", f"level set of {value} is not "
                  "ultrainvariant", inst)
    roots = [(as_exact(v), 1) for v in sorted(levels)]
    lattice = algebraic_ultra_lattice(a, spectrum_from_roots(roots))
    if len(lattice) != 2 ** len(levels):
        _fail("diagonal-level-sets", "lattice size is not 2^levels", inst)
    level_keys = sorted(levels)
    for member_ in lattice.members:
        vectors = []
        for value, flag in zip(level_keys, member_.exponents):
            if flag:
                vectors.extend(
                    tuple(1 if i == c else 0 for i in range(n))
                    for c in levels[value])
        if member_.subspace != sub.canonicalize(vectors, n):
            _fail("diagonal-level-sets", "lattice member is not a union of "
                  "level sets", inst)


def check_truncated_shift(inst, rng):
    w = inst.matrices["A"]
    n = w.rows
    lattice = nilpotent_ultra_lattice(w)
    if len(lattice) != n + 1:
        _fail("truncated-shift", "shift lattice is not the full chain", inst)
    for j in range(n + 1):
        span = sub.canonicalize([tuple(1 if i == c else 0 for i in range(n))
                                 for c in range(j)], n)
        if lattice.members[j].subspace != span:
            _fail("truncated-shift", "ker(W^j) is not the span of the "
                  "leading coordinates", inst)
        if not is_ultrainvariant(w, span):
            _fail("truncated-shift", "leading span is not ultrainvariant",
                  inst)


def check_nilpotent_lattice(inst, rng):
    a = inst.matrices["A"]
    lattice = nilpotent_ultra_lattice(a)  # self-verifying
    q = minimal_polynomial(a)
    if len(lattice) != len(q):
        _fail("nilpotent-lattice", "member count != order + 1", inst)


def check_spectrum_roundtrip(inst, rng):
    a = inst.matrices["A"]
    spec = find_rational_spectrum(a)
    lattice = algebraic_ultra_lattice(a, spec)
    expected = 1
    for _, mult in spec.roots:
        expected *= mult + 1
    if len(lattice) != expected:
        _fail("algebraic-lattice-count", "member count != prod(n_j + 1)",
              inst)


# --- fixtures --------------------------------------------------------------

def check_determinism(inst, rng):
    from .serialization import canonical_dumps, matrix_to_json, \
        subspace_to_json
    again = generate(inst.spec)
    blob1 = canonical_dumps({
        "m": {k: matrix_to_json(v) for k, v in inst.matrices.items()},
        "s": {k: subspace_to_json(v) for k, v in inst.subspaces.items()},
    })
    blob2 = canonical_dumps({
        "m": {k: matrix_to_json(v) for k, v in again.matrices.items()},
        "s": {k: subspace_to_json(v) for k, v in again.subspaces.items()},
    })
    if blob1 != blob2:
        _fail("fixture-determinism", "same spec produced different bytes",
              inst)


def check_projection_fixture(inst, rng):
    d1, d2, d3 = inst.meta["dims"]
    _, _, facts = projection_3block_facts(d1, d2, d3)
    bad = [name for name, ok in facts if not ok]
    if bad:
        _fail("projection-fixture", f"facts failed: {bad}", inst)


def check_graph_fixture(inst, rng):
    d1, d2, d3 = inst.meta["dims"]
    _, _, facts = graph_subspace_facts(d1, d2, d3)
    bad = [name for name, ok in facts if not ok]
    if bad:
        _fail("graph-fixture", f"facts failed: {bad}", inst)


def check_block_disjoint_fixture(inst, rng):
    a, m = _a_m(inst)
    verdict = algebra_status(a, m)
    if not verdict.is_algebra:
        _fail("block-disjoint-fixture", "local commutant is not an algebra",
              inst)
    if not is_ultrainvariant(a, m):
        _fail("block-disjoint-fixture", "leading block not ultrainvariant",
              inst)
    d1 = inst.meta["sizes"][0]
    a11 = Matrix(tuple(r[:d1] for r in a.data[:d1]))
    c11 = commutant(a11)
    for t in local_commutant(a, m).basis_matrices:
        t21 = tuple(r[:d1] for r in t.data[d1:])
        if any(any(row) for row in t21):
            _fail("block-disjoint-fixture", "T21 block is nonzero", inst)
        t11 = Matrix(tuple(r[:d1] for r in t.data[:d1]))
        if not member(t11, c11):
            _fail("block-disjoint-fixture", "T11 escaped the commutant of "
                  "A11", inst)


def check_locally_global(inst, rng):
    d_m = rng.randint(1, 2)
    d_n = rng.randint(1, 2)
    d_y = rng.randint(1, 2)
    lam = rng.randint(-2, 2)
    a, b, m = build_locally_global_pair(d_m, d_n, d_y, lam,
                                        derive_seed(inst.spec.seed, "lg"))
    local = intertwiner_space(a, b, m)
    global_ = intertwiner_space(a, b, sub.full_space(a.rows))
    if local != global_:
        _fail("locally-global", "I(A,B;M) != I(A,B) for the scalar-tail "
              "instance", inst)
    a11 = Matrix(tuple(r[:d_m] for r in a.data[:d_m]))
    shifted = Matrix.identity(d_m) * as_exact(lam) - a11
    for s in local.basis_matrices:
        s1 = Matrix(tuple(r[:d_m] for r in s.data))
        if not (s1 * shifted).is_zero():
            _fail("locally-global", "kernel description fails: S1 does not "
                  "kill im(lam - A11)", inst)


_WITH_M = (KIND_JORDAN, KIND_NILPOTENT, KIND_BLOCK_DISJOINT, KIND_PROJECTION,
           KIND_GRAPH, KIND_RANDOM_PAIR)

CHECKS = (
    Check("canonicalize-stable", _WITH_M, check_canonicalize_stable),
    Check("grassmann-identity", (KIND_RANDOM_PAIR, KIND_JORDAN),
          check_grassmann),
    Check("rank-nullity", ALL_KINDS, check_rank_nullity),
    Check("containment-antisymmetry", (KIND_RANDOM_PAIR,),
          check_mutual_containment),
    Check("basis-membership", _WITH_M, check_basis_membership),
    Check("apply-join-distributes", (KIND_RANDOM_PAIR,),
          check_apply_join_distributes),
    Check("multiplier-product-closed", (KIND_RANDOM_PAIR, KIND_JORDAN),
          check_multiplier_is_algebra),
    Check("anti-monotonicity", (KIND_RANDOM_PAIR,), check_anti_monotonicity),
    Check("join-law", (KIND_RANDOM_PAIR,), check_join_law),
    Check("similarity-transport", (KIND_RANDOM_PAIR,),
          check_similarity_transport),
    Check("block-criterion", (KIND_RANDOM_PAIR,), check_block_criterion),
    Check("girder-laws", (KIND_RANDOM_PAIR,), check_girder_laws),
    Check("translation-invariance", (KIND_RANDOM_PAIR,),
          check_translation_invariance),
    Check("proper-inclusion", (KIND_JORDAN, KIND_RANDOM_PAIR),
          check_proper_inclusion),
    Check("shift-composition", (KIND_RANDOM_PAIR,), check_shift_composition),
    Check("projection-criterion", _WITH_M, check_projection_criterion),
    Check("rosenblum-disjoint", (KIND_BLOCK_DISJOINT,), check_rosenblum),
    Check("four-way-agreement", _WITH_M, check_four_way),
    Check("closure-laws", _WITH_M, check_closure_laws),
    Check("closure-minimal", (KIND_NILPOTENT,),
          check_closure_minimal_nilpotent),
    Check("ultra-lattice-closed", (KIND_JORDAN, KIND_RANDOM_PAIR),
          check_ultra_lattice_closed),
    Check("conjugation-transport", (KIND_JORDAN, KIND_RANDOM_PAIR),
          check_conjugation_transport),
    Check("direct-sum-assembly", (KIND_JORDAN,), check_direct_sum_assembly),
    Check("reducing-pair", (KIND_JORDAN, KIND_RANDOM_PAIR),
          check_reducing_pair),
    Check("module-algebras", (KIND_RANDOM_PAIR,), check_module_algebras),
    Check("largest-inner-algebra", (KIND_RANDOM_PAIR, KIND_PROJECTION),
          check_largest_inner_algebra),
    Check("polynomial-kernels", (KIND_JORDAN, KIND_RANDOM_PAIR,
                                 KIND_DIAGONAL), check_polynomial_kernels),
    Check("krylov-independence", (KIND_NILPOTENT, KIND_SHIFT),
          check_krylov_independence),
    Check("ascent-descent", (KIND_JORDAN, KIND_NILPOTENT, KIND_SHIFT),
          check_ascent_descent_ultra),
    Check("diagonal-level-sets", (KIND_DIAGONAL,), check_diagonal_normal),
    Check("truncated-shift", (KIND_SHIFT,), check_truncated_shift),
    Check("nilpotent-lattice", (KIND_NILPOTENT, KIND_SHIFT),
          check_nilpotent_lattice),
    Check("algebraic-lattice-count", (KIND_JORDAN, KIND_DIAGONAL),
          check_spectrum_roundtrip),
    Check("fixture-determinism", ALL_KINDS, check_determinism),
    Check("projection-fixture", (KIND_PROJECTION,), check_projection_fixture),
    Check("graph-fixture", (KIND_GRAPH,), check_graph_fixture),
    Check("block-disjoint-fixture", (KIND_BLOCK_DISJOINT,),
          check_block_disjoint_fixture),
    Check("locally-global", (KIND_RANDOM_PAIR,), check_locally_global),
)


def checks_for(kind):
    return [c for c in CHECKS if kind in c.kinds]


def run_instance(inst: Instance, seed):
    """Run all registered checks for the instance's kind; raises on failure."""
    for check in checks_for(inst.kind):
        rng = rng_for(seed, "check", check.name, inst.spec.param("index", 0))
        try:
            check.run(inst, rng)
        except PropertyViolation:
            raise
        except UltrainvError as exc:
            raise PropertyViolation(check.name, f"solver error: {exc}", inst)


def fuzz_run(seed, cases, dim_max, kinds=ALL_KINDS):
    """Run the registry over seeded instances; returns (summary, violation).

    The per-kind summaries are assembled in a fixed kind/case order, so the
    output is deterministic however the cases are scheduled.
    """
    summary = []
    for kind in kinds:
        entry = {"kind": kind, "cases": 0, "checks": 0}
        for index in range(cases):
            spec = InstanceSpec.make(seed, kind, index=index, dim_max=dim_max)
            inst = generate(spec)
            try:
                run_instance(inst, seed)
            except PropertyViolation as exc:
                shrunk = _shrink(exc, seed, cases, dim_max)
                return summary, shrunk
            entry["cases"] += 1
            entry["checks"] += len(checks_for(kind))
        summary.append(entry)
    return summary, None


def _shrink(violation: PropertyViolation, seed, cases, dim_max):
    """Look for a failing instance of the same kind at smaller dimensions."""
    kind = violation.instance.kind
    failing_check = next(c for c in CHECKS if c.name == violation.check)
    for smaller in range(2, dim_max):
        for index in range(min(cases, 25)):
            spec = InstanceSpec.make(seed, kind, index=index,
                                     dim_max=smaller)
            inst = generate(spec)
            rng = rng_for(seed, "check", failing_check.name, index)
            try:
                failing_check.run(inst, rng)
            except PropertyViolation as exc:
                return exc
            except UltrainvError as exc:
                return PropertyViolation(failing_check.name,
                                         f"solver error: {exc}", inst)
    return violation
