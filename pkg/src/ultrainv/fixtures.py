"""Deterministic construction of structured instances and the two worked
examples used throughout the test and fuzz suites.

Every generator is a pure function of (seed, kind, parameters).  Seeds are
derived with splitmix64 over a stable digest of the labels, then drive the
standard library Mersenne Twister; the combination is recorded in reports
as "splitmix64+mt19937".
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SingularU, SpectraOverlap, ZeroWeight
from .matrix import Matrix
from .scalar import EXACT, GaussianRational, as_exact
from . import subspace as sub

RNG_NAME = "splitmix64+mt19937"

KIND_JORDAN = "jordan"
KIND_NILPOTENT = "nilpotent-partition"
KIND_BLOCK_DISJOINT = "block-disjoint-spectra"
KIND_PROJECTION = "projection-3block"
KIND_GRAPH = "graph-subspace"
KIND_SHIFT = "truncated-shift"
KIND_DIAGONAL = "diagonal-normal"
KIND_RANDOM_PAIR = "random-pair"

ALL_KINDS = (KIND_JORDAN, KIND_NILPOTENT, KIND_BLOCK_DISJOINT,
             KIND_PROJECTION, KIND_GRAPH, KIND_SHIFT, KIND_DIAGONAL,
             KIND_RANDOM_PAIR)


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def derive_seed(seed, *labels):
    """Stable 64-bit sub-seed for (seed, labels); independent of PYTHONHASHSEED."""
    state = seed & 0xFFFFFFFFFFFFFFFF
    for label in labels:
        if isinstance(label, int):
            token = label.to_bytes(16, "little", signed=True)
        else:
            token = hashlib.blake2b(str(label).encode(), digest_size=8).digest()
        state = _splitmix64(state ^ int.from_bytes(token[:8], "little"))
    return state


def rng_for(seed, *labels) -> random.Random:
    return random.Random(derive_seed(seed, *labels))


# ---------------------------------------------------------------------------
# random raw material (exact backend, small grids to bound coefficient growth)

def rand_fraction(rng):
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def rand_scalar(rng, imag_prob=0.25):
    re = rand_fraction(rng)
    im = rand_fraction(rng) if rng.random() < imag_prob else Fraction(0)
    return GaussianRational.from_fractions(re, im)


def rand_matrix(rng, rows, cols) -> Matrix:
    return Matrix(tuple(tuple(rand_scalar(rng) for _ in range(cols))
                        for _ in range(rows)), EXACT, _raw=True)


def rand_subspace(rng, ambient_dim, dim=None) -> sub.Subspace:
    if dim is None:
        dim = rng.randint(0, ambient_dim)
    vectors = [tuple(rand_scalar(rng) for _ in range(ambient_dim))
               for _ in range(dim)]
    return sub.canonicalize(vectors, ambient_dim)


def rand_invertible(rng, n) -> Matrix:
    """Exact invertible matrix with entries in -2..2, resampled until regular."""
    while True:
        m = Matrix(tuple(tuple(as_exact(rng.randint(-2, 2)) for _ in range(n))
                         for _ in range(n)), EXACT, _raw=True)
        try:
            m.inverse()
        except SingularU:
            continue
        return m


def rand_partition(rng, total):
    parts = []
    left = total
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    parts.sort(reverse=True)
    return parts


# ---------------------------------------------------------------------------
# structured builders

def build_jordan(partition, lam=0) -> Matrix:
    """Block-diagonal Jordan matrix: lam on the diagonal, 1 above it."""
    lam = as_exact(lam)
    n = sum(partition)
    one = as_exact(1)
    zero = as_exact(0)
    rows = [[zero] * n for _ in range(n)]
    offset = 0
    for size in partition:
        for i in range(size):
            rows[offset + i][offset + i] = lam
            if i + 1 < size:
                rows[offset + i][offset + i + 1] = one
        offset += size
    return Matrix(tuple(tuple(r) for r in rows), EXACT, _raw=True)


def random_similarity(a: Matrix, seed):
    """Seeded invertible U; returns (U, U A U^-1)."""
    rng = rng_for(seed, "similarity")
    u = rand_invertible(rng, a.rows)
    return u, u * a * u.inverse()


def example_projection_3block(d1, d2, d3):
    """Projection onto the first two blocks along the third, with M spanning
    blocks one and three.  The local commutant at M is not an algebra."""
    n = d1 + d2 + d3
    diag = [1] * (d1 + d2) + [0] * d3
    a = Matrix(tuple(tuple(diag[i] if i == j else 0 for j in range(n))
                     for i in range(n)))
    coords = list(range(d1)) + list(range(d1 + d2, n))
    basis = [tuple(1 if i == c else 0 for i in range(n)) for c in coords]
    return a, sub.canonicalize(basis, n)


def example_graph_subspace(d1, d2, d3):
    """Projection Q onto the first block and the graph-style subspace L of
    vectors (x1, U x1, x3) for the leading-identity U; L is not invariant
    for Q yet C(Q;L) collapses to the commutant of Q."""
    if not d1 >= d2 >= 1:
        raise ValueError("need d1 >= d2 >= 1")
    n = d1 + d2 + d3
    diag = [1] * d1 + [0] * (d2 + d3)
    q = Matrix(tuple(tuple(diag[i] if i == j else 0 for j in range(n))
                     for i in range(n)))
    basis = []
    for i in range(d1):
        vec_ = [0] * n
        vec_[i] = 1
        if i < d2:
            vec_[d1 + i] = 1  # leading-identity image
        basis.append(tuple(vec_))
    for k in range(d3):
        vec_ = [0] * n
        vec_[d1 + d2 + k] = 1
        basis.append(tuple(vec_))
    return q, sub.canonicalize(basis, n)


def build_truncated_shift(weights, top_index=None) -> Matrix:
    """Weighted backward shift on e_0..e_N: W e_0 = 0, W e_k = w_k e_{k-1}."""
    ws = [as_exact(w) for w in weights]
    if top_index is None:
        top_index = len(ws)
    if len(ws) != top_index:
        raise ZeroWeight(f"need exactly {top_index} weights")
    if any(not w for w in ws):
        raise ZeroWeight("all shift weights must be nonzero")
    n = top_index + 1
    zero = as_exact(0)
    rows = [[zero] * n for _ in range(n)]
    for k, w in enumerate(ws, start=1):
        rows[k - 1][k] = w
    return Matrix(tuple(tuple(r) for r in rows), EXACT, _raw=True)


def build_block_disjoint(spec11, spec22, seed):
    """Upper block-triangular matrix with declared disjoint block spectra.

    Each spec is a list of (eigenvalue, jordan size) pairs.  Returns (A, M)
    with M the leading-block coordinate span; C(A;M) is then an algebra and
    M is ultrainvariant.
    """
    eigs1 = {as_exact(lam) for lam, _ in spec11}
    eigs2 = {as_exact(lam) for lam, _ in spec22}
    if eigs1 & eigs2:
        raise SpectraOverlap(f"shared eigenvalues {sorted(str(e) for e in eigs1 & eigs2)}")
    a11 = _jordan_from_spec(spec11)
    a22 = _jordan_from_spec(spec22)
    rng = rng_for(seed, "block-disjoint-offdiag")
    a12 = rand_matrix(rng, a11.rows, a22.rows)
    d1, d2 = a11.rows, a22.rows
    n = d1 + d2
    zero = as_exact(0)
    rows = []
    for i in range(d1):
        rows.append(tuple(a11.data[i]) + tuple(a12.data[i]))
    for i in range(d2):
        rows.append(tuple([zero] * d1) + tuple(a22.data[i]))
    a = Matrix(tuple(rows), EXACT, _raw=True)
    basis = [tuple(1 if i == c else 0 for i in range(n)) for c in range(d1)]
    return a, sub.canonicalize(basis, n)


def _jordan_from_spec(spec):
    blocks = [build_jordan([size], lam) for lam, size in spec]
    return direct_sum(blocks)


def direct_sum(blocks) -> Matrix:
    n = sum(b.rows for b in blocks)
    zero = as_exact(0)
    rows = [[zero] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[offset + i][offset + j] = b.data[i][j]
        offset += b.rows
    return Matrix(tuple(tuple(r) for r in rows), EXACT, _raw=True)


def build_locally_global_pair(d_m, d_n, d_y, lam, seed):
    """Instance where intertwining locally at M already forces the global
    relation: A has a scalar tail block, B is the matching scalar, and the
    off-diagonal block's image lies inside im(lam I - A11)."""
    rng = rng_for(seed, "locally-global")
    lam = as_exact(lam)
    a11 = rand_matrix(rng, d_m, d_m)
    shifted = Matrix.identity(d_m) * lam - a11
    a12_cols = []
    for _ in range(d_n):
        combo = [as_exact(0)] * d_m
        for col in shifted.columns():
            c = rand_scalar(rng)
            combo = [x + c * y for x, y in zip(combo, col)]
        a12_cols.append(tuple(combo))
    zero = as_exact(0)
    n = d_m + d_n
    rows = []
    for i in range(d_m):
        rows.append(tuple(a11.data[i]) + tuple(col[i] for col in a12_cols))
    for i in range(d_n):
        rows.append(tuple([zero] * d_m)
                    + tuple(lam if i == j else zero for j in range(d_n)))
    a = Matrix(tuple(rows), EXACT, _raw=True)
    b = Matrix.identity(d_y) * lam
    basis = [tuple(1 if i == c else 0 for i in range(n)) for c in range(d_m)]
    return a, b, sub.canonicalize(basis, n)


# ---------------------------------------------------------------------------
# instance specifications for the property/fuzz suites

@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    kind: str
    params: tuple = ()   # sorted (name, value) pairs

    @classmethod
    def make(cls, seed, kind, **params):
        return cls(seed, kind, tuple(sorted(params.items())))

    def param(self, name, default=None):
        for key, value in self.params:
            if key == name:
                return value
        return default


@dataclass
class Instance:
    spec: InstanceSpec
    matrices: dict = field(default_factory=dict)
    subspaces: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def kind(self):
        return self.spec.kind


def generate(spec: InstanceSpec) -> Instance:
    """Materialize an instance; identical specs give identical instances."""
    kind = spec.kind
    dim_max = spec.param("dim_max", 4)
    rng = rng_for(spec.seed, kind, spec.param("index", 0))
    inst = Instance(spec)
    if kind == KIND_JORDAN:
        total = rng.randint(2, dim_max)
        partition = rand_partition(rng, total)
        lam = as_exact(rng.randint(-2, 2))
        a = build_jordan(partition, lam)
        inst.matrices["A"] = a
        inst.subspaces["M"] = rand_subspace(rng, total)
        inst.matrices["U"] = rand_invertible(rng, total)
        inst.meta.update(partition=partition, eigenvalue=lam)
    elif kind == KIND_NILPOTENT:
        total = rng.randint(2, dim_max)
        partition = rand_partition(rng, total)
        a = build_jordan(partition, 0)
        inst.matrices["A"] = a
        inst.subspaces["M"] = rand_subspace(rng, total)
        inst.meta.update(partition=partition)
    elif kind == KIND_BLOCK_DISJOINT:
        d1 = rng.randint(1, max(1, dim_max - 1))
        d2 = rng.randint(1, max(1, dim_max - d1))
        lam1 = rng.randint(-2, 2)
        lam2 = lam1 + rng.randint(1, 3)
        spec11 = [(lam1, d1)]
        spec22 = [(lam2, d2)]
        a, m = build_block_disjoint(spec11, spec22,
                                    derive_seed(spec.seed, "bd",
                                                spec.param("index", 0)))
        inst.matrices["A"] = a
        inst.subspaces["M"] = m
        inst.meta.update(sizes=(d1, d2), spec11=spec11, spec22=spec22)
    elif kind == KIND_PROJECTION:
        dims = [rng.randint(1, max(1, dim_max // 2)) for _ in range(3)]
        a, m = example_projection_3block(*dims)
        inst.matrices["A"] = a
        inst.subspaces["M"] = m
        inst.meta.update(dims=tuple(dims))
    elif kind == KIND_GRAPH:
        d1 = rng.randint(1, max(1, dim_max - 2))
        d2 = rng.randint(1, d1)
        d3 = rng.randint(1, max(1, dim_max - d1 - d2 + 1))
        q, sp = example_graph_subspace(d1, d2, d3)
        inst.matrices["A"] = q
        inst.subspaces["M"] = sp
        inst.meta.update(dims=(d1, d2, d3))
    elif kind == KIND_SHIFT:
        top = rng.randint(1, max(1, dim_max - 1))
        weights = []
        for _ in range(top):
            w = rand_fraction(rng)
            while w == 0:
                w = rand_fraction(rng)
            weights.append(GaussianRational.from_fractions(w))
        inst.matrices["A"] = build_truncated_shift(weights)
        inst.meta.update(weights=weights, top_index=top)
    elif kind == KIND_DIAGONAL:
        n = rng.randint(2, dim_max)
        values = [rng.choice([-1, 0, 1, 2]) for _ in range(n)]
        a = Matrix(tuple(tuple(values[i] if i == j else 0 for j in range(n))
                         for i in range(n)))
        levels = {}
        for idx, v in enumerate(values):
            levels.setdefault(v, []).append(idx)
        inst.matrices["A"] = a
        inst.meta.update(values=values, levels=levels)
    elif kind == KIND_RANDOM_PAIR:
        n = rng.randint(2, dim_max)
        m = rng.randint(2, dim_max)
        inst.matrices["A"] = rand_matrix(rng, n, n)
        inst.matrices["B"] = rand_matrix(rng, m, m)
        inst.subspaces["M"] = rand_subspace(rng, n)
        inst.subspaces["M2"] = rand_subspace(rng, n)
        inst.matrices["U"] = rand_invertible(rng, n)
        inst.matrices["V"] = rand_invertible(rng, m)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return inst


# ---------------------------------------------------------------------------
# worked-example fact tables (each generator carries its own oracle)

def projection_3block_facts(d1, d2, d3):
    """Expected behaviour of the projection example, checked from scratch."""
    from .analysis import algebra_status, is_ultrainvariant, \
        ultrainvariant_closure
    from .opspace import apply_to_subspace
    from .solver import girder, local_commutant

    a, m = example_projection_3block(d1, d2, d3)
    n = d1 + d2 + d3
    c = local_commutant(a, m)
    facts = []
    expected_dim = (d1 * d1 + d1 * d2 + d2 * d1 + d2 * d2 + d3 * d2
                    + d3 * d3)
    facts.append(("commutant pattern dimension", c.dim == expected_dim))
    zero_blocks = _blocks_all_zero(c, (d1, d2, d3),
                                   [(0, 2), (1, 2), (2, 0)])
    facts.append(("zero blocks (1,3),(2,3),(3,1)", zero_blocks))
    facts.append(("girder equals M", girder(a, a, m) == m))
    reach = apply_to_subspace(c, m)
    facts.append(("commutant reach is the full space",
                  reach == sub.full_space(n)))
    verdict = algebra_status(a, m)
    facts.append(("not an algebra", not verdict.is_algebra
                  and not verdict.via_product_closure))
    facts.append(("M not ultrainvariant", not is_ultrainvariant(a, m)))
    facts.append(("closure is the full space",
                  ultrainvariant_closure(a, m) == sub.full_space(n)))
    return a, m, facts


def graph_subspace_facts(d1, d2, d3):
    """Expected behaviour of the graph-subspace example."""
    from .analysis import is_invariant
    from .opspace import is_product_closed
    from .solver import commutant, local_commutant

    q, l_space = example_graph_subspace(d1, d2, d3)
    c = local_commutant(q, l_space)
    facts = [
        ("local commutant equals the commutant", c == commutant(q)),
        ("L is not invariant", not is_invariant(q, l_space)),
        ("local commutant is an algebra", is_product_closed(c)),
    ]
    return q, l_space, facts


def _blocks_all_zero(space, sizes, zero_positions):
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    for mat in space.basis_matrices:
        for bi, bj in zero_positions:
            for i in range(offsets[bi], offsets[bi + 1]):
                for j in range(offsets[bj], offsets[bj + 1]):
                    if mat.data[i][j]:
                        return False
    return True
