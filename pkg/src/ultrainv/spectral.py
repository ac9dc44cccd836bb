"""Minimal polynomials, ascent/descent chains, primary decomposition,
Riesz projections, local spectra, and the complete ultrainvariant-lattice
enumerators for nilpotent and algebraic matrices.

Exact spectra come from the caller or from a convenience divisor search
over Gaussian integers; the float eigensolver path exists for demo reports
only and never enters the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .analysis import is_ultrainvariant, ultrainvariant_closure
from .errors import (BadIndex, DimensionMismatch, InternalInconsistency,
                     NotNilpotent, NotSquare, PreconditionViolated,
                     SingularU, SpectrumIncomplete)
from .matrix import LinearFunctional, Matrix, outer_product
from .opspace import vec, member
from .scalar import (EXACT, FLOAT, GaussianRational, coerce, one_of,
                     zero_of)
from .solver import local_commutant
from . import subspace as sub

USER_PROVIDED = "user-provided"
RATIONAL_SEARCH = "rational-root-search"
FLOAT_EIGENSOLVER = "float-eigensolver"

# Convenience divisor search gives up beyond this Gaussian norm.
_DIVISOR_NORM_CAP = 200_000


# ---------------------------------------------------------------------------
# polynomial helpers (coefficients ascending, index k multiplies z^k)

def poly_mul(p, q):
    z = p[0] - p[0]
    out = [z] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def poly_eval(p, x):
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def poly_divide_linear(p, lam):
    """Divide p by (z - lam); returns (quotient, remainder)."""
    quot = [None] * (len(p) - 1)
    carry = p[-1]
    for k in range(len(p) - 2, -1, -1):
        quot[k] = carry
        carry = p[k] + lam * carry
    return quot, carry


def poly_from_roots(roots, backend=EXACT):
    """Monic product of (z - lam)^mult over (lam, mult) pairs."""
    one = one_of(backend)
    p = [one]
    for lam, mult in roots:
        factor = [-coerce(lam, backend), one]
        for _ in range(mult):
            p = poly_mul(p, factor)
    return p


# ---------------------------------------------------------------------------

def minimal_polynomial(a: Matrix):
    """Ascending coefficients of the monic polynomial of least degree
    annihilating A, found at the first linear dependence among vec(A^k)."""
    if not a.is_square():
        raise NotSquare("minimal polynomial needs a square matrix")
    if a.backend == FLOAT:
        return _minimal_polynomial_float(a)
    n = a.rows
    one = one_of(a.backend)
    stored = []  # (pivot index, reduced vec list, combo over powers)
    power = Matrix.identity(n, a.backend)
    for k in range(n * n + 1):
        v = list(vec(power))
        combo = [zero_of(a.backend)] * (k + 1)
        combo[k] = one
        for p, u, cu in stored:
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, u)]
                for idx, cy in enumerate(cu):
                    if cy:
                        combo[idx] = combo[idx] - f * cy
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return combo
        inv = v[pivot].inverse()
        v = [x * inv for x in v]
        combo = [x * inv for x in combo]
        for entry in stored:
            f = entry[1][pivot]
            if f:
                entry[1][:] = [x - f * y if y else x for x, y in zip(entry[1], v)]
                cu = entry[2]
                for idx in range(len(combo)):
                    cy = combo[idx]
                    if cy:
                        if idx < len(cu):
                            cu[idx] = cu[idx] - f * cy
                        else:
                            cu.extend([zero_of(a.backend)] *
                                      (idx + 1 - len(cu)))
                            cu[idx] = -(f * cy)
        stored.append((pivot, v, combo))
        power = power * a
    raise InternalInconsistency("no dependence among matrix powers")


def _float_roots(a: Matrix):
    """Cluster eigenvalues (absolute gap 1e-6) with numerical ascents."""
    import numpy as np
    arr = np.array(a.data, dtype=complex)
    n = a.rows
    centers = []
    for lam in sorted(np.linalg.eigvals(arr), key=lambda z: (z.real, z.imag)):
        if not any(abs(lam - c) <= 1e-6 for c in centers):
            centers.append(complex(lam))
    roots = []
    for center in centers:
        # numerical ascent: nullity of (A - lam)^k until it stabilizes
        b = arr - center * np.eye(n)
        prev = 0
        order = 1
        powk = np.eye(n, dtype=complex)
        for k in range(1, n + 1):
            powk = powk @ b
            s = np.linalg.svd(powk, compute_uv=False)
            tol = 1e-9 * (s[0] if s[0] > 0 else 1.0)
            nullity = int((s <= tol).sum())
            if nullity == prev:
                break
            prev = nullity
            order = k
        roots.append((center, order))
    return roots


def _minimal_polynomial_float(a: Matrix):
    return poly_from_roots(_float_roots(a), FLOAT)


def ascent_descent(a: Matrix, lam):
    """Kernel and image chains of (A - lam I) up to stabilization.

    Returns (ascent, descent, kernel chain, image chain); the chains start
    at k = 0 and in finite dimension ascent equals descent.
    """
    if not a.is_square():
        raise NotSquare("ascent/descent needs a square matrix")
    n = a.rows
    b = a - Matrix.identity(n, a.backend) * coerce(lam, a.backend)
    ker_chain = [sub.zero_space(n, a.backend)]
    im_chain = [sub.full_space(n, a.backend)]
    power = Matrix.identity(n, a.backend)
    alpha = None
    delta = None
    k = 0
    while alpha is None or delta is None:
        k += 1
        power = power * b
        if alpha is None:
            ker_k = sub.kernel(power)
            if ker_k.dim == ker_chain[-1].dim:
                alpha = k - 1
            else:
                ker_chain.append(ker_k)
        if delta is None:
            im_k = sub.image(power)
            if im_k.dim == im_chain[-1].dim:
                delta = k - 1
            else:
                im_chain.append(im_k)
        if k > n + 1:
            raise InternalInconsistency("chains failed to stabilize")
    if alpha != delta:
        raise InternalInconsistency("ascent differs from descent in finite "
                                    "dimension")
    return alpha, delta, ker_chain, im_chain


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumSpec:
    """Declared roots of the minimal polynomial with multiplicities."""

    roots: tuple  # ((eigenvalue, multiplicity), ...)
    source: str = USER_PROVIDED


@dataclass(frozen=True)
class PrimaryBlock:
    eigenvalue: object
    subspace: sub.Subspace
    order: int


@dataclass(frozen=True)
class PrimaryDecomposition:
    """Generalized eigenspaces splitting the whole space."""

    blocks: tuple
    ambient_dim: int
    backend: str
    transition: Matrix          # columns = concatenated block bases
    transition_inverse: Matrix


def spectrum_from_roots(roots, backend=EXACT, source=USER_PROVIDED):
    canon = tuple((coerce(lam, backend), int(mult)) for lam, mult in roots)
    if any(mult < 1 for _, mult in canon):
        raise SpectrumIncomplete("multiplicities must be positive")
    return SpectrumSpec(canon, source)


def _gaussian_integer_divisors(value: GaussianRational):
    """Divisors of a nonzero Gaussian integer, up to a norm cap."""
    a, b = value.a, value.b
    norm = a * a + b * b
    out = []
    bound = min(norm, _DIVISOR_NORM_CAP)
    r = isqrt(bound)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            nd = x * x + y * y
            if nd == 0 or nd > bound or norm % nd != 0:
                continue
            # (a+bi)/(x+yi) is integral iff nd divides both parts of
            # (a+bi)(x-yi)
            if (a * x + b * y) % nd == 0 and (b * x - a * y) % nd == 0:
                out.append(GaussianRational(x, y))
    out.sort(key=lambda q: (q.a * q.a + q.b * q.b, q.a, q.b))
    return out


def find_rational_spectrum(a: Matrix) -> SpectrumSpec:
    """Factor the minimal polynomial by a Gaussian-integer divisor search.

    Only Gaussian-integer roots of the cleared-denominator polynomial are
    attempted; raises SpectrumIncomplete with the unfactored remainder when
    the search does not finish the job.
    """
    q = minimal_polynomial(a)
    if a.backend == FLOAT:
        raise SpectrumIncomplete("rational search runs on the exact backend")
    roots = []
    zero = zero_of(EXACT)
    # strip the power of z first
    mult0 = 0
    while not q[mult0]:
        mult0 += 1
    if mult0:
        roots.append((zero, mult0))
        q = q[mult0:]
    while len(q) > 1:
        denom_lcm = 1
        for c in q:
            denom_lcm = denom_lcm * c.d // gcd(denom_lcm, c.d)
        constant = q[0] * denom_lcm
        found = None
        for cand in _gaussian_integer_divisors(constant):
            if not poly_eval(q, cand):
                found = cand
                break
        if found is None:
            raise SpectrumIncomplete(
                "could not factor the minimal polynomial by Gaussian-integer "
                f"root search; remainder degree {len(q) - 1}",
                remainder=q)
        mult = 0
        while len(q) > 1:
            quot, rem = poly_divide_linear(q, found)
            if rem:
                break
            q = quot
            mult += 1
        roots.append((found, mult))
    roots.sort(key=lambda e: (e[0].re, e[0].im))
    return SpectrumSpec(tuple(roots), RATIONAL_SEARCH)


def float_spectrum(a: Matrix) -> SpectrumSpec:
    """Eigensolve and cluster with absolute gap 1e-6; demo path only."""
    return SpectrumSpec(tuple(_float_roots(a)), FLOAT_EIGENSOLVER)


def _poly_matches(p, q, backend):
    if len(p) != len(q):
        return False
    if backend == EXACT:
        return all(x == y for x, y in zip(p, q))
    return all(abs(x - y) <= 1e-6 for x, y in zip(p, q))


def primary_decomposition(a: Matrix, spectrum: SpectrumSpec) -> PrimaryDecomposition:
    """Split F^n into generalized eigenspaces for the declared spectrum."""
    if not a.is_square():
        raise NotSquare("primary decomposition needs a square matrix")
    n = a.rows
    q = minimal_polynomial(a)
    claimed = poly_from_roots(spectrum.roots, a.backend)
    if not _poly_matches(claimed, q, a.backend):
        raise SpectrumIncomplete(
            "declared roots do not multiply out to the minimal polynomial",
            remainder=q)
    blocks = []
    columns = []
    ident = Matrix.identity(n, a.backend)
    for lam, mult in spectrum.roots:
        shifted = a - ident * coerce(lam, a.backend)
        space = sub.kernel(shifted.power(mult))
        blocks.append(PrimaryBlock(lam, space, mult))
        columns.extend(space.basis)
    if sum(b.subspace.dim for b in blocks) != n:
        raise InternalInconsistency("generalized eigenspaces do not fill the "
                                    "space")
    transition = Matrix.from_columns(columns, a.backend)
    try:
        inverse = transition.inverse()
    except SingularU as exc:
        raise InternalInconsistency(
            "generalized eigenspaces are not independent") from exc
    return PrimaryDecomposition(tuple(blocks), n, a.backend, transition,
                                inverse)


def riesz_projection(a: Matrix, decomp: PrimaryDecomposition, sigma) -> Matrix:
    """Idempotent onto the selected generalized eigenspaces along the rest."""
    indices = sorted(set(sigma))
    if any(i < 0 or i >= len(decomp.blocks) for i in indices):
        raise BadIndex(f"block indices {indices} out of range")
    n = decomp.ambient_dim
    if not indices:
        return Matrix.zeros(n, n, decomp.backend)
    if len(indices) == len(decomp.blocks):
        return Matrix.identity(n, decomp.backend)
    z = zero_of(decomp.backend)
    o = one_of(decomp.backend)
    flags = []
    for i, block in enumerate(decomp.blocks):
        flags.extend([o if i in indices else z] * block.subspace.dim)
    diag = Matrix(tuple(tuple(flags[i] if i == j else z for j in range(n))
                        for i in range(n)), decomp.backend, _raw=True)
    p = decomp.transition * diag * decomp.transition_inverse
    if p * p != p or a * p != p * a:
        raise InternalInconsistency("Riesz projection failed idempotence or "
                                    "commutation")
    return p


def _match_block(decomp: PrimaryDecomposition, lam):
    lam = coerce(lam, decomp.backend)
    for i, block in enumerate(decomp.blocks):
        if decomp.backend == EXACT:
            if block.eigenvalue == lam:
                return i
        elif abs(block.eigenvalue - lam) <= 1e-6:
            return i
    raise BadIndex(f"{lam} is not an eigenvalue of the decomposition")


def spectral_subspace(a: Matrix, decomp: PrimaryDecomposition, eigenvalues) -> sub.Subspace:
    """Sum of the generalized eigenspaces for the selected eigenvalues."""
    indices = sorted({_match_block(decomp, lam) for lam in eigenvalues})
    vectors = []
    for i in indices:
        vectors.extend(decomp.blocks[i].subspace.basis)
    return sub.canonicalize(vectors, decomp.ambient_dim, decomp.backend)


def local_spectrum(a: Matrix, decomp: PrimaryDecomposition, x):
    """Eigenvalues whose generalized-eigenspace component of x is nonzero."""
    if len(x) != decomp.ambient_dim:
        raise DimensionMismatch("vector length != ambient dimension")
    coeffs = decomp.transition_inverse.matvec(tuple(
        coerce(v, decomp.backend) for v in x))
    out = []
    offset = 0
    for block in decomp.blocks:
        part = coeffs[offset:offset + block.subspace.dim]
        offset += block.subspace.dim
        if decomp.backend == EXACT:
            nonzero = any(part)
        else:
            scale = max((abs(v) for v in coeffs), default=0.0)
            nonzero = any(abs(v) > 1e-9 * max(1.0, scale) for v in part)
        if nonzero:
            out.append(block.eigenvalue)
    return tuple(out)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMember:
    subspace: sub.Subspace
    exponents: tuple
    ultrainvariant: bool


@dataclass(frozen=True)
class UltraLattice:
    """Complete list of ultrainvariant subspaces with their generators."""

    members: tuple
    kind: str  # "nilpotent-chain" or "algebraic-product"

    def __len__(self):
        return len(self.members)

    def subspaces(self):
        return tuple(m.subspace for m in self.members)

    def by_exponents(self):
        return {m.exponents: m.subspace for m in self.members}


def _nilpotency_order(a: Matrix):
    q = minimal_polynomial(a)
    degree = len(q) - 1
    if degree < 1 or any(q[:-1]):
        return None
    return degree


def nilpotent_ultra_lattice(a: Matrix) -> UltraLattice:
    """The chain ker(A^j), j = 0..n, for a nilpotent A of order n.

    Every member is re-checked with the ultrainvariance decision procedure,
    and every image im(A^(n-j)) that differs from ker(A^j) is verified to
    fail ultrainvariance with closure exactly ker(A^j).
    """
    order = _nilpotency_order(a)
    if order is None:
        raise NotNilpotent("minimal polynomial is not a power of z")
    n = order
    members = []
    kernels = []
    for j in range(n + 1):
        ker_j = sub.kernel(a.power(j))
        kernels.append(ker_j)
        if not is_ultrainvariant(a, ker_j):
            raise InternalInconsistency(f"ker(A^{j}) failed ultrainvariance")
        members.append(LatticeMember(ker_j, (j,), True))
    for j in range(n + 1):
        im_j = sub.image(a.power(n - j))
        if im_j == kernels[j]:
            continue
        if is_ultrainvariant(a, im_j):
            raise InternalInconsistency(
                f"im(A^{n - j}) differs from ker(A^{j}) yet tests "
                "ultrainvariant")
        if ultrainvariant_closure(a, im_j) != kernels[j]:
            raise InternalInconsistency(
                f"closure of im(A^{n - j}) is not ker(A^{j})")
    return UltraLattice(tuple(members), "nilpotent-chain")


def algebraic_ultra_lattice(a: Matrix, spectrum: SpectrumSpec) -> UltraLattice:
    """All sums of kernels ker((A - lam_j)^m_j), 0 <= m_j <= n_j.

    Emits exactly prod(n_j + 1) members, re-checks each for ultrainvariance
    and verifies closure under meet and join through the exponent order.
    """
    decomp = primary_decomposition(a, spectrum)
    ident = Matrix.identity(a.rows, a.backend)
    kernel_towers = []
    for block in decomp.blocks:
        shifted = a - ident * block.eigenvalue
        tower = [sub.kernel(shifted.power(m)) for m in range(block.order + 1)]
        kernel_towers.append(tower)
    exponent_tuples = [()]
    for block in decomp.blocks:
        exponent_tuples = [t + (m,) for t in exponent_tuples
                           for m in range(block.order + 1)]
    members = []
    by_exp = {}
    for exps in exponent_tuples:
        vectors = []
        for tower, m in zip(kernel_towers, exps):
            vectors.extend(tower[m].basis)
        space = sub.canonicalize(vectors, a.rows, a.backend)
        if not is_ultrainvariant(a, space):
            raise InternalInconsistency(f"member {exps} failed "
                                        "ultrainvariance")
        members.append(LatticeMember(space, exps, True))
        by_exp[exps] = space
    for s in by_exp:
        for t in by_exp:
            if s >= t:
                continue
            lo = tuple(map(min, s, t))
            hi = tuple(map(max, s, t))
            met, joined = sub.meet_join(by_exp[s], by_exp[t])
            if met != by_exp[lo] or joined != by_exp[hi]:
                raise InternalInconsistency(
                    f"lattice not closed under meet/join at {s}, {t}")
    return UltraLattice(tuple(members), "algebraic-product")


def nilpotent_witness(a: Matrix, e, functional: LinearFunctional, j) -> Matrix:
    """The operator sum_t A^t (e x functional) A^(j-1-t) for e in ker(A^j).

    Always lands in the local commutant of A at im(A^(n-j)); membership is
    re-checked before returning.
    """
    order = _nilpotency_order(a)
    if order is None:
        raise NotNilpotent("witness needs a nilpotent matrix")
    if not 1 <= j <= order:
        raise PreconditionViolated(f"j must lie in 1..{order}")
    e = tuple(coerce(v, a.backend) for v in e)
    if any(a.power(j).matvec(e)):
        raise PreconditionViolated("vector is not in ker(A^j)")
    rank_one = outer_product(e, functional)
    total = None
    for t in range(j):
        term = a.power(t) * rank_one * a.power(j - 1 - t)
        total = term if total is None else total + term
    target = local_commutant(a, sub.image(a.power(order - j)))
    if not member(total, target):
        raise InternalInconsistency("witness escaped the local commutant")
    return total
