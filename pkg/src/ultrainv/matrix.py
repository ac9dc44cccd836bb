"""Dense matrices over one scalar backend, plus rank-one tensors and p(A).

Matrices are immutable.  Entries are `GaussianRational` on the exact backend
and builtin `complex` on the float backend; the two never mix inside one
matrix.  All operations are pure functions of their inputs.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotSquare, SingularU
from .scalar import EXACT, FLOAT, coerce, one_of, zero_of


class Matrix:
    """A dense rows x cols matrix with a fixed scalar backend."""

    __slots__ = ("rows", "cols", "data", "backend")

    def __init__(self, data, backend=EXACT, _raw=False):
        if _raw:
            rows = data
        else:
            rows = tuple(tuple(coerce(x, backend) for x in row) for row in data)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows, cols, backend=EXACT):
        z = zero_of(backend)
        return cls(tuple((z,) * cols for _ in range(rows)), backend, _raw=True)

    @classmethod
    def identity(cls, n, backend=EXACT):
        z = zero_of(backend)
        o = one_of(backend)
        return cls(tuple(tuple(o if i == j else z for j in range(n))
                         for i in range(n)), backend, _raw=True)

    @classmethod
    def from_columns(cls, columns, backend=EXACT):
        return cls(tuple(zip(*columns)), backend)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return tuple(zip(*self.data))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.backend == other.backend and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.backend, self.data))

    def _check_same(self, other):
        if self.backend != other.backend:
            raise DimensionMismatch("mixed scalar backends")

    def __add__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        return Matrix(tuple(tuple(x + y for x, y in zip(r, s))
                            for r, s in zip(self.data, other.data)),
                      self.backend, _raw=True)

    def __sub__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} vs {other.shape}")
        return Matrix(tuple(tuple(x - y for x, y in zip(r, s))
                            for r, s in zip(self.data, other.data)),
                      self.backend, _raw=True)

    def __neg__(self):
        return Matrix(tuple(tuple(-x for x in r) for r in self.data),
                      self.backend, _raw=True)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_same(other)
            if self.cols != other.rows:
                raise DimensionMismatch(f"mul {self.shape} by {other.shape}")
            z = zero_of(self.backend)
            bcols = tuple(zip(*other.data))
            out = []
            for r in self.data:
                line = []
                for c in bcols:
                    acc = None
                    for x, y in zip(r, c):
                        if x and y:
                            acc = x * y if acc is None else acc + x * y
                    line.append(z if acc is None else acc)
                out.append(tuple(line))
            return Matrix(tuple(out), self.backend, _raw=True)
        s = coerce(other, self.backend)
        return Matrix(tuple(tuple(x * s for x in r) for r in self.data),
                      self.backend, _raw=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def matvec(self, vector):
        """Apply to a length-cols sequence; returns a length-rows tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length != cols")
        z = zero_of(self.backend)
        out = []
        for r in self.data:
            acc = None
            for x, y in zip(r, vector):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            out.append(z if acc is None else acc)
        return tuple(out)

    def power(self, k):
        if not self.is_square():
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = Matrix.identity(self.rows, self.backend)
        for _ in range(k):
            result = result * self
        return result

    def transpose(self):
        return Matrix(tuple(zip(*self.data)), self.backend, _raw=True)

    def conj_transpose(self):
        # GaussianRational and complex both expose .conjugate().
        return Matrix(tuple(tuple(x.conjugate() for x in c)
                            for c in zip(*self.data)), self.backend, _raw=True)

    def is_zero(self):
        return not any(any(r) for r in self.data)

    def scalar_multiple_of_identity(self):
        """Return lambda if self == lambda * I exactly, else None."""
        if not self.is_square():
            return None
        lam = self.data[0][0]
        for i, r in enumerate(self.data):
            for j, x in enumerate(r):
                if i == j:
                    if x != lam:
                        return None
                elif x:
                    return None
        return lam

    def inverse(self):
        """Exact Gauss-Jordan inverse; raises SingularU when not invertible."""
        if not self.is_square():
            raise NotSquare("inverse of a non-square matrix")
        n = self.rows
        if self.backend == FLOAT:
            import numpy as np
            arr = np.array(self.data, dtype=complex)
            try:
                inv = np.linalg.inv(arr)
            except np.linalg.LinAlgError as exc:
                raise SingularU(str(exc)) from exc
            return Matrix(tuple(tuple(complex(x) for x in row) for row in inv),
                          FLOAT, _raw=True)
        work = [list(r) for r in self.data]
        aug = [list(r) for r in Matrix.identity(n, self.backend).data]
        for col in range(n):
            pivot = next((i for i in range(col, n) if work[i][col]), None)
            if pivot is None:
                raise SingularU("matrix is singular")
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].inverse()
            work[col] = [x * inv for x in work[col]]
            aug[col] = [x * inv for x in aug[col]]
            for i in range(n):
                if i != col and work[i][col]:
                    f = work[i][col]
                    work[i] = [x - f * y if y else x for x, y in zip(work[i], work[col])]
                    aug[i] = [x - f * y if y else x for x, y in zip(aug[i], aug[col])]
        return Matrix(tuple(tuple(r) for r in aug), self.backend, _raw=True)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.data)
        return f"Matrix[{self.rows}x{self.cols} {self.backend}]({body})"


class LinearFunctional:
    """A row vector of coefficients; evaluates as x -> sum(coeff[i] * x[i])."""

    __slots__ = ("ambient_dim", "coefficients", "backend")

    def __init__(self, coefficients, backend=EXACT):
        coeffs = tuple(coerce(x, backend) for x in coefficients)
        object.__setattr__(self, "ambient_dim", len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("LinearFunctional is immutable")

    def __call__(self, vector):
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient_dim")
        z = zero_of(self.backend)
        acc = None
        for c, x in zip(self.coefficients, vector):
            if c and x:
                acc = c * x if acc is None else acc + c * x
        return z if acc is None else acc

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)


def outer_product(y, functional: LinearFunctional, backend=EXACT) -> Matrix:
    """Rank <= 1 matrix acting as x -> functional(x) * y."""
    if isinstance(functional, (list, tuple)):
        functional = LinearFunctional(functional, backend)
    col = tuple(coerce(v, functional.backend) for v in y)
    return Matrix(tuple(tuple(yi * c for c in functional.coefficients) for yi in col),
                  functional.backend, _raw=True)


def eval_poly(coefficients, a: Matrix) -> Matrix:
    """Horner evaluation of p(A); coefficients ascending, p = sum c_k z^k."""
    if not a.is_square():
        raise NotSquare("polynomial of a non-square matrix")
    n = a.rows
    coeffs = [coerce(c, a.backend) for c in coefficients]
    if not coeffs:
        return Matrix.zeros(n, n, a.backend)
    acc = Matrix.identity(n, a.backend) * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * a + Matrix.identity(n, a.backend) * c
    return acc
