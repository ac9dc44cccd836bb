"""Scalar fields: exact Gaussian rationals and double-precision complex.

The exact backend is the backend of record.  A Gaussian rational is kept as
a triple of arbitrary-precision integers (a, b, d) representing (a + b*i)/d
with d > 0 and gcd(a, b, d) = 1, so equal values always have equal triples.
The real and imaginary parts are exposed as `fractions.Fraction` values in
lowest terms with positive denominator.

The float backend uses the builtin `complex`; rank decisions for it live in
the subspace layer, never here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

EXACT = "exact"
FLOAT = "float"


class GaussianRational:
    """An exact complex number with rational real and imaginary parts.

    Arithmetic is exact: associative, commutative and distributive bit for
    bit.  Instances are immutable and hashable.  Integer-valued operands
    (d == 1) take a fast path that skips gcd normalization.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g > 1:
                a //= g
                b //= g
                d //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, a, b, d):
        # Internal: caller guarantees d > 0 and gcd(a, b, d) = 1.
        q = object.__new__(cls)
        object.__setattr__(q, "a", a)
        object.__setattr__(q, "b", b)
        object.__setattr__(q, "d", d)
        return q

    @classmethod
    def from_fractions(cls, re, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls(re.numerator * (d // re.denominator),
                   im.numerator * (d // im.denominator), d)

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, int):
            return self.d == 1 and self.b == 0 and self.a == other
        if isinstance(other, Fraction):
            return self.b == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # real values hash like the numbers they equal (int, Fraction)
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = as_exact(other)
        d1 = self.d
        d2 = other.d
        if d1 == 1 and d2 == 1:
            return GaussianRational._raw(self.a + other.a, self.b + other.b, 1)
        return GaussianRational(self.a * d2 + other.a * d1,
                                self.b * d2 + other.b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = as_exact(other)
        d1 = self.d
        d2 = other.d
        if d1 == 1 and d2 == 1:
            return GaussianRational._raw(self.a - other.a, self.b - other.b, 1)
        return GaussianRational(self.a * d2 - other.a * d1,
                                self.b * d2 - other.b * d1, d1 * d2)

    def __rsub__(self, other):
        return as_exact(other) - self

    def __neg__(self):
        return GaussianRational._raw(-self.a, -self.b, self.d)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = as_exact(other)
        a1, b1, d1 = self.a, self.b, self.d
        a2, b2, d2 = other.a, other.b, other.d
        if d1 == 1 and d2 == 1:
            return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, 1)
        return GaussianRational(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = as_exact(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_exact(other) * self.inverse()

    def conjugate(self):
        return GaussianRational._raw(self.a, -self.b, self.d)

    def to_complex(self) -> complex:
        return complex(self.a / self.d, self.b / self.d)

    def __repr__(self):
        return f"GaussianRational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.re)
        if self.a == 0:
            return f"{self.im}i"
        sign = "+" if self.b > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def as_exact(value) -> GaussianRational:
    """Coerce ints, Fractions, (re, im) pairs or strings to a GaussianRational."""
    if type(value) is GaussianRational:
        return value
    if isinstance(value, int):
        return GaussianRational(value)
    if isinstance(value, Fraction):
        return GaussianRational(value.numerator, 0, value.denominator)
    if isinstance(value, tuple) and len(value) == 2:
        return GaussianRational.from_fractions(Fraction(value[0]), Fraction(value[1]))
    if isinstance(value, str):
        return GaussianRational.from_fractions(parse_rational(value))
    raise TypeError(f"cannot coerce {value!r} to GaussianRational")


def as_float(value) -> complex:
    """Coerce a value to the float backend (builtin complex)."""
    if isinstance(value, GaussianRational):
        return value.to_complex()
    return complex(value)


def parse_rational(text: str) -> Fraction:
    """Parse a 'p/q' (or bare integer) string into a Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Canonical 'p/q' form: q > 0, gcd(p, q) = 1, denominator always written."""
    return f"{value.numerator}/{value.denominator}"


def zero_of(backend):
    return ZERO if backend == EXACT else 0j


def one_of(backend):
    return ONE if backend == EXACT else 1 + 0j


def coerce(value, backend):
    return as_exact(value) if backend == EXACT else as_float(value)
