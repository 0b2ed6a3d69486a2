"""Exact scalars: rationals and elements of one real quadratic field Q(sqrt d).

Rationals are plain :class:`fractions.Fraction`.  A value ``a + b*sqrt(d)`` with
``b != 0`` is a :class:`QuadraticIrrational`; arithmetic that cancels the
irrational part collapses back to a ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Union

from .errors import MixedFieldError

Rational = Fraction


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(r, d)`` with ``n == r*r*d`` and ``d`` squarefree (sign kept on d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    r, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        r *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= n
    return r, sign * d


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@total_ordering
class QuadraticIrrational:
    """``a + b*sqrt(d)`` with rational a, b != 0 and squarefree d >= 2."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        b = Fraction(b)
        if b == 0:
            raise ValueError("use Fraction for rational values")
        r, sd = squarefree_decompose(d)
        if sd < 2:
            raise ValueError(f"d must have squarefree part >= 2, got {d}")
        self.a = Fraction(a)
        self.b = b * r
        self.d = sd

    @staticmethod
    def make(a, b, d: int) -> "Scalar":
        if Fraction(b) == 0:
            return Fraction(a)
        r, sd = squarefree_decompose(d)
        if sd == 1:
            return Fraction(a) + Fraction(b) * r
        return QuadraticIrrational(a, b, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise MixedFieldError(f"cannot mix Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticIrrational.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.d)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticIrrational.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return QuadraticIrrational.make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticIrrational":
        return QuadraticIrrational(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "Scalar":
        n = self.norm()
        return QuadraticIrrational.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticIrrational):
            self._coerce(other)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return QuadraticIrrational.make(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, QuadraticIrrational):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False

    def __lt__(self, other):
        diff = self - other
        return scalar_sign(diff) < 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticIrrational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        sgn = "+" if self.b > 0 else "-"
        return f"{self.a}{sgn}{abs(self.b)}*sqrt({self.d})"


Scalar = Union[Fraction, QuadraticIrrational]


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, QuadraticIrrational):
        return x.sign()
    return (x > 0) - (x < 0)


def is_positive_rational(x: Scalar | None) -> bool:
    return isinstance(x, (int, Fraction)) and x > 0


def sqrt_scalar(q: Fraction) -> Scalar:
    """sqrt of a nonnegative rational, inside Q or Q(sqrt d)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    r = rational_sqrt(q)
    if r is not None:
        return r
    # sqrt(n/m) = sqrt(n*m)/m
    rr, d = squarefree_decompose(q.numerator * q.denominator)
    return QuadraticIrrational(0, Fraction(rr, q.denominator), d)


def scalar_to_json(x: Scalar | None):
    if x is None:
        return None
    if isinstance(x, QuadraticIrrational):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    return str(Fraction(x))


def scalar_from_json(obj) -> Scalar | None:
    if obj is None:
        return None
    if isinstance(obj, dict):
        return QuadraticIrrational.make(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))
    if isinstance(obj, float):
        raise ValueError("floats are not exact; pass rationals as strings 'p/q'")
    return Fraction(obj)


def abs_le_one(x: Scalar) -> bool:
    return scalar_sign(abs(x) - 1) <= 0
