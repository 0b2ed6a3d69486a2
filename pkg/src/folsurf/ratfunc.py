"""Univariate rational functions over Q in the family parameter t."""

from __future__ import annotations

from fractions import Fraction

from . import upoly as U


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num, den = U.upoly(num), U.upoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g = U.ugcd(num, den)
        if len(g) > 1:
            num, den = U.exact_div(num, g), U.exact_div(den, g)
        lc = den[-1]
        self.num, self.den = U.scale(num, 1 / lc), U.scale(den, 1 / lc)

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((0, 1))

    @classmethod
    def lift(cls, c) -> "RatFunc":
        if isinstance(c, RatFunc):
            return c
        return cls((Fraction(c),))

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = RatFunc.lift(other)
        return RatFunc(U.add(U.mul(self.num, o.den), U.mul(o.num, self.den)), U.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(U.scale(self.num, -1), self.den)

    def __sub__(self, other):
        return self + (-RatFunc.lift(other))

    def __rsub__(self, other):
        return RatFunc.lift(other) - self

    def __mul__(self, other):
        o = RatFunc.lift(other)
        return RatFunc(U.mul(self.num, o.num), U.mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.lift(other)
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(U.mul(self.num, o.den), U.mul(self.den, o.num))

    def __rtruediv__(self, other):
        return RatFunc.lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.lift(1) / self ** (-k)
        return RatFunc(U.power(self.num, k), U.power(self.den, k))

    def __eq__(self, other):
        try:
            o = RatFunc.lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __call__(self, t0):
        d = U.evaluate(self.den, Fraction(t0))
        if d == 0:
            raise ZeroDivisionError(f"pole at t={t0}")
        return U.evaluate(self.num, Fraction(t0)) / d

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = U.to_str(self.num)
        if len(self.den) == 1:
            return n
        return f"({n})/({U.to_str(self.den)})"
