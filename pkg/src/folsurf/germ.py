"""Plane vector-field germs v = f d/dx + g d/dy with exact coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from . import upoly as U
from .errors import DegenerateFamily, DegreeCapExceeded, ParseError, ZeroFieldError
from .linalg import bareiss_det
from .poly import Poly, exact_div, join_terms, poly_gcd, term_strs
from .ratfunc import RatFunc
from .scalar import QuadraticIrrational, Scalar, abs_le_one, rational_sqrt, sqrt_scalar

# --------------------------------------------------------------------------
# germs


@dataclass(frozen=True)
class PlaneGerm:
    """Saturated polynomial vector field; construct through :meth:`make`."""

    f: Poly
    g: Poly

    @classmethod
    def make(cls, f: Poly, g: Poly, saturate: bool = True) -> "PlaneGerm":
        if f.is_zero() and g.is_zero():
            raise ZeroFieldError("vector field is identically zero")
        if saturate:
            h = poly_gcd(f, g)
            if h.degree() > 0:
                f, g = exact_div(f, h), exact_div(g, h)
        return cls(f, g)

    def linear_part(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return (
            (self.f.coeff(1, 0), self.f.coeff(0, 1)),
            (self.g.coeff(1, 0), self.g.coeff(0, 1)),
        )

    def is_singular_at_origin(self) -> bool:
        return not self.f.coeff(0, 0) and not self.g.coeff(0, 0)

    def degree(self) -> int:
        return max(self.f.degree(), self.g.degree())

    def apply(self, h: Poly) -> Poly:
        """Lie derivative v(h)."""
        return self.f * h.diff_x() + self.g * h.diff_y()

    def translate(self, a, b) -> "PlaneGerm":
        """Germ at (a, b) moved to the origin."""
        return PlaneGerm(self.f.translate(a, b), self.g.translate(a, b))

    def scale(self, u: Poly) -> "PlaneGerm":
        return PlaneGerm(self.f * u, self.g * u)

    def swap(self) -> "PlaneGerm":
        """Exchange the roles of x and y."""
        sw = lambda p: Poly({(j, i): c for (i, j), c in p.terms().items()})
        return PlaneGerm(sw(self.g), sw(self.f))

    def __str__(self) -> str:
        return format_germ(self.f, self.g)


def format_germ(f: Poly, g: Poly) -> str:
    """Canonical text form: dx terms then dy terms, each in graded-lex order."""
    return join_terms(term_strs(f, "dx") + term_strs(g, "dy"))


# --------------------------------------------------------------------------
# singularity classes

Kind = Literal["nonsingular", "nondegenerate", "saddle_node", "nilpotent"]


@dataclass(frozen=True)
class SingularityClass:
    kind: Kind
    reduced: bool = False
    semi_reduced: bool = False
    eigen_pair: tuple[Scalar, Scalar | None] | None = None
    nonreal: bool = False
    ratio_sum: Fraction | None = None  # lambda + 1/lambda, rational for every semi-reduced point

    @property
    def eigenvalue(self) -> Scalar | None:
        return self.eigen_pair[0] if self.eigen_pair else None

    def to_json(self) -> dict:
        from .scalar import scalar_to_json

        return {
            "kind": self.kind,
            "reduced": self.reduced,
            "semi_reduced": self.semi_reduced,
            "eigen_pair": None
            if self.eigen_pair is None
            else [scalar_to_json(self.eigen_pair[0]), "inf" if self.eigen_pair[1] is None else scalar_to_json(self.eigen_pair[1])],
            "nonreal": self.nonreal,
            "ratio_sum": None if self.ratio_sum is None else str(self.ratio_sum),
        }


NONSINGULAR = SingularityClass("nonsingular")


def _ordered_pair(lam: Scalar) -> tuple[Scalar, Scalar | None]:
    if lam == 0:
        return (Fraction(0), None)
    inv = 1 / lam
    return (lam, inv) if abs_le_one(lam) else (inv, lam)


def classify_linear(trace: Fraction, det: Fraction, nonzero_linear: bool) -> SingularityClass:
    if det == 0:
        if trace == 0:
            return SingularityClass("nilpotent")
        return SingularityClass("saddle_node", reduced=True, semi_reduced=True, eigen_pair=(Fraction(0), None))
    s = trace * trace / det - 2
    disc = s * s - 4
    if disc < 0:
        return SingularityClass("nondegenerate", reduced=True, semi_reduced=True, nonreal=True, ratio_sum=s)
    root = sqrt_scalar(disc)
    lam = (s + root) / 2
    pair = _ordered_pair(lam)
    rational = not isinstance(lam, QuadraticIrrational)
    reduced = not (rational and lam > 0)
    return SingularityClass("nondegenerate", reduced=reduced, semi_reduced=True, eigen_pair=pair, ratio_sum=s)


def classify_at_origin(v: PlaneGerm) -> SingularityClass:
    if not v.is_singular_at_origin():
        return NONSINGULAR
    (a, b), (c, d) = v.linear_part()
    return classify_linear(a + d, a * d - b * c, any((a, b, c, d)))


def singular_points_rational(v: PlaneGerm, degree_cap: int = 12) -> list[tuple[tuple[Fraction, Fraction], SingularityClass]]:
    """All common zeros of f and g with rational coordinates.

    Irrational zeros are not reported: the x-coordinates come from the rational
    roots of the resultant Res_y(f, g).
    """
    f, g = v.f, v.g
    if max(f.degree(), g.degree()) > degree_cap:
        raise DegreeCapExceeded(f"germ degree {v.degree()} exceeds cap {degree_cap}")
    if f.is_zero() or g.is_zero():
        # saturated => the other component is a nonzero constant
        return []
    res = resultant_y(f, g)
    if not res:
        raise ArithmeticError("f and g share a component; germ is not saturated")
    out = []
    for x0, _ in U.rational_roots(res):
        fy = f.subs(Poly.const(x0), Poly.y()).restrict_x0()
        gy = g.subs(Poly.const(x0), Poly.y()).restrict_x0()
        h = U.ugcd(fy, gy)
        if not fy and not gy:
            continue
        for y0, _ in U.rational_roots(h):
            out.append(((x0, y0), classify_at_origin(v.translate(x0, y0))))
    return sorted(out, key=lambda t: t[0])


def sylvester(a: list, b: list) -> list[list]:
    """Sylvester matrix of two coefficient lists (lowest degree first)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant_y(f: Poly, g: Poly) -> U.UPoly:
    """Res_y(f, g) as a polynomial in x, by evaluation at integer points and interpolation."""
    dfy, dgy = f.deg_y(), g.deg_y()
    if dfy == 0 and dgy == 0:
        return U.upoly([0])  # no y: common zeros form lines or nothing
    bound = f.degree() * max(g.degree(), 0) + g.degree() * max(f.degree(), 0) + 1
    xs, ys = [], []
    for k in range(bound + 1):
        x0 = Fraction(k)
        fa = [f.subs(Poly.const(x0), Poly.y()).coeff(0, j) for j in range(dfy + 1)]
        ga = [g.subs(Poly.const(x0), Poly.y()).coeff(0, j) for j in range(dgy + 1)]
        xs.append(x0)
        ys.append(bareiss_det(sylvester(fa, ga)) if dfy + dgy else Fraction(1))
    return U.interpolate(xs, ys)


# --------------------------------------------------------------------------
# one-parameter families


@dataclass(frozen=True)
class ParamGerm:
    """Germ whose coefficients are rational functions of a parameter t."""

    f: Poly
    g: Poly

    def linear_part(self):
        lift = RatFunc.lift
        return (
            (lift(self.f.coeff(1, 0)), lift(self.f.coeff(0, 1))),
            (lift(self.g.coeff(1, 0)), lift(self.g.coeff(0, 1))),
        )

    def specialize(self, t0) -> PlaneGerm:
        sp = lambda p: p.map_coeffs(lambda c: RatFunc.lift(c)(t0))
        return PlaneGerm.make(sp(self.f), sp(self.g))

    def __str__(self) -> str:
        return format_germ(self.f, self.g)


@dataclass(frozen=True)
class EigenvalueFunction:
    """s(t) = trace^2/det of the linear part; lambda + 1/lambda = s - 2."""

    s: RatFunc
    trace: RatFunc = field(repr=False)
    det: RatFunc = field(repr=False)

    def __call__(self, t0) -> Fraction:
        return self.s(t0)

    def solve_lambda(self, lam0) -> list[Fraction]:
        """Rational t with eigenvalue lam0 (up to reciprocal) at the origin."""
        lam0 = Fraction(lam0)
        if lam0 == 0:
            # saddle-node: det vanishes, trace does not
            cands = U.rational_roots(self.det.num)
            return sorted({t for t, _ in cands if self._defined(t) and self.trace(t) != 0 and self.det(t) == 0})
        target = lam0 + 1 / lam0 + 2
        # trace^2 - target * det = 0, as a single rational function numerator
        expr = self.trace * self.trace - self.det * target
        out = set()
        for t, _ in U.rational_roots(expr.num):
            if self._defined(t) and self.det(t) != 0:
                out.add(t)
        return sorted(out)

    def _defined(self, t) -> bool:
        try:
            self.trace(t), self.det(t)
        except ZeroDivisionError:
            return False
        return True


def eigenvalue_function(v: ParamGerm) -> EigenvalueFunction:
    (a, b), (c, d) = v.linear_part()
    trace = a + d
    det = a * d - b * c
    if not det:
        raise DegenerateFamily("determinant of the linear part vanishes identically")
    return EigenvalueFunction(trace * trace / det, trace, det)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:([0-9]+)|(dx|dy|x|y|t)|([-+*/^()]))")


@dataclass
class _Val:
    poly: Poly | None = None
    f: Poly | None = None
    g: Poly | None = None

    @property
    def is_field(self) -> bool:
        return self.f is not None


class _Parser:
    def __init__(self, text: str, allow_t: bool):
        self.text = text
        self.allow_t = allow_t
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        raw = text
        while pos < len(raw):
            if raw[pos:].strip() == "":
                break
            m = _TOKEN.match(raw, pos)
            if not m:
                skip = len(raw[pos:]) - len(raw[pos:].lstrip())
                raise ParseError(f"unexpected character {raw[pos + skip]!r}", self._byte(pos + skip))
            start = m.start(m.lastindex)
            kind = ("num", "ident", "op")[m.lastindex - 1]
            self.toks.append((kind, m.group(m.lastindex), self._byte(start)))
            pos = m.end()
        self.i = 0

    def _byte(self, charpos: int) -> int:
        return len(self.text[:charpos].encode("utf-8"))

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text.encode("utf-8")))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.take()
        if t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def parse(self) -> _Val:
        v = self.expr()
        t = self.peek()
        if t[0] != "eof":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return v

    def expr(self) -> _Val:
        left = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op, _, off = self.take()[1], None, self.peek()[2]
            right = self.term()
            left = self._add(left, right if op == "+" else self._neg(right), off)
        return left

    def term(self) -> _Val:
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            off = self.peek()[2]
            right = self.unary()
            left = self._mul(left, right, off) if op == "*" else self._div(left, right, off)
        return left

    def unary(self) -> _Val:
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return self._neg(v) if t[1] == "-" else v
        return self.power()

    def power(self) -> _Val:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", t[2])
            if base.is_field:
                raise ParseError("cannot raise a vector field to a power", t[2])
            return _Val(poly=base.poly ** int(t[1]))
        return base

    def atom(self) -> _Val:
        kind, text, off = self.take()
        if kind == "num":
            return _Val(poly=Poly.const(Fraction(int(text))))
        if kind == "ident":
            if text == "x":
                return _Val(poly=Poly.x())
            if text == "y":
                return _Val(poly=Poly.y())
            if text == "dx":
                return _Val(f=Poly.const(Fraction(1)), g=Poly())
            if text == "dy":
                return _Val(f=Poly(), g=Poly.const(Fraction(1)))
            if text == "t":
                if not self.allow_t:
                    raise ParseError("parameter 't' only allowed in families", off)
                return _Val(poly=Poly.const(RatFunc.t()))
        if kind == "op" and text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "eof":
            raise ParseError("unexpected end of input", off)
        raise ParseError(f"unexpected token {text!r}", off)

    @staticmethod
    def _neg(v: _Val) -> _Val:
        if v.is_field:
            return _Val(f=-v.f, g=-v.g)
        return _Val(poly=-v.poly)

    @staticmethod
    def _add(a: _Val, b: _Val, off: int) -> _Val:
        if a.is_field and b.is_field:
            return _Val(f=a.f + b.f, g=a.g + b.g)
        if not a.is_field and not b.is_field:
            return _Val(poly=a.poly + b.poly)
        raise ParseError("cannot add a function to a vector field term", off)

    @staticmethod
    def _mul(a: _Val, b: _Val, off: int) -> _Val:
        if a.is_field and b.is_field:
            raise ParseError("product of two vector field terms", off)
        if a.is_field:
            a, b = b, a
        if b.is_field:
            return _Val(f=a.poly * b.f, g=a.poly * b.g)
        return _Val(poly=a.poly * b.poly)

    @staticmethod
    def _div(a: _Val, b: _Val, off: int) -> _Val:
        if b.is_field or b.poly.degree() > 0:
            raise ParseError("division only by constants", off)
        c = b.poly.coeff(0, 0)
        if not c:
            raise ParseError("division by zero", off)
        if a.is_field:
            return _Val(f=a.f / c, g=a.g / c)
        return _Val(poly=a.poly / c)


def _parse_field(text: str, allow_t: bool) -> tuple[Poly, Poly]:
    v = _Parser(text, allow_t).parse()
    if not v.is_field:
        raise ParseError("expression has no dx or dy term", 0)
    return v.f, v.g


def parse_germ(text: str) -> PlaneGerm:
    """Parse ``"x*dx + 4*y*dy"``-style text into a saturated germ."""
    f, g = _parse_field(text, allow_t=False)
    return PlaneGerm.make(f, g)


def parse_param_germ(text: str) -> ParamGerm:
    f, g = _parse_field(text, allow_t=True)
    lift = lambda p: p.map_coeffs(RatFunc.lift)
    f, g = lift(f), lift(g)
    if f.is_zero() and g.is_zero():
        raise ZeroFieldError("vector field is identically zero")
    return ParamGerm(f, g)


def parse_poly(text: str) -> Poly:
    """Parse a plain polynomial in x, y (used for curve equations)."""
    v = _Parser(text, allow_t=False).parse()
    if v.is_field:
        raise ParseError("expected a polynomial, found a vector field", 0)
    return v.poly
