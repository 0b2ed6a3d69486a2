"""Camacho-Sad index, Z index and tangency order of plane germs along branches.

Two independent routes are provided. The primary route is a closed-form table
(eigenvalue ratios, saddle-node residues, the m/n cusp). The secondary route is
a truncated power-series computation of the decomposition

    g * omega = h * dF + F * eta,     omega = g_v dx - f_v dy,

restricted to an explicit parametrization of the branch; it never looks at the
table and is used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal, Union

from . import upoly as U
from .errors import NotInvariant, OutsideClosedForm, PreconditionFailed, TangencyUndefined, TruncationInsufficient
from .germ import PlaneGerm, classify_at_origin
from .poly import Poly, exact_div, intersection_multiplicity
from .scalar import Scalar

DEFAULT_TRUNC = 32
STABILITY_STEP = 4

# --------------------------------------------------------------------------
# branches


@dataclass(frozen=True)
class CoordinateAxis:
    axis: Literal["x=0", "y=0"]

    def equation(self) -> Poly:
        return Poly.x() if self.axis == "x=0" else Poly.y()


@dataclass(frozen=True)
class SmoothBranch:
    poly: Poly

    def __post_init__(self):
        if self.poly.coeff(0, 0):
            raise PreconditionFailed("branch does not pass through the origin")
        if not self.poly.coeff(1, 0) and not self.poly.coeff(0, 1):
            raise PreconditionFailed("smooth branch needs a nonzero linear part")

    def equation(self) -> Poly:
        return self.poly


@dataclass(frozen=True)
class CuspidalBranch:
    """The curve a*x^m - y^n = 0 with gcd(m, n) = 1 and m, n >= 2."""

    a: Fraction
    m: int
    n: int

    def __post_init__(self):
        if not self.a:
            raise PreconditionFailed("cusp coefficient must be nonzero")
        if gcd(self.m, self.n) != 1:
            raise PreconditionFailed(f"gcd({self.m}, {self.n}) != 1")
        if min(self.m, self.n) < 2:
            raise PreconditionFailed("exponents below 2 give a smooth branch; use SmoothBranch")

    def equation(self) -> Poly:
        return Poly.monomial(self.m, 0, Fraction(self.a)) - Poly.monomial(0, self.n)


BranchSpec = Union[CoordinateAxis, SmoothBranch, CuspidalBranch]


@dataclass(frozen=True)
class IndexRecord:
    cs: Scalar
    z: int
    source: Literal["closed_form", "series_oracle"]

    def to_json(self) -> dict:
        from .scalar import scalar_to_json

        return {"cs": scalar_to_json(self.cs), "z": self.z, "source": self.source}


# --------------------------------------------------------------------------
# invariance


def _series_quotient(w: Poly, F: Poly, trunc: int) -> Poly:
    """k with w = k*F in the power-series ring, up to total degree trunc of k.

    Raises NotInvariant when no such k exists to that order.
    """
    d = F.low_degree()
    Fd = F.homogeneous(d)
    if w.is_zero():
        return Poly()
    if w.low_degree() < d:
        raise NotInvariant("branch is not invariant")
    parts: list[Poly] = []
    for j in range(trunc + 1):
        r = w.homogeneous(d + j)
        for i, ki in enumerate(parts):
            r = r - ki * F.homogeneous(d + j - i)
        if r.is_zero():
            parts.append(Poly())
            continue
        try:
            parts.append(exact_div(r, Fd))
        except ArithmeticError:
            raise NotInvariant("branch is not invariant") from None
    out = Poly()
    for p in parts:
        out = out + p
    return out


def is_invariant(v: PlaneGerm, branch: BranchSpec, trunc: int = DEFAULT_TRUNC) -> bool:
    try:
        _series_quotient(v.apply(branch.equation()), branch.equation(), trunc)
    except NotInvariant:
        return False
    return True


def _require_invariant(v: PlaneGerm, branch: BranchSpec) -> None:
    if isinstance(branch, CoordinateAxis):
        comp = v.g.restrict_y0() if branch.axis == "y=0" else v.f.restrict_x0()
        if comp:
            raise NotInvariant(f"axis {branch.axis} is not invariant")
        return
    if not is_invariant(v, branch):
        raise NotInvariant("branch is not invariant")


# --------------------------------------------------------------------------
# closed forms


def axis_index(v: PlaneGerm, axis: str) -> IndexRecord:
    """Residue formula along an invariant coordinate axis.

    For y=0 invariant, g = y*g1 and v restricted to the axis is f(x,0) d/dx;
    Z is the vanishing order of f(x,0) and CS = Res_{x=0} g1(x,0)/f(x,0) dx.
    """
    if axis == "x=0":
        v = v.swap()
    f0 = v.f.restrict_y0()
    g1 = exact_div(v.g, Poly.y()).restrict_y0()
    z = U.order_at_zero(f0)
    if z == 0:
        return IndexRecord(Fraction(0), 0, "closed_form")
    n = 2 * z + 1
    cs = U.residue(U.truncate(g1, n), U.truncate(f0, n), n)
    return IndexRecord(cs, z, "closed_form")


def _tangent_eigenvalue(v: PlaneGerm, F: Poly) -> tuple[Fraction, Fraction]:
    """(eigenvalue along the branch tangent, the other eigenvalue)."""
    (a, b), (c, d) = v.linear_part()
    p, q = F.coeff(1, 0), F.coeff(0, 1)
    t = (-q, p)
    lt = (a * t[0] + b * t[1], c * t[0] + d * t[1])
    mu = lt[0] / t[0] if t[0] else lt[1] / t[1]
    if (lt[0] - mu * t[0], lt[1] - mu * t[1]) != (0, 0):
        raise NotInvariant("branch tangent is not an eigendirection")
    return mu, a + d - mu


def closed_form_index(v: PlaneGerm, branch: BranchSpec) -> IndexRecord:
    """Closed-form CS and Z; raises OutsideClosedForm when no table entry applies."""
    _require_invariant(v, branch)
    if not v.is_singular_at_origin():
        return IndexRecord(Fraction(0), 0, "closed_form")
    if isinstance(branch, CoordinateAxis):
        return axis_index(v, branch.axis)
    cls = classify_at_origin(v)
    if isinstance(branch, SmoothBranch):
        if cls.kind == "nilpotent":
            raise OutsideClosedForm("nilpotent linear part")
        mu_t, mu_o = _tangent_eigenvalue(v, branch.poly)
        if mu_t == 0:
            raise OutsideClosedForm("weak separatrix of a saddle-node along a non-axis branch")
        return IndexRecord(mu_o / mu_t, 1, "closed_form")
    # cuspidal: non-reduced point with eigenvalue m/n
    m, n = branch.m, branch.n
    (a, b), (c, d) = v.linear_part()
    if b == 0 and c == 0 and a and d and d / a == Fraction(m, n):
        return IndexRecord(Fraction(m * n), 1 - (m - 1) * (n - 1), "closed_form")
    raise OutsideClosedForm("cuspidal branch at a point other than the m/n model")


# --------------------------------------------------------------------------
# series oracle


def _compose(p: Poly, xs: U.UPoly, ys: U.UPoly, n: int) -> U.UPoly:
    """p(xs(s), ys(s)) mod s^n."""
    xp: dict[int, U.UPoly] = {0: (Fraction(1),)}
    yp: dict[int, U.UPoly] = {0: (Fraction(1),)}

    def pw(cache, base, k):
        if k not in cache:
            cache[k] = U.series_mul(pw(cache, base, k - 1), base, n)
        return cache[k]

    out: U.UPoly = ()
    for (i, j), c in p.terms().items():
        out = U.add(out, U.scale(U.series_mul(pw(xp, xs, i), pw(yp, ys, j), n), c))
    return out


def _parametrize(branch: BranchSpec, n: int) -> tuple[U.UPoly, U.UPoly]:
    s = (Fraction(0), Fraction(1))
    if isinstance(branch, CoordinateAxis):
        return (s, ()) if branch.axis == "y=0" else ((), s)
    if isinstance(branch, CuspidalBranch):
        # x = alpha s^n, y = beta s^m with a*alpha^m = beta^n
        m, nn, a = branch.m, branch.n, Fraction(branch.a)
        l = next(l for l in range(1, m + 1) if (l * nn) % m == 1 % m)
        k = (l * nn - 1) // m
        xs = U.upoly([0] * nn + [a**k])
        ys = U.upoly([0] * m + [a**l])
        return xs, ys
    F = branch.poly
    if F.coeff(0, 1):
        return s, _implicit(F, n)
    swapped = Poly({(j, i): c for (i, j), c in F.terms().items()})
    return _implicit(swapped, n), s


def _implicit(F: Poly, n: int) -> U.UPoly:
    """phi with F(s, phi(s)) = 0 mod s^n, assuming F(0,0) = 0 and F_y(0,0) != 0."""
    fy0 = F.coeff(0, 1)
    rest = F - Poly.monomial(0, 1, fy0)
    phi: U.UPoly = ()
    s = (Fraction(0), Fraction(1))
    for _ in range(n + 1):
        nxt = U.scale(_compose(rest, s, phi, n), -1 / fy0)
        if nxt == phi:
            break
        phi = nxt
    return phi


def _oracle_once(v: PlaneGerm, branch: BranchSpec, trunc: int) -> tuple[Fraction, int]:
    F = branch.equation()
    k = _series_quotient(v.apply(F), F, trunc)
    # series order in s: trunc significant terms past the leading orders along the branch
    n = trunc + (2 * branch.m * branch.n if isinstance(branch, CuspidalBranch) else 0)
    xs, ys = _parametrize(branch, n)
    P, Q = v.g, -v.f
    Fx, Fy = F.diff_x(), F.diff_y()
    dx, dy = U.derivative(xs), U.derivative(ys)
    kg = _compose(k, xs, ys, n)
    Qg, Fyg = _compose(Q, xs, ys, n), _compose(Fy, xs, ys, n)
    Pg, Fxg = _compose(P, xs, ys, n), _compose(Fx, xs, ys, n)
    if Qg and Fyg:
        # g = F_y, h = Q, eta = k dx
        z = U.order_at_zero(Qg) - U.order_at_zero(Fyg)
        cs = U.residue(U.scale(U.series_mul(kg, dx, n), -1), Qg, n)
    elif Pg and Fxg:
        # g = F_x, h = P, eta = -k dy
        z = U.order_at_zero(Pg) - U.order_at_zero(Fxg)
        cs = U.residue(U.series_mul(kg, dy, n), Pg, n)
    else:
        raise TruncationInsufficient("restricted form vanishes to the truncation order")
    return cs, z


def series_oracle_cs_z(v: PlaneGerm, branch: BranchSpec, trunc: int = DEFAULT_TRUNC) -> IndexRecord:
    """CS and Z from the truncated decomposition, checked at trunc and trunc + 4."""
    if trunc < 4:
        raise PreconditionFailed("truncation order must be at least 4")
    _require_invariant(v, branch)
    try:
        lo = _oracle_once(v, branch, trunc)
        hi = _oracle_once(v, branch, trunc + STABILITY_STEP)
    except ValueError as exc:
        raise TruncationInsufficient(str(exc), trunc=trunc) from None
    if lo != hi:
        raise TruncationInsufficient("indices not stable across truncation levels", trunc=trunc)
    return IndexRecord(lo[0], lo[1], "series_oracle")


# --------------------------------------------------------------------------
# public entry points


def index_record(v: PlaneGerm, branch: BranchSpec, trunc: int = DEFAULT_TRUNC) -> IndexRecord:
    """Closed form when available, otherwise the series oracle."""
    try:
        return closed_form_index(v, branch)
    except OutsideClosedForm:
        return series_oracle_cs_z(v, branch, trunc)


def camacho_sad(v: PlaneGerm, branch: BranchSpec) -> Scalar:
    return index_record(v, branch).cs


def z_index(v: PlaneGerm, branch: BranchSpec) -> int:
    return index_record(v, branch).z


def tangency_order(v: PlaneGerm, curve: Poly, point: tuple = (0, 0)) -> int:
    """Intersection multiplicity of curve and v(curve) at point."""
    a, b = (Fraction(c) for c in point)
    if curve.evaluate(a, b) != 0:
        raise PreconditionFailed(f"curve does not pass through ({a}, {b})")
    w = v.apply(curve)
    m = intersection_multiplicity(curve.translate(a, b), w.translate(a, b))
    if m is None:
        raise TangencyUndefined("tangency undefined, curve invariant")
    return m
