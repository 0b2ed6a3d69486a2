"""Cyclic quotient singularities 1/n(1,q) and the diagonal foliation on their resolution.

The minimal resolution is the toric one: rays u_0 = (0,1), u_1 = (1,q)/n,
u_{i+1} = b_i u_i - u_{i-1}, ending at u_{r+1} = (1,0), where n/q = [b_1,...,b_r].
Chart i is the cone spanned by u_i and u_{i+1}; its coordinates xi_i, eta_i are
the monomials dual to that basis, so E_i = {xi_i = 0} and E_{i+1} = {eta_i = 0}.
The field x d/dx + lam y d/dy acts on x^a y^b by the scalar a + b*lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .dualgraph import Annotation, CurveNode, DualGraph
from .errors import PreconditionFailed
from .germ import classify_linear


@dataclass(frozen=True)
class QuotSingularity:
    n: int
    q: int

    def __post_init__(self):
        if self.n < 2 or not (0 < self.q < self.n):
            raise PreconditionFailed(f"need 0 < q < n, got n={self.n}, q={self.q}")
        if gcd(self.n, self.q) != 1:
            raise PreconditionFailed(f"gcd({self.n}, {self.q}) != 1")


def continued_fraction(p: int, q: int) -> list[int]:
    """p/q = b_1 - 1/(b_2 - 1/(...)) with every b_i >= 2 (for p > q > 0)."""
    out = []
    x = Fraction(p, q)
    while True:
        b = -((-x.numerator) // x.denominator)  # ceiling
        out.append(b)
        if x == b:
            return out
        x = 1 / (b - x)


def evaluate_cf(bs: list[int]) -> Fraction:
    x = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        x = b - 1 / x
    return x


@dataclass(frozen=True)
class HJData:
    res_chain: list[int]
    edim_chain: list[int]
    edim_bound: int

    def to_json(self) -> dict:
        return {"res_chain": self.res_chain, "edim_chain": self.edim_chain, "edim_bound": self.edim_bound}


def hj_expand(n: int, q: int) -> HJData:
    s = QuotSingularity(n, q)
    res = continued_fraction(s.n, s.q)
    edim = continued_fraction(s.n, s.n - s.q)
    if evaluate_cf(res) != Fraction(n, q) or evaluate_cf(edim) != Fraction(n, n - q):
        raise ArithmeticError("continued fraction recomposition failed")
    return HJData(res, edim, len(edim) + 2)


# --------------------------------------------------------------------------
# toric charts


def fan_rays(n: int, q: int) -> list[tuple[Fraction, Fraction]]:
    bs = hj_expand(n, q).res_chain
    rays = [(Fraction(0), Fraction(1)), (Fraction(1, n), Fraction(q, n))]
    for b in bs:
        u, w = rays[-1], rays[-2]
        rays.append((b * u[0] - w[0], b * u[1] - w[1]))
    if rays[-1] != (1, 0):
        raise ArithmeticError("fan does not close at (1,0)")
    return rays


def _dual_basis(u, w) -> tuple[tuple[int, int], tuple[int, int]]:
    """Integer exponent vectors m_xi, m_eta with <m_xi,u>=1, <m_xi,w>=0, <m_eta,u>=0, <m_eta,w>=1."""
    det = u[0] * w[1] - u[1] * w[0]
    xi = (w[1] / det, -w[0] / det)
    eta = (-u[1] / det, u[0] / det)
    for v in (*xi, *eta):
        if v.denominator != 1:
            raise ArithmeticError("chart cone is not smooth")
    return (int(xi[0]), int(xi[1])), (int(eta[0]), int(eta[1]))


def format_linear_form(const: int, lam: int, var: str = "lambda") -> str:
    """a + b*lam written the way a person would: 'lambda - 4', '4 - lambda', '7*lambda'."""
    def lam_term(k: int) -> str:
        return var if k == 1 else f"{k}*{var}"

    if lam == 0:
        return str(const)
    if const == 0:
        return lam_term(lam) if lam > 0 else f"-{lam_term(-lam)}"
    if lam > 0:
        return f"{lam_term(lam)} {'+' if const > 0 else '-'} {abs(const)}"
    if const > 0:
        return f"{const} - {lam_term(-lam)}"
    return f"-{lam_term(-lam)} - {-const}"


@dataclass(frozen=True)
class ChartField:
    index: int
    xi: tuple[int, int]  # exponents of x, y in xi_i
    eta: tuple[int, int]

    @property
    def xi_form(self) -> tuple[int, int]:
        """(constant, lambda-coefficient) of the xi d/dxi coefficient."""
        return self.xi

    @property
    def eta_form(self) -> tuple[int, int]:
        return self.eta

    def coefficients(self, lam) -> tuple[Fraction, Fraction]:
        lam = Fraction(lam)
        return self.xi[0] + self.xi[1] * lam, self.eta[0] + self.eta[1] * lam

    def text(self) -> str:
        i = self.index
        a = format_linear_form(*self.xi_form)
        b = format_linear_form(*self.eta_form)
        wrap = lambda s: s if " " not in s else f"({s})"
        return f"{wrap(a)}*xi{i}*d/dxi{i} + {wrap(b)}*eta{i}*d/deta{i}"

    def to_json(self) -> dict:
        return {
            "chart": self.index,
            "xi_exponents": list(self.xi),
            "eta_exponents": list(self.eta),
            "xi_coefficient": {"const": self.xi[0], "lambda": self.xi[1]},
            "eta_coefficient": {"const": self.eta[0], "lambda": self.eta[1]},
            "field": self.text(),
        }


def chart_fields(n: int, q: int) -> list[ChartField]:
    rays = fan_rays(n, q)
    out = []
    for i in range(len(rays) - 1):
        xi, eta = _dual_basis(rays[i], rays[i + 1])
        out.append(ChartField(i, xi, eta))
    return out


def noninvariance_values(n: int, q: int) -> list[Fraction]:
    """lambda_j making E_j non-invariant: (1, lambda) parallel to the ray u_j."""
    rays = fan_rays(n, q)
    return [u[1] / u[0] for u in rays[1:-1]]


@dataclass(frozen=True)
class QuotCharts:
    n: int
    q: int
    charts: list[ChartField]
    lam: Fraction | None
    lambda_values: list[Fraction]
    invariant: list[bool] | None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "lambda": None if self.lam is None else str(self.lam),
            "charts": [c.to_json() for c in self.charts],
            "noninvariance_lambda": {f"E{j + 1}": str(v) for j, v in enumerate(self.lambda_values)},
            "invariant": None if self.invariant is None else {f"E{j + 1}": f for j, f in enumerate(self.invariant)},
        }


def quotient_foliation_charts(n: int, q: int, lam=None) -> QuotCharts:
    """Chart fields; with a numeric lambda also the invariance of each E_j.

    E_j = {eta_{j-1} = 0} in chart j-1 is non-invariant exactly when the
    coefficient of the tangential direction xi_{j-1} d/dxi_{j-1} vanishes.
    """
    charts = chart_fields(n, q)
    values = noninvariance_values(n, q)
    inv = None
    if lam is not None:
        lam = Fraction(lam)
        inv = [charts[j - 1].coefficients(lam)[0] != 0 for j in range(1, len(charts))]
    return QuotCharts(n, q, charts, lam, values, inv)


def generalized_chain_profile(n: int, q: int, lam) -> tuple[DualGraph, dict]:
    """Dual-graph fragment of the resolution with chart-origin annotations."""
    lam = Fraction(lam)
    res = hj_expand(n, q).res_chain
    data = quotient_foliation_charts(n, q, lam)
    r = len(res)
    ids = [f"E{j}" for j in range(1, r + 1)]
    ann: dict[int, list[Annotation]] = {j: [] for j in range(1, r + 1)}
    z: dict[int, int] = {j: 0 for j in range(1, r + 1)}
    notes = {"lambda_in_Q_plus": lam > 0, "non_reduced_points": [], "singular_points": []}
    for c in data.charts:
        A, B = c.coefficients(lam)
        if A == 0 or B == 0:
            continue  # saturates to a nonsingular field at the chart origin
        cls = classify_linear(A + B, A * B, True)
        pid = f"o{c.index}"
        notes["singular_points"].append(pid)
        if not cls.reduced:
            notes["non_reduced_points"].append(pid)
        i = c.index
        # E_i = {xi_i = 0}: CS = A/B;  E_{i+1} = {eta_i = 0}: CS = B/A
        if 1 <= i <= r:
            ann[i].append(Annotation.from_class(pid, cls, A / B, 1))
            z[i] += 1
        if 1 <= i + 1 <= r:
            ann[i + 1].append(Annotation.from_class(pid, cls, B / A, 1))
            z[i + 1] += 1
    nodes = []
    for j in range(1, r + 1):
        invariant = data.invariant[j - 1]
        nodes.append(
            CurveNode(
                ids[j - 1],
                -res[j - 1],
                0,
                invariant,
                z[j] if invariant else None,
                tuple(ann[j]),
                None if invariant else 0,
            )
        )
    edges = [(ids[j], ids[j + 1], 1) for j in range(r - 1)]
    return DualGraph(nodes, edges), notes
