"""Point blowups with saturation and the Seidenberg reduction driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from . import upoly as U
from .errors import DepthExhausted, NonRationalCenter, PreconditionFailed
from .germ import PlaneGerm, SingularityClass, classify_at_origin
from .localindex import axis_index
from .poly import Poly
from .scalar import is_positive_rational

StopCriterion = Literal["reduced", "semi-reduced"]
DEFAULT_MAX_DEPTH = 64


@dataclass(frozen=True)
class ChartGerm:
    germ: PlaneGerm
    chart_id: int
    exceptional_locus: str  # "x=0" in chart 1, "y=0" in chart 2
    saturation_order: int

    def exceptional_invariant(self) -> bool:
        # the exceptional coordinate must divide the normal component
        if self.chart_id == 1:
            return not self.germ.f.restrict_x0()
        return not self.germ.g.restrict_y0()


@dataclass(frozen=True)
class BlowupResult:
    chart1: ChartGerm
    chart2: ChartGerm
    invariant: bool
    center_singular: bool


def _saturate_by(f: Poly, g: Poly, var: str) -> tuple[Poly, Poly, int]:
    if var == "x":
        s = min(f.x_order() if f else 10**9, g.x_order() if g else 10**9)
        shift = (-s, 0)
    else:
        s = min(f.y_order() if f else 10**9, g.y_order() if g else 10**9)
        shift = (0, -s)
    return f.shift_exponents(*shift), g.shift_exponents(*shift), s


def blow_up_origin(v: PlaneGerm) -> BlowupResult:
    """Blow up the origin; chart 1 is y = x*y', chart 2 is x = x'*y.

    Blowing up a nonsingular point is legal; ``center_singular`` flags it.
    """
    X, Y = Poly.x(), Poly.y()
    f1, g1 = v.f.subs(X, X * Y), v.g.subs(X, X * Y)
    F1, G1, s1 = _saturate_by(X * f1, g1 - Y * f1, "x")
    f2, g2 = v.f.subs(X * Y, Y), v.g.subs(X * Y, Y)
    F2, G2, s2 = _saturate_by(f2 - X * g2, Y * g2, "y")
    c1 = ChartGerm(PlaneGerm.make(F1, G1), 1, "x=0", s1)
    c2 = ChartGerm(PlaneGerm.make(F2, G2), 2, "y=0", s2)
    inv1, inv2 = c1.exceptional_invariant(), c2.exceptional_invariant()
    if inv1 != inv2 or s1 != s2:
        raise ArithmeticError("chart computations disagree on the exceptional curve")
    return BlowupResult(c1, c2, inv1, v.is_singular_at_origin())


# --------------------------------------------------------------------------
# forest records


@dataclass
class SingularPoint:
    point: str
    cls: SingularityClass


@dataclass
class ExceptionalCurve:
    id: str
    center: str
    self_int: int
    invariant: bool
    saturation_order: int
    fol_discrepancy: Fraction
    ord_discrepancy: Fraction
    singular_points: list[SingularPoint] = field(default_factory=list)
    tangency_points: list[tuple[str | None, int]] = field(default_factory=list)
    cs_points: list[tuple[str, Fraction]] = field(default_factory=list)
    z_points: list[tuple[str, int]] = field(default_factory=list)

    @property
    def tang_total(self) -> int | None:
        return sum(k for _, k in self.tangency_points) if not self.invariant else None

    @property
    def z_total(self) -> int | None:
        return sum(z for _, z in self.z_points) if self.invariant else None

    @property
    def cs_sum(self) -> Fraction | None:
        return sum((c for _, c in self.cs_points), Fraction(0)) if self.invariant else None


@dataclass
class CenterNode:
    id: str
    path: str
    germ: str
    cls: SingularityClass
    curves_through: list[str]
    saturation_order: int
    depth: int


@dataclass
class FinalPoint:
    id: str
    path: str
    germ: str
    cls: SingularityClass
    curves: list[str]


@dataclass
class ResolutionForest:
    root: PlaneGerm
    stop: StopCriterion
    nodes: list[CenterNode] = field(default_factory=list)
    curves: list[ExceptionalCurve] = field(default_factory=list)
    points: list[FinalPoint] = field(default_factory=list)
    edges: list[tuple[str, str, int]] = field(default_factory=list)

    @property
    def blowups(self) -> int:
        return len(self.nodes)

    @property
    def depth(self) -> int:
        return max((n.depth + 1 for n in self.nodes), default=0)

    def curve(self, cid: str) -> ExceptionalCurve:
        return next(c for c in self.curves if c.id == cid)

    def gram(self) -> list[list[int]]:
        idx = {c.id: i for i, c in enumerate(self.curves)}
        n = len(self.curves)
        m = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.curves):
            m[i][i] = c.self_int
        for a, b, k in self.edges:
            m[idx[a]][idx[b]] += k
            m[idx[b]][idx[a]] += k
        return m

    def kg_via_indices(self) -> list[Fraction]:
        """K_G.E from local data: Z - chi for invariant curves, tang - E^2 otherwise."""
        out = []
        for c in self.curves:
            if c.invariant:
                out.append(Fraction(c.z_total - 2))
            else:
                out.append(Fraction(c.tang_total - c.self_int))
        return out

    def to_dual_graph(self):
        from .dualgraph import Annotation, CurveNode, DualGraph

        nodes = []
        for c in self.curves:
            cs = dict(c.cs_points)
            z = dict(c.z_points)
            ann = tuple(Annotation.from_class(p.point, p.cls, cs.get(p.point), z.get(p.point)) for p in c.singular_points)
            nodes.append(CurveNode(c.id, c.self_int, 0, c.invariant, c.z_total, ann, c.tang_total))
        return DualGraph(nodes, list(self.edges))

    def lattice(self):
        from .lattice import ExceptionalLattice

        return ExceptionalLattice(
            self.gram(),
            genus=[0] * len(self.curves),
            invariant=[c.invariant for c in self.curves],
            z_total=[c.z_total for c in self.curves],
            tang_total=[c.tang_total for c in self.curves],
        )


# --------------------------------------------------------------------------
# driver


@dataclass
class _Site:
    germ: PlaneGerm
    axes: dict  # "x": curve id of {x=0} or None, "y": likewise
    depth: int
    path: str


def _needs_blowup(cls: SingularityClass, stop: StopCriterion) -> bool:
    if cls.kind == "nonsingular":
        return False
    return not (cls.semi_reduced if stop == "semi-reduced" else cls.reduced)


def _fmt_point(a, b) -> str:
    return f"({a},{b})"


def seidenberg_reduce(
    v: PlaneGerm, max_depth: int = DEFAULT_MAX_DEPTH, stop: StopCriterion = "reduced"
) -> ResolutionForest:
    """Blow up non-reduced singular points over the origin until none is left."""
    if max_depth < 1:
        raise PreconditionFailed("max_depth must be at least 1")
    if stop not in ("reduced", "semi-reduced"):
        raise PreconditionFailed(f"unknown stop criterion {stop!r}")
    forest = ResolutionForest(v, stop)
    curves: dict[str, ExceptionalCurve] = {}
    queue = [_Site(v, {"x": None, "y": None}, 0, "")]
    while queue:
        site = queue.pop(0)
        cls = classify_at_origin(site.germ)
        through = [c for c in (site.axes["x"], site.axes["y"]) if c is not None]
        if not _needs_blowup(cls, stop):
            if through:
                _record_final(forest, curves, site, cls)
            continue
        if site.depth >= max_depth:
            raise DepthExhausted(
                f"no reduction within {max_depth} blowups", germ=str(site.germ), path=site.path or "root"
            )
        res = blow_up_origin(site.germ)
        s = res.chart1.saturation_order
        center_id = f"c{len(forest.nodes)}"
        cid = f"E{len(forest.curves) + 1}"
        forest.nodes.append(CenterNode(center_id, site.path or "root", str(site.germ), cls, through, s, site.depth))
        for c in through:
            curves[c].self_int -= 1
        curve = ExceptionalCurve(
            id=cid,
            center=center_id,
            self_int=-1,
            invariant=res.invariant,
            saturation_order=s,
            fol_discrepancy=1 - s + sum((curves[c].fol_discrepancy for c in through), Fraction(0)),
            ord_discrepancy=1 + sum((curves[c].ord_discrepancy for c in through), Fraction(0)),
        )
        curves[cid] = curve
        forest.curves.append(curve)
        queue.extend(_exceptional_sites(site, res, curve))
    _collect_edges(forest)
    return forest


def _exceptional_sites(site: _Site, res: BlowupResult, curve: ExceptionalCurve) -> list[_Site]:
    base = f"{site.path}/" if site.path else ""
    w1, w2 = res.chart1.germ, res.chart2.germ
    fe = w1.f.restrict_x0()  # normal component along E in chart 1
    ge = w1.g.restrict_x0()
    sing_poly = U.ugcd(fe, ge) if fe else U.monic(ge)
    rat_sing, rest = U.strip_rational_roots(sing_poly) if sing_poly else ([], ())
    if U.deg(rest) > 0:
        raise NonRationalCenter(
            "singular point of the exceptional curve at an irrational point",
            germ=str(w1),
            factor=U.to_str(rest, "y"),
        )
    centers = {c for c, _ in rat_sing}
    if site.axes["y"] is not None:
        centers.add(Fraction(0))
    if not curve.invariant:
        # tangency at points that are never revisited
        roots, rest_t = U.strip_rational_roots(fe)
        for c, k in roots:
            if c not in centers:
                curve.tangency_points.append((f"{base}1:{_fmt_point(0, c)}", k))
        if U.deg(rest_t) > 0:
            curve.tangency_points.append((None, U.deg(rest_t)))
    out = []
    for c in sorted(centers):
        axes = {"x": curve.id, "y": site.axes["y"] if c == 0 else None}
        out.append(_Site(w1.translate(0, c), axes, site.depth + 1, f"{base}1:{_fmt_point(0, c)}"))
    out.append(_Site(w2, {"x": site.axes["x"], "y": curve.id}, site.depth + 1, f"{base}2:{_fmt_point(0, 0)}"))
    return out


def _record_final(forest: ResolutionForest, curves: dict, site: _Site, cls: SingularityClass) -> None:
    pid = f"p{len(forest.points)}"
    members = []
    for axis in ("x", "y"):
        cid = site.axes[axis]
        if cid is None:
            continue
        members.append(cid)
        curve = curves[cid]
        v = site.germ
        normal = v.f.restrict_x0() if axis == "x" else v.g.restrict_y0()
        if bool(normal) == curve.invariant:
            raise ArithmeticError(f"invariance of {cid} inconsistent at {site.path}")
        if cls.kind != "nonsingular":
            curve.singular_points.append(SingularPoint(pid, cls))
        if curve.invariant:
            rec = axis_index(v, f"{axis}=0")
            curve.cs_points.append((pid, rec.cs))
            curve.z_points.append((pid, rec.z))
        else:
            k = U.order_at_zero(normal)
            if k:
                curve.tangency_points.append((pid, k))
    forest.points.append(FinalPoint(pid, site.path, str(site.germ), cls, members))


def _collect_edges(forest: ResolutionForest) -> None:
    order = {c.id: i for i, c in enumerate(forest.curves)}
    edges = {}
    for p in forest.points:
        if len(p.curves) == 2:
            a, b = sorted(p.curves, key=order.__getitem__)
            edges[(a, b)] = edges.get((a, b), 0) + 1
    forest.edges = [(a, b, k) for (a, b), k in sorted(edges.items(), key=lambda e: (order[e[0][0]], order[e[0][1]]))]


# --------------------------------------------------------------------------
# structure check for positive rational eigenvalues


@dataclass
class PosRatReport:
    clauses: dict[str, tuple[bool, str]]
    special_curve: str | None

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.clauses.values())

    def failed(self) -> list[str]:
        return [k for k, (ok, _) in self.clauses.items() if not ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "special_curve": self.special_curve,
            "clauses": {k: {"ok": ok, "detail": d} for k, (ok, d) in self.clauses.items()},
        }


def _path_order(forest: ResolutionForest) -> list[str] | None:
    """Curve ids in string order, or None when the support is not a string."""
    ids = [c.id for c in forest.curves]
    if not ids:
        return None
    adj: dict[str, list[str]] = {i: [] for i in ids}
    for a, b, k in forest.edges:
        if k != 1 or a == b:
            return None
        adj[a].append(b)
        adj[b].append(a)
    if len(forest.edges) != len(ids) - 1 or any(len(n) > 2 for n in adj.values()):
        return None
    ends = [i for i in ids if len(adj[i]) <= 1]
    order, prev = [ends[0]], None
    while len(order) < len(ids):
        nxt = [n for n in adj[order[-1]] if n != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def _is_fchain(forest: ResolutionForest, chain: list[str]) -> tuple[bool, str]:
    """chain[0] is the curve adjacent to the special curve."""
    for k, cid in enumerate(chain):
        c = forest.curve(cid)
        if not c.invariant:
            return False, f"{cid} not invariant"
        if c.self_int > -2:
            return False, f"{cid} has self-intersection {c.self_int}"
        want = 1 if k == 0 else 2
        if c.z_total != want:
            return False, f"{cid} has Z = {c.z_total}, expected {want}"
        for p in c.singular_points:
            if not (p.cls.reduced and p.cls.kind == "nondegenerate"):
                return False, f"{cid} carries a non-reduced or saddle-node point {p.point}"
    return True, "F-chain"


def verify_pos_rat_structure(forest: ResolutionForest) -> PosRatReport:
    cls = classify_at_origin(forest.root)
    if not (cls.kind == "nondegenerate" and cls.semi_reduced and is_positive_rational(cls.eigenvalue)):
        raise PreconditionFailed("root germ is not a semi-reduced point with positive rational eigenvalue")
    clauses: dict[str, tuple[bool, str]] = {}
    order = _path_order(forest)
    clauses["string"] = (order is not None, "path graph" if order else "support is not a string")
    nonin = [c for c in forest.curves if not c.invariant]
    special = nonin[0].id if len(nonin) == 1 else None
    if special is None:
        clauses["unique_non_invariant"] = (False, f"{len(nonin)} non-invariant curves")
    else:
        t = nonin[0].tang_total
        clauses["unique_non_invariant"] = (t == 0, f"{special} with tangency {t}")
    if order is None or special is None:
        clauses["flanks"] = (False, "requires clauses string and unique_non_invariant")
    else:
        j = order.index(special)
        left, right = order[:j][::-1], order[j + 1 :]
        msgs, ok = [], True
        for flank in (left, right):
            if flank:
                good, msg = _is_fchain(forest, flank)
                ok &= good
                msgs.append(msg)
        clauses["flanks"] = (ok, "; ".join(msgs) or "empty flanks")
    from .lattice import foliated_discrepancies

    disc = foliated_discrepancies(forest.lattice())
    want = [Fraction(-1) if c.id == special else Fraction(0) for c in forest.curves]
    hist = [c.fol_discrepancy for c in forest.curves]
    good = disc == want and disc == hist
    clauses["discrepancy"] = (good, "(" + ", ".join(str(a) for a in disc) + ")")
    return PosRatReport(clauses, special)
