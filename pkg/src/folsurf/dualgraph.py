"""Weighted dual graphs of exceptional curves: pattern tags, classification, chain propagation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .errors import MissingData, PreconditionFailed, SaddleNodePropagation, SchemaError
from .scalar import Scalar, is_positive_rational, scalar_from_json, scalar_to_json

# node tags
MINUS_ONE_F = "(-1)-F-curve"
MINUS_TWO_F = "(-2)-F-curve"
BAD_TAIL = "bad tail"
NONINV_TANG0 = "non-invariant tang 0"
INSUFFICIENT = "insufficient data"

# component tags
HJ_STRING = "HJ string"
F_CHAIN = "F-chain"
GEN_CHAIN = "generalized chain"
MINUS_TWO_CHAIN = "(-2)-chain"
STRING_VIOLATION = "-2string violation"
EGL_CANDIDATE = "EGL candidate"


@dataclass(frozen=True)
class Annotation:
    """Data attached to one singular point on a curve."""

    point: str
    kind: str | None = None  # nondegenerate | saddle_node | nilpotent
    reduced: bool | None = None
    eigenvalue: Scalar | None = None
    cs: Scalar | None = None
    z: int | None = None

    @classmethod
    def from_class(cls, point: str, sc, cs=None, z=None) -> "Annotation":
        return cls(point, sc.kind, sc.reduced, sc.eigenvalue, cs, z)

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "kind": self.kind,
            "reduced": self.reduced,
            "eigenvalue": scalar_to_json(self.eigenvalue),
            "cs": scalar_to_json(self.cs),
            "z": self.z,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Annotation":
        return cls(
            str(d["point"]),
            d.get("kind"),
            d.get("reduced"),
            scalar_from_json(d.get("eigenvalue")),
            scalar_from_json(d.get("cs")),
            d.get("z"),
        )

    @property
    def reduced_nondegenerate(self) -> bool | None:
        if self.reduced is None or self.kind is None:
            return None
        return self.reduced and self.kind == "nondegenerate"


@dataclass(frozen=True)
class CurveNode:
    id: str
    self_int: int
    genus: int = 0
    invariant: bool | None = True
    z_total: int | None = None
    annotations: tuple[Annotation, ...] = ()
    tang_total: int | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "self_int": self.self_int,
            "genus": self.genus,
            "invariant": self.invariant,
            "z_total": self.z_total,
            "tang_total": self.tang_total,
            "annotations": [a.to_json() for a in self.annotations],
        }

    @classmethod
    def from_json(cls, d: dict) -> "CurveNode":
        return cls(
            str(d["id"]),
            int(d["self_int"]),
            int(d.get("genus", 0)),
            d.get("invariant", True),
            d.get("z_total"),
            tuple(Annotation.from_json(a) for a in d.get("annotations", [])),
            d.get("tang_total"),
        )


@dataclass(frozen=True)
class DualGraph:
    nodes: list[CurveNode]
    edges: list[tuple[str, str, int]] = field(default_factory=list)

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise SchemaError("duplicate node ids")
        known = set(ids)
        for a, b, k in self.edges:
            if a not in known or b not in known:
                raise SchemaError(f"edge ({a}, {b}) references an unknown node")
            if k < 1:
                raise SchemaError("edge multiplicity must be at least 1")
            if k > 2:
                raise SchemaError(f"edge multiplicity {k} exceeds 2")

    def node(self, nid: str) -> CurveNode:
        return next(n for n in self.nodes if n.id == nid)

    def neighbours(self, nid: str) -> list[str]:
        out = []
        for a, b, k in self.edges:
            if a == nid and b != nid:
                out += [b] * k
            elif b == nid and a != nid:
                out += [a] * k
        return out

    def loops(self, nid: str) -> int:
        return sum(k for a, b, k in self.edges if a == b == nid)

    def components(self) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for n in self.nodes:
            if n.id in seen:
                continue
            comp, stack = [], [n.id]
            seen.add(n.id)
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for m in self.neighbours(cur):
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            order = {x.id: i for i, x in enumerate(self.nodes)}
            out.append(sorted(comp, key=order.__getitem__))
        return out

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [{"a": a, "b": b, "multiplicity": k} for a, b, k in self.edges],
        }

    @classmethod
    def from_json(cls, d: dict) -> "DualGraph":
        try:
            nodes = [CurveNode.from_json(n) for n in d["nodes"]]
            edges = [(str(e["a"]), str(e["b"]), int(e.get("multiplicity", 1))) for e in d.get("edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed graph JSON: {exc}") from None
        return cls(nodes, edges)


# --------------------------------------------------------------------------
# shapes


def _path_order(g: DualGraph, comp: list[str]) -> list[str] | None:
    """Nodes of a path component from one end, or None if not a path."""
    if any(g.loops(n) for n in comp):
        return None
    deg = {n: len(g.neighbours(n)) for n in comp}
    if any(d > 2 for d in deg.values()):
        return None
    if len(comp) == 1:
        return list(comp)
    ends = [n for n in comp if deg[n] == 1]
    if len(ends) != 2 or any(len(set(g.neighbours(n))) != deg[n] for n in comp):
        return None
    order, prev = [ends[0]], None
    while len(order) < len(comp):
        nxt = [m for m in g.neighbours(order[-1]) if m != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _is_cycle(g: DualGraph, comp: list[str]) -> bool:
    if len(comp) == 1:
        return False
    if any(g.loops(n) for n in comp):
        return False
    return all(len(g.neighbours(n)) == 2 for n in comp)


def _smooth_rational(g: DualGraph, n: CurveNode) -> bool:
    return n.genus == 0 and not g.loops(n.id)


# --------------------------------------------------------------------------
# node predicates; each returns True / False / None (unknown)


def _f_curve(g: DualGraph, n: CurveNode, z: int) -> bool | None:
    if n.invariant is None:
        return None
    if not n.invariant or not _smooth_rational(g, n):
        return False
    if n.z_total is None:
        return None
    return n.z_total == z


def _bad_tail(g: DualGraph, n: CurveNode) -> bool | None:
    base = _f_curve(g, n, 3)
    if not base:
        return base
    if n.self_int > -2:
        return False
    leaves = [m for m in g.neighbours(n.id) if g.node(m).self_int == -2 and _f_curve(g, g.node(m), 1)]
    return len(set(leaves)) >= 2


def _all_known(vals) -> bool | None:
    vals = list(vals)
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def _fchain(g: DualGraph, chain: list[str]) -> bool | None:
    """chain[0] carries Z = 1, the rest Z = 2."""
    checks = []
    for k, nid in enumerate(chain):
        n = g.node(nid)
        if n.self_int > -2:
            return False
        checks.append(_f_curve(g, n, 1 if k == 0 else 2))
        checks.extend(a.reduced_nondegenerate for a in n.annotations)
    return _all_known(checks)


def _hj_string(g: DualGraph, order: list[str]) -> bool:
    return all(g.node(n).self_int <= -2 and _smooth_rational(g, g.node(n)) for n in order)


def _nonreduced_count(g: DualGraph, order: list[str]) -> int:
    pts = {a.point for n in order for a in g.node(n).annotations if a.reduced is False}
    return len(pts)


# --------------------------------------------------------------------------
# detection and classification


@dataclass(frozen=True)
class ComponentClass:
    kind: Literal[
        "FChain",
        "TwoFCurvesBadTail",
        "MinusTwoChain",
        "GeneralizedChain",
        "NonInvariantTangZero",
        "AnType",
        "DnType",
        "EGL",
        "Unknown",
    ]
    via: str | None = None
    orientation: tuple[str, ...] | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "via": self.via,
            "orientation": None if self.orientation is None else list(self.orientation),
            "reason": self.reason,
        }


def _node_tags(g: DualGraph, n: CurveNode) -> list[str]:
    tags = []
    for pred, tag in ((_f_curve(g, n, 1), MINUS_ONE_F), (_f_curve(g, n, 2), MINUS_TWO_F), (_bad_tail(g, n), BAD_TAIL)):
        if pred:
            tags.append(tag)
    if n.invariant is False and _smooth_rational(g, n):
        if n.tang_total is None:
            tags.append(INSUFFICIENT)
        elif n.tang_total == 0:
            tags.append(NONINV_TANG0)
    if n.invariant is None or (n.invariant and n.z_total is None):
        if INSUFFICIENT not in tags:
            tags.append(INSUFFICIENT)
    return tags


def _generalized(g: DualGraph, order: list[str]) -> tuple[bool | None, tuple[str, ...] | None]:
    nonin = [n for n in order if g.node(n).invariant is False]
    if len(nonin) != 1 or any(g.node(n).invariant is None for n in order):
        return False, None
    j = order.index(nonin[0])
    t = g.node(nonin[0]).tang_total
    if t is None:
        return None, None
    if t != 0:
        return False, None
    checks = [_fchain(g, flank) for flank in (order[:j][::-1], order[j + 1 :]) if flank]
    return _all_known(checks), tuple(order)


def classify_component(g: DualGraph, comp: Sequence[str]) -> ComponentClass:
    comp = list(comp)
    nodes = [g.node(n) for n in comp]
    # e.g.l.: self-loop rational node, or a cycle of (-2)-F-curves
    if len(comp) == 1 and g.loops(comp[0]):
        n = nodes[0]
        if g.loops(n.id) == 1 and n.genus == 0 and n.invariant:
            return ComponentClass("EGL", "NodalRational")
        return ComponentClass("Unknown", reason="self-loop outside the nodal rational case")
    if _is_cycle(g, comp):
        checks = _all_known(_f_curve(g, n, 2) for n in nodes)
        if checks:
            return ComponentClass("EGL", "MinusTwoCycle")
        return ComponentClass("Unknown", reason=INSUFFICIENT if checks is None else "cycle is not of (-2)-F-curves")
    order = _path_order(g, comp)
    if order is not None:
        return _classify_path(g, order)
    return _classify_dn(g, comp)


def _classify_path(g: DualGraph, order: list[str]) -> ComponentClass:
    if not all(_smooth_rational(g, g.node(n)) for n in order):
        return ComponentClass("Unknown", reason="string contains a singular or irrational curve")
    if len(order) == 1:
        n = g.node(order[0])
        if n.invariant is False:
            if n.tang_total is None:
                return ComponentClass("Unknown", reason=INSUFFICIENT)
            if n.tang_total == 0 and not n.annotations:
                return ComponentClass("AnType", "NonInvariantTangZero", (n.id,))
            if n.tang_total == 0:
                return ComponentClass("Unknown", reason="non-invariant curve with singular annotations")
            return ComponentClass("Unknown", reason="non-invariant curve with positive tangency")
    unknown = False
    gen, orient = _generalized(g, order)
    if gen:
        return ComponentClass("AnType", "GeneralizedChain", orient)
    unknown |= gen is None
    if _hj_string(g, order):
        for o in (order, order[::-1]):
            fc = _fchain(g, o)
            if fc:
                return ComponentClass("AnType", "FChain", tuple(o))
            unknown |= fc is None
        m2 = _all_known(_f_curve(g, g.node(n), 2) for n in order)
        if m2:
            if _nonreduced_count(g, order) > 1:
                return ComponentClass("Unknown", reason=STRING_VIOLATION)
            return ComponentClass("AnType", "MinusTwoChain", tuple(order))
        unknown |= m2 is None
    if len(order) == 3:
        a, b, c = (g.node(n) for n in order)
        bt = _all_known([_bad_tail(g, b), _f_curve(g, a, 1), _f_curve(g, c, 1)])
        if bt and a.self_int == c.self_int == -2:
            return ComponentClass("AnType", "TwoFCurvesBadTail", tuple(order))
        unknown |= bt is None
    return ComponentClass("Unknown", reason=INSUFFICIENT if unknown else "no pattern matched")


def _classify_dn(g: DualGraph, comp: list[str]) -> ComponentClass:
    branch = [n for n in comp if len(g.neighbours(n)) >= 3]
    if len(branch) != 1 or len(g.neighbours(branch[0])) != 3:
        return ComponentClass("Unknown", reason="graph is neither a string, a cycle, nor a D-shaped tree")
    tail = branch[0]
    nbrs = g.neighbours(tail)
    leaves = [m for m in nbrs if len(g.neighbours(m)) == 1 and g.node(m).self_int == -2 and _f_curve(g, g.node(m), 1)]
    if len(set(leaves)) < 2 or not _bad_tail(g, g.node(tail)):
        unknown = _bad_tail(g, g.node(tail)) is None
        return ComponentClass("Unknown", reason=INSUFFICIENT if unknown else "no bad tail with two (-1)-F leaves")
    leaves = leaves[:2]
    rest = [n for n in comp if n != tail and n not in leaves]
    sub = DualGraph([g.node(n) for n in rest], [e for e in g.edges if e[0] in rest and e[1] in rest])
    order = _path_order(sub, rest) if rest else None
    if not order:
        return ComponentClass("Unknown", reason="bad tail does not connect to a chain")
    start = next(n for n in nbrs if n not in leaves)
    if order[0] != start:
        order = order[::-1]
    if order[0] != start:
        return ComponentClass("Unknown", reason="chain attaches to the bad tail at an interior curve")
    ok = _hj_string(g, order) and _all_known(_f_curve(g, g.node(n), 2) for n in order)
    if ok:
        return ComponentClass("DnType", "TwoFCurvesBadTail", tuple(leaves + [tail] + order))
    return ComponentClass("Unknown", reason="tail chain is not a chain of (-2)-F-curves")


@dataclass(frozen=True)
class PatternReport:
    node_tags: dict[str, list[str]]
    components: list[dict]

    def to_json(self) -> dict:
        return {"node_tags": self.node_tags, "components": self.components}


def detect_patterns(g: DualGraph) -> PatternReport:
    node_tags = {n.id: _node_tags(g, n) for n in g.nodes}
    comps = []
    for comp in g.components():
        tags = []
        order = _path_order(g, comp)
        if order is not None and _hj_string(g, order):
            tags.append(HJ_STRING)
            if _fchain(g, order) or _fchain(g, order[::-1]):
                tags.append(F_CHAIN)
            if _all_known(_f_curve(g, g.node(n), 2) for n in order):
                tags.append(MINUS_TWO_CHAIN)
                if _nonreduced_count(g, order) > 1:
                    tags.append(STRING_VIOLATION)
        if order is not None and _generalized(g, order)[0]:
            tags.append(GEN_CHAIN)
        if _is_cycle(g, comp) and _all_known(_f_curve(g, g.node(n), 2) for n in comp):
            tags.append(EGL_CANDIDATE)
        cls = classify_component(g, comp)
        comps.append({"nodes": comp, "tags": tags, "class": cls.to_json()})
    return PatternReport(node_tags, comps)


# --------------------------------------------------------------------------
# eigenvalue propagation along strings


@dataclass(frozen=True)
class ChainPropagation:
    """lambdas[k] is the CS index of E_{k+1} at its far singular point p_{k+1}."""

    selfs: tuple[int, ...]
    lambdas: tuple[Fraction, ...]
    boundary: str
    saddle_nodes: tuple[str, ...]
    non_reduced: tuple[str, ...]
    all_below_minus_one: bool

    def to_json(self) -> dict:
        return {
            "self_ints": list(self.selfs),
            "lambdas": [str(x) for x in self.lambdas],
            "boundary": self.boundary,
            "saddle_nodes": list(self.saddle_nodes),
            "non_reduced": list(self.non_reduced),
            "f_chain_certificate": self.all_below_minus_one,
        }


Boundary = Literal["one_singularity", "fchain", "given"]


def propagate_chain_eigenvalues(
    selfs: Sequence[int], boundary: Boundary = "one_singularity", lambda1=None
) -> ChainPropagation:
    """lambda_k = E_k^2 - 1/lambda_{k-1}, oriented from E_1.

    Boundaries: ``one_singularity`` (p_1 is a saddle-node, lambda_1 = 0 and
    lambda_2 = E_2^2), ``fchain`` (lambda_1 = E_1^2) or ``given`` (lambda_1 supplied).
    """
    selfs = tuple(int(s) for s in selfs)
    if not selfs:
        raise PreconditionFailed("empty chain")
    if any(s > -2 for s in selfs):
        raise PreconditionFailed("chain is not a Hirzebruch-Jung string")
    saddle = []
    if boundary == "one_singularity":
        lams = [Fraction(0)]
        saddle.append("p1")
        if len(selfs) > 1:
            lams.append(Fraction(selfs[1]))
        start = 2
    elif boundary == "fchain":
        lams, start = [Fraction(selfs[0])], 1
    elif boundary == "given":
        if lambda1 is None:
            raise PreconditionFailed("boundary 'given' needs lambda1")
        lams, start = [Fraction(lambda1)], 1
    else:
        raise PreconditionFailed(f"unknown boundary {boundary!r}")
    for k in range(start, len(selfs)):
        prev = lams[-1]
        if prev == 0:
            raise SaddleNodePropagation(f"p{k} is a saddle-node; propagation stops at E{k + 1}", index=k)
        lams.append(selfs[k] - 1 / prev)
    # Camacho-Sad re-summation on every interior curve
    for k in range(1, len(lams)):
        if lams[k - 1] != 0 and 1 / lams[k - 1] + lams[k] != selfs[k]:
            raise ArithmeticError("Camacho-Sad check failed")
    body = lams[1:] if boundary == "one_singularity" else lams
    non_reduced = tuple(f"p{k + 1}" for k, lam in enumerate(lams) if is_positive_rational(lam))
    return ChainPropagation(
        selfs, tuple(lams), boundary, tuple(saddle), non_reduced, all(lam < -1 for lam in body)
    )


# --------------------------------------------------------------------------
# elliptic Gorenstein leaf check


@dataclass(frozen=True)
class EglCheck:
    passed: bool
    failures: tuple[str, ...]
    missing: tuple[str, ...]
    cs_checked: bool

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "missing": list(self.missing),
            "cs_checked": self.cs_checked,
        }


def egl_singularity_check(g: DualGraph, comp: Sequence[str]) -> EglCheck:
    comp = list(comp)
    if not _is_cycle(g, comp) or not _all_known(_f_curve(g, g.node(n), 2) for n in comp):
        raise PreconditionFailed("component is not a cycle of (-2)-F-curves of length at least 2")
    failures, missing = [], []
    cs_full = True
    for nid in comp:
        n = g.node(nid)
        if not n.annotations:
            missing.append(nid)
            cs_full = False
            continue
        for a in n.annotations:
            rn = a.reduced_nondegenerate
            if rn is None:
                missing.append(f"{nid}:{a.point}")
            elif not rn:
                failures.append(f"{nid}:{a.point} is not reduced non-degenerate")
        if any(a.cs is None for a in n.annotations):
            cs_full = False
    if cs_full:
        for nid in comp:
            n = g.node(nid)
            total = sum((a.cs for a in n.annotations), Fraction(0))
            if total != n.self_int:
                failures.append(f"{nid}: Camacho-Sad sum {total} != {n.self_int}")
    return EglCheck(not failures and not missing, tuple(failures), tuple(missing), cs_full)


# --------------------------------------------------------------------------
# DOT export

_COLORS = {
    "FChain": "blue",
    "GeneralizedChain": "darkgreen",
    "NonInvariantTangZero": "darkgreen",
    "MinusTwoChain": "purple",
    "TwoFCurvesBadTail": "orange",
    "NodalRational": "red",
    "MinusTwoCycle": "red",
}


def to_dot(g: DualGraph) -> str:
    color = {}
    for comp in g.components():
        cls = classify_component(g, comp)
        for n in comp:
            color[n] = _COLORS.get(cls.via or "", "black")
    lines = ["graph dual {"]
    for n in g.nodes:
        style = "" if n.invariant is not False else ', style="dashed"'
        lines.append(f'  "{n.id}" [label="{n.id} ({n.self_int})", color="{color[n.id]}"{style}];')
    for a, b, k in g.edges:
        for _ in range(k):
            lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def require_complete(g: DualGraph) -> None:
    """Raise MissingData if any node lacks the data its invariance flag needs."""
    for n in g.nodes:
        if n.invariant is None:
            raise MissingData(f"invariance of {n.id} unknown")
        if n.invariant and n.z_total is None:
            raise MissingData(f"Z index of {n.id} missing")
        if not n.invariant and n.tang_total is None:
            raise MissingData(f"tangency order of {n.id} missing")
