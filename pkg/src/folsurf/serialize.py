"""Canonical JSON, DOT and text renderings of resolution forests."""

from __future__ import annotations

import json
from fractions import Fraction

from .blowup import ResolutionForest, verify_pos_rat_structure
from .errors import FolsurfError
from .germ import classify_at_origin
from .lattice import foliated_discrepancies, ordinary_discrepancies
from .scalar import is_positive_rational


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def frac(x) -> str:
    return str(Fraction(x))


def cs_audit(forest: ResolutionForest) -> dict:
    """Camacho-Sad sums against self-intersections, and K_G.E by two routes."""
    per_curve = {}
    ok = True
    for c in forest.curves:
        if c.invariant:
            good = c.cs_sum == c.self_int
            per_curve[c.id] = {"cs_sum": frac(c.cs_sum), "self_int": c.self_int, "ok": good}
            ok &= good
    lat = forest.lattice()
    fol = foliated_discrepancies(lat)
    via_solve = [sum((g * a for g, a in zip(row, fol)), Fraction(0)) for row in lat.gram]
    via_idx = forest.kg_via_indices()
    kg_ok = via_solve == via_idx
    return {
        "camacho_sad": {"ok": ok, "curves": per_curve},
        "kg_dot_e": {
            "ok": kg_ok,
            "via_indices": [frac(x) for x in via_idx],
            "via_discrepancy_solve": [frac(x) for x in via_solve],
        },
        "ok": ok and kg_ok,
    }


def forest_to_json(forest: ResolutionForest) -> dict:
    root_cls = classify_at_origin(forest.root)
    out = {
        "germ": str(forest.root),
        "stop": forest.stop,
        "classification": root_cls.to_json(),
        "blowups": forest.blowups,
        "depth": forest.depth,
        "centers": [
            {
                "id": n.id,
                "path": n.path,
                "germ": n.germ,
                "class": n.cls.to_json(),
                "curves_through": n.curves_through,
                "saturation_order": n.saturation_order,
                "depth": n.depth,
            }
            for n in forest.nodes
        ],
        "curves": [
            {
                "id": c.id,
                "center": c.center,
                "self_int": c.self_int,
                "invariant": c.invariant,
                "saturation_order": c.saturation_order,
                "z_total": c.z_total,
                "tang_total": c.tang_total,
                "singular_points": [p.point for p in c.singular_points],
                "cs": {p: frac(v) for p, v in c.cs_points},
                "z": {p: z for p, z in c.z_points},
                "tangency": [{"point": p, "order": k} for p, k in c.tangency_points],
            }
            for c in forest.curves
        ],
        "points": [
            {"id": p.id, "path": p.path, "germ": p.germ, "class": p.cls.to_json(), "curves": p.curves}
            for p in forest.points
        ],
        "edges": [{"a": a, "b": b, "multiplicity": k} for a, b, k in forest.edges],
    }
    if forest.curves:
        lat = forest.lattice()
        out["discrepancies"] = {
            "foliated": [frac(x) for x in foliated_discrepancies(lat)],
            "foliated_history": [frac(c.fol_discrepancy) for c in forest.curves],
            "ordinary": [frac(x) for x in ordinary_discrepancies(lat)],
            "ordinary_history": [frac(c.ord_discrepancy) for c in forest.curves],
        }
        out["audit"] = cs_audit(forest)
        out["dual_graph"] = forest.to_dual_graph().to_json()
        out["lattice"] = {
            "gram": lat.gram,
            "genus": lat.genus,
            "invariant": lat.invariant,
            "z_total": lat.z_total,
            "tang_total": lat.tang_total,
        }
    else:
        out["discrepancies"] = {"foliated": [], "foliated_history": [], "ordinary": [], "ordinary_history": []}
        out["audit"] = {"ok": True, "camacho_sad": {"ok": True, "curves": {}}, "kg_dot_e": {"ok": True}}
        out["dual_graph"] = {"nodes": [], "edges": []}
        out["lattice"] = {"gram": []}
    pos_rat = (
        root_cls.kind == "nondegenerate" and root_cls.semi_reduced and is_positive_rational(root_cls.eigenvalue)
    )
    if pos_rat and forest.stop == "reduced":
        try:
            out["pos_rat"] = verify_pos_rat_structure(forest).to_json()
        except FolsurfError as exc:
            out["pos_rat"] = {"ok": False, "error": exc.to_json()}
    return out


def forest_to_dot(forest: ResolutionForest) -> str:
    from .dualgraph import to_dot

    return to_dot(forest.to_dual_graph())


def forest_to_text(forest: ResolutionForest) -> str:
    d = forest_to_json(forest)
    lines = [
        f"germ: {d['germ']}",
        f"class: {d['classification']['kind']} (reduced={d['classification']['reduced']})",
        f"blowups: {d['blowups']}  depth: {d['depth']}",
    ]
    for c in d["curves"]:
        flag = "invariant" if c["invariant"] else f"non-invariant, tang {c['tang_total']}"
        lines.append(f"  {c['id']}: self {c['self_int']}, {flag}")
    for e in d["edges"]:
        lines.append(f"  {e['a']} -- {e['b']} x{e['multiplicity']}")
    disc = d["discrepancies"]
    lines.append("foliated discrepancies: (" + ", ".join(disc["foliated"]) + ")")
    lines.append("ordinary discrepancies: (" + ", ".join(disc["ordinary"]) + ")")
    lines.append(f"audit: {'pass' if d['audit']['ok'] else 'FAIL'}")
    if "pos_rat" in d:
        lines.append(f"positive rational structure: {'pass' if d['pos_rat']['ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def load_schema(name: str) -> dict:
    """Published JSON schema for a subcommand output or an input document."""
    from importlib.resources import files

    return json.loads(files("folsurf").joinpath("schemas", f"{name}.json").read_text(encoding="utf-8"))
