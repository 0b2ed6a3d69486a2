"""Command-line interface: ``folsurf <subcommand> ...``.

Exit codes: 0 on success, 1 on a domain error, 2 on malformed input. Errors are
reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .blowup import seidenberg_reduce
from .dualgraph import DualGraph, detect_patterns, propagate_chain_eigenvalues, to_dot
from .errors import FolsurfError, InputError, SchemaError
from .germ import classify_at_origin, parse_germ, parse_poly
from .lattice import (
    ExceptionalLattice,
    WeilDivisorData,
    epsilon_canonical_test,
    foliated_discrepancies,
    intersection_number,
    mumford_pullback,
    ordinary_discrepancies,
)
from .localindex import CoordinateAxis, CuspidalBranch, SmoothBranch, index_record, series_oracle_cs_z
from .numerics import InvariantSheet, effective_bounds, extract_invariants, hilbert_function
from .quotsing import generalized_chain_profile, hj_expand, quotient_foliation_charts
from .serialize import dumps, forest_to_dot, forest_to_json, forest_to_text, frac

Format = Literal["json", "dot", "text"]


@dataclass
class RunConfig:
    subcommand: str
    args: dict = field(default_factory=dict)
    format: Format = "json"
    stop: str = "reduced"
    max_depth: int = 64
    trunc: int = 32


# --------------------------------------------------------------------------
# input helpers


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", path=path) from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})", line=exc.lineno, column=exc.colno) from None


def _germ_text(arg: str) -> str:
    return _read_text("-") if arg == "-" else arg


def parse_branch(spec: str):
    spec = spec.strip()
    if spec in ("y=0", "x=0"):
        return CoordinateAxis(spec)
    kind, _, rest = spec.partition(":")
    if kind == "cusp":
        try:
            a, m, n = rest.split(",")
            return CuspidalBranch(_rational(a), int(m), int(n))
        except ValueError:
            raise InputError(f"cusp branch must be cusp:a,m,n, got {spec!r}") from None
    if kind == "smooth":
        return SmoothBranch(parse_poly(rest))
    raise InputError(f"unknown branch {spec!r}; use y=0, x=0, cusp:a,m,n or smooth:<poly>")


def _lattice_from_json(d: dict) -> ExceptionalLattice:
    if isinstance(d, dict) and "lattice" in d and "gram" not in d:
        d = d["lattice"]  # a forest produced by ``reduce``
    if not isinstance(d, dict) or "gram" not in d:
        raise SchemaError("lattice JSON needs a 'gram' matrix")
    try:
        gram = [[int(x) for x in row] for row in d["gram"]]
    except (TypeError, ValueError):
        raise SchemaError("gram entries must be integers") from None
    keys = ("genus", "invariant", "z_total", "tang_total", "chi", "nodal")
    return ExceptionalLattice(gram, **{k: d.get(k) for k in keys})


def _divisor_from_json(d) -> WeilDivisorData:
    if isinstance(d, list):
        d = {"b": d}
    if not isinstance(d, dict) or "b" not in d:
        raise SchemaError("divisor JSON needs 'b', the intersections with the exceptional curves")
    for x in d["b"]:
        if isinstance(x, float):
            raise SchemaError("divisor entries must be integers or 'p/q' strings")
    sp = d.get("self_pairing")
    return WeilDivisorData([_rational(str(x)) for x in d["b"]], None if sp is None else _rational(str(sp)))


# --------------------------------------------------------------------------
# subcommands


def cmd_reduce(cfg: RunConfig) -> tuple[str, int]:
    a = cfg.args
    if a.get("corpus"):
        germs = [ln.strip() for ln in _read_text(a["corpus"]).splitlines()]
        germs = [g for g in germs if g and not g.startswith("#")]
    elif a.get("germ"):
        germs = [_germ_text(a["germ"])]
    else:
        raise InputError("reduce needs a germ or --corpus")
    results, code = [], 0
    for text in germs:
        try:
            forest = seidenberg_reduce(parse_germ(text), cfg.max_depth, cfg.stop)
            results.append((text, forest, None))
        except FolsurfError as exc:
            if not a.get("corpus"):
                raise
            results.append((text, None, exc))
            code = max(code, 2 if isinstance(exc, InputError) else 1)
    if cfg.format == "dot":
        out = "".join(forest_to_dot(f) for _, f, e in results if f is not None)
    elif cfg.format == "text":
        out = "".join(
            forest_to_text(f) if f is not None else f"germ: {t}\nerror: {e.to_json()['error']}: {e.message}\n"
            for t, f, e in results
        )
    elif a.get("corpus"):
        out = dumps(
            {
                "results": [
                    {"input": t, "forest": forest_to_json(f)} if f is not None else {"input": t, "error": e.to_json()}
                    for t, f, e in results
                ]
            }
        )
    else:
        out = dumps(forest_to_json(results[0][1]))
    return out, code


def cmd_classify(cfg: RunConfig) -> tuple[str, int]:
    v = parse_germ(_germ_text(cfg.args["germ"]))
    cls = classify_at_origin(v)
    if cfg.format == "text":
        return f"{v}\n{cls.kind} reduced={cls.reduced} semi_reduced={cls.semi_reduced}\n", 0
    return dumps({"germ": str(v), "class": cls.to_json()}), 0


def cmd_indices(cfg: RunConfig) -> tuple[str, int]:
    v = parse_germ(_germ_text(cfg.args["germ"]))
    branch = parse_branch(cfg.args["branch"])
    rec = series_oracle_cs_z(v, branch, cfg.trunc) if cfg.args.get("oracle") else index_record(v, branch, cfg.trunc)
    if cfg.format == "text":
        return f"CS = {rec.cs}  Z = {rec.z}  ({rec.source})\n", 0
    return dumps({"germ": str(v), "branch": cfg.args["branch"], "index": rec.to_json()}), 0


def cmd_graph(cfg: RunConfig) -> tuple[str, int]:
    d = _read_json(cfg.args["graph"])
    if isinstance(d, dict) and "dual_graph" in d and "nodes" not in d:
        d = d["dual_graph"]  # a forest produced by ``reduce``
    g = DualGraph.from_json(d)
    if cfg.format == "dot":
        return to_dot(g), 0
    report = detect_patterns(g).to_json()
    boundary = cfg.args.get("boundary") or "one_singularity"
    lam1 = cfg.args.get("lambda1")
    lam1 = None if lam1 is None else _rational(lam1)
    props = []
    for comp in report["components"]:
        order = comp["class"].get("orientation") or comp["nodes"]
        selfs = [g.node(n).self_int for n in order]
        if len(order) != len(comp["nodes"]) or any(s > -2 for s in selfs) or "HJ string" not in comp["tags"]:
            continue
        try:
            props.append({"nodes": order, "propagation": propagate_chain_eigenvalues(selfs, boundary, lam1).to_json()})
        except FolsurfError as exc:
            props.append({"nodes": order, "error": exc.to_json()})
    report["propagation"] = props
    return dumps(report), 0


def cmd_pullback(cfg: RunConfig) -> tuple[str, int]:
    lat = _lattice_from_json(_read_json(cfg.args["lattice"]))
    out: dict = {"rank": lat.rank, "determinant": frac(lat.determinant())}
    if cfg.args.get("divisor"):
        d = _divisor_from_json(_read_json(cfg.args["divisor"]))
        a = mumford_pullback(lat, d)
        out["pullback"] = {"coefficients": [frac(x) for x in a]}
        if d.self_pairing is not None:
            out["pullback"]["self_intersection"] = frac(intersection_number(lat, d, d, d.self_pairing))
    disc: dict = {}
    try:
        disc["ordinary"] = [frac(x) for x in ordinary_discrepancies(lat)]
    except FolsurfError as exc:
        disc["ordinary_error"] = exc.to_json()
    if lat.invariant is not None:
        try:
            disc["foliated"] = [frac(x) for x in foliated_discrepancies(lat)]
        except FolsurfError as exc:
            disc["foliated_error"] = exc.to_json()
    out["discrepancies"] = disc
    eps = cfg.args.get("epsilon")
    if eps is not None:
        if "ordinary" not in disc or "foliated" not in disc:
            raise InputError("epsilon test needs both ordinary and foliated discrepancies")
        eps = _rational(eps)
        tests = [
            epsilon_canonical_test(Fraction(f), Fraction(o), eps).to_json()
            for f, o in zip(disc["foliated"], disc["ordinary"])
        ]
        out["epsilon_test"] = {"epsilon": frac(eps), "curves": tests, "passed": all(t["passed"] for t in tests)}
    return dumps(out), 0


def cmd_quot(cfg: RunConfig) -> tuple[str, int]:
    n, q = cfg.args["n"], cfg.args["q"]
    lam = cfg.args.get("lambda")
    if lam is not None and cfg.args.get("symbolic"):
        raise InputError("--lambda and --symbolic are exclusive")
    lam = None if lam is None else _rational(lam)
    charts = quotient_foliation_charts(n, q, lam)
    if cfg.format == "text":
        return "".join(c.text() + "\n" for c in charts.charts), 0
    out = {"hj": hj_expand(n, q).to_json(), **charts.to_json()}
    if lam is not None:
        graph, notes = generalized_chain_profile(n, q, lam)
        if cfg.format == "dot":
            return to_dot(graph), 0
        out["fragment"] = {"graph": graph.to_json(), "patterns": detect_patterns(graph).to_json(), "notes": notes}
    elif cfg.format == "dot":
        raise InputError("DOT output needs a numeric --lambda")
    return dumps(out), 0


def _sheet(cfg: RunConfig) -> InvariantSheet:
    d = _read_json(cfg.args["sheet"])
    if not isinstance(d, dict):
        raise SchemaError("sheet JSON must be an object")
    return InvariantSheet.from_json(d)


def cmd_rr(cfg: RunConfig) -> tuple[str, int]:
    sheet = _sheet(cfg)
    out: dict = {"sheet": sheet.to_json()}
    if cfg.args.get("extract"):
        d = _read_json(cfg.args["extract"])
        try:
            samples = {int(m): int(v) for m, v in d["samples"].items()}
            c2 = int(d.get("c2_hint", sheet.c2))
        except (KeyError, TypeError, ValueError, AttributeError):
            raise SchemaError("samples JSON needs {'samples': {m: P(m)}, 'c2_hint': k}") from None
        out["extraction"] = extract_invariants(samples, c2).to_json()
    ms = cfg.args.get("eval") or []
    if ms or not cfg.args.get("extract"):
        h = hilbert_function(sheet)
        out["values"] = {str(m): h(m) for m in (ms or [0, 1])}
    return dumps(out), 0


def cmd_bounds(cfg: RunConfig) -> tuple[str, int]:
    sheet = _sheet(cfg)
    delta = cfg.args.get("delta")
    b = effective_bounds(sheet, cfg.args.get("i_ky") or 1, None if delta is None else _rational(delta), cfg.args.get("i_g"))
    return dumps(b.to_json()), 0


COMMANDS = {
    "reduce": cmd_reduce,
    "classify": cmd_classify,
    "indices": cmd_indices,
    "graph": cmd_graph,
    "pullback": cmd_pullback,
    "quot": cmd_quot,
    "rr": cmd_rr,
    "bounds": cmd_bounds,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    if cfg.subcommand not in COMMANDS:
        raise InputError(f"unknown subcommand {cfg.subcommand!r}")
    if cfg.format not in ("json", "dot", "text"):
        raise InputError(f"unknown format {cfg.format!r}")
    return COMMANDS[cfg.subcommand](cfg)


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="folsurf", description="Exact computations for singular foliations on surfaces.")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    def common(sp, formats=("json",)):
        sp.add_argument("--format", choices=formats, default="json")

    sp = sub.add_parser("reduce", help="reduction of singularities by blowups")
    sp.add_argument("germ", nargs="?", help="vector field such as '2*x*dx+5*y*dy'; '-' reads stdin")
    sp.add_argument("--corpus", help="file with one germ per line")
    sp.add_argument("--stop", choices=("reduced", "semi-reduced"), default="reduced")
    sp.add_argument("--max-depth", type=int, default=64)
    common(sp, ("json", "dot", "text"))

    sp = sub.add_parser("classify", help="linear classification at the origin")
    sp.add_argument("germ")
    common(sp, ("json", "text"))

    sp = sub.add_parser("indices", help="Camacho-Sad and Z indices along a branch")
    sp.add_argument("germ")
    sp.add_argument("--branch", required=True, help="y=0 | x=0 | cusp:a,m,n | smooth:<poly>")
    sp.add_argument("--trunc", type=int, default=32)
    sp.add_argument("--oracle", action="store_true", help="force the power-series computation")
    common(sp, ("json", "text"))

    sp = sub.add_parser("graph", help="classify components of a dual graph")
    sp.add_argument("graph", help="dual graph JSON file")
    sp.add_argument("--boundary", choices=("one_singularity", "fchain", "given"))
    sp.add_argument("--lambda1")
    common(sp, ("json", "dot"))

    sp = sub.add_parser("pullback", help="Mumford pullback and discrepancies")
    sp.add_argument("lattice", help="lattice JSON file")
    sp.add_argument("--divisor", help="divisor JSON file")
    sp.add_argument("--epsilon")
    common(sp)

    sp = sub.add_parser("quot", help="cyclic quotient singularity 1/n(1,q)")
    sp.add_argument("n", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--symbolic", action="store_true")
    common(sp, ("json", "dot", "text"))

    sp = sub.add_parser("rr", help="Hilbert function values or invariant extraction")
    sp.add_argument("--sheet", required=True)
    sp.add_argument("--eval", type=int, action="append")
    sp.add_argument("--extract")
    common(sp)

    sp = sub.add_parser("bounds", help="effective bounds from an invariant sheet")
    sp.add_argument("--sheet", required=True)
    sp.add_argument("--i-ky", type=int, default=1)
    sp.add_argument("--delta")
    sp.add_argument("--i-g", type=int)
    common(sp)
    return p


def config_from_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.subcommand is None:
        raise InputError("missing subcommand; choose one of " + ", ".join(COMMANDS))
    args = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "format", "stop", "max_depth", "trunc")}
    if "lam" in args:
        args["lambda"] = args.pop("lam")
    return RunConfig(
        ns.subcommand,
        args,
        ns.format,
        getattr(ns, "stop", "reduced"),
        getattr(ns, "max_depth", 64),
        getattr(ns, "trunc", 32),
    )


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        out, code = run(config_from_args(argv))
    except FolsurfError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 2 if isinstance(exc, InputError) else 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
