"""Sweep n x d/dx + m y d/dy over coprime pairs and tabulate the reductions."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from math import gcd

from folsurf.blowup import seidenberg_reduce, verify_pos_rat_structure
from folsurf.germ import parse_germ


@dataclass
class SweepConfig:
    max_m: int = 12
    max_depth: int = 64


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for m in range(1, cfg.max_m + 1):
        for n in range(1, m + 1):
            if gcd(n, m) != 1:
                continue
            start = time.perf_counter()
            forest = seidenberg_reduce(parse_germ(f"{n}*x*dx + {m}*y*dy"), cfg.max_depth)
            report = verify_pos_rat_structure(forest)
            rows.append(
                {
                    "n": n,
                    "m": m,
                    "blowups": forest.blowups,
                    "self_ints": [c.self_int for c in forest.curves],
                    "special_curve": report.special_curve,
                    "ok": report.ok,
                    "seconds": round(time.perf_counter() - start, 4),
                }
            )
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-m", type=int, default=SweepConfig.max_m)
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = p.parse_args()
    cfg = SweepConfig(max_m=args.max_m)
    rows = sweep(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"{'n':>3} {'m':>3} {'blowups':>7}  ok    self-intersections")
    for r in rows:
        print(f"{r['n']:>3} {r['m']:>3} {r['blowups']:>7}  {str(r['ok']):5} {r['self_ints']}")
    print(f"{sum(r['ok'] for r in rows)}/{len(rows)} pass")


if __name__ == "__main__":
    main()
