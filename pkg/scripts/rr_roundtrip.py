"""Generate random invariant sheets, sample P(m), and recover the invariants."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from folsurf.numerics import extract_invariants, random_consistent_sheet, sheet_samples


@dataclass
class RoundtripConfig:
    count: int = 200
    seed: int = 0
    max_sings: int = 5
    max_n: int = 9


def run(cfg: RoundtripConfig) -> tuple[int, int]:
    rng = random.Random(cfg.seed)
    exact = 0
    for _ in range(cfg.count):
        sheet = random_consistent_sheet(rng, cfg.max_sings, cfg.max_n)
        e = extract_invariants(sheet_samples(sheet), sheet.c2)
        cusps = sum(1 for s in sheet.sings if s.name == "cusp")
        exact += (e.B1, e.B2, e.B3, e.B4) == (sheet.KF2, sheet.KFKX, sheet.chiO, cusps)
    return exact, cfg.count


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=RoundtripConfig.count)
    p.add_argument("--seed", type=int, default=RoundtripConfig.seed)
    a = p.parse_args()
    exact, total = run(RoundtripConfig(count=a.count, seed=a.seed))
    print(f"exact recovery: {exact}/{total}")


if __name__ == "__main__":
    main()
