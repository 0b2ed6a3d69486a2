"""Tabulate cyclic quotient singularities 1/n(1,q): chains and non-invariance values."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from math import gcd

from folsurf.lattice import chain_lattice, ordinary_discrepancies
from folsurf.quotsing import hj_expand, noninvariance_values


@dataclass
class TableConfig:
    max_n: int = 12


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=TableConfig.max_n)
    cfg = TableConfig(max_n=p.parse_args().max_n)
    print(f"{'n':>3} {'q':>3}  {'resolution':<16} {'edim':<16} {'discrepancies':<28} lambda_j")
    for n in range(2, cfg.max_n + 1):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            hj = hj_expand(n, q)
            disc = ordinary_discrepancies(chain_lattice([-b for b in hj.res_chain]))
            lam = noninvariance_values(n, q)
            print(
                f"{n:>3} {q:>3}  {str(hj.res_chain):<16} {str(hj.edim_chain):<16} "
                f"{str([str(a) for a in disc]):<28} {[str(v) for v in lam]}"
            )


if __name__ == "__main__":
    main()
