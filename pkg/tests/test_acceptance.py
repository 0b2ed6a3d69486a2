"""Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import hashlib
import os
import random
import subprocess
import sys
import tempfile
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from folsurf.blowup import seidenberg_reduce, verify_pos_rat_structure
from folsurf.dualgraph import propagate_chain_eigenvalues
from folsurf.germ import parse_germ
from folsurf.lattice import (
    WeilDivisorData,
    chain_lattice,
    epsilon_canonical_test,
    foliated_discrepancies,
    mumford_pullback,
)
from folsurf.linalg import is_negative_definite
from folsurf.localindex import CoordinateAxis, CuspidalBranch, closed_form_index, series_oracle_cs_z
from folsurf.numerics import (
    CARTIER,
    CUSP,
    GORENSTEIN,
    MILD,
    TWO_GORENSTEIN,
    InvariantSheet,
    extract_invariants,
    hilbert_function,
    local_contribution,
    random_consistent_sheet,
    sheet_samples,
    terminal,
)
from folsurf.quotsing import hj_expand, quotient_foliation_charts

F = Fraction
SUITE = [(n, m) for m in range(1, 13) for n in range(1, m + 1) if gcd(n, m) == 1]


def report(number: int, ok: bool, what: str, capsys=None) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {what}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def euclid_steps(n: int, m: int) -> int:
    steps = 0
    while (n, m) != (1, 1):
        n, m = (n - m, m) if n > m else (n, m - n)
        steps += 1
    return steps


def _forests():
    return {(n, m): seidenberg_reduce(parse_germ(f"{n}*x*dx + {m}*y*dy")) for n, m in SUITE}


# --------------------------------------------------------------------------
# criteria


def criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    bad = []
    for n, m in SUITE:
        forest = seidenberg_reduce(parse_germ(f"{n}*x*dx + {m}*y*dy"))
        r = verify_pos_rat_structure(forest)
        if not r.ok or forest.blowups != 1 + euclid_steps(n, m):
            bad.append((n, m))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    return ok, f"positive-rational suite over {len(SUITE)} pairs, {elapsed:.2f} s, failures {bad}"


def criterion_2() -> tuple[bool, str]:
    charts = quotient_foliation_charts(7, 4).charts
    forms = [(c.xi_form, c.eta_form) for c in charts]
    want_forms = [((-4, 1), (7, 0)), ((-1, 2), (4, -1)), ((0, 7), (1, -2))]
    texts = [c.text() for c in charts]
    want_texts = [
        "(lambda - 4)*xi0*d/dxi0 + 7*eta0*d/deta0",
        "(2*lambda - 1)*xi1*d/dxi1 + (4 - lambda)*eta1*d/deta1",
        "7*lambda*xi2*d/dxi2 + (1 - 2*lambda)*eta2*d/deta2",
    ]
    inv4 = quotient_foliation_charts(7, 4, 4).invariant
    inv_half = quotient_foliation_charts(7, 4, F(1, 2)).invariant
    ok = forms == want_forms and texts == want_texts and inv4 == [False, True] and inv_half == [True, False]
    return ok, "1/7(1,4) chart fields and non-invariance at lambda = 4 and 1/2"


def criterion_3() -> tuple[bool, str]:
    bad = []
    for key, forest in _forests().items():
        for c in forest.curves:
            if c.invariant and c.cs_sum != c.self_int:
                bad.append((key, c.id))
        lat = forest.lattice()
        disc = foliated_discrepancies(lat)
        via_solve = [sum((g * a for g, a in zip(row, disc)), F(0)) for row in lat.gram]
        if via_solve != forest.kg_via_indices():
            bad.append((key, "K_G.E"))
    return not bad, f"Camacho-Sad sums and K_G.E two ways, failures {bad}"


def criterion_4() -> tuple[bool, str]:
    bad, count = [], 0
    for m in range(1, 8):
        for n in range(1, 8):
            if gcd(m, n) != 1:
                continue
            v = parse_germ(f"{n}*x*dx + {m}*y*dy")
            branches = [CoordinateAxis("y=0"), CoordinateAxis("x=0")]
            if min(m, n) >= 2:
                branches.append(CuspidalBranch(F(1), m, n))
            for b in branches:
                c, o = closed_form_index(v, b), series_oracle_cs_z(v, b)
                count += 1
                if (c.cs, c.z) != (o.cs, o.z):
                    bad.append((m, n, b))
    return not bad, f"series oracle = closed form on {count} branches, failures {bad}"


def criterion_5() -> tuple[bool, str]:
    bad = []
    for length in range(1, 11):
        selfs = [-2] * length
        lam = propagate_chain_eigenvalues(selfs, "one_singularity").lambdas
        if lam[0] != 0:
            bad.append((length, 1))
        if length >= 2 and lam[1] != selfs[1]:
            bad.append((length, 2))
        for k in range(2, length + 1):
            if lam[k - 1] != F(-k, k - 1):
                bad.append((length, k))
            if k >= 3 and 1 / lam[k - 2] + lam[k - 1] != selfs[k - 1]:
                bad.append((length, k, "recursion"))
    return not bad, f"(-2)-chains up to length 10 give -k/(k-1), failures {bad}"


def criterion_6() -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(2, 51):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            count += 1
            lat = chain_lattice([-b for b in hj_expand(n, q).res_chain])
            if not is_negative_definite(lat.gram) or abs(lat.determinant()) != n:
                bad.append((n, q))
                continue
            for i in range(lat.rank):
                b = [0] * lat.rank
                b[i] = 1
                if any(n % a.denominator for a in mumford_pullback(lat, WeilDivisorData(b))):
                    bad.append((n, q, i))
    a1 = mumford_pullback(chain_lattice([-2]), WeilDivisorData([F(1)]))
    ok = not bad and a1 == [F(1, 2)]
    return ok, f"{count} Hirzebruch-Jung lattices, A1 coefficient {a1[0]}, failures {bad}"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7)
    bad = []
    for i in range(200):
        sheet = random_consistent_sheet(rng)
        e = extract_invariants(sheet_samples(sheet), sheet.c2)
        cusps = sum(1 for s in sheet.sings if s.name == "cusp")
        if (e.B1, e.B2, e.B3, e.B4) != (sheet.KF2, sheet.KFKX, sheet.chiO, cusps):
            bad.append(i)
        h = hilbert_function(sheet)
        hc = hilbert_function(InvariantSheet(sheet.KF2, sheet.KFKX, sheet.chiO, sheet.sings + (CUSP,)))
        if any(hc(m) != h(m) - 1 for m in sheet_samples(sheet) if m >= 1):
            bad.append((i, "cusp"))
    return not bad, f"200 random sheets round-trip, failures {bad}"


def criterion_8() -> tuple[bool, str]:
    ms = range(0, 13)
    ok = all(local_contribution(k, m) == 0 for k in (CARTIER, MILD, GORENSTEIN) for m in ms)
    ok &= all(local_contribution(TWO_GORENSTEIN, m) == (F(-1, 2) if m % 2 else 0) for m in ms)
    ok &= all(local_contribution(CUSP, m) == (-1 if m else 0) for m in ms)
    for n in range(2, 10):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            t = terminal(n, q)
            ok &= local_contribution(t, 1) == F(1 - n, 2 * n)
            ok &= all(local_contribution(t, k * n) == 0 for k in range(4))
    return ok, "local contribution table, five kinds"


def criterion_9() -> tuple[bool, str]:
    ok = True
    for d in range(1, 21):
        t = F(1, 1 + d)
        r = epsilon_canonical_test(-1, d, t)
        ok &= r.threshold == t and r.passed and r.value == 0
        ok &= not epsilon_canonical_test(-1, d, t * F(99, 100)).passed
    for eps in (F(0), F(1, 1000), F(1, 4), F(1, 2), F(1)):
        ok &= epsilon_canonical_test(0, 0, eps).passed
    return ok, "threshold 1/(1+d) for d = 1..20 and the all-zero case"


CLI_SUITE = [
    ["reduce", "2*x*dx+5*y*dy"],
    ["reduce", "5*x*dx+7*y*dy", "--format", "text"],
    ["reduce", "x^2*dx + y^2*dy", "--format", "dot"],
    ["reduce", "(2*x*y)*dx + (y^2 - x^3)*dy"],
    ["classify", "x*dx - y*dy"],
    ["classify", "(x + y)*dx + (-x + y)*dy"],
    ["indices", "2*x*dx+3*y*dy", "--branch", "cusp:1,3,2"],
    ["indices", "x*dx + y^2*dy", "--branch", "x=0"],
    ["quot", "7", "4", "--symbolic"],
    ["quot", "7", "4", "--lambda", "3"],
    ["quot", "19", "7", "--lambda", "1/2", "--format", "dot"],
    ["reduce", "x*dq"],
]


def _cli_suite_digest(workdir: Path, seed: str) -> str:
    # relative file names keep the two runs' argv identical
    forest, sheet = "forest.json", "sheet.json"
    env = dict(os.environ, PYTHONHASHSEED=seed)
    cmd = [sys.executable, "-m", "folsurf.cli"]
    h = hashlib.sha256()

    def call(argv):
        p = subprocess.run(cmd + argv, capture_output=True, env=env, cwd=workdir, check=False)
        h.update(repr(argv).encode() + p.stdout + p.stderr + bytes([p.returncode]))
        return p.stdout

    for argv in CLI_SUITE:
        call(argv)
    (workdir / forest).write_bytes(call(["reduce", "3*x*dx+7*y*dy"]))
    call(["graph", forest])
    call(["pullback", forest, "--epsilon", "1/8"])
    (workdir / sheet).write_text(
        '{"KF2": "2", "KFKX": "1/3", "chiO": 1, "indices": {"i_F": 3, "i_Q": 3},'
        ' "singularities": [{"kind": "cusp"}, {"kind": "terminal", "n": 3, "q": 1},'
        ' {"kind": "two_gorenstein_canonical"}]}'
    )
    call(["rr", "--sheet", sheet, "--eval", "1", "--eval", "720"])
    call(["bounds", "--sheet", sheet])
    return h.hexdigest()


def criterion_10() -> tuple[bool, str]:
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        d1 = _cli_suite_digest(Path(a), "1")
        d2 = _cli_suite_digest(Path(b), "2")
    return d1 == d2, f"two CLI suite runs, digests {d1[:12]} / {d2[:12]}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, what = CRITERIA[number - 1]()
    report(number, ok, what, capsys)
    assert ok, what


if __name__ == "__main__":
    results = []
    for i, crit in enumerate(CRITERIA, 1):
        ok, what = crit()
        report(i, ok, what)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
