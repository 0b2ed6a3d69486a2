"""Point blowups, the reduction driver and the positive-rational structure check."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import X, Y, polys, to_sympy
from folsurf.blowup import blow_up_origin, seidenberg_reduce, verify_pos_rat_structure
from folsurf.errors import DepthExhausted, NonRationalCenter, PreconditionFailed
from folsurf.germ import PlaneGerm, classify_at_origin, parse_germ
from folsurf.lattice import foliated_discrepancies, ordinary_discrepancies
from folsurf.linalg import is_negative_definite
from folsurf.poly import Poly


def euclid_steps(n: int, m: int) -> int:
    """Subtractive Euclid steps from (n, m) down to (1, 1)."""
    steps = 0
    while (n, m) != (1, 1):
        n, m = (n - m, m) if n > m else (n, m - n)
        steps += 1
    return steps


def diag(n, m) -> PlaneGerm:
    return parse_germ(f"{n}*x*dx + {m}*y*dy")


# --------------------------------------------------------------------------
# single blowups


def test_blowup_diagonal_charts():
    r = blow_up_origin(diag(2, 5))
    assert str(r.chart1.germ) == "2*x*dx + 3*y*dy"
    assert str(r.chart2.germ) == "-3*x*dx + 5*y*dy"
    assert r.invariant and r.chart1.saturation_order == 1


def test_blowup_radial_field_gives_noninvariant_exceptional_curve():
    r = blow_up_origin(diag(1, 1))
    assert not r.invariant
    assert classify_at_origin(r.chart1.germ).kind == "nonsingular"
    assert classify_at_origin(r.chart2.germ).kind == "nonsingular"
    f = seidenberg_reduce(diag(1, 1))
    assert f.curves[0].tang_total == 0


def test_blowup_saddle_charts():
    r = blow_up_origin(parse_germ("x*dx - y*dy"))
    assert r.invariant
    assert str(r.chart1.germ) == "x*dx - 2*y*dy"
    assert str(r.chart2.germ) == "2*x*dx - y*dy"
    assert classify_at_origin(r.chart1.germ).reduced and classify_at_origin(r.chart2.germ).reduced


def _push_forward(chart: int, w: PlaneGerm):
    """Components (dx, dy) of a chart field written in the original coordinates."""
    f, g = to_sympy(w.f), to_sympy(w.g)
    a, b = sympy.symbols("a b")
    if chart == 1:  # x = a, y = a*b
        fa, ga = f.subs({X: a, Y: b}, simultaneous=True), g.subs({X: a, Y: b}, simultaneous=True)
        dx, dy = fa, b * fa + a * ga
        back = {a: X, b: Y / X}
    else:  # x = a*b, y = b
        fa, ga = f.subs({X: a, Y: b}, simultaneous=True), g.subs({X: a, Y: b}, simultaneous=True)
        dx, dy = b * fa + a * ga, ga
        back = {a: X / Y, b: Y}
    return sympy.simplify(dx.subs(back, simultaneous=True)), sympy.simplify(dy.subs(back, simultaneous=True))


@given(polys(max_deg=3), polys(max_deg=3))
def test_chart_consistency_on_overlap(f, g):
    f = Poly({e: c for e, c in f.terms().items() if sum(e) >= 1})
    g = Poly({e: c for e, c in g.terms().items() if sum(e) >= 1})
    assume(f or g)
    v = PlaneGerm.make(f, g)
    assume(v.is_singular_at_origin())
    r = blow_up_origin(v)
    vf, vg = to_sympy(v.f), to_sympy(v.g)
    for chart, cg in ((1, r.chart1), (2, r.chart2)):
        dx, dy = _push_forward(chart, cg.germ)
        assert sympy.simplify(dx * vg - dy * vf) == 0
        # the chart field is saturated: no common factor left
        assert sympy.gcd(to_sympy(cg.germ.f), to_sympy(cg.germ.g)).free_symbols == set()


# --------------------------------------------------------------------------
# reduction driver


def test_reduced_germ_needs_no_blowup():
    assert seidenberg_reduce(parse_germ("x*dx - 3/2*y*dy")).blowups == 0


def test_three_two_needs_three_blowups():
    f = seidenberg_reduce(diag(3, 2))
    assert f.blowups == 3 == 1 + euclid_steps(3, 2)


def test_five_two_follows_euclid_trace():
    # (5,2) -> (3,2) -> (1,2) -> (1,1): three subtractive steps, then the final split
    assert euclid_steps(5, 2) == 3
    assert seidenberg_reduce(diag(5, 2)).blowups == 4


def test_depth_exhausted_is_reported():
    with pytest.raises(DepthExhausted) as exc:
        seidenberg_reduce(diag(2, 5), max_depth=2)
    assert "germ" in exc.value.details


def test_semi_reduced_stop_criterion():
    assert seidenberg_reduce(diag(2, 5), stop="semi-reduced").blowups == 0
    with pytest.raises(PreconditionFailed):
        seidenberg_reduce(diag(2, 5), stop="bogus")
    with pytest.raises(PreconditionFailed):
        seidenberg_reduce(diag(2, 5), max_depth=0)


def test_irrational_center_aborts():
    with pytest.raises(NonRationalCenter):
        seidenberg_reduce(parse_germ("(x^3 - y^2)*dx + x*y*dy"))


GRID = [(n, m) for m in range(1, 13) for n in range(1, m + 1) if gcd(n, m) == 1]


@pytest.mark.parametrize("n,m", GRID)
def test_diagonal_grid_structure(n, m):
    f = seidenberg_reduce(diag(n, m))
    assert f.blowups == 1 + euclid_steps(n, m)
    report = verify_pos_rat_structure(f)
    assert report.ok, report.failed()
    # the unique non-invariant curve is the last one created; flanks have self <= -2
    assert report.special_curve == f.curves[-1].id
    assert all(c.self_int <= -2 for c in f.curves[:-1])


GERMS = [
    "x^2*dx + y^2*dy",
    "y*dx + x^2*dy",
    "2*y*dx + 3*x^2*dy",
    "y^2*dx + x^3*dy",
    "x^3*dx + y^3*dy",
    "(2*x*y)*dx + (y^2 - x^3)*dy",
    "x*dx + 2*(y + x^2)*dy",
    "x*dx + y*dy + x^2*dy",
    "x*(x - 2*y)*dx + y*(y - 3*x)*dy",
] + [f"{n}*x*dx + {m}*y*dy" for n, m in GRID]


@pytest.mark.parametrize("text", GERMS)
def test_forest_bookkeeping(text):
    f = seidenberg_reduce(parse_germ(text))
    # self-intersection = -1 - number of later centers on the curve
    later = {c.id: 0 for c in f.curves}
    for node in f.nodes:
        for cid in node.curves_through:
            later[cid] += 1
    assert all(c.self_int == -1 - later[c.id] for c in f.curves)
    assert is_negative_definite(f.gram())
    # every final point is reduced
    assert all(p.cls.kind == "nonsingular" or p.cls.reduced for p in f.points)
    # Camacho-Sad formula on invariant curves, and K_G.E two ways
    for c in f.curves:
        if c.invariant:
            assert c.cs_sum == c.self_int
    lat = f.lattice()
    disc = foliated_discrepancies(lat)
    assert disc == [c.fol_discrepancy for c in f.curves]
    assert ordinary_discrepancies(lat) == [c.ord_discrepancy for c in f.curves]
    gd = [sum((g * a for g, a in zip(row, disc)), Fraction(0)) for row in lat.gram]
    assert gd == f.kg_via_indices()


def test_pos_rat_base_case():
    f = seidenberg_reduce(diag(1, 1))
    r = verify_pos_rat_structure(f)
    assert r.ok and r.special_curve == "E1"
    assert f.curves[0].fol_discrepancy == -1


def test_pos_rat_rejects_reduced_root():
    f = seidenberg_reduce(parse_germ("x*dx - y*dy"))
    with pytest.raises(PreconditionFailed):
        verify_pos_rat_structure(f)


def test_two_five_forest_shape():
    f = seidenberg_reduce(diag(2, 5))
    assert [c.self_int for c in f.curves] == [-2, -3, -2, -1]
    assert [c.invariant for c in f.curves] == [True, True, True, False]
    assert [c.fol_discrepancy for c in f.curves] == [0, 0, 0, -1]


def test_reduction_is_deterministic():
    from folsurf.serialize import dumps, forest_to_json

    a = dumps(forest_to_json(seidenberg_reduce(diag(5, 7))))
    b = dumps(forest_to_json(seidenberg_reduce(diag(5, 7))))
    assert a == b
