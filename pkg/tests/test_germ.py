"""Germ parsing, saturation, linear classification and parameter families."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import X, Y, nonzero_fracs, polys, small_fracs, to_sympy
from folsurf.errors import DegreeCapExceeded, DegenerateFamily, ParseError, ZeroFieldError
from folsurf.germ import (
    PlaneGerm,
    classify_at_origin,
    eigenvalue_function,
    parse_germ,
    parse_param_germ,
    parse_poly,
    singular_points_rational,
)
from folsurf.poly import Poly
from folsurf.ratfunc import RatFunc
from folsurf.scalar import QuadraticIrrational

F = Fraction


def P(text):
    return parse_poly(text)


# --------------------------------------------------------------------------
# parsing


@pytest.mark.parametrize(
    "text,f,g",
    [
        ("x*dx + 4*y*dy", "x", "4*y"),
        ("2*x*dx + 5*y*dy", "2*x", "5*y"),
        ("x*(x*dx + y*dy)", "x", "y"),
        ("(x^2 - x)*dx + y*dy", "x^2 - x", "y"),
        ("dx", "1", "0"),
        ("1/2*x*dx - 3/4*y^2*dy", "1/2*x", "-3/4*y^2"),
        ("x*dx + x*y*dx - y*dy", "x + x*y", "-y"),
    ],
)
def test_parse_literals(text, f, g):
    v = parse_germ(text)
    assert (v.f, v.g) == (P(f), P(g))


def test_saturation_divides_common_factor():
    v = parse_germ("(x + y)*(x*dx - y*dy) + (x + y)^2*x*dy")
    w = parse_germ("x*dx - y*dy + (x + y)*x*dy")
    assert (v.f, v.g) == (w.f, w.g)


@pytest.mark.parametrize(
    "text,offset",
    [("x*dx +", 6), ("x*dx + * y*dy", 7), ("x*dq", 2), ("x*dx/y", 5), ("(x*dx", 5), ("x*dx*dy", 5)],
)
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_germ(text)
    assert exc.value.offset == offset


def test_parse_error_offset_counts_utf8_bytes():
    with pytest.raises(ParseError) as exc:
        parse_germ("x*dx +\u00a0?")  # non-breaking space is two bytes
    assert exc.value.offset == 8


def test_zero_field_rejected():
    with pytest.raises(ZeroFieldError):
        parse_germ("0*dx + x*dy - x*dy")


@given(polys(), polys())
def test_print_parse_roundtrip(f, g):
    assume(f or g)
    v = PlaneGerm.make(f, g)
    w = parse_germ(str(v))
    assert (w.f, w.g) == (v.f, v.g)
    assert str(w) == str(v)


@given(polys(), polys(), polys(max_deg=1, max_terms=2))
def test_saturation_against_sympy_gcd(f, g, h):
    assume((f or g) and h)
    v = PlaneGerm.make(f * h, g * h)
    assert sympy.gcd(to_sympy(v.f), to_sympy(v.g)).free_symbols == set()


# --------------------------------------------------------------------------
# classification


def test_classify_spec_examples():
    c = classify_at_origin(parse_germ("x*dx + 4*y*dy"))
    assert c.kind == "nondegenerate" and c.semi_reduced and not c.reduced
    assert c.eigen_pair == (F(1, 4), F(4))
    c = classify_at_origin(parse_germ("x*dx - y*dy"))
    assert c.reduced and c.eigen_pair == (F(-1), F(-1))
    c = classify_at_origin(parse_germ("x*dx + y^2*dy"))
    assert c.kind == "saddle_node" and c.reduced and c.eigen_pair == (0, None)
    c = classify_at_origin(parse_germ("(x + y)*dx + (-x + y)*dy"))
    assert c.kind == "nondegenerate" and c.nonreal and c.reduced and c.eigen_pair is None
    assert c.ratio_sum == 0  # (1+i)/(1-i) + (1-i)/(1+i) = i - i


def test_classify_irrational_ratio_and_nilpotent():
    c = classify_at_origin(parse_germ("(x + y)*dx + x*dy"))  # eigenvalues (1 +- sqrt 5)/2
    assert c.reduced and isinstance(c.eigenvalue, QuadraticIrrational) and c.eigenvalue.d == 5
    assert classify_at_origin(parse_germ("y*dx + x^2*dy")).kind == "nilpotent"
    assert classify_at_origin(parse_germ("x^2*dx + y^2*dy")).kind == "nilpotent"
    n = classify_at_origin(parse_germ("dx + x*dy"))
    assert n.kind == "nonsingular" and not n.reduced and not n.semi_reduced


def test_classify_trace_zero_gives_minus_one():
    c = classify_at_origin(parse_germ("y*dx + x*dy"))  # eigenvalues +-1
    assert c.eigen_pair == (F(-1), F(-1)) and c.reduced


def _sym_eigen_ratio(v: PlaneGerm):
    (a, b), (c, d) = v.linear_part()
    m = sympy.Matrix([[a, b], [c, d]]).applyfunc(lambda q: sympy.Rational(q.numerator, q.denominator))
    return list(m.eigenvals(multiple=True))


@given(nonzero_fracs, nonzero_fracs, small_fracs, small_fracs)
def test_classification_matches_sympy_eigenvalues(a, d, b, c):
    v = PlaneGerm.make(Poly({(1, 0): a, (0, 1): b, (2, 0): F(1)}), Poly({(1, 0): c, (0, 1): d}))
    cls = classify_at_origin(v)
    e1, e2 = _sym_eigen_ratio(v)
    if e1 == 0 or e2 == 0:
        assert cls.kind == "saddle_node" if e1 + e2 != 0 else cls.kind == "nilpotent"
        return
    ratio = sympy.nsimplify(sympy.simplify(e1 / e2))
    if not ratio.is_real:
        assert cls.nonreal and cls.reduced
        return
    lam = cls.eigenvalue
    lam_sym = lam if isinstance(lam, Fraction) else lam.a + lam.b * sympy.sqrt(lam.d)
    lam_sym = sympy.Rational(lam_sym.numerator, lam_sym.denominator) if isinstance(lam_sym, Fraction) else lam_sym
    assert sympy.simplify(lam_sym - ratio) == 0 or sympy.simplify(lam_sym - 1 / ratio) == 0
    assert cls.reduced == (not (ratio.is_rational and ratio > 0))


_SMALL_GL2 = [
    [[p, q], [r, s]]
    for p in range(-2, 3)
    for q in range(-2, 3)
    for r in range(-2, 3)
    for s in range(-2, 3)
    if p * s - q * r
]
invertible = lambda: st.sampled_from(_SMALL_GL2)


def _conjugate(v: PlaneGerm, m) -> PlaneGerm:
    """Pull v back along (x, y) = M (x', y')."""
    (p, q), (r, s) = m
    x, y = Poly.x(), Poly.y()
    xs, ys = x * F(p) + y * F(q), x * F(r) + y * F(s)
    f, g = v.f.subs(xs, ys), v.g.subs(xs, ys)
    det = F(p * s - q * r)
    return PlaneGerm.make(f * (F(s) / det) - g * (F(q) / det), g * (F(p) / det) - f * (F(r) / det))


@given(small_fracs, small_fracs, small_fracs, small_fracs, polys(max_deg=3), invertible())
def test_classification_invariant_under_linear_conjugation(a, b, c, d, hot, m):
    hot = Poly({e: c_ for e, c_ in hot.terms().items() if sum(e) >= 2})
    assume(any((a, b, c, d)) or hot)
    v = PlaneGerm.make(Poly({(1, 0): a, (0, 1): b}) + hot, Poly({(1, 0): c, (0, 1): d}))
    w = _conjugate(v, m)
    c1, c2 = classify_at_origin(v), classify_at_origin(w)
    if c1.kind == "nilpotent":
        # saturation may differ only when the linear part vanishes entirely
        assert c2.kind == "nilpotent"
        return
    assert (c1.kind, c1.eigen_pair, c1.reduced, c1.nonreal, c1.ratio_sum) == (
        c2.kind,
        c2.eigen_pair,
        c2.reduced,
        c2.nonreal,
        c2.ratio_sum,
    )


@given(polys(), polys())
def test_swap_preserves_eigen_pair(f, g):
    assume(f or g)
    v = PlaneGerm.make(f, g)
    assert classify_at_origin(v) == classify_at_origin(v.swap())


@given(polys(), polys())
def test_reduced_implies_semi_reduced(f, g):
    assume(f or g)
    c = classify_at_origin(PlaneGerm.make(f, g))
    assert not c.reduced or c.semi_reduced


# --------------------------------------------------------------------------
# singular points


def test_singular_points_examples():
    pts = singular_points_rational(parse_germ("x*dx + y*dy"))
    assert [p for p, _ in pts] == [(0, 0)]
    pts = singular_points_rational(parse_germ("(x^2 - x)*dx + y*dy"))
    assert [p for p, _ in pts] == [(0, 0), (1, 0)]
    assert singular_points_rational(parse_germ("dx")) == []
    pts = singular_points_rational(parse_germ("(x^2 - 2)*dx + y*dy"))
    assert pts == []  # irrational zeros are not reported


def test_singular_points_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        singular_points_rational(parse_germ("x^5*dx + y*dy"), degree_cap=4)


@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3, unique=True),
)
def test_singular_points_brute_force(points):
    # f = prod (x - a_i), g = prod (y - b_i) + (x - a_1) has isolated zeros we can enumerate
    x, y = Poly.x(), Poly.y()
    f = Poly.const(1)
    for a, _ in points:
        f = f * (x - Poly.const(a))
    g = y - Poly.const(points[0][1])
    v = PlaneGerm.make(f, g)
    got = {p for p, _ in singular_points_rational(v)}
    sol = sympy.solve([to_sympy(v.f), to_sympy(v.g)], [X, Y], dict=True)
    want = {(F(int(s[X])), F(int(s[Y]))) for s in sol}
    assert got == want


# --------------------------------------------------------------------------
# families


def test_eigenvalue_function_diagonal_family():
    e = eigenvalue_function(parse_param_germ("x*dx + t*y*dy"))
    t = RatFunc.t()
    assert e.s == (t + 1) * (t + 1) / t
    assert e.solve_lambda(1) == [1]
    assert e.solve_lambda(4) == [F(1, 4), F(4)]
    assert e.solve_lambda(-1) == [-1]


def test_eigenvalue_function_triangular_family():
    e = eigenvalue_function(parse_param_germ("(t*x + y)*dx + y*dy"))
    t = RatFunc.t()
    assert e.s == (t + 1) * (t + 1) / t


def test_eigenvalue_function_degenerate_family():
    with pytest.raises(DegenerateFamily):
        eigenvalue_function(parse_param_germ("t*x*dx + x*dy"))


@given(st.fractions(min_value=F(1, 6), max_value=10, max_denominator=6))
def test_solve_lambda_finds_specializations(lam0):
    e = eigenvalue_function(parse_param_germ("x*dx + t*y*dy"))
    ts = e.solve_lambda(lam0)
    assert lam0 in ts and 1 / lam0 in ts
    for t0 in ts:
        c = classify_at_origin(parse_param_germ("x*dx + t*y*dy").specialize(t0))
        assert set(c.eigen_pair) == {lam0, 1 / lam0}
