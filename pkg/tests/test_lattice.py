"""Mumford pullback, intersection numbers, discrepancies and the epsilon test."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from folsurf.errors import MissingData, NotNegativeDefinite, PreconditionFailed
from folsurf.lattice import (
    ExceptionalLattice,
    WeilDivisorData,
    chain_lattice,
    epsilon_canonical_test,
    foliated_discrepancies,
    intersection_number,
    mumford_pullback,
    ordinary_discrepancies,
)
from folsurf.quotsing import hj_expand

F = Fraction


def W(*b):
    return WeilDivisorData([F(x) for x in b])


def _sym_solve(gram, rhs):
    sol = sympy.Matrix(gram).LUsolve(sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs]))
    return [F(int(v.p), int(v.q)) for v in sol]


# --------------------------------------------------------------------------
# pullback


def test_pullback_examples():
    assert mumford_pullback(chain_lattice([-2]), W(1)) == [F(1, 2)]
    assert mumford_pullback(chain_lattice([-2, -2]), W(1, 0)) == [F(2, 3), F(1, 3)]
    assert mumford_pullback(chain_lattice([-2, -2, -2]), W(0, 0, 0)) == [0, 0, 0]
    with pytest.raises(PreconditionFailed):
        mumford_pullback(chain_lattice([-2]), W(1, 0))


def test_intersection_number_examples():
    a1 = chain_lattice([-2])
    assert intersection_number(a1, W(0), W(0), 3) == 3
    for n in range(2, 8):
        lat = chain_lattice([-n])
        assert intersection_number(lat, W(1), W(1), 0) == F(1, n)
    assert intersection_number(a1, W(1), W(1), 0) == F(1, 2)


chains = st.lists(st.integers(-5, -2), min_size=1, max_size=6)


@given(chains, st.data())
def test_pullback_orthogonal_and_matches_sympy(selfs, data):
    lat = chain_lattice(selfs)
    b = data.draw(st.lists(st.integers(-3, 3), min_size=len(selfs), max_size=len(selfs)))
    a = mumford_pullback(lat, W(*b))
    assert a == _sym_solve(lat.gram, [F(-x) for x in b])
    for i in range(len(selfs)):
        assert b[i] + sum(lat.gram[i][j] * a[j] for j in range(len(a))) == 0


@given(chains, st.data())
def test_pairing_symmetric_and_bilinear(selfs, data):
    lat = chain_lattice(selfs)
    vec = st.lists(st.integers(-3, 3), min_size=len(selfs), max_size=len(selfs))
    b1, b2, b3 = data.draw(vec), data.draw(vec), data.draw(vec)
    c12, c13 = data.draw(st.integers(-4, 4)), data.draw(st.integers(-4, 4))
    p12 = intersection_number(lat, W(*b1), W(*b2), c12)
    assert p12 == intersection_number(lat, W(*b2), W(*b1), c12)
    p13 = intersection_number(lat, W(*b1), W(*b3), c13)
    s = [x + y for x, y in zip(b2, b3)]
    assert intersection_number(lat, W(*b1), W(*s), c12 + c13) == p12 + p13


@given(chains, st.data())
def test_unimodular_lattice_gives_integral_pullback(selfs, data):
    # a divisor that is Cartier on the contraction pulls back with integer coefficients;
    # here: b = -G c for an integer vector c, so a = c
    lat = chain_lattice(selfs)
    c = data.draw(st.lists(st.integers(-3, 3), min_size=len(selfs), max_size=len(selfs)))
    b = [-sum(lat.gram[i][j] * c[j] for j in range(len(c))) for i in range(len(c))]
    assert mumford_pullback(lat, W(*b)) == [F(x) for x in c]


QUOTS = [(n, q) for n in range(2, 51) for q in range(1, n) if gcd(n, q) == 1]


@pytest.mark.parametrize("n,q", QUOTS[::7])
def test_hj_lattice_denominators_divide_n(n, q):
    lat = chain_lattice([-b for b in hj_expand(n, q).res_chain])
    assert abs(lat.determinant()) == n
    for i in range(lat.rank):
        b = [0] * lat.rank
        b[i] = 1
        assert all(n % x.denominator == 0 for x in mumford_pullback(lat, W(*b)))


def test_not_negative_definite_rejected():
    with pytest.raises(NotNegativeDefinite):
        ExceptionalLattice([[-1, 1], [1, -1]])
    with pytest.raises(NotNegativeDefinite):
        ExceptionalLattice([[0]])
    with pytest.raises(PreconditionFailed):
        ExceptionalLattice([[-2, 1]])


# --------------------------------------------------------------------------
# discrepancies


@pytest.mark.parametrize("selfs", [[-2], [-2, -2], [-2, -2, -2, -2]])
def test_ade_chains_are_crepant(selfs):
    assert ordinary_discrepancies(chain_lattice(selfs)) == [0] * len(selfs)


def test_ade_d4_is_crepant():
    g = [[-2, 1, 1, 1], [1, -2, 0, 0], [1, 0, -2, 0], [1, 0, 0, -2]]
    assert ordinary_discrepancies(ExceptionalLattice(g, genus=[0] * 4)) == [0] * 4


def test_ordinary_discrepancy_examples():
    assert ordinary_discrepancies(chain_lattice([-3])) == [F(-1, 3)]
    lat = chain_lattice([-2, -4])
    got = ordinary_discrepancies(lat)
    assert got == _sym_solve(lat.gram, [F(0), F(2)]) == [F(-2, 7), F(-4, 7)]


@given(chains)
def test_ordinary_discrepancies_match_sympy(selfs):
    lat = chain_lattice(selfs)
    assert ordinary_discrepancies(lat) == _sym_solve(lat.gram, [F(-2 - s) for s in selfs])


def _fchain(selfs, zs):
    lat = chain_lattice(selfs)
    n = len(selfs)
    return ExceptionalLattice(lat.gram, genus=[0] * n, invariant=[True] * n, z_total=zs)


@pytest.mark.parametrize("selfs", [[-2], [-3], [-2, -2], [-3, -2], [-2, -3, -2], [-2, -2, -2, -4], [-5, -2, -3, -2]])
def test_fchain_discrepancies_positive(selfs):
    zs = [1] + [2] * (len(selfs) - 1)
    lat = _fchain(selfs, zs)
    disc = foliated_discrepancies(lat)
    assert disc == _sym_solve(lat.gram, [F(z - 2) for z in zs])
    assert all(a > 0 for a in disc)


def test_minus_two_fcurves_with_z_two_give_zero():
    assert foliated_discrepancies(_fchain([-2, -2, -2], [2, 2, 2])) == [0, 0, 0]


def test_noninvariant_curve_uses_tangency():
    lat = ExceptionalLattice([[-1]], genus=[0], invariant=[False], tang_total=[0])
    assert foliated_discrepancies(lat) == [-1]


def test_missing_data_errors():
    with pytest.raises(MissingData):
        foliated_discrepancies(chain_lattice([-2]))
    lat = ExceptionalLattice([[-2]], genus=[0], invariant=[True], z_total=[None])
    with pytest.raises(MissingData):
        foliated_discrepancies(lat)
    nodal = ExceptionalLattice([[-1]], genus=[1], nodal=[True])
    with pytest.raises(MissingData):
        ordinary_discrepancies(nodal)
    # supplying chi resolves the nodal convention
    assert ordinary_discrepancies(ExceptionalLattice([[-1]], genus=[1], nodal=[True], chi=[0])) == [-1]


# --------------------------------------------------------------------------
# epsilon test


@pytest.mark.parametrize("d", range(1, 9))
def test_epsilon_threshold(d):
    t = F(1, 1 + d)
    assert epsilon_canonical_test(-1, d, t).threshold == t
    assert epsilon_canonical_test(-1, d, t).passed
    assert not epsilon_canonical_test(-1, d, t - F(1, 1000)).passed
    assert epsilon_canonical_test(-1, d, t + F(1, 1000)).passed


@given(st.fractions(min_value=0, max_value=1))
def test_epsilon_zero_case_and_negative_slope(eps):
    r = epsilon_canonical_test(0, 0, eps)
    assert r.passed and r.value == 0
    assert not epsilon_canonical_test(1, -1, eps).passed


def test_epsilon_small_regime_guard():
    with pytest.raises(PreconditionFailed):
        epsilon_canonical_test(0, 0, F(1, 2), small_eps_regime=True)
    assert epsilon_canonical_test(0, 1, F(1, 8), small_eps_regime=True).passed
