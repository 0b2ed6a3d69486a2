from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import settings, strategies as st

from folsurf.poly import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

X, Y = sympy.symbols("x y")


def to_sympy(p: Poly):
    return sympy.expand(
        sum(sympy.Rational(c.numerator, c.denominator) * X**i * Y**j for (i, j), c in p.terms().items())
    )


def from_sympy(e) -> Poly:
    poly = sympy.Poly(sympy.expand(e), X, Y, domain="QQ")
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_fracs = small_fracs.filter(lambda q: q != 0)


@st.composite
def polys(draw, max_deg: int = 3, max_terms: int = 4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(small_fracs)
    return Poly(terms)
