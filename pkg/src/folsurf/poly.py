"""Sparse bivariate polynomials in x, y.

Coefficients are ``Fraction`` for plain germs and :class:`~folsurf.ratfunc.RatFunc`
for one-parameter families; the class only needs ring operations plus exact
division by nonzero constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Mapping

from . import upoly as U

Exp = tuple[int, int]


def _grlex_key(e: Exp) -> tuple[int, int]:
    # graded, then x before y within a degree
    return (e[0] + e[1], -e[0])


class Poly:
    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[(int(e[0]), int(e[1]))] = c if not isinstance(c, int) else Fraction(c)
        self._t = t
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "Poly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> "Poly":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def monomial(cls, i: int, j: int, c=Fraction(1)) -> "Poly":
        return cls({(i, j): c})

    # inspection ---------------------------------------------------------
    def terms(self) -> dict[Exp, object]:
        return dict(self._t)

    def items_grlex(self) -> list[tuple[Exp, object]]:
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Exp, object]]:
        return iter(self.items_grlex())

    def coeff(self, i: int, j: int):
        return self._t.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def degree(self) -> int:
        return max((i + j for i, j in self._t), default=-1)

    def low_degree(self) -> int:
        return min((i + j for i, j in self._t), default=-1)

    def deg_x(self) -> int:
        return max((i for i, _ in self._t), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self._t), default=-1)

    def homogeneous(self, d: int) -> "Poly":
        return Poly({e: c for e, c in self._t.items() if e[0] + e[1] == d})

    def truncate(self, d: int) -> "Poly":
        """Drop all terms of total degree > d."""
        return Poly({e: c for e, c in self._t.items() if e[0] + e[1] <= d})

    def map_coeffs(self, fn: Callable) -> "Poly":
        return Poly({e: fn(c) for e, c in self._t.items()})

    def x_order(self) -> int:
        """Largest k with x^k dividing self (0 for the zero polynomial)."""
        return min((i for i, _ in self._t), default=0)

    def y_order(self) -> int:
        return min((j for _, j in self._t), default=0)

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._t == other._t
        if other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        t = dict(self._t)
        for e, c in other._t.items():
            t[e] = t.get(e, 0) + c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly({e: c * other for e, c in self._t.items()})
        t: dict = {}
        for (i1, j1), c1 in self._t.items():
            for (i2, j2), c2 in other._t.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Poly):
            raise TypeError("use exact_div for polynomial division")
        return Poly({e: v / c for e, v in self._t.items()})

    def __pow__(self, k: int):
        out = Poly.const(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_exponents(self, di: int, dj: int) -> "Poly":
        """Multiply by x^di y^dj; negative shifts require divisibility."""
        t = {}
        for (i, j), c in self._t.items():
            if i + di < 0 or j + dj < 0:
                raise ArithmeticError("monomial shift leaves the polynomial ring")
            t[(i + di, j + dj)] = c
        return Poly(t)

    # calculus / substitution -------------------------------------------
    def diff_x(self) -> "Poly":
        return Poly({(i - 1, j): c * i for (i, j), c in self._t.items() if i})

    def diff_y(self) -> "Poly":
        return Poly({(i, j - 1): c * j for (i, j), c in self._t.items() if j})

    def evaluate(self, x0, y0):
        acc = 0
        for (i, j), c in self._t.items():
            acc = acc + c * (x0**i) * (y0**j)
        return acc

    def subs(self, xs: "Poly", ys: "Poly") -> "Poly":
        """Compose: self(xs, ys)."""
        out = Poly()
        xp: dict[int, Poly] = {0: Poly.const(Fraction(1))}
        yp: dict[int, Poly] = {0: Poly.const(Fraction(1))}
        for (i, j), c in self._t.items():
            for cache, base, k in ((xp, xs, i), (yp, ys, j)):
                if k not in cache:
                    m = max(cache)
                    acc = cache[m]
                    for step in range(m + 1, k + 1):
                        acc = acc * base
                        cache[step] = acc
            out = out + xp[i] * yp[j] * c
        return out

    def translate(self, a, b) -> "Poly":
        """self(x + a, y + b)."""
        if not a and not b:
            return self
        return self.subs(Poly.x() + a, Poly.y() + b)

    def restrict_x0(self) -> U.UPoly:
        """self(0, y) as a univariate polynomial in y."""
        n = self.deg_y() + 1
        return U.upoly(self.coeff(0, j) for j in range(max(n, 0)))

    def restrict_y0(self) -> U.UPoly:
        n = self.deg_x() + 1
        return U.upoly(self.coeff(i, 0) for i in range(max(n, 0)))

    def as_y_poly(self) -> list[U.UPoly]:
        """Coefficients in y, each a univariate polynomial in x."""
        dy = self.deg_y()
        rows: list[list] = [[] for _ in range(dy + 1)]
        for (i, j), c in self._t.items():
            row = rows[j]
            while len(row) <= i:
                row.append(Fraction(0))
            row[i] += c
        return [U.upoly(r) for r in rows]

    @classmethod
    def from_y_poly(cls, rows: list[U.UPoly]) -> "Poly":
        return cls({(i, j): c for j, row in enumerate(rows) for i, c in enumerate(row) if c})

    def linear_part(self) -> tuple:
        return self.coeff(1, 0), self.coeff(0, 1)

    def leading_coeff(self):
        """Coefficient of the grlex-largest monomial."""
        if not self._t:
            return Fraction(0)
        e = max(self._t, key=_grlex_key_desc)
        return self._t[e]

    def __repr__(self):
        return f"Poly({to_str(self)!r})"

    def __str__(self):
        return to_str(self)


def _grlex_key_desc(e: Exp) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


def mono_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def coeff_str(c) -> tuple[str, str]:
    """(sign, magnitude-string) for a coefficient."""
    if isinstance(c, Fraction):
        return ("-" if c < 0 else "+", str(abs(c)))
    s = str(c)
    return "+", f"({s})" if any(ch in s for ch in "+- ") else s


def term_strs(p: Poly, suffix: str = "") -> list[tuple[str, str]]:
    out = []
    for (i, j), c in p.items_grlex():
        sgn, mag = coeff_str(c)
        mono = mono_str(i, j)
        factors = [f for f in (mono, suffix) if f]
        if mag == "1" and factors:
            body = "*".join(factors)
        else:
            body = "*".join([mag] + factors)
        out.append((sgn, body))
    return out


def join_terms(terms: list[tuple[str, str]]) -> str:
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sgn, body in terms[1:]:
        s += f" {sgn} {body}"
    return s


def to_str(p: Poly) -> str:
    return join_terms(term_strs(p))


# --- exact arithmetic over Q[x, y] ---------------------------------------


def _rows_trim(rows: list[U.UPoly]) -> list[U.UPoly]:
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _content(rows: list[U.UPoly]) -> U.UPoly:
    g: U.UPoly = ()
    for r in rows:
        g = U.ugcd(g, r) if g else U.monic(r)
        if len(g) == 1:
            break
    return g


def _prem(a: list[U.UPoly], b: list[U.UPoly]) -> list[U.UPoly]:
    r = _rows_trim(a)
    db = len(b) - 1
    lcb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lcr = r[-1]
        r = [U.mul(lcb, c) for c in r]
        for j, c in enumerate(b):
            r[j + k] = U.sub(r[j + k], U.mul(lcr, c))
        r = _rows_trim(r)
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor in Q[x, y], normalized to leading coefficient 1."""
    if a.is_zero():
        return normalize_monic(b)
    if b.is_zero():
        return normalize_monic(a)
    A, B = _rows_trim(a.as_y_poly()), _rows_trim(b.as_y_poly())
    ca, cb = _content(A), _content(B)
    cont = U.ugcd(ca, cb)
    A = [U.exact_div(r, ca) for r in A]
    B = [U.exact_div(r, cb) for r in B]
    if len(A) < len(B):
        A, B = B, A
    while B and len(B) > 1:
        R = _prem(A, B)
        A = B
        if not R:
            B = []
            break
        cr = _content(R)
        B = [U.exact_div(r, cr) for r in R]
    if B and len(B) == 1:
        # B is a nonzero polynomial in x alone; primitive => constant
        g_rows: list[U.UPoly] = [(Fraction(1),)]
    else:
        cA = _content(A)
        g_rows = [U.exact_div(r, cA) for r in A]
    g = Poly.from_y_poly(g_rows) * Poly.from_y_poly([cont])
    return normalize_monic(g)


def normalize_monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p / p.leading_coeff()


def exact_div(a: Poly, b: Poly) -> Poly:
    """a / b in Q[x, y]; raises ArithmeticError if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    A = _rows_trim(a.as_y_poly())
    Bv = _rows_trim(b.as_y_poly())
    db = len(Bv) - 1
    q = [()] * max(len(A) - db, 0)
    while A:
        k = len(A) - 1 - db
        if k < 0:
            raise ArithmeticError("inexact polynomial division")
        c = U.exact_div(A[-1], Bv[-1])
        q[k] = c
        for j, bc in enumerate(Bv):
            A[j + k] = U.sub(A[j + k], U.mul(c, bc))
        A = _rows_trim(A)
    return Poly.from_y_poly(list(q))


def intersection_multiplicity(f: Poly, g: Poly) -> int | None:
    """Local intersection number of f = 0 and g = 0 at the origin (Fulton's algorithm).

    Returns ``None`` when the curves share a component through the origin.
    """
    total = 0
    while True:
        if f.is_zero() or g.is_zero():
            return None
        if f.coeff(0, 0) or g.coeff(0, 0):
            return total
        fr, gr = f.restrict_y0(), g.restrict_y0()
        if len(fr) > len(gr):
            f, g, fr, gr = g, f, gr, fr
        if not fr:
            # y divides f: I(f, g) = I(y, g) + I(f / y, g)
            if not gr:
                return None
            total += U.order_at_zero(gr)
            f = f.shift_exponents(0, -1)
            continue
        r, s = len(fr) - 1, len(gr) - 1
        g = g * fr[-1] - f.shift_exponents(s - r, 0) * gr[-1]
