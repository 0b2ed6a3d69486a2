"""Dense univariate polynomials over Q as coefficient tuples, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

UPoly = tuple  # tuple[Fraction, ...], trimmed, () is the zero polynomial

_FACTOR_LIMIT = 10**12


def upoly(coeffs: Iterable) -> UPoly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return upoly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, scale(q, -1))


def scale(p: UPoly, c) -> UPoly:
    return upoly(x * c for x in p)


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly(out)


def power(p: UPoly, k: int) -> UPoly:
    out: UPoly = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    lc = q[-1]
    for i in range(len(p) - 1 - dq, -1, -1):
        c = r[i + dq] / lc
        if c:
            quo[i] = c
            for j in range(dq + 1):
                r[i + j] -= c * q[j]
    return upoly(quo), upoly(r[:dq])


def exact_div(p: UPoly, q: UPoly) -> UPoly:
    quo, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def monic(p: UPoly) -> UPoly:
    return scale(p, 1 / p[-1]) if p else ()


def ugcd(p: UPoly, q: UPoly) -> UPoly:
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: UPoly) -> UPoly:
    return upoly(i * p[i] for i in range(1, len(p)))


def order_at_zero(p: UPoly) -> int | None:
    """Multiplicity of 0 as a root; ``None`` for the zero polynomial."""
    for i, c in enumerate(p):
        if c:
            return i
    return None


def shift(p: UPoly, a) -> UPoly:
    """Coefficients of p(x + a)."""
    out: UPoly = ()
    for c in reversed(p):
        out = add(mul(out, (Fraction(a), Fraction(1))), (Fraction(c),))
    return out


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Lagrange interpolation through the points (xs[i], ys[i])."""
    out: UPoly = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis: UPoly = (Fraction(1),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = mul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        out = add(out, scale(basis, Fraction(yi) / denom))
    return out


def integer_primitive(p: UPoly) -> list[int]:
    den = reduce(lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, ints, 0) or 1
    return [c // g for c in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UPoly) -> list[tuple[Fraction, int]]:
    """All rational roots of p with multiplicities, sorted ascending."""
    p = upoly(p)
    if len(p) <= 1:
        return []
    roots: list[tuple[Fraction, int]] = []
    k = order_at_zero(p)
    if k:
        roots.append((Fraction(0), k))
        p = p[k:]
    if len(p) <= 1:
        return roots
    ints = integer_primitive(p)
    a0, an = ints[0], ints[-1]
    if abs(a0) > _FACTOR_LIMIT or abs(an) > _FACTOR_LIMIT:
        roots.extend(_rational_roots_sympy(p))
    else:
        cands = set()
        for num in _divisors(a0):
            for den in _divisors(an):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
        for c in sorted(cands):
            mult = 0
            while len(p) > 1 and evaluate(p, c) == 0:
                p = exact_div(p, (-c, Fraction(1)))
                mult += 1
            if mult:
                roots.append((c, mult))
    return sorted(roots)


def _rational_roots_sympy(p: UPoly) -> list[tuple[Fraction, int]]:
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], t, domain="QQ")
    out = []
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            out.append((Fraction(int(r.p), int(r.q)), int(mult)))
    return out


def strip_rational_roots(p: UPoly) -> tuple[list[tuple[Fraction, int]], UPoly]:
    """Rational roots of p and the cofactor carrying the irrational roots."""
    roots = rational_roots(p)
    rest = upoly(p)
    for r, m in roots:
        for _ in range(m):
            rest = exact_div(rest, (-r, Fraction(1)))
    return roots, rest


def to_str(p: UPoly, var: str = "t") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sgn, body in terms[1:]:
        s += f" {sgn} {body}"
    return s


# --- truncated power series in one variable ------------------------------


def truncate(p: UPoly, n: int) -> UPoly:
    """p mod s^n."""
    return upoly(p[:n])


def series_mul(p: UPoly, q: UPoly, n: int) -> UPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * min(len(p) + len(q) - 1, n)
    for i, a in enumerate(p[:n]):
        if a:
            for j in range(min(len(q), n - i)):
                out[i + j] += a * q[j]
    return upoly(out)


def series_inv(p: UPoly, n: int) -> UPoly:
    """1/p mod s^n for p with nonzero constant term."""
    if not p or p[0] == 0:
        raise ZeroDivisionError("series not invertible")
    out = [Fraction(0)] * n
    out[0] = 1 / p[0]
    for k in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(k, len(p) - 1) + 1):
            acc += p[i] * out[k - i]
        out[k] = -acc / p[0]
    return upoly(out)


def residue(a: UPoly, b: UPoly, n: int) -> Fraction:
    """Coefficient of s^-1 in a/b, with a, b known modulo s^n.

    Raises ValueError when the precision n does not determine the residue.
    """
    e = order_at_zero(b)
    if e is None:
        raise ZeroDivisionError("residue of a/0")
    if e == 0:
        return Fraction(0)
    if 2 * e > n:
        raise ValueError("precision too low for residue")
    unit = b[e:]
    q = series_mul(a, series_inv(unit, e), e)
    return q[e - 1] if len(q) >= e else Fraction(0)
