"""Mumford intersection pairing on exceptional lattices and discrepancy solves."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import MissingData, NotNegativeDefinite, PreconditionFailed
from .linalg import bareiss_det, dot, is_negative_definite, matvec, solve


@dataclass(frozen=True)
class ExceptionalLattice:
    """Gram matrix E_i.E_j plus per-curve metadata.

    ``chi`` overrides the virtual Euler characteristic 2 - 2g of a curve; it is
    the hook for nodal curves, whose convention the caller must choose.
    """

    gram: list[list[int]]
    genus: list[int] | None = None
    invariant: list[bool] | None = None
    z_total: list[int | None] | None = None
    tang_total: list[int | None] | None = None
    chi: list[int | None] | None = None
    nodal: list[bool] | None = None

    def __post_init__(self):
        n = len(self.gram)
        if any(len(r) != n for r in self.gram):
            raise PreconditionFailed("gram matrix must be square")
        for name in ("genus", "invariant", "z_total", "tang_total", "chi", "nodal"):
            val = getattr(self, name)
            if val is not None and len(val) != n:
                raise PreconditionFailed(f"{name} has length {len(val)}, expected {n}")
        if not is_negative_definite(self.gram):
            raise NotNegativeDefinite("intersection matrix is not negative definite")
        for i in range(n):
            for j in range(n):
                if i != j and self.gram[i][j] < 0:
                    raise PreconditionFailed("off-diagonal intersection numbers must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def determinant(self) -> Fraction:
        return bareiss_det(self.gram)

    def _chi(self, i: int) -> int:
        if self.chi is not None and self.chi[i] is not None:
            return self.chi[i]
        if self.nodal is not None and self.nodal[i]:
            raise MissingData(f"curve {i} is nodal: supply chi explicitly")
        if self.genus is None:
            raise MissingData("genus data missing")
        return 2 - 2 * self.genus[i]


def chain_lattice(selfs: Sequence[int]) -> ExceptionalLattice:
    """Lattice of a string of smooth rational curves with the given self-intersections."""
    n = len(selfs)
    g = [[0] * n for _ in range(n)]
    for i, s in enumerate(selfs):
        g[i][i] = s
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    return ExceptionalLattice(g, genus=[0] * n)


@dataclass(frozen=True)
class WeilDivisorData:
    b: list[Fraction]
    self_pairing: Fraction | None = field(default=None)


def _vec(v) -> list[Fraction]:
    return [Fraction(x) for x in v]


def mumford_pullback(lat: ExceptionalLattice, d: WeilDivisorData) -> list[Fraction]:
    """Coefficients a with (D~ + sum a_j E_j).E_i = 0 for every i."""
    b = _vec(d.b)
    if len(b) != lat.rank:
        raise PreconditionFailed(f"divisor vector has length {len(b)}, lattice rank {lat.rank}")
    if not lat.rank:
        return []
    a = solve(lat.gram, [-x for x in b])
    resid = [bi + gi for bi, gi in zip(b, matvec(lat.gram, a))]
    if any(resid):
        raise ArithmeticError("orthogonality check failed after solve")
    return a


def intersection_number(lat: ExceptionalLattice, d1: WeilDivisorData, d2: WeilDivisorData, cross) -> Fraction:
    """(f*D1).(f*D2) = cross + a'.b1 + a.b2 + a^T G a'."""
    a1, a2 = mumford_pullback(lat, d1), mumford_pullback(lat, d2)
    b1, b2 = _vec(d1.b), _vec(d2.b)
    return Fraction(cross) + dot(a2, b1) + dot(a1, b2) + dot(a1, matvec(lat.gram, a2))


def _solve_canonical(lat: ExceptionalLattice, k_dot_e: list[Fraction]) -> list[Fraction]:
    # K = f*K + sum a_j E_j  =>  G a = (K.E_i)
    if not lat.rank:
        return []
    a = solve(lat.gram, k_dot_e)
    if matvec(lat.gram, a) != k_dot_e:
        raise ArithmeticError("discrepancy solve failed verification")
    return a


def canonical_dot_ordinary(lat: ExceptionalLattice) -> list[Fraction]:
    """K_Y.E_i = -chi(E_i) - E_i^2 by adjunction."""
    return [Fraction(-lat._chi(i) - lat.gram[i][i]) for i in range(lat.rank)]


def canonical_dot_foliated(lat: ExceptionalLattice) -> list[Fraction]:
    """K_G.E_i = Z - chi for invariant curves, tang - E_i^2 otherwise."""
    if lat.invariant is None:
        raise MissingData("invariance flags missing")
    out = []
    for i in range(lat.rank):
        if lat.invariant[i]:
            z = lat.z_total[i] if lat.z_total is not None else None
            if z is None:
                raise MissingData(f"Z index missing for invariant curve {i}")
            out.append(Fraction(z - lat._chi(i)))
        else:
            t = lat.tang_total[i] if lat.tang_total is not None else None
            if t is None:
                raise MissingData(f"tangency order missing for non-invariant curve {i}")
            out.append(Fraction(t - lat.gram[i][i]))
    return out


def ordinary_discrepancies(lat: ExceptionalLattice) -> list[Fraction]:
    return _solve_canonical(lat, canonical_dot_ordinary(lat))


def foliated_discrepancies(lat: ExceptionalLattice) -> list[Fraction]:
    return _solve_canonical(lat, canonical_dot_foliated(lat))


@dataclass(frozen=True)
class EpsilonResult:
    passed: bool
    slope: Fraction
    value: Fraction
    threshold: Fraction | None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "slope": str(self.slope),
            "value": str(self.value),
            "threshold": None if self.threshold is None else str(self.threshold),
        }


def epsilon_canonical_test(fol_disc, ord_disc, eps, small_eps_regime: bool = False) -> EpsilonResult:
    """Evaluate a(t) = (1 - t)*fol + t*ord at t = eps.

    Passes iff the slope is nonnegative and a(eps) >= 0. The threshold is the
    root of a(t) when the slope is positive.
    """
    fol, ordd, eps = Fraction(fol_disc), Fraction(ord_disc), Fraction(eps)
    if small_eps_regime and not (0 < eps < Fraction(1, 4)):
        raise PreconditionFailed("epsilon must lie in (0, 1/4)")
    slope = ordd - fol
    value = fol + eps * slope
    threshold = -fol / slope if slope > 0 else None
    return EpsilonResult(slope >= 0 and value >= 0, slope, value, threshold)
