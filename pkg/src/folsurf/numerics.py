"""Singular Riemann-Roch bookkeeping for chi(m K_F) and the effective bounds built on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Literal, Sequence

from .errors import (
    InconsistentSheet,
    InsufficientSamples,
    PreconditionFailed,
    SchemaError,
    UndefinedContribution,
)
from .linalg import solve
from .quotsing import QuotSingularity, hj_expand

KindName = Literal[
    "cartier",
    "mild_lc",
    "gorenstein_canonical",
    "two_gorenstein_canonical",
    "cusp",
    "terminal",
]
KIND_NAMES = ("cartier", "mild_lc", "gorenstein_canonical", "two_gorenstein_canonical", "cusp", "terminal")


@dataclass(frozen=True)
class SingularityKind:
    name: KindName
    n: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise SchemaError(f"unknown singularity kind {self.name!r}")
        if self.name == "terminal":
            if self.n is None or self.q is None:
                raise SchemaError("terminal points need n and q")
            QuotSingularity(self.n, self.q)

    @property
    def index(self) -> int:
        """Period of m -> a(x, m K_F) for m >= 1."""
        if self.name == "two_gorenstein_canonical":
            return 2
        if self.name == "terminal":
            return self.n
        return 1

    def to_json(self) -> dict:
        d: dict = {"kind": self.name}
        if self.name == "terminal":
            d.update(n=self.n, q=self.q)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SingularityKind":
        try:
            return cls(d["kind"], d.get("n"), d.get("q"))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed singularity entry: {exc}") from None


CARTIER = SingularityKind("cartier")
MILD = SingularityKind("mild_lc")
GORENSTEIN = SingularityKind("gorenstein_canonical")
TWO_GORENSTEIN = SingularityKind("two_gorenstein_canonical")
CUSP = SingularityKind("cusp")


def terminal(n: int, q: int) -> SingularityKind:
    return SingularityKind("terminal", n, q)


def local_contribution(kind: SingularityKind, m: int) -> Fraction | None:
    """a(x, m K_F); ``None`` where no closed formula is available."""
    if m < 0:
        raise PreconditionFailed("m must be nonnegative")
    if kind.name in ("cartier", "mild_lc", "gorenstein_canonical"):
        return Fraction(0)
    if kind.name == "two_gorenstein_canonical":
        return Fraction(0) if m % 2 == 0 else Fraction(-1, 2)
    if kind.name == "cusp":
        return Fraction(0) if m == 0 else Fraction(-1)
    n = kind.n
    if m % n == 0:
        return Fraction(0)
    if m == 1:
        return Fraction(1 - n, 2 * n)
    return None


# --------------------------------------------------------------------------
# invariant sheets


def _index_json(v):
    return "inf" if v is None else v


def _index_from_json(v):
    if v is None or v == "inf":
        return None
    return int(v)


@dataclass(frozen=True)
class InvariantSheet:
    KF2: Fraction
    KFKX: Fraction
    chiO: int
    sings: tuple[SingularityKind, ...] = ()
    i_X: int | None = None  # None stands for infinity
    i_KX: int | None = None
    i_F: int | None = None
    i_Q: int | None = None
    i_P: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "KF2", Fraction(self.KF2))
        object.__setattr__(self, "KFKX", Fraction(self.KFKX))
        object.__setattr__(self, "sings", tuple(self.sings))
        if self.i_Q is not None and self.i_F is not None and self.i_F % self.i_Q:
            raise SchemaError("i_Q must divide i_F")

    @property
    def c2(self) -> int:
        """Largest terminal index (1 when there are no terminal points)."""
        return max((s.n for s in self.sings if s.name == "terminal"), default=1)

    def to_json(self) -> dict:
        return {
            "KF2": str(self.KF2),
            "KFKX": str(self.KFKX),
            "chiO": self.chiO,
            "singularities": [s.to_json() for s in self.sings],
            "indices": {
                "i_X": _index_json(self.i_X),
                "i_KX": _index_json(self.i_KX),
                "i_F": _index_json(self.i_F),
                "i_Q": _index_json(self.i_Q),
                "i_P": self.i_P,
            },
        }

    @classmethod
    def from_json(cls, d: dict) -> "InvariantSheet":
        try:
            idx = d.get("indices", {})
            for key in ("KF2", "KFKX"):
                if isinstance(d[key], float):
                    raise SchemaError(f"{key} must be an exact rational string, not a float")
            return cls(
                Fraction(d["KF2"]),
                Fraction(d["KFKX"]),
                int(d["chiO"]),
                tuple(SingularityKind.from_json(s) for s in d.get("singularities", [])),
                _index_from_json(idx.get("i_X")),
                _index_from_json(idx.get("i_KX")),
                _index_from_json(idx.get("i_F")),
                _index_from_json(idx.get("i_Q")),
                _index_from_json(idx.get("i_P")),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"malformed sheet: {exc}") from None


@dataclass(frozen=True)
class HilbertFunction:
    sheet: InvariantSheet

    def contributions(self, m: int) -> Fraction:
        total = Fraction(0)
        for s in self.sheet.sings:
            a = local_contribution(s, m)
            if a is None:
                raise UndefinedContribution(f"local contribution of {s.to_json()} undefined at m={m}", m=m)
            total += a
        return total

    def __call__(self, m: int) -> int:
        if m < 0:
            raise PreconditionFailed("m must be nonnegative")
        sh = self.sheet
        val = Fraction(m * m, 2) * sh.KF2 - Fraction(m, 2) * sh.KFKX + sh.chiO + self.contributions(m)
        if val.denominator != 1:
            raise InconsistentSheet(f"P({m}) = {val} is not an integer", m=m, value=str(val))
        return int(val)


def hilbert_function(sheet: InvariantSheet) -> HilbertFunction:
    return HilbertFunction(sheet)


# --------------------------------------------------------------------------
# extraction


def index_killing_base(c2_hint: int) -> int:
    """lcm(2, C2!): every sample divisible by it kills all non-cusp contributions."""
    f = factorial(c2_hint)
    return f * 2 // gcd(f, 2)


def default_samples(c2_hint: int) -> list[int]:
    """m = 0, 1 and three multiples of (2*C2)!."""
    base = factorial(2 * c2_hint)
    return [0, 1, base, 2 * base, 3 * base]


@dataclass(frozen=True)
class Extraction:
    B1: Fraction
    B2: Fraction
    B3: int
    B4: int
    sum_a: Fraction
    sing_bound: Fraction

    def to_json(self) -> dict:
        return {
            "B1": str(self.B1),
            "B2": str(self.B2),
            "B3": self.B3,
            "B4": self.B4,
            "sum_local_contributions": str(self.sum_a),
            "singularity_count_bound": str(self.sing_bound),
        }


def extract_invariants(samples: dict[int, int], c2_hint: int) -> Extraction:
    """Recover K_F^2, K_F.K_X, chi(O_X), the cusp count and sum a(x, K_F).

    Needs P(0), P(1) and at least three distinct positive samples divisible by
    lcm(2, C2!). On those, P(m) = m^2 B1/2 - m B2/2 + B3 - B4.
    """
    if c2_hint < 1:
        raise PreconditionFailed("C2 hint must be positive")
    samples = {int(m): Fraction(v) for m, v in samples.items()}
    missing = [m for m in (0, 1) if m not in samples]
    if missing:
        raise InsufficientSamples(f"samples must include m = {missing}")
    base = index_killing_base(c2_hint)
    killing = sorted(m for m in samples if m > 0 and m % base == 0)
    if len(killing) < 3:
        raise InsufficientSamples(
            f"need three distinct positive samples divisible by {base}, got {len(killing)}", base=base
        )
    B3 = samples[0]
    rows = [[Fraction(m * m, 2), Fraction(-m, 2), Fraction(-1)] for m in killing[:3]]
    rhs = [samples[m] - B3 for m in killing[:3]]
    B1, B2, B4 = solve(rows, rhs)
    for m in killing[3:]:
        if Fraction(m * m, 2) * B1 - Fraction(m, 2) * B2 + B3 - B4 != samples[m]:
            raise InconsistentSheet(f"sample at m={m} disagrees with the quadratic fit", m=m)
    if B4.denominator != 1 or B4 < 0:
        raise InconsistentSheet(f"cusp count {B4} is not a nonnegative integer")
    if B3.denominator != 1:
        raise InconsistentSheet("P(0) is not an integer")
    sum_a = samples[1] - B1 / 2 + B2 / 2 - B3
    return Extraction(B1, B2, int(B3), int(B4), sum_a, 4 * (-sum_a))


# --------------------------------------------------------------------------
# effective bounds


@dataclass(frozen=True)
class Bounds:
    gamma: Fraction
    nef_multiple: int
    ample_multiple: int
    delta: Fraction
    alpha: int
    degree_bound: Fraction
    i_P: int

    def to_json(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "nef_multiple": self.nef_multiple,
            "ample_multiple": self.ample_multiple,
            "delta": str(self.delta),
            "alpha": self.alpha,
            "degree_bound": str(self.degree_bound),
            "i_P": self.i_P,
        }


def default_delta(sheet: InvariantSheet) -> Fraction:
    """8 for smooth or du Val points, 4*(edim - 1) at terminal cyclic quotient points."""
    delta = Fraction(8)
    for s in sheet.sings:
        if s.name == "terminal":
            delta = max(delta, Fraction(4 * (hj_expand(s.n, s.q).edim_bound - 1)))
    return delta


def minimal_alpha(i_KY: int, delta) -> int:
    delta = Fraction(delta)
    alpha = 1
    while not ((alpha * i_KY + 3) ** 2 > delta and alpha * i_KY + 3 > delta / 2):
        alpha += 1
    return alpha


def effective_bounds(sheet: InvariantSheet, i_KY: int, delta=None, i_G: int | None = None) -> Bounds:
    if sheet.KF2 <= 0:
        raise PreconditionFailed("K_F^2 must be positive")
    if sheet.i_Q is None:
        raise PreconditionFailed("i_Q must be finite")
    i_G = sheet.i_F if i_G is None else i_G
    if i_G is None:
        raise PreconditionFailed("i_F (or an explicit i_G) must be finite")
    if i_KY < 1:
        raise PreconditionFailed("i(K_Y) must be positive")
    gamma = max(2 * sheet.KFKX / sheet.KF2 + 3 * sheet.i_Q, Fraction(0))
    delta = default_delta(sheet) if delta is None else Fraction(delta)
    alpha = minimal_alpha(i_KY, delta)
    degree = (alpha * i_KY * (gamma + 4 * i_G)) ** 2 * sheet.KF2
    i_P = sheet.i_P if sheet.i_P is not None else factorial(sheet.c2)
    return Bounds(gamma, 3, 4, delta, alpha, degree, i_P)


# --------------------------------------------------------------------------
# random consistent sheets


def random_consistent_sheet(rng, max_sings: int = 5, max_n: int = 9) -> InvariantSheet:
    """A sheet whose P(m) is integral at m = 0, 1 and every multiple of (2*C2)!.

    K_F^2 is a positive integer and K_F.K_X is tuned so that P(1) is an integer.
    """
    sings = []
    for _ in range(rng.randint(0, max_sings)):
        kind = rng.choice(KIND_NAMES)
        if kind == "terminal":
            n = rng.randint(2, max_n)
            q = rng.choice([q for q in range(1, n) if gcd(n, q) == 1])
            sings.append(terminal(n, q))
        else:
            sings.append(SingularityKind(kind))
    a1 = sum((local_contribution(s, 1) for s in sings), Fraction(0))
    kf2 = rng.randint(1, 30)
    j = rng.randint(-10, 10)
    kfkx = kf2 - 2 * (j - a1)
    return InvariantSheet(Fraction(kf2), kfkx, rng.randint(-5, 10), tuple(sings))


def sheet_samples(sheet: InvariantSheet, ms: Sequence[int] | None = None) -> dict[int, int]:
    ms = default_samples(sheet.c2) if ms is None else ms
    h = hilbert_function(sheet)
    return {m: h(m) for m in ms}
