"""Intersection theory and splitting predictions on decomposable ruled surfaces.

The surface is B = P(O_Y + O_Y(E)) over a curve Y of genus gamma with
deg E = e.  Numerical classes are written ``a*Y0 + b*F`` where Y0 is the
section of self-intersection -e and F a fiber; the tautological class is
H = Y0 + e*F.

Splitting predictions are derived the way the direct images are computed:
push the ideal-sheaf sequence of X forward, read off the R^1 term from the
rank-2 pushforward table, then twist (projection formula).  Only degrees
are tracked, which is all that is meaningful for gamma >= 1 at this level.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

__all__ = [
    "SurfaceModel",
    "DivisorClass",
    "SplittingPrediction",
    "ConeNumerics",
    "Hypothesis",
    "Recognition",
    "intersect",
    "canonical_class",
    "adjunction_genus",
    "genus_formula",
    "adjunction_quadratic_roots",
    "recognize_cover",
    "pushforward_Ok",
    "direct_images",
    "surface_cohomology",
    "predict_thm_a",
    "predict_thm_b",
    "predict_tschirnhausen",
    "hypothesis_check",
    "cone_numerics",
    "genus_from_splitting",
]


@dataclass(frozen=True)
class SurfaceModel:
    e: int
    gamma: int = 0
    delta: int = 0

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("e must be at least 1")
        if self.gamma < 0 or self.delta < 0:
            raise ValueError("gamma and delta must be nonnegative")

    @property
    def canonical_base_degree(self) -> int:
        return 2 * self.gamma - 2


_TOKEN = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(Y0|H|F)")


@dataclass(frozen=True)
class DivisorClass:
    """Numerical class a*Y0 + b*F."""

    a: int
    b: int

    @classmethod
    def Y0(cls) -> "DivisorClass":
        return cls(1, 0)

    @classmethod
    def F(cls) -> "DivisorClass":
        return cls(0, 1)

    @classmethod
    def H(cls, e: int) -> "DivisorClass":
        return cls(1, e)

    @classmethod
    def parse(cls, text: str, e: int) -> "DivisorClass":
        """Parse expressions such as ``3H``, ``2H+F``, ``Y0 - 2F``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty divisor expression")
        pos, a, b = 0, 0, 0
        for mt in _TOKEN.finditer(s):
            if mt.start() != pos:
                raise ValueError(f"cannot parse divisor {text!r}")
            pos = mt.end()
            coef = int(mt.group(2) or 1) * (-1 if mt.group(1) == "-" else 1)
            name = mt.group(3)
            if name == "Y0":
                a += coef
            elif name == "F":
                b += coef
            else:
                a += coef
                b += coef * e
        if pos != len(s):
            raise ValueError(f"cannot parse divisor {text!r}")
        return cls(a, b)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, k * self.b)

    def __neg__(self):
        return DivisorClass(-self.a, -self.b)

    def hf_form(self, e: int) -> tuple[int, int]:
        """Coefficients (k, t) with the class equal to k*H + t*F."""
        return self.a, self.b - self.a * e


def intersect(D1: DivisorClass, D2: DivisorClass, S: SurfaceModel) -> int:
    return -S.e * D1.a * D2.a + D1.a * D2.b + D2.a * D1.b


def canonical_class(S: SurfaceModel) -> DivisorClass:
    return DivisorClass(-2, 2 * S.gamma - 2 - S.e)


def adjunction_genus(D: DivisorClass, S: SurfaceModel) -> int:
    twice = intersect(canonical_class(S) + D, D, S) + 2
    if twice % 2:
        raise ArithmeticError("odd adjunction number")
    return twice // 2


def genus_formula(m: int, e: int, gamma: int, case: str) -> int:
    """Genus of a smooth member of |mH| (case "A") or |mH + F| (case "B")."""
    case = case.upper()
    base = math.comb(m, 2) * e + m * gamma
    if case == "A":
        return base + 1 - m
    if case == "B":
        return base
    raise ValueError(f"unknown case {case!r}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def adjunction_quadratic_roots(m: int, e: int, gamma: int) -> tuple[Fraction, Fraction]:
    """Roots in a of (K + aY0 + beta F).(aY0 + beta F) = 2g - 2.

    beta has degree m*e and g is the genus of a degree-m cover cut by a
    degree-m hypersurface; the equation is
    -a(a-2)e + me(a-2) + a(2gamma-2-e+me) = m((m-1)e + 2(gamma-1)).
    Returned sorted ascending.
    """
    if e < 1:
        raise ValueError("e must be at least 1")
    # A a^2 + B a + C = 0
    A = Fraction(-e)
    B = Fraction(2 * e + m * e + (2 * gamma - 2 - e + m * e))
    C = Fraction(-2 * m * e - m * ((m - 1) * e + 2 * (gamma - 1)))
    disc = B * B - 4 * A * C
    root = _rational_sqrt(disc)
    if root is None:
        raise ArithmeticError("adjunction quadratic has irrational roots")
    r1, r2 = (-B + root) / (2 * A), (-B - root) / (2 * A)
    return tuple(sorted((r1, r2)))


@dataclass(frozen=True)
class Recognition:
    case: str  # "A", "B" or "inconsistent"
    m: int | None = None

    @property
    def consistent(self) -> bool:
        return self.case != "inconsistent"


def recognize_cover(d: int, g: int, e: int, gamma: int, through_vertex: bool) -> Recognition:
    """Recover the sheet number from degree and genus of a curve on the cone."""
    if e < 1:
        raise ValueError("e must be at least 1")
    if through_vertex:
        if (d - 1) % e:
            return Recognition("inconsistent")
        m, case = (d - 1) // e, "B"
    else:
        if d % e:
            return Recognition("inconsistent")
        m, case = d // e, "A"
    if m < 2 or genus_formula(m, e, gamma, case) != g:
        return Recognition("inconsistent")
    return Recognition(case, m)


def pushforward_Ok(k: int, e: int) -> tuple[list[int], list[int]]:
    """Degrees of f_* O(kH) and R^1 f_* O(kH) for E = O + O(e) over P^1-type bases.

    f_* O(k) = Sym^k E for k >= 0, zero otherwise; R^1 f_* O(k) vanishes for
    k >= -1 and equals (Sym^(-k-2) E)^dual tensor det(E)^dual for k <= -2.
    """
    if e < 1:
        raise ValueError("e must be at least 1")
    direct = [j * e for j in range(k + 1)] if k >= 0 else []
    if k >= -1:
        r1 = []
    else:
        r1 = [-j * e - e for j in range(-k - 2 + 1)]
    return direct, r1


def direct_images(D: DivisorClass, S: SurfaceModel) -> tuple[list[int], list[int]]:
    """Degrees of f_* O(D) and R^1 f_* O(D) via the projection formula."""
    k, t = D.hf_form(S.e)
    direct, r1 = pushforward_Ok(k, S.e)
    return [d + t for d in direct], [d + t for d in r1]


def _p1_cohomology(degrees: Iterable[int]) -> tuple[int, int]:
    degs = list(degrees)
    return sum(max(0, d + 1) for d in degs), sum(max(0, -d - 1) for d in degs)


def surface_cohomology(D: DivisorClass, S: SurfaceModel) -> tuple[int, int, int]:
    """(h0, h1, h2) of O(D) on F_e by the Leray spectral sequence (gamma = 0)."""
    if S.gamma != 0:
        raise ValueError("exact dimensions are only available over P^1")
    direct, r1 = direct_images(D, S)
    h0d, h1d = _p1_cohomology(direct)
    h0r, h1r = _p1_cohomology(r1)
    return h0d, h1d + h0r, h1r


@dataclass(frozen=True)
class SplittingPrediction:
    degrees: tuple[int, ...]
    case: str
    m: int
    e: int
    delta: int
    gamma: int

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def matches(self, other) -> bool:
        return sorted(self.degrees) == sorted(other)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "degrees": list(self.degrees),
            "input": {"m": self.m, "e": self.e, "delta": self.delta, "gamma": self.gamma},
        }


def _prediction(degs: Iterable[int], case, m, e, delta, gamma) -> SplittingPrediction:
    return SplittingPrediction(tuple(sorted(degs, reverse=True)), case, m, e, delta, gamma)


def _check_params(m: int, e: int, delta: int, gamma: int):
    if m < 2:
        raise ValueError("m must be at least 2")
    if e < 1:
        raise ValueError("e must be at least 1")
    if delta < 0 or gamma < 0:
        raise ValueError("delta and gamma must be nonnegative")


def predict_thm_a(m: int, e: int, delta: int = 0, gamma: int = 0) -> SplittingPrediction:
    """Degrees of phi_* O_X for X in |mH + f^*Delta|.

    0 -> O_Y -> phi_* O_X -> R^1 f_* O(-mH - f^*Delta) -> 0, and the sequence
    splits under the vanishing hypothesis.
    """
    _check_params(m, e, delta, gamma)
    _, r1 = pushforward_Ok(-m, e)
    return _prediction([0] + [d - delta for d in r1], "a", m, e, delta, gamma)


def predict_thm_b(m: int, e: int, delta: int = 0, gamma: int = 0) -> SplittingPrediction:
    """Degrees of phi_* O_X((H - f^*E)|_X), a rank-m bundle.

    0 -> f_* O(H - f^*E) -> phi_* O_X((H - f^*E)|_X)
      -> R^1 f_* O(-(m-1)H - f^*(E + Delta)) -> 0.
    """
    _check_params(m, e, delta, gamma)
    direct, _ = pushforward_Ok(1, e)
    _, r1 = pushforward_Ok(-(m - 1), e)
    degs = [d - e for d in direct] + [d - e - delta for d in r1]
    return _prediction(degs, "b", m, e, delta, gamma)


def predict_tschirnhausen(m: int, e: int, delta: int = 0, gamma: int = 0) -> SplittingPrediction:
    """Degrees of the Tschirnhausen module: [O + O(-E) + ... + O(-(m-2)E)] (-E-Delta)."""
    _check_params(m, e, delta, gamma)
    return _prediction([-k * e - e - delta for k in range(m - 1)], "tschirnhausen", m, e, delta, gamma)


class Hypothesis(str, Enum):
    GUARANTEED = "guaranteed"
    UNKNOWN = "unknown"


def hypothesis_check(m: int, e: int, delta: int = 0, gamma: int = 0) -> Hypothesis:
    """Whether H^1(O_Y(kE + Delta)) = 0 for k < m is forced by degree alone."""
    if all(k * e + delta >= 2 * gamma - 1 for k in range(1, m)):
        return Hypothesis.GUARANTEED
    return Hypothesis.UNKNOWN


@dataclass(frozen=True)
class ConeNumerics:
    R: int
    base_degree: int
    image_degree: int
    through_vertex: bool

    def to_json(self) -> dict:
        return {
            "R": self.R,
            "base_degree": self.base_degree,
            "image_degree": self.image_degree,
            "through_vertex": self.through_vertex,
        }


def cone_numerics(m: int, e: int, gamma: int, case: str) -> ConeNumerics:
    if e < 1 or e < 2 * gamma - 1:
        raise ValueError("need e >= 1 and e >= 2*gamma - 1")
    case = case.upper()
    if case not in ("A", "B"):
        raise ValueError(f"unknown case {case!r}")
    through = case == "B"
    return ConeNumerics(e - gamma + 1, e, m * e + (1 if through else 0), through)


def genus_from_splitting(t: Iterable[int]) -> int:
    """h^1(O_X) read off the splitting of phi_* O_X."""
    degs = list(t)
    if any(d > 0 for d in degs):
        raise ValueError(f"splitting {degs} has a positive entry")
    return sum(-d - 1 for d in degs if d <= -2)
