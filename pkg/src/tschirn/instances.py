"""Curves on Hirzebruch surfaces in Cox coordinates, smoothness certificates, plane curves.

A curve X in |mH + delta F| on F_e is F = sum_i c_i(s, t) u^(m-i) v^i with
c_i homogeneous of degree (m-i)e + delta.  Here u is the section coordinate
(class Y0) and v has class H.  Forms are stored dehomogenized, c_i(x, 1),
together with their formal degree.

Four affine charts: base x = s/t or x' = t/s, fiber w = v/(u t^e) or its
reciprocal.  In the chart at zero with fiber coordinate w the equation is
sum_i c_i(x, 1) w^i.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .arith import BiPoly, QuotientCtx, SplitEvent, UniPoly, format_rat, gcd, parse_rat, resultant_fiber, squarefree_part
from .polymat import rational_nullspace

__all__ = [
    "CoxCurve",
    "ChartEquations",
    "SmoothnessVerdict",
    "Witness",
    "PlaneCurve",
    "Mobius",
    "InstanceError",
    "TangencyError",
    "RejectionBudgetExceeded",
    "RandomInstance",
    "chart_equations",
    "smoothness_check",
    "base_point",
    "normalize_base_point",
    "random_instance",
    "plane_to_cox",
    "tangency_order",
    "random_plane_curve",
    "rational_roots",
    "load_instance",
    "dump_instance",
]


class InstanceError(ValueError):
    pass


class TangencyError(InstanceError):
    pass


class RejectionBudgetExceeded(RuntimeError):
    pass


_ZERO = UniPoly(())
_ONE = UniPoly((1,))


@dataclass(frozen=True)
class CoxCurve:
    m: int
    e: int
    delta: int
    coeffs: tuple[UniPoly, ...]  # c_i(x, 1), i = 0..m

    def __post_init__(self):
        if self.m < 1:
            raise InstanceError("m must be at least 1")
        if self.e < 1:
            raise InstanceError("e must be at least 1")
        if self.delta not in (0, 1):
            raise InstanceError("delta must be 0 or 1")
        if len(self.coeffs) != self.m + 1:
            raise InstanceError(f"expected {self.m + 1} coefficient forms, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(c.with_var("x") for c in self.coeffs))
        for i, c in enumerate(self.coeffs):
            if c and c.degree > self.form_degree(i):
                raise InstanceError(f"c_{i} has degree {c.degree} > {self.form_degree(i)}")
        if not self.coeffs[0] or not self.coeffs[self.m]:
            raise InstanceError("c_0 and c_m must be nonzero")

    def form_degree(self, i: int) -> int:
        return (self.m - i) * self.e + self.delta

    def form_at_infinity(self, i: int) -> UniPoly:
        """c_i(1, x') as a polynomial in x'."""
        c = self.coeffs[i]
        return c.reverse(self.form_degree(i)) if c else _ZERO

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "e": self.e,
            "delta": self.delta,
            "coefficients": {str(i): c.to_json() if c else ["0"] for i, c in enumerate(self.coeffs)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoxCurve":
        m = int(data["m"])
        raw = data["coefficients"]
        coeffs = tuple(UniPoly.from_json(raw[str(i)] if str(i) in raw else raw.get(i, ["0"])) for i in range(m + 1))
        return cls(m, int(data["e"]), int(data["delta"]), coeffs)


@dataclass(frozen=True)
class ChartEquations:
    zero_w: BiPoly
    zero_z: BiPoly
    inf_w: BiPoly
    inf_z: BiPoly


def chart_equations(X: CoxCurve) -> ChartEquations:
    c = list(X.coeffs)
    ci = [X.form_at_infinity(i) for i in range(X.m + 1)]
    return ChartEquations(
        BiPoly.from_fiber_coeffs(c, ("x", "w")),
        BiPoly.from_fiber_coeffs(c[::-1], ("x", "z")),
        BiPoly.from_fiber_coeffs(ci, ("x'", "w'")),
        BiPoly.from_fiber_coeffs(ci[::-1], ("x'", "z'")),
    )


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Singular points lie over the roots of ``locus`` in the named chart."""

    chart: str
    locus: UniPoly
    rational_values: tuple[Fraction, ...] = ()

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "locus": self.locus.to_json(),
            "base_values": [format_rat(v) for v in self.rational_values],
        }


@dataclass(frozen=True)
class SmoothnessVerdict:
    smooth: bool
    witnesses: tuple[Witness, ...] = ()

    def __bool__(self):
        return self.smooth

    def base_values(self) -> list[Fraction]:
        return sorted({v for w in self.witnesses for v in w.rational_values})

    def to_json(self) -> dict:
        return {"smooth": self.smooth, "witnesses": [w.to_json() for w in self.witnesses]}


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: UniPoly, limit: int = 10**12) -> list[Fraction]:
    """Rational roots of p by the rational root test (skipped for huge constants)."""
    if p.is_zero() or p.is_const():
        return []
    v = p.valuation()
    roots = [Fraction(0)] if v else []
    q = UniPoly(p.coeffs[v:])
    if q.degree == 0:
        return roots
    den = math.lcm(*(c.denominator for c in q.coeffs))
    ints = [int(c * den) for c in q.coeffs]
    a0, an = ints[0], ints[-1]
    if q.degree == 1:
        return sorted(roots + [Fraction(-a0, an)])
    if abs(a0) > limit or abs(an) > limit:
        return roots
    for num in _divisors(a0):
        for dd in _divisors(an):
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if cand not in roots and not q(cand):
                    roots.append(cand)
    return sorted(roots)


def _strip(ctx: QuotientCtx, f: list[UniPoly]) -> list[UniPoly]:
    f = [ctx.reduce(a) for a in f]
    while f and f[-1].is_zero():
        f.pop()
    return f


def _gcd_mod(ctx: QuotientCtx, f: list[UniPoly], g: list[UniPoly]) -> list[UniPoly]:
    """Monic gcd in (Q[x]/h)[w]; raises SplitEvent on a zero divisor."""
    f, g = _strip(ctx, f), _strip(ctx, g)
    while g:
        inv = ctx.inverse(g[-1])
        g = [ctx.mul(a, inv) for a in g]
        while len(f) >= len(g):
            c = f[-1]
            shift = len(f) - len(g)
            for k, b in enumerate(g):
                f[shift + k] = ctx.sub(f[shift + k], ctx.mul(c, b))
            f = _strip(ctx, f)
            if not f:
                break
        f, g = g, f
    if f:
        inv = ctx.inverse(f[-1])
        f = [ctx.mul(a, inv) for a in f]
    return f


def _chart_singular_locus(F: BiPoly) -> list[UniPoly] | None:
    """Squarefree polynomials whose roots carry the singular points of F = 0.

    Returns None if F has a repeated factor (the whole curve is singular).
    """
    Fw, Fx = F.d_fiber(), F.d_base()
    var = F.names[0]
    if Fw.is_zero():
        return None
    r1 = resultant_fiber(F, Fw)
    if r1.is_zero():
        return None
    h = r1 if Fx.is_zero() else gcd(r1, resultant_fiber(F, Fx))
    if h.is_const():
        return []
    work = [squarefree_part(h).monic()]
    out = []
    polys = [G.fiber_coeffs() if not G.is_zero() else [] for G in (F, Fw, Fx)]
    while work:
        h = work.pop()
        ctx = QuotientCtx(h)
        try:
            g = _gcd_mod(ctx, polys[0], polys[1])
            if len(g) != 1:
                g = _gcd_mod(ctx, g, polys[2])
        except SplitEvent as ev:
            work.extend(f for f in ev.factors if not f.is_const())
            continue
        if len(g) != 1:
            out.append(h.with_var(var))
    return out


def _fiber_gcd(polys: Sequence[Sequence[Fraction]]) -> UniPoly:
    g = _ZERO
    for p in polys:
        g = gcd(g, UniPoly(p, "w"))
    return g


def smoothness_check(X: CoxCurve) -> SmoothnessVerdict:
    """Decide smoothness chart by chart; singular verdicts carry base loci."""
    charts = chart_equations(X)
    witnesses: list[Witness] = []

    # chart at zero, w finite
    loci = _chart_singular_locus(charts.zero_w)
    if loci is None:
        return SmoothnessVerdict(False, (Witness("0,w", _ZERO),))
    for h in loci:
        witnesses.append(Witness("0,w", h, tuple(rational_roots(h))))

    # chart at zero, z = 0: c_m = c_(m-1) = c_m' = 0
    cm, cm1 = X.coeffs[X.m], X.coeffs[X.m - 1]
    h = gcd(gcd(cm, cm1), cm.derivative())
    if not h.is_const():
        h = squarefree_part(h).monic()
        witnesses.append(Witness("0,z", h, tuple(rational_roots(h))))

    # fiber over x' = 0
    ci = [X.form_at_infinity(i) for i in range(X.m + 1)]
    h0 = [p[0] for p in ci]
    h1 = [p[1] for p in ci]
    at_inf = UniPoly(h0, "w")
    if at_inf.is_zero():
        witnesses.append(Witness("inf,w", UniPoly.gen("x'"), (Fraction(0),)))
    else:
        g = _fiber_gcd([h0, at_inf.derivative().coeffs, h1])
        if not g.is_const():
            witnesses.append(Witness("inf,w", UniPoly.gen("x'"), (Fraction(0),)))
        elif not h0[X.m] and not h0[X.m - 1] and not h1[X.m]:
            witnesses.append(Witness("inf,z", UniPoly.gen("x'"), (Fraction(0),)))
    return SmoothnessVerdict(not witnesses, tuple(witnesses))


# ---------------------------------------------------------------------------
# base point and coordinate changes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mobius:
    """x_old = (a x + b) / (c x + d)."""

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(1)

    def apply(self, x):
        """Old coordinate of the new point x (None stands for infinity)."""
        if x is None:
            return None if self.c == 0 else self.a / self.c
        den = self.c * x + self.d
        return None if den == 0 else (self.a * x + self.b) / den

    def to_json(self) -> list[str]:
        return [format_rat(v) for v in (self.a, self.b, self.c, self.d)]


def base_point(X: CoxCurve) -> Fraction | None:
    """Base value of X meeting Y0 (root of the linear form c_m); None means infinity."""
    if X.delta != 1:
        raise InstanceError("base point is defined for delta = 1 only")
    cm = X.coeffs[X.m]
    beta, alpha = cm[0], cm[1]
    if alpha == 0:
        return None
    return -beta / alpha


def normalize_base_point(X: CoxCurve) -> tuple[CoxCurve, Mobius]:
    """Change base coordinates so that the base point sits at x = 0."""
    q = base_point(X)
    if q == 0:
        return X, Mobius()
    if q is None:
        # swap s and t
        coeffs = tuple(X.form_at_infinity(i).with_var("x") for i in range(X.m + 1))
        return CoxCurve(X.m, X.e, X.delta, coeffs), Mobius(Fraction(0), Fraction(1), Fraction(1), Fraction(0))
    sub = UniPoly((q, 1))  # x_old = x_new + q
    coeffs = tuple(c(sub) if c else c for c in X.coeffs)
    return CoxCurve(X.m, X.e, X.delta, coeffs), Mobius(Fraction(1), q, Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RandomInstance:
    curve: CoxCurve
    rejections: int
    seed: object = None


def _random_form(rng: random.Random, degree: int, bound: int) -> UniPoly:
    return UniPoly([rng.randint(-bound, bound) for _ in range(degree + 1)])


def random_instance(
    m: int,
    e: int,
    delta: int,
    seed,
    bound: int = 5,
    max_attempts: int = 100,
    accept: Callable[[CoxCurve], bool] | None = None,
) -> RandomInstance:
    """Rejection-sample a smooth curve in |mH + delta F| on F_e.

    ``accept`` is an extra gate (for example the connectedness check of the
    verifier); rejected draws count towards the budget.
    """
    if m < 2:
        raise InstanceError("m must be at least 2")
    if e < 1:
        raise InstanceError("e must be at least 1")
    if delta not in (0, 1):
        raise InstanceError("delta must be 0 or 1")
    rng = random.Random(seed)
    rejections = 0
    for _ in range(max_attempts):
        coeffs = []
        for i in range(m + 1):
            deg = (m - i) * e + delta
            c = _random_form(rng, deg, bound)
            while (i == 0 or i == m) and c.is_zero():
                c = _random_form(rng, deg, bound)
            coeffs.append(c)
        X = CoxCurve(m, e, delta, tuple(coeffs))
        if smoothness_check(X).smooth and (accept is None or accept(X)):
            return RandomInstance(X, rejections, seed)
        rejections += 1
    raise RejectionBudgetExceeded(f"no acceptable curve after {max_attempts} attempts for (m={m}, e={e}, delta={delta})")


# ---------------------------------------------------------------------------
# plane curves
# ---------------------------------------------------------------------------

Monomial = tuple[int, int, int]


def _form_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            k = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            out[k] = out.get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _form_pow(f: dict, n: int) -> dict:
    out = {(0, 0, 0): Fraction(1)}
    for _ in range(n):
        out = _form_mul(out, f)
    return out


def _linear_substitute(G: Mapping[Monomial, Fraction], A: Sequence[Sequence[Fraction]]) -> dict:
    """G(A @ (X, Y, Z)) for a 3x3 matrix A."""
    lins = [{(1, 0, 0): A[r][0], (0, 1, 0): A[r][1], (0, 0, 1): A[r][2]} for r in range(3)]
    lins = [{k: v for k, v in L.items() if v} for L in lins]
    out: dict = {}
    for (i, j, k), c in G.items():
        term = _form_mul(_form_mul(_form_pow(lins[0], i), _form_pow(lins[1], j)), _form_pow(lins[2], k))
        for mono, v in term.items():
            out[mono] = out.get(mono, 0) + c * v
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class PlaneCurve:
    """G(X, Y, Z) = 0 of degree m, a projection center P and a target line L.

    ``line`` holds the coefficients of the linear form cutting out L.
    """

    terms: Mapping[Monomial, Fraction]
    degree: int
    center: tuple[Fraction, Fraction, Fraction]
    line: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        terms = {tuple(int(a) for a in k): parse_rat(v) for k, v in dict(self.terms).items()}
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            raise InstanceError("zero plane form")
        if any(sum(k) != self.degree for k in terms):
            raise InstanceError("plane form is not homogeneous of the stated degree")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "center", tuple(parse_rat(v) for v in self.center))
        object.__setattr__(self, "line", tuple(parse_rat(v) for v in self.line))
        if not any(self.center):
            raise InstanceError("projection center must be a point")
        if not any(self.line):
            raise InstanceError("target line must be a nonzero form")
        if sum(a * b for a, b in zip(self.center, self.line)) == 0:
            raise InstanceError("projection center lies on the target line")

    def __call__(self, pt) -> Fraction:
        return sum((c * pt[0] ** i * pt[1] ** j * pt[2] ** k for (i, j, k), c in self.terms.items()), Fraction(0))

    def gradient(self, pt) -> tuple[Fraction, Fraction, Fraction]:
        out = [Fraction(0)] * 3
        for (i, j, k), c in self.terms.items():
            ex = (i, j, k)
            for v in range(3):
                if ex[v]:
                    d = list(ex)
                    d[v] -= 1
                    out[v] += c * ex[v] * pt[0] ** d[0] * pt[1] ** d[1] * pt[2] ** d[2]
        return tuple(out)

    def along(self, base, direction) -> UniPoly:
        """G(base + t * direction) as a polynomial in t."""
        lin = [UniPoly((base[r], direction[r]), "t") for r in range(3)]
        acc = UniPoly((), "t")
        for (i, j, k), c in self.terms.items():
            acc = acc + (lin[0] ** i) * (lin[1] ** j) * (lin[2] ** k) * c
        return acc

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "G": [[i, j, k, format_rat(c)] for (i, j, k), c in sorted(self.terms.items())],
            "P": [format_rat(v) for v in self.center],
            "L": [format_rat(v) for v in self.line],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlaneCurve":
        terms = {(int(i), int(j), int(k)): parse_rat(c) for i, j, k, c in data["G"]}
        degree = int(data.get("degree", sum(next(iter(terms)))))
        return cls(terms, degree, tuple(data["P"]), tuple(data["L"]))


def tangency_order(C: PlaneCurve, P=None) -> int:
    """Intersection multiplicity at P of C with its tangent line there."""
    P = C.center if P is None else tuple(parse_rat(v) for v in P)
    if C(P) != 0:
        raise InstanceError("point is not on the curve")
    grad = C.gradient(P)
    if not any(grad):
        raise InstanceError("curve is singular at the point")
    for D in rational_nullspace([list(grad)], 3):
        if rational_nullspace([list(P), list(D)], 3).__len__() == 1:
            break
    else:  # pragma: no cover - the tangent plane is 2-dimensional and contains P
        raise InstanceError("cannot parametrize the tangent line")
    g = C.along(P, D)
    if g.is_zero():
        raise InstanceError("the tangent line is a component of the curve")
    return g.valuation()


def plane_to_cox(C: PlaneCurve) -> tuple[CoxCurve, str]:
    """Strict transform of C in the blow-up of the center, as a curve on F_1.

    Returns the Cox data and the case tag: "a" (center off the curve, m' = m,
    delta = 0) or "b" (center on the curve with simple tangency, m' = m - 1,
    delta = 1).
    """
    L1, L2 = rational_nullspace([list(C.line)], 3)
    A = [[L1[r], L2[r], C.center[r]] for r in range(3)]
    G = _linear_substitute(C.terms, A)
    m = C.degree
    # Z-power i coefficient, as a form in X, Y of degree m - i, dehomogenized at Y = 1
    g = [UniPoly([G.get((a, m - i - a, i), 0) for a in range(m - i + 1)]) for i in range(m + 1)]
    if C(C.center) != 0:
        return CoxCurve(m, 1, 0, tuple(g)), "a"
    order = tangency_order(C)
    if order != 2:
        raise TangencyError(f"center meets the curve with tangency order {order}; simple tangency (order 2) is required")
    return CoxCurve(m - 1, 1, 1, tuple(g[:m])), "b"


def _random_point(rng: random.Random, bound: int) -> tuple[Fraction, ...]:
    while True:
        p = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))
        if any(p):
            return p


def random_plane_curve(m: int, seed, bound: int = 3, through_center: bool = False) -> PlaneCurve:
    """Random integer plane curve of degree m with a random center and line.

    With ``through_center`` the form is corrected so that the center lies on
    the curve.  Smoothness is not enforced here; see the verifier.
    """
    rng = random.Random(seed)
    monos = [(i, j, m - i - j) for i in range(m + 1) for j in range(m + 1 - i)]
    while True:
        P = _random_point(rng, bound)
        L = _random_point(rng, bound)
        if sum(a * b for a, b in zip(P, L)) == 0:
            continue
        terms = {mono: Fraction(rng.randint(-bound, bound)) for mono in monos}
        if through_center:
            val = sum(c * P[0] ** i * P[1] ** j * P[2] ** k for (i, j, k), c in terms.items())
            fix = next((mono for mono in monos if P[0] ** mono[0] * P[1] ** mono[1] * P[2] ** mono[2]), None)
            pv = P[0] ** fix[0] * P[1] ** fix[1] * P[2] ** fix[2]
            terms[fix] -= val / pv
        elif sum(c * P[0] ** i * P[1] ** j * P[2] ** k for (i, j, k), c in terms.items()) == 0:
            continue
        if any(terms.values()):
            return PlaneCurve(terms, m, P, L)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def load_instance(path_or_data) -> tuple[CoxCurve | None, PlaneCurve | None]:
    """Read an instance document; either part may be absent."""
    if isinstance(path_or_data, Mapping):
        data = path_or_data
    else:
        with open(path_or_data) as fh:
            data = json.load(fh)
    if "instance" in data and "coefficients" not in data:
        data = data["instance"]
    curve = CoxCurve.from_json(data) if "coefficients" in data else None
    plane = PlaneCurve.from_json(data["plane"]) if "plane" in data else None
    if curve is None and plane is None:
        raise InstanceError("instance document has neither coefficients nor a plane curve")
    return curve, plane


def dump_instance(curve: CoxCurve | None = None, plane: PlaneCurve | None = None) -> dict:
    out: dict = {}
    if curve is not None:
        out.update(curve.to_json())
    if plane is not None:
        out["plane"] = plane.to_json()
    return out
