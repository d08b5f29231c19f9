"""End-to-end verification: compute splitting types from equations and compare with predictions."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from .arith import format_rat
from .birkhoff import BirkhoffError, factorize
from .funcfield import (
    FieldElement,
    FuncFieldError,
    Lattice,
    ReducibleInputError,
    TransitionError,
    closure_at_infinity,
    colon_lattice,
    integral_closure,
    make_integral,
    point_ideal,
    transition_matrix,
)
from .geometry import (
    DivisorClass,
    SurfaceModel,
    adjunction_genus,
    genus_formula,
    genus_from_splitting,
    predict_thm_a,
    predict_thm_b,
)
from .instances import CoxCurve, Mobius, base_point, PlaneCurve, SmoothnessVerdict, chart_equations, normalize_base_point, plane_to_cox, smoothness_check

__all__ = [
    "InvalidInstance",
    "ContractViolation",
    "VerifyReport",
    "ChartLattices",
    "chart_lattices",
    "connected",
    "verify_instance",
    "verify_plane",
]


class InvalidInstance(Exception):
    """Singular or reducible input; ``kind`` is "singular" or "reducible"."""

    def __init__(self, kind: str, message: str, witness=None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": str(self)}
        if isinstance(self.witness, SmoothnessVerdict):
            out["witness"] = self.witness.to_json()
            out["base_values"] = [format_rat(v) for v in self.witness.base_values()]
        elif self.witness is not None:
            out["witness"] = self.witness
        return out


class ContractViolation(Exception):
    """A computed object broke an internal invariant."""


@dataclass(frozen=True)
class ChartLattices:
    curve: CoxCurve
    mobius: Mobius
    chart_zero: Lattice
    chart_infinity: Lattice
    twisted_zero: Lattice | None


def connected(splitting) -> bool:
    """h^0(O_X) = 1: exactly one nonnegative entry, equal to 0."""
    nonneg = [d for d in splitting if d >= 0]
    return nonneg == [0]


def chart_lattices(X: CoxCurve, generic_closure: bool = False) -> ChartLattices:
    """Normalize the base point and build the chart lattices (and the twisted one for delta = 1).

    Unless ``generic_closure`` is set, the closures are only enlarged at the
    primes of the leading fiber coefficient: away from them the chart ring is
    the (smooth, hence normal) affine coordinate ring.
    """
    mob = Mobius()
    if X.delta == 1:
        X, mob = normalize_base_point(X)
    charts = chart_equations(X)
    eq = make_integral(charts.zero_w)
    ell = eq.scale
    ell_inf = X.form_at_infinity(X.m).with_var("x")
    cand0 = None if generic_closure else [ell]
    cand1 = None if generic_closure else [ell_inf]
    M0 = integral_closure(eq, cand0)
    M1 = closure_at_infinity(eq, X.e, X.delta, cand1)
    twisted = None
    if X.delta == 1:
        # eta = l * w with l vanishing simply at 0: eta/x has its only pole over 0 at the base point
        eta = FieldElement.eta_power(X.m, 1)
        P = point_ideal(M0, 0, pole_numerator=eta, eq=eq)
        twisted = colon_lattice(M0, P, eq=eq)
    return ChartLattices(X, mob, M0, M1, twisted)


@dataclass
class VerifyReport:
    m: int
    e: int
    delta: int
    gamma: int = 0
    predicted: list[int] = field(default_factory=list)
    computed: list[int] = field(default_factory=list)
    predicted_twisted: list[int] | None = None
    computed_twisted: list[int] | None = None
    genus: dict = field(default_factory=dict)
    base_point: str | None = None
    case: str | None = None
    timing_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return sorted(self.predicted) == sorted(self.computed)

    @property
    def twisted_match(self) -> bool | None:
        if self.predicted_twisted is None:
            return None
        return sorted(self.predicted_twisted) == sorted(self.computed_twisted or [])

    @property
    def genus_match(self) -> bool:
        vals = list(self.genus.values())
        return bool(vals) and all(v == vals[0] for v in vals)

    @property
    def ok(self) -> bool:
        return self.match and self.twisted_match is not False and self.genus_match

    def to_json(self) -> dict:
        out = {
            "input": {"m": self.m, "e": self.e, "delta": self.delta, "gamma": self.gamma},
            "predicted": self.predicted,
            "computed": self.computed,
            "match": self.match,
            "genus": self.genus,
            "genus_match": self.genus_match,
            "ok": self.ok,
            "timing_ms": round(self.timing_ms, 3),
        }
        if self.predicted_twisted is not None:
            out["predicted_twisted"] = self.predicted_twisted
            out["computed_twisted"] = self.computed_twisted
            out["twisted_match"] = self.twisted_match
        if self.base_point is not None:
            out["base_point"] = self.base_point
        if self.case is not None:
            out["case"] = self.case
        out.update(self.extra)
        return out


def _splitting(M0: Lattice, M1: Lattice) -> list[int]:
    try:
        T = transition_matrix(M0, M1)
        return list(factorize(T).exponents)
    except TransitionError as exc:
        raise ContractViolation(f"transition matrix: {exc}") from exc
    except BirkhoffError as exc:
        raise ContractViolation(f"factorization: {exc}") from exc


def verify_instance(X: CoxCurve, check_smooth: bool = True, generic_closure: bool = False) -> VerifyReport:
    """Run the pipeline on one curve.

    Raises InvalidInstance for singular or disconnected input and
    ContractViolation when a computed transition matrix is not a Laurent
    unit matrix.
    """
    t0 = time.perf_counter()
    if X.m < 2:
        raise InvalidInstance("invalid", "m must be at least 2")
    if check_smooth:
        verdict = smoothness_check(X)
        if not verdict.smooth:
            vals = ", ".join(format_rat(v) for v in verdict.base_values()) or "irrational"
            raise InvalidInstance("singular", f"curve is singular over x in {{{vals}}}", verdict)
    q = None
    if X.delta == 1:
        bp = base_point(X)
        q = "infinity" if bp is None else format_rat(bp)
    try:
        # the leading-coefficient shortcut relies on certified smoothness
        lat = chart_lattices(X, generic_closure or not check_smooth)
    except ReducibleInputError as exc:
        raise InvalidInstance("reducible", "reducible input") from exc
    except FuncFieldError as exc:
        raise ContractViolation(str(exc)) from exc
    computed = _splitting(lat.chart_zero, lat.chart_infinity)
    if not connected(computed):
        raise InvalidInstance("reducible", f"connectedness gate failed: splitting {computed}", {"splitting": computed})
    m, e, d = X.m, X.e, X.delta
    S = SurfaceModel(e, 0, d)
    report = VerifyReport(m, e, d, 0, predicted=list(predict_thm_a(m, e, d).degrees), computed=computed, base_point=q)
    report.genus = {
        "formula": genus_formula(m, e, 0, "A" if d == 0 else "B"),
        "adjunction": adjunction_genus(DivisorClass(m, m * e + d), S),
        "splitting": genus_from_splitting(computed),
    }
    if d == 1:
        report.predicted_twisted = list(predict_thm_b(m, e, d).degrees)
        report.computed_twisted = _splitting(lat.twisted_zero, lat.chart_infinity)
    report.timing_ms = (time.perf_counter() - t0) * 1000
    return report


def verify_plane(C: PlaneCurve, check_smooth: bool = True) -> VerifyReport:
    """Project a plane curve from its center and verify the induced cover."""
    X, case = plane_to_cox(C)
    report = verify_instance(X, check_smooth)
    report.case = case
    report.extra["cover_degree"] = X.m
    report.extra["plane_degree"] = C.degree
    return report
