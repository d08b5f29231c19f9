import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tschirn
from tschirn.arith import BiPoly, UniPoly
from tschirn.geometry import DivisorClass, SurfaceModel, intersect
from tschirn.instances import (
    CoxCurve,
    InstanceError,
    PlaneCurve,
    TangencyError,
    base_point,
    chart_equations,
    dump_instance,
    load_instance,
    normalize_base_point,
    plane_to_cox,
    random_instance,
    random_plane_curve,
    smoothness_check,
    tangency_order,
)
from tschirn.verify import verify_plane

x = UniPoly.gen()
ONE = UniPoly((1,))
GOLDEN = Path(tschirn.__file__).parent / "data" / "golden"


def test_chart_equations_example():
    X = CoxCurve(2, 1, 0, (x**2 + 1, x, ONE))
    ch = chart_equations(X)
    assert ch.zero_w == BiPoly.from_fiber_coeffs([x**2 + 1, x, ONE], ("x", "w"))
    assert [c.with_var("x") for c in ch.zero_z.fiber_coeffs()] == [ONE, x, x**2 + 1]


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 1), st.integers(0, 10**6))
def test_chart_at_infinity_consistency(m, e, delta, seed):
    # w' = w x^-e and F(x, w) x^-(me + delta) = F_inf(1/x, w')
    rng = random.Random(seed)
    coeffs = tuple(UniPoly([rng.randint(-4, 4) for _ in range((m - i) * e + delta + 1)]) for i in range(m + 1))
    if not coeffs[0] or not coeffs[m]:
        return
    X = CoxCurve(m, e, delta, coeffs)
    for _ in range(4):
        x0 = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        w0 = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        lhs = sum(c(x0) * w0**i for i, c in enumerate(X.coeffs)) * x0 ** -(m * e + delta)
        wp = w0 * x0**-e
        rhs = sum(X.form_at_infinity(i)(1 / x0) * wp**i for i in range(m + 1))
        assert lhs == rhs


def test_nodal_golden_witness():
    curve, _ = load_instance(GOLDEN / "cox_nodal.json")
    v = smoothness_check(curve)
    assert not v.smooth
    assert v.base_values() == [Fraction(0)]


def test_section_is_smooth():
    assert smoothness_check(CoxCurve(1, 1, 0, (x + 1, ONE))).smooth


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), st.integers(1, 2), st.integers(-2, 2), st.integers(0, 10**6))
def test_planted_node_is_found(m, e, x0, seed):
    # c_0 = (x - x0)^2 r, c_1 = (x - x0) s: F, F_x, F_w vanish at (x0, 0)
    rng = random.Random(seed)
    deg = [(m - i) * e for i in range(m + 1)]

    def rnd(d):
        return UniPoly([rng.randint(-3, 3) for _ in range(d + 1)])

    r = rnd(deg[0] - 2) or ONE
    s = rnd(deg[1] - 1)
    coeffs = [(x - x0) ** 2 * r, (x - x0) * s] + [rnd(d) for d in deg[2:]]
    if not coeffs[m]:
        coeffs[m] = ONE
    v = smoothness_check(CoxCurve(m, e, 0, tuple(coeffs)))
    assert not v.smooth
    assert Fraction(x0) in v.base_values()


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 3), st.integers(1, 2), st.integers(0, 1), st.integers(0, 10**6))
def test_accepted_instances_have_no_small_singular_points(m, e, delta, seed):
    X = random_instance(m, e, delta, seed, bound=3).curve
    c = X.coeffs
    dc = [a.derivative() for a in c]
    grid = sorted({Fraction(p, q) for p in range(-4, 5) for q in (1, 2, 3)})
    for x0, w0 in itertools.product(grid, grid):
        F = sum(a(x0) * w0**i for i, a in enumerate(c))
        if F:
            continue
        Fx = sum(a(x0) * w0**i for i, a in enumerate(dc))
        Fw = sum(i * a(x0) * w0 ** (i - 1) for i, a in enumerate(c) if i)
        assert Fx or Fw


def test_base_point_and_normalization():
    def curve(cm):
        return CoxCurve(2, 1, 1, (x**3 + 1, x**2 + 2, cm))

    assert base_point(curve(x - 2)) == 2
    assert base_point(curve(x)) == 0
    assert base_point(curve(ONE)) is None
    for cm in (x - 2, x, ONE, 3 * x + 1):
        X = curve(cm)
        Y, mob = normalize_base_point(X)
        assert base_point(Y) == 0
        assert mob.apply(Fraction(0)) == base_point(X)
    with pytest.raises(InstanceError):
        base_point(CoxCurve(2, 1, 0, (x**2 + 1, x, ONE)))


def test_random_instance_is_deterministic():
    a = random_instance(3, 2, 1, "abc")
    b = random_instance(3, 2, 1, "abc")
    assert a.curve == b.curve and a.rejections == b.rejections
    assert smoothness_check(a.curve).smooth
    with pytest.raises(InstanceError):
        random_instance(1, 1, 0, 0)


def test_cox_validation():
    with pytest.raises(InstanceError):
        CoxCurve(2, 1, 0, (x**3, x, ONE))
    with pytest.raises(InstanceError):
        CoxCurve(2, 1, 0, (x, x, UniPoly(())))


@pytest.mark.parametrize(
    "name,case,m",
    [("plane_fermat_quartic", "a", 4), ("plane_conic", "a", 2), ("plane_quartic_through_center", "b", 3)],
)
def test_plane_pipeline(name, case, m):
    _, plane = load_instance(GOLDEN / f"{name}.json")
    X, got = plane_to_cox(plane)
    assert got == case and X.m == m and X.e == 1
    assert X.delta == (1 if case == "b" else 0)
    S = SurfaceModel(1)
    D = DivisorClass(X.m, X.m * X.e + X.delta)
    assert intersect(D, DivisorClass.Y0(), S) == X.delta
    assert intersect(D, DivisorClass.H(1), S) == plane.degree
    report = verify_plane(plane)
    assert report.ok and report.case == case


def test_tangency_orders():
    conic = PlaneCurve({(2, 0, 0): 1, (0, 1, 1): -1}, 2, (0, 0, 1), (0, 0, 1))
    assert tangency_order(conic) == 2
    _, flex = load_instance(GOLDEN / "plane_cubic_flex.json")
    assert tangency_order(flex) == 3
    with pytest.raises(TangencyError, match="tangency order 3"):
        plane_to_cox(flex)


def test_plane_center_on_line_rejected():
    with pytest.raises(InstanceError):
        PlaneCurve({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, 2, (1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("m,through", [(3, False), (4, True), (3, True)])
def test_random_plane_curves(m, through):
    C = random_plane_curve(m, 5, through_center=through)
    assert (C(C.center) == 0) == through
    assert random_plane_curve(m, 5, through_center=through) == C


def test_json_round_trips():
    X = random_instance(3, 1, 1, 4).curve
    assert CoxCurve.from_json(X.to_json()) == X
    _, plane = load_instance(GOLDEN / "plane_quartic_through_center.json")
    assert PlaneCurve.from_json(plane.to_json()) == plane
    curve, again = load_instance(dump_instance(X, plane))
    assert curve == X and again == plane
