from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tschirn.arith import BiPoly, UniPoly
from tschirn.birkhoff import factorize
from tschirn.funcfield import (
    CoverEquation,
    FieldElement,
    Lattice,
    PointError,
    ReducibleInputError,
    TransitionError,
    closure_at_infinity,
    colon_lattice,
    integral_closure,
    make_integral,
    point_ideal,
    power_basis_lattice,
    transition_matrix,
)
from tschirn.geometry import genus_formula
from tschirn.instances import random_instance
from tschirn.polymat import LaurentMatrix, PolyMatrix, determinant
from tschirn.verify import chart_lattices

x = UniPoly.gen()
ZERO, ONE = UniPoly(()), UniPoly((1,))


def eq2(c):
    """eta^2 - c."""
    return CoverEquation((ZERO, -c))


def test_make_integral():
    # x w^2 + w + 1 -> eta = x w, eta^2 + eta + x
    F = BiPoly.from_fiber_coeffs([ONE, ONE, x])
    eq = make_integral(F)
    assert eq.coeffs == (ONE, x)
    assert eq.scale == x


def test_power_traces():
    eq = eq2(x)
    assert eq.power_traces() == [UniPoly.const(2), ZERO, 2 * x]
    assert eq.discriminant() in (4 * x, -4 * x)


def test_closure_examples():
    eq = eq2(x)
    assert integral_closure(eq).same_module(power_basis_lattice(eq))
    node = eq2(x**2 * (x + 1))
    M = integral_closure(node)
    expected = Lattice(PolyMatrix.diagonal([x, ONE]), x, "x", True, node)
    assert M.same_module(expected)
    line = CoverEquation((x,))
    assert integral_closure(line).same_module(power_basis_lattice(line))


def test_zero_discriminant_is_reducible():
    with pytest.raises(ReducibleInputError):
        integral_closure(CoverEquation((-2 * x, x**2)))  # (eta - x)^2
    with pytest.raises(ReducibleInputError):
        integral_closure(CoverEquation((-2 * x, x**2)), candidates=[x])


def test_cusp_needs_two_steps():
    cusp = eq2(x**3)
    M = integral_closure(cusp)
    expected = Lattice(PolyMatrix.diagonal([x, ONE]), x, "x", True, cusp)
    assert M.same_module(expected)
    tacnode = eq2(x**4 + x**5)
    M = integral_closure(tacnode)
    assert M.same_module(Lattice(PolyMatrix.diagonal([x**2, ONE]), x**2, "x", True, tacnode))


def test_closure_at_infinity_delta_zero():
    e = 2
    eq = eq2(x**4 + 3)
    M1 = closure_at_infinity(eq, e, 0)
    expected = Lattice(PolyMatrix.diagonal([x**e, ONE]), x**e, "1/x", True, eq)
    assert M1.same_module(expected)
    T = transition_matrix(integral_closure(eq), M1)
    assert factorize(T).exponents == (0, -2)


def test_transition_of_equal_lattices_is_identity():
    eq = eq2(x**3 + 1)
    M = integral_closure(eq)
    assert transition_matrix(M, M).T == LaurentMatrix.identity(2)
    bad = Lattice(PolyMatrix.diagonal([ONE, x + 1]), ONE, "x", False, eq)
    with pytest.raises(TransitionError):
        transition_matrix(M, bad)


def test_point_ideal_and_colon():
    eq = eq2(x - 1)
    M = integral_closure(eq)
    P = point_ideal(M, 1, fiber_value=0)
    expected = Lattice(PolyMatrix.diagonal([x - 1, ONE]), ONE, "x", False, eq)
    assert P.lattice.same_module(expected)
    with pytest.raises(PointError):
        point_ideal(M, 1, fiber_value=5)
    Mp = colon_lattice(M, P)
    assert Mp.same_module(Lattice(PolyMatrix.diagonal([x - 1, ONE]), x - 1, "x", False, eq))
    assert M.index_degree(Mp) == -1
    Mpp = colon_lattice(Mp, P)
    assert M.index_degree(Mpp) == -2


def test_point_ideal_routes_agree_at_unramified_point():
    eq = eq2(x**3 + 1)
    M = integral_closure(eq)
    # over x = 0 the fiber is eta = 1, -1; (eta - 1)/x has its only pole over 0 at (0, -1)
    by_value = point_ideal(M, 0, fiber_value=-1)
    by_pole = point_ideal(M, 0, pole_numerator=FieldElement((-ONE, ONE)), eq=eq)
    assert by_value.lattice.same_module(by_pole.lattice)
    assert not by_value.lattice.same_module(point_ideal(M, 0, fiber_value=1).lattice)
    Mp = colon_lattice(M, by_value)
    assert Mp.contains(FieldElement((-ONE, ONE), x))
    assert not Mp.contains(FieldElement((ONE, ONE), x))


def test_colon_by_unit_ideal():
    eq = eq2(x**3 + x + 1)
    M = integral_closure(eq)
    assert colon_lattice(M, M, x0=0).same_module(M)


@pytest.mark.parametrize("m,e,seed", [(2, 1, 0), (3, 1, 1), (4, 1, 2), (3, 2, 3)])
def test_twisted_lattice_adds_w(m, e, seed):
    X = random_instance(m, e, 1, seed).curve
    lat = chart_lattices(X)
    M0, tw = lat.chart_zero, lat.twisted_zero
    eq = M0.eq
    w = FieldElement(tuple(ONE if j == 1 else ZERO for j in range(m)), eq.scale)
    assert tw.contains_lattice(M0)
    assert tw.contains(w)
    assert M0.index_degree(tw) == -1


def test_closure_is_idempotent_and_closed():
    eq = eq2(x**2 * (x - 1) ** 3 * (x + 2))
    M = integral_closure(eq)
    assert M.is_multiplicatively_closed()
    assert M.contains_lattice(power_basis_lattice(eq))
    assert integral_closure(eq, start=M).same_module(M)


def _trace_discriminant(L):
    eq = L.eq
    cols = [list(L.numer.column(j)) for j in range(L.m)]
    gram = [[eq.trace_vec(eq.mul_vec(a, b)) for b in cols] for a in cols]
    return determinant(PolyMatrix(gram)), L.denom ** (2 * L.m)


def _branch_degree(M0, M1):
    # affine part: degree of the discriminant of the maximal order
    n0, d0 = _trace_discriminant(M0)
    q, r = divmod(n0, d0)
    assert not r
    # x' = 1/x: order of vanishing of the discriminant at x' = 0
    n1, d1 = _trace_discriminant(M1)
    return q.degree + (d1.degree - n1.degree)


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 4), st.integers(1, 2), st.integers(0, 1), st.integers(0, 10**6))
def test_closures_satisfy_riemann_hurwitz(m, e, delta, seed):
    X = random_instance(m, e, delta, seed, bound=3).curve
    lat = chart_lattices(X)
    g = genus_formula(m, e, 0, "A" if delta == 0 else "B")
    assert _branch_degree(lat.chart_zero, lat.chart_infinity) == 2 * g - 2 + 2 * m


@settings(max_examples=12, deadline=None)
@given(st.integers(2, 3), st.integers(1, 2), st.integers(0, 1), st.integers(0, 10**6))
def test_generic_closure_agrees_with_shortcut(m, e, delta, seed):
    X = random_instance(m, e, delta, seed, bound=3).curve
    fast = chart_lattices(X)
    slow = chart_lattices(X, generic_closure=True)
    assert fast.chart_zero.same_module(slow.chart_zero)
    assert fast.chart_infinity.same_module(slow.chart_infinity)
    assert fast.chart_zero.is_multiplicatively_closed()


def test_lattice_json_round_trip():
    eq = eq2(x**2 * (x + 1))
    M = integral_closure(eq)
    again = Lattice.from_json(M.to_json(), eq)
    assert again.same_module(M)
    assert CoverEquation.from_json(eq.to_json()) == eq
    assert M.denom.lc == Fraction(1)
