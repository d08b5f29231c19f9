from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tschirn.arith import (
    BiPoly,
    LaurentPoly,
    QuotientCtx,
    SplitEvent,
    UniPoly,
    gcd,
    lcm,
    parse_rat,
    resultant_fiber,
    squarefree_part,
    xgcd,
)

x = UniPoly.gen()
small = st.integers(min_value=-6, max_value=6)
polys = st.lists(small, min_size=0, max_size=6).map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_gcd_examples():
    assert gcd(x**2 - 1, x**2 - 2 * x + 1) == x - 1
    p = 3 * x**2 + 6
    assert gcd(p, UniPoly(())) == p.monic()
    assert gcd(x**3 + x, x**2 + 1) == x**2 + 1


def test_squarefree_examples():
    assert squarefree_part((x - 1) ** 2 * (x + 2)) == (x - 1) * (x + 2)
    assert squarefree_part(x**5) == x
    p = 2 * x**3 - x + 5
    assert squarefree_part(p) == p.monic()


def test_zero_degree_is_sentinel():
    assert UniPoly(()).degree is None
    assert UniPoly((0, 0)).degree is None


def test_rational_parsing_round_trip():
    assert parse_rat("3/6") == Fraction(1, 2)
    p = UniPoly([Fraction(1, 3), 0, Fraction(-5, 2)])
    assert UniPoly.from_json(p.to_json()) == p


@settings(max_examples=80, deadline=None)
@given(polys, polys, nonzero_polys)
def test_gcd_divides_and_cofactors_coprime(a, b, c):
    p, q = a * c, b * c
    if p.is_zero() and q.is_zero():
        return
    g = gcd(p, q)
    assert g.divides(p) and g.divides(q)
    assert c.monic().divides(g) or c.is_const()
    if not p.is_zero() and not q.is_zero():
        assert gcd(p.exact_div(g), q.exact_div(g)).is_const()


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_xgcd_bezout(p, q):
    g, s, t = xgcd(p, q)
    assert s * p + t * q == g
    assert g == gcd(p, q)
    assert lcm(p, q) * g == (p * q).monic()


def test_resultant_examples():
    z_minus_x = BiPoly({(0, 2): 1, (1, 0): -1})
    z = BiPoly({(0, 1): 1})
    r = resultant_fiber(z_minus_x, z)
    assert r in (x, -x)
    zm1 = BiPoly({(0, 1): 1, (0, 0): -1})
    assert resultant_fiber(zm1, zm1).is_zero()
    a, b = x**2 + 3, 2 * x - 1
    F = BiPoly.from_fiber_coeffs([-a, UniPoly((1,))])
    G = BiPoly.from_fiber_coeffs([-b, UniPoly((1,))])
    assert resultant_fiber(F, G) in (a - b, b - a)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), st.lists(polys, min_size=1, max_size=3))
def test_resultant_against_root_product(roots_f, coeffs_g):
    # F = prod (z - r_i(x)); Res_z(F, G) = prod G(x, r_i(x)) for monic F
    F = BiPoly.from_fiber_coeffs([UniPoly((1,))])
    for r in roots_f:
        F = F * BiPoly.from_fiber_coeffs([-r, UniPoly((1,))])
    if all(c.is_zero() for c in coeffs_g):
        return
    G = BiPoly.from_fiber_coeffs(coeffs_g)
    expected = UniPoly((1,))
    gc = G.fiber_coeffs()
    for r in roots_f:
        val = UniPoly(())
        for j, c in enumerate(gc):
            val = val + c * r**j
        expected = expected * val
    assert resultant_fiber(F, G) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-3, 3))
def test_discriminant_vanishes_exactly_at_repeated_roots(roots, x0):
    # F = prod (z - (x - r)); two roots collide at x0 iff some r_i == r_j
    F = BiPoly.from_fiber_coeffs([UniPoly((1,))])
    for r in roots:
        F = F * BiPoly.from_fiber_coeffs([-(x - r), UniPoly((1,))])
    disc = resultant_fiber(F, F.d_fiber())
    repeated = len(set(roots)) < len(roots)
    assert disc.is_zero() == repeated


def test_quotient_ctx_examples():
    ctx = QuotientCtx(x**2 + 1)
    assert ctx.inverse(x) == -x
    assert ctx.add(x + 1, x**2) == x
    ctx2 = QuotientCtx((x - 1) * (x - 2))
    with pytest.raises(SplitEvent) as info:
        ctx2.inverse(x - 1)
    g1, g2 = info.value.factors
    assert {g1, g2} == {x - 1, x - 2}
    with pytest.raises(ZeroDivisionError):
        ctx.inverse(x**2 + 1)


laurents = st.dictionaries(st.integers(-4, 4), small, max_size=4).map(LaurentPoly)


@settings(max_examples=80, deadline=None)
@given(laurents, laurents, laurents)
def test_laurent_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    if a and b:
        assert (a * b).max_exp == a.max_exp + b.max_exp
        assert (a * b).min_exp == a.min_exp + b.min_exp


def test_laurent_monomial_inverse():
    m = LaurentPoly.monomial(-3, Fraction(2, 5))
    assert m * m.inv_monomial() == LaurentPoly.const(1)
