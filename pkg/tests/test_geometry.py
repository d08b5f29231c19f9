from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tschirn.birkhoff import cohomology_dims
from tschirn.geometry import (
    DivisorClass,
    Hypothesis,
    SurfaceModel,
    adjunction_genus,
    adjunction_quadratic_roots,
    canonical_class,
    cone_numerics,
    direct_images,
    genus_formula,
    genus_from_splitting,
    hypothesis_check,
    intersect,
    predict_thm_a,
    predict_thm_b,
    predict_tschirnhausen,
    pushforward_Ok,
    recognize_cover,
    surface_cohomology,
)

Y0, F = DivisorClass.Y0(), DivisorClass.F()


def test_intersection_table():
    S = SurfaceModel(3)
    H = DivisorClass.H(3)
    assert intersect(H, H, S) == 3
    assert intersect(Y0, F, S) == 1
    assert intersect(F, F, S) == 0
    assert intersect(Y0, Y0, S) == -3
    assert intersect(H, Y0, S) == 0


def test_canonical_class():
    assert canonical_class(SurfaceModel(1)) == DivisorClass(-2, -3)
    assert canonical_class(SurfaceModel(5, gamma=2)) == DivisorClass(-2, -3)
    S = SurfaceModel(4, gamma=1)
    assert intersect(canonical_class(S), F, S) == -2


def test_parse():
    assert DivisorClass.parse("2H+F", 3) == DivisorClass(2, 7)
    assert DivisorClass.parse("Y0 - 2F", 3) == DivisorClass(1, -2)
    with pytest.raises(ValueError):
        DivisorClass.parse("2Q", 1)


def test_adjunction_genus_examples():
    assert adjunction_genus(DivisorClass.H(1), SurfaceModel(1)) == 0
    assert adjunction_genus(DivisorClass.parse("3H", 2), SurfaceModel(2)) == 4
    assert adjunction_genus(DivisorClass.parse("2H+F", 1), SurfaceModel(1)) == 1


def test_genus_formula_examples():
    assert genus_formula(3, 5, 0, "A") == 13
    assert genus_formula(3, 5, 0, "B") == 15
    assert genus_formula(2, 1, 0, "A") == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(1, 8), st.integers(0, 4))
def test_adjunction_matches_formula(m, e, gamma):
    S = SurfaceModel(e, gamma)
    assert adjunction_genus(m * DivisorClass.H(e), S) == genus_formula(m, e, gamma, "A")
    assert adjunction_genus(m * DivisorClass.H(e) + F, S) == genus_formula(m, e, gamma, "B")


def test_adjunction_quadratic_examples():
    assert adjunction_quadratic_roots(3, 5, 0) == (Fraction(3), Fraction(18, 5))
    assert adjunction_quadratic_roots(2, 3, 2) == (Fraction(2), Fraction(11, 3))
    for m in range(2, 6):
        assert adjunction_quadratic_roots(m, 3, 1) == (Fraction(m), Fraction(m + 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(2, 6), st.integers(0, 6))
def test_second_root_is_never_an_integer(m, gamma, extra):
    e = 2 * gamma - 1 + extra
    lo, hi = adjunction_quadratic_roots(m, e, gamma)
    assert lo == m
    assert m + 1 < hi < m + 2


def test_recognize_cover():
    r = recognize_cover(15, 13, 5, 0, False)
    assert (r.case, r.m) == ("A", 3)
    r = recognize_cover(16, 15, 5, 0, True)
    assert (r.case, r.m) == ("B", 3)
    assert recognize_cover(15, 12, 5, 0, False).case == "inconsistent"
    assert not recognize_cover(14, 13, 5, 0, False).consistent


def test_pushforward_table():
    assert pushforward_Ok(2, 3) == ([0, 3, 6], [])
    assert pushforward_Ok(-1, 3) == ([], [])
    assert pushforward_Ok(-2, 3) == ([], [-3])
    assert pushforward_Ok(-4, 1) == ([], [-1, -2, -3])


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5))
def test_leray_euler_characteristic(k, t, e):
    # Riemann-Roch on F_e: chi(D) = 1 + D.(D - K)/2
    S = SurfaceModel(e)
    D = DivisorClass(k, t + k * e)
    h0, h1, h2 = surface_cohomology(D, S)
    chi = 1 + intersect(D, D - canonical_class(S), S) // 2
    assert h0 - h1 + h2 == chi


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5))
def test_serre_duality(k, t, e):
    S = SurfaceModel(e)
    D = DivisorClass(k, t + k * e)
    h = surface_cohomology(D, S)
    hd = surface_cohomology(canonical_class(S) - D, S)
    assert h == tuple(reversed(hd))


def test_direct_images_twist():
    S = SurfaceModel(2)
    assert direct_images(DivisorClass.parse("H+F", 2), S) == ([1, 3], [])


def test_predictions_examples():
    assert predict_thm_a(4, 1, 0, 0).degrees == (0, -1, -2, -3)
    assert predict_thm_a(3, 2, 1, 0).degrees == (0, -3, -5)
    assert predict_thm_b(4, 1, 1, 0).degrees == (0, -1, -3, -4)
    assert predict_thm_b(3, 5, 1, 0).degrees == (0, -5, -11)
    assert set(predict_tschirnhausen(3, 1, 0, 0).degrees) == {-1, -2}
    assert set(predict_tschirnhausen(4, 2, 1, 0).degrees) == {-3, -5, -7}
    with pytest.raises(ValueError):
        predict_thm_a(1, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(1, 9), st.integers(0, 3))
def test_prediction_invariants(m, e, gamma):
    a0 = predict_thm_a(m, e, 0, gamma)
    a1 = predict_thm_a(m, e, 1, gamma)
    assert len(a0) == m and a0.degrees[0] == 0
    assert sorted(a1.degrees[1:]) == sorted(d - 1 for d in a0.degrees[1:])
    # the trivial summand plus the Tschirnhausen module
    assert sorted(a0.degrees) == sorted((0,) + predict_tschirnhausen(m, e, 0, gamma).degrees)
    assert genus_from_splitting(a0) == genus_formula(m, e, 0, "A")
    assert genus_from_splitting(a1) == genus_formula(m, e, 0, "B")
    b = predict_thm_b(m, e, 1, gamma)
    # (H - eF) restricts to a degree-1 line bundle on X, raising chi by one
    assert len(b) == m and sum(b.degrees) == sum(a1.degrees) + 1


def test_prediction_degree_matches_euler_characteristic():
    # chi(phi_* O_X) = 1 - g and chi of a split bundle is deg + rank
    for m in range(2, 7):
        for e in range(1, 5):
            for delta, case in ((0, "A"), (1, "B")):
                g = genus_formula(m, e, 0, case)
                assert sum(predict_thm_a(m, e, delta)) == 1 - g - m


def test_hypothesis_check():
    assert hypothesis_check(3, 3, 0, 2) is Hypothesis.GUARANTEED
    assert hypothesis_check(2, 2, 0, 2) is Hypothesis.UNKNOWN
    assert hypothesis_check(5, 1, 0, 0) is Hypothesis.GUARANTEED


def test_cone_numerics():
    c = cone_numerics(3, 5, 0, "A")
    assert (c.R, c.image_degree, c.through_vertex) == (6, 15, False)
    assert cone_numerics(3, 5, 0, "B").image_degree == 16
    c = cone_numerics(2, 1, 0, "A")
    assert (c.R, c.image_degree) == (2, 2)
    with pytest.raises(ValueError):
        cone_numerics(3, 2, 2, "A")


def test_genus_from_splitting():
    assert genus_from_splitting((0, -1, -2, -3)) == 3
    assert genus_from_splitting((0,)) == 0
    assert genus_from_splitting((0, -2)) == 1
    with pytest.raises(ValueError):
        genus_from_splitting((1, -3))
    assert genus_from_splitting((0, -2, -5)) == cohomology_dims((0, -2, -5))[1]
