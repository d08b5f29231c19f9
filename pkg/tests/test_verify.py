import pytest

from tschirn.arith import UniPoly
from tschirn.geometry import predict_thm_a, predict_thm_b
from tschirn.instances import CoxCurve, random_instance
from tschirn.verify import InvalidInstance, connected, verify_instance

x = UniPoly.gen()
ONE = UniPoly((1,))


def test_connectedness_gate():
    assert connected([0, -1, -2])
    assert not connected([0, 0])
    assert not connected([1, -3])
    assert not connected([-1, -1])


@pytest.mark.parametrize("m,e,delta", [(2, 1, 0), (3, 2, 0), (2, 2, 1), (3, 1, 1), (4, 1, 1)])
def test_random_instance_matches_predictions(m, e, delta):
    X = random_instance(m, e, delta, f"verify:{m}:{e}:{delta}").curve
    rep = verify_instance(X)
    assert rep.ok
    assert sorted(rep.computed) == sorted(predict_thm_a(m, e, delta).degrees)
    if delta:
        assert sorted(rep.computed_twisted) == sorted(predict_thm_b(m, e, delta).degrees)
        assert rep.base_point is not None
    assert len(set(rep.genus.values())) == 1


def test_generic_closure_route_agrees():
    X = random_instance(3, 2, 1, "dual-route").curve
    fast = verify_instance(X)
    slow = verify_instance(X, generic_closure=True)
    assert fast.computed == slow.computed
    assert fast.computed_twisted == slow.computed_twisted


def test_base_point_at_infinity():
    # c_m constant: the section Y0 is met over t = 0
    X = CoxCurve(2, 1, 1, (x**3 - 2 * x + 3, x**2 + x - 1, UniPoly((2,))))
    rep = verify_instance(X)
    assert rep.base_point == "infinity"
    assert rep.ok


def test_nodal_rejected_with_witness():
    # w^2 = x^2 (x + 1) near (0, 0)
    X = CoxCurve(2, 2, 0, (-(x**2) * (x + 1), UniPoly(()), ONE))
    with pytest.raises(InvalidInstance) as info:
        verify_instance(X)
    assert info.value.kind == "singular"
    assert "0" in [str(v) for v in info.value.witness.base_values()]


def test_two_sections_fail_connectedness_gate():
    # (w - x)(w + x + 1): two sections crossing once over x = -1/2
    X = CoxCurve(2, 1, 0, (-(x * (x + 1)), ONE, ONE))
    with pytest.raises(InvalidInstance) as info:
        verify_instance(X, check_smooth=False)
    assert info.value.kind == "reducible"
    assert sum(1 for d in info.value.witness["splitting"] if d >= 0) >= 2
