from fractions import Fraction as F

import pytest

from walab import cocycle as cc
from walab.numeric import exp_pi_i
from walab.rootsys import SIMPLY_LACED, build


def test_z4_epsilon_is_quasi_and_coboundary_is_na3():
    e = cc.z4_epsilon()
    assert cc.is_quasi(e)
    ok, viol = cc.is_na3(cc.coboundary(e))
    assert ok and viol is None


def test_omega_and_eta_eps_tables():
    e = cc.z4_epsilon()
    cb = cc.coboundary(e)
    ee = cc.modified_eta(cc.z4_eta, e)
    for k in range(4):
        for l in range(4):
            assert cb.Omega[((k,), (l,))] == cc.z4_omega_formula(k, l)
            assert ee[((k,), (l,))] == exp_pi_i(F(k * k * l * l, 2))


def test_feq1_over_all_quadruples():
    ok, witness = cc.check_feq1(cc.z4_eta_table())
    assert ok and witness is None


def test_delta_of_z4_eta():
    d = cc.delta(cc.z4_eta_table())
    assert d[((1,), (1,))] == F(1, 2)


def test_perturbation_is_detected():
    t = cc.z4_eta_table().with_F(((1,), (1,), (1,)), -1)
    ok, viol = cc.is_na3(t)
    assert not ok
    assert viol.axiom


@pytest.mark.parametrize("N,count", [(2, 2), (4, 4)])
def test_b_map_injective_on_z2(N, count):
    r = cc.na3_enumeration_injectivity(cc.Z2, N)
    assert r["na3_count"] == count
    assert r["injective"] and r["kernel_trivial"]


def test_search_bound():
    big = cc.AbelianGroup((4, 4))
    assert cc.na3_search_size(big, 8) > 10**6
    with pytest.raises(cc.SearchTooLargeError):
        cc.enumerate_na3(big, 8)


@pytest.mark.parametrize("label", SIMPLY_LACED)
def test_lattice_epsilon(label):
    r = cc.lattice_epsilon_checks(build(label))
    assert r["skew_ok"]
    assert r["theta_sign"] == -1


def test_lattice_epsilon_rejects_non_simply_laced():
    with pytest.raises(cc.UnsupportedTypeError):
        cc.lattice_epsilon(build("G2"))


def test_group_validation():
    with pytest.raises(ValueError):
        cc.AbelianGroup((9,))
