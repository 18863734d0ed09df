from fractions import Fraction as F

import pytest

from walab import walg
from walab.fock import product

CW = {"A1": F(-3, 5), "A2": F(2, 5), "G2": F(6, 5), "D4": F(12, 5), "E6": F(22, 5), "E7": F(27, 5)}
HVEE = {"A1": 2, "A2": 3, "G2": 4, "D4": 6, "E6": 12, "E7": 18}
CNAT = {"A1": 0, "A2": 1, "G2": F(9, 5), "D4": 3, "E6": 5, "E7": 6}


@pytest.mark.parametrize("g", sorted(CW))
def test_central_charges(g):
    p = walg.params(g, -F(HVEE[g], 6))
    assert p.c_w == CW[g]
    assert p.c_natural == CNAT[g]
    assert p.c_w_minus_natural == F(-3, 5)


def test_f4_restricted_form_value():
    p = walg.params("F4", F(-3, 2))
    assert p.k_natural == (F(1),)
    assert p.c_natural == F(21, 5)
    assert p.c_w == F(18, 5)


def test_c2_level_half():
    p = walg.params("C2", F(1, 2))
    assert p.c_w == F(-18, 7)
    assert p.c_natural == 1


def test_central_charge_formula_and_critical_level():
    assert walg.central_charge(8, 3, F(-1, 2)) == F(2, 5)
    with pytest.raises(walg.CriticalLevelError):
        walg.central_charge(8, 3, -3)


def test_lattice_lie_rejects_non_simply_laced():
    with pytest.raises(walg.UnsupportedTypeError):
        walg.LatticeLie("G2")


@pytest.mark.parametrize("g", ["A2", "D4", "E6"])
def test_natural_level(g):
    assert walg.natural_level_check(g)["ok"]


def test_sugawara_d4_closed_form():
    L = walg.lattice_lie("D4")
    om = walg.sugawara_natural("D4")
    alg = L.alg
    want = None
    for i in (0, 2, 3):
        t = L.h(alg.unit(i))
        t = product(alg, t, -1, t) * F(1, 4)
        want = t if want is None else want + t
    assert om == want
    assert product(alg, om, 3, om) == L.vacuum * F(3, 2)


def test_gg_bracket_records():
    L = walg.lattice_lie("D4")
    a = L.s_minus[0]
    b = next(x for x in L.s_minus if L.pair(a, x) == -1)
    rec = walg.gg_bracket("D4", -1, L.e(a), L.e(b))
    kinds = {t.kind for t in rec.lambda0}
    assert "omega" in kinds
    assert rec.lambda2 and rec.lambda2[0].kind == "vac"
    js = rec.to_json()
    assert js["g"] == "D4" and js["k"] == "-1"


def test_gg_bracket_domain():
    from walab.rootsys import DomainError

    L = walg.lattice_lie("A2")
    with pytest.raises(DomainError):
        walg.gg_bracket("A2", F(-1, 2), L.e(L.theta), L.e(L.s_minus[0]))


def test_jj_and_jg():
    L = walg.lattice_lie("A2")
    h = L.h(L.theta)
    r = walg.jj_bracket("A2", F(-1, 2), h, h)
    assert "lambda_scalar" in r
    walg.jg_bracket("A2", F(-1, 2), h, L.e(L.s_minus[0]))
