from fractions import Fraction as F

import pytest

from walab.rootsys import DELIGNE, LABELS, DomainError, build, deligne_checks, dual_coxeter, minimal_gradation, weyl_dim

ROOTS = {"A1": 2, "A2": 6, "C2": 8, "G2": 12, "D4": 24, "F4": 48, "E6": 72, "E7": 126, "E8": 240}
HVEE = {"A1": 2, "A2": 3, "C2": 3, "G2": 4, "D4": 6, "F4": 9, "E6": 12, "E7": 18, "E8": 30}


@pytest.mark.parametrize("label", LABELS)
def test_root_counts_and_dual_coxeter(label):
    rs = build(label)
    assert len(rs.roots) == ROOTS[label]
    assert dual_coxeter(rs) == HVEE[label]
    assert rs.norm(rs.theta) == 2


@pytest.mark.parametrize("label", LABELS)
def test_gradation_is_symmetric(label):
    rs = build(label)
    g = minimal_gradation(rs)
    assert len(g.s_plus_half) == len(g.s_minus_half)
    assert len(g.phi_natural) + len(g.s_plus_half) * 2 + 2 == len(rs.roots)


def test_e8_gradation():
    g = minimal_gradation(build("E8"))
    assert len(g.s_plus_half) == 56
    assert len(g.phi_natural) == 126
    assert [c.rank for c in g.natural_components] == [7]


def test_natural_component_dual_coxeter():
    table = {"G2": [F(2, 3)], "D4": [2, 2, 2], "F4": [4], "E6": [6], "E7": [10], "E8": [18]}
    for g, hs in table.items():
        comps = minimal_gradation(build(g)).natural_components
        assert sorted(c.dual_coxeter for c in comps) == sorted(F(h) for h in hs)
    a2 = minimal_gradation(build("A2"))
    assert a2.abelian_rank == 1 and not a2.natural_components


@pytest.mark.parametrize("label", DELIGNE)
def test_deligne_formulas(label):
    rep = deligne_checks(build(label))
    assert rep["status"] == "pass"


def test_e8_dimensions():
    rs = build("E8")
    assert rs.dim == 248
    assert weyl_dim(rs, tuple(2 * x for x in rs.theta)) == 27000


def test_weyl_dim_rejects_non_dominant():
    rs = build("A2")
    with pytest.raises(DomainError):
        weyl_dim(rs, tuple(-x for x in rs.theta))


def test_c2_not_deligne():
    assert deligne_checks(build("C2"))["status"] == "skipped"
