from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from walab import qseries as qs


def test_eisenstein_heads():
    e2 = qs.eisenstein(2, 6)
    assert e2.coeffs[:3] == (F(-1, 12), 2, 6)
    assert e2.coeffs[6] == 24
    e4 = qs.eisenstein(4, 2)
    assert e4.coeffs == (F(1, 720), F(1, 3), 3)


def test_indicial_roots_and_normalization():
    roots = qs.indicial_roots(qs.MU_E8)
    assert roots == (F(-19, 60), F(29, 60))
    assert sum(roots) == F(1, 6) and roots[0] * roots[1] == F(-551, 3600)
    assert qs.indicial_normalization(roots, qs.MU_E8) == (qs.A2, qs.A4)


def test_series_arithmetic():
    a = qs.PuiseuxSeries(F(1, 2), (1, 2, 3))
    b = qs.PuiseuxSeries(F(3, 2), (1, 1))
    s = a + b
    assert s.coeffs == (1, 3, 4)
    p = a * qs.PuiseuxSeries(0, (1, -1, 0))
    assert p.exponent0 == F(1, 2) and p.coeffs == (1, 1, 1)
    assert a.q_derivative().coeffs == (F(1, 2), 3, F(15, 2))
    with pytest.raises(qs.IncompatibleSeriesError):
        a + qs.PuiseuxSeries(F(1, 3), (1,))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_multiplication_commutes(x, y):
    a, b = qs.PuiseuxSeries(0, x), qs.PuiseuxSeries(F(1, 2), y, F(1, 2))
    assert a * b == b * a


def test_theta_e7():
    t0, t1 = qs.e7_thetas(4)
    assert t0.coeffs[:4] == (1, 126, 756, 2072)
    assert t1.exponent0 == F(3, 4) and t1.coeffs[:2] == (56, 576)


def test_theta_rank_zero():
    t = qs.lattice_theta(qs.LatticeCoset("zero", ()), 3)
    assert t.coeffs == (1, 0, 0, 0)


def test_theta_cache(tmp_path):
    qs.set_cache_dir(str(tmp_path))
    try:
        lat = qs.LatticeCoset("A1", ((2,),), (F(1, 2),))
        a = qs.lattice_theta(lat, 6)
        assert list(tmp_path.iterdir())
        b = qs.lattice_theta(lat, 6)
        assert a == b
    finally:
        qs.set_cache_dir(None)


def test_enumeration_limit():
    lat = qs.LatticeCoset("Z8", tuple(tuple(2 if i == j else 0 for j in range(8)) for i in range(8)))
    with pytest.raises(qs.EnumerationTooLargeError):
        qs.lattice_theta(lat, 400)


@pytest.mark.parametrize("r,s,h", [(1, 1, 0), (1, 2, F(-1, 20)), (1, 3, F(1, 5)), (1, 4, F(3, 4))])
def test_kac_table(r, s, h):
    assert qs.kac_weight(r, s) == h
    assert qs.kac_position(h) is not None


def test_four_thirds_not_in_kac_table():
    assert qs.kac_position(F(4, 3)) is None
    assert qs.kac_solutions(F(4, 3)) == []
    spec = qs.VirasoroCharSpec.make(qs.C_MINIMAL, F(4, 3))
    ch = qs.virasoro_char(spec, 6)
    assert [int(c) for c in ch.coeffs] == [1, 1, 2, 3, 5, 7, 11]


@pytest.mark.parametrize("h", [0, F(3, 4), F(-1, 20), F(1, 5)])
def test_characters_match_gram_ranks(h):
    ch = qs.virasoro_char(qs.VirasoroCharSpec.make(qs.C_MINIMAL, h), 8)
    assert [int(c) for c in ch.coeffs] == [qs.shapovalov_rank_oracle(qs.C_MINIMAL, h, n) for n in range(9)]
    assert ch.exponent0 == F(h) + F(1, 40)


def test_shapovalov_small_levels():
    assert qs.shapovalov_rank_oracle(qs.C_MINIMAL, 0, 1) == 0
    assert qs.shapovalov_rank_oracle(qs.C_MINIMAL, F(3, 4), 1) == 1


def test_mde_ramond_low_order():
    for name in qs.RAMOND:
        chi = qs.module_character(name, 8)
        assert qs.mde_check(chi, qs.MU_E8, 8).is_zero()
    assert qs.mde_check(qs.PuiseuxSeries.zero(0, 4), qs.MU_E8).is_zero()


def test_mde_rejects_wrong_mu():
    chi = qs.module_character("M2", 6)
    assert not qs.mde_check(chi, F(-1, 2), 6).is_zero()


def test_ns_character_head():
    chi = qs.ns_vacuum_character(3)
    assert chi.exponent0 == F(-4, 15) and chi.step == F(1, 2)
    assert chi.coeffs[:4] == (1, 0, 133, 56)


def test_four_thirds_sector_incompatible():
    with pytest.raises(qs.IncompatibleSeriesError):
        qs.module_character("M3", 4, {"M3": (F(4, 3), F(0))})
