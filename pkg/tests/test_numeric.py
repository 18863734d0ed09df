from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from walab.numeric import (
    Cyclotomic,
    IncompatibleOrderError,
    exp_pi_i,
    format_rational,
    format_scalar,
    parse_rational,
    root_of_unity,
    root_of_unity_log,
    simplify,
    solve_linear,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def cyc(draw_coeffs):
    return Cyclotomic(draw_coeffs, 8)


coeff_lists = st.lists(rationals, min_size=4, max_size=4)


def test_zeta8_relations():
    z = root_of_unity(1, 8)
    assert z ** 8 == 1
    assert z ** 4 == -1
    assert z ** 2 == exp_pi_i(F(1, 2))


def test_sqrt2_in_q_zeta8():
    z = root_of_unity(1, 8)
    s = z + z ** 7
    assert s * s == 2


def test_exp_pi_i_rational_values():
    assert exp_pi_i(1) == -1
    assert exp_pi_i(2) == 1
    assert exp_pi_i(F(-1, 2)) == root_of_unity(3, 4)


def test_incompatible_order():
    with pytest.raises(IncompatibleOrderError):
        root_of_unity(1, 3)


def test_root_of_unity_log_roundtrip():
    for k in range(8):
        assert root_of_unity_log(root_of_unity(k, 8)) == F(k, 8)
    assert root_of_unity_log(Cyclotomic.rational(2)) is None


@given(coeff_lists, coeff_lists, coeff_lists)
def test_field_axioms(a, b, c):
    x, y, z = cyc(a), cyc(b), cyc(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


@given(coeff_lists)
def test_inverse(a):
    x = cyc(a)
    if not x.is_zero():
        assert x * x.inverse() == 1


def test_simplify_and_format():
    assert simplify(Cyclotomic.rational(F(3, 4))) == F(3, 4)
    assert isinstance(simplify(3), F)
    assert format_rational(F(-3, 4)) == "-3/4"
    assert format_rational(2) == "2"
    assert parse_rational(" 5/6 ") == F(5, 6)
    assert "ζ8" in format_scalar(root_of_unity(1, 8))


def test_solve_linear():
    sol = solve_linear([[F(2), F(1), F(5)], [F(1), F(3), F(10)]])
    assert sol == [F(1), F(3)]
