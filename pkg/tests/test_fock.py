from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from walab import fock as fk
from walab.fock import FockState, mode_apply, product, render
from walab.numeric import exp_pi_i
from walab.rootsys import build

A1 = fk.root_lattice_algebra(build("A1"))
A2 = fk.root_lattice_algebra(build("A2"))
DUAL = fk.dual_a1_algebra()


def test_dual_a1_expansion():
    ex = fk.expansion(DUAL, DUAL.exp((F(1, 2),)), DUAL.exp((F(-1, 2),)), 3)
    assert [n for n, _ in ex] == [F(-1, 2), F(-3, 2), F(-5, 2)]
    assert render(ex[0][1], DUAL) == "(1) |0⟩"
    assert render(ex[1][1], DUAL) == "(1/2) α(-1)"
    a = (1,)
    vac = DUAL.vacuum()
    want = (mode_apply(DUAL, a, -1, mode_apply(DUAL, a, -1, vac)) + mode_apply(DUAL, a, -2, vac) * 2) * F(1, 8)
    assert ex[2][1] == want


def test_omega_half_turn():
    u = DUAL.exp((F(1, 2),))
    t = fk.leading_exponent(DUAL, u, u)
    assert t == F(-1, 2)
    ok, _ = fk.skew_symmetry_check(DUAL, u, u, exp_pi_i(-t))
    assert ok
    assert DUAL.phase((F(1, 2),), (F(1, 2),)) == exp_pi_i(-t)


def test_sugawara_central_term():
    om = fk.conformal_vector(A1)
    assert product(A1, om, 3, om) == A1.vacuum() * F(1, 2)
    om2 = fk.conformal_vector(A2)
    assert product(A2, om2, 3, om2) == A2.vacuum()


def test_a2_bracket_sign():
    e1, e2 = A2.exp((1, 0)), A2.exp((0, 1))
    assert product(A2, e1, 0, e2) == A2.exp((1, 1)) * -1
    assert product(A2, e2, 0, e1) == A2.exp((1, 1))


def test_heisenberg_commutator():
    v = A1.vacuum()
    h = (1,)
    s = mode_apply(A1, h, -2, v)
    # [h(2), h(-2)] = 2 (h|h) = 4
    assert mode_apply(A1, h, 2, s) == v * 4


def test_states_algebra():
    a = A1.exp((1,))
    assert (a + a) - a * 2 == FockState.zero()
    assert not FockState.zero()
    assert a.depth() == 0


def test_cutoff_error():
    big = fk.basis_states(A1, 6)[-1]
    with pytest.raises(fk.CutoffError):
        fk.commutator_check(A1, big, 0, A1.vacuum(), 0, A1.vacuum(), cutoff=4)


def test_nonlocal_pair_rejected():
    u = DUAL.exp((F(1, 2),))
    with pytest.raises(ValueError):
        fk.commutator_check(DUAL, u, 0, u, 0, DUAL.vacuum())


STATES_A1 = fk.basis_states(A1, 2)
STATES_A2 = fk.basis_states(A2, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(STATES_A1), st.sampled_from(STATES_A1), st.sampled_from(fk.basis_states(A1, 2)),
       st.integers(-1, 2), st.integers(-1, 2))
def test_commutator_formula_random(a, b, c, n, m):
    ok, lhs, rhs = fk.commutator_check(A1, a, n, b, m, c)
    assert ok, (render(lhs, A1), render(rhs, A1))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(STATES_A2), st.sampled_from(STATES_A2))
def test_skew_symmetry_random(a, b):
    pa, pb = next(iter(a.terms))[1], next(iter(b.terms))[1]
    ok, where = fk.skew_symmetry_check(A2, a, b, A2.phase(pa, pb), 3)
    assert ok, where


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(STATES_A2), st.integers(-2, 2), st.integers(-2, 2))
def test_virasoro_bracket_random(s, m, k):
    L = lambda n, x: fk.virasoro_mode(A2, n, x)
    lhs = L(m, L(k, s)) - L(k, L(m, s))
    rhs = L(m + k, s) * (m - k)
    if m + k == 0:
        rhs = rhs + s * (F(2) * (m ** 3 - m) / 12)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(STATES_A2), st.sampled_from(STATES_A2))
def test_weight_additivity_random(a, b):
    wa, wb = fk.state_weight(A2, a), fk.state_weight(A2, b)
    for n, v in fk.expansion(A2, a, b, 3):
        for mono in v.terms:
            assert A2.weight(mono) == wa + wb - n - 1


def test_translation_is_derivative():
    a, b = A2.exp((1, 0)), A2.exp((0, 1))
    for n in range(-2, 2):
        assert product(A2, fk.translate(A2, a), n, b) == product(A2, a, n - 1, b) * (-n)


def test_projected_lattice_weights():
    rs = build("A2")
    a1, th = rs.simple_roots[0], rs.theta
    b = tuple(x - y / 2 for x, y in zip(a1, th))
    alg = fk.projected_algebra(rs, [b], ["u"], "proj")
    assert alg.norm((1,)) == F(3, 2)
    u = alg.exp((1,))
    assert product(alg, u, F(-5, 2), u) == alg.exp((2,))
