import pytest

from walab import verify as V

SMALL = ["A2", "D4"]


@pytest.mark.parametrize("g", SMALL)
@pytest.mark.parametrize("fn", [V.lemma32_case1, V.lemma32_case2, V.lemma32_case3, V.lemma31, V.lemma24, V.psi_compat,
                                V.natural_level, V.fock_chevalley, V.root_data, V.central_charge_check])
def test_per_algebra_checks(fn, g):
    r = fn(g)
    assert r.status == "pass", r.witness


def test_lemma32_counts_d4():
    r = V.lemma32_case1("D4")
    assert r.details["count"] == "2"
    r2 = V.lemma32_case2("D4")
    assert r2.details["cardinality"] == "0"


def test_lemma31_identity_d4_pair():
    L = V.lattice_lie("D4")
    a = L.s_minus[0]
    b = next(x for x in L.s_minus if L.pair(a, x) == -1)
    lhs, rhs = V.lemma31_sides("D4", a, b)
    assert lhs == rhs and lhs


def test_lemma31_detects_a_wrong_coefficient(monkeypatch):
    # tampering with omega-natural must break the identity
    orig = V._omega_nat("D4")
    monkeypatch.setattr(V, "_omega_nat", lambda label: orig * 2)
    L = V.lattice_lie("D4")
    a = L.s_minus[0]
    b = next(x for x in L.s_minus if L.pair(a, x) == -1)
    lhs, rhs = V.lemma31_sides("D4", a, b)
    assert lhs != rhs


def test_omega_natural_closed_forms():
    for g in ("D4",):
        assert V.omega_natural_closed_form(g) == V.sugawara_natural(g)
        assert V.omega_natural_formula(g) == V.sugawara_natural(g)


@pytest.mark.parametrize("fn", [V.lemma23_expansion, V.intertwiner_consistency, V.lemma22_a2, V.fock_skew_symmetry,
                                V.fock_weight_additivity, V.fock_vacuum_translation, V.even_part_check,
                                V.minimal_characters, V.e7_theta])
def test_global_checks(fn):
    r = fn()
    assert r.status == "pass", r.witness


def test_lemma23_details():
    r = V.lemma23_expansion()
    assert r.details["z^-1/2"] == "(1) |0⟩"


def test_coset_counts():
    assert V.coset_minimal_count("D4") == (8, 3 / 2)
    assert V.coset_minimal_count("A2")[0] == 2


def test_short_vectors_a2():
    L = V.lattice_lie("A2")
    vecs = V._short_vectors(L.alg.gram, 2)
    assert len(vecs) == 7


def test_check_result_invariant():
    r = V.CheckResult("x", "A2", "fail")
    assert r.witness
    assert "runtime_ms" not in r.to_json()
    assert "runtime_ms" in r.to_json(timings=True)


def test_registry_and_skips():
    ids = [c.check_id for c in V.CHECKS]
    assert len(ids) == len(set(ids))
    spec = next(c for c in V.CHECKS if c.check_id == "lemma31")
    r = V.run_check(spec, "G2", {})
    assert r.status == "skipped"
    tasks = V.plan(["lemma32"], ["E8"])
    assert [s.check_id for s, _ in tasks] == ["lemma32_case1", "lemma32_case2", "lemma32_case3"]


def test_lemma22_modes():
    spec = next(c for c in V.CHECKS if c.check_id == "lemma22")
    assert V.run_check(spec, "A2", {}).details["mode"] == "direct"
    r = V.run_check(spec, "D4", {})
    assert r.status == "pass" and "indirect" in r.details["note"]


def test_psi_implication():
    rs = [V.CheckResult("lemma31", "D4", "pass"), V.CheckResult("psi_compat", "D4", "fail", "w")]
    assert V.psi_implication(rs)[0].status == "fail"
