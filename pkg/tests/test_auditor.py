import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acyclic_spectra import auditor
from acyclic_spectra.auditor import (
    EXAMPLE36_FAMILIES,
    EXAMPLE36_STEPS,
    AuditReport,
    DeductionStep,
    audit_bounds,
    audit_count_bound,
    audit_factor_structure,
    audit_path_deletion,
    audit_submatrix_identity,
    audit_whirl_lemma,
    coverage_deficits,
    example36_certificate,
    run_claim,
    screen_multiplicity_list,
)
from acyclic_spectra.exactpoly import X, Poly, divides, parse_poly
from acyclic_spectra.graphs import (
    Graph,
    detect_whirl,
    figure2_tree,
    figure6_tree,
    path_graph,
    random_tree,
    whirl,
)
from acyclic_spectra.polymatrix import PolyMatrix, characteristic_matrix, smith_normal_form
from acyclic_spectra.spectra import (
    RatSymMatrix,
    charpoly,
    eigen_structure,
    example36_matrix,
    planted_spectrum_matrix,
    sample_S,
)

EX36 = example36_matrix()
F2 = figure2_tree()


# ------------------------------------------------------------------ reports


def test_report_json_shape_and_merge():
    a = AuditReport("thm-5.2", 3)
    b = AuditReport("thm-5.2", 2)
    b.fail("seed 1", "q >= 8", 7)
    assert a.to_json() == {"claim": "thm-5.2", "checked": 3, "violations": [], "passed": True}
    m1, m2 = a.merge(b), b.merge(a)
    assert m1.checked == 5 and not m1.passed
    assert m1.violations == m2.violations
    assert m1.to_json()["violations"] == [{"instance": "seed 1", "expected": "q >= 8", "observed": "7"}]


# -------------------------------------------------------- factor structure


def test_factor_structure_example36():
    assert audit_factor_structure(EX36).passed
    e = smith_normal_form(characteristic_matrix(EX36.entries)).invariant_factors
    assert e[8] == parse_poly("x^3 - 2x")


def test_factor_structure_simple_and_planted():
    d = RatSymMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert audit_factor_structure(d).passed
    a = planted_spectrum_matrix([1, 1, 2], 11)
    assert audit_factor_structure(a).passed
    e = smith_normal_form(a.characteristic_matrix()).invariant_factors
    assert e[1] == parse_poly("x - 1")


def test_factor_structure_detects_tampering(monkeypatch):
    real = auditor.smith_normal_form

    def shuffled(m, **kw):
        res = real(m, **kw)
        f = list(res.invariant_factors)
        f[-2] = X  # still a divisor chain, but the wrong one
        return type(res)(res.S, res.P, res.Q, tuple(f))

    monkeypatch.setattr(auditor, "smith_normal_form", shuffled)
    assert not audit_factor_structure(EX36).passed


# ------------------------------------------------------ submatrix identity


def test_submatrix_identity_two_by_two_cofactor():
    a12, a33 = Poly([Fraction(-3, 2)]), Poly([-2, 1])
    m = PolyMatrix([[Poly([0, 1]), a12, 0], [a12, Poly([1, 1]), Poly([4])], [0, Poly([4]), a33]])
    t = path_graph(3)
    rep = audit_submatrix_identity(m, t, [(1, 2)])
    assert rep.passed
    # det of rows {1,3}, cols {2,3} is a12 * a33 (up to sign)
    assert rep.notes[0] in ("M: sign +", "M: sign -")


def test_submatrix_identity_example36_figure3():
    m = characteristic_matrix(EX36.entries)
    rep = audit_submatrix_identity(m, F2, EXAMPLE36_FAMILIES["fig3"])
    assert rep.passed
    rest = auditor.principal_submatrix(m, [6])
    assert auditor.det(rest) == X


def test_submatrix_identity_preconditions():
    m = characteristic_matrix(EX36.entries)
    with pytest.raises(ValueError):
        audit_submatrix_identity(m, F2, [(4, 1, 5), (5, 1, 6)])
    with pytest.raises(ValueError):
        audit_submatrix_identity(m, F2, [(4, 5)])
    with pytest.raises(ValueError):
        audit_submatrix_identity(m, figure6_tree(), [(4, 1, 5)])


def test_submatrix_identity_detects_wrong_determinant(monkeypatch):
    monkeypatch.setattr(auditor, "det", lambda m: Poly([1, 1, 1]))
    m = characteristic_matrix(EX36.entries)
    assert not audit_submatrix_identity(m, F2, EXAMPLE36_FAMILIES["fig5"]).passed


# ---------------------------------------------------------- path deletion


def test_path_deletion_example36_figures():
    for name in ("fig3", "fig4", "fig5"):
        assert audit_path_deletion(EX36, F2, EXAMPLE36_FAMILIES[name], name).passed
    assert charpoly(EX36.principal([6])) == X
    assert divides(X, charpoly(EX36.principal([4, 1, 5])))


def test_path_deletion_full_cover_is_vacuous():
    assert audit_path_deletion(EX36, F2, [(4, 1, 5), (7, 2, 8), (9, 3, 6), (10,)]).passed


def test_path_deletion_preconditions():
    with pytest.raises(ValueError):
        audit_path_deletion(EX36, figure6_tree(), [(1,)])
    with pytest.raises(ValueError):
        audit_path_deletion(EX36, F2, [(4, 5)])


def test_path_deletion_agrees_with_submatrix_spectra():
    """The divisibility facts match a direct eigen structure of the submatrix."""
    es = eigen_structure(EX36.principal([4, 1, 5, 8, 9]))
    zero = [g for g in es.groups if g.root == 0]
    assert zero and zero[0].mult == 3  # m(0) = 4, one path deleted
    assert audit_path_deletion(EX36, F2, [(7, 2, 6, 3, 10)]).passed


@pytest.mark.parametrize("seed", range(40))
def test_path_deletion_random(seed):
    assert auditor._claim_cor34(seed).passed


# -------------------------------------------------------------- count bound


def test_count_bound_example36():
    assert coverage_deficits(F2) == {1: 5, 2: 2, 3: 1, 4: 0}
    assert audit_count_bound(EX36, F2).passed


def test_count_bound_generic_and_planted():
    t = random_tree(9, 4)
    assert audit_count_bound(sample_S(t, 1), t).passed
    assert run_claim("cor-3.5", range(200)).passed


def test_count_bound_cap():
    t = path_graph(16)
    with pytest.raises(ValueError):
        audit_count_bound(sample_S(t, 0), t)


# ------------------------------------------------------------------ bounds


def test_whirl_32_bound():
    w = whirl(3, 2)
    a = sample_S(w.graph, 3)
    assert audit_bounds(a, w, "whirl_52").passed
    assert audit_bounds(a, w.graph, "whirl_52").passed
    assert eigen_structure(a).q >= 8


def test_path_graph_sample_is_simple():
    t = path_graph(7)
    a = sample_S(t, 9)
    assert audit_bounds(a, t, "q_ge_d1").passed
    assert eigen_structure(a).q == 7


def test_whirl_43_bound_value(monkeypatch):
    w = whirl(4, 3)
    a = sample_S(w.graph, 0)
    assert audit_bounds(a, w, "whirl_54").passed
    monkeypatch.setattr(auditor, "multiplicity_counts", lambda a: {1: 9})
    rep = audit_bounds(a, w, "whirl_54")
    assert not rep.passed and rep.violations[0].expected == "q >= 85/9"


def test_bounds_family_mismatch():
    a = sample_S(whirl(2, 2).graph, 0)
    with pytest.raises(ValueError):
        audit_bounds(a, whirl(2, 2), "whirl_52")
    with pytest.raises(ValueError):
        audit_bounds(EX36, F2, "whirl_54")  # l = 1
    with pytest.raises(ValueError):
        audit_bounds(EX36, F2, "graph_61")
    with pytest.raises(ValueError):
        audit_bounds(EX36, figure6_tree(), "M_le_p")
    with pytest.raises(ValueError):
        audit_bounds(EX36, F2, "nope")


def test_extremes_simple_on_example():
    assert audit_bounds(EX36, F2, "extremes_simple").passed
    assert audit_bounds(EX36, F2, "M_le_p").passed


# ------------------------------------------------------------- whirl lemma


def test_whirl_lemma_example36():
    w = detect_whirl(F2)
    assert audit_whirl_lemma(EX36, w).passed
    # zero has multiplicity k+1 = 4 and every single-vertex leg is [0]
    assert all(charpoly(EX36.principal(leg)) == X for leg in w.legs.values())


def test_whirl_lemma_flags_planted_violation(monkeypatch):
    w = detect_whirl(F2)
    # moving one leg's diagonal lowers the top multiplicity; the lemma still holds
    rows = [list(r) for r in EX36.entries]
    rows[3][3] = Fraction(1)
    a = RatSymMatrix(rows)
    assert audit_whirl_lemma(a, w).passed
    # a fake charpoly with x^4 whose legs do not vanish at 0 must be flagged
    fake = parse_poly("x^4") * parse_poly("x^6 - 1")
    monkeypatch.setattr(auditor, "charpoly", lambda m: fake if m.n == 10 else X + 1)
    assert not audit_whirl_lemma(EX36, w).passed


def test_whirl_lemma_many_seeds():
    rep = run_claim("lem-5.3", range(500))
    assert rep.passed and rep.checked == 1000


# --------------------------------------------------------------- screening


def test_screen_examples():
    assert screen_multiplicity_list(F2, [1, 2, 4, 2, 1]).passed
    rep = screen_multiplicity_list(F2, [5, 2, 1, 1, 1])
    assert not rep.passed and "p = 4" in rep.violations[0].expected
    rep = screen_multiplicity_list(figure6_tree(), [4, 1, 1, 1, 1, 1, 1])
    assert not rep.passed and "p = 3" in rep.violations[0].expected


def test_screen_other_conditions():
    assert "sum" in screen_multiplicity_list(F2, [1, 1]).violations[0].expected
    assert "d+1" in screen_multiplicity_list(F2, [3, 3, 2, 2]).violations[0].expected
    assert "d+1" in screen_multiplicity_list(F2, [3, 3, 3, 1]).violations[0].expected
    assert screen_multiplicity_list(F2, [1, 2, 2, 2, 2, 1]).passed
    # p = 3 and d = 4 both allow <3,3,1,1,1>, but t_2 = 1 does not
    t = Graph.from_edges(9, [(1, 3), (2, 3), (2, 5), (2, 8), (4, 5), (6, 8), (7, 8), (8, 9)])
    rep = screen_multiplicity_list(t, [3, 3, 1, 1, 1])
    assert rep.violations[0].expected == "at most 1 multiplicities >= 3"


@given(st.integers(3, 11), st.integers(0, 10**6))
def test_screen_never_rejects_real_lists(n, seed):
    rng = random.Random(seed)
    t = random_tree(n, rng)
    a = auditor.planted_tree_sample(t, rng)
    assert screen_multiplicity_list(t, eigen_structure(a).multiplicity_list).passed


# ------------------------------------------------------------- certificate


def test_certificate_examples():
    assert example36_certificate(charpoly(EX36)).passed
    rejected = example36_certificate([2, 3, 3, 5, 5, 5, 5, 7, 7, 10])
    assert not rejected.passed and rejected.violations[0].observed == "2"
    assert example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7]).passed
    assert example36_certificate(["-1/2", 0, 0, 1, 1, 1, 1, 2, 2, "5/2"]).passed


def test_certificate_derives_block_spectra():
    rep = example36_certificate(charpoly(EX36))
    assert "block [6]: l3x1" in rep.notes
    for block in ([1, 4, 5], [2, 7, 8], [3, 9, 10]):
        assert f"block {block}: l2x1 l3x1 l4x1" in rep.notes


def test_certificate_rejects_unlicensed_step():
    bad = EXAMPLE36_STEPS[:1] + (
        # lambda2 has multiplicity 2 and cannot survive three deletions
        DeductionStep(((4, 1, 5), (7, 2, 8), (10, 3, 9)), frozenset({6}), ((2, frozenset({6}), 1),)),
    )
    rep = example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7], bad + EXAMPLE36_STEPS[1:])
    assert not rep.passed
    assert any("step 2" in v.instance for v in rep.violations)


def test_certificate_rejects_overclaim():
    # two lambda3's cannot sit in {4,1,5} once {8} and {9} hold one each
    step = DeductionStep(((7, 2, 6, 3, 10),), frozenset({4, 1, 5, 8, 9}), ((3, frozenset({4, 1, 5}), 2),))
    rep = example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7], EXAMPLE36_STEPS + (step,))
    assert not rep.passed


def test_certificate_needs_all_steps():
    rep = example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7], EXAMPLE36_STEPS[:-1])
    assert not rep.passed and rep.violations[0].instance == "blocks"


def test_certificate_malformed_input():
    broken = (DeductionStep(((4, 1, 5), (5, 1, 6)), frozenset(), ()),)
    with pytest.raises(ValueError):
        example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7], broken)
    wrong_rest = (DeductionStep(((4, 1, 5),), frozenset({6}), ()),)
    with pytest.raises(ValueError):
        example36_certificate([1, 2, 2, 4, 4, 4, 4, 6, 6, 7], wrong_rest)
    with pytest.raises(ValueError):
        example36_certificate([1, 2, 3])
    with pytest.raises(ValueError):
        example36_certificate([1, 1, 2, 2, 3, 3, 4, 4, 5, 5])
    with pytest.raises(ValueError):
        example36_certificate(parse_poly("x^10 - 1"))


# ------------------------------------------------------------ batch runner


@pytest.mark.parametrize("claim", auditor.CLAIM_IDS)
def test_claims_pass_and_are_deterministic(claim):
    first = run_claim(claim, range(3))
    assert first.passed, str(first)
    assert first.to_json() == run_claim(claim, range(3)).to_json()


def test_parallel_matches_serial():
    assert run_claim("thm-3.3", range(12), jobs=2).to_json() == run_claim("thm-3.3", range(12)).to_json()


def test_unknown_claim():
    with pytest.raises(KeyError):
        run_claim("thm-9.9", range(1))
