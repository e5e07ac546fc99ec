"""Theorem-checker tests with hand-frozen oracle values."""

import hashlib

import pytest

from morphring import (
    CornerCase,
    Side,
    TriangularCase,
    TrivialExtensionCase,
    annihilator,
    fg_ideal,
    ideal_bimodule,
    make_gf,
    make_zmod,
    matrix_ring,
    regular_bimodule,
    ring_morphic_profile,
    search_counterexample,
    trivial_extension,
    truncated_poly,
    verify_extension_heredity,
    verify_finite_qf,
    verify_lemma_equivalences,
    verify_pseudo_consequences,
    verify_quasi_equivalence,
    verify_reduced_equivalences,
    verify_regular_criteria,
    verify_triangular_example_identity,
    verify_witness_identities,
)
from morphring.verify import _raw_left_flags

Z4 = make_zmod(4)
Z6 = make_zmod(6)
Z12 = make_zmod(12)
T2 = matrix_ring(make_zmod(2), 2, shape="lower_triangular")
M2 = matrix_ring(make_zmod(2), 2)
P2 = truncated_poly(make_zmod(2), 2)
TE = trivial_extension(Z4, ideal_bimodule(Z4, 2))


def test_report_record_shape():
    report = verify_lemma_equivalences(Z4)
    record = report.to_record()
    assert list(record) == ["theorem", "expression", "status", "details"]
    assert "elapsed" not in record
    assert report.elapsed >= 0.0
    assert record["expression"] == "z4"


def test_lemma_equivalence_verified_everywhere():
    for ring in (Z4, Z6, Z12, T2, M2, P2, TE, make_gf(2, 2)):
        report = verify_lemma_equivalences(ring)
        assert report.status == "verified", report.details


def test_lemma_equivalence_counts():
    # Morphic rings satisfy the chain condition at every element.
    for ring in (Z4, Z6, make_gf(2, 2)):
        assert verify_lemma_equivalences(ring).details["satisfying_both"] == ring.order
    # Lower triangular 2x2 over Z_2: only E21 fails (R*E21 = {0, E21} is
    # nobody's left annihilator), so 7 of 8 elements satisfy the chain.
    assert verify_lemma_equivalences(T2).details["satisfying_both"] == 7


def test_witness_identities_z12_instance():
    # Hand-checked chain at the pair (4, 6): R4 = l(3), R6 = l(2) give
    # b1 = 3 and c = 2 from R(6*3) = R6 = l(2), so R4 + R6 = l(3*2) = l(6).
    report = verify_witness_identities(Z12)
    assert report.status == "verified"
    assert report.details == {
        "checked_sum": 144,
        "skipped_sum": 0,
        "checked_intersection": 144,
        "skipped_intersection": 0,
    }
    assert fg_ideal(Z12, Side.LEFT, [4, 6]) == annihilator(Z12, Side.LEFT, [6])


def test_witness_identities_partial_coverage():
    # Sum-side witnesses b1 with R*a = l(b1) fail exactly at a = E21, which
    # removes 15 pairs, and the chain element a2*b1 lands on E21 for the two
    # pairs (E22, E21+E22) and (E21+E22, E22).  The ring is left generalized
    # morphic, so the intersection side always has witnesses.
    report = verify_witness_identities(T2)
    assert report.status == "verified"
    assert report.details == {
        "checked_sum": 47,
        "skipped_sum": 17,
        "checked_intersection": 64,
        "skipped_intersection": 0,
    }


def test_witness_identities_full_coverage_matrix_ring():
    report = verify_witness_identities(M2)
    assert report.status == "verified"
    assert report.details["skipped_sum"] == 0
    assert report.details["skipped_intersection"] == 0
    assert report.details["checked_sum"] == 256


def test_pseudo_consequences_z4():
    report = verify_pseudo_consequences(Z4)
    assert report.status == "verified"
    assert report.details == {"fg_ideals": 3, "minimal_right_principals": 1}


def test_pseudo_consequences_more_rings():
    for ring in (Z6, Z12, P2, M2, make_gf(3, 2)):
        assert verify_pseudo_consequences(ring).status == "verified"


def test_pseudo_consequences_vacuous():
    for ring in (T2, TE):
        report = verify_pseudo_consequences(ring)
        assert report.status == "vacuous"
        assert "not left pseudo-morphic" in report.details["note"]


def test_quasi_equivalence_z12():
    report = verify_quasi_equivalence(Z12)
    assert report.status == "verified"
    assert report.details["pseudo_both"] and report.details["quasi_both"]
    assert report.details["commutative_morphic"] is True
    assert report.details["exchange_pairs_left"] == 21
    assert report.details["exchange_pairs_right"] == 21


def test_quasi_equivalence_matrix_ring():
    report = verify_quasi_equivalence(M2)
    assert report.status == "verified"
    assert report.details["exchange_pairs_left"] == 15


def test_quasi_equivalence_degenerate_rings():
    # Rings on neither side of the biconditional still verify it.
    for ring in (T2, TE):
        report = verify_quasi_equivalence(ring)
        assert report.status == "verified"
        assert report.details["pseudo_both"] is False
        assert report.details["quasi_both"] is False


def test_finite_qf_z12():
    report = verify_finite_qf(Z12)
    assert report.status == "verified"
    assert report.details == {"left_ideals": 6, "right_ideals": 6}


def test_finite_qf_semiprime_branch():
    report = verify_finite_qf(Z6)
    assert report.status == "verified"
    assert report.details["semiprime_radical_zero"] is True


def test_finite_qf_matrix_ring():
    report = verify_finite_qf(M2)
    assert report.status == "verified"
    assert report.details["left_ideals"] == 5
    assert report.details["right_ideals"] == 5


def test_finite_qf_vacuous():
    for ring in (T2, TE):
        assert verify_finite_qf(ring).status == "vacuous"


def test_regular_criteria():
    for ring in (Z4, Z6, Z12, T2, M2, P2, TE, make_gf(2, 3)):
        report = verify_regular_criteria(ring)
        assert report.status == "verified", report.details
    semisimple = verify_regular_criteria(M2).details
    assert semisimple["semiprime_pseudo"] is True
    assert semisimple["regular"] is True
    assert semisimple["left_pp_right_pseudo"] is True
    local = verify_regular_criteria(Z4).details
    assert local["semiprime_pseudo"] is False
    assert local["regular"] is False
    assert local["radical_zero"] is False


def test_reduced_collapse_z6():
    report = verify_reduced_equivalences(Z6, nmax=3)
    assert report.status == "verified"
    assert report.details["reduced"] is True
    assert report.details["nine_way"] is True
    assert report.details["checked_degrees"] == [2, 3]


def test_reduced_collapse_field():
    report = verify_reduced_equivalences(make_gf(2, 2))
    assert report.status == "verified"
    assert report.details["nine_way"] is True


def test_reduced_collapse_non_reduced_transfer():
    for ring in (Z4, T2):
        report = verify_reduced_equivalences(ring)
        assert report.status == "verified"
        assert report.details["reduced"] is False
        assert report.details["checked_degrees"] == [2]


def test_reduced_collapse_cap_reported(monkeypatch):
    monkeypatch.setenv("RING_ORDER_CAP", "40")
    report = verify_reduced_equivalences(Z6, nmax=3)
    assert report.status == "verified"
    assert report.details["checked_degrees"] == [2]
    assert report.details["capped_degrees"] == [3]


def test_reduced_collapse_rejects_bad_degree():
    with pytest.raises(ValueError, match="nmax"):
        verify_reduced_equivalences(Z6, nmax=1)


def test_heredity_triangular():
    z2 = make_zmod(2)
    case = TriangularCase(z2, z2, regular_bimodule(z2))
    report = verify_extension_heredity(case)
    assert report.status == "verified"
    assert report.details["checked"] == ["generalized_to_corners"]
    assert report.details["vacuous"] == [
        "left_pseudo_to_right_corner",
        "right_pseudo_to_left_corner",
    ]


def test_heredity_trivial_extension_vacuous():
    # Z4 x 2Z4 with componentwise squaring zero is not generalized morphic,
    # so the heredity implication has nothing to check.
    report = verify_extension_heredity(TrivialExtensionCase(Z4, ideal_bimodule(Z4, 2)))
    assert report.status == "vacuous"
    assert report.details["vacuous"] == ["generalized_to_base"]


def test_heredity_trivial_extension_verified():
    z2 = make_zmod(2)
    report = verify_extension_heredity(TrivialExtensionCase(z2, regular_bimodule(z2)))
    assert report.status == "verified"
    assert report.details["checked"] == ["generalized_to_base"]


def test_heredity_corner_product_ring():
    from morphring import direct_product

    R = direct_product([make_zmod(2), make_zmod(3)])
    report = verify_extension_heredity(CornerCase(R, 3))
    assert report.status == "verified"
    assert report.details["checked"] == [
        "generalized_to_both_corners",
        "left_pseudo_to_complement_corner",
        "right_pseudo_to_corner",
    ]
    assert report.details["vacuous"] == []


def test_heredity_corner_triangular():
    # e = E22 satisfies (1-e)Re = E11*T*E22 = 0 in the lower triangular ring.
    report = verify_extension_heredity(CornerCase(T2, 1))
    assert report.status == "verified"
    assert report.details["checked"] == ["generalized_to_both_corners"]


def test_heredity_corner_hypothesis_violated():
    # e = E11 has (1-e)Re containing E22*E21*E11 = E21, so nothing applies.
    report = verify_extension_heredity(CornerCase(T2, 4))
    assert report.status == "vacuous"
    assert "(1-e)Re != 0" in report.details["note"]


def test_heredity_corner_rejects_non_idempotent():
    with pytest.raises(ValueError, match="idempotent"):
        verify_extension_heredity(CornerCase(Z4, 3))


def test_raw_flags_agree_with_classifier():
    for ring in (Z4, Z6, T2, M2, P2, TE):
        raw_pseudo, raw_generalized = _raw_left_flags(ring)
        profile = ring_morphic_profile(ring).left
        assert raw_pseudo == bool(profile.pseudo.status)
        assert raw_generalized == bool(profile.generalized.status)


def test_search_no_counterexample():
    corpus = [Z4, Z6, Z12, T2, M2, P2, TE]
    report = search_counterexample(corpus)
    assert report.status == "verified"
    assert report.details["rings"] == 7
    assert report.details["hits"] == []
    expected = hashlib.sha256(
        "\n".join(sorted(r.construction for r in corpus)).encode()
    ).hexdigest()
    assert report.details["fingerprint"] == expected
    again = search_counterexample(corpus)
    assert again.to_record() == report.to_record()


def test_triangular_example_identity():
    report = verify_triangular_example_identity()
    assert report.status == "verified"
    assert report.details["headline_claims"] is True
    assert report.details["identity_diverges"] == {"row": True, "transpose": True}
