import logging
from fractions import Fraction

import pytest

from fixed_point_census import ANCHOR_CENSUS, ANCHOR_FREENESS
from gluing_maps import NORMALIZATION_NOTE
from presented_groups import b_group, e_group, p_group
from representations import ANCHORS
from suites import SUITE_NAMES, SuiteOrchestrator, run_suite
from suites.fixed_point_suite import FixedPointSuite
from suites.geometry_suite import GeometrySuite
from suites.group_suite import ANCHOR_A4, ANCHOR_RANK, GroupSuite, expected_ranks
from suites.negative_controls import NegativeControlSuite, swapped_phi_b
from suites.orchestrator import ALL_SUITES, CENSUS_NOTE


KNOWN_QUOTES = frozenset({
    "[a,b]= ω",
    "a ↦ w, b ↦ vu",
    "a³=b³=c^{3^{k−2}}",
    "u^p=v^p=w³",
    "[a,c] = b",
    "classification of p-groups of rank 2",
    "E(2) is isomorphic to the alternating group A₄",
    "An irreducible representation φ: Γ → U(3)",
    "Three representations that pullback from representations of Γ/S¹",
    "The groups E(p) are all subgroups of SU(3)",
    "the group B(4,−1) is a subgroup of SU(3)",
    "All elements of Γ except A₁ ∪ A₂ act freely on X₀",
    "The Γ-action on U_i is free",
    "V₁ = {aᵏ·𝐳 ∈ Y | 0 ≤ k ≤ 2, |z₂|² + |z₃|² ≤ ε}",
    "V₁ ∩ V₂ = ∅",
    "|z_q|² ≥ ⅓(|z′_k|² − |z′_i|² − |z′_j|²) ≥ ⅓ − ε",
    "Note that Pφ(a)P⁻¹ = φ(a) and Pφ(b)P⁻¹ = φ(a²b)",
    "Hence φ(a)𝐰 = P^{i−1}φ(a^{k+1})𝐳 is in V_i",
    "Θ₁(𝐳) = 1/√(ε(1−ε)) [...] ∈ SU(3)",
    "First, check that α is equivariant under a",
    "Second, check that α is equivariant under b",
    "Third, check that α is equivariant under λ ∈ S¹",
    "a unique way to write every element of ∂U₀ in the following standard form",
})


def assert_known_anchors(report):
    unknown = {c.anchor for c in report.checks} - KNOWN_QUOTES
    assert not unknown, unknown


def test_suite_names():
    assert SUITE_NAMES[0] == "theorem-a"
    assert SUITE_NAMES[-1] == "all"
    assert "negative-controls" in SUITE_NAMES
    assert "negative-controls" not in ALL_SUITES


def test_unknown_suite_rejected(light_config):
    with pytest.raises(ValueError):
        SuiteOrchestrator(light_config).run("everything")


def test_expected_ranks():
    assert expected_ranks(3) == {3: 2}
    assert expected_ranks(7) == {7: 2, 3: 1}


def test_group_suite_certifies(light_config):
    report = run_suite("groups", light_config)
    assert report.certified, [c.check_id for c in report.failed_checks()]
    ids = {c.check_id for c in report.checks}
    assert {"groups.iso.P3_E3", "groups.iso.E2_A4", "groups.iso.P3_not_Z27",
            "groups.gamma.law", "groups.order.B(4,-1)", "groups.matrix_model.E(3)",
            "groups.rank.E(5).p3"} <= ids
    assert report.config["epsilon"] == "49/625"
    assert_known_anchors(report)


def test_group_suite_checks_are_callables(light_config):
    checks = GroupSuite(light_config).checks()
    assert all(callable(check) for check in checks)


def test_negative_controls_reject_every_broken_input(light_config):
    report = run_suite("negative-controls", light_config)
    assert report.certified, [c.check_id for c in report.failed_checks()]
    theta = next(c for c in report.checks if c.check_id == "negative.theta.m1")
    assert theta.witness["undetected"] == []
    assert theta.witness["example"]["residual"]
    assert_known_anchors(report)


def test_swapped_phi_b_breaks_relations(light_config):
    assert swapped_phi_b()[0, 0] != 1
    assert NegativeControlSuite(light_config).control_corrupted_b().certified


def test_geometry_deduplicates_epsilons(light_config):
    checks = GeometrySuite(light_config).disjointness_checks()
    assert len(checks) == 2


def test_fixed_point_suite_layout(light_config):
    suite = FixedPointSuite(light_config)
    assert len(suite.freeness_checks()) == 6
    # four spaces, four oracles and the conjugation check per k, plus the circle candidates
    assert len(suite.census_checks()) == 2 * 9 + 1


def test_theorem_a_runs_geometry_freeness_and_gluing(light_config):
    report = run_suite("theorem-a", light_config)
    assert report.certified, [c.check_id for c in report.failed_checks()]
    ids = {c.check_id for c in report.checks}
    assert "geometry.disjointness[1/16]" in ids
    assert "fixedpoints.free.U0.P4" in ids
    assert "gluing.theta.SU3.m2" in ids
    assert not any(i.startswith("groups.") for i in ids)
    assert report.notes == [NORMALIZATION_NOTE]
    assert_known_anchors(report)


def test_census_note_only_with_larger_groups(light_config):
    orchestrator = SuiteOrchestrator(light_config)
    assert CENSUS_NOTE in orchestrator._notes("fixedpoints")
    light_config.k_values = (3,)
    assert CENSUS_NOTE not in orchestrator._notes("fixedpoints")


def test_timing_recorded_when_enabled(light_config):
    light_config.record_timing = True
    report = run_suite("negative-controls", light_config)
    assert all(c.timing_ns is not None for c in report.checks)


def test_suite_progress_goes_to_the_log(light_config, caplog, capsys):
    with caplog.at_level(logging.INFO):
        run_suite("negative-controls", light_config)
    assert "Negative controls" in caplog.text
    assert capsys.readouterr().out == ""


def test_config_epsilon_reaches_the_checks(light_config):
    light_config.epsilon = Fraction(1, 16)
    ids = {c.check_id for c in run_suite("gluing", light_config).checks}
    assert "gluing.standard_form[1/16]" in ids


def test_representation_suite_certifies(light_config):
    report = run_suite("representations", light_config)
    assert report.certified, [c.check_id for c in report.failed_checks()]
    ids = {c.check_id for c in report.checks}
    assert "representations.quotient.P(3)" in ids
    assert "representations.faithful.phi.P(4)" in ids
    assert "representations.det.rho_E(5).E(5)" in ids
    assert "representations.SO3.rho_E2" in ids
    assert_known_anchors(report)


def test_anchor_constants_are_known_quotes():
    anchors = set(ANCHORS.values())
    anchors |= {ANCHOR_CENSUS, ANCHOR_FREENESS}
    anchors |= {ANCHOR_RANK, ANCHOR_A4}
    anchors |= {G.anchor for G in (p_group(3), e_group(5), b_group(4, -1))}
    assert anchors <= KNOWN_QUOTES, anchors - KNOWN_QUOTES


def test_pk_embed_pairs_exhaustive_for_p3(light_config):
    suite = GroupSuite(light_config)
    small = suite.check_pk_embed(3)
    assert small.certified
    assert small.witness["exhaustive"] is True
    assert small.witness["pairs"] == 27 ** 2
    large = suite.check_pk_embed(4)
    assert large.certified
    assert large.witness["exhaustive"] is False
    assert large.witness["pairs"] == light_config.embed_samples


def test_progress_lines_use_lazy_arguments(light_config, caplog, monkeypatch):
    monkeypatch.setattr(GroupSuite, "checks", lambda self: [])
    with caplog.at_level(logging.INFO):
        assert GroupSuite(light_config).run() == []
    record = next(r for r in caplog.records if "Group suite" in r.getMessage())
    assert record.args == (len(light_config.k_values) + len(light_config.primes) + 1,)
    assert "%d" in record.msg
