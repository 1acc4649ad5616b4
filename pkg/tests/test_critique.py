"""Critique suite tests.

Every finding is checked against an independent recomputation through the
exact pipeline, and every demo must serialize byte-identically when re-run
with the same inputs.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from ravkit.critique import (
    CollisionBounds,
    CritiqueFinding,
    collision_search,
    cross_class_counterexample,
    formula_discrepancy_demo,
    permutation_demo,
    prose_actual_security,
    trust_aggregation_demo,
    trust_equivalence_demo,
)
from ravkit.errors import DomainError
from ravkit.metrics import ControlClass, ControlCounts, Scope, actual_security
from ravkit.report import render_findings
from ravkit.trust import ApplicantRecord, Polarity, Reference, consistency_ratios


def scope_from_obj(obj: dict) -> Scope:
    """Rebuild a finding's scope input through the ingest validation path."""
    import json

    from ravkit.ingest import parse_scope_file

    doc = {"schema": "ravkit-scope/1", "scopes": [obj]}
    return parse_scope_file(json.dumps(doc).encode())[0]


class TestPermutationDemo:
    def test_same_meta_class_swap_holds_with_identical_intermediates(self, toy):
        finding = permutation_demo(toy, ControlClass.AUTHENTICATION, ControlClass.CONTINUITY)
        assert finding.verdict == "holds"
        assert finding.scores["rational_intermediates_identical"] is True
        assert finding.scores["actsec_before"] == finding.scores["actsec_after"]
        assert finding.scores["invariance_structural"] is True

    def test_zero_count_swap_holds(self, toy):
        finding = permutation_demo(toy, ControlClass.RESILIENCE, ControlClass.ALARM)
        assert finding.verdict == "holds"
        assert finding.scores["invariance_structural"] is True

    def test_toy_cross_class_swap_is_a_discovered_equality(self, toy):
        # Direct recomputation: swapping authentication and alarm maps the
        # (missing-A, missing-B) pair to its mirror image, and with equal
        # weakness and concern counts the limitation sum is symmetric in it,
        # so the score does not move even though the split does.
        finding = permutation_demo(toy, ControlClass.AUTHENTICATION, ControlClass.ALARM)
        assert finding.verdict == "holds"
        assert finding.scores["rational_intermediates_identical"] is False
        assert finding.scores["invariance_structural"] is False
        before = actual_security(toy)
        after = actual_security(
            Scope(
                id="swapped",
                porosity=toy.porosity,
                controls=ControlCounts(alarm=1),
                limitations=toy.limitations,
            )
        )
        assert before.actsec == after.actsec
        assert before.mc_class_a != after.mc_class_a

    def test_cross_class_counterexample_found_automatically(self):
        finding = cross_class_counterexample()
        assert finding.verdict == "violated"
        scope_a = scope_from_obj(dict(finding.inputs["scope"]))
        scope_b = scope_from_obj(dict(finding.inputs["swapped_scope"]))
        before = actual_security(scope_a).actsec
        after = actual_security(scope_b).actsec
        assert before != after
        assert finding.scores["actsec_before"] == before
        assert finding.scores["actsec_after"] == after
        source = ControlClass(finding.inputs["source"])
        target = ControlClass(finding.inputs["target"])
        assert source.meta_class != target.meta_class

    def test_same_class_rejected(self, toy):
        with pytest.raises(DomainError):
            permutation_demo(toy, ControlClass.ALARM, ControlClass.ALARM)

    def test_finding_serialization_reproducible(self, toy):
        first = render_findings(
            [permutation_demo(toy, ControlClass.AUTHENTICATION, ControlClass.CONTINUITY)]
        )
        second = render_findings(
            [permutation_demo(toy, ControlClass.AUTHENTICATION, ControlClass.CONTINUITY)]
        )
        assert first == second


class TestCollisionSearch:
    def test_bounds_zero_empty(self):
        assert collision_search(0, 1e-9, 0) == []

    def test_small_bounds_find_structural_collisions(self):
        findings = collision_search(2, 1e-9, 0, max_findings=10)
        assert findings
        for finding in findings:
            scope_a = scope_from_obj(dict(finding.inputs["scope_a"]))
            scope_b = scope_from_obj(dict(finding.inputs["scope_b"]))
            ba, bb = actual_security(scope_a), actual_security(scope_b)
            differs_porosity = scope_a.porosity != scope_b.porosity
            differs_lims = scope_a.limitations != scope_b.limitations
            assert differs_porosity or differs_lims
            if finding.scores["exact"]:
                assert (ba.opsec_sum, ba.lc_sum, ba.seclim_sum) == (
                    bb.opsec_sum, bb.lc_sum, bb.seclim_sum)
            assert abs(ba.actsec - bb.actsec) <= 1e-9

    def test_deterministic_and_reproducible(self):
        first = render_findings(collision_search(2, 1e-9, 0, max_findings=6))
        second = render_findings(collision_search(2, 1e-9, 0, max_findings=6))
        assert first == second

    def test_epsilon_zero_reports_exact_collisions_only(self):
        findings = collision_search(1, 0.0, 0, max_findings=8)
        assert findings
        assert all(f.scores["exact"] for f in findings)

    def test_permutation_pairs_reported_as_exact_collisions(self):
        findings = collision_search(
            1, 0.0, 0, max_findings=40, include_permutation_pairs=True
        )
        perm = [f for f in findings if f.kind == "within-class-permutation"]
        assert perm
        for finding in perm:
            assert finding.verdict == "holds"
            assert finding.scores["exact"] is True
            scope_a = scope_from_obj(dict(finding.inputs["scope_a"]))
            scope_b = scope_from_obj(dict(finding.inputs["scope_b"]))
            assert scope_a.porosity == scope_b.porosity
            assert scope_a.limitations == scope_b.limitations
            assert scope_a.controls != scope_b.controls
            assert actual_security(scope_a).actsec == actual_security(scope_b).actsec

    def test_negative_epsilon_rejected(self):
        with pytest.raises(DomainError):
            collision_search(1, -1e-9, 0)

    def test_bounds_coercion(self):
        assert CollisionBounds.coerce(2) == CollisionBounds(2, 2, 2)
        assert CollisionBounds.coerce(CollisionBounds(1, 2, 3)).limitation == 3
        with pytest.raises(DomainError):
            CollisionBounds.coerce(-1)


class TestFormulaDiscrepancy:
    def test_toy_scope(self, toy):
        finding = formula_discrepancy_demo(toy)
        assert finding.verdict == "violated"
        figure = finding.scores["figure_form"]
        assert figure == pytest.approx(-12.744, abs=0.01)
        assert abs(finding.scores["prose_single_log"] - figure) > 10
        assert abs(finding.scores["prose_log_squared"] - figure) > 10

    def test_empty_scope_both_forms_agree_at_100(self):
        scope = Scope(id="empty")
        assert actual_security(scope).actsec == 100.0
        assert prose_actual_security(scope, squared=False) == 100.0
        assert prose_actual_security(scope, squared=True) == 100.0
        finding = formula_discrepancy_demo(scope)
        assert finding.verdict == "holds"

    def test_reproducible(self, toy):
        assert render_findings([formula_discrepancy_demo(toy)]) == render_findings(
            [formula_discrepancy_demo(toy)]
        )


class TestTrustAggregation:
    def test_default_search_finds_ordering_disagreement(self):
        finding = trust_aggregation_demo()
        assert finding.verdict == "violated"
        avg_a = Fraction(finding.scores["average_a"])
        avg_b = Fraction(finding.scores["average_b"])
        max_a = Fraction(finding.scores["max_a"])
        max_b = Fraction(finding.scores["max_b"])
        # Exhaustive-comparison oracle for the two orderings.
        assert avg_b > avg_a and max_a > max_b

    def test_record_values_verified_independently(self):
        finding = trust_aggregation_demo()
        ratios_a = [Fraction(r) for r in finding.inputs["applicant_a"]["consistency_ratios"]]
        assert sorted(ratios_a) == [Fraction(1, 12), Fraction(1, 5), Fraction(1, 4)]
        assert Fraction(finding.scores["average_a"]) == sum(ratios_a, Fraction(0)) / 3
        assert Fraction(finding.scores["max_a"]) == max(ratios_a)

    def test_uniform_record_has_equal_average_and_max(self):
        record = ApplicantRecord(
            months_unemployed=1,
            months_eligible=6,
            criminal_offenses_known=1,
            age_years=24,
            references=(Reference("e", Polarity.NEUTRAL),),
            past_employer_count=6,
        )
        ratios = [r.value for r in consistency_ratios(record)]
        assert len(set(ratios)) == 1
        with pytest.raises(DomainError):
            trust_aggregation_demo(record)

    def test_single_defined_ratio_rejected(self):
        record = ApplicantRecord(criminal_offenses_known=1, age_years=50)
        with pytest.raises(DomainError):
            trust_aggregation_demo(record)

    def test_reproducible(self):
        assert render_findings([trust_aggregation_demo()]) == render_findings(
            [trust_aggregation_demo()]
        )


class TestTrustEquivalence:
    def test_holds_at_published_tolerance_fails_exactly(self):
        finding = trust_equivalence_demo(tolerance=1e-3)
        assert finding.verdict == "holds"
        assert finding.scores["equal_at_tolerance"] is True
        assert finding.scores["equal_exactly"] is False
        assert Fraction(finding.scores["consistency_ratio"]) == Fraction(1, 32)
        assert Fraction(finding.scores["community_ratio"]) == Fraction(39, 1250)

    def test_violated_at_tight_tolerance(self):
        assert trust_equivalence_demo(tolerance=1e-5).verdict == "violated"


class TestFindingInvariants:
    def test_verdict_validation(self):
        with pytest.raises(DomainError):
            CritiqueFinding("k", {}, {}, "maybe", "n")

    def test_to_obj_round_trips_through_renderer(self, toy):
        findings = [
            formula_discrepancy_demo(toy),
            trust_equivalence_demo(),
        ]
        data = render_findings(findings)
        import json

        doc = json.loads(data)
        assert doc["schema"] == "ravkit-finding/1"
        assert [f["kind"] for f in doc["findings"]] == [
            "formula-discrepancy", "trust-equivalence",
        ]
