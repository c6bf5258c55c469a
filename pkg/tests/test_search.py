"""Enumerators and oracle: cardinalities, ordering, ablations, equivalence."""

from __future__ import annotations

import pytest

from fanolink.checks import DEFAULT_CHECKS, REGISTRY, admitted, run_checks
from fanolink.golden import diff
from fanolink.model import ContractionType
from fanolink.search import (
    D_MAX,
    FAMILY_IDS,
    G_MAX,
    KX3_VALUES,
    MAX_ALPHA_PLUS,
    ORACLE_NUMERATOR_BOUND,
    brute_force_oracle,
    build_e1e1,
    canonical_sort_key,
    enumerate_e1e1,
    enumerate_e1estar,
    enumerate_family,
    enumerate_symmetric,
    mirror_candidate,
    orientation_canonical,
)

EXPECTED_COUNTS = {
    "e1e1": 111,
    "e1e2": 3,
    "e1e3": 7,
    "e1e5": 7,
    "e2e2": 3,
    "e3e3": 2,
    "e5e5": 1,
}


class TestConstants:
    def test_search_box_bounds(self):
        assert KX3_VALUES == (2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22)
        assert D_MAX == 19
        assert G_MAX == {1: 10, 2: 20, 3: 29, 4: 39}
        assert MAX_ALPHA_PLUS == 86
        assert ORACLE_NUMERATOR_BOUND == 360

    def test_family_ids(self):
        assert FAMILY_IDS == ("e1e1", "e1e2", "e1e3", "e1e5", "e2e2", "e3e3", "e5e5")


class TestCardinalities:
    @pytest.mark.parametrize("family", FAMILY_IDS)
    def test_count_matches_classification(self, enumerated, family):
        assert len(enumerated[family]) == EXPECTED_COUNTS[family]

    def test_total_count(self, enumerated):
        assert sum(len(candidates) for candidates in enumerated.values()) == 134


class TestGoldenAgreement:
    @pytest.mark.parametrize("family", FAMILY_IDS)
    def test_diff_is_empty(self, enumerated, golden, family):
        report = diff(enumerated[family], golden[family])
        assert report.empty, report.describe()


class TestEndpoints:
    def test_first_candidate(self, enumerated):
        candidate = enumerated["e1e1"][0]
        assert candidate.kx3 == 2
        assert (candidate.left.r, candidate.left.d, candidate.left.g) == (1, 1, 0)
        assert (candidate.right.r, candidate.right.d, candidate.right.g) == (1, 1, 0)
        assert candidate.coeffs.alpha == 3
        assert candidate.coeffs.beta == -1
        assert candidate.kY3_left == 6
        assert candidate.defect_e == 47
        assert candidate.e_over_r3 == 47

    def test_last_candidate(self, enumerated):
        candidate = enumerated["e1e1"][-1]
        assert candidate.kx3 == 22
        assert (candidate.left.r, candidate.left.d, candidate.left.g) == (4, 5, 0)
        assert (candidate.right.r, candidate.right.d, candidate.right.g) == (4, 5, 0)
        assert candidate.coeffs.alpha == 2
        assert candidate.kY3_left == 64
        assert candidate.e_over_r3 == 1


class TestOrderAndOrientation:
    @pytest.mark.parametrize("family", FAMILY_IDS)
    def test_output_sorted_and_duplicate_free(self, enumerated, family):
        candidates = enumerated[family]
        keys = [canonical_sort_key(c) for c in candidates]
        assert keys == sorted(keys)
        assert len(set(candidates)) == len(candidates)

    def test_e1e1_orientation_is_canonical(self, enumerated):
        for candidate in enumerated["e1e1"]:
            left = (candidate.left.r, candidate.left.d, candidate.left.g)
            right = (candidate.right.r, candidate.right.d, candidate.right.g)
            assert orientation_canonical(left, right)

    def test_no_mirror_pair_double_counted(self, enumerated):
        seen = set()
        for candidate in enumerated["e1e1"]:
            left = (candidate.left.r, candidate.left.d, candidate.left.g)
            right = (candidate.right.r, candidate.right.d, candidate.right.g)
            unordered = frozenset({(candidate.kx3, left, right), (candidate.kx3, right, left)})
            assert unordered not in seen
            seen.add(unordered)

    def test_orientation_rule(self):
        assert orientation_canonical((3, 9, 3), (1, 5, 0))
        assert not orientation_canonical((1, 5, 0), (3, 9, 3))
        assert orientation_canonical((1, 1, 0), (1, 1, 0))  # self-mirrors survive
        assert orientation_canonical((2, 5, 1), (2, 3, 2))
        assert not orientation_canonical((2, 3, 2), (2, 5, 1))

    def test_mirror_admission(self, enumerated):
        for candidate in enumerated["e1e1"]:
            mirrored = mirror_candidate(candidate)
            assert admitted(run_checks(mirrored)), canonical_sort_key(candidate)

    def test_mirror_is_an_involution(self, enumerated):
        candidate = enumerated["e1e1"][40]
        assert mirror_candidate(mirror_candidate(candidate)) == candidate


class TestDeterminism:
    def test_repeat_runs_identical(self, enumerated):
        assert enumerate_e1e1() == enumerated["e1e1"]
        assert enumerate_symmetric(ContractionType.E2) == enumerated["e2e2"]

    def test_parallel_matches_serial(self, enumerated):
        assert enumerate_e1e1(threads=2) == enumerated["e1e1"]
        assert enumerate_e1e1(threads=4) == enumerated["e1e1"]

    def test_thread_env_variable_is_respected(self, enumerated, monkeypatch):
        monkeypatch.setenv("SARKISOV_THREADS", "3")
        assert enumerate_e1e1() == enumerated["e1e1"]


class TestDomainFacts:
    def test_kx3_twenty_admitted_by_range_but_never_emitted(self, enumerated):
        # 20 is a legal central degree a priori; the general checks kill
        # every candidate carrying it, with no dedicated exclusion rule.
        assert 20 in KX3_VALUES
        for family, candidates in enumerated.items():
            assert all(c.kx3 != 20 for c in candidates), family

    def test_emitted_central_degrees(self, enumerated):
        seen = {c.kx3 for candidates in enumerated.values() for c in candidates}
        assert seen == {2, 4, 6, 8, 10, 12, 14, 16, 18, 22}

    def test_curve_sides_have_excess_at_least_three(self, enumerated):
        for candidates in enumerated.values():
            for c in candidates:
                if c.left.is_e1:
                    assert c.sigma_left >= 3
                if c.right.is_e1:
                    assert c.sigma_right >= 3

    def test_minimum_excess_is_attained(self, enumerated):
        # The floor is tight: excess exactly 3 occurs among admitted rows.
        assert min(c.sigma_left for c in enumerated["e1e1"] if c.left.is_e1) == 3


class TestAblations:
    def test_sigma_floor_ablation_admits_the_phantom_row(self, enumerated):
        out = enumerate_e1e1(enabled=frozenset(DEFAULT_CHECKS - {"SIGMA_POS"}))
        assert set(enumerated["e1e1"]) <= set(out)
        assert len(out) == 249
        extra = [c for c in out if c not in enumerated["e1e1"]]
        # Exactly one extra has positive excess on both sides: the floor
        # (excess >= 3, not mere positivity) is what keeps it out.
        floor_only = [
            (c.kx3, (c.left.r, c.left.d, c.left.g), (c.right.r, c.right.d, c.right.g))
            for c in extra
            if c.sigma_left > 0 and c.sigma_right > 0
        ]
        assert floor_only == [(2, (1, 2, 1), (1, 2, 1))]

    def test_hyperelliptic_ablation_admits_asymmetric_degree_two_bodies(self, enumerated):
        enabled = frozenset(DEFAULT_CHECKS - {"HYPERELLIPTIC_SYM"})
        out3 = enumerate_family("e1e3", enabled)
        extra3 = {
            (c.kx3, (c.left.r, c.left.d, c.left.g))
            for c in out3
            if c not in enumerated["e1e3"]
        }
        assert extra3 == {(2, (1, 8, 3)), (2, (2, 4, 2)), (2, (4, 12, 18))}
        out5 = enumerate_family("e1e5", enabled)
        extra5 = {
            (c.kx3, (c.left.r, c.left.d, c.left.g))
            for c in out5
            if c not in enumerated["e1e5"]
        }
        assert extra5 == {(2, (1, 5, 2)), (2, (2, 1, 0))}

    def test_defect_ablation_on_symmetric_family_is_a_superset(self, enumerated):
        out = enumerate_family("e2e2", frozenset(DEFAULT_CHECKS - {"DEFECT_POSITIVE"}))
        assert set(enumerated["e2e2"]) <= set(out)
        # Measured: no symmetric point-type body fails the defect sign alone.
        assert out == enumerated["e2e2"]


class TestTracing:
    def test_trace_stream_covers_stages_and_matches_output(self, enumerated):
        events = []

        def trace(stage, data, failed):
            events.append((stage, data, failed))

        out = enumerate_e1e1(trace=trace)
        assert out == enumerated["e1e1"]
        stages = {stage for stage, _, _ in events}
        assert stages <= {"side-left", "side-right", "pair-fast", "full"}
        assert {"side-left", "side-right", "pair-fast"} <= stages
        for _, _, failed in events:
            assert failed
            assert set(failed) <= DEFAULT_CHECKS

    def test_trace_reports_the_sigma_floor_prune(self):
        events = []
        enumerate_e1e1(trace=lambda s, d, f: events.append((s, d, f)))
        assert ("side-left", (2, 1, 2, 1), ("SIGMA_POS",)) in events

    def test_star_family_trace(self, enumerated):
        events = []
        out = enumerate_e1estar(ContractionType.E2, trace=lambda s, d, f: events.append(s))
        assert out == enumerated["e1e2"]
        assert "pair-fast" in events

    def test_symmetric_domain_trace(self, enumerated):
        events = []
        out = enumerate_symmetric(
            ContractionType.E5, trace=lambda s, d, f: events.append((s, d, f))
        )
        assert out == enumerated["e5e5"]
        # alpha = 2 forces the odd central degree 1, rejected at the domain stage.
        assert ("domain", (1, 2), ("KX3_RANGE",)) in events


class TestDispatch:
    @pytest.mark.parametrize("family", FAMILY_IDS)
    def test_enumerate_family_matches_direct_calls(self, enumerated, family):
        assert enumerate_family(family) == enumerated[family]

    def test_unknown_family_raises(self):
        with pytest.raises(ValueError, match="unknown family"):
            enumerate_family("e9e9")

    def test_star_enumerators_reject_curve_type(self):
        with pytest.raises(ValueError):
            enumerate_e1estar(ContractionType.E1)
        with pytest.raises(ValueError):
            enumerate_symmetric(ContractionType.E1)


class TestOracle:
    @pytest.mark.parametrize("family", FAMILY_IDS)
    def test_oracle_equals_enumerator(self, enumerated, family):
        oracle = brute_force_oracle(family)
        assert set(oracle) == set(enumerated[family])
        assert tuple(sorted(oracle, key=canonical_sort_key)) == enumerated[family]

    def test_oracle_unknown_family_raises(self):
        with pytest.raises(ValueError, match="unknown family"):
            brute_force_oracle("nope")


class TestCheckTraceAttachment:
    def test_emitted_candidates_carry_their_full_report(self, enumerated):
        registry_order = list(REGISTRY)
        for family, candidates in enumerated.items():
            for candidate in candidates:
                assert candidate.check_trace, family
                assert all(report.passed for report in candidate.check_trace)
                names = [report.name for report in candidate.check_trace]
                assert names == [n for n in registry_order if n in names]

    def test_trace_does_not_affect_equality_with_rebuilt_candidate(self, enumerated):
        candidate = enumerated["e1e1"][0]
        rebuilt = build_e1e1(2, (1, 1, 0), (1, 1, 0))
        assert candidate == rebuilt
