"""Tests for budgets, candidate enumeration, case scans, refinements, volume
exclusions, the full pipeline, and the orbifold registry.

Candidate lists are verified against a literal brute-force enumeration that
shares no code with the engine.  Lower bounds are checked against frozen
mpmath values.
"""

import dataclasses
import json
import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from turnover.collars import cone_order_universe, refined_boundary_orders
from turnover.engine import (
    AnalyzeOptions,
    Conclusion,
    RefinementInput,
    Verdict,
    analyze,
    boundary_candidates,
    exclusion_by_volume,
    known_refinements,
    make_ledger,
    miyamoto_case_scan,
    order4_refinement,
    order5_refinement,
    registry,
    registry_json,
)
from turnover.errors import DomainError
from turnover.rooms import constant_H
from turnover.trig import TurnoverSignature, turnover_area

# mpmath, 40 digits
UB_WITH_BOUNDARY_245 = 0.3768901602902289
CHAIN_334_K4_CLOSED = 0.4288509100402153
BOUND_ORDER4 = 0.3839860716052123
BOUND_ORDER5 = 0.4602224494745811
DISK_RADIUS_245 = 0.5306375309525178
SEPARATION_245 = 0.9213650173505565


def sig(*orders) -> TurnoverSignature:
    return TurnoverSignature(*orders)


def brute_force_candidates(budget_defect: Fraction, orders):
    """Independent oracle: all hyperbolic triples over ``orders`` with angle
    defect strictly under the budget, via direct rational arithmetic."""
    out = []
    for p, q, r in combinations_with_replacement(sorted(orders), 3):
        defect = 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)
        if 0 < defect < budget_defect:
            out.append((p, q, r))
    out.sort(key=lambda t: (1 - Fraction(1, t[0]) - Fraction(1, t[1]) - Fraction(1, t[2]), t))
    return out


class TestLedger:
    def test_245_ext1(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        assert ledger.area == pytest.approx(math.pi / 10.0, abs=1e-14)
        assert ledger.two_sided_budget == pytest.approx(math.pi / 5.0, abs=1e-14)
        assert ledger.upper_bound_with_boundary == pytest.approx(
            UB_WITH_BOUNDARY_245, abs=1e-10
        )
        assert ledger.upper_bound_no_boundary == pytest.approx(
            math.pi / 10.0, abs=1e-14
        )
        assert ledger.max_boundary_pieces == 4

    def test_245_ext2_halves(self):
        ledger = make_ledger(sig(2, 4, 5), 2)
        assert ledger.upper_bound_no_boundary == pytest.approx(
            math.pi / 20.0, abs=1e-14
        )
        assert ledger.two_sided_budget == pytest.approx(math.pi / 10.0, abs=1e-14)
        assert ledger.max_boundary_pieces == 2

    def test_bound_ratio_is_constant_h(self):
        for orders, ext in [((2, 4, 5), 1), ((2, 3, 7), 1), ((2, 4, 6), 2)]:
            ledger = make_ledger(sig(*orders), ext)
            assert ledger.upper_bound_with_boundary == constant_H() * (
                ledger.upper_bound_no_boundary
            )

    def test_exact_piece_count_at_integer_ratio(self):
        # budget(2,3,7)/(pi/21) is exactly 2; float division must not round down.
        assert make_ledger(sig(2, 3, 7), 1).max_boundary_pieces == 2

    def test_validation(self):
        with pytest.raises(DomainError):
            make_ledger(sig(2, 3, 6), 1)
        with pytest.raises(DomainError):
            make_ledger(sig(2, 4, 5), 3)


class TestBoundaryCandidates:
    def test_245_worked_case(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        rows = boundary_candidates(ledger, refined_boundary_orders(sig(2, 4, 5)))
        assert [s.orders for s, _ in rows] == [(2, 4, 5), (3, 3, 4)]
        assert rows[0][1] == pytest.approx(math.pi / 10.0, abs=1e-14)
        assert rows[1][1] == pytest.approx(math.pi / 6.0, abs=1e-14)

    def test_245_against_brute_force(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        orders = refined_boundary_orders(sig(2, 4, 5))
        rows = boundary_candidates(ledger, orders)
        # budget as a multiple of 2*pi: 2 * (1/20) / 1 = 1/10
        oracle = brute_force_candidates(Fraction(1, 10), list(orders))
        assert [s.orders for s, _ in rows] == oracle

    def test_237_universe_case_with_brute_force(self):
        ledger = make_ledger(sig(2, 3, 7), 1)
        orders = cone_order_universe(sig(2, 3, 7))
        rows = boundary_candidates(ledger, orders)
        assert [s.orders for s, _ in rows] == [(2, 3, 7), (2, 3, 8)]
        oracle = brute_force_candidates(Fraction(2, 42), list(orders))
        assert [s.orders for s, _ in rows] == oracle

    def test_exact_budget_is_excluded(self):
        # (2,5,5) has area exactly the two-sided budget of (2,4,5) at ext 1.
        ledger = make_ledger(sig(2, 4, 5), 1)
        from turnover.collars import ConeOrderSet

        rows = boundary_candidates(ledger, ConeOrderSet((2, 3, 4, 5)))
        assert (2, 5, 5) not in [s.orders for s, _ in rows]

    def test_superset_monotonicity(self):
        from turnover.collars import ConeOrderSet

        ledger = make_ledger(sig(2, 4, 5), 1)
        small = boundary_candidates(ledger, ConeOrderSet((2, 3, 4)))
        large = boundary_candidates(ledger, ConeOrderSet((2, 3, 4, 5)))
        assert {s.orders for s, _ in small} <= {s.orders for s, _ in large}

    def test_areas_below_budget(self):
        ledger = make_ledger(sig(2, 4, 6), 2)
        rows = boundary_candidates(ledger, refined_boundary_orders(sig(2, 4, 6)))
        assert rows
        for _, area in rows:
            assert area < ledger.two_sided_budget

    def test_empty_order_set(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        assert boundary_candidates(ledger, []) == []


class TestCaseScan:
    def test_334_k4_closed_is_the_binding_case(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        records = miyamoto_case_scan(ledger, sig(3, 3, 4))
        assert all(rec.verdict is Verdict.EXCLUDED for rec in records)
        binding = min(records, key=lambda rec: rec.lower_bound)
        assert (binding.case.k, binding.case.closed) == (4, True)
        assert binding.case.theta == math.pi / 4.0
        assert binding.lower_bound == pytest.approx(CHAIN_334_K4_CLOSED, abs=1e-5)
        assert binding.lower_bound > ledger.upper_bound_with_boundary

    def test_245_boundary_survivors(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        records = miyamoto_case_scan(ledger, sig(2, 4, 5), skip_forced_closed=True)
        survivors = {
            (rec.case.k, rec.case.closed)
            for rec in records
            if rec.verdict is Verdict.SURVIVES
        }
        assert survivors == {(4, True), (5, True)}

    def test_245_k2_closed_angle(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        records = miyamoto_case_scan(ledger, sig(2, 4, 5))
        k2 = next(
            rec for rec in records if rec.case.k == 2 and rec.case.closed
        )
        # chi = -1/20, so theta = pi / (3 (1 + 2/20)) = pi / 3.3.
        assert k2.case.theta == pytest.approx(math.pi / 3.3, abs=1e-14)
        assert k2.verdict is Verdict.EXCLUDED

    def test_forced_closed_skipping(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        full = miyamoto_case_scan(ledger, sig(3, 3, 4))
        skipped = miyamoto_case_scan(ledger, sig(3, 3, 4), skip_forced_closed=True)
        combos = {(rec.case.k, rec.case.closed) for rec in skipped}
        assert (4, False) not in combos
        assert (3, False) in combos  # order 3 occurs twice: open case possible
        assert len(full) == 6 and len(skipped) == 5

    def test_synthetic_infinite_bound_survives_everything(self):
        ledger = dataclasses.replace(
            make_ledger(sig(2, 4, 5), 1), upper_bound_with_boundary=math.inf
        )
        records = miyamoto_case_scan(ledger, sig(3, 3, 4))
        assert all(rec.verdict is Verdict.SURVIVES for rec in records)

    def test_excluded_cases_exceed_the_bound(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        for rec in miyamoto_case_scan(ledger, sig(2, 4, 5)):
            if rec.verdict is Verdict.EXCLUDED:
                assert rec.lower_bound > ledger.upper_bound_with_boundary


class TestRefinements:
    def test_order4(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        bound, verdict = order4_refinement(ledger, sig(2, 4, 5), DISK_RADIUS_245)
        assert bound == pytest.approx(BOUND_ORDER4, abs=1e-5)
        assert verdict is Verdict.EXCLUDED

    def test_order5(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        bound, verdict = order5_refinement(ledger, sig(2, 4, 5), SEPARATION_245)
        assert bound == pytest.approx(BOUND_ORDER5, abs=1e-5)
        assert verdict is Verdict.EXCLUDED

    def test_large_disk_small_theta_regime(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        bound, verdict = order4_refinement(ledger, sig(2, 4, 5), 10.0)
        # Enormous disk forces a tiny return path: octahedral density regime.
        assert bound == pytest.approx(
            (3.6638623767088761 / (4 * math.pi)) * math.pi / 10.0, rel=1e-3
        )
        assert verdict is Verdict.SURVIVES

    def test_degenerate_disk_radius_raises(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        with pytest.raises(DomainError):
            order4_refinement(ledger, sig(2, 4, 5), 1e-12)

    def test_separation_validation(self):
        ledger = make_ledger(sig(2, 4, 5), 1)
        with pytest.raises(DomainError):
            order5_refinement(ledger, sig(2, 4, 5), 0.0)

    def test_known_refinements_values_come_from_trig(self):
        refs = known_refinements(sig(2, 4, 5))
        assert [r.kind for r in refs] == ["disk", "separation"]
        assert refs[0].value == pytest.approx(DISK_RADIUS_245, abs=1e-12)
        assert refs[1].value == pytest.approx(SEPARATION_245, abs=1e-12)
        assert known_refinements(sig(2, 4, 6)) == ()


class TestVolumeExclusion:
    def test_o9_excludes(self):
        assert exclusion_by_volume(1.004261, sig(3, 3, 5), False) is Verdict.EXCLUDED
        assert exclusion_by_volume(1.004261, sig(2, 5, 5), False) is Verdict.EXCLUDED

    def test_o9_does_not_exclude_355(self):
        assert exclusion_by_volume(1.004261, sig(3, 5, 5), False) is Verdict.SURVIVES

    def test_o8(self):
        for orders in [(2, 4, 5), (2, 5, 5), (3, 3, 4)]:
            assert exclusion_by_volume(0.717306, sig(*orders), False) is Verdict.EXCLUDED
        for orders in [(3, 3, 5), (3, 5, 5)]:
            assert exclusion_by_volume(0.717306, sig(*orders), False) is Verdict.SURVIVES

    def test_embedded_flag_uses_scaled_cap(self):
        # area(3,3,5) = 0.8378 < 0.9: excluded without embedded turnovers,
        # but H * area = 1.005 > 0.9 survives with them.
        assert exclusion_by_volume(0.9, sig(3, 3, 5), False) is Verdict.EXCLUDED
        assert exclusion_by_volume(0.9, sig(3, 3, 5), True) is Verdict.SURVIVES

    def test_validation(self):
        with pytest.raises(DomainError):
            exclusion_by_volume(0.0, sig(2, 4, 5), False)


class TestAnalyze:
    def test_245_full_pipeline(self):
        report = analyze(sig(2, 4, 5), 1)
        assert report.conclusion is Conclusion.NO_EMBEDDED_TURNOVERS
        assert [s.orders for s, _ in report.candidates] == [(2, 4, 5), (3, 3, 4)]
        assert list(report.admissible_orders) == [2, 3, 4, 5]

    def test_245_argument_shape(self):
        """(3,3,4) dies in the scan with k=4 closed binding; (2,4,5) needs
        both refinements, one per surviving axis order."""
        report = analyze(sig(2, 4, 5), 1)
        by_boundary = {}
        for rec in report.cases:
            by_boundary.setdefault(rec.case.boundary_sig.orders, []).append(rec)
        assert all(
            rec.verdict is Verdict.EXCLUDED for rec in by_boundary[(3, 3, 4)]
        )
        survivors = [
            rec for rec in by_boundary[(2, 4, 5)] if rec.verdict is Verdict.SURVIVES
        ]
        assert {(rec.case.k, rec.case.closed) for rec in survivors} == {
            (4, True),
            (5, True),
        }
        refinement_targets = {
            (rec.input.k, rec.verdict) for rec in report.refinements
        }
        assert refinement_targets == {(4, Verdict.EXCLUDED), (5, Verdict.EXCLUDED)}

    def test_245_without_refinements_cannot_conclude(self):
        report = analyze(sig(2, 4, 5), 1, AnalyzeOptions(refinements=()))
        assert report.conclusion is Conclusion.CANDIDATES_REMAIN

    def test_246_ext2_remains_open(self):
        report = analyze(sig(2, 4, 6), 2)
        assert report.conclusion is Conclusion.CANDIDATES_REMAIN

    def test_247_ext2_keeps_237_candidate(self):
        report = analyze(sig(2, 4, 7), 2)
        assert report.conclusion is Conclusion.CANDIDATES_REMAIN
        assert (2, 3, 7) in [s.orders for s, _ in report.candidates]

    def test_report_json_schema(self):
        payload = analyze(sig(2, 4, 5), 1).to_dict()
        json.dumps(payload)  # serializable
        assert set(payload) == {
            "signature",
            "extension_index",
            "bounds",
            "orders",
            "candidates",
            "cases",
            "refinements",
            "conclusion",
        }
        assert set(payload["bounds"]) == {
            "with_boundary",
            "no_boundary",
            "budget",
            "max_pieces",
        }
        case = payload["cases"][0]
        assert set(case) == {"boundary", "k", "closed", "theta", "lower_bound", "verdict"}
        assert payload["conclusion"] == "NoEmbeddedTurnovers"
        assert payload["signature"] == [2, 4, 5]

    def test_refinement_input_validation(self):
        with pytest.raises(DomainError):
            RefinementInput(sig(2, 4, 5), 4, "nope", 1.0)
        with pytest.raises(DomainError):
            RefinementInput(sig(2, 4, 5), 4, "disk", 0.0)


class TestRegistry:
    def test_entries_present(self):
        names = {entry.name for entry in registry()}
        assert names == {"Q3", "Q10", "O8", "O9", "Q(2,4,7)", "Q(2,4,inf)"}

    def test_q3(self):
        entry = next(e for e in registry() if e.name == "Q3")
        assert entry.volume == pytest.approx(0.071770, abs=1e-9)
        assert [s.orders for s in entry.known_immersed] == [(2, 4, 5)]
        assert entry.extension_index == 2

    def test_q10(self):
        entry = next(e for e in registry() if e.name == "Q10")
        assert entry.volume == pytest.approx(0.211446, abs=1e-9)
        assert [s.orders for s in entry.known_immersed] == [(2, 4, 6)]

    def test_o8_o9_prisms(self):
        volumes = {e.name: e.volume for e in registry()}
        assert volumes["O8"] == pytest.approx(0.717306, abs=1e-9)
        assert volumes["O9"] == pytest.approx(1.004261, abs=1e-9)
        assert volumes["Q(2,4,7)"] == pytest.approx(0.325947, abs=1e-9)
        assert volumes["Q(2,4,inf)"] == pytest.approx(0.501921, abs=1e-9)

    def test_consistency_with_volume_caps(self):
        """No registry entry contradicts its own volume cap: each cited
        immersed turnover's budget (with the entry's extension index, and
        the boundary bound when embedded turnovers are present) exceeds the
        cited volume."""
        H = constant_H()
        for entry in registry():
            for s in entry.known_immersed:
                cap = turnover_area(s) / entry.extension_index
                if entry.has_embedded:
                    cap *= H
                assert entry.volume < cap, entry.name

    def test_ideal_prism_consistency(self):
        # The (2,4,inf) roof is outside the finite signature model; its area
        # is pi/2 and the halved boundary bound still clears the volume.
        entry = next(e for e in registry() if e.name == "Q(2,4,inf)")
        assert entry.prism_orders == (2, 4, None)
        cap = constant_H() * (math.pi / 2.0) / entry.extension_index
        assert entry.volume < cap

    def test_json_round_trip(self):
        rows = registry_json()
        json.dumps(rows)
        q3 = next(r for r in rows if r["name"] == "Q3")
        assert q3["known_immersed"] == [[2, 4, 5]]
        assert q3["edge_orders"] == [2, 4, 2, 3, 5, 3]
