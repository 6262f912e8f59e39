"""Checker tests, including an independent naive oracle.

The naive evaluators below quantify postulates directly through the public
state/operator API, without touching the checker's internal case machinery,
and must agree with every report outcome they cover.
"""

import json

import pytest

from decrement.checker import (
    ALL_POSTULATES,
    DomainTooLargeError,
    EXHAUSTIVE,
    PostulateId,
    Sample,
    check_postulate,
    conformance_matrix,
    replay_counterexample,
    successor_satisfiability,
    verify_representation,
)
from decrement.logic import And, Signature, formula_from_worldset, negated_world, parse_formula
from decrement.operators import OperatorKind, achieve, step
from decrement.preorder import UniverseTooLargeError, enumerate_preorders, leq, lt
from decrement.state import EpistemicState, belief_models, believes

T1 = OperatorKind.TYPE1_DECREMENT
T2 = OperatorKind.TYPE2_DECREMENT
IN = OperatorKind.INSTANT_CONTRACTION

SIG2 = Signature(("a", "b"))
CLASSES = [formula_from_worldset(m, SIG2) for m in range(16)]


def states():
    return (EpistemicState(SIG2, tpo) for tpo in enumerate_preorders(4))


def bel(state):
    return belief_models(state)


def ach(state, f, kind):
    return achieve(state, f, kind).state


# --- naive, checker-independent postulate evaluators ------------------------

def naive_D1(kind):
    return all(
        bel(st) & ~bel(ach(st, f, kind)) == 0 for st in states() for f in CLASSES
    )


def naive_D2(kind):
    ok = True
    for st in states():
        for f in CLASSES:
            if not believes(st, f):
                ok &= bel(ach(st, f, kind)) & ~bel(st) == 0
    return ok


def naive_D4(kind):
    from decrement.logic import models

    ok = True
    for st in states():
        for f in CLASSES:
            ok &= bel(ach(st, f, kind)) & models(f, SIG2) & ~bel(st) == 0
    return ok


def naive_D6(kind):
    ok = True
    for st in states():
        for f in CLASSES:
            for g in CLASSES:
                lhs = bel(ach(st, And(f, g), kind))
                ok &= lhs & ~(bel(ach(st, f, kind)) | bel(ach(st, g, kind))) == 0
    return ok


def naive_partial_success(kind):
    from decrement.logic import models
    from decrement.preorder import min_of

    ok = True
    for st in states():
        for f in CLASSES:
            after = bel(step(st, f, kind))
            upper = bel(st) | min_of(SIG2.universe & ~models(f, SIG2), st.order)
            ok &= bel(st) & ~after == 0 and after & ~upper == 0
    return ok


def naive_lemma1(kind):
    ok = True
    for st in states():
        for w in range(4):
            got = bel(ach(st, negated_world(w, SIG2), kind))
            ok &= got == bel(st) | (1 << w)
    return ok


def naive_dr(kind, pid):
    """Pairwise DR conditions on believed steps, via the public order API."""
    from decrement.logic import models
    from decrement.operators import frontal

    violations = []
    for st in states():
        for f in CLASSES:
            if not believes(st, f):
                continue
            amask = models(f, SIG2)
            succ = step(st, f, kind)
            b, a = st.order, succ.order
            for w1 in range(4):
                for w2 in range(4):
                    in1 = (amask >> w1) & 1
                    in2 = (amask >> w2) & 1
                    bad = False
                    if pid == "DR8" and in1 and in2:
                        bad = leq(w1, w2, b) != leq(w1, w2, a)
                    elif pid == "DR9" and not in1 and not in2:
                        bad = leq(w1, w2, b) != leq(w1, w2, a)
                    elif pid == "DR10" and not in1 and in2:
                        bad = leq(w1, w2, b) and not leq(w1, w2, a)
                    elif pid == "DR11" and not in1 and in2:
                        bad = lt(w1, w2, b) and not lt(w1, w2, a)
                    elif pid == "DR12" and not in1 and in2:
                        bad = b.ranks[w1] == b.ranks[w2] + 1 and not leq(w1, w2, a)
                    elif pid == "DR13" and not in1 and in2:
                        bad = b.ranks[w2] == 0 and not leq(w2, w1, a)
                    elif pid == "DR14" and not in1 and in2:
                        bad = b.ranks[w1] == b.ranks[w2] and a.ranks[w2] != a.ranks[w1] + 1
                    elif pid == "DR15" and not in1 and in2:
                        bad = (
                            b.ranks[w1] == b.ranks[w2]
                            and frontal(w1, f, st)
                            and a.ranks[w1] != a.ranks[w2]
                        )
                    if bad:
                        violations.append((st.order.ranks, w1, w2))
    return violations


class TestNaiveOracleAgreement:
    @pytest.mark.parametrize("kind", list(OperatorKind))
    @pytest.mark.parametrize(
        "pid,naive",
        [
            (PostulateId.D1, naive_D1),
            (PostulateId.D2, naive_D2),
            (PostulateId.D4, naive_D4),
            (PostulateId.D6, naive_D6),
            (PostulateId.PARTIAL_SUCCESS, naive_partial_success),
            (PostulateId.LEMMA1, naive_lemma1),
        ],
    )
    def test_formula_level(self, kind, pid, naive):
        report = check_postulate(kind, pid, SIG2)
        assert (report.outcome == "pass") == naive(kind)

    @pytest.mark.parametrize("kind", list(OperatorKind))
    @pytest.mark.parametrize(
        "pid", ["DR8", "DR9", "DR10", "DR11", "DR12", "DR13", "DR14", "DR15"]
    )
    def test_dr_level(self, kind, pid):
        report = check_postulate(kind, pid, SIG2)
        violations = naive_dr(kind, pid)
        assert (report.outcome == "pass") == (not violations)


class TestSpecificCells:
    def test_lemma1_type1_case_count(self):
        report = check_postulate(T1, PostulateId.LEMMA1, SIG2)
        assert report.outcome == "pass"
        assert report.cases == 75 * 4

    def test_instant_c3(self):
        report = check_postulate(IN, PostulateId.C3, SIG2)
        assert report.outcome == "pass"

    def test_type2_dr15(self):
        report = check_postulate(T2, PostulateId.DR15, SIG2)
        assert report.outcome == "pass"

    def test_instant_dr12_fails_with_replayable_witness(self):
        report = check_postulate(IN, PostulateId.DR12, SIG2)
        assert report.outcome == "fail"
        assert report.counterexamples
        for ce in report.counterexamples:
            assert replay_counterexample(IN, PostulateId.DR12, ce)

    def test_instant_dr12_minimal_counterexample_shape(self):
        # smallest failing configuration: a non-minimal counter-world of a
        # sits directly above an alpha-world
        report = check_postulate(IN, PostulateId.DR12, SIG2)
        first = report.counterexamples[0]
        assert len(first["state"]) == 3

    def test_pass_reports_have_no_counterexamples(self):
        for pid in (PostulateId.D1, PostulateId.DR8, PostulateId.SFA1):
            rep = check_postulate(T2, pid, SIG2)
            assert rep.outcome == "pass" and rep.counterexamples == []

    def test_report_doc_schema(self):
        doc = check_postulate(T2, PostulateId.D8, SIG2).to_doc()
        assert list(doc.keys()) == [
            "postulate",
            "operator",
            "domain",
            "outcome",
            "cases",
            "counterexamples",
        ]
        assert doc["postulate"] == "D8"
        assert doc["operator"] == "type2"
        assert doc["domain"].startswith("exhaustive")


class TestMatrix:
    def test_full_matrix_completes_and_serialises(self):
        matrix = conformance_matrix(
            list(OperatorKind), [PostulateId.D1, PostulateId.DR12], SIG2
        )
        doc = json.loads(matrix.to_json())
        assert len(doc["reports"]) == 6
        assert doc["operators"] == ["type1", "type2", "instant"]

    def test_all_postulates_covered(self):
        assert {p.value for p in ALL_POSTULATES} == {p.value for p in PostulateId}
        matrix = conformance_matrix([T1], "all", SIG2, Sample(seed=1, count=4))
        assert len(matrix.reports) == len(ALL_POSTULATES)

    def test_deterministic_bytes(self):
        pids = [PostulateId.D1, PostulateId.D6, PostulateId.DR12, PostulateId.LEMMA1]
        m1 = conformance_matrix(list(OperatorKind), pids, SIG2)
        m2 = conformance_matrix(list(OperatorKind), pids, SIG2)
        assert m1.to_json().encode() == m2.to_json().encode()

    def test_worker_count_does_not_change_bytes(self):
        pids = [PostulateId.D1, PostulateId.DR12, PostulateId.LEMMA1]
        m1 = conformance_matrix(list(OperatorKind), pids, SIG2, workers=1)
        m2 = conformance_matrix(list(OperatorKind), pids, SIG2, workers=3)
        assert m1.to_json().encode() == m2.to_json().encode()

    def test_sample_mode_deterministic(self):
        mode = Sample(seed=7, count=64)
        r1 = check_postulate(T1, PostulateId.D8, SIG2, mode)
        r2 = check_postulate(T1, PostulateId.D8, SIG2, mode)
        assert r1.to_doc() == r2.to_doc()
        assert r1.cases == 64
        assert "sample(seed=7,count=64)" in r1.domain

    def test_sample_mode_three_atoms(self):
        sig3 = Signature(("a", "b", "c"))
        rep = check_postulate(T2, PostulateId.D1, sig3, Sample(seed=3, count=40))
        assert rep.outcome == "pass"

    def test_partial_success_sampled_three_atoms(self):
        sig3 = Signature(("a", "b", "c"))
        for kind in (T1, T2):
            rep = check_postulate(kind, PostulateId.PARTIAL_SUCCESS, sig3, Sample(seed=9, count=400))
            assert rep.outcome == "pass"
            assert rep.cases == 400


class TestDomainLimits:
    def test_exhaustive_pairs_capped_at_two_atoms(self):
        sig3 = Signature(("a", "b", "c"))
        with pytest.raises(DomainTooLargeError):
            check_postulate(T1, PostulateId.D12, sig3, EXHAUSTIVE)

    def test_four_atoms_always_too_large(self):
        sig4 = Signature(("a", "b", "c", "d"))
        with pytest.raises(DomainTooLargeError):
            check_postulate(T1, PostulateId.D1, sig4, Sample(seed=0, count=5))

    def test_unknown_postulate(self):
        with pytest.raises(ValueError):
            check_postulate(T1, "D99", SIG2)


class TestSuccessorSatisfiability:
    def test_flat_identity_included(self, flat2, sig2):
        alpha = parse_formula("a", sig2)
        out = successor_satisfiability(flat2, alpha, ["DR8", "DR9", "DR10", "DR11", "DR13"])
        assert flat2.order in out

    def test_psi1_contains_both_canonical_successors(self, psi1, sig2):
        alpha = parse_formula("a", sig2)
        out = successor_satisfiability(
            psi1, alpha, ["DR8", "DR9", "DR10", "DR11", "DR12", "DR13"]
        )
        assert step(psi1, alpha, T1).order in out
        assert step(psi1, alpha, T2).order in out
        assert len(out) >= 2

    def test_conflict_configuration_empty(self, conflict2, sig2):
        # Bottom layer holds both an alpha-world and a counter-world, with a
        # counter-world one layer up: DR9 + DR12 + DR13 admit no successor.
        alpha = parse_formula("a", sig2)
        out = successor_satisfiability(conflict2, alpha, ["DR9", "DR12", "DR13"])
        assert out == []

    def test_non_dr_constraint_rejected(self, psi1, sig2):
        with pytest.raises(ValueError):
            successor_satisfiability(psi1, parse_formula("a", sig2), ["D8"])

    def test_universe_cap(self):
        sig4 = Signature(("a", "b", "c", "d"))
        from decrement.preorder import TotalPreorder

        big = EpistemicState(sig4, TotalPreorder((0,) * 16))
        with pytest.raises(UniverseTooLargeError):
            successor_satisfiability(big, parse_formula("a", sig4), ["DR8"])


class TestVerifyRepresentation:
    def test_decrement_kinds_pass(self):
        for kind in (T1, T2):
            report = verify_representation(kind, SIG2)
            assert report.outcome == "pass"
            assert report.cases == 75

    def test_instant_fails_dr12_in_part_iv(self):
        report = verify_representation(IN, SIG2)
        assert report.outcome == "fail"
        assert any("(iv) DR12" in ce["detail"] for ce in report.counterexamples)
        assert not any("(i)" == ce["detail"][:3] for ce in report.counterexamples)

    def test_domain_cap(self):
        sig3 = Signature(("a", "b", "c"))
        with pytest.raises(DomainTooLargeError):
            verify_representation(T1, sig3)


class TestReplaySoundness:
    def test_all_failing_cells_replay(self):
        # every counterexample of every failing cell re-evaluates to a violation
        for kind in OperatorKind:
            for pid in (PostulateId.D12, PostulateId.DR12, PostulateId.DR14, PostulateId.DR15):
                report = check_postulate(kind, pid, SIG2)
                for ce in report.counterexamples:
                    assert replay_counterexample(kind, pid, ce), (kind, pid, ce)

    def test_counterexamples_sorted_smallest_first(self):
        report = check_postulate(IN, PostulateId.DR12, SIG2)
        sizes = [len(ce["state"]) for ce in report.counterexamples]
        assert sizes == sorted(sizes)


class TestGoldenReports:
    def test_instant_dr12_report_matches_golden(self, request):
        import pathlib

        golden = pathlib.Path(request.config.rootdir) / "tests" / "golden" / "check_instant_dr12_sig2.json"
        report = check_postulate(IN, PostulateId.DR12, SIG2)
        assert report.to_json() == golden.read_text(encoding="utf-8")

    def test_conflict_sat_probe_matches_golden(self, request, conflict2, sig2):
        import pathlib

        golden = pathlib.Path(request.config.rootdir) / "tests" / "golden" / "sat_conflict_dr9_dr12_dr13.json"
        out = successor_satisfiability(conflict2, parse_formula("a", sig2), ["DR9", "DR12", "DR13"])
        from decrement.logic import worldset_to_bits
        from decrement.preorder import to_layers
        from decrement.state import state_to_doc

        doc = {
            "state": state_to_doc(conflict2),
            "formula": "a",
            "constraints": ["DR9", "DR12", "DR13"],
            "count": len(out),
            "successors": [
                [worldset_to_bits(m, 2) for m in to_layers(t)] for t in out
            ],
        }
        assert json.dumps(doc, indent=2, ensure_ascii=False) + "\n" == golden.read_text(encoding="utf-8")
