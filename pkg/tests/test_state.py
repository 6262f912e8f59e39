import pytest

from decrement.logic import formula_from_worldset, parse_formula, worldset_from_bits
from decrement.preorder import enumerate_preorders
from decrement.state import (
    EpistemicState,
    StateFormatError,
    bel_equiv_wrt,
    belief_models,
    believes,
    state_from_doc,
    state_to_doc,
)

PSI1_DOC = {"atoms": ["a", "b"], "layers": [["11"], ["01"], ["10", "00"]]}
# Successor columns from the worked example
AFTER_TYPE2_DOC = {"atoms": ["a", "b"], "layers": [["11", "01"], ["10", "00"]]}
AFTER_TYPE1_DOC = {"atoms": ["a", "b"], "layers": [["11", "01"], ["00"], ["10"]]}


class TestBeliefModels:
    def test_psi1_bottom_layer(self):
        st = state_from_doc(PSI1_DOC)
        assert belief_models(st) == worldset_from_bits(["11"])

    def test_flat_state(self, flat2):
        assert belief_models(flat2) == flat2.sig.universe

    def test_successor_column(self):
        st = state_from_doc(AFTER_TYPE2_DOC)
        assert belief_models(st) == worldset_from_bits(["11", "01"])


class TestBelieves:
    def test_psi1_believes_both_atoms(self, psi1, sig2):
        assert believes(psi1, parse_formula("a", sig2))
        assert believes(psi1, parse_formula("b", sig2))

    def test_tautology_always_believed(self, sig2):
        top = parse_formula("true", sig2)
        for tpo in enumerate_preorders(4):
            assert believes(EpistemicState(sig2, tpo), top)

    def test_bottom_never_believed(self, sig2):
        bot = parse_formula("false", sig2)
        for tpo in enumerate_preorders(4):
            assert not believes(EpistemicState(sig2, tpo), bot)


class TestBelEquivWrt:
    def test_successor_columns_agree_on_not_a(self, sig2):
        s1 = state_from_doc(AFTER_TYPE2_DOC)
        s2 = state_from_doc(AFTER_TYPE1_DOC)
        assert bel_equiv_wrt(s1, s2, parse_formula("!a", sig2))

    def test_identical_states(self, psi1, sig2):
        assert bel_equiv_wrt(psi1, psi1, parse_formula("!a", sig2))

    def test_psi1_vs_successor_differ_on_not_a(self, psi1, sig2):
        s2 = state_from_doc(AFTER_TYPE2_DOC)
        assert not bel_equiv_wrt(psi1, s2, parse_formula("!a", sig2))

    def test_signature_mismatch(self, psi1):
        from decrement.logic import Signature
        from decrement.preorder import TotalPreorder

        other = EpistemicState(Signature(("x", "y")), TotalPreorder((0, 0, 0, 0)))
        with pytest.raises(ValueError):
            bel_equiv_wrt(psi1, other, parse_formula("x", other.sig))


class TestStructuralFaithfulness:
    def test_bottom_layer_tied_and_strictly_below(self, sig2):
        # SFA-style conditions hold on every constructible state
        for tpo in enumerate_preorders(4):
            st = EpistemicState(sig2, tpo)
            bel = belief_models(st)
            for w1 in range(4):
                for w2 in range(4):
                    if (bel >> w1) & 1 and (bel >> w2) & 1:
                        assert tpo.ranks[w1] == tpo.ranks[w2]
                    if (bel >> w1) & 1 and not (bel >> w2) & 1:
                        assert tpo.ranks[w1] < tpo.ranks[w2]

    def test_beliefs_deductively_closed(self, sig2):
        # believes(alpha) and believes(alpha -> beta) imply believes(beta)
        from decrement.logic import Implies

        classes = [formula_from_worldset(m, sig2) for m in range(16)]
        for tpo in enumerate_preorders(4):
            st = EpistemicState(sig2, tpo)
            for f in classes:
                for g in classes:
                    if believes(st, f) and believes(st, Implies(f, g)):
                        assert believes(st, g)


class TestStateDocs:
    def test_roundtrip(self, psi1):
        assert state_from_doc(state_to_doc(psi1)) == psi1

    def test_doc_layers_are_descending_bitstrings(self, psi1):
        assert state_to_doc(psi1)["layers"] == [["11"], ["01"], ["10", "00"]]

    @pytest.mark.parametrize(
        "doc",
        [
            [],
            {},
            {"atoms": ["a", "b"]},
            {"atoms": ["a", "b"], "layers": [["11"]]},
            {"atoms": ["a", "b"], "layers": [["11"], ["11"], ["10", "01", "00"]]},
            {"atoms": ["a", "b"], "layers": [["111"], ["01", "10", "00"]]},
            {"atoms": ["a", "b"], "layers": [["11"], [], ["10", "01", "00"]]},
            {"atoms": ["a", "a"], "layers": [["11", "10", "01", "00"]]},
            {"atoms": ["a", "b"], "layers": "nope"},
        ],
    )
    def test_malformed_docs(self, doc):
        with pytest.raises(StateFormatError):
            state_from_doc(doc)

    def test_mismatched_order_size(self, sig2):
        from decrement.preorder import TotalPreorder

        with pytest.raises(ValueError):
            EpistemicState(sig2, TotalPreorder((0, 1)))
