import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geu import (DecisionProblem, DecisionSituation, DuplicateActError, GEUError, Pair, ValidationError,
                 enumerate_simple_acts, ev_set, geu, geu_restricted, geu_statewise, induced_preference,
                 is_additive, is_whole, probability_measure, splice, standard_domain, ulotto)
from geu.combinatorics import subsets

from .corpus import belief, eu_problem, f1, f2, pair_problem


def direct_eu(D, a, Z=None):
    """Reference: state-by-state sum of probability times utility."""
    w = D.plausibility.params
    return sum((w[s] * D.utility[c] for s, c in zip(D.states, D.situation.act(a)) if Z is None or s in Z),
               Fraction(0))


class TestSituation:
    def test_mapping_outcomes(self):
        sit = DecisionSituation(("s1", "s2"), ("c1", "c2"), {"a": {"s2": "c1", "s1": "c2"}})
        assert sit.act("a") == ("c2", "c1")

    def test_errors_are_collected(self):
        with pytest.raises(ValidationError) as info:
            DecisionSituation(("s1", "s1"), ("c1",), {"a": ("c1",), "b": ("c9", "c1")})
        v = info.value.violations
        assert "duplicate state ids" in v
        assert any("act a has 1 outcomes" in x for x in v)

    def test_partial_act(self):
        with pytest.raises(ValidationError, match="invalid decision situation"):
            DecisionSituation(("s1", "s2"), ("c1",), {"a": {"s1": "c1"}})

    def test_duplicate_acts(self):
        with pytest.raises(DuplicateActError, match="a = b"):
            DecisionSituation(("s1",), ("c1",), {"a": ("c1",), "b": ("c1",)})
        sit = DecisionSituation(("s1",), ("c1",), {"a": ("c1",), "b": ("c1",)}, allow_duplicates=True)
        assert sit.names == ("a", "b")

    def test_all_simple_acts(self):
        sit = DecisionSituation.all_simple_acts(("s1", "s2"), ("c1", "c2"))
        assert sit.names == ("[c1,c1]", "[c1,c2]", "[c2,c1]", "[c2,c2]")
        assert sit.is_complete()

    def test_splice(self):
        sit = f1().situation
        assert splice(sit, "aK", ["s1"], "aM") == ("c1", "c2")
        assert splice(sit, "aK", [], "aM") == sit.act("aM")

    def test_enumerate_starts_constant(self):
        sit = f1().situation
        assert list(enumerate_simple_acts(sit)) == [("c1", "c1"), ("c1", "c2"), ("c2", "c1"), ("c2", "c2")]


class TestProblemValidation:
    def test_missing_utility(self):
        sit = f1().situation
        with pytest.raises(ValidationError) as info:
            DecisionProblem(sit, standard_domain(), {"c1": Fraction(1)},
                            probability_measure({"s1": 1, "s2": 0}))
        assert any("no utility" in v for v in info.value.violations)

    def test_utility_outside_domain(self):
        sit = f1().situation
        with pytest.raises(ValidationError):
            DecisionProblem(sit, standard_domain(), {"c1": Pair(1, 1), "c2": Fraction(0)},
                            probability_measure({"s1": 1, "s2": 0}))

    def test_measure_over_other_states(self):
        sit = f1().situation
        with pytest.raises(ValidationError):
            DecisionProblem(sit, standard_domain(), {"c1": 1, "c2": 0}, probability_measure({"s1": 1}))


class TestGEU:
    def test_f1(self):
        D = f1()
        assert [geu(D, a) for a in D.situation.names] == [1, Fraction(3, 10), Fraction(7, 10), 0]

    @settings(max_examples=60)
    @given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(1, 3))
    def test_matches_direct_sum(self, seed, n, m):
        D = eu_problem(random.Random(seed), n, m)
        for a in D.situation.names:
            assert geu(D, a) == direct_eu(D, a) == geu_statewise(D, a)

    @settings(max_examples=40)
    @given(st.integers(0, 10 ** 6))
    def test_restricted(self, seed):
        D = eu_problem(random.Random(seed), 3, 2)
        for z in subsets(D.states):
            if z:
                for a in D.situation.names:
                    assert geu_restricted(D, a, z) == direct_eu(D, a, z)

    def test_restricted_empty(self):
        with pytest.raises(GEUError):
            geu_restricted(f1(), "aK", [])

    @settings(max_examples=40)
    @given(st.integers(0, 10 ** 6))
    def test_pair_componentwise(self, seed):
        D = pair_problem(random.Random(seed), 3, 3)
        w1, w2 = D.plausibility.params
        for a in D.situation.names:
            outs = D.situation.act(a)
            expect = Pair(sum((w1[s] * D.utility[c] for s, c in zip(D.states, outs)), Fraction(0)),
                          sum((w2[s] * D.utility[c] for s, c in zip(D.states, outs)), Fraction(0)))
            assert geu(D, a) == expect

    def test_belief_statewise_differs(self):
        D = belief()
        assert geu(D, "[c1,c1]") == 1
        assert geu_statewise(D, "[c1,c1]") == 0

    def test_ulotto(self):
        D = f1()
        assert ulotto(D, Fraction(1), ["s1"], Fraction(0)) == Fraction(3, 10)
        assert ulotto(D, Fraction(5), ["s1", "s2"], Fraction(0)) == 5
        assert ulotto(D, Fraction(5), [], Fraction(2)) == 2


class TestProperties:
    def test_additive(self):
        assert is_additive(f1()).holds
        assert is_additive(f2()).holds

    def test_belief_not_additive(self):
        r = is_additive(belief())
        assert r.witness == {"c": "c1", "X": frozenset({"s1"}), "Y": frozenset({"s2"})}
        assert r.confirm()

    def test_whole(self):
        assert is_whole(f1(("aK", "aL"))).holds

    def test_not_whole(self):
        sit = DecisionSituation(("s1", "s2"), ("c1", "c2"), {"aK": ("c1", "c1")})
        D = DecisionProblem(sit, standard_domain(), {"c1": Fraction(0), "c2": Fraction(0)},
                            probability_measure({"s1": "1/2", "s2": "1/2"}))
        r = is_whole(D)
        assert r.witness == {"act": ("c1", "c2")}
        assert r.confirm()

    def test_ev_set_dedup_in_act_order(self):
        D = f1()
        assert ev_set(D, ["s1"]) == (Fraction(3, 10), 0)
        assert ev_set(D, ["s1", "s2"]) == (1, Fraction(3, 10), Fraction(7, 10), 0)

    def test_induced_preference(self):
        rel = induced_preference(f1())
        assert rel("aM", "aL") and rel("aL", "aR") and rel("aR", "aK")
        assert not rel("aK", "aR")
        assert rel.is_total_preorder()

    def test_problem_equality(self):
        assert f1() == f1()
        assert f2() != f2(use_min=True)
