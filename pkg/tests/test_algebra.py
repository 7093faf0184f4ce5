from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geu import (BudgetExceeded, DecisionSituation, Pair, Relation, TableError, ValidationError,
                 canonical_domain, check_distributivity, fold_sum, has_oplus_identity, is_monotonic,
                 pair_domain, pair_min_domain, standard_domain, table_domain, tagged_domain,
                 validate_domain)
from geu.algebra import REGISTRY, TaggedDomain
from geu.errors import GEUError
from geu.values import Tagged, TaggedConsequence

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
pairs = st.builds(Pair, rationals, rationals)


def or_tables(**overrides):
    """A two-element 'or' domain: bottom kills, top keeps."""
    tables = {
        "utility": ["0", "1"], "plausibility": ["b", "t"], "valuation": ["0", "1"],
        "bottom": "b", "top": "t",
        "oplus": [["0", "0", "0"], ["0", "1", "1"], ["1", "0", "1"], ["1", "1", "1"]],
        "otimes": [["b", "0", "0"], ["b", "1", "0"], ["t", "0", "0"], ["t", "1", "1"]],
        "utility_order": [["0", "1"]], "plausibility_order": [["b", "t"]], "valuation_order": [["0", "1"]],
    }
    tables.update(overrides)
    return tables


class TestRelation:
    def test_reflexive_closure(self):
        r = Relation(("a", "b"), frozenset({("a", "b")}))
        assert r("a", "a") and r("b", "b") and r("a", "b") and not r("b", "a")

    def test_partial_order_validated(self):
        with pytest.raises(ValidationError):
            Relation(("a", "b"), frozenset({("a", "b"), ("b", "a")}), kind="partial-order")
        with pytest.raises(ValidationError):
            Relation(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")}), kind="partial-order")

    def test_pairs_must_stay_in_carrier(self):
        with pytest.raises(ValidationError):
            Relation(("a",), frozenset({("a", "z")}))

    def test_total_preorder(self):
        r = Relation(("a", "b"), frozenset({("a", "b"), ("b", "a")}))
        assert r.is_total_preorder()
        assert not Relation(("a", "b"), frozenset()).is_total()


class TestValidateDomain:
    def test_standard_passes(self):
        report = validate_domain(standard_domain(), probe_budget=500)
        assert report.ok
        assert report["E1"].detail["mode"] == "certified+sampled"

    def test_pair_passes_with_identity(self):
        E = pair_domain()
        assert validate_domain(E, probe_budget=500).ok
        ident = has_oplus_identity(E, probe_budget=500)
        assert ident.holds and ident.detail["identity"] == Pair(Fraction(0), Fraction(0))

    def test_table_exhaustive(self):
        report = validate_domain(table_domain(or_tables()))
        assert report.ok
        assert all(r.detail["mode"] == "exhaustive" for r in report.results)

    def test_noncommutative_table_reports_e2(self):
        t = or_tables(oplus=[["0", "0", "0"], ["0", "1", "1"], ["1", "0", "0"], ["1", "1", "1"]])
        r = validate_domain(table_domain(t))["E2"]
        assert not r.holds
        assert r.witness == {"x": "0", "y": "1"}
        assert r.confirm()

    def test_budget_exceeded_on_table(self):
        with pytest.raises(BudgetExceeded) as info:
            validate_domain(table_domain(or_tables()), probe_budget=4)
        assert info.value.required == 8

    def test_bounds_violation(self):
        t = or_tables(plausibility_order=[])
        r = validate_domain(table_domain(t))["order-P-bounds"]
        assert not r.holds and r.confirm()

    def test_e4_violation(self):
        t = or_tables(utility_order=[])
        r = validate_domain(table_domain(t))["E4"]
        assert r.witness == {"u1": "0", "u2": "1"}


class TestTableConstruction:
    def test_missing_entry(self):
        t = or_tables(oplus=[["0", "0", "0"], ["0", "1", "1"], ["1", "0", "1"]])
        with pytest.raises(TableError, match="missing entry"):
            table_domain(t)

    def test_not_closed(self):
        t = or_tables(otimes=[["b", "0", "0"], ["b", "1", "0"], ["t", "0", "0"], ["t", "1", "7"]])
        with pytest.raises(TableError, match="leaves the valuation carrier"):
            table_domain(t)

    def test_utility_must_embed(self):
        with pytest.raises(TableError):
            table_domain(or_tables(utility=["0", "1", "2"]))


class TestLaws:
    def test_standard_monotonic_and_identity(self):
        E = standard_domain()
        assert is_monotonic(E, probe_budget=300).holds
        ident = has_oplus_identity(E, probe_budget=300)
        assert ident.holds and ident.detail["identity"] == 0

    def test_pair_min_not_monotonic(self):
        E = pair_min_domain()
        x, y, z = Pair(Fraction(0), Fraction(10)), Pair(Fraction(1), Fraction(1)), Pair(Fraction(10), Fraction(0))
        r = is_monotonic(E, probe_set=[(x, y, z)])
        assert not r.holds and r.witness == {"x": x, "y": y, "z": z}
        assert r.confirm()

    def test_pair_min_compares_minimum(self):
        E = pair_min_domain()
        a, b = Pair(Fraction(1), Fraction(5)), Pair(Fraction(2), Fraction(2))
        assert E.v_le(a, b) and not E.v_le(b, a)

    def test_table_without_identity(self):
        const = [[x, y, "1"] for x in "01" for y in "01"]
        r = has_oplus_identity(table_domain(or_tables(oplus=const)))
        assert not r.holds and r.confirm()

    def test_distributivity(self):
        assert check_distributivity(pair_domain(), probe_budget=300).holds
        assert check_distributivity(standard_domain(), probe_budget=300).holds
        assert check_distributivity(table_domain(or_tables())).holds

    def test_distributivity_skips_sums_outside_u(self):
        V = ["0", "1", "2"]
        sat = [[x, y, str(min(int(x) + int(y), 2))] for x in V for y in V]
        otimes = [["b", u, "0"] for u in "01"] + [["t", u, u] for u in "01"]
        E = table_domain(or_tables(valuation=V, oplus=sat, otimes=otimes,
                                   valuation_order=[["0", "1"], ["1", "2"], ["0", "2"]]))
        r = check_distributivity(E)
        assert r.holds and r.vacuous == 2


class TestFold:
    def test_singleton(self):
        assert fold_sum(standard_domain(), [Fraction(3)]) == 3

    def test_rationals(self):
        assert fold_sum(standard_domain(), [Fraction(3, 10), Fraction(7, 10)]) == 1

    def test_pairsets(self):
        sit = DecisionSituation(("s1", "s2"), ("c1", "c2"), {"a": ("c1", "c2")})
        E = canonical_domain(sit)
        assert fold_sum(E, [frozenset({("s1", "c1")}), frozenset({("s2", "c2")})]) == \
            frozenset({("s1", "c1"), ("s2", "c2")})

    def test_empty(self):
        assert fold_sum(standard_domain(), []) == 0
        with pytest.raises(GEUError):
            fold_sum(table_domain(or_tables()), [])

    @given(st.lists(rationals, min_size=1, max_size=6), st.randoms())
    def test_order_free_standard(self, xs, rnd):
        ys = list(xs)
        rnd.shuffle(ys)
        assert fold_sum(standard_domain(), xs) == fold_sum(standard_domain(), ys)


class TestBuiltinLaws:
    @given(pairs, pairs, pairs)
    def test_pair_associative(self, x, y, z):
        E = pair_domain()
        assert E.oplus(E.oplus(x, y), z) == E.oplus(x, E.oplus(y, z))

    @given(pairs, pairs)
    def test_pair_commutative(self, x, y):
        E = pair_domain()
        assert E.oplus(x, y) == E.oplus(y, x)

    @given(rationals, rationals)
    def test_embedding_faithful(self, u, v):
        for E in (pair_domain(), pair_min_domain()):
            assert E.u_le(u, v) == E.v_le(E.embed(u), E.embed(v))

    @given(pairs, pairs, pairs)
    def test_pair_monotonic(self, x, y, z):
        E = pair_domain()
        if E.v_le(x, y):
            assert E.v_le(E.oplus(x, z), E.oplus(y, z))

    @given(pairs, rationals)
    def test_pair_variants_share_operations(self, p, u):
        a, b = pair_domain(), pair_min_domain()
        assert a.otimes(p, u) == b.otimes(p, u)
        assert a.oplus(p, a.embed(u)) == b.oplus(p, b.embed(u))


class TestCanonicalDomain:
    def setup_method(self):
        self.sit = DecisionSituation(("s1",), ("c1",), {"a": ("c1",)})

    def test_top_times_c(self):
        E = canonical_domain(self.sit)
        assert E.otimes(E.top, "c1") == frozenset({("s1", "c1")})

    def test_identity_is_empty(self):
        r = has_oplus_identity(canonical_domain(self.sit))
        assert r.holds and r.detail["identity"] == frozenset()

    def test_exhaustive_validation(self):
        sit = DecisionSituation(("s1", "s2"), ("c1", "c2"),
                                {"x": ("c1", "c1"), "y": ("c1", "c2"), "z": ("c2", "c2")})
        pref = Relation(sit.names, frozenset({("x", "y"), ("y", "z")}))
        report = validate_domain(canonical_domain(sit, pref))
        assert report.ok
        assert report["E1"].detail["mode"] == "exhaustive"

    def test_not_monotonic_without_extension(self):
        # a < b but adding a pair set outside both acts breaks the relation
        sit = DecisionSituation(("s1", "s2"), ("c1", "c2"), {"a": ("c1", "c1"), "b": ("c2", "c2")})
        pref = Relation(sit.names, frozenset({("a", "b")}))
        E = canonical_domain(sit, pref)
        values = E.valuation_carrier()
        r = is_monotonic(E, probe_set=[(x, y, z) for x in values for y in values for z in values])
        assert not r.holds and r.confirm()
        assert r.witness["x"] == sit.graph("a") and r.witness["y"] == sit.graph("b")
        assert is_monotonic(canonical_domain(sit, pref, monotonic=True)).holds


class TestTaggedDomain:
    def setup_method(self):
        self.sit = DecisionSituation(("s1", "s2"), ("c1", "c2"), {"a": ("c1", "c1"), "b": ("c2", "c2")})
        self.E = tagged_domain(self.sit)
        self.key = self.E.key

    def test_bottom_gives_identity(self):
        rid = REGISTRY.intern(self.key, [("a", "b")])
        u = TaggedConsequence("c1", frozenset({rid}))
        assert self.E.otimes(frozenset(), u) == Tagged(frozenset(), frozenset())
        x = Tagged(frozenset({("s1", "c2")}), frozenset({rid}))
        assert self.E.oplus(self.E.otimes(frozenset(), u), x) == x

    def test_validates(self):
        REGISTRY.intern(self.key, [("a", "b")])
        REGISTRY.intern(self.key, [("b", "a")])
        assert validate_domain(self.E, probe_budget=400).ok
        assert has_oplus_identity(self.E, probe_budget=400).holds
        assert is_monotonic(self.E, probe_budget=400).holds

    def test_different_tags_unrelated(self):
        r1 = REGISTRY.intern(self.key, [("a", "b")])
        r2 = REGISTRY.intern(self.key, [("b", "a")])
        u1 = TaggedConsequence("c1", frozenset({r1}))
        u2 = TaggedConsequence("c2", frozenset({r2}))
        assert not self.E.u_le(u1, u2) and not self.E.u_le(u2, u1)
        assert self.E.u_le(u1, TaggedConsequence("c2", frozenset({r1})))

    def test_interning_is_idempotent(self):
        assert REGISTRY.intern(self.key, [("a", "b")]) == REGISTRY.intern(self.key, {("a", "b")})

    def test_equal_situations_equal_domains(self):
        assert TaggedDomain(self.sit.states, self.sit.consequences, self.sit.acts) == self.E
