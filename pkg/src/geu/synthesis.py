"""Constructing GEU representations of arbitrary preference relations.

Three constructions are provided:

* :func:`canonical_representation` -- every act is its own expected utility
  and only related acts have related values;
* :func:`monotonic_representation` -- the same, with the valuation order
  closed under adding a common pair set to both sides;
* :func:`fixed_domain` / :func:`utility_for` -- one expectation domain and
  measure per situation, with the preference carried by the utility.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .algebra import CanonicalDomain, Relation, TaggedDomain
from .combinatorics import subsets
from .decision import DecisionProblem, DecisionSituation, induced_preference
from .errors import DuplicateActError, PreconditionError, ValidationError
from .measures import PlausibilityMeasure, identity_measure
from .results import CheckResult, failed, passed
from .values import TaggedConsequence

CONSTRUCTIONS = ("thm1", "corollary", "fixed-domain")


@dataclass(frozen=True)
class SynthesizedProblem:
    problem: DecisionProblem
    construction: str
    preference: Relation
    pref_id: str | None = None


def _check_preference(acts, pref: Relation) -> None:
    all_names = [n for n, _ in acts]
    if set(pref.carrier) != set(all_names):
        raise ValidationError("preference carrier differs from the act set",
                              [f"carrier {sorted(pref.carrier)}", f"acts {sorted(all_names)}"])
    # acts with the same graph get the same value, so they must be related alike
    groups: dict[tuple, list[str]] = {}
    for name, outs in acts:
        groups.setdefault(outs, []).append(name)
    for names in groups.values():
        first = names[0]
        for other in names[1:]:
            for b in all_names:
                if pref(first, b) != pref(other, b) or pref(b, first) != pref(b, other):
                    raise DuplicateActError(
                        f"acts {first} and {other} are the same function but are related "
                        f"differently to {b}; no GEU representation exists")


def _canonical(situation, pref, monotonic, construction) -> SynthesizedProblem:
    _check_preference(situation.acts, pref)
    domain = CanonicalDomain(situation.states, situation.consequences, situation.acts,
                             pref.pairs, monotonic=monotonic)
    problem = DecisionProblem(situation, domain, {c: c for c in situation.consequences},
                              identity_measure(situation))
    return SynthesizedProblem(problem, construction, pref)


def canonical_representation(situation: DecisionSituation, pref: Relation) -> SynthesizedProblem:
    """Acts valued as their own graphs; values related only when both are related acts."""
    return _canonical(situation, pref, False, "thm1")


def monotonic_representation(situation: DecisionSituation, pref: Relation) -> SynthesizedProblem:
    """Like :func:`canonical_representation`, with ``a | z <= b | z`` added for each related ``a <= b``."""
    return _canonical(situation, pref, True, "corollary")


def fixed_domain(situation: DecisionSituation) -> tuple[TaggedDomain, PlausibilityMeasure]:
    """The expectation domain and measure shared by every preference on ``situation``."""
    return TaggedDomain(situation.states, situation.consequences, situation.acts), identity_measure(situation)


def utility_for(fixed: tuple[TaggedDomain, PlausibilityMeasure], pref: Relation) -> dict[str, TaggedConsequence]:
    """Intern ``pref`` and tag every consequence with its id."""
    domain, _ = fixed
    _check_preference(domain.index.acts, pref)
    tags = frozenset([domain.registry.intern(domain.key, pref.pairs)])
    return {c: TaggedConsequence(c, tags) for c in domain.index.consequences}


def fixed_representation(situation: DecisionSituation, pref: Relation,
                         fixed: tuple[TaggedDomain, PlausibilityMeasure] | None = None) -> SynthesizedProblem:
    """Assemble the decision problem for ``pref`` over the shared fixed domain."""
    domain, pl = fixed if fixed is not None else fixed_domain(situation)
    utility = utility_for((domain, pl), pref)
    rid = next(iter(next(iter(utility.values())).tags))
    return SynthesizedProblem(DecisionProblem(situation, domain, utility, pl), "fixed-domain", pref, rid)


def synthesize(situation: DecisionSituation, pref: Relation, construction: str) -> SynthesizedProblem:
    if construction in ("thm1", "canonical"):
        return canonical_representation(situation, pref)
    if construction in ("corollary", "monotonic"):
        return monotonic_representation(situation, pref)
    if construction in ("fixed", "fixed-domain"):
        return fixed_representation(situation, pref)
    raise ValueError(f"unknown construction {construction!r}")


def _side_expressions(states, consequences, k: int) -> Iterator[tuple[tuple[frozenset, str], ...]]:
    """Sums of at most k terms Pl(X) otimes u(c) over disjoint nonempty cells and distinct c."""
    terms = [(x, c) for x in subsets(states) if x for c in consequences]
    for n in range(1, k + 1):
        for combo in combinations(terms, n):
            cells = [x for x, _ in combo]
            cs = [c for _, c in combo]
            if len(set(cs)) < n:
                continue
            if sum(len(x) for x in cells) != len(frozenset().union(*cells)):
                continue
            yield combo


def _evaluate(D: DecisionProblem, expr) -> object:
    E, pl = D.domain, D.plausibility
    out = None
    for x, c in expr:
        term = E.otimes(pl(x), D.utility[c])
        out = term if out is None else E.oplus(out, term)
    return out


def minimality_check(canon: SynthesizedProblem, other: DecisionProblem, k: int = 3) -> CheckResult:
    """Whatever the canonical representation relates, ``other`` relates too.

    Checked for plausibilities of events, utilities of consequences, and
    mixed sums of at most ``k`` terms per side.  Terms on one side use
    pairwise disjoint cells and distinct consequences.
    """
    D = canon.problem
    sit = D.situation
    if other.situation != sit:
        raise PreconditionError("other problem is over a different situation")
    if induced_preference(other).pairs != canon.preference.pairs:
        raise PreconditionError("other problem is not a representation of the preference")
    E0, pl0 = other.domain, other.plausibility
    E, pl = D.domain, D.plausibility

    def pl_holds(w):
        return not E.p_le(pl(w["X"]), pl(w["Y"])) or E0.p_le(pl0(w["X"]), pl0(w["Y"]))

    events = subsets(sit.states)
    for x in events:
        for y in events:
            w = {"part": "plausibility", "X": x, "Y": y}
            if not pl_holds(w):
                return failed("minimality", w, pl_holds, k=k)

    def u_holds(w):
        return not E.u_le(D.utility[w["c"]], D.utility[w["d"]]) \
            or E0.u_le(other.utility[w["c"]], other.utility[w["d"]])

    for c in sit.consequences:
        for d in sit.consequences:
            w = {"part": "utility", "c": c, "d": d}
            if not u_holds(w):
                return failed("minimality", w, u_holds, k=k)

    def expr_holds(w):
        return not E.v_le(_evaluate(D, w["lhs"]), _evaluate(D, w["rhs"])) \
            or E0.v_le(_evaluate(other, w["lhs"]), _evaluate(other, w["rhs"]))

    exprs = list(_side_expressions(sit.states, sit.consequences, k))
    canon_vals = [_evaluate(D, e) for e in exprs]
    other_vals = [_evaluate(other, e) for e in exprs]
    checked = 0
    for i, lhs in enumerate(exprs):
        for j, rhs in enumerate(exprs):
            if E.v_le(canon_vals[i], canon_vals[j]):
                checked += 1
                if not E0.v_le(other_vals[i], other_vals[j]):
                    w = {"part": "expression", "lhs": lhs, "rhs": rhs}
                    return failed("minimality", w, expr_holds, k=k)
    return passed("minimality", k=k, expressions=len(exprs), related=checked)
