"""Decision situations, decision problems and generalized expected utility.

Acts are total maps from states to consequences.  Internally an act is the
tuple of its outcomes in state declaration order, so ``("c1", "c2")`` over
states ``(s1, s2)`` sends s1 to c1 and s2 to c2.  Public functions accept
either an act name from the situation or such a tuple.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Mapping, Sequence

from .algebra import ExpectationDomain, Relation, TableDomain, fold_sum, validate_domain
from .combinatorics import all_functions, subsets
from .errors import DuplicateActError, GEUError, ValidationError
from .measures import PlausibilityMeasure, validate_measure
from .results import CheckResult, failed, passed

DEFAULT_ACT_BUDGET = 4096

Act = tuple


def simple_act_name(outcomes: Sequence[str]) -> str:
    return "[" + ",".join(outcomes) + "]"


class DecisionSituation:
    """States, consequences and a named set of acts.

    ``acts`` maps names to outcomes, each given either as a sequence aligned
    with ``states`` or as a ``{state: consequence}`` mapping.  Extensionally
    equal acts under different names are rejected unless
    ``allow_duplicates`` is set.
    """

    def __init__(self, states: Sequence[str], consequences: Sequence[str],
                 acts: Mapping[str, Any] | Iterable[tuple[str, Any]],
                 allow_duplicates: bool = False):
        self.states = tuple(states)
        self.consequences = tuple(consequences)
        self.allow_duplicates = allow_duplicates
        problems = []
        if not self.states:
            problems.append("no states")
        if not self.consequences:
            problems.append("no consequences")
        if len(set(self.states)) != len(self.states):
            problems.append("duplicate state ids")
        if len(set(self.consequences)) != len(self.consequences):
            problems.append("duplicate consequence ids")
        items = list(acts.items()) if isinstance(acts, Mapping) else list(acts)
        if not items:
            problems.append("no acts")
        normalized = []
        cset = set(self.consequences)
        for name, outs in items:
            if isinstance(outs, Mapping):
                stray = [s for s in outs if s not in self.states]
                if stray:
                    problems.append(f"act {name} mentions unknown states {stray}")
                missing = [s for s in self.states if s not in outs]
                if missing:
                    problems.append(f"act {name} is not total: no outcome for {missing}")
                    continue
                outs = tuple(outs[s] for s in self.states)
            outs = tuple(outs)
            if len(outs) != len(self.states):
                problems.append(f"act {name} has {len(outs)} outcomes for {len(self.states)} states")
                continue
            bad = [c for c in outs if c not in cset]
            if bad:
                problems.append(f"act {name} maps to unknown consequences {bad}")
                continue
            normalized.append((name, outs))
        names = [n for n, _ in normalized]
        if len(set(names)) != len(names):
            problems.append("duplicate act names")
        if problems:
            raise ValidationError("invalid decision situation", problems)
        self.acts = tuple(normalized)
        self._by_name = dict(self.acts)
        self._names_of: dict[tuple, list[str]] = {}
        for n, o in self.acts:
            self._names_of.setdefault(o, []).append(n)
        dups = {o: ns for o, ns in self._names_of.items() if len(ns) > 1}
        if dups and not allow_duplicates:
            raise DuplicateActError("extensionally equal acts: " + "; ".join(
                " = ".join(ns) for ns in dups.values()))
        self._state_pos = {s: i for i, s in enumerate(self.states)}

    @classmethod
    def all_simple_acts(cls, states, consequences, budget: int = DEFAULT_ACT_BUDGET):
        """The situation whose act set is C^S, with acts named like ``[c1,c2]``."""
        acts = [(simple_act_name(o), o) for o in all_functions(len(states), tuple(consequences), budget)]
        return cls(states, consequences, acts)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.acts)

    @property
    def outcomes(self) -> tuple[tuple, ...]:
        return tuple(o for _, o in self.acts)

    def act(self, a) -> Act:
        """Resolve an act name (or validate an outcome tuple)."""
        if isinstance(a, str):
            try:
                return self._by_name[a]
            except KeyError:
                raise GEUError(f"unknown act {a!r}") from None
        a = tuple(a)
        if len(a) != len(self.states) or any(c not in self.consequences for c in a):
            raise GEUError(f"not an act over this situation: {a!r}")
        return a

    def contains(self, a) -> bool:
        return tuple(a) in self._names_of

    def name_of(self, a) -> str | None:
        ns = self._names_of.get(tuple(a))
        return ns[0] if ns else None

    def constant(self, c: str) -> Act:
        return (c,) * len(self.states)

    def graph(self, a) -> frozenset:
        return frozenset(zip(self.states, self.act(a)))

    def event(self, states: Iterable[str]) -> frozenset:
        x = frozenset(states)
        stray = x - set(self.states)
        if stray:
            raise GEUError(f"unknown states {sorted(stray)}")
        return x

    def splice(self, a1, X: Iterable[str], a2) -> Act:
        x = self.event(X)
        o1, o2 = self.act(a1), self.act(a2)
        return tuple(c1 if s in x else c2 for s, c1, c2 in zip(self.states, o1, o2))

    def is_complete(self) -> bool:
        """Is the act set all of C^S?"""
        return len(self._names_of) == len(self.consequences) ** len(self.states)

    def key(self) -> tuple:
        return (self.states, self.consequences, self.acts)

    def __eq__(self, other):
        return isinstance(other, DecisionSituation) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DecisionSituation(states={list(self.states)}, consequences={list(self.consequences)}, acts={len(self.acts)})"


def preference(situation: DecisionSituation, pairs: Iterable[tuple[str, str]]) -> Relation:
    """A reflexive relation on the act names of ``situation``."""
    return Relation(situation.names, frozenset(map(tuple, pairs)))


class DecisionProblem:
    """A situation together with an expectation domain, a utility and a plausibility measure.

    Construction validates the utility and the measure, and for table
    domains the domain laws as well.
    """

    def __init__(self, situation: DecisionSituation, domain: ExpectationDomain,
                 utility: Mapping[str, Any], plausibility: PlausibilityMeasure,
                 probe_budget: int = 10_000):
        self.situation = situation
        self.domain = domain
        self.utility = dict(utility)
        self.plausibility = plausibility
        problems = []
        missing = [c for c in situation.consequences if c not in self.utility]
        if missing:
            problems.append(f"no utility for consequences {missing}")
        extra = [c for c in self.utility if c not in situation.consequences]
        if extra:
            problems.append(f"utility for unknown consequences {extra}")
        bad = [c for c in situation.consequences if c in self.utility and not domain.is_utility(self.utility[c])]
        if bad:
            problems.append(f"utility of {bad} outside the utility domain")
        if tuple(plausibility.states) != situation.states:
            problems.append("plausibility measure is over different states")
        if problems:
            raise ValidationError("invalid decision problem", problems)
        if isinstance(domain, TableDomain):
            report = validate_domain(domain, probe_budget)
            if not report.ok:
                raise ValidationError(f"domain {domain.name} violates its laws", report.describe())
        report = validate_measure(plausibility, domain)
        if not report.ok:
            raise ValidationError("plausibility measure is invalid", report.describe())
        self._geu_cache: dict = {}

    @property
    def states(self):
        return self.situation.states

    def u_act(self, a) -> tuple:
        """The utility random variable of ``a``: one U-value per state."""
        return tuple(self.utility[c] for c in self.situation.act(a))

    def __eq__(self, other):
        return (isinstance(other, DecisionProblem) and self.situation == other.situation
                and self.domain == other.domain and self.utility == other.utility
                and self.plausibility == other.plausibility)

    __hash__ = None

    def __repr__(self):
        return f"DecisionProblem({self.situation!r}, {self.domain!r}, {self.plausibility!r})"


def _preimages(D: DecisionProblem, a, Z: frozenset | None = None) -> list[tuple[Any, frozenset]]:
    """(utility value, preimage within Z) in order of first appearance by state."""
    cells: dict[Any, set] = {}
    for s, u in zip(D.states, D.u_act(a)):
        if Z is None or s in Z:
            cells.setdefault(u, set()).add(s)
    return [(u, frozenset(x)) for u, x in cells.items()]


def geu(D: DecisionProblem, a):
    """Generalized expected utility: the oplus-sum of Pl(u_a^-1(x)) otimes x over x in ran(u_a)."""
    key = D.situation.act(a)
    cached = D._geu_cache.get(key)
    if cached is None:
        E, pl = D.domain, D.plausibility
        cached = fold_sum(E, [E.otimes(pl(x), u) for u, x in _preimages(D, key)])
        D._geu_cache[key] = cached
    return cached


def geu_restricted(D: DecisionProblem, a, Z: Iterable[str]):
    """GEU of ``a`` restricted to the nonempty event ``Z``."""
    z = D.situation.event(Z)
    if not z:
        raise GEUError("restricted GEU needs a nonempty event")
    if len(z) == len(D.states):
        return geu(D, a)
    E, pl = D.domain, D.plausibility
    return fold_sum(E, [E.otimes(pl(x), u) for u, x in _preimages(D, a, z)])


def geu_statewise(D: DecisionProblem, a):
    """The state-by-state analogue: oplus over s of Pl({s}) otimes u_a(s)."""
    E, pl = D.domain, D.plausibility
    return fold_sum(E, [E.otimes(pl(frozenset([s])), u) for s, u in zip(D.states, D.u_act(a))])


def is_additive(D: DecisionProblem) -> CheckResult:
    """Pl(X u Y) otimes u(c) == (Pl(X) otimes u(c)) + (Pl(Y) otimes u(c)) for disjoint nonempty X, Y."""
    E, pl = D.domain, D.plausibility

    def holds(w):
        u = D.utility[w["c"]]
        return E.otimes(pl(w["X"] | w["Y"]), u) == E.oplus(E.otimes(pl(w["X"]), u), E.otimes(pl(w["Y"]), u))

    events = [x for x in subsets(D.states) if x]
    for c in D.situation.consequences:
        for x in events:
            for y in events:
                if x & y:
                    continue
                w = {"c": c, "X": x, "Y": y}
                if not holds(w):
                    return failed("additive", w, holds)
    return passed("additive")


def induced_preference(D: DecisionProblem) -> Relation:
    """a1 <= a2 iff GEU(a1) <=_V GEU(a2), over the act names of the situation."""
    sit, E = D.situation, D.domain
    values = {n: geu(D, o) for n, o in sit.acts}
    pairs = frozenset((n1, n2) for n1 in sit.names for n2 in sit.names
                      if E.v_le(values[n1], values[n2]))
    return Relation(sit.names, pairs)


def enumerate_simple_acts(situation: DecisionSituation, budget: int = DEFAULT_ACT_BUDGET) -> Iterator[Act]:
    """Every act in C^S; lexicographic in declaration order, so the first is constant."""
    return all_functions(len(situation.states), situation.consequences, budget)


def ev_set(D: DecisionProblem, X: Iterable[str]) -> tuple:
    """Distinct restricted GEU values over the acts of A, in act order."""
    x = D.situation.event(X)
    return tuple(dict.fromkeys(geu_restricted(D, o, x) for o in D.situation.outcomes))


def is_whole(D: DecisionProblem, budget: int = DEFAULT_ACT_BUDGET) -> CheckResult:
    """Every simple act whose GEU lies in E(S) belongs to A."""
    attained = set(ev_set(D, D.states))
    sit = D.situation

    def holds(w):
        return sit.contains(w["act"]) or geu(D, w["act"]) not in attained

    for a in enumerate_simple_acts(sit, budget):
        if not sit.contains(a) and geu(D, a) in attained:
            return failed("whole", {"act": a}, holds)
    return passed("whole")


def splice(situation: DecisionSituation, a1, X: Iterable[str], a2) -> Act:
    """The act agreeing with ``a1`` on ``X`` and with ``a2`` elsewhere."""
    return situation.splice(a1, X, a2)


def ulotto(D: DecisionProblem, u, X: Iterable[str], v):
    """GEU of a two-valued act: u on X and v off X (embedded directly at the extremes)."""
    x = D.situation.event(X)
    E, pl = D.domain, D.plausibility
    if len(x) == len(D.states):
        return E.embed(u)
    if not x:
        return E.embed(v)
    rest = frozenset(D.states) - x
    return E.oplus(E.otimes(pl(x), u), E.otimes(pl(rest), v))
