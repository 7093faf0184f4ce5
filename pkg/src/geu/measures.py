"""Plausibility measures on the events of a finite state space."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .algebra import UNIT_INTERVAL, UNIT_SQUARE, PlausibilityOrder, subset_order
from .combinatorics import subsets
from .errors import ValidationError
from .results import ValidationReport, failed, passed
from .values import Pair, rational, render, sorted_ids

MATERIALIZE_LIMIT = 2 ** 16


class ProbabilityWeights:
    """Exact per-state probabilities; nonnegative and summing to exactly 1."""

    __slots__ = ("states", "weights")

    def __init__(self, weights: Mapping[str, Any], states: Sequence[str] | None = None):
        states = tuple(states) if states is not None else tuple(weights)
        unknown = [s for s in weights if s not in states]
        missing = [s for s in states if s not in weights]
        problems = []
        if unknown:
            problems.append(f"weights for unknown states {unknown}")
        if missing:
            problems.append(f"no weight for states {missing}")
        if problems:
            raise ValidationError("invalid probability weights", problems)
        ws = tuple(rational(weights[s]) for s in states)
        negative = [s for s, w in zip(states, ws) if w < 0]
        if negative:
            problems.append(f"negative weight for {negative}")
        total = sum(ws, Fraction(0))
        if total != 1:
            problems.append(f"weights sum to {render(total)}, not 1")
        if problems:
            raise ValidationError("invalid probability weights", problems)
        self.states = states
        self.weights = ws

    def __getitem__(self, state: str) -> Fraction:
        return self.weights[self.states.index(state)]

    def prob(self, event: Iterable[str]) -> Fraction:
        event = set(event)
        return sum((w for s, w in zip(self.states, self.weights) if s in event), Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.states, self.weights))

    def __eq__(self, other):
        return isinstance(other, ProbabilityWeights) and (self.states, self.weights) == (other.states, other.weights)

    def __hash__(self):
        return hash((self.states, self.weights))

    def __repr__(self):
        return "ProbabilityWeights({" + ", ".join(f"{s}: {render(w)}" for s, w in zip(self.states, self.weights)) + "})"


class PlausibilityMeasure:
    """A total map from events to plausibility values.

    Values are computed by ``rule`` and materialized eagerly when there are at
    most ``MATERIALIZE_LIMIT`` events.  Two measures are equal when they have
    the same states, kind and defining parameters.
    """

    def __init__(self, states: Sequence[str], kind: str, rule: Callable[[frozenset], Any],
                 order: PlausibilityOrder, params: Any = None):
        self.states = tuple(states)
        self.kind = kind
        self.order = order
        self.params = params
        self._rule = rule
        self._full = frozenset(self.states)
        self._table = None
        if 2 ** len(self.states) <= MATERIALIZE_LIMIT:
            self._table = {x: rule(x) for x in subsets(self.states)}

    def __call__(self, event: Iterable[str]):
        x = event if isinstance(event, frozenset) else frozenset(event)
        if self._table is not None:
            try:
                return self._table[x]
            except KeyError:
                pass
        if not x <= self._full:
            raise ValueError(f"event has unknown states: {sorted(x - self._full)}")
        return self._rule(x)

    def items(self):
        """(event, value) pairs in canonical event order."""
        for x in subsets(self.states):
            yield x, self(x)

    @property
    def bottom(self):
        return self.order.bottom

    @property
    def top(self):
        return self.order.top

    def __eq__(self, other):
        return (isinstance(other, PlausibilityMeasure)
                and (self.states, self.kind, self.params) == (other.states, other.kind, other.params))

    def __hash__(self):
        return hash((self.states, self.kind, self.params))

    def __repr__(self):
        return f"PlausibilityMeasure({self.kind}, states={list(self.states)})"


def validate_measure(pl: PlausibilityMeasure, domain=None) -> ValidationReport:
    """Check Pl1 (empty set is bottom), Pl2 (S is top) and Pl3 (monotone in inclusion).

    When ``domain`` is given, every value must also belong to its
    plausibility carrier (reported as ``range``).
    """
    order = pl.order if domain is None else domain.plausibility
    report = ValidationReport(f"measure:{pl.kind}")
    empty, full = frozenset(), frozenset(pl.states)
    events = list(subsets(pl.states))

    if domain is not None:
        bad = next((x for x in events if not order.contains(pl(x))), None)
        if bad is None:
            report.results.append(passed("range"))
        else:
            report.results.append(failed("range", {"X": bad}, lambda w: order.contains(pl(w["X"]))))

    check = lambda w: pl(empty) == order.bottom
    report.results.append(passed("Pl1") if check(None)
                          else failed("Pl1", {"X": empty, "value": pl(empty)}, check))
    check = lambda w: pl(full) == order.top
    report.results.append(passed("Pl2") if check(None)
                          else failed("Pl2", {"X": full, "value": pl(full)}, check))

    def mono(w):
        return not w["X"] <= w["Y"] or order.le(pl(w["X"]), pl(w["Y"]))

    for x in events:
        for y in events:
            if x <= y and not order.le(pl(x), pl(y)):
                report.results.append(failed("Pl3", {"X": x, "Y": y}, mono))
                return report
    report.results.append(passed("Pl3"))
    return report


def probability_measure(w: ProbabilityWeights | Mapping[str, Any],
                        states: Sequence[str] | None = None) -> PlausibilityMeasure:
    if not isinstance(w, ProbabilityWeights):
        w = ProbabilityWeights(w, states)
    return PlausibilityMeasure(w.states, "probability", w.prob, UNIT_INTERVAL, w)


def pair_measure(w1, w2, states: Sequence[str] | None = None) -> PlausibilityMeasure:
    """Events valued by a pair of probability measures, compared componentwise."""
    if not isinstance(w1, ProbabilityWeights):
        w1 = ProbabilityWeights(w1, states)
    if not isinstance(w2, ProbabilityWeights):
        w2 = ProbabilityWeights(w2, states if states is not None else w1.states)
    if set(w1.states) != set(w2.states):
        raise ValidationError("pair measure over mismatched state sets",
                              [f"{list(w1.states)} vs {list(w2.states)}"])
    if w2.states != w1.states:
        w2 = ProbabilityWeights(w2.as_dict(), w1.states)
    return PlausibilityMeasure(w1.states, "pair", lambda x: Pair(w1.prob(x), w2.prob(x)),
                               UNIT_SQUARE, (w1, w2))


def identity_measure(situation_or_states) -> PlausibilityMeasure:
    """Each event is its own plausibility, ordered by inclusion."""
    states = tuple(getattr(situation_or_states, "states", situation_or_states))
    return PlausibilityMeasure(states, "identity", lambda x: x, subset_order(states))


def _default_order(values: list, states) -> PlausibilityOrder:
    if all(isinstance(v, Fraction) for v in values):
        return UNIT_INTERVAL
    if all(isinstance(v, Pair) for v in values):
        return UNIT_SQUARE
    if all(isinstance(v, frozenset) for v in values):
        return subset_order(states)
    raise ValidationError("cannot infer a plausibility order for these values; pass one explicitly")


def table_measure(states: Sequence[str], entries: Iterable[tuple[Iterable[str], Any]],
                  order: PlausibilityOrder | None = None) -> PlausibilityMeasure:
    """An explicitly tabulated measure.  Laws are checked by :func:`validate_measure`."""
    states = tuple(states)
    full = frozenset(states)
    table: dict[frozenset, Any] = {}
    problems = []
    for event, value in entries:
        x = frozenset(event)
        label = "{" + ",".join(sorted_ids(x, states)) + "}"
        if not x <= full:
            problems.append(f"entry {label} mentions unknown states")
        elif x in table:
            problems.append(f"duplicate entry for {label}")
        else:
            table[x] = value
    missing = [x for x in subsets(states) if x not in table]
    problems += ["missing entry for {" + ",".join(sorted_ids(x, states)) + "}" for x in missing]
    if problems:
        raise ValidationError("invalid plausibility table", problems)
    if order is None:
        order = _default_order(list(table.values()), states)
    params = tuple((tuple(sorted_ids(x, states)), table[x]) for x in subsets(states))
    return PlausibilityMeasure(states, "table", table.__getitem__, order, params)
