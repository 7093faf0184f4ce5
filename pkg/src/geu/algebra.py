"""Expectation domains: carriers, orders, the operators, and their laws.

An expectation domain bundles a utility domain ``U`` (reflexive order), a
plausibility domain ``P`` (bounded partial order), a valuation domain ``V``
(reflexive order) and two operators::

    oplus  : V x V -> V        (the analogue of +)
    otimes : P x U -> V        (the analogue of x)

subject to associativity and commutativity of ``oplus`` (E1, E2), ``top``
being a left identity of ``otimes`` (E3) and ``U`` embedding
order-faithfully into ``V`` (E4).

Built-ins over infinite carriers (rationals and rational pairs) are
*certified*: their laws hold analytically and :func:`validate_domain` only
samples them.  Table domains and the canonical constructions have finite
carriers and are checked exhaustively whenever the probe budget allows.
"""

from __future__ import annotations

import hashlib
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Any, Callable, Iterable, Sequence

from .combinatorics import subsets
from .errors import BudgetExceeded, GEUError, TableError, ValidationError
from .results import CheckResult, ValidationReport, failed, passed
from .values import Pair, Tagged, TaggedConsequence

DEFAULT_PROBE_BUDGET = 10_000

# Certification flags carried by built-in domains.
LAWS = ("E1", "E2", "E3", "E4", "order")
MONOTONIC = "monotonic"
IDENTITY = "identity"
DISTRIBUTIVE = "distributive"


@dataclass(frozen=True)
class Relation:
    """A finite binary relation, closed under reflexivity on its carrier.

    ``kind`` is ``"reflexive"``, ``"partial-order"`` (antisymmetry and
    transitivity are validated) or ``"total-preorder-claimed"`` (recorded
    only; use :meth:`is_total_preorder` to check the claim).
    """

    carrier: tuple
    pairs: frozenset
    kind: str = "reflexive"

    def __post_init__(self):
        carrier = tuple(dict.fromkeys(self.carrier))
        members = set(carrier)
        stray = [p for p in self.pairs if p[0] not in members or p[1] not in members]
        if stray:
            raise ValidationError("relation pairs outside the carrier", [repr(p) for p in sorted(stray, key=repr)])
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "pairs", frozenset(self.pairs) | {(x, x) for x in carrier})
        if self.kind == "partial-order":
            problems = []
            if not self.is_antisymmetric():
                problems.append("not antisymmetric")
            if not self.is_transitive():
                problems.append("not transitive")
            if problems:
                raise ValidationError("relation is not a partial order", problems)
        elif self.kind not in ("reflexive", "total-preorder-claimed"):
            raise ValueError(f"unknown relation kind {self.kind!r}")

    def __call__(self, x, y) -> bool:
        return (x, y) in self.pairs

    le = __call__

    def lt(self, x, y) -> bool:
        return (x, y) in self.pairs and (y, x) not in self.pairs

    def strict_pairs(self) -> list[tuple]:
        return [(x, y) for x in self.carrier for y in self.carrier if self.lt(x, y)]

    def is_total(self) -> bool:
        return all(self(x, y) or self(y, x) for x in self.carrier for y in self.carrier)

    def is_antisymmetric(self) -> bool:
        return all(x == y or (y, x) not in self.pairs for x, y in self.pairs)

    def is_transitive(self) -> bool:
        succ: dict = {}
        for x, y in self.pairs:
            succ.setdefault(x, set()).add(y)
        return all(z in succ.get(x, ()) for x, y in self.pairs for z in succ.get(y, ()))

    def is_total_preorder(self) -> bool:
        return self.is_total() and self.is_transitive()

    def sorted_pairs(self) -> list[tuple]:
        pos = {x: i for i, x in enumerate(self.carrier)}
        return sorted(self.pairs, key=lambda p: (pos[p[0]], pos[p[1]]))


@dataclass(frozen=True)
class PlausibilityOrder:
    """A bounded partial order used as a plausibility domain."""

    name: str
    le: Callable[[Any, Any], bool] = field(compare=False)
    bottom: Any
    top: Any
    contains: Callable[[Any], bool] = field(compare=False)
    carrier: tuple | None = None
    sampler: Callable[[random.Random], Any] | None = field(default=None, compare=False)

    def lt(self, x, y) -> bool:
        return self.le(x, y) and not self.le(y, x)


def _rand_fraction(rng: random.Random, lo: int = -12, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 6))


def _rand_unit(rng: random.Random) -> Fraction:
    d = rng.randint(1, 8)
    return Fraction(rng.randint(0, d), d)


def _is_rational(x) -> bool:
    return isinstance(x, Fraction)


def _in_unit(x) -> bool:
    return isinstance(x, Fraction) and 0 <= x <= 1


UNIT_INTERVAL = PlausibilityOrder(
    "unit-interval", lambda x, y: x <= y, Fraction(0), Fraction(1), _in_unit, None, _rand_unit)

UNIT_SQUARE = PlausibilityOrder(
    "unit-square",
    lambda p, q: p.first <= q.first and p.second <= q.second,
    Pair(Fraction(0), Fraction(0)), Pair(Fraction(1), Fraction(1)),
    lambda p: isinstance(p, Pair) and _in_unit(p.first) and _in_unit(p.second),
    None,
    lambda rng: Pair(_rand_unit(rng), _rand_unit(rng)))


def subset_order(states: Sequence[str]) -> PlausibilityOrder:
    """Events of ``states`` ordered by inclusion; bottom is {} and top is S."""
    full = frozenset(states)
    return PlausibilityOrder(
        "subsets(" + ",".join(states) + ")",
        lambda x, y: x <= y,
        frozenset(), full,
        lambda x: isinstance(x, frozenset) and x <= full,
        tuple(subsets(states)),
        lambda rng: frozenset(s for s in states if rng.random() < 0.5))


class ExpectationDomain:
    """Base class; subclasses fill in the carriers and operators."""

    name = "abstract"
    certified: frozenset = frozenset()
    exhaustive_required = False  # table domains must be checked exhaustively
    plausibility: PlausibilityOrder

    # orders and operators
    def u_le(self, x, y) -> bool:
        raise NotImplementedError

    def v_le(self, x, y) -> bool:
        raise NotImplementedError

    def p_le(self, x, y) -> bool:
        return self.plausibility.le(x, y)

    def u_lt(self, x, y) -> bool:
        return self.u_le(x, y) and not self.u_le(y, x)

    def v_lt(self, x, y) -> bool:
        return self.v_le(x, y) and not self.v_le(y, x)

    def v_sim(self, x, y) -> bool:
        return self.v_le(x, y) and self.v_le(y, x)

    def oplus(self, x, y):
        raise NotImplementedError

    def otimes(self, p, u):
        raise NotImplementedError

    @property
    def bottom(self):
        return self.plausibility.bottom

    @property
    def top(self):
        return self.plausibility.top

    def embed(self, u):
        """The image of a utility value in V."""
        return u

    def utility_of(self, v):
        """Inverse of :meth:`embed`, or None when ``v`` is not the image of a utility."""
        return v if self.is_utility(v) else None

    # membership and carriers
    def is_utility(self, u) -> bool:
        raise NotImplementedError

    def is_valuation(self, v) -> bool:
        raise NotImplementedError

    def utility_carrier(self) -> tuple | None:
        return None

    def valuation_carrier(self) -> tuple | None:
        return None

    def identity(self):
        """The certified oplus identity, or None."""
        return None

    # sampling for certified infinite carriers
    def sample_utility(self, rng: random.Random):
        raise NotImplementedError

    def sample_valuation(self, rng: random.Random):
        raise NotImplementedError

    def sample_plausibility(self, rng: random.Random):
        return self.plausibility.sampler(rng)

    # structural identity
    def _key(self) -> tuple:
        return (self.name,)

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class StandardDomain(ExpectationDomain):
    """Rationals with +, x and <=; plausibilities in [0, 1]."""

    name = "standard"
    certified = frozenset(LAWS) | {MONOTONIC, IDENTITY, DISTRIBUTIVE}
    plausibility = UNIT_INTERVAL

    def u_le(self, x, y):
        return x <= y

    v_le = u_le

    def oplus(self, x, y):
        return x + y

    def otimes(self, p, u):
        return p * u

    def is_utility(self, u):
        return _is_rational(u)

    is_valuation = is_utility

    def identity(self):
        return Fraction(0)

    def sample_utility(self, rng):
        return _rand_fraction(rng)

    sample_valuation = sample_utility


class PairDomain(ExpectationDomain):
    """Rational utilities valued in pairs; ``otimes`` is pointwise scaling.

    With ``min_order=False`` pairs are compared componentwise.  With
    ``min_order=True`` they are compared by their smaller component, which
    makes the valuation order total (and breaks monotonicity).
    """

    plausibility = UNIT_SQUARE

    def __init__(self, min_order: bool = False):
        self.min_order = min_order
        self.name = "pair-min" if min_order else "pair"
        flags = set(LAWS) | {IDENTITY, DISTRIBUTIVE}
        if not min_order:
            flags.add(MONOTONIC)
        self.certified = frozenset(flags)

    def _key(self):
        return (self.name, self.min_order)

    def u_le(self, x, y):
        return x <= y

    def v_le(self, x, y):
        if self.min_order:
            return min(x) <= min(y)
        return x.first <= y.first and x.second <= y.second

    def oplus(self, x, y):
        return Pair(x.first + y.first, x.second + y.second)

    def otimes(self, p, u):
        return Pair(p.first * u, p.second * u)

    def embed(self, u):
        return Pair(u, u)

    def utility_of(self, v):
        return v.first if v.first == v.second else None

    def is_utility(self, u):
        return _is_rational(u)

    def is_valuation(self, v):
        return isinstance(v, Pair) and _is_rational(v.first) and _is_rational(v.second)

    def identity(self):
        return Pair(Fraction(0), Fraction(0))

    def sample_utility(self, rng):
        return _rand_fraction(rng)

    def sample_valuation(self, rng):
        return Pair(_rand_fraction(rng), _rand_fraction(rng))


class TableDomain(ExpectationDomain):
    """An explicit finite domain given by operation and order tables.

    Utility symbols must also be valuation symbols (the embedding is the
    identity).  Tables must be total and closed; otherwise construction
    raises :class:`TableError`.
    """

    exhaustive_required = True

    def __init__(self, utility, plausibility, valuation, bottom, top,
                 oplus, otimes, utility_order=(), plausibility_order=(), valuation_order=(),
                 name="table"):
        self.name = name
        self.U = tuple(dict.fromkeys(utility))
        self.P = tuple(dict.fromkeys(plausibility))
        self.V = tuple(dict.fromkeys(valuation))
        problems = []
        vset, pset = set(self.V), set(self.P)
        if not self.U or not self.P or not self.V:
            problems.append("carriers must be nonempty")
        missing_u = [u for u in self.U if u not in vset]
        if missing_u:
            problems.append(f"utility symbols not in valuation carrier: {missing_u}")
        for label, elem in (("bottom", bottom), ("top", top)):
            if elem not in pset:
                problems.append(f"{label} {elem!r} not in plausibility carrier")
        self._oplus = dict(((x, y), z) for (x, y), z in _table_items(oplus))
        self._otimes = dict(((p, u), v) for (p, u), v in _table_items(otimes))
        for x, y in product(self.V, repeat=2):
            z = self._oplus.get((x, y))
            if z is None:
                problems.append(f"oplus missing entry ({x}, {y})")
            elif z not in vset:
                problems.append(f"oplus({x}, {y}) = {z} leaves the valuation carrier")
        for p, u in product(self.P, self.U):
            v = self._otimes.get((p, u))
            if v is None:
                problems.append(f"otimes missing entry ({p}, {u})")
            elif v not in vset:
                problems.append(f"otimes({p}, {u}) = {v} leaves the valuation carrier")
        extra = [k for k in self._oplus if k[0] not in vset or k[1] not in vset]
        extra += [k for k in self._otimes if k[0] not in pset or k[1] not in set(self.U)]
        if extra:
            problems.append(f"table entries for unknown symbols: {sorted(map(repr, extra))}")
        try:
            self.u_order = Relation(self.U, frozenset(map(tuple, utility_order)))
            self.p_order = Relation(self.P, frozenset(map(tuple, plausibility_order)))
            self.v_order = Relation(self.V, frozenset(map(tuple, valuation_order)))
        except ValidationError as exc:
            problems.extend(exc.violations)
        if problems:
            raise TableError("inconsistent table domain", problems)
        self.plausibility = PlausibilityOrder(
            name + ":P", self.p_order, bottom, top, lambda p: p in pset, self.P)

    def _key(self):
        return (self.name, self.U, self.P, self.V, self.bottom, self.top,
                frozenset(self._oplus.items()), frozenset(self._otimes.items()),
                self.u_order.pairs, self.p_order.pairs, self.v_order.pairs)

    def u_le(self, x, y):
        return self.u_order(x, y)

    def v_le(self, x, y):
        return self.v_order(x, y)

    def oplus(self, x, y):
        return self._oplus[(x, y)]

    def otimes(self, p, u):
        return self._otimes[(p, u)]

    def is_utility(self, u):
        return u in self.U

    def is_valuation(self, v):
        return v in self.V

    def utility_carrier(self):
        return self.U

    def valuation_carrier(self):
        return self.V

    def identity(self):
        return None


def _table_items(table) -> Iterable:
    if isinstance(table, dict):
        return table.items()
    return (((row[0], row[1]), row[2]) for row in table)


def _graph(states: Sequence[str], outcomes: Sequence[str]) -> frozenset:
    return frozenset(zip(states, outcomes))


class _ActIndex:
    """Act graphs of a situation, indexed for the canonical orders."""

    def __init__(self, states, consequences, acts):
        self.states = tuple(states)
        self.consequences = tuple(consequences)
        self.acts = tuple((name, tuple(outs)) for name, outs in acts)
        self.names = tuple(name for name, _ in acts)
        self.graphs = tuple(_graph(self.states, outs) for _, outs in acts)
        self.by_graph = dict(zip(self.graphs, self.names))
        self.by_name = dict(zip(self.names, self.graphs))
        self.constant = {c: frozenset((s, c) for s in self.states) for c in self.consequences}


def _case2(x: frozenset, y: frozenset, a: frozenset, b: frozenset) -> bool:
    """Is there a z with x = a | z and y = b | z?

    Any such z contains (x - a) | (y - b) and lies inside x & y, so this
    candidate works whenever any z does.
    """
    if not (a <= x and b <= y):
        return False
    z = (x - a) | (y - b)
    return (a | z) == x and (b | z) == y


class CanonicalDomain(ExpectationDomain):
    """The representation domain built from a preference on a situation.

    Consequences are their own utilities, events their own plausibilities and
    pair sets the valuations, so every act is its own expected utility.
    ``oplus`` is union and ``X otimes c = X x {c}``.  Two valuations are
    related when equal or when both are acts related by the preference.  With
    ``monotonic=True`` the order is extended to ``a | z <= b | z`` for every
    related ``a <= b`` and every pair set ``z``.
    """

    certified = frozenset(LAWS) | {IDENTITY}

    def __init__(self, states, consequences, acts, pref_pairs=frozenset(), monotonic=False):
        self.index = _ActIndex(states, consequences, acts)
        self.pref_pairs = frozenset(pref_pairs)
        self.monotonic = monotonic
        self.name = "canonical-monotonic" if monotonic else "canonical"
        if monotonic:
            self.certified = self.certified | {MONOTONIC}
        self.plausibility = subset_order(self.index.states)
        self._graph_pairs = frozenset((self.index.by_name[a], self.index.by_name[b])
                                      for a, b in self.pref_pairs)
        self._above: dict = {}
        for ga, gb in self._graph_pairs:
            self._above.setdefault(ga, []).append(gb)

    def _key(self):
        return (self.name, self.index.states, self.index.consequences,
                tuple(zip(self.index.names, self.index.graphs)), self.pref_pairs)

    def _acts_le(self, x, y) -> bool:
        return (x, y) in self._graph_pairs

    def u_le(self, c, d):
        if c == d:
            return True
        return self._acts_le(self.index.constant[c], self.index.constant[d])

    def v_le(self, x, y):
        if x == y or self._acts_le(x, y):
            return True
        if not self.monotonic:
            return False
        for ga, uppers in self._above.items():
            if ga <= x:
                for gb in uppers:
                    if _case2(x, y, ga, gb):
                        return True
        return False

    def oplus(self, x, y):
        return x | y

    def otimes(self, p, c):
        return frozenset((s, c) for s in p)

    def embed(self, c):
        return self.index.constant[c]

    def utility_of(self, v):
        for c, g in self.index.constant.items():
            if g == v:
                return c
        return None

    def is_utility(self, u):
        return u in self.index.constant

    def is_valuation(self, v):
        return isinstance(v, frozenset) and all(
            isinstance(e, tuple) and len(e) == 2 and e[0] in self.plausibility.top
            and e[1] in self.index.constant for e in v)

    def utility_carrier(self):
        return self.index.consequences

    def valuation_carrier(self):
        cells = [(s, c) for s in self.index.states for c in self.index.consequences]
        return tuple(subsets(cells))

    def valuation_size(self) -> int:
        return 2 ** (len(self.index.states) * len(self.index.consequences))

    def identity(self):
        return frozenset()

    def sample_utility(self, rng):
        return rng.choice(self.index.consequences)

    def sample_valuation(self, rng):
        cells = [(s, c) for s in self.index.states for c in self.index.consequences]
        return frozenset(e for e in cells if rng.random() < 0.35)


class PreferenceRegistry:
    """Interns preference relations to stable ids (content digests).

    The id of a relation depends only on its situation and pairs, so
    interning is idempotent and deterministic across processes.  A lock
    makes the registry safe to share between threads.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: dict[str, tuple[tuple, frozenset]] = {}

    @staticmethod
    def situation_key(states, consequences, acts) -> tuple:
        return (tuple(states), tuple(consequences), tuple((n, tuple(o)) for n, o in acts))

    def intern(self, situation_key: tuple, pairs: Iterable[tuple[str, str]]) -> str:
        pairs = frozenset(pairs)
        text = repr((situation_key, sorted(pairs)))
        rid = "r" + hashlib.sha256(text.encode()).hexdigest()[:12]
        with self._lock:
            self._entries.setdefault(rid, (situation_key, pairs))
        return rid

    def lookup(self, rid: str) -> tuple[tuple, frozenset] | None:
        with self._lock:
            return self._entries.get(rid)

    def ids_for(self, situation_key: tuple) -> list[str]:
        with self._lock:
            return sorted(r for r, (k, _) in self._entries.items() if k == situation_key)


REGISTRY = PreferenceRegistry()


class TaggedDomain(ExpectationDomain):
    """One domain serving every preference on a fixed situation.

    Valuations are pair sets tagged with sets of interned preference ids;
    utilities are consequences tagged the same way.  A valuation order
    question is answered by consulting the preference named in the (shared)
    tag set, with the same monotone extension as :class:`CanonicalDomain`.
    ``empty otimes u`` is the untagged empty set, which is the oplus identity.
    """

    certified = frozenset(LAWS) | {IDENTITY, MONOTONIC}

    def __init__(self, states, consequences, acts, registry: PreferenceRegistry = REGISTRY):
        self.index = _ActIndex(states, consequences, acts)
        self.key = PreferenceRegistry.situation_key(states, consequences, acts)
        self.registry = registry
        self.name = "tagged"
        self.plausibility = subset_order(self.index.states)

    def _key(self):
        return (self.name, self.key)

    def _pref_graph_pairs(self, rid):
        entry = self.registry.lookup(rid)
        if entry is None or entry[0] != self.key:
            return ()
        by_name = self.index.by_name
        return [(by_name[a], by_name[b]) for a, b in sorted(entry[1])]

    def v_le(self, x, y):
        if x == y:
            return True
        if x.tags != y.tags:
            return False
        for rid in sorted(x.tags):
            for ga, gb in self._pref_graph_pairs(rid):
                if _case2(x.pairs, y.pairs, ga, gb):
                    return True
        return False

    def u_le(self, x, y):
        return self.v_le(self.embed(x), self.embed(y))

    def oplus(self, x, y):
        return Tagged(x.pairs | y.pairs, x.tags | y.tags)

    def otimes(self, p, u):
        if not p:
            return Tagged(frozenset(), frozenset())
        return Tagged(frozenset((s, u.consequence) for s in p), u.tags)

    def embed(self, u):
        return Tagged(self.index.constant[u.consequence], u.tags)

    def utility_of(self, v):
        for c, g in self.index.constant.items():
            if g == v.pairs:
                return TaggedConsequence(c, v.tags)
        return None

    def is_utility(self, u):
        return isinstance(u, TaggedConsequence) and u.consequence in self.index.constant \
            and isinstance(u.tags, frozenset)

    def is_valuation(self, v):
        return isinstance(v, Tagged) and isinstance(v.tags, frozenset)

    def identity(self):
        return Tagged(frozenset(), frozenset())

    def _sample_tags(self, rng):
        ids = self.registry.ids_for(self.key)
        return frozenset(r for r in ids if rng.random() < 0.5)

    def sample_utility(self, rng):
        return TaggedConsequence(rng.choice(self.index.consequences), self._sample_tags(rng))

    def sample_valuation(self, rng):
        cells = [(s, c) for s in self.index.states for c in self.index.consequences]
        return Tagged(frozenset(e for e in cells if rng.random() < 0.35), self._sample_tags(rng))


# constructors

def standard_domain() -> StandardDomain:
    return StandardDomain()


def pair_domain() -> PairDomain:
    return PairDomain(min_order=False)


def pair_min_domain() -> PairDomain:
    return PairDomain(min_order=True)


def table_domain(tables: dict) -> TableDomain:
    """Build a table domain from the parsed document form.

    Keys: ``utility``, ``plausibility``, ``valuation`` (symbol lists),
    ``bottom``, ``top``, ``oplus`` (``[x, y, x+y]`` rows), ``otimes``
    (``[p, u, p*u]`` rows) and optional ``*_order`` pair lists.
    """
    return TableDomain(
        tables["utility"], tables["plausibility"], tables["valuation"],
        tables["bottom"], tables["top"], tables["oplus"], tables["otimes"],
        tables.get("utility_order", ()), tables.get("plausibility_order", ()),
        tables.get("valuation_order", ()), tables.get("name", "table"))


def canonical_domain(situation, pref=None, monotonic: bool = False) -> CanonicalDomain:
    """Canonical domain of ``situation``; ``pref`` (a :class:`Relation` on act names) shapes the orders."""
    pairs = frozenset() if pref is None else frozenset(pref.pairs)
    return CanonicalDomain(situation.states, situation.consequences, situation.acts, pairs, monotonic)


def tagged_domain(situation) -> TaggedDomain:
    return TaggedDomain(situation.states, situation.consequences, situation.acts)


# laws

def fold_sum(E: ExpectationDomain, terms: Sequence):
    """Left fold of ``terms`` by ``oplus``.

    An empty sequence yields the domain's certified identity, if it has one.
    """
    terms = list(terms)
    if not terms:
        e = E.identity()
        if e is None:
            raise GEUError(f"empty oplus-sum in {E.name}, which has no certified identity")
        return e
    return reduce(E.oplus, terms)


class _Probe:
    """Supplies instances for a law: exhaustive on finite carriers, else sampled."""

    def __init__(self, E: ExpectationDomain, budget: int, seed: int = 0):
        self.E = E
        self.budget = budget
        self.rng = random.Random(seed)
        self.U = E.utility_carrier()
        self.P = E.plausibility.carrier
        self.V = None
        size = E.valuation_size() if isinstance(E, CanonicalDomain) else None
        if size is None or size ** 2 <= budget:
            self.V = E.valuation_carrier()
        self.sampled: set[str] = set()

    def tuples(self, law: str, kinds: str) -> Iterable[tuple]:
        carriers = [{"u": self.U, "p": self.P, "v": self.V}[k] for k in kinds]
        if all(c is not None for c in carriers):
            required = 1
            for c in carriers:
                required *= len(c)
            if required <= self.budget:
                return product(*carriers)
            if self.E.exhaustive_required:
                raise BudgetExceeded(f"{self.E.name} {law}", required, self.budget)
        elif self.E.exhaustive_required:
            raise GEUError(f"{self.E.name} has no finite carrier for {law}")
        self.sampled.add(law)
        samplers = {"u": self.E.sample_utility, "p": self.E.sample_plausibility,
                    "v": self.E.sample_valuation}
        return [tuple(samplers[k](self.rng) for k in kinds) for _ in range(self.budget)]


def _run_law(name: str, instances: Iterable[tuple], names: Sequence[str],
             predicate: Callable[..., bool], probe: _Probe, **detail) -> CheckResult:
    for inst in instances:
        if not predicate(*inst):
            witness = dict(zip(names, inst))
            return failed(name, witness, lambda w: predicate(*(w[n] for n in names)), **detail)
    if name in probe.sampled and name.split("-")[0] in probe.E.certified:
        detail = {**detail, "mode": "certified+sampled"}
    elif name in probe.sampled:
        detail = {**detail, "mode": "sampled"}
    else:
        detail = {**detail, "mode": "exhaustive"}
    return passed(name, **detail)


def validate_domain(E: ExpectationDomain, probe_budget: int = DEFAULT_PROBE_BUDGET,
                    seed: int = 0) -> ValidationReport:
    """Check E1-E4 and the order structure of a domain.

    Finite carriers are enumerated; when an exhaustive check of a table
    domain would exceed ``probe_budget`` instances, :class:`BudgetExceeded`
    is raised.  Certified domains with infinite (or very large) carriers are
    sampled with ``probe_budget`` instances per law.
    """
    probe = _Probe(E, probe_budget, seed)
    report = ValidationReport(E.name)
    add = report.results.append

    add(_run_law("E1", probe.tuples("E1", "vvv"), ("x", "y", "z"),
                 lambda x, y, z: E.oplus(E.oplus(x, y), z) == E.oplus(x, E.oplus(y, z)), probe))
    add(_run_law("E2", probe.tuples("E2", "vv"), ("x", "y"),
                 lambda x, y: E.oplus(x, y) == E.oplus(y, x), probe))
    add(_run_law("E3", probe.tuples("E3", "u"), ("u",),
                 lambda u: E.otimes(E.top, u) == E.embed(u), probe))
    add(_run_law("E4", probe.tuples("E4", "uu"), ("u1", "u2"),
                 lambda u1, u2: (E.u_le(u1, u2) == E.v_le(E.embed(u1), E.embed(u2))
                                 and (u1 == u2) == (E.embed(u1) == E.embed(u2))), probe))
    add(_run_law("order-U-reflexive", probe.tuples("order-U-reflexive", "u"), ("u",),
                 lambda u: E.u_le(u, u), probe))
    add(_run_law("order-V-reflexive", probe.tuples("order-V-reflexive", "v"), ("x",),
                 lambda x: E.v_le(x, x), probe))
    p_le = E.p_le
    add(_run_law("order-P-antisymmetric", probe.tuples("order-P-antisymmetric", "pp"), ("p", "q"),
                 lambda p, q: not (p_le(p, q) and p_le(q, p)) or p == q, probe))
    add(_run_law("order-P-transitive", probe.tuples("order-P-transitive", "ppp"), ("p", "q", "r"),
                 lambda p, q, r: not (p_le(p, q) and p_le(q, r)) or p_le(p, r), probe))
    add(_run_law("order-P-bounds", probe.tuples("order-P-bounds", "p"), ("p",),
                 lambda p: p_le(E.bottom, p) and p_le(p, E.top) and p_le(p, p), probe))
    return report


def is_monotonic(E: ExpectationDomain, probe_set: Iterable[tuple] | None = None,
                 probe_budget: int = DEFAULT_PROBE_BUDGET, seed: int = 0) -> CheckResult:
    """x <=_V y implies x + z <=_V y + z, over ``probe_set`` (or a default probe)."""
    probe = _Probe(E, probe_budget, seed)
    instances = probe_set if probe_set is not None else probe.tuples("monotonic", "vvv")

    def holds(x, y, z):
        return not E.v_le(x, y) or E.v_le(E.oplus(x, z), E.oplus(y, z))

    vacuous = 0
    for x, y, z in instances:
        if not E.v_le(x, y):
            vacuous += 1
            continue
        if not holds(x, y, z):
            return failed("monotonic", {"x": x, "y": y, "z": z},
                          lambda w: holds(w["x"], w["y"], w["z"]), vacuous=vacuous)
    return passed("monotonic", vacuous=vacuous)


def has_oplus_identity(E: ExpectationDomain, probe_budget: int = DEFAULT_PROBE_BUDGET,
                       seed: int = 0) -> CheckResult:
    """(bottom otimes u) + x = x for every probed u and x; reports the identity."""
    probe = _Probe(E, probe_budget, seed)
    instances = list(probe.tuples("identity", "uv"))
    if not instances:
        raise GEUError(f"{E.name}: empty carriers")

    def holds(u, x):
        return E.oplus(E.otimes(E.bottom, u), x) == x

    for u, x in instances:
        if not holds(u, x):
            return failed("identity", {"u": u, "x": x}, lambda w: holds(w["u"], w["x"]))
    return passed("identity", identity=E.otimes(E.bottom, instances[0][0]))


def check_distributivity(E: ExpectationDomain, probe_budget: int = DEFAULT_PROBE_BUDGET,
                         seed: int = 0) -> CheckResult:
    """p otimes (u1 + u2) = (p otimes u1) + (p otimes u2) wherever u1 + u2 is a utility.

    Pairs whose sum leaves U are skipped and counted in ``vacuous``.
    """
    probe = _Probe(E, probe_budget, seed)
    skipped = 0

    def holds(p, u1, u2):
        s = E.utility_of(E.oplus(E.embed(u1), E.embed(u2)))
        return s is None or E.otimes(p, s) == E.oplus(E.otimes(p, u1), E.otimes(p, u2))

    for p, u1, u2 in probe.tuples("distributive", "puu"):
        if E.utility_of(E.oplus(E.embed(u1), E.embed(u2))) is None:
            skipped += 1
            continue
        if not holds(p, u1, u2):
            return failed("distributive", {"p": p, "u1": u1, "u2": u2},
                          lambda w: holds(w["p"], w["u1"], w["u2"]), vacuous=skipped)
    return passed("distributive", vacuous=skipped)
