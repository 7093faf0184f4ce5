"""Model checking the classical postulates on preferences and the GEU axioms on problems.

Postulates (``check_P``) are statements about a preference relation on the
acts of a situation; axioms (``check_A``) are statements about the expected
utility values of a decision problem.  Both come in a general version, with
membership guards ("if this splice is in A", "if this value is in E(S)"),
and a special version for problems whose act set is all of C^S.  The
special version is the general evaluator run after asserting A = C^S, since
every guard is then satisfied.

Each check returns a :class:`CheckResult` whose witness binds every
universally quantified variable at the first violating instance, in
canonical enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

from .algebra import Relation, fold_sum
from .combinatorics import nonempty_proper_subsets, set_partitions, subsets
from .decision import (DEFAULT_ACT_BUDGET, DecisionProblem, DecisionSituation, ev_set, geu,
                       geu_restricted, induced_preference, is_additive, is_whole, ulotto)
from .errors import PreconditionError, SpecialVersionMismatch
from .results import CheckResult, failed, passed

INDICES = ("1a", "1b", "2", "3", "4", "5", "6")
DEFAULT_PARTITION_BUDGET = 203

# Which problem classes each equivalence needs.
PI_REQUIREMENTS = {
    "1a": ("all",), "1b": ("all",), "5": ("all",),
    "4": ("0",),
    "2": ("add", "0"), "3": ("add", "0"), "6": ("add", "0"),
}


def parse_indices(spec: str | Iterable[str]) -> list[str]:
    items = spec.split(",") if isinstance(spec, str) else list(spec)
    out = []
    for raw in items:
        i = str(raw).strip().lower().replace("(", "").replace(")", "")
        if i in ("1", "p1", "a1"):
            out += ["1a", "1b"]
            continue
        i = i.lstrip("pa") if i[:1] in "pa" and i[1:2].isdigit() else i
        if i not in INDICES:
            raise ValueError(f"unknown index {raw!r}; expected one of {', '.join(INDICES)}")
        out.append(i)
    return list(dict.fromkeys(out))


def _single(which) -> str:
    idx = parse_indices([which])
    if len(idx) != 1:
        raise ValueError(f"{which!r} names more than one check")
    return idx[0]


def _check_version(version: str) -> None:
    if version not in ("general", "special"):
        raise ValueError(f"version must be 'general' or 'special', not {version!r}")


class _Prefs:
    """A preference on a situation, indexed for fast splice lookups."""

    def __init__(self, situation: DecisionSituation, pref: Relation):
        if set(pref.carrier) != set(situation.names):
            raise PreconditionError("preference carrier differs from the act set")
        self.sit = situation
        self.pref = pref
        self.names = situation.names
        self.outs = situation.outcomes
        self.events = subsets(situation.states)
        self._splices: dict = {}

    def name(self, outs) -> str | None:
        return self.sit.name_of(outs)

    def le(self, a: str, b: str) -> bool:
        return self.pref(a, b)

    def lt(self, a: str, b: str) -> bool:
        return self.pref(a, b) and not self.pref(b, a)

    def splice(self, a, X: frozenset, b) -> str | None:
        """Name of the splice of two acts (names or outcome tuples), or None when not in A."""
        key = (a, X, b)
        if key not in self._splices:
            self._splices[key] = self.name(self.sit.splice(a, X, b))
        return self._splices[key]

    def const(self, c: str) -> str | None:
        return self.name(self.sit.constant(c))


def _forall(name: str, bindings: Iterable[dict], guard: Callable[[dict], bool],
            body: Callable[[dict], bool], version: str, **detail) -> CheckResult:
    """Universal check; instances failing the bracket ``guard`` are counted as vacuous."""
    vacuous = 0
    for w in bindings:
        if not guard(w):
            vacuous += 1
            continue
        if not body(w):
            return failed(name, w, lambda v: not guard(v) or body(v),
                          version=version, vacuous=vacuous, **detail)
    return passed(name, version=version, vacuous=vacuous, **detail)


def _always(w) -> bool:
    return True


# postulates

def _p1a(P: _Prefs, version):
    return _forall("P1a", ({"a1": a1, "a2": a2} for a1 in P.names for a2 in P.names), _always,
                   lambda w: P.le(w["a1"], w["a2"]) or P.le(w["a2"], w["a1"]), version)


def _p1b(P: _Prefs, version):
    body = lambda w: not (P.le(w["a1"], w["a2"]) and P.le(w["a2"], w["a3"])) or P.le(w["a1"], w["a3"])
    return _forall("P1b", ({"a1": a1, "a2": a2, "a3": a3}
                           for a1 in P.names for a2 in P.names for a3 in P.names), _always, body, version)


def _p2(P: _Prefs, version):
    def spl(w, a, b):
        return P.splice(w[a], w["X"], w[b])

    def guard(w):
        return all(spl(w, a, b) is not None for a in ("a1", "a2") for b in ("b1", "b2"))

    def body(w):
        return P.le(spl(w, "a1", "b1"), spl(w, "a2", "b1")) == P.le(spl(w, "a1", "b2"), spl(w, "a2", "b2"))

    bindings = ({"X": x, "a1": a1, "a2": a2, "b1": b1, "b2": b2}
                for x in P.events for a1, a2, b1, b2 in product(P.names, repeat=4))
    return _forall("P2", bindings, guard, body, version)


def _p3_block(P: _Prefs, X, x1, x2, rel) -> bool:
    """[exists b0 with both splices in A] and for all b [both in A]: rel(splice(x1,X,b), splice(x2,X,b))."""
    some = False
    for b in P.names:
        s1, s2 = P.splice(x1, X, b), P.splice(x2, X, b)
        if s1 is None or s2 is None:
            continue
        some = True
        if not rel(s1, s2):
            return False
    return some


def _p3_antecedent(P: _Prefs, X) -> tuple[str, str] | None:
    for a1 in P.names:
        for a2 in P.names:
            if _p3_block(P, X, a1, a2, P.lt):
                return a1, a2
    return None


def _p3(P: _Prefs, version):
    def body(w):
        if _p3_antecedent(P, w["X"]) is None:
            return True
        k1, k2 = P.const(w["c1"]), P.const(w["c2"])
        rhs = _p3_block(P, w["X"], P.sit.constant(w["c1"]), P.sit.constant(w["c2"]), P.le)
        return P.le(k1, k2) == rhs

    def guard(w):
        return P.const(w["c1"]) is not None and P.const(w["c2"]) is not None

    cs = P.sit.consequences
    vacuous = 0
    for x in P.events:
        found = _p3_antecedent(P, x)
        if found is None:
            continue
        for c1, c2 in product(cs, repeat=2):
            w = {"X": x, "c1": c1, "c2": c2}
            if not guard(w):
                vacuous += 1
                continue
            if not body(w):
                w["a1"], w["a2"] = found
                return failed("P3", w, lambda v: not guard(v) or body(v), version=version, vacuous=vacuous)
    return passed("P3", version=version, vacuous=vacuous)


def _p4(P: _Prefs, version):
    cs = P.sit.consequences

    def spl(w, c, x, d):
        return P.splice(P.sit.constant(w[c]), w[x], P.sit.constant(w[d]))

    def guard(w):
        if any(P.const(w[k]) is None for k in ("c1", "d1", "c2", "d2")):
            return False
        return all(spl(w, c, x, d) is not None
                   for c, d in (("c1", "d1"), ("c2", "d2")) for x in ("X1", "X2"))

    def body(w):
        if not (P.lt(P.const(w["d1"]), P.const(w["c1"])) and P.lt(P.const(w["d2"]), P.const(w["c2"]))):
            return True
        return (P.le(spl(w, "c1", "X1", "d1"), spl(w, "c1", "X2", "d1"))
                == P.le(spl(w, "c2", "X1", "d2"), spl(w, "c2", "X2", "d2")))

    bindings = ({"X1": x1, "X2": x2, "c1": c1, "d1": d1, "c2": c2, "d2": d2}
                for x1 in P.events for x2 in P.events for c1, d1, c2, d2 in product(cs, repeat=4))
    return _forall("P4", bindings, guard, body, version)


def _p5(P: _Prefs, version):
    def holds(_w=None):
        cs = P.sit.consequences
        for c1, c2 in product(cs, repeat=2):
            k1, k2 = P.const(c1), P.const(c2)
            if k1 is not None and k2 is not None and P.lt(k1, k2):
                return True
        return False

    return passed("P5", version=version) if holds() else failed("P5", {}, holds, version=version)


def _p6(P: _Prefs, version, budget):
    partitions = list(set_partitions(P.sit.states, budget))

    def cell_ok(a, b, c, Z):
        k = P.sit.constant(c)
        left, right = P.splice(k, Z, a), P.splice(k, Z, b)
        return ((left is None or P.lt(left, b)) and (right is None or P.lt(a, right)))

    def body(w):
        if not P.lt(w["a"], w["b"]):
            return True
        return any(all(cell_ok(w["a"], w["b"], w["c"], Z) for Z in part) for part in partitions)

    bindings = ({"a": a, "b": b, "c": c}
                for a in P.names for b in P.names for c in P.sit.consequences)
    return _forall("P6", bindings, _always, body, version)


def _require_complete(situation: DecisionSituation, what: str) -> None:
    if not situation.is_complete():
        raise SpecialVersionMismatch(
            f"special version of {what} needs the act set to be all simple acts "
            f"({len(situation.consequences) ** len(situation.states)}), got {len(situation.acts)}")


def check_P(situation: DecisionSituation, pref: Relation, which: str, version: str = "general",
            partition_budget: int = DEFAULT_PARTITION_BUDGET) -> CheckResult:
    """Decide one postulate (``1a``, ``1b``, ``2`` ... ``6``) for ``pref`` on ``situation``."""
    _check_version(version)
    which = _single(which)
    if version == "special":
        _require_complete(situation, f"P{which}")
    P = _Prefs(situation, pref)
    if which == "6":
        return _p6(P, version, partition_budget)
    return {"1a": _p1a, "1b": _p1b, "2": _p2, "3": _p3, "4": _p4, "5": _p5}[which](P, version)


def conditional_preference(situation: DecisionSituation, pref: Relation, X: Iterable[str]) -> Relation:
    """a1 <=^X a2: some continuation keeps both splices in A, and every such one ranks them."""
    P = _Prefs(situation, pref)
    x = situation.event(X)
    pairs = frozenset((a1, a2) for a1 in P.names for a2 in P.names if _p3_block(P, x, a1, a2, P.le))
    return Relation(P.names, pairs)


def is_null(situation: DecisionSituation, pref: Relation, X: Iterable[str],
            version: str = "general") -> CheckResult:
    """X is null when its conditional preference is symmetric (general) or total (special)."""
    _check_version(version)
    x = situation.event(X)
    cp = conditional_preference(situation, pref, x)
    if version == "general":
        body = lambda w: cp(w["a1"], w["a2"]) == cp(w["a2"], w["a1"])
    else:
        body = lambda w: cp(w["a1"], w["a2"])
    bindings = ({"a1": a1, "a2": a2} for a1 in situation.names for a2 in situation.names)
    return _forall("null", bindings, _always, body, version, X=x)


def likelihood_relation(situation: DecisionSituation, pref: Relation) -> Relation:
    """X <=_S Y iff betting the better consequence on Y is weakly preferred to betting it on X."""
    P = _Prefs(situation, pref)
    cs = situation.consequences
    bets = []
    for c, d in product(cs, repeat=2):
        kc, kd = P.const(c), P.const(d)
        if kc is not None and kd is not None and P.lt(kd, kc):
            bets.append((situation.constant(c), situation.constant(d)))

    def related(x, y):
        for kc, kd in bets:
            sx, sy = P.splice(kc, x, kd), P.splice(kc, y, kd)
            if sx is not None and sy is not None and not P.le(sx, sy):
                return False
        return True

    events = P.events
    return Relation(tuple(events), frozenset((x, y) for x in events for y in events if related(x, y)))


# axioms

@dataclass(frozen=True)
class PiMembership:
    all: bool
    add: bool
    zero: bool
    complete: bool
    whole: bool

    def flags(self) -> dict[str, bool]:
        return {"all": self.all, "add": self.add, "0": self.zero}

    def allows(self, index: str) -> bool:
        return all(self.flags()[c] for c in PI_REQUIREMENTS[index])

    def missing(self, index: str) -> list[str]:
        return [f"Pi_{c}" for c in PI_REQUIREMENTS[index] if not self.flags()[c]]


def pi_membership(D: DecisionProblem, budget: int = DEFAULT_ACT_BUDGET) -> PiMembership:
    complete = D.situation.is_complete()
    whole = True if complete else is_whole(D, budget).holds
    return PiMembership(True, is_additive(D).holds, complete or whole, complete, whole)


class _Values:
    """Expected utility values of a problem, cached per event."""

    def __init__(self, D: DecisionProblem):
        self.D = D
        self.E = D.domain
        self.ES = ev_set(D, D.states)
        self.ES_set = frozenset(self.ES)
        self._ev: dict = {}
        self.ran = tuple(dict.fromkeys(D.utility[c] for c in D.situation.consequences))
        self.full = frozenset(D.states)

    def ev(self, X: frozenset) -> tuple:
        if X not in self._ev:
            self._ev[X] = ev_set(self.D, X)
        return self._ev[X]

    def inS(self, v) -> bool:
        return v in self.ES_set

    def u_in(self, u) -> bool:
        return self.E.embed(u) in self.ES_set

    def le(self, x, y) -> bool:
        return self.E.v_le(x, y)

    def lt(self, x, y) -> bool:
        return self.E.v_lt(x, y)

    def ule(self, u1, u2) -> bool:
        return self.E.v_le(self.E.embed(u1), self.E.embed(u2))

    def ult(self, u1, u2) -> bool:
        return self.ule(u1, u2) and not self.ule(u2, u1)


def _a1a(V: _Values, version):
    return _forall("A1a", ({"x": x, "y": y} for x in V.ES for y in V.ES), _always,
                   lambda w: V.le(w["x"], w["y"]) or V.le(w["y"], w["x"]), version)


def _a1b(V: _Values, version):
    body = lambda w: not (V.le(w["x"], w["y"]) and V.le(w["y"], w["z"])) or V.le(w["x"], w["z"])
    return _forall("A1b", ({"x": x, "y": y, "z": z} for x in V.ES for y in V.ES for z in V.ES),
                   _always, body, version)


def _a2(V: _Values, version):
    op = V.E.oplus

    def guard(w):
        return all(V.inS(op(w[x], w[y])) for x in ("x1", "x2") for y in ("y1", "y2"))

    def body(w):
        return (V.le(op(w["x1"], w["y1"]), op(w["x2"], w["y1"]))
                == V.le(op(w["x1"], w["y2"]), op(w["x2"], w["y2"])))

    def bindings():
        for X in nonempty_proper_subsets(V.D.states):
            ex, ey = V.ev(X), V.ev(V.full - X)
            for x1, x2 in product(ex, repeat=2):
                for y1, y2 in product(ey, repeat=2):
                    yield {"X": X, "x1": x1, "x2": x2, "y1": y1, "y2": y2}

    return _forall("A2", bindings(), guard, body, version)


def _a3_block(V: _Values, ys, l, r, rel) -> bool:
    """[exists y0 with l+y0, r+y0 in E(S)] and for all y [guarded]: rel(l+y, r+y)."""
    op = V.E.oplus
    some = False
    for y in ys:
        ly, ry = op(l, y), op(r, y)
        if not (V.inS(ly) and V.inS(ry)):
            continue
        some = True
        if not rel(ly, ry):
            return False
    return some


def _a3_antecedent(V: _Values, X) -> tuple | None:
    ex, ey = V.ev(X), V.ev(V.full - X)
    for x1, x2 in product(ex, repeat=2):
        if _a3_block(V, ey, x1, x2, V.lt):
            return x1, x2
    return None


def _a3(V: _Values, version):
    E, pl = V.E, V.D.plausibility

    def guard(w):
        return V.u_in(w["u1"]) and V.u_in(w["u2"])

    def body(w):
        X = w["X"]
        if _a3_antecedent(V, X) is None:
            return True
        rhs = _a3_block(V, V.ev(V.full - X), E.otimes(pl(X), w["u1"]), E.otimes(pl(X), w["u2"]), V.le)
        return V.ule(w["u1"], w["u2"]) == rhs

    vacuous = 0
    for X in nonempty_proper_subsets(V.D.states):
        found = _a3_antecedent(V, X)
        if found is None:
            continue
        for u1, u2 in product(V.ran, repeat=2):
            w = {"X": X, "u1": u1, "u2": u2}
            if not guard(w):
                vacuous += 1
                continue
            if not body(w):
                w["x1"], w["x2"] = found
                return failed("A3", w, lambda v: not guard(v) or body(v), version=version, vacuous=vacuous)
    return passed("A3", version=version, vacuous=vacuous)


def _a4(V: _Values, version):
    D = V.D

    def lot(w, u, x, v):
        return ulotto(D, w[u], w[x], w[v])

    def guard(w):
        if not all(V.u_in(w[k]) for k in ("u1", "v1", "u2", "v2")):
            return False
        return all(V.inS(lot(w, u, x, v)) for u, v in (("u1", "v1"), ("u2", "v2")) for x in ("X1", "X2"))

    def body(w):
        if not (V.ult(w["v1"], w["u1"]) and V.ult(w["v2"], w["u2"])):
            return True
        return (V.le(lot(w, "u1", "X1", "v1"), lot(w, "u1", "X2", "v1"))
                == V.le(lot(w, "u2", "X1", "v2"), lot(w, "u2", "X2", "v2")))

    events = subsets(D.states)
    bindings = ({"X1": x1, "X2": x2, "u1": u1, "v1": v1, "u2": u2, "v2": v2}
                for x1 in events for x2 in events for u1, v1, u2, v2 in product(V.ran, repeat=4))
    return _forall("A4", bindings, guard, body, version)


def _a5(V: _Values, version):
    def holds(_w=None):
        return any(V.u_in(u1) and V.u_in(u2) and V.ult(u1, u2) for u1, u2 in product(V.ran, repeat=2))

    return passed("A5", version=version) if holds() else failed("A5", {}, holds, version=version)


def _a6(V: _Values, version, budget):
    D, E, pl = V.D, V.E, V.D.plausibility
    sit = D.situation
    partitions = list(set_partitions(sit.states, budget))

    def partition_ok(a, b, u, x, y, Z) -> bool:
        xs = [geu_restricted(D, a, z) for z in Z]
        ys = [geu_restricted(D, b, z) for z in Z]
        if fold_sum(E, xs) != x or fold_sum(E, ys) != y:
            return False
        for k, zk in enumerate(Z):
            head = E.otimes(pl(zk), u)
            wx = fold_sum(E, [head] + [xi for i, xi in enumerate(xs) if i != k])
            wy = fold_sum(E, [head] + [yi for i, yi in enumerate(ys) if i != k])
            if V.inS(wx) and not V.lt(wx, y):
                return False
            if V.inS(wy) and not V.lt(x, wy):
                return False
        return True

    def body(w):
        x, y = geu(D, w["a"]), geu(D, w["b"])
        if not V.lt(x, y):
            return True
        u = D.utility[w["c"]]
        return any(partition_ok(w["a"], w["b"], u, x, y, Z) for Z in partitions)

    def bindings():
        for a in sit.names:
            for b in sit.names:
                for c in sit.consequences:
                    yield {"x": geu(D, a), "y": geu(D, b), "u": D.utility[c], "a": a, "b": b, "c": c}

    return _forall("A6", bindings(), _always, body, version)


def check_A(D: DecisionProblem, which: str, version: str = "general", enforce_pi: bool = True,
            partition_budget: int = DEFAULT_PARTITION_BUDGET, act_budget: int = DEFAULT_ACT_BUDGET) -> CheckResult:
    """Decide one axiom for the expected utility values of ``D``.

    With ``enforce_pi`` the problem must lie in the class the axiom is
    stated for (additive for 2, 3 and 6; complete or whole for 2, 3, 4 and
    6), otherwise :class:`PreconditionError` is raised.
    """
    _check_version(version)
    which = _single(which)
    if version == "special":
        _require_complete(D.situation, f"A{which}")
    if enforce_pi and which in ("2", "3", "4", "6"):
        needs = PI_REQUIREMENTS[which]
        missing = []
        if "add" in needs and not is_additive(D).holds:
            missing.append("Pi_add")
        if "0" in needs and not (D.situation.is_complete() or is_whole(D, act_budget).holds):
            missing.append("Pi_0")
        if missing:
            raise PreconditionError(f"A{which} is only checked on problems in {' and '.join(missing)}", missing)
    V = _Values(D)
    if which == "6":
        return _a6(V, version, partition_budget)
    return {"1a": _a1a, "1b": _a1b, "2": _a2, "3": _a3, "4": _a4, "5": _a5}[which](V, version)


@dataclass
class Equivalence:
    index: str
    axiom: CheckResult
    postulate: CheckResult

    @property
    def holds(self) -> bool:
        return self.axiom.holds == self.postulate.holds


@dataclass
class VerificationReport:
    indices: list[str]
    membership: PiMembership
    rows: list[Equivalence] = field(default_factory=list)

    @property
    def axioms_hold(self) -> bool:
        return all(r.axiom.holds for r in self.rows)

    @property
    def postulates_hold(self) -> bool:
        return all(r.postulate.holds for r in self.rows)

    @property
    def conjunction(self) -> bool:
        return self.axioms_hold == self.postulates_hold

    @property
    def discrepancies(self) -> list[str]:
        out = [r.index for r in self.rows if not r.holds]
        if not self.conjunction:
            out.append("all")
        return out

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def verify_representation(D: DecisionProblem, indices: Sequence[str] = INDICES,
                          partition_budget: int = DEFAULT_PARTITION_BUDGET,
                          act_budget: int = DEFAULT_ACT_BUDGET) -> VerificationReport:
    """Compare each axiom on ``D`` with the matching postulate on its induced preference."""
    idx = parse_indices(indices)
    pi = pi_membership(D, act_budget)
    missing = sorted({m for i in idx for m in pi.missing(i)})
    if missing:
        bad = [i for i in idx if not pi.allows(i)]
        raise PreconditionError(f"problem is outside {', '.join(missing)} needed for {', '.join(bad)}", missing)
    pref = induced_preference(D)
    report = VerificationReport(idx, pi)
    for i in idx:
        a = check_A(D, i, "general", enforce_pi=False, partition_budget=partition_budget)
        p = check_P(D.situation, pref, i, "general", partition_budget)
        report.rows.append(Equivalence(i, a, p))
    return report
