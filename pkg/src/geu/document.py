"""The JSON problem document: parsing into problems and emitting back.

A document is one JSON object::

    {
      "states": ["s1", "s2"],
      "consequences": ["c1", "c2"],
      "acts": {"aK": ["c1", "c1"], "aL": {"s1": "c1", "s2": "c2"}}  or  "all",
      "domain": "standard" | "pair" | "pair-min" | "canonical" | "tagged"
                | {"type": "canonical", "monotonic": true}
                | {"type": "table", "utility": [...], "plausibility": [...],
                   "valuation": [...], "bottom": "b", "top": "t",
                   "oplus": [[x, y, z], ...], "otimes": [[p, u, v], ...],
                   "utility_order": [[x, y], ...], ...},
      "utility": {"c1": "1", "c2": "0"},
      "plausibility": {"type": "probability", "weights": {"s1": "3/10", "s2": "7/10"}}
                      | {"type": "pair", "weights": [{...}, {...}]}
                      | {"type": "table", "entries": [[["s1"], "0"], ...]}
                      | {"type": "identity"},
      "preference": [["aK", "aL"], ...]
    }

Rationals are written as ``"p/q"`` or integer strings, pairs as two-element
lists and events as lists of state ids.  For the canonical and tagged
domains the utility and plausibility are implied by the construction and
may be omitted; the preference is then required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import (CanonicalDomain, PairDomain, Relation, StandardDomain, TableDomain,
                      TaggedDomain, pair_domain, pair_min_domain, standard_domain, table_domain)
from .decision import DEFAULT_ACT_BUDGET, DecisionProblem, DecisionSituation
from .errors import ParseError
from .measures import (PlausibilityMeasure, identity_measure, pair_measure, probability_measure,
                       table_measure)
from .synthesis import canonical_representation, fixed_representation, monotonic_representation
from .values import Pair, rational, render_rational, sorted_ids, to_json


@dataclass
class ParsedProblem:
    problem: DecisionProblem
    preference: Relation | None
    document: dict


def _require(doc: dict, key: str, kind, where: str = ""):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", f"{where}/{key}" if where else f"/{key}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"expected {getattr(kind, '__name__', kind)}", f"{where}/{key}")
    return value


def _ids(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError("expected a list of ids", where)
    return value


def _rational(value, where: str) -> Fraction:
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), where) from None


def _pair(value, where: str) -> Pair:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError("expected a two-element list", where)
    return Pair(_rational(value[0], where + "/0"), _rational(value[1], where + "/1"))


def _event(value, states, where: str) -> frozenset:
    ids = _ids(value, where)
    stray = [s for s in ids if s not in states]
    if stray:
        raise ParseError(f"unknown states {stray}", where)
    return frozenset(ids)


def _parse_situation(doc: dict, budget: int) -> DecisionSituation:
    states = _ids(_require(doc, "states", list), "/states")
    consequences = _ids(_require(doc, "consequences", list), "/consequences")
    acts = _require(doc, "acts", (dict, str))
    allow = bool(doc.get("allow_duplicate_acts", False))
    if isinstance(acts, str):
        if acts != "all":
            raise ParseError('acts must be an object or the marker "all"', "/acts")
        return DecisionSituation.all_simple_acts(states, consequences, budget)
    for name, outs in acts.items():
        where = f"/acts/{name}"
        if isinstance(outs, dict):
            for s, c in outs.items():
                if s not in states:
                    raise ParseError(f"unknown state {s!r}", f"{where}/{s}")
                if c not in consequences:
                    raise ParseError(f"unknown consequence {c!r}", f"{where}/{s}")
        elif isinstance(outs, list):
            for i, c in enumerate(outs):
                if c not in consequences:
                    raise ParseError(f"unknown consequence {c!r}", f"{where}/{i}")
        else:
            raise ParseError("an act is a list of consequences or a state-to-consequence object", where)
    return DecisionSituation(states, consequences, acts, allow_duplicates=allow)


def _parse_domain_spec(doc: dict) -> dict:
    spec = doc.get("domain", "standard")
    if isinstance(spec, str):
        spec = {"type": spec}
    if not isinstance(spec, dict) or not isinstance(spec.get("type"), str):
        raise ParseError("domain must be a type name or an object with a type", "/domain")
    return spec


def _parse_preference(doc: dict, situation: DecisionSituation) -> Relation | None:
    if "preference" not in doc:
        return None
    pairs = doc["preference"]
    if not isinstance(pairs, list):
        raise ParseError("expected a list of act-name pairs", "/preference")
    out = []
    for i, p in enumerate(pairs):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise ParseError("expected a pair of act names", f"/preference/{i}")
        for j, name in enumerate(p):
            if name not in situation.names:
                raise ParseError(f"unknown act {name!r}", f"/preference/{i}/{j}")
        out.append(tuple(p))
    return Relation(situation.names, frozenset(out))


def _parse_measure(doc: dict, situation: DecisionSituation, domain) -> PlausibilityMeasure:
    spec = _require(doc, "plausibility", dict)
    kind = spec.get("type")
    states = situation.states
    if kind == "probability":
        weights = _require(spec, "weights", dict, "/plausibility")
        return probability_measure({s: _rational(w, f"/plausibility/weights/{s}") for s, w in weights.items()},
                                   states)
    if kind == "pair":
        ws = _require(spec, "weights", list, "/plausibility")
        if len(ws) != 2 or not all(isinstance(w, dict) for w in ws):
            raise ParseError("expected two weight objects", "/plausibility/weights")
        parsed = [{s: _rational(v, f"/plausibility/weights/{i}/{s}") for s, v in w.items()}
                  for i, w in enumerate(ws)]
        return pair_measure(parsed[0], parsed[1], states)
    if kind == "identity":
        return identity_measure(situation)
    if kind == "table":
        entries = _require(spec, "entries", list, "/plausibility")
        parsed = []
        for i, entry in enumerate(entries):
            where = f"/plausibility/entries/{i}"
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ParseError("expected [event, value]", where)
            event = _event(entry[0], states, where + "/0")
            parsed.append((event, _plaus_value(entry[1], domain, states, where + "/1")))
        return table_measure(states, parsed, domain.plausibility)
    raise ParseError(f"unknown plausibility type {kind!r}", "/plausibility/type")


def _plaus_value(value, domain, states, where):
    if isinstance(domain, StandardDomain):
        return _rational(value, where)
    if isinstance(domain, PairDomain):
        return _pair(value, where)
    if isinstance(domain, (CanonicalDomain, TaggedDomain)):
        return _event(value, states, where)
    if not isinstance(value, str):
        raise ParseError("expected a table symbol", where)
    return value


def _utility_value(value, domain, where):
    if isinstance(domain, (StandardDomain, PairDomain)):
        return _rational(value, where)
    if not isinstance(value, str):
        raise ParseError("expected a symbol", where)
    return value


def parse_document(doc: Any, act_budget: int = DEFAULT_ACT_BUDGET,
                   probe_budget: int = 10_000) -> ParsedProblem:
    """Build and validate the problem described by an already-decoded document."""
    if not isinstance(doc, dict):
        raise ParseError("a problem document is a JSON object", "/")
    situation = _parse_situation(doc, act_budget)
    pref = _parse_preference(doc, situation)
    spec = _parse_domain_spec(doc)
    kind = spec["type"]

    if kind in ("canonical", "tagged"):
        if pref is None:
            raise ParseError(f"the {kind} domain is built from a preference", "/preference")
        if kind == "tagged":
            synth = fixed_representation(situation, pref)
        elif spec.get("monotonic", False):
            synth = monotonic_representation(situation, pref)
        else:
            synth = canonical_representation(situation, pref)
        return ParsedProblem(synth.problem, pref, doc)

    if kind == "standard":
        domain = standard_domain()
    elif kind == "pair":
        domain = pair_domain()
    elif kind == "pair-min":
        domain = pair_min_domain()
    elif kind == "table":
        try:
            domain = table_domain(spec)
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}", f"/domain/{exc.args[0]}") from None
    else:
        raise ParseError(f"unknown domain type {kind!r}", "/domain/type")

    utility_doc = _require(doc, "utility", dict)
    utility = {}
    for c, v in utility_doc.items():
        if c not in situation.consequences:
            raise ParseError(f"unknown consequence {c!r}", f"/utility/{c}")
        utility[c] = _utility_value(v, domain, f"/utility/{c}")
    measure = _parse_measure(doc, situation, domain)
    problem = DecisionProblem(situation, domain, utility, measure, probe_budget=probe_budget)
    return ParsedProblem(problem, pref, doc)


def parse_problem(path: str | Path, **budgets) -> ParsedProblem:
    """Read, decode and validate a problem file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return parse_document(doc, **budgets)


def _emit_value(v, states):
    if isinstance(v, Fraction):
        return render_rational(v)
    if isinstance(v, Pair):
        return [render_rational(v.first), render_rational(v.second)]
    if isinstance(v, frozenset):
        return sorted_ids(v, states)
    return v


def emit_document(parsed: ParsedProblem) -> dict:
    """The canonical document for a parsed problem; parsing it gives an equal problem."""
    D = parsed.problem
    sit = D.situation
    doc: dict[str, Any] = {"states": list(sit.states), "consequences": list(sit.consequences)}
    doc["acts"] = {name: list(outs) for name, outs in sit.acts}
    if sit.allow_duplicates:
        doc["allow_duplicate_acts"] = True
    E = D.domain
    if isinstance(E, CanonicalDomain):
        doc["domain"] = {"type": "canonical", "monotonic": True} if E.monotonic else "canonical"
    elif isinstance(E, TaggedDomain):
        doc["domain"] = "tagged"
    elif isinstance(E, TableDomain):
        doc["domain"] = {
            "type": "table", "name": E.name, "utility": list(E.U), "plausibility": list(E.P),
            "valuation": list(E.V), "bottom": E.bottom, "top": E.top,
            "oplus": [[x, y, E.oplus(x, y)] for x in E.V for y in E.V],
            "otimes": [[p, u, E.otimes(p, u)] for p in E.P for u in E.U],
            "utility_order": [list(p) for p in E.u_order.sorted_pairs()],
            "plausibility_order": [list(p) for p in E.p_order.sorted_pairs()],
            "valuation_order": [list(p) for p in E.v_order.sorted_pairs()],
        }
    else:
        doc["domain"] = E.name
    if not isinstance(E, (CanonicalDomain, TaggedDomain)):
        doc["utility"] = {c: _emit_value(D.utility[c], sit.states) for c in sit.consequences}
        pl = D.plausibility
        if pl.kind == "probability":
            doc["plausibility"] = {"type": "probability",
                                   "weights": {s: render_rational(w) for s, w in pl.params.as_dict().items()}}
        elif pl.kind == "pair":
            doc["plausibility"] = {"type": "pair", "weights": [
                {s: render_rational(w) for s, w in ws.as_dict().items()} for ws in pl.params]}
        elif pl.kind == "identity":
            doc["plausibility"] = {"type": "identity"}
        else:
            doc["plausibility"] = {"type": "table", "entries": [
                [sorted_ids(x, sit.states), _emit_value(v, sit.states)] for x, v in pl.items()]}
    if parsed.preference is not None:
        doc["preference"] = [list(p) for p in parsed.preference.sorted_pairs()]
    return doc


def dumps(obj: Any) -> str:
    return json.dumps(to_json(obj) if not isinstance(obj, (dict, list)) else obj,
                      indent=2, ensure_ascii=False) + "\n"
