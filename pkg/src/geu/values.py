"""Carrier values for utility, plausibility and valuation domains.

Values form a closed union:

* :class:`fractions.Fraction` -- exact rationals (standard domain)
* :class:`Pair` -- pairs of rationals (the two-measure domains)
* ``frozenset`` of ``(state, consequence)`` tuples -- a *pair set*, the
  valuation carrier of the canonical construction (an act is its own graph)
* ``frozenset`` of state ids -- events, the plausibility carrier of the
  identity measure
* :class:`Tagged` / :class:`TaggedConsequence` -- the fixed-domain construction
* ``str`` -- a symbol of an explicit finite table domain (or a consequence
  used as its own utility)

All variants are immutable and compare structurally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, NamedTuple, Sequence


class Pair(NamedTuple):
    first: Fraction
    second: Fraction

    def __str__(self) -> str:
        return f"({render_rational(self.first)}, {render_rational(self.second)})"


class Tagged(NamedTuple):
    """A pair set together with a set of interned preference ids."""

    pairs: frozenset
    tags: frozenset


class TaggedConsequence(NamedTuple):
    """Utility value of the fixed-domain construction: ``(c, tag set)``."""

    consequence: str
    tags: frozenset


def rational(x: Any) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3/10"``, ``"2"`` or
    ``"0.25"``.  Floats are rejected: they would make order checks inexact.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def pair(a: Any, b: Any) -> Pair:
    return Pair(rational(a), rational(b))


def render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_pairset(v: Any) -> bool:
    return isinstance(v, frozenset) and all(isinstance(e, tuple) and len(e) == 2 for e in v)


def _index_key(order: Sequence[str] | None):
    if order is None:
        return str
    pos = {x: i for i, x in enumerate(order)}
    return lambda x: (pos.get(x, len(pos)), str(x))


def sorted_ids(ids, order: Sequence[str] | None = None) -> list:
    """Sort ids by their declaration position (falls back to string order)."""
    return sorted(ids, key=_index_key(order))


def to_json(value: Any, states: Sequence[str] | None = None,
            consequences: Sequence[str] | None = None) -> Any:
    """JSON-compatible canonical form of a value.

    Sets are emitted sorted by declaration order so that equal values always
    serialize to identical text.
    """
    if isinstance(value, Fraction):
        return render_rational(value)
    if isinstance(value, Pair):
        return [render_rational(value.first), render_rational(value.second)]
    if isinstance(value, Tagged):
        return {"pairs": to_json(value.pairs, states, consequences),
                "tags": sorted(value.tags)}
    if isinstance(value, TaggedConsequence):
        return {"consequence": value.consequence, "tags": sorted(value.tags)}
    if isinstance(value, frozenset):
        if is_pairset(value) and value:
            skey, ckey = _index_key(states), _index_key(consequences)
            return [[s, c] for s, c in sorted(value, key=lambda e: (skey(e[0]), ckey(e[1])))]
        return sorted_ids(value, states)
    if isinstance(value, tuple):
        return [to_json(v, states, consequences) for v in value]
    if isinstance(value, (str, int)):
        return value
    if isinstance(value, dict):
        return {str(k): to_json(v, states, consequences) for k, v in value.items()}
    if isinstance(value, list):
        return [to_json(v, states, consequences) for v in value]
    if value is None or isinstance(value, bool):
        return value
    raise TypeError(f"not a value: {value!r}")


def render(value: Any, states: Sequence[str] | None = None,
           consequences: Sequence[str] | None = None) -> str:
    """Canonical one-line text rendering (``3/10``, ``(1/2, 1/4)``, ``{(s1,c1)}``)."""
    if isinstance(value, Fraction):
        return render_rational(value)
    if isinstance(value, Pair):
        return str(value)
    if isinstance(value, Tagged):
        return f"<{render(value.pairs, states, consequences)}; {{{','.join(sorted(value.tags))}}}>"
    if isinstance(value, TaggedConsequence):
        return f"<{value.consequence}; {{{','.join(sorted(value.tags))}}}>"
    if isinstance(value, frozenset):
        items = to_json(value, states, consequences)
        if items and isinstance(items[0], list):
            return "{" + ",".join(f"({s},{c})" for s, c in items) + "}"
        return "{" + ",".join(map(str, items)) + "}"
    return str(value)
