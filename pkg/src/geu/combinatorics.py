"""Deterministic enumerations: events, set partitions, simple acts."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import BudgetExceeded


def subsets(items: Sequence) -> list[frozenset]:
    """All subsets of ``items``, lexicographic in declaration-index order.

    For ``(s1, s2)`` this is ``{}, {s1}, {s1,s2}, {s2}``.
    """
    n = len(items)
    index_tuples = sorted(c for r in range(n + 1) for c in combinations(range(n), r))
    return [frozenset(items[i] for i in t) for t in index_tuples]


def nonempty_proper_subsets(items: Sequence) -> list[frozenset]:
    full = frozenset(items)
    return [x for x in subsets(items) if x and x != full]


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Number of set partitions of an n-element set."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    while True:
        yield tuple(a)
        # rightmost position that can still be incremented
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0


def set_partitions(items: Sequence, budget: int | None = None) -> Iterator[tuple[frozenset, ...]]:
    """Partitions of ``items`` into nonempty blocks, in restricted-growth order.

    Raises :class:`BudgetExceeded` up front when Bell(n) > budget.
    """
    n = len(items)
    if budget is not None and bell(n) > budget:
        raise BudgetExceeded("set partitions", bell(n), budget)
    for rgs in restricted_growth_strings(n):
        blocks: list[set] = [set() for _ in range(max(rgs, default=-1) + 1)]
        for item, b in zip(items, rgs):
            blocks[b].add(item)
        yield tuple(frozenset(b) for b in blocks)


def all_functions(domain_size: int, codomain: Sequence, budget: int | None = None) -> Iterator[tuple]:
    """All tuples in ``codomain ** domain_size``, lexicographic in declaration order."""
    required = len(codomain) ** domain_size
    if budget is not None and required > budget:
        raise BudgetExceeded("simple acts", required, budget)
    return product(codomain, repeat=domain_size)
