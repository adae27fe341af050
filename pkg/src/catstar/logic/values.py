"""Superstructure values of bounded rank: base atoms and hereditarily finite sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Union

DEFAULT_N_MAX = 6
PAIR_ENCODINGS = ("paper", "kuratowski")


class RankOverflowError(ValueError):
    """A constructed value would exceed the configured rank bound."""


@dataclass(frozen=True)
class Atom:
    """A base element. Atoms are not sets and have rank 0."""

    name: str

    @property
    def rank(self) -> int:
        return 0

    @property
    def sort_key(self) -> tuple:
        return (0, self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SSet:
    """A finite set of values; equality is structural."""

    elements: frozenset = frozenset()
    rank: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        els = frozenset(self.elements)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "rank", 1 + max((e.rank for e in els), default=0))

    @cached_property
    def sort_key(self) -> tuple:
        return (1, self.rank, tuple(sorted(e.sort_key for e in self.elements)))

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda e: e.sort_key))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self) + "}"


SValue = Union[Atom, SSet]
EMPTY = SSet()


def is_set(v: SValue) -> bool:
    return isinstance(v, SSet)


def check_rank(v: SValue, n_max: int | None = DEFAULT_N_MAX) -> SValue:
    if n_max is not None and v.rank > n_max:
        raise RankOverflowError(f"value of rank {v.rank} exceeds the bound {n_max}")
    return v


def make_set(elements: Iterable[SValue], n_max: int | None = DEFAULT_N_MAX) -> SSet:
    return check_rank(SSet(frozenset(elements)), n_max)


def sorted_values(values: Iterable[SValue]) -> list[SValue]:
    return sorted(values, key=lambda e: e.sort_key)


def make_pair(a: SValue, b: SValue, encoding: str = "paper", n_max: int | None = DEFAULT_N_MAX) -> SSet:
    """<a, b> as {a, {a, b}} (default) or as the Kuratowski pair {{a}, {a, b}}."""
    ab = SSet(frozenset((a, b)))
    if encoding == "paper":
        out = SSet(frozenset((a, ab)))
    elif encoding == "kuratowski":
        out = SSet(frozenset((SSet(frozenset((a,))), ab)))
    else:
        raise ValueError(f"unknown pair encoding {encoding!r}")
    return check_rank(out, n_max)


def make_tuple(*items: SValue, encoding: str = "paper", n_max: int | None = DEFAULT_N_MAX) -> SSet:
    """<a1, ..., an> nested to the left: <<a1, a2>, a3> and so on."""
    if len(items) < 2:
        raise ValueError("tuples need at least two components")
    out = make_pair(items[0], items[1], encoding, n_max)
    for x in items[2:]:
        out = make_pair(out, x, encoding, n_max)
    return out


def _candidates(e: SValue):
    if isinstance(e, SSet):
        for m in e.elements:
            yield m
            if isinstance(m, SSet):
                yield from m.elements


def unpair(e: SValue, encoding: str = "paper") -> tuple[SValue, SValue] | None:
    """Inverse of make_pair, or None when ``e`` is not a pair."""
    if not isinstance(e, SSet):
        return None
    seen = set(_candidates(e))
    for a in seen:
        for b in seen:
            if make_pair(a, b, encoding, None) == e:
                return a, b
    return None


def _paper_second(e: SSet, x: SValue) -> SValue | None:
    """The y with e = {x, {x, y}}, if any."""
    if x not in e.elements or len(e.elements) != 2:
        return None
    (m,) = [v for v in e.elements if v != x]
    if not isinstance(m, SSet) or x not in m.elements or len(m.elements) > 2:
        return None
    rest = [v for v in m.elements if v != x]
    return rest[0] if rest else x


@lru_cache(maxsize=4096)
def _graph(f: SSet, encoding: str) -> dict:
    """x -> set of y with <x, y> in f."""
    out: dict = {}
    for e in f.elements:
        if encoding == "paper":
            if not isinstance(e, SSet) or len(e.elements) != 2:
                continue
            for x in e.elements:
                y = _paper_second(e, x)
                if y is not None:
                    out.setdefault(x, set()).add(y)
        else:
            p = unpair(e, encoding)
            if p is not None:
                out.setdefault(p[0], set()).add(p[1])
    return out


def apply(f: SValue, x: SValue, encoding: str = "paper") -> SValue:
    """(f angle x): the unique y with <x, y> in f, otherwise the empty set."""
    if not isinstance(f, SSet):
        return EMPTY
    ys = _graph(f, encoding).get(x, ())
    return next(iter(ys)) if len(ys) == 1 else EMPTY


def atoms(v: SValue) -> set[Atom]:
    if isinstance(v, Atom):
        return {v}
    out: set = set()
    for e in v.elements:
        out |= atoms(e)
    return out


def function_value(mapping: dict, encoding: str = "paper", n_max: int | None = DEFAULT_N_MAX) -> SSet:
    """The graph {<x, f(x)>} of a finite map as a set."""
    return make_set((make_pair(x, y, encoding, n_max) for x, y in mapping.items()), n_max)


def power_set(v: SSet, n_max: int | None = DEFAULT_N_MAX) -> SSet:
    els = sorted_values(v.elements)
    subsets = (SSet(frozenset(c)) for k in range(len(els) + 1) for c in itertools.combinations(els, k))
    return make_set(subsets, n_max)


def atom(name: str) -> Atom:
    return Atom(name)


def hset(*elements: SValue) -> SSet:
    return SSet(frozenset(elements))
