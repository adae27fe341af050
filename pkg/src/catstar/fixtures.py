"""Small categories used throughout the tests, the corpus and the CLI."""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Sequence

from .category import (
    ExplicitCategory,
    complete_composition,
    discrete_category,
    make_category,
    product,
    terminal_category,
)


def walking_arrow() -> ExplicitCategory:
    """Two objects a, b and one arrow f: a -> b."""
    ms = ["id_a", "id_b", "f"]
    src = {"id_a": "id_a", "id_b": "id_b", "f": "id_a"}
    tgt = {"id_a": "id_a", "id_b": "id_b", "f": "id_b"}
    comp = [("id_a", "id_a", "id_a"), ("id_b", "id_b", "id_b"), ("f", "id_a", "f"), ("id_b", "f", "f")]
    return make_category(ms, src, tgt, comp, name="2")


def poset_category(
    elements: Sequence, leq: Callable[[object, object], bool], *, sep: str = "->", name: str = ""
) -> ExplicitCategory:
    """One arrow x -> y whenever leq(x, y). Identities are named ``str(x)``."""
    key = {x: str(x) for x in elements}
    if len(set(key.values())) != len(key):
        raise ValueError("element names collide")
    arrow = {}
    for x in elements:
        for y in elements:
            if leq(x, y):
                arrow[x, y] = key[x] if x == y else f"{key[x]}{sep}{key[y]}"
    src = {n: key[x] for (x, _), n in arrow.items()}
    tgt = {n: key[y] for (_, y), n in arrow.items()}
    comp = [
        (arrow[y, z], arrow[x, y], arrow[x, z])
        for (x, y) in arrow
        for (y2, z) in arrow
        if y2 == y
    ]
    labels = {n: xy if xy[0] != xy[1] else xy[0] for xy, n in arrow.items()}
    return make_category(arrow.values(), src, tgt, comp, labels=labels, name=name)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def divisibility(n: int = 12, *, exclude: Iterable[int] = ()) -> ExplicitCategory:
    """Div(n): divisors of n with an arrow m -> k iff m | k."""
    skip = set(exclude)
    ds = [d for d in divisors(n) if d not in skip]
    return poset_category(ds, lambda a, b: b % a == 0, sep="|", name=f"Div({n})")


def z2_monoid() -> ExplicitCategory:
    """The group Z/2 as a one-object category: identity e and involution s."""
    ms = ["e", "s"]
    comp = [("e", "e", "e"), ("e", "s", "s"), ("s", "e", "s"), ("s", "s", "e")]
    return make_category(ms, {m: "e" for m in ms}, {m: "e" for m in ms}, comp, name="Z/2")


def cyclic_monoid(n: int) -> ExplicitCategory:
    ms = [f"r{k}" for k in range(n)]
    comp = [(f"r{a}", f"r{b}", f"r{(a + b) % n}") for a in range(n) for b in range(n)]
    return make_category(ms, {m: "r0" for m in ms}, {m: "r0" for m in ms}, comp, name=f"Z/{n}")


def _subset_name(s: tuple) -> str:
    return "".join(map(str, s)) if s else "e"


def finset_category(n: int = 2) -> ExplicitCategory:
    """All functions between subsets of {0, ..., n-1}.

    Identities are named by the subset ("e" for the empty set, "01" for
    {0, 1}); any other function is ``dom>cod[values]``.
    """
    subsets = [s for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    names = {}
    for a in subsets:
        for b in subsets:
            for values in itertools.product(b, repeat=len(a)):
                if a == b and values == a:
                    name = _subset_name(a)
                else:
                    name = f"{_subset_name(a)}>{_subset_name(b)}[{''.join(map(str, values))}]"
                names[a, b, values] = name
    src = {nm: _subset_name(a) for (a, _, _), nm in names.items()}
    tgt = {nm: _subset_name(b) for (_, b, _), nm in names.items()}
    by_dom: dict = {}
    for key in names:
        by_dom.setdefault(key[0], []).append(key)
    comp = []
    for (a, b, g) in names:
        pos = {x: i for i, x in enumerate(b)}
        for (_, c, f) in by_dom.get(b, []):
            fg = tuple(f[pos[x]] for x in g)
            comp.append((names[b, c, f], names[a, b, g], names[a, c, fg]))
    labels = {nm: (a, b, dict(zip(a, v))) for (a, b, v), nm in names.items()}
    return make_category(names.values(), src, tgt, comp, labels=labels, name=f"FinSet({n})")


def truncated_finset() -> ExplicitCategory:
    """FinSet restricted to subsets of {0, 1}: 4 objects, 18 morphisms."""
    return finset_category(2)


def terminal() -> ExplicitCategory:
    return terminal_category()


def discrete(n: int) -> ExplicitCategory:
    return discrete_category([f"x{i}" for i in range(n)])


def refinement_poset(points: Sequence = (0, 1, 2)) -> ExplicitCategory:
    """Partitions of a finite set ordered by refinement (finer -> coarser).

    Common refinements always exist, so this poset is cofiltered.
    """
    pts = list(points)

    def partitions(items):
        if not items:
            yield ()
            return
        first, rest = items[0], items[1:]
        for p in partitions(rest):
            for i in range(len(p)):
                yield tuple(sorted(p[:i] + (tuple(sorted((first,) + p[i])),) + p[i + 1:]))
            yield tuple(sorted(((first,),) + p))

    parts = sorted(set(partitions(pts)))

    def finer(p, q):
        return all(any(set(b) <= set(c) for c in q) for b in p)

    name = {p: "/".join("".join(map(str, b)) for b in p) for p in parts}

    labels = {name[p]: p for p in parts}
    return poset_category([name[p] for p in parts], lambda a, b: finer(labels[a], labels[b]), name="Refine")


# ---------------------------------------------------------------------------
# randomized


def random_poset_relation(rng: random.Random, n: int, density: float = 0.4) -> set[tuple[int, int]]:
    """A random partial order on range(n), compatible with the natural order."""
    rel = {(i, i) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rel.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> ExplicitCategory:
    rel = random_poset_relation(rng, n, density)
    return poset_category([f"p{i}" for i in range(n)], lambda a, b: (int(a[1:]), int(b[1:])) in rel)


def random_cofiltered_poset(rng: random.Random, n: int, density: float = 0.4) -> ExplicitCategory:
    """A random poset on n objects with a least element, hence cofiltered.

    Arrows run from smaller to larger elements, so the least element maps to
    everything.
    """
    rel = random_poset_relation(rng, n, density)
    rel |= {(0, j) for j in range(n)}
    return poset_category([f"p{i}" for i in range(n)], lambda a, b: (int(a[1:]), int(b[1:])) in rel)


def random_small_category(rng: random.Random, max_morphisms: int = 12) -> ExplicitCategory:
    """A random finite category: a poset, a cyclic group, or a product of both."""
    while True:
        kind = rng.choice(["poset", "poset", "group", "product", "finset"])
        if kind == "poset":
            cat = random_poset(rng, rng.randint(1, 4))
        elif kind == "group":
            cat = cyclic_monoid(rng.randint(1, 4))
        elif kind == "finset":
            cat = finset_category(1)
        else:
            cat = product(random_poset(rng, rng.randint(1, 2)), cyclic_monoid(rng.randint(1, 3)))
        if len(cat.morphisms) <= max_morphisms:
            return cat


def from_arrows(objects: Iterable[str], arrows: dict[str, tuple[str, str]], comp: Iterable, complete: bool = True):
    """Assemble a category from named objects, arrows ``name -> (src, tgt)`` and composites."""
    objs = list(objects)
    src = {x: x for x in objs}
    tgt = {x: x for x in objs}
    for a, (x, y) in arrows.items():
        src[a], tgt[a] = x, y
    ms = objs + list(arrows)
    c = set(map(tuple, comp))
    if complete:
        c = complete_composition(ms, src, tgt, c)
    return make_category(ms, src, tgt, c)
