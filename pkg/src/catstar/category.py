"""Finite categories in the quadruple encoding <M, s, t, c>.

A category is a finite set of morphism identifiers (strings) together with
source and target maps ``M -> M`` and a set of composition triples
``(f, g, h)`` meaning ``h = f o g``.  Objects are the identity morphisms, i.e.
the image of the source map.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

DEFAULT_CAP = 10_000

Triple = tuple[str, str, str]


class CategoryError(Exception):
    """Base class for errors raised by the category engines."""


class StructuralError(CategoryError):
    """The input is not even a well-formed quadruple (unknown references, partial maps)."""


class CapExceededError(CategoryError):
    """A construction would exceed the configured size cap."""


@dataclass(frozen=True)
class Violation:
    clause: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.clause}: {', '.join(map(str, self.witness))}"


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def clauses(self) -> list[str]:
        return sorted({v.clause for v in self.violations})

    def __bool__(self) -> bool:
        return self.ok


def tup(*parts: object) -> str:
    """Identifier for a composite morphism built from parts, e.g. ``(f,g)``."""
    return "(" + ",".join(str(p) for p in parts) + ")"


@dataclass(frozen=True)
class ExplicitCategory:
    morphisms: frozenset
    src: Mapping[str, str]
    tgt: Mapping[str, str]
    comp: frozenset
    labels: Mapping[str, object] = field(default_factory=dict, compare=False, repr=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "morphisms", frozenset(self.morphisms))
        object.__setattr__(self, "src", dict(self.src))
        object.__setattr__(self, "tgt", dict(self.tgt))
        object.__setattr__(self, "comp", frozenset(tuple(t) for t in self.comp))
        object.__setattr__(self, "labels", dict(self.labels))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<ExplicitCategory{label} |M|={len(self.morphisms)} |Ob|={len(self.objects)}>"

    # -- derived structure -------------------------------------------------

    @cached_property
    def sorted_morphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self.morphisms))

    @cached_property
    def objects(self) -> tuple[str, ...]:
        return tuple(sorted({self.src[f] for f in self.morphisms if f in self.src}))

    @cached_property
    def _object_set(self) -> frozenset:
        return frozenset(self.objects)

    @cached_property
    def _homs(self) -> dict:
        homs: dict = defaultdict(list)
        for f in self.sorted_morphisms:
            homs[self.src[f], self.tgt[f]].append(f)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _table(self) -> dict:
        table: dict = {}
        for f, g, h in sorted(self.comp):
            table.setdefault((f, g), h)
        return table

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    def is_object(self, f: str) -> bool:
        return f in self._object_set

    def identity(self, x: str) -> str:
        if x not in self._object_set:
            raise CategoryError(f"unknown object {x!r}")
        return x

    def composable(self, f: str, g: str) -> bool:
        return self.src[f] == self.tgt[g]

    def compose(self, f: str, g: str) -> str:
        """Return ``f o g`` (``g`` first)."""
        try:
            return self._table[f, g]
        except KeyError:
            raise CategoryError(f"{f!r} and {g!r} are not composable") from None

    def compose_chain(self, *fs: str) -> str:
        """Compose right to left: ``compose_chain(f, g, h) = f o g o h``."""
        out = fs[-1]
        for f in reversed(fs[:-1]):
            out = self.compose(f, out)
        return out

    def label(self, f: str) -> object:
        return self.labels.get(f, f)

    def endomorphisms(self, x: str) -> tuple[str, ...]:
        return self.hom(x, x)

    def morphisms_into(self, y: str) -> list[str]:
        return [f for f in self.sorted_morphisms if self.tgt[f] == y]

    def morphisms_from(self, x: str) -> list[str]:
        return [f for f in self.sorted_morphisms if self.src[f] == x]

    def structural_problems(self) -> list[str]:
        problems = []
        for f in sorted(self.morphisms):
            if f not in self.src or f not in self.tgt:
                problems.append(f"source/target undefined for {f!r}")
            elif self.src[f] not in self.morphisms or self.tgt[f] not in self.morphisms:
                problems.append(f"source/target of {f!r} is not a morphism")
        extra = (set(self.src) | set(self.tgt)) - set(self.morphisms)
        for f in sorted(extra):
            problems.append(f"source/target given for unknown morphism {f!r}")
        for t in sorted(self.comp):
            if len(t) != 3:
                problems.append(f"composition entry {t!r} is not a triple")
                continue
            for m in t:
                if m not in self.morphisms:
                    problems.append(f"composition triple {t!r} references unknown morphism {m!r}")
        return problems


# ---------------------------------------------------------------------------
# axioms


def check_axioms(cat: ExplicitCategory) -> AxiomReport:
    """Check the five clauses of a quadruple category.

    Raises StructuralError when the quadruple is malformed; otherwise returns a
    report listing each violated clause with its witness tuple.
    """
    problems = cat.structural_problems()
    if problems:
        raise StructuralError("; ".join(problems))
    s, t, c = cat.src, cat.tgt, cat.comp
    out: list[Violation] = []
    ms = cat.sorted_morphisms
    for f in ms:
        if s[s[f]] != s[f] or t[s[f]] != s[f]:
            out.append(Violation("(ii)(1)", (f,)))
        if s[t[f]] != t[f] or t[t[f]] != t[f]:
            out.append(Violation("(ii)(2)", (f,)))
    by_pair: dict = defaultdict(list)
    for f, g, h in sorted(c):
        by_pair[f, g].append(h)
        if not (s[f] == t[g] and t[f] == t[h] and s[g] == s[h]):
            out.append(Violation("(iii)(1)", (f, g, h)))
    targets: dict = defaultdict(list)
    for g in ms:
        targets[t[g]].append(g)
    for f in ms:
        for g in targets.get(s[f], ()):
            hs = by_pair.get((f, g), [])
            if len(hs) != 1:
                out.append(Violation("(iii)(2)", (f, g, len(hs))))
    # unit laws, in the orientation dictated by (iii)(1): f o id_{sf} = f, id_{tf} o f = f
    for f in ms:
        if (f, s[f], f) not in c:
            out.append(Violation("(iv)", (f, s[f], f)))
        if (t[f], f, f) not in c:
            out.append(Violation("(iv)", (t[f], f, f)))
    first: dict = defaultdict(list)
    for f, g, h in c:
        first[f].append((g, h))
    for f1, f2, f12 in sorted(c):
        for f3, f123 in sorted(first.get(f12, ())):
            for f23 in by_pair.get((f2, f3), ()):
                if (f1, f23, f123) not in c:
                    out.append(Violation("(v)", (f1, f2, f3, f12, f23, f123)))
    return AxiomReport(tuple(out))


def make_category(
    morphisms: Iterable[str],
    src: Mapping[str, str],
    tgt: Mapping[str, str],
    comp: Iterable[Triple],
    *,
    labels: Mapping[str, object] | None = None,
    name: str = "",
) -> ExplicitCategory:
    return ExplicitCategory(frozenset(morphisms), src, tgt, frozenset(comp), labels or {}, name)


def complete_composition(
    morphisms: Iterable[str], src: Mapping[str, str], tgt: Mapping[str, str], comp: Iterable[Triple]
) -> set[Triple]:
    """Add the unit triples and close under the associativity rule."""
    ms = set(morphisms)
    c = set(map(tuple, comp))
    for f in ms:
        c.add((f, src[f], f))
        c.add((tgt[f], f, f))
    while True:
        by_pair: dict = defaultdict(set)
        first: dict = defaultdict(set)
        for f, g, h in c:
            by_pair[f, g].add(h)
            first[f].add((g, h))
        new = set()
        for f1, f2, f12 in c:
            for f3, f123 in first.get(f12, ()):
                for f23 in by_pair.get((f2, f3), ()):
                    if (f1, f23, f123) not in c:
                        new.add((f1, f23, f123))
        if not new:
            return c
        c |= new


# ---------------------------------------------------------------------------
# conventional presentation


@dataclass(frozen=True)
class ObjHomCategory:
    """Objects, hom-sets, identities and a partial composition map."""

    objects: tuple
    hom: Mapping[tuple, frozenset]
    identities: Mapping[str, str]
    compose: Mapping[tuple, str]

    __hash__ = None  # type: ignore[assignment]

    def hom_set(self, x, y) -> frozenset:
        return self.hom.get((x, y), frozenset())


def from_obj_hom(d: ObjHomCategory) -> ExplicitCategory:
    """Disjoint-union construction: M is the union of the hom-sets, s f = id_X, t f = id_Y."""
    owner: dict = {}
    for (x, y), fs in sorted(d.hom.items(), key=lambda kv: tuple(map(str, kv[0]))):
        for f in fs:
            if f in owner and owner[f] != (x, y):
                raise CategoryError(f"hom-sets are not disjoint: {f!r} lies in {owner[f]} and {(x, y)}")
            owner[f] = (x, y)
    for x in d.objects:
        ident = d.identities[x]
        if owner.get(ident) != (x, x):
            raise CategoryError(f"identity {ident!r} of {x!r} is not in hom({x!r}, {x!r})")
    src = {f: d.identities[x] for f, (x, _) in owner.items()}
    tgt = {f: d.identities[y] for f, (_, y) in owner.items()}
    comp = set()
    for (f, g), h in d.compose.items():
        comp.add((f, g, h))
    return make_category(owner, src, tgt, comp)


def to_obj_hom(cat: ExplicitCategory) -> ObjHomCategory:
    hom = {(x, y): frozenset(cat.hom(x, y)) for x in cat.objects for y in cat.objects}
    identities = {x: x for x in cat.objects}
    compose = {(f, g): h for (f, g), h in cat._table.items()}
    return ObjHomCategory(cat.objects, hom, identities, compose)


# ---------------------------------------------------------------------------
# constructors


def opposite(cat: ExplicitCategory) -> ExplicitCategory:
    comp = {(g, f, h) for f, g, h in cat.comp}
    return ExplicitCategory(cat.morphisms, cat.tgt, cat.src, comp, cat.labels, f"{cat.name}^op" if cat.name else "")


def product(a: ExplicitCategory, b: ExplicitCategory, cap: int = DEFAULT_CAP) -> ExplicitCategory:
    if len(a.morphisms) * len(b.morphisms) > cap:
        raise CapExceededError(f"product would have {len(a.morphisms) * len(b.morphisms)} morphisms (cap {cap})")
    names = {(f, g): tup(f, g) for f in a.morphisms for g in b.morphisms}
    src = {n: names[a.src[f], b.src[g]] for (f, g), n in names.items()}
    tgt = {n: names[a.tgt[f], b.tgt[g]] for (f, g), n in names.items()}
    comp = {
        (names[f1, g1], names[f2, g2], names[f3, g3])
        for f1, f2, f3 in a.comp
        for g1, g2, g3 in b.comp
    }
    labels = {n: fg for fg, n in names.items()}
    return make_category(names.values(), src, tgt, comp, labels=labels)


def terminal_category(name: str = "*") -> ExplicitCategory:
    return make_category([name], {name: name}, {name: name}, [(name, name, name)], name="1")


def discrete_category(objects: Iterable[str]) -> ExplicitCategory:
    objs = list(objects)
    return make_category(objs, {x: x for x in objs}, {x: x for x in objs}, [(x, x, x) for x in objs])


def empty_category() -> ExplicitCategory:
    return make_category([], {}, {}, [], name="0")


def full_subcategory(cat: ExplicitCategory, objects: Iterable[str]) -> ExplicitCategory:
    obs = set(objects)
    unknown = obs - set(cat.objects)
    if unknown:
        raise CategoryError(f"unknown objects {sorted(unknown)}")
    ms = [f for f in cat.morphisms if cat.src[f] in obs and cat.tgt[f] in obs]
    mset = set(ms)
    comp = {t for t in cat.comp if t[0] in mset and t[1] in mset}
    return make_category(
        ms,
        {f: cat.src[f] for f in ms},
        {f: cat.tgt[f] for f in ms},
        comp,
        labels={f: cat.labels[f] for f in ms if f in cat.labels},
    )


def slice_category(cat: ExplicitCategory, x: str) -> ExplicitCategory:
    """The category of objects over ``x``: pairs <Y, f: Y -> x>."""
    if not cat.is_object(x):
        raise CategoryError(f"unknown object {x!r}")
    over = cat.morphisms_into(x)
    names: dict = {}
    for f in over:
        for f2 in over:
            for g in cat.hom(cat.src[f], cat.src[f2]):
                if cat.compose(f2, g) == f:
                    names[g, f, f2] = f"[{f}]" if cat.is_object(g) else f"[{g}:{f}>{f2}]"
    src = {n: f"[{f}]" for (g, f, f2), n in names.items()}
    tgt = {n: f"[{f2}]" for (g, f, f2), n in names.items()}
    comp = set()
    by_src: dict = defaultdict(list)
    for (g, f, f2), n in names.items():
        by_src[f].append((g, f2, n))
    for (g1, f, f1), n1 in names.items():
        for g2, f2, n2 in by_src[f1]:
            comp.add((n2, n1, names[cat.compose(g2, g1), f, f2]))
    labels = {n: key for key, n in names.items()}
    return make_category(names.values(), src, tgt, comp, labels=labels, name=f"{cat.name}/{x}" if cat.name else "")


def slice_object(cat: ExplicitCategory, f: str) -> str:
    """Name, in a slice category, of the object given by the arrow ``f``."""
    return f"[{f}]"


def is_sieve(slice_cat: ExplicitCategory, subcat: ExplicitCategory | Iterable[str]) -> bool:
    """Whether a full subcategory of ``slice_cat`` is closed under precomposition."""
    if isinstance(subcat, ExplicitCategory):
        if not subcat.morphisms <= slice_cat.morphisms:
            raise CategoryError("not a subcategory of the slice")
        expected = full_subcategory(slice_cat, subcat.objects)
        if expected.morphisms != subcat.morphisms:
            raise CategoryError("subcategory is not full")
        obs = set(subcat.objects)
    else:
        obs = set(subcat)
        unknown = obs - set(slice_cat.objects)
        if unknown:
            raise CategoryError(f"unknown objects {sorted(unknown)}")
    return all(slice_cat.src[m] in obs for m in slice_cat.morphisms if slice_cat.tgt[m] in obs)


# ---------------------------------------------------------------------------
# morphism predicates


@dataclass(frozen=True)
class MorphismKind:
    iso: bool
    mono: bool
    epi: bool


def classify_morphism(cat: ExplicitCategory, f: str) -> MorphismKind:
    """Iso/mono/epi read directly off the composition triples."""
    if f not in cat.morphisms:
        raise CategoryError(f"unknown morphism {f!r}")
    obs = cat._object_set
    after: dict = defaultdict(set)  # h -> {g : <f, g, h> in c}
    before: dict = defaultdict(set)  # h -> {g : <g, f, h> in c}
    left_inv, right_inv = set(), set()
    for a, b, h in cat.comp:
        if a == f:
            after[h].add(b)
            if h in obs:
                right_inv.add(b)
        if b == f:
            before[h].add(a)
            if h in obs:
                left_inv.add(a)
    iso = bool(right_inv & left_inv)
    mono = all(len(gs) <= 1 for gs in after.values())
    epi = all(len(gs) <= 1 for gs in before.values())
    return MorphismKind(iso, mono, epi)


def isomorphisms_between(cat: ExplicitCategory, x: str, y: str) -> list[str]:
    return [f for f in cat.hom(x, y) if classify_morphism(cat, f).iso]


def inverse(cat: ExplicitCategory, f: str) -> str | None:
    for g in cat.hom(cat.tgt[f], cat.src[f]):
        if cat.compose(f, g) == cat.tgt[f] and cat.compose(g, f) == cat.src[f]:
            return g
    return None


# ---------------------------------------------------------------------------
# functors and natural transformations


@dataclass(frozen=True)
class FunctorTable:
    source: ExplicitCategory
    target: ExplicitCategory
    action: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "action", dict(self.action))

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, f: str) -> str:
        return self.action[f]

    def problems(self) -> list[str]:
        C, D, F = self.source, self.target, self.action
        out = []
        for f in C.sorted_morphisms:
            if f not in F:
                out.append(f"no image for {f!r}")
            elif F[f] not in D.morphisms:
                out.append(f"image of {f!r} is not a morphism of the target")
        if out:
            return out
        for f in C.sorted_morphisms:
            if F[C.src[f]] != D.src[F[f]]:
                out.append(f"Fs != s'F at {f!r}")
            if F[C.tgt[f]] != D.tgt[F[f]]:
                out.append(f"Ft != t'F at {f!r}")
        for f, g, h in sorted(C.comp):
            if (F[f], F[g], F[h]) not in D.comp:
                out.append(f"composition triple {(f, g, h)!r} not preserved")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def on_object(self, x: str) -> str:
        return self.action[x]

    def then(self, other: "FunctorTable") -> "FunctorTable":
        """``other o self``."""
        return FunctorTable(self.source, other.target, {f: other.action[g] for f, g in self.action.items()})


def identity_functor(cat: ExplicitCategory) -> FunctorTable:
    return FunctorTable(cat, cat, {f: f for f in cat.morphisms})


def constant_functor(source: ExplicitCategory, target: ExplicitCategory, x: str) -> FunctorTable:
    return FunctorTable(source, target, {f: x for f in source.morphisms})


@dataclass(frozen=True)
class NatTransTable:
    F: FunctorTable
    G: FunctorTable
    components: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))

    __hash__ = None  # type: ignore[assignment]

    def problems(self) -> list[str]:
        C, D = self.F.source, self.F.target
        out = []
        for x in C.objects:
            a = self.components.get(x)
            if a is None or D.src.get(a) != self.F(x) or D.tgt.get(a) != self.G(x):
                out.append(f"component at {x!r} is not a morphism {self.F(x)} -> {self.G(x)}")
        if out:
            return out
        for f in C.sorted_morphisms:
            x, y = C.src[f], C.tgt[f]
            if D.compose(self.G(f), self.components[x]) != D.compose(self.components[y], self.F(f)):
                out.append(f"naturality square fails at {f!r}")
        return out

    def is_valid(self) -> bool:
        return not self.problems()


def _backtrack(variables: list, domain, consistent) -> Iterator[dict]:
    """Plain depth-first search over ``variables`` in the given order."""
    assignment: dict = {}

    def go(i: int) -> Iterator[dict]:
        if i == len(variables):
            yield dict(assignment)
            return
        v = variables[i]
        for value in domain(v, assignment):
            assignment[v] = value
            if consistent(v, assignment):
                yield from go(i + 1)
            del assignment[v]

    yield from go(0)


def functors(source: ExplicitCategory, target: ExplicitCategory) -> Iterator[dict]:
    """All maps M_source -> M_target satisfying the functor conditions, in lexicographic order."""
    C, D = source, target
    order = list(C.objects) + [f for f in C.sorted_morphisms if not C.is_object(f)]
    involving: dict = defaultdict(list)
    for t in C.comp:
        for m in set(t):
            involving[m].append(t)
    position = {m: i for i, m in enumerate(order)}

    def domain(v, a):
        if C.is_object(v):
            return D.objects
        return D.hom(a[C.src[v]], a[C.tgt[v]])

    def consistent(v, a):
        i = position[v]
        for f, g, h in involving[v]:
            if max(position[f], position[g], position[h]) == i:
                if (a[f], a[g], a[h]) not in D.comp:
                    return False
        return True

    yield from _backtrack(order, domain, consistent)


def natural_transformations(F: FunctorTable, G: FunctorTable) -> Iterator[dict]:
    C, D = F.source, F.target
    order = list(C.objects)
    position = {x: i for i, x in enumerate(order)}
    squares: dict = defaultdict(list)
    for f in C.sorted_morphisms:
        x, y = C.src[f], C.tgt[f]
        squares[order[max(position[x], position[y])]].append(f)

    def domain(x, a):
        return D.hom(F(x), G(x))

    def consistent(v, a):
        for f in squares[v]:
            x, y = C.src[f], C.tgt[f]
            if D.compose(G(f), a[x]) != D.compose(a[y], F(f)):
                return False
        return True

    yield from _backtrack(order, domain, consistent)


def functor_category(C: ExplicitCategory, D: ExplicitCategory, cap: int = DEFAULT_CAP) -> ExplicitCategory:
    """Funct(C, D): functors as objects, natural families as morphisms."""
    fs = []
    for action in functors(C, D):
        fs.append(FunctorTable(C, D, action))
        if len(fs) > cap:
            raise CapExceededError(f"more than {cap} functors")
    fs.sort(key=lambda F: tuple(F(f) for f in C.sorted_morphisms))
    obs = C.objects
    names: dict = {}
    src, tgt, labels = {}, {}, {}
    for i, F in enumerate(fs):
        for j, G in enumerate(fs):
            for comps in natural_transformations(F, G):
                key = (i, j, tuple(comps[x] for x in obs))
                ident = i == j and all(comps[x] == F(x) for x in obs)
                n = f"F{i}" if ident else f"F{i}=>F{j}:" + ",".join(key[2])
                names[key] = n
                src[n], tgt[n] = f"F{i}", f"F{j}"
                labels[n] = (F, G, dict(comps)) if not ident else F
                if len(names) > cap:
                    raise CapExceededError(f"functor category exceeds {cap} morphisms")
    comp = set()
    by_src: dict = defaultdict(list)
    for key, n in names.items():
        by_src[key[0]].append((key, n))
    for (i, j, a), n1 in names.items():
        for (_, k, b), n2 in by_src[j]:
            composite = tuple(D.compose(b[p], a[p]) for p in range(len(obs)))
            comp.add((n2, n1, names[i, k, composite]))
    return make_category(names.values(), src, tgt, comp, labels=labels)


# ---------------------------------------------------------------------------
# isomorphism of categories


def _object_signature(cat: ExplicitCategory, x: str) -> tuple:
    outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
    ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
    return (len(cat.hom(x, x)), tuple(outs), tuple(ins))


def find_isomorphism(C: ExplicitCategory, D: ExplicitCategory) -> dict | None:
    """Exact search for a bijection M_C -> M_D preserving s, t and c.

    Candidates are scanned in lexicographic order, so the first isomorphism
    found is deterministic.
    """
    if (len(C.morphisms), len(C.objects), len(C.comp)) != (len(D.morphisms), len(D.objects), len(D.comp)):
        return None
    csig = {x: _object_signature(C, x) for x in C.objects}
    dsig = {y: _object_signature(D, y) for y in D.objects}
    if sorted(csig.values()) != sorted(dsig.values()):
        return None
    order = list(C.objects) + sorted(
        (f for f in C.morphisms if not C.is_object(f)), key=lambda f: (C.src[f], C.tgt[f], f)
    )
    position = {m: i for i, m in enumerate(order)}
    involving: dict = defaultdict(list)
    for t in C.comp:
        for m in set(t):
            involving[m].append(t)
    used: set = set()

    def domain(v, a):
        if C.is_object(v):
            return [y for y in D.objects if dsig[y] == csig[v] and y not in used]
        return [g for g in D.hom(a[C.src[v]], a[C.tgt[v]]) if g not in used]

    def consistent(v, a):
        i = position[v]
        if C.is_object(v):
            for x in order[:i]:
                if not C.is_object(x):
                    break
                if len(C.hom(x, v)) != len(D.hom(a[x], a[v])) or len(C.hom(v, x)) != len(D.hom(a[v], a[x])):
                    return False
            return True
        for f, g, h in involving[v]:
            if max(position[f], position[g], position[h]) == i and (a[f], a[g], a[h]) not in D.comp:
                return False
        return True

    assignment: dict = {}

    def go(i: int) -> dict | None:
        if i == len(order):
            return dict(assignment)
        v = order[i]
        for value in domain(v, assignment):
            assignment[v] = value
            used.add(value)
            if consistent(v, assignment):
                found = go(i + 1)
                if found is not None:
                    return found
            used.discard(value)
            del assignment[v]
        return None

    return go(0)


def is_isomorphic(C: ExplicitCategory, D: ExplicitCategory) -> bool:
    return find_isomorphism(C, D) is not None


def rename(cat: ExplicitCategory, mapping: Mapping[str, str]) -> ExplicitCategory:
    """Transport a category along an injective renaming of its morphisms."""
    r = lambda f: mapping.get(f, f)  # noqa: E731
    ms = [r(f) for f in cat.morphisms]
    if len(set(ms)) != len(ms):
        raise CategoryError("renaming is not injective")
    return make_category(
        ms,
        {r(f): r(cat.src[f]) for f in cat.morphisms},
        {r(f): r(cat.tgt[f]) for f in cat.morphisms},
        {(r(f), r(g), r(h)) for f, g, h in cat.comp},
        labels={r(f): v for f, v in cat.labels.items()},
        name=cat.name,
    )


def parallel_pairs(cat: ExplicitCategory) -> Iterator[tuple[str, str]]:
    for (x, y), fs in sorted(cat._homs.items()):
        for f, g in itertools.combinations(fs, 2):
            yield f, g
