"""Representability, limits, colimits and adjunctions by exhaustive search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .category import (
    DEFAULT_CAP,
    CapExceededError,
    CategoryError,
    ExplicitCategory,
    FunctorTable,
    complete_composition,
    empty_category,
    identity_functor,
    make_category,
    natural_transformations,
    opposite,
    parallel_pairs,
)


# ---------------------------------------------------------------------------
# presheaves


@dataclass(frozen=True)
class PresheafTable:
    """A contravariant set-valued functor on ``base``.

    ``restriction[f]`` for ``f: X -> Y`` maps elements of ``values[Y]`` to
    elements of ``values[X]``.
    """

    base: ExplicitCategory
    values: Mapping[str, tuple]
    restriction: Mapping[str, Mapping]

    __hash__ = None  # type: ignore[assignment]

    def problems(self) -> list[str]:
        C = self.base
        out = []
        for f in C.sorted_morphisms:
            r = self.restriction.get(f)
            x, y = C.src[f], C.tgt[f]
            if r is None or set(r) != set(self.values[y]) or not set(r.values()) <= set(self.values[x]):
                out.append(f"restriction along {f!r} is not a map F({y}) -> F({x})")
        if out:
            return out
        for x in C.objects:
            if any(self.restriction[x][v] != v for v in self.values[x]):
                out.append(f"restriction along identity {x!r} is not the identity")
        for f, g, h in sorted(C.comp):
            # F(f o g) = F(g) o F(f)
            for v in self.values[C.tgt[f]]:
                if self.restriction[h][v] != self.restriction[g][self.restriction[f][v]]:
                    out.append(f"restriction does not respect {(f, g, h)!r}")
                    break
        return out

    def is_valid(self) -> bool:
        return not self.problems()


def yoneda_presheaf(cat: ExplicitCategory, x: str) -> PresheafTable:
    """h_x = hom(-, x), restricting by precomposition."""
    if not cat.is_object(x):
        raise CategoryError(f"unknown object {x!r}")
    values = {y: cat.hom(y, x) for y in cat.objects}
    restriction = {f: {g: cat.compose(g, f) for g in values[cat.tgt[f]]} for f in cat.morphisms}
    return PresheafTable(cat, values, restriction)


def constant_presheaf(cat: ExplicitCategory, value: tuple) -> PresheafTable:
    values = {y: tuple(value) for y in cat.objects}
    restriction = {f: {v: v for v in value} for f in cat.morphisms}
    return PresheafTable(cat, values, restriction)


@dataclass(frozen=True)
class Representation:
    """A representing object, its universal element and the bijection family h_X -> F."""

    object: str
    element: object
    components: Mapping[str, Mapping]

    __hash__ = None  # type: ignore[assignment]


def _sort_key(v):
    return (type(v).__name__, repr(v))


def representations_at(presheaf: PresheafTable, x: str) -> Iterator[Representation]:
    """All natural bijections h_x -> F.

    A natural family h_x -> F is determined by the image u of the identity of
    x, with component at Y sending g to F(g)(u); iterating over u therefore
    runs through every natural family exactly once.
    """
    C = presheaf.base
    for u in sorted(presheaf.values[x], key=_sort_key):
        comps = {}
        for y in C.objects:
            comp = {g: presheaf.restriction[g][u] for g in C.hom(y, x)}
            if len(set(comp.values())) != len(comp) or set(comp.values()) != set(presheaf.values[y]):
                break
            comps[y] = comp
        else:
            yield Representation(x, u, comps)


def is_representable(presheaf: PresheafTable) -> Representation | None:
    """The first representing object in identifier order, with its universal element."""
    for x in presheaf.base.objects:
        for rep in representations_at(presheaf, x):
            return rep
    return None


# ---------------------------------------------------------------------------
# diagrams and cones


@dataclass(frozen=True)
class ConeWitness:
    apex: str
    legs: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "legs", dict(self.legs))

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> tuple:
        return (self.apex, tuple(sorted(self.legs.items())))


def cones(diagram: FunctorTable, apex: str) -> Iterator[dict]:
    """All cones over ``diagram`` with the given apex, in lexicographic order."""
    I, C, D = diagram.source, diagram.target, diagram
    order = list(I.objects)
    pos = {i: n for n, i in enumerate(order)}
    checks: dict = {i: [] for i in order}
    for phi in I.sorted_morphisms:
        a, b = I.src[phi], I.tgt[phi]
        checks[order[max(pos[a], pos[b])]].append(phi)
    legs: dict = {}

    def go(n: int) -> Iterator[dict]:
        if n == len(order):
            yield dict(legs)
            return
        i = order[n]
        for leg in C.hom(apex, D(i)):
            legs[i] = leg
            if all(C.compose(D(phi), legs[I.src[phi]]) == legs[I.tgt[phi]] for phi in checks[i]):
                yield from go(n + 1)
            del legs[i]

    yield from go(0)


def cone_presheaf(diagram: FunctorTable) -> PresheafTable:
    """X -> set of cones with apex X, restricting by precomposition of every leg."""
    I, C = diagram.source, diagram.target
    order = I.objects
    values = {x: tuple(tuple(c[i] for i in order) for c in cones(diagram, x)) for x in C.objects}
    restriction = {
        f: {c: tuple(C.compose(leg, f) for leg in c) for c in values[C.tgt[f]]} for f in C.sorted_morphisms
    }
    return PresheafTable(C, values, restriction)


@dataclass(frozen=True)
class LimitResult:
    cone: ConeWitness
    mediating: Mapping[tuple, str] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    @property
    def apex(self) -> str:
        return self.cone.apex


def limit(diagram: FunctorTable) -> LimitResult | None:
    """The terminal cone over ``diagram`` if it exists.

    Mediating morphisms are recorded for every cone, keyed by
    ``(apex, legs in index-object order)``.
    """
    F = cone_presheaf(diagram)
    rep = is_representable(F)
    if rep is None:
        return None
    order = diagram.source.objects
    legs = dict(zip(order, rep.element))
    mediating = {}
    for y, comp in rep.components.items():
        for g, c in comp.items():
            mediating[(y, c)] = g
    return LimitResult(ConeWitness(rep.object, legs), mediating)


def opposite_diagram(diagram: FunctorTable) -> FunctorTable:
    return FunctorTable(opposite(diagram.source), opposite(diagram.target), diagram.action)


def colimit(diagram: FunctorTable) -> LimitResult | None:
    """The initial cocone, computed as a limit in the opposite category."""
    return limit(opposite_diagram(diagram))


# index shapes -------------------------------------------------------------


def _shape(objects, arrows) -> ExplicitCategory:
    ms = list(objects) + list(arrows)
    src = {x: x for x in objects}
    tgt = {x: x for x in objects}
    for a, (x, y) in arrows.items():
        src[a], tgt[a] = x, y
    return make_category(ms, src, tgt, complete_composition(ms, src, tgt, ()))


def discrete_shape(n: int) -> ExplicitCategory:
    return _shape([f"i{k}" for k in range(n)], {})


def cospan_shape() -> ExplicitCategory:
    return _shape(["a", "b", "c"], {"u": ("a", "c"), "v": ("b", "c")})


def span_shape() -> ExplicitCategory:
    return _shape(["a", "b", "c"], {"u": ("c", "a"), "v": ("c", "b")})


def parallel_shape() -> ExplicitCategory:
    return _shape(["a", "b"], {"u": ("a", "b"), "v": ("a", "b")})


def diagram_from(index: ExplicitCategory, target: ExplicitCategory, images: Mapping[str, str]) -> FunctorTable:
    """Build a diagram from images of the non-identity arrows plus objects; identities follow."""
    action = dict(images)
    for x in index.objects:
        if x not in action:
            raise CategoryError(f"no image for index object {x!r}")
    d = FunctorTable(index, target, action)
    problems = d.problems()
    if problems:
        raise CategoryError("; ".join(problems))
    return d


def empty_diagram(target: ExplicitCategory) -> FunctorTable:
    return FunctorTable(empty_category(), target, {})


def pair_diagram(target: ExplicitCategory, x: str, y: str) -> FunctorTable:
    return diagram_from(discrete_shape(2), target, {"i0": x, "i1": y})


def cospan_diagram(target: ExplicitCategory, f: str, g: str) -> FunctorTable:
    return diagram_from(
        cospan_shape(), target, {"a": target.src[f], "b": target.src[g], "c": target.tgt[f], "u": f, "v": g}
    )


def span_diagram(target: ExplicitCategory, f: str, g: str) -> FunctorTable:
    return diagram_from(
        span_shape(), target, {"c": target.src[f], "a": target.tgt[f], "b": target.tgt[g], "u": f, "v": g}
    )


def parallel_diagram(target: ExplicitCategory, f: str, g: str) -> FunctorTable:
    return diagram_from(parallel_shape(), target, {"a": target.src[f], "b": target.tgt[f], "u": f, "v": g})


# special limits -----------------------------------------------------------


@dataclass(frozen=True)
class ChecklistItem:
    name: str
    holds: bool
    witness: object = None
    counterexample: object = None


SPECIAL_LIMIT_ITEMS = (
    "initial object",
    "final object",
    "null object",
    "finite direct sums",
    "finite direct products",
    "finite fibred sums",
    "finite fibred products",
    "difference cokernels",
    "difference kernels",
)


def _forall(name, diagrams, solver) -> ChecklistItem:
    count = 0
    for label, d in diagrams:
        if solver(d) is None:
            return ChecklistItem(name, False, counterexample=label)
        count += 1
    return ChecklistItem(name, True, witness=f"{count} diagrams")


def special_limits(cat: ExplicitCategory, items: tuple[str, ...] = SPECIAL_LIMIT_ITEMS) -> dict[str, ChecklistItem]:
    """Every item of the finite-limit checklist with a witness or a failing diagram."""
    obs = cat.objects
    report: dict = {}
    init = colimit(empty_diagram(cat))
    final = limit(empty_diagram(cat))

    def single(name, res):
        return ChecklistItem(name, res is not None, witness=res.apex if res else None,
                             counterexample=None if res else "empty diagram")

    pairs = [(x, y) for x, y in itertools.combinations_with_replacement(obs, 2)]
    cospans = [(f, g) for f in cat.sorted_morphisms for g in cat.sorted_morphisms
               if cat.tgt[f] == cat.tgt[g] and f <= g]
    spans = [(f, g) for f in cat.sorted_morphisms for g in cat.sorted_morphisms
             if cat.src[f] == cat.src[g] and f <= g]
    parallels = list(parallel_pairs(cat))
    for name in items:
        if name == "initial object":
            report[name] = single(name, init)
        elif name == "final object":
            report[name] = single(name, final)
        elif name == "null object":
            inits = {x for x in obs if is_initial_object(cat, x)}
            finals = {x for x in obs if is_final_object(cat, x)}
            both = sorted(inits & finals)
            report[name] = ChecklistItem(name, bool(both), witness=both[0] if both else None,
                                         counterexample=None if both else "no object is both initial and final")
        elif name == "finite direct sums":
            if init is None:
                report[name] = ChecklistItem(name, False, counterexample="empty sum")
            else:
                report[name] = _forall(name, ((("sum",) + p, pair_diagram(cat, *p)) for p in pairs), colimit)
        elif name == "finite direct products":
            if final is None:
                report[name] = ChecklistItem(name, False, counterexample="empty product")
            else:
                report[name] = _forall(name, ((("product",) + p, pair_diagram(cat, *p)) for p in pairs), limit)
        elif name == "finite fibred sums":
            report[name] = _forall(name, ((("pushout",) + p, span_diagram(cat, *p)) for p in spans), colimit)
        elif name == "finite fibred products":
            report[name] = _forall(name, ((("pullback",) + p, cospan_diagram(cat, *p)) for p in cospans), limit)
        elif name == "difference cokernels":
            report[name] = _forall(name, ((("coequalizer",) + p, parallel_diagram(cat, *p)) for p in parallels), colimit)
        elif name == "difference kernels":
            report[name] = _forall(name, ((("equalizer",) + p, parallel_diagram(cat, *p)) for p in parallels), limit)
        else:
            raise ValueError(f"unknown checklist item {name!r}")
    return report


def is_initial_object(cat: ExplicitCategory, x: str) -> bool:
    return all(len(cat.hom(x, y)) == 1 for y in cat.objects)


def is_final_object(cat: ExplicitCategory, x: str) -> bool:
    return all(len(cat.hom(y, x)) == 1 for y in cat.objects)


# ---------------------------------------------------------------------------
# adjunctions


@dataclass(frozen=True)
class Adjunction:
    unit: Mapping[str, str]
    counit: Mapping[str, str]

    __hash__ = None  # type: ignore[assignment]


def find_adjunction(F: FunctorTable, G: FunctorTable, cap: int = DEFAULT_CAP) -> Adjunction | None:
    """First (unit, counit) pair in lexicographic order satisfying both triangle identities."""
    C, D = F.source, F.target
    if G.source != D or G.target != C:
        raise CategoryError("functors are not composable in both orders")
    GF = F.then(G)
    FG = G.then(F)

    def collect(a, b):
        out = []
        for t in natural_transformations(a, b):
            out.append(t)
            if len(out) > cap:
                raise CapExceededError(f"more than {cap} natural transformations")
        return out

    units = collect(identity_functor(C), GF)
    counits = collect(FG, identity_functor(D))
    if len(units) * len(counits) > cap * cap:
        raise CapExceededError("adjunction search space exceeds cap")
    for eta in units:
        for eps in counits:
            if all(D.compose(eps[F(x)], F(eta[x])) == F(x) for x in C.objects) and all(
                C.compose(G(eps[y]), eta[G(y)]) == G(y) for y in D.objects
            ):
                return Adjunction(eta, eps)
    return None


def adjunction_hom_bijection(F: FunctorTable, G: FunctorTable, adj: Adjunction) -> bool:
    """Check hom_D(FX, Y) -> hom_C(X, GY), g |-> G(g) o eta_X, is a bijection with inverse via epsilon."""
    C, D = F.source, F.target
    for x in C.objects:
        for y in D.objects:
            left = D.hom(F(x), y)
            right = C.hom(x, G(y))
            fwd = {g: C.compose(G(g), adj.unit[x]) for g in left}
            back = {h: D.compose(adj.counit[y], F(h)) for h in right}
            if len(left) != len(right):
                return False
            if any(back[fwd[g]] != g for g in left) or any(fwd[back[h]] != h for h in right):
                return False
    return True
