"""Filteredness, cones over finite subsystems, and limits through a cone apex."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .category import CategoryError, ExplicitCategory, FunctorTable, opposite


class NotCofilteredError(CategoryError):
    """The index category lacks the cone needed by the subsystem construction."""


# ---------------------------------------------------------------------------
# filteredness


@dataclass(frozen=True)
class FilteredReport:
    ok: bool
    reason: str | None = None
    counterexample: tuple | None = None
    failures: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _maximal_failure(cat: ExplicitCategory, pairs: list[tuple[str, str]]) -> tuple[str, str]:
    """A failing pair that cannot be moved further along arrows to another failing pair.

    If x -> x' and y -> y' and (x, y) has no cocone, neither has (x', y'), so
    the failures form a down-closed set; we report one at its top, choosing
    the least such pair in identifier order.
    """

    def reach(p, q):
        (a, b), (c, d) = p, q
        return bool(cat.hom(a, c) and cat.hom(b, d)) or bool(cat.hom(a, d) and cat.hom(b, c))

    for p in pairs:
        if all(reach(q, p) for q in pairs if reach(p, q)):
            return p
    return pairs[0]


def is_filtered(cat: ExplicitCategory, direction: str = "filtered") -> FilteredReport:
    """Nonempty, every pair of objects has a cocone, every parallel pair is coequalized.

    ``direction="cofiltered"`` checks the dual conditions.
    """
    if direction == "cofiltered":
        return is_filtered(opposite(cat), "filtered")
    if direction != "filtered":
        raise ValueError(f"unknown direction {direction!r}")
    if not cat.objects:
        return FilteredReport(False, "empty")
    obs = cat.objects
    failing_pairs = []
    for x, y in itertools.combinations(obs, 2):
        if not any(cat.hom(x, z) and cat.hom(y, z) for z in obs):
            failing_pairs.append((x, y))
    failing_parallel = []
    for x in obs:
        for y in obs:
            for f, g in itertools.combinations(cat.hom(x, y), 2):
                if not any(cat.compose(h, f) == cat.compose(h, g) for h in cat.morphisms_from(y)):
                    failing_parallel.append((f, g))
    if failing_pairs:
        return FilteredReport(
            False, "pair without a cocone", _maximal_failure(cat, failing_pairs), tuple(failing_pairs + failing_parallel)
        )
    if failing_parallel:
        return FilteredReport(False, "parallel pair not coequalized", failing_parallel[0], tuple(failing_parallel))
    return FilteredReport(True)


# ---------------------------------------------------------------------------
# finite subsystems


@dataclass(frozen=True)
class FiniteSubsystem:
    objects: tuple = ()
    morphisms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(dict.fromkeys(self.objects)))
        object.__setattr__(self, "morphisms", tuple(dict.fromkeys(self.morphisms)))

    def problems(self, cat: ExplicitCategory) -> list[str]:
        out = []
        obs = set(self.objects)
        for x in self.objects:
            if not cat.is_object(x):
                out.append(f"{x!r} is not an object")
        for f in self.morphisms:
            if f not in cat.morphisms:
                out.append(f"{f!r} is not a morphism")
            elif cat.src[f] not in obs or cat.tgt[f] not in obs:
                out.append(f"endpoints of {f!r} are not in the subsystem")
        return out

    def union(self, other: "FiniteSubsystem") -> "FiniteSubsystem":
        return FiniteSubsystem(self.objects + other.objects, self.morphisms + other.morphisms)

    def size(self) -> int:
        return len(self.objects) + len(self.morphisms)


def whole(cat: ExplicitCategory) -> FiniteSubsystem:
    return FiniteSubsystem(cat.objects, cat.sorted_morphisms)


def subsystems(cat: ExplicitCategory, max_size: int) -> Iterator[FiniteSubsystem]:
    """Every finite subsystem with at most ``max_size`` objects plus morphisms."""
    obs = cat.objects
    for k in range(0, min(max_size, len(obs)) + 1):
        for chosen in itertools.combinations(obs, k):
            s = set(chosen)
            between = [f for f in cat.sorted_morphisms if cat.src[f] in s and cat.tgt[f] in s]
            for m in range(0, min(max_size - k, len(between)) + 1):
                for ms in itertools.combinations(between, m):
                    yield FiniteSubsystem(chosen, ms)


@dataclass(frozen=True)
class ConeOverSubsystem:
    apex: str
    projections: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "projections", dict(self.projections))

    __hash__ = None  # type: ignore[assignment]

    def padded(self, cat: ExplicitCategory) -> dict:
        """Projections extended by p(i) = id_i for objects outside the subsystem."""
        out = {x: x for x in cat.objects}
        out.update(self.projections)
        return out

    def then(self, cat: ExplicitCategory, q: str) -> "ConeOverSubsystem":
        """Precompose every projection with q: W -> apex."""
        if cat.tgt[q] != self.apex:
            raise CategoryError(f"{q!r} does not end at the apex {self.apex!r}")
        return ConeOverSubsystem(cat.src[q], {j: cat.compose(p, q) for j, p in self.projections.items()})


def cone_problems(cat: ExplicitCategory, J: FiniteSubsystem, cone: ConeOverSubsystem) -> list[str]:
    out = []
    for j in J.objects:
        p = cone.projections.get(j)
        if p is None or cat.src[p] != cone.apex or cat.tgt[p] != j:
            out.append(f"projection to {j!r} is not a morphism {cone.apex} -> {j}")
    if out:
        return out
    for phi in J.morphisms:
        if cat.compose(phi, cone.projections[cat.src[phi]]) != cone.projections[cat.tgt[phi]]:
            out.append(f"triangle over {phi!r} does not commute")
    return out


def finite_subsystem_cone(cat: ExplicitCategory, J: FiniteSubsystem) -> ConeOverSubsystem:
    """A cone over J in a cofiltered category, built by the object-then-morphism induction.

    Objects are added one at a time using a common lower bound of the new
    object and the current apex; then each morphism of J is made to commute by
    precomposing with an equalizing arrow. Within each step the current apex
    (with an identity) is tried first, then candidates in identifier order.
    """
    problems = J.problems(cat)
    if problems:
        raise CategoryError("; ".join(problems))
    if not cat.objects:
        raise NotCofilteredError("empty category")
    objects = sorted(J.objects)
    if not objects:
        return ConeOverSubsystem(cat.objects[0], {})
    first = objects[0]
    cone = ConeOverSubsystem(first, {first: first})
    for j0 in objects[1:]:
        cone = _add_object(cat, cone, j0)
    for phi in sorted(J.morphisms):
        cone = _add_morphism(cat, cone, phi)
    return cone


def _add_object(cat: ExplicitCategory, cone: ConeOverSubsystem, j0: str) -> ConeOverSubsystem:
    apex = cone.apex
    # the current apex already maps to j0
    for p in cat.hom(apex, j0):
        return ConeOverSubsystem(apex, {**cone.projections, j0: p})
    # j0 itself maps to the apex
    for q in cat.hom(j0, apex):
        return ConeOverSubsystem(j0, {**cone.then(cat, q).projections, j0: j0})
    for w in cat.objects:
        for p in cat.hom(w, j0):
            for q in cat.hom(w, apex):
                return ConeOverSubsystem(w, {**cone.then(cat, q).projections, j0: p})
    raise NotCofilteredError(f"objects {j0!r} and {apex!r} have no common cone")


def _add_morphism(cat: ExplicitCategory, cone: ConeOverSubsystem, phi: str) -> ConeOverSubsystem:
    apex = cone.apex
    a = cone.projections[cat.tgt[phi]]
    b = cat.compose(phi, cone.projections[cat.src[phi]])
    if a == b:
        return cone
    for w in cat.objects:
        for q in cat.hom(w, apex):
            if cat.compose(a, q) == cat.compose(b, q):
                return cone.then(cat, q)
    raise NotCofilteredError(f"parallel pair {a!r}, {b!r} (from {phi!r}) cannot be equalized")


# ---------------------------------------------------------------------------
# set-valued diagrams


@dataclass(frozen=True)
class SetDiagram:
    """A covariant functor from ``index`` to finite sets."""

    index: ExplicitCategory
    values: Mapping[str, tuple]
    maps: Mapping[str, Mapping]

    __hash__ = None  # type: ignore[assignment]

    def problems(self) -> list[str]:
        I = self.index
        out = []
        for f in I.sorted_morphisms:
            m = self.maps.get(f)
            if m is None or set(m) != set(self.values[I.src[f]]) or not set(m.values()) <= set(self.values[I.tgt[f]]):
                out.append(f"map for {f!r} is not a function between the right sets")
        if out:
            return out
        for f, g, h in sorted(I.comp):
            if any(self.maps[h][v] != self.maps[f][self.maps[g][v]] for v in self.values[I.src[g]]):
                out.append(f"composition {(f, g, h)!r} not respected")
        return out


def compatible_families(diagram: SetDiagram) -> list[dict]:
    """All families (x_i) with F(phi)(x_i) = x_j for every phi: i -> j."""
    I = diagram.index
    order = list(I.objects)
    pos = {i: n for n, i in enumerate(order)}
    checks: dict = {i: [] for i in order}
    for phi in I.sorted_morphisms:
        checks[order[max(pos[I.src[phi]], pos[I.tgt[phi]])]].append(phi)
    out: list = []
    fam: dict = {}

    def go(n: int):
        if n == len(order):
            out.append(dict(fam))
            return
        i = order[n]
        for v in diagram.values[i]:
            fam[i] = v
            if all(diagram.maps[phi][fam[I.src[phi]]] == fam[I.tgt[phi]] for phi in checks[i]):
                go(n + 1)
            del fam[i]

    go(0)
    return out


def hom_diagram(G: FunctorTable, x: str) -> SetDiagram:
    """i -> hom(x, G i), acting by postcomposition."""
    I, C = G.source, G.target
    values = {i: C.hom(x, G(i)) for i in I.objects}
    maps = {phi: {f: C.compose(G(phi), f) for f in values[I.src[phi]]} for phi in I.sorted_morphisms}
    return SetDiagram(I, values, maps)


@dataclass(frozen=True)
class ConeLimitReport:
    families: list
    classes: list  # each a sorted tuple of morphisms x -> G(apex)
    assignment: dict  # family index -> class index
    bijective: bool
    legs_commute: bool

    __hash__ = None  # type: ignore[assignment]


def limit_via_cone(G: FunctorTable, x: str, cone: ConeOverSubsystem) -> ConeLimitReport:
    """Compare lim hom(x, G(-)) with hom(x, G(apex)) modulo agreement after every projection.

    A family goes to the class of its apex component. The report records
    whether this is a bijection onto the classes and whether each class,
    pushed along the projections, is the family it came from.
    """
    I, C = G.source, G.target
    problems = cone_problems(I, whole(I), cone)
    if problems:
        raise CategoryError("cone does not cover the index: " + "; ".join(problems))
    legs = {i: G(p) for i, p in cone.projections.items()}
    families = compatible_families(hom_diagram(G, x))
    buckets: dict = {}
    for f in C.hom(x, G(cone.apex)):
        key = tuple(C.compose(legs[i], f) for i in I.objects)
        buckets.setdefault(key, []).append(f)
    keys = sorted(buckets)
    classes = [tuple(sorted(buckets[k])) for k in keys]
    where = {f: n for n, cls in enumerate(classes) for f in cls}
    assignment = {}
    legs_commute = True
    for n, fam in enumerate(families):
        c = where[fam[cone.apex]]
        assignment[n] = c
        if keys[c] != tuple(fam[i] for i in I.objects):
            legs_commute = False
    bijective = len(set(assignment.values())) == len(families) == len(classes)
    return ConeLimitReport(families, classes, assignment, bijective, legs_commute)
