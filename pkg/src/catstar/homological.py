"""Additive and abelian structure on module fragments, exactness, injectives and derived functors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .category import CapExceededError, CategoryError
from .modules import (
    LinearMap,
    Module,
    ModuleCategory,
    add_maps,
    direct_sum,
    hom_module,
    identity_map,
    inverse_map,
    linear_maps,
    quotient,
    submodule,
    zero_map,
)

Addition = Callable[[LinearMap, LinearMap], LinearMap]


class HomologicalError(CategoryError):
    """A construction that the fragment cannot support (bad complex, unknown functor, ...)."""


class NoInjectiveError(HomologicalError):
    """No injective object of the fragment receives a mono from the given module."""


@dataclass(frozen=True)
class Failure:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


@dataclass
class StructureReport:
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def clauses(self) -> list[str]:
        return sorted({f.clause for f in self.failures})


# ---------------------------------------------------------------------------
# additive and abelian checks


def _check_group(cat: ModuleCategory, A: Module, B: Module, plus: Addition, out: list) -> None:
    homs = cat.hom(A, B)
    values = {f.values for f in homs}
    zero = zero_map(A, B)
    where = f"hom({A.name},{B.name})"
    sums = {}
    for f in homs:
        for g in homs:
            s = plus(f, g)
            if s.values not in values:
                out.append(Failure("(1) group", f"{where}: {f!r} + {g!r} leaves the hom set"))
                return
            sums[f.values, g.values] = s.values
    for f in homs:
        if sums[f.values, zero.values] != f.values or sums[zero.values, f.values] != f.values:
            out.append(Failure("(1) group", f"{where}: zero map is not neutral for {f!r}"))
            return
        if all(sums[f.values, g.values] != zero.values for g in homs):
            out.append(Failure("(1) group", f"{where}: {f!r} has no inverse"))
            return
        for g in homs:
            if sums[f.values, g.values] != sums[g.values, f.values]:
                out.append(Failure("(1) group", f"{where}: addition is not commutative at {f!r}, {g!r}"))
                return
            for h in homs:
                if sums[sums[f.values, g.values], h.values] != sums[f.values, sums[g.values, h.values]]:
                    out.append(Failure("(1) group", f"{where}: addition is not associative"))
                    return


def _check_bilinear(cat: ModuleCategory, A: Module, B: Module, C: Module, plus: Addition, out: list) -> None:
    ab, bc = cat.hom(A, B), cat.hom(B, C)
    for f in ab:
        for f2 in ab:
            s = plus(f, f2)
            for g in bc:
                if s.then(g) != plus(f.then(g), f2.then(g)):
                    out.append(Failure("(2) bilinear", f"g(f + f') != gf + gf' for {f!r}, {f2!r}, {g!r}"))
                    return
    for g in bc:
        for g2 in bc:
            s = plus(g, g2)
            for f in ab:
                if f.then(s) != plus(f.then(g), f.then(g2)):
                    out.append(Failure("(2) bilinear", f"(g + g')f != gf + g'f for {g!r}, {g2!r}, {f!r}"))
                    return


def _check_biproduct(cat: ModuleCategory, A: Module, B: Module, plus: Addition, out: list) -> None:
    bp = cat.biproduct(A, B)
    (i1, i2), (p1, p2) = bp.inclusions, bp.projections
    S = bp.obj
    ok = (
        i1.then(p1) == identity_map(A)
        and i2.then(p2) == identity_map(B)
        and i1.then(p2).is_zero()
        and i2.then(p1).is_zero()
        and plus(p1.then(i1), p2.then(i2)) == identity_map(S)
    )
    if not ok:
        out.append(Failure("(4) biproducts", f"{A.name} + {B.name} fails the biproduct equations"))


def check_additive(cat: ModuleCategory, addition: Addition = add_maps) -> StructureReport:
    """Hom sets are abelian groups, composition is bilinear, a zero object and biproducts exist.

    Biproducts whose size exceeds the cap are reported as warnings: the
    fragment is not closed under them, which says nothing about the category.
    """
    report = StructureReport()
    obs = cat.objects
    for A in obs:
        for B in obs:
            _check_group(cat, A, B, addition, report.failures)
    for A in obs:
        for B in obs:
            for C in obs:
                _check_bilinear(cat, A, B, C, addition, report.failures)
    zeros = [Z for Z in obs if all(len(cat.hom(Z, X)) == 1 and len(cat.hom(X, Z)) == 1 for X in obs)]
    if not zeros:
        report.failures.append(Failure("(3) zero object", "no object is both initial and final"))
    for n, A in enumerate(obs):
        for B in obs[n:]:
            if A.size * B.size > cat.cap:
                report.warnings.append(f"closure: {A.name} + {B.name} exceeds the cap {cat.cap}")
                continue
            _check_biproduct(cat, A, B, addition, report.failures)
    return report


@dataclass(frozen=True)
class UniversalMap:
    kind: str
    obj: Module
    map: LinearMap


def universal_map(cat: ModuleCategory, kind: str, f: LinearMap) -> UniversalMap:
    """Kernel, cokernel, image or coimage of f, with the object moved onto its representative."""
    if kind == "kernel":
        S, inc = submodule(f.source, f.kernel_set(), f"ker({f!r})")
        N, iso = cat.classify(S)
        return UniversalMap(kind, N, inverse_map(iso).then(inc))
    if kind == "cokernel":
        Q, proj = quotient(f.target, f.image_set(), f"coker({f!r})")
        N, iso = cat.classify(Q)
        return UniversalMap(kind, N, proj.then(iso))
    if kind == "image":
        c = universal_map(cat, "cokernel", f)
        k = universal_map(cat, "kernel", c.map)
        return UniversalMap(kind, k.obj, k.map)
    if kind == "coimage":
        k = universal_map(cat, "kernel", f)
        c = universal_map(cat, "cokernel", k.map)
        return UniversalMap(kind, c.obj, c.map)
    raise ValueError(f"unknown universal map {kind!r}")


def verify_universal(cat: ModuleCategory, u: UniversalMap, f: LinearMap) -> bool:
    """Check the universal property against every object and map of the fragment."""
    if u.kind == "image":
        return verify_universal(cat, UniversalMap("kernel", u.obj, u.map), universal_map(cat, "cokernel", f).map)
    if u.kind == "coimage":
        return verify_universal(cat, UniversalMap("cokernel", u.obj, u.map), universal_map(cat, "kernel", f).map)
    if u.kind == "kernel":
        k = u.map
        if not k.then(f).is_zero():
            return False
        for T in cat.objects:
            lifts = cat.hom(T, u.obj)
            for g in cat.hom(T, f.source):
                if g.then(f).is_zero() and sum(1 for h in lifts if h.then(k) == g) != 1:
                    return False
        return True
    if u.kind == "cokernel":
        c = u.map
        if not f.then(c).is_zero():
            return False
        for T in cat.objects:
            descents = cat.hom(u.obj, T)
            for g in cat.hom(f.target, T):
                if f.then(g).is_zero() and sum(1 for h in descents if c.then(h) == g) != 1:
                    return False
        return True
    raise ValueError(f"unknown universal map {u.kind!r}")


def coimage_to_image(cat: ModuleCategory, f: LinearMap) -> LinearMap:
    """The canonical map coim f -> im f."""
    coim = universal_map(cat, "coimage", f)
    im = universal_map(cat, "image", f)
    # each coimage class has a preimage x in the source; send it to the image point f(x)
    im_index = {v: k for k, v in enumerate(im.map.values)}
    values = [None] * coim.obj.size
    for x in f.source.elements:
        values[coim.map.values[x]] = im_index[f.values[x]]
    return LinearMap(coim.obj, im.obj, tuple(values))


def check_abelian(cat: ModuleCategory, addition: Addition = add_maps) -> StructureReport:
    """Additive, every map has a kernel and a cokernel, and coim -> im is an isomorphism."""
    report = check_additive(cat, addition)
    if report.failures:
        return report
    for A in cat.objects:
        for B in cat.objects:
            for f in cat.hom(A, B):
                for kind in ("kernel", "cokernel"):
                    try:
                        u = universal_map(cat, kind, f)
                    except CapExceededError as exc:  # pragma: no cover - sub and quotient stay small
                        report.failures.append(Failure(kind, str(exc)))
                        continue
                    if not verify_universal(cat, u, f):
                        report.failures.append(Failure(kind, f"universal property fails for {f!r}"))
                if not coimage_to_image(cat, f).is_iso():
                    report.failures.append(Failure("coim-im", f"coim -> im is not an isomorphism for {f!r}"))
    return report


# ---------------------------------------------------------------------------
# exactness


@dataclass(frozen=True)
class ExactnessReport:
    joints: tuple  # joints[k]: image of maps[k] equals kernel of maps[k + 1]

    @property
    def ok(self) -> bool:
        return all(self.joints)

    def __bool__(self) -> bool:
        return self.ok


def exactness(maps: Sequence[LinearMap]) -> ExactnessReport:
    for f, g in zip(maps, maps[1:]):
        if f.target is not g.source:
            raise HomologicalError(f"{f!r} and {g!r} are not composable")
    return ExactnessReport(tuple(set(f.image_set()) == set(g.kernel_set()) for f, g in zip(maps, maps[1:])))


def is_short_exact(f: LinearMap, g: LinearMap) -> bool:
    """0 -> A -f-> B -g-> C -> 0 is exact."""
    return f.is_injective() and g.is_surjective() and exactness([f, g]).ok


def short_exact_sequences(cat: ModuleCategory) -> list[tuple[LinearMap, LinearMap]]:
    """Every mono f: A -> B in the fragment, with the projection onto its cokernel."""
    out = []
    for A in cat.objects:
        for B in cat.objects:
            if A.size > B.size:
                continue
            for f in cat.monomorphisms(A, B):
                out.append((f, universal_map(cat, "cokernel", f).map))
    return out


# ---------------------------------------------------------------------------
# functors between module fragments


class ModuleFunctor:
    """An assignment on modules and linear maps; variance is +1 or -1."""

    def __init__(self, name: str, on_object: Callable[[Module], Module], on_map: Callable, variance: int = 1):
        self.name = name
        self.variance = variance
        self._on_object = on_object
        self._on_map = on_map
        self._objects: dict = {}

    def __repr__(self) -> str:
        return f"ModuleFunctor({self.name})"

    def obj(self, A: Module) -> Module:
        key = id(A)
        if key not in self._objects:
            self._objects[key] = (A, self._on_object(A))
        return self._objects[key][1]

    def map(self, f: LinearMap) -> LinearMap:
        return self._on_map(self, f)


def identity_functor() -> ModuleFunctor:
    return ModuleFunctor("id", lambda A: A, lambda F, f: f)


def constant_functor(X: Module) -> ModuleFunctor:
    """A |-> X, f |-> id; not additive unless X = 0."""
    return ModuleFunctor(f"const({X.name})", lambda A: X, lambda F, f: identity_map(X))


def _hom_cache(X: Module, A: Module, contravariant: bool):
    src, tgt = (A, X) if contravariant else (X, A)
    M, maps = hom_module(src, tgt)
    return M, {g.values: k for k, g in enumerate(maps)}, maps


def hom_from(X: Module) -> ModuleFunctor:
    """hom(X, -), acting by postcomposition."""
    tables: dict = {}

    def on_object(A):
        M, index, maps = _hom_cache(X, A, False)
        tables[id(M)] = (index, maps)
        return M

    def on_map(F, f):
        FA, FB = F.obj(f.source), F.obj(f.target)
        _, maps = tables[id(FA)]
        index, _ = tables[id(FB)]
        return LinearMap(FA, FB, tuple(index[g.then(f).values] for g in maps))

    return ModuleFunctor(f"hom({X.name},-)", on_object, on_map)


def hom_into(X: Module) -> ModuleFunctor:
    """hom(-, X), acting by precomposition (contravariant)."""
    tables: dict = {}

    def on_object(A):
        M, index, maps = _hom_cache(X, A, True)
        tables[id(M)] = (index, maps)
        return M

    def on_map(F, f):
        FA, FB = F.obj(f.source), F.obj(f.target)
        _, maps = tables[id(FB)]
        index, _ = tables[id(FA)]
        return LinearMap(FB, FA, tuple(index[f.then(g).values] for g in maps))

    return ModuleFunctor(f"hom(-,{X.name})", on_object, on_map, variance=-1)


def sum_with(X: Module) -> ModuleFunctor:
    """A |-> A + X, f |-> f + id."""
    sums: dict = {}

    def on_object(A):
        bp = direct_sum(A, X)
        sums[id(bp.obj)] = bp
        return bp.obj

    def on_map(F, f):
        FA, FB = F.obj(f.source), F.obj(f.target)
        k = X.size
        return LinearMap(FA, FB, tuple(f.values[v // k] * k + v % k for v in FA.elements))

    return ModuleFunctor(f"-+{X.name}", on_object, on_map)


def doubling() -> ModuleFunctor:
    """A |-> A + A, f |-> f + f."""

    def on_map(F, f):
        FA, FB = F.obj(f.source), F.obj(f.target)
        k, n = f.source.size, f.target.size
        return LinearMap(FA, FB, tuple(f.values[v // k] * n + f.values[v % k] for v in FA.elements))

    return ModuleFunctor("-+-", lambda A: direct_sum(A, A).obj, on_map)


def parse_functor(cat: ModuleCategory, text: str) -> ModuleFunctor:
    """``id``, ``hom(X,-)``, ``hom(-,X)``, ``-+-``, ``-+X`` or ``const(X)`` with X an object name."""
    t = text.replace(" ", "")
    if t == "id":
        return identity_functor()
    if t == "-+-":
        return doubling()
    if t.startswith("hom(") and t.endswith(",-)"):
        return hom_from(cat[t[4:-3]])
    if t.startswith("hom(-,") and t.endswith(")"):
        return hom_into(cat[t[6:-1]])
    if t.startswith("-+"):
        return sum_with(cat[t[2:]])
    if t.startswith("const(") and t.endswith(")"):
        return constant_functor(cat[t[6:-1]])
    raise HomologicalError(f"unknown functor {text!r}")


@dataclass
class FunctorExactness:
    kind: str  # "exact", "left-exact", "right-exact", "additive-only", "not-additive"
    additive: bool
    left: bool
    right: bool
    preserves_kernels: bool | None  # covariant functors only
    preserves_epis: bool | None
    failures: list = field(default_factory=list)


def _is_additive(F: ModuleFunctor, cat: ModuleCategory, failures: list) -> bool:
    if F.obj(cat.zero).size != 1:
        failures.append(f"{F.name} does not send 0 to 0")
        return False
    for A in cat.objects:
        for B in cat.objects:
            homs = cat.hom(A, B)
            for f in homs:
                for g in homs:
                    if F.map(add_maps(f, g)) != add_maps(F.map(f), F.map(g)):
                        failures.append(f"{F.name}(f + g) != {F.name}(f) + {F.name}(g) for {f!r}, {g!r}")
                        return False
    return True


def functor_exactness(F: ModuleFunctor, cat: ModuleCategory) -> FunctorExactness:
    """Classify F by what it does to every short exact sequence of the fragment."""
    failures: list = []
    additive = _is_additive(F, cat, failures)
    left = right = True
    for f, g in short_exact_sequences(cat):
        a, b = (F.map(f), F.map(g)) if F.variance == 1 else (F.map(g), F.map(f))
        middle = exactness([a, b]).ok
        if not (middle and a.is_injective()):
            if left:
                failures.append(f"not left exact on {f!r}, {g!r}")
            left = False
        if not (middle and b.is_surjective()):
            if right:
                failures.append(f"not right exact on {f!r}, {g!r}")
            right = False
    kernels = epis = None
    if F.variance == 1:
        kernels = epis = True
        for A in cat.objects:
            for B in cat.objects:
                for f in cat.hom(A, B):
                    k = universal_map(cat, "kernel", f).map
                    Fk, Ff = F.map(k), F.map(f)
                    if not (Fk.is_injective() and set(Fk.image_set()) == set(Ff.kernel_set())):
                        kernels = False
                    if f.is_surjective() and not Ff.is_surjective():
                        epis = False
    if not additive:
        kind = "not-additive"
    elif left and right:
        kind = "exact"
    elif left:
        kind = "left-exact"
    elif right:
        kind = "right-exact"
    else:
        kind = "additive-only"
    return FunctorExactness(kind, additive, left, right, kernels, epis, failures)


# ---------------------------------------------------------------------------
# injectives and resolutions


@dataclass(frozen=True)
class InjectivityReport:
    ok: bool
    witness: tuple | None = None  # (mono f, map g that does not extend along f)

    def __bool__(self) -> bool:
        return self.ok


def is_injective(cat: ModuleCategory, I: Module) -> InjectivityReport:
    """Every map into I extends along every mono of the fragment.

    A mono is an isomorphism onto its image, so it suffices to run through
    the submodules S of each object B and ask that hom(B, I) -> hom(S, I) be
    onto; the witness is returned as a mono from a representative.
    """
    for B in sorted(cat.objects, key=lambda M: (M.size, M.name)):
        from_B = None
        for S in submodules(B):
            if len(S) in (1, B.size):
                continue
            sub, inc = submodule(B, S)
            A, iso = cat.classify(sub)
            if from_B is None:
                from_B = [h.values for h in cat.hom(B, I)]
            restricted = {tuple(h[x] for x in inc.values) for h in from_B}
            for g in cat.hom(A, I):
                if tuple(g.values[v] for v in iso.values) not in restricted:
                    return InjectivityReport(False, (inverse_map(iso).then(inc), g))
    return InjectivityReport(True)


def span(B: Module, generators: Iterable[int]) -> frozenset:
    S = {0} | set(generators)
    while True:
        new = {B.add(a, b) for a in S for b in S} | {B.act(r, a) for r in B.ring.elements for a in S}
        if new <= S:
            return frozenset(S)
        S |= new


def submodules(B: Module) -> list[frozenset]:
    """Every submodule of B, smallest first."""
    cached = getattr(B, "_submodules", None)
    if cached is not None:
        return cached
    seen = {frozenset({0})}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for x in B.elements:
                if x not in S:
                    T = span(B, S | {x})
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    out = sorted(seen, key=lambda S: (len(S), sorted(S)))
    B._submodules = out  # type: ignore[attr-defined]
    return out


def injectives(cat: ModuleCategory) -> list[Module]:
    cached = getattr(cat, "_injectives", None)
    if cached is None:
        cached = [I for I in cat.objects if is_injective(cat, I)]
        cat._injectives = cached  # type: ignore[attr-defined]
    return cached


@dataclass(frozen=True)
class EnoughInjectives:
    ok: bool
    missing: tuple  # objects with no mono into an injective of the fragment

    def __bool__(self) -> bool:
        return self.ok


def has_enough_injectives(cat: ModuleCategory) -> EnoughInjectives:
    inj = injectives(cat)
    missing = tuple(A.name for A in cat.objects if not any(cat.monomorphisms(A, I) for I in inj))
    return EnoughInjectives(not missing, missing)


@dataclass
class InjectiveResolution:
    obj: Module
    coaugmentation: LinearMap  # obj -> terms[0]
    terms: list  # injective modules I^0, I^1, ...
    differentials: list  # d^k: I^k -> I^(k+1)
    strategy: str

    def names(self) -> list[str]:
        return [I.name for I in self.terms]

    def problems(self) -> list[str]:
        out = []
        if not self.coaugmentation.is_injective():
            out.append("coaugmentation is not injective")
        maps = [self.coaugmentation] + self.differentials
        if not exactness(maps).ok:
            out.append("sequence is not exact")
        return out


STRATEGIES = ("minimal", "largest")


def _embed(cat: ModuleCategory, C: Module, strategy: str) -> LinearMap:
    inj = injectives(cat)
    order = sorted(inj, key=lambda I: (I.size, I.name))
    if strategy == "largest":
        order = sorted(inj, key=lambda I: (-I.size, I.name))
    elif strategy != "minimal":
        raise ValueError(f"unknown strategy {strategy!r}")
    for I in order:
        if I.size < C.size:
            continue
        monos = cat.monomorphisms(C, I)
        if monos:
            return monos[0]
    raise NoInjectiveError(f"{C.name} has no mono into an injective of {cat!r}")


def injective_resolution(cat: ModuleCategory, A: Module, length: int, strategy: str = "minimal") -> InjectiveResolution:
    """0 -> A -> I^0 -> ... -> I^length built from embeddings of successive cokernels."""
    eps = _embed(cat, A, strategy)
    terms = [eps.target]
    diffs: list = []
    prev = eps
    for _ in range(length):
        c = universal_map(cat, "cokernel", prev).map
        m = _embed(cat, c.target, strategy)
        d = c.then(m)
        diffs.append(d)
        terms.append(m.target)
        prev = d
    return InjectiveResolution(A, eps, terms, diffs, strategy)


# ---------------------------------------------------------------------------
# complexes


@dataclass
class Complex:
    """Objects X^lower, ..., X^upper with d^k: X^k -> X^(k+1); zero outside the window."""

    lower: int
    objects: list
    differentials: list

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise HomologicalError("; ".join(problems))

    @property
    def upper(self) -> int:
        return self.lower + len(self.objects) - 1

    def at(self, k: int) -> Module | None:
        i = k - self.lower
        return self.objects[i] if 0 <= i < len(self.objects) else None

    def d(self, k: int) -> LinearMap | None:
        i = k - self.lower
        return self.differentials[i] if 0 <= i < len(self.differentials) else None

    def problems(self) -> list[str]:
        out = []
        if len(self.differentials) != max(len(self.objects) - 1, 0):
            return ["need one differential between consecutive objects"]
        for i, d in enumerate(self.differentials):
            if d.source is not self.objects[i] or d.target is not self.objects[i + 1]:
                out.append(f"d^{self.lower + i} has the wrong endpoints")
        for i in range(len(self.differentials) - 1):
            if not self.differentials[i].then(self.differentials[i + 1]).is_zero():
                out.append(f"d^{self.lower + i + 1} d^{self.lower + i} != 0")
        return out

    def cycles(self, k: int) -> set[int]:
        X = self.at(k)
        d = self.d(k)
        return set(X.elements) if d is None else set(d.kernel_set())

    def boundaries(self, k: int) -> set[int]:
        d = self.d(k - 1)
        return {0} if d is None else set(d.image_set())

    def cohomology(self, k: int) -> tuple[Module, LinearMap, LinearMap]:
        """H^k as a concrete module, with the inclusion Z^k -> X^k and the projection Z^k -> H^k."""
        X = self.at(k)
        if X is None:
            raise HomologicalError(f"degree {k} is outside the window")
        Z, inc = submodule(X, self.cycles(k), f"Z^{k}")
        pos = {x: i for i, x in enumerate(inc.values)}
        H, proj = quotient(Z, [pos[b] for b in self.boundaries(k)], f"H^{k}")
        return H, inc, proj


def apply_functor(F: ModuleFunctor, X: Complex) -> Complex:
    if F.variance != 1:
        raise HomologicalError("only covariant functors are applied to complexes")
    objs = [F.obj(A) for A in X.objects]
    return Complex(X.lower, objs, [F.map(d) for d in X.differentials])


def induced_on_cohomology(components: dict, X: Complex, Y: Complex, k: int) -> LinearMap:
    """H^k(f) for a chain map given by components[k]: X^k -> Y^k."""
    HX, incX, projX = X.cohomology(k)
    HY, incY, projY = Y.cohomology(k)
    f = components[k]
    posY = {y: i for i, y in enumerate(incY.values)}
    values = [None] * HX.size
    for z, x in enumerate(incX.values):
        values[projX.values[z]] = projY.values[posY[f.values[x]]]
    return LinearMap(HX, HY, tuple(values))


def chain_map_problems(components: dict, X: Complex, Y: Complex) -> list[str]:
    out = []
    for k in range(min(X.lower, Y.lower), max(X.upper, Y.upper) + 1):
        f, g = components.get(k), components.get(k + 1)
        dX, dY = X.d(k), Y.d(k)
        if f is None and X.at(k) is not None and Y.at(k) is not None:
            out.append(f"missing component in degree {k}")
            continue
        if f is None or g is None or dX is None or dY is None:
            continue
        if f.then(dY) != dX.then(g):
            out.append(f"square in degree {k} does not commute")
    return out


def is_quasi_isomorphism(components: dict, X: Complex, Y: Complex) -> bool:
    if chain_map_problems(components, X, Y):
        return False
    for k in range(max(X.lower, Y.lower), min(X.upper, Y.upper) + 1):
        if not induced_on_cohomology(components, X, Y, k).is_iso():
            return False
    return True


# ---------------------------------------------------------------------------
# derived functors


@dataclass(frozen=True)
class DerivedValue:
    functor: str
    obj: str
    degree: int
    value: Module  # representative
    size: int
    resolution: tuple  # names of I^0, I^1, ...
    matches_functor: bool | None = None  # degree 0: whether the value is isomorphic to F(A)


def derived_functor(
    F: ModuleFunctor,
    cat: ModuleCategory,
    A: Module,
    degree: int,
    strategy: str = "minimal",
    target: ModuleCategory | None = None,
) -> DerivedValue:
    """R^i F(A) = H^i(F(I)) for an injective resolution I of A, with I^(-1) = 0."""
    if degree < 0:
        raise HomologicalError("degree must be nonnegative")
    res = injective_resolution(cat, A, degree + 1, strategy)
    X = Complex(0, res.terms, res.differentials)
    FX = apply_functor(F, X)
    H, _, _ = FX.cohomology(degree)
    N, _ = (target or cat).classify(H)
    matches = None
    if degree == 0:
        matches = (target or cat).classify(F.obj(A))[0] is N
    return DerivedValue(F.name, A.name, degree, N, H.size, tuple(res.names()), matches)


# ---------------------------------------------------------------------------
# hom out of a generator, and thick subcategories


def hom_module_functor(P: Module, psi: LinearMap) -> ModuleFunctor:
    """G(A) = hom(P, A) for P with an isomorphism psi: P -> R onto the regular module.

    The ring acts by (r f)(x) = f(psi^-1(psi(x) r)), which makes G(A) an
    R-module isomorphic to A through f |-> f(psi^-1(1)).
    """
    R = P.ring
    if not psi.is_iso():
        raise HomologicalError("psi is not an isomorphism")
    inv = inverse_map(psi)
    right = [tuple(inv.values[R.mul(psi.values[x], r)] for x in P.elements) for r in R.elements]
    tables: dict = {}

    def on_object(A):
        maps = sorted(linear_maps(P, A), key=lambda f: f.values)
        pos = {f.values: k for k, f in enumerate(maps)}
        add = tuple(tuple(pos[add_maps(f, g).values] for g in maps) for f in maps)
        act = tuple(tuple(pos[tuple(f.values[right[r][x]] for x in P.elements)] for f in maps) for r in R.elements)
        M = Module(R, add, act, f"hom({P.name},{A.name})")
        tables[id(M)] = (pos, maps)
        return M

    def on_map(G, f):
        GA, GB = G.obj(f.source), G.obj(f.target)
        _, maps = tables[id(GA)]
        pos, _ = tables[id(GB)]
        return LinearMap(GA, GB, tuple(pos[g.then(f).values] for g in maps))

    return ModuleFunctor(f"hom({P.name},-)", on_object, on_map)


def evaluation_at_generator(G: ModuleFunctor, P: Module, psi: LinearMap, A: Module) -> LinearMap:
    """G(A) -> A, f |-> f(psi^-1(1)); an isomorphism."""
    GA = G.obj(A)
    one = inverse_map(psi).values[P.ring.one]
    maps = sorted(linear_maps(P, A), key=lambda f: f.values)
    return LinearMap(GA, A, tuple(f.values[one] for f in maps))


def is_fully_faithful(G: ModuleFunctor, cat: ModuleCategory) -> bool:
    for A in cat.objects:
        for B in cat.objects:
            images = {G.map(f).values for f in cat.hom(A, B)}
            targets = {g.values for g in linear_maps(G.obj(A), G.obj(B))}
            if len(images) != len(cat.hom(A, B)) or images != targets:
                return False
    return True


@dataclass(frozen=True)
class ThickReport:
    ok: bool
    witness: tuple | None = None  # (x, y, x + y) with the sum inside and a summand outside

    def __bool__(self) -> bool:
        return self.ok


def is_thick(cat: ModuleCategory, names: Iterable[str]) -> ThickReport:
    """Closed under direct summands: x + y in D forces x and y in D (sums within the cap)."""
    D = set(names)
    for n, x in enumerate(cat.objects):
        for y in cat.objects[n:]:
            if x.size * y.size > cat.cap:
                continue
            s = cat.biproduct(x, y).obj.name
            if s in D and (x.name not in D or y.name not in D):
                return ThickReport(False, (x.name, y.name, s))
    return ThickReport(True)
