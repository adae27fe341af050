"""Fibrations over explicit finite categories and the fibration of modules over finite rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .category import (
    CategoryError,
    ExplicitCategory,
    FunctorTable,
    classify_morphism,
    full_subcategory,
    make_category,
)
from .homological import StructureReport, Failure, check_abelian, check_additive, short_exact_sequences
from .limits import special_limits
from .modules import LinearMap, Module, ModuleCategory, linear_maps
from .rings import FiniteRing, ring_homs

# addition on Hom_f(X, Y): (g, h) -> g + h, both over the same base morphism
HomAddition = Callable[[str, str], str]


@dataclass
class Fibration:
    total: ExplicitCategory
    base: ExplicitCategory
    projection: FunctorTable
    addition: HomAddition | None = None
    fibre_modules: dict = field(default_factory=dict)  # base object -> ModuleCategory
    vertical: dict = field(default_factory=dict)  # (base object, LinearMap key) -> total morphism

    __hash__ = None  # type: ignore[assignment]

    def p(self, g: str) -> str:
        return self.projection(g)

    def problems(self) -> list[str]:
        if self.projection.source is not self.total or self.projection.target is not self.base:
            return ["projection does not go from the total category to the base"]
        return self.projection.problems()

    def objects_over(self, S: str) -> list[str]:
        return [X for X in self.total.objects if self.p(X) == S]

    def hom_over(self, X: str, Y: str, f: str) -> list[str]:
        """Hom_f(X, Y): morphisms X -> Y lying over f."""
        return [g for g in self.total.hom(X, Y) if self.p(g) == f]


def fibre(fib: Fibration, S: str) -> ExplicitCategory:
    """Objects over S and the morphisms over id_S."""
    if not fib.base.is_object(S):
        raise CategoryError(f"unknown base object {S!r}")
    T = fib.total
    mors = [g for g in T.sorted_morphisms if fib.p(g) == S]
    keep = set(mors)
    comp = [t for t in T.comp if t[0] in keep and t[1] in keep]
    return make_category(mors, {g: T.src[g] for g in mors}, {g: T.tgt[g] for g in mors}, comp,
                         labels={g: T.label(g) for g in mors}, name=f"fibre over {S}")


# ---------------------------------------------------------------------------
# cartesian morphisms


@dataclass(frozen=True)
class CartesianReport:
    ok: bool
    counterexample: tuple | None = None  # (u, beta, number of factorizations found)

    def __bool__(self) -> bool:
        return self.ok


def is_cartesian(fib: Fibration, alpha: str) -> CartesianReport:
    """For every u: X' -> t(alpha) and beta with p(u) = p(alpha) beta, exactly one
    ubar: X' -> s(alpha) has alpha ubar = u and p(ubar) = beta."""
    T, E = fib.total, fib.base
    X, Y = T.src[alpha], T.tgt[alpha]
    pa = fib.p(alpha)
    for X2 in T.objects:
        candidates = T.hom(X2, X)
        for u in T.hom(X2, Y):
            pu = fib.p(u)
            for beta in E.hom(fib.p(X2), E.src[pa]):
                if E.compose(pa, beta) != pu:
                    continue
                n = sum(1 for ub in candidates if fib.p(ub) == beta and T.compose(alpha, ub) == u)
                if n != 1:
                    return CartesianReport(False, (u, beta, n))
    return CartesianReport(True)


def cartesian_lift(fib: Fibration, alpha: str, Y: str) -> str | None:
    """The first cartesian morphism over alpha ending at Y, in identifier order."""
    if fib.p(Y) != fib.base.tgt[alpha]:
        raise CategoryError(f"{Y!r} does not lie over the target of {alpha!r}")
    for X in fib.objects_over(fib.base.src[alpha]):
        for g in fib.hom_over(X, Y, alpha):
            if is_cartesian(fib, g):
                return g
    return None


def cartesian_lifts(fib: Fibration, alpha: str, Y: str) -> list[str]:
    return [
        g
        for X in fib.objects_over(fib.base.src[alpha])
        for g in fib.hom_over(X, Y, alpha)
        if is_cartesian(fib, g)
    ]


@dataclass(frozen=True)
class FibrationReport:
    ok: bool
    witness: tuple | None = None  # (alpha, Y) without a cartesian lift

    def __bool__(self) -> bool:
        return self.ok


def is_fibration(fib: Fibration) -> FibrationReport:
    E = fib.base
    for alpha in E.sorted_morphisms:
        for Y in fib.objects_over(E.tgt[alpha]):
            if cartesian_lift(fib, alpha, Y) is None:
                return FibrationReport(False, (alpha, Y))
    return FibrationReport(True)


def lifts_unique_up_to_vertical_iso(fib: Fibration, alpha: str, Y: str) -> bool:
    """Any two cartesian lifts g1, g2 differ by exactly one vertical isomorphism v with g2 v = g1."""
    lifts = cartesian_lifts(fib, alpha, Y)
    T = fib.total
    fibres: dict = {}
    for g1 in lifts:
        for g2 in lifts:
            S = fib.p(T.src[g1])
            F = fibres.setdefault(S, fibre(fib, S))
            vs = [
                v
                for v in F.hom(T.src[g1], T.src[g2])
                if classify_morphism(F, v).iso and T.compose(g2, v) == g1
            ]
            if len(vs) != 1:
                return False
    return True


def identity_fibration(cat: ExplicitCategory) -> Fibration:
    return Fibration(cat, cat, FunctorTable(cat, cat, {f: f for f in cat.morphisms}))


def restrict_fibration(fib: Fibration, objects: Iterable[str]) -> Fibration:
    """The full subcategory on the given total objects, projected as before."""
    sub = full_subcategory(fib.total, objects)
    proj = FunctorTable(sub, fib.base, {g: fib.p(g) for g in sub.morphisms})
    return Fibration(sub, fib.base, proj, fib.addition)


# ---------------------------------------------------------------------------
# additive and abelian structure over the base


def _check_hom_group(fib: Fibration, X: str, Y: str, f: str, add: HomAddition, out: list) -> None:
    H = fib.hom_over(X, Y, f)
    if not H:
        return
    where = f"Hom_{f}({X},{Y})"
    hs = set(H)
    table = {}
    for a in H:
        for b in H:
            c = add(a, b)
            if c not in hs:
                out.append(Failure("group", f"{where}: {a} + {b} = {c} leaves the set"))
                return
            table[a, b] = c
    zeros = [z for z in H if all(table[z, a] == a for a in H)]
    if not zeros:
        out.append(Failure("group", f"{where}: no neutral element"))
        return
    z = zeros[0]
    for a in H:
        if all(table[a, b] != z for b in H):
            out.append(Failure("group", f"{where}: {a} has no inverse"))
            return
        for b in H:
            if table[a, b] != table[b, a]:
                out.append(Failure("group", f"{where}: not commutative at ({a}, {b})"))
                return
            for c in H:
                if table[table[a, b], c] != table[a, table[b, c]]:
                    out.append(Failure("group", f"{where}: not associative at ({a}, {b}, {c})"))
                    return


def check_additive_over_base(fib: Fibration, addition: HomAddition | None = None) -> StructureReport:
    """Every Hom_f(X, Y) is an abelian group, composition is biadditive, every fibre is additive."""
    add = addition or fib.addition
    if add is None:
        raise CategoryError("no group structure supplied on the sets Hom_f(X, Y)")
    T = fib.total
    report = StructureReport()
    for X in T.objects:
        for Y in T.objects:
            for f in sorted({fib.p(g) for g in T.hom(X, Y)}):
                _check_hom_group(fib, X, Y, f, add, report.failures)
    # biadditivity: (a + b) c = ac + bc and c (a + b) = ca + cb across Hom sets
    for X in T.objects:
        for Y in T.objects:
            for Z in T.objects:
                xy, yz = T.hom(X, Y), T.hom(Y, Z)
                if not xy or not yz:
                    continue
                by_base_xy: dict = {}
                for g in xy:
                    by_base_xy.setdefault(fib.p(g), []).append(g)
                by_base_yz: dict = {}
                for g in yz:
                    by_base_yz.setdefault(fib.p(g), []).append(g)
                bad = _biadditive_witness(T, by_base_xy, by_base_yz, add)
                if bad:
                    report.failures.append(Failure("biadditive", f"witness triple {bad}"))
    for S, cat in sorted(fib.fibre_modules.items()):
        sub = check_additive(cat)
        report.failures += [Failure(f"fibre {S} {x.clause}", x.detail) for x in sub.failures]
        report.warnings += [f"fibre {S}: {w}" for w in sub.warnings]
    return report


def _biadditive_witness(T: ExplicitCategory, xy: dict, yz: dict, add: HomAddition) -> tuple | None:
    for gs in yz.values():
        for c_list in xy.values():
            for a in gs:
                for b in gs:
                    s = add(a, b)
                    for c in c_list:
                        if T.compose(s, c) != add(T.compose(a, c), T.compose(b, c)):
                            return (a, b, c)
    for cs in xy.values():
        for g_list in yz.values():
            for a in cs:
                for b in cs:
                    s = add(a, b)
                    for c in g_list:
                        if T.compose(c, s) != add(T.compose(c, a), T.compose(c, b)):
                            return (c, a, b)
    return None


def check_abelian_over_base(fib: Fibration, addition: HomAddition | None = None) -> StructureReport:
    """Additive over the base, abelian fibres, and Hom_f(-, -) left exact in each variable."""
    add = addition or fib.addition
    report = check_additive_over_base(fib, add)
    if not fib.fibre_modules:
        raise CategoryError("abelian checks need module fibres")
    T, E = fib.total, fib.base
    for S, cat in sorted(fib.fibre_modules.items()):
        sub = check_abelian(cat)
        report.failures += [Failure(f"fibre {S} {x.clause}", x.detail) for x in sub.failures if "fibre" not in x.clause]
    zero_of: dict = {}

    def zero(X, Y, f):
        key = (X, Y, f)
        if key not in zero_of:
            H = fib.hom_over(X, Y, f)
            zero_of[key] = next(z for z in H if all(add(z, a) == a for a in H))
        return zero_of[key]

    def exact(seq_sets, maps, zC):
        # 0 -> A -m1-> B -m2-> C with A, B, C finite groups given by element lists; zC is the zero of C
        (A, B, _), (m1, m2) = seq_sets, maps
        if len({m1[a] for a in A}) != len(A):
            return False
        image = {m1[a] for a in A}
        kernel = {b for b in B if m2[b] == zC}
        return image == kernel

    for S, cat in sorted(fib.fibre_modules.items()):
        ses = [(fib.vertical[S, _key(f)], fib.vertical[S, _key(g)]) for f, g in short_exact_sequences(cat)]
        for i, j in ses:
            A, B, C = T.src[i], T.tgt[i], T.tgt[j]
            # contravariant variable: 0 -> Hom_f(C, Y) -> Hom_f(B, Y) -> Hom_f(A, Y)
            for f in E.sorted_morphisms:
                if E.src[f] != S:
                    continue
                for Y in fib.objects_over(E.tgt[f]):
                    hc, hb, ha = fib.hom_over(C, Y, f), fib.hom_over(B, Y, f), fib.hom_over(A, Y, f)
                    m1 = {u: T.compose(u, j) for u in hc}
                    m2 = {u: T.compose(u, i) for u in hb}
                    if not exact((hc, hb, ha), (m1, m2), zero(A, Y, f)):
                        report.failures.append(Failure("left exact", f"Hom_{f}(-, {Y}) on {i}, {j}"))
            # covariant variable: 0 -> Hom_f(X, A) -> Hom_f(X, B) -> Hom_f(X, C)
            for f in E.sorted_morphisms:
                if E.tgt[f] != S:
                    continue
                for X in fib.objects_over(E.src[f]):
                    ha, hb, hc = fib.hom_over(X, A, f), fib.hom_over(X, B, f), fib.hom_over(X, C, f)
                    m1 = {u: T.compose(i, u) for u in ha}
                    m2 = {u: T.compose(j, u) for u in hb}
                    if not exact((ha, hb, hc), (m1, m2), zero(X, C, f)):
                        report.failures.append(Failure("left exact", f"Hom_{f}({X}, -) on {i}, {j}"))
    return report


def fibre_limits(fib: Fibration, items: Sequence[str] = ("difference kernels",)) -> dict:
    """special_limits on every fibre; an empty fibre passes vacuously (reported as an empty dict)."""
    out = {}
    for S in fib.base.objects:
        F = fibre(fib, S)
        out[S] = special_limits(F, tuple(items)) if F.objects else {}
    return out


# ---------------------------------------------------------------------------
# modules over finite rings


def _key(f: LinearMap) -> tuple:
    return (f.source.name, f.target.name, f.values)


def ring_category(rings: Sequence[FiniteRing]) -> tuple[ExplicitCategory, dict]:
    """Rings as objects, unital homomorphisms as morphisms; returns the value tuples too."""
    names: dict = {}  # morphism -> (R, S, values)
    by_values: dict = {}
    for R in rings:
        for S in rings:
            for vals in ring_homs(R, S):
                ident = R is S and vals == tuple(R.elements)
                nm = R.name if ident else f"{R.name}>{S.name}[{','.join(map(str, vals))}]"
                names[nm] = (R, S, vals)
                by_values[R.name, S.name, vals] = nm
    comp = []
    for g, (R, S, v) in names.items():
        for f, (S2, U, w) in names.items():
            if S2 is S:
                comp.append((f, g, by_values[R.name, U.name, tuple(w[x] for x in v)]))
    cat = make_category(list(names), {m: names[m][0].name for m in names}, {m: names[m][1].name for m in names},
                        comp, labels=names, name="rings")
    return cat, names


def restrict_scalars(M: Module, phi: Sequence[int], R: FiniteRing) -> Module:
    """M as an R-module through phi: R -> (ring of M)."""
    act = tuple(M.act_table[phi[r]] for r in R.elements)
    return Module(R, M.add_table, act, f"{M.name}|{R.name}", M.generators, M.orders)


def build_module_fibration(rings: Sequence[FiniteRing], cap: int = 4) -> Fibration:
    """Pairs (R, M) over the ring category; a morphism over phi is an R-linear map M -> M' restricted along phi."""
    E, ring_maps = ring_category(rings)
    cats = {R.name: ModuleCategory(R, cap) for R in rings}
    obj_name = {}
    for R in rings:
        for M in cats[R.name].objects:
            obj_name[R.name, M.name] = f"({R.name},{M.name})"
    mors: dict = {}  # name -> (phi name, source obj, target obj, values)
    by_key: dict = {}
    restricted: dict = {}
    for phi, (R, S, vals) in sorted(ring_maps.items()):
        for M in cats[R.name].objects:
            for N in cats[S.name].objects:
                key = (phi, N.name)
                if key not in restricted:
                    restricted[key] = restrict_scalars(N, vals, R)
                N_R = restricted[key]
                for f in sorted(linear_maps(M, N_R), key=lambda m: m.values):
                    X, Y = obj_name[R.name, M.name], obj_name[S.name, N.name]
                    if phi == R.name and M is N and f.values == tuple(M.elements):
                        nm = X
                    else:
                        prefix = "" if phi == R.name else f"{phi}|"
                        nm = f"{prefix}{M.name}>{N.name}[{','.join(map(str, f.values))}]@{R.name}"
                    mors[nm] = (phi, X, Y, f.values)
                    by_key[phi, X, Y, f.values] = nm
    # composition: (psi, g) o (phi, f) = (psi phi, g f)
    out_of: dict = {}
    for nm, (phi, X, Y, v) in mors.items():
        out_of.setdefault(X, []).append(nm)
    comp = []
    for g, (phi, X, Y, v) in mors.items():
        for f in out_of.get(Y, ()):
            psi, _, Z, w = mors[f]
            h = E.compose(psi, phi)
            comp.append((f, g, by_key[h, X, Z, tuple(w[x] for x in v)]))
    total = make_category(list(mors), {m: mors[m][1] for m in mors}, {m: mors[m][2] for m in mors}, comp,
                          labels=mors, name="module fibration")
    proj = FunctorTable(total, E, {m: mors[m][0] for m in mors})
    obj_module = {obj_name[R.name, M.name]: M for R in rings for M in cats[R.name].objects}

    def addition(a: str, b: str) -> str:
        phi, X, Y, v = mors[a]
        phi2, X2, Y2, w = mors[b]
        if (phi, X, Y) != (phi2, X2, Y2):
            raise CategoryError(f"{a} and {b} are not in the same Hom_f(X, Y)")
        N = obj_module[Y]
        return by_key[phi, X, Y, tuple(N.add(x, y) for x, y in zip(v, w))]

    vertical = {}
    for R in rings:
        C = cats[R.name]
        for A in C.objects:
            for B in C.objects:
                for f in C.hom(A, B):
                    vertical[R.name, _key(f)] = by_key[R.name, obj_name[R.name, A.name], obj_name[R.name, B.name], f.values]
    return Fibration(total, E, proj, addition, cats, vertical)


def corrupt_addition(fib: Fibration, a: str, b: str, result: str) -> HomAddition:
    """The fibration's addition with the single sum a + b retargeted to ``result``."""
    base = fib.addition

    def add(x: str, y: str) -> str:
        if (x, y) == (a, b):
            return result
        return base(x, y)

    return add
