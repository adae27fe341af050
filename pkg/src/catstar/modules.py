"""Finite modules over finite rings: enumeration up to isomorphism and linear maps.

A module lives on the carrier {0, ..., n-1} with an addition table and a
table for the scalar action. Representatives use the abelian group
Z/d1 + ... + Z/dk in mixed radix (first coordinate least significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .category import CapExceededError, CategoryError, ExplicitCategory, make_category
from .rings import FiniteRing


class ModuleError(CategoryError):
    """Malformed module data or a map that is not linear."""


@dataclass(eq=False)
class Module:
    ring: FiniteRing
    add_table: tuple
    act_table: tuple  # act_table[r][x] = r * x
    name: str = ""
    # generators and their additive orders; every element is a unique combination
    generators: tuple = ()
    orders: tuple = ()

    def __repr__(self) -> str:
        return f"Module({self.name or '?'}, size={self.size})"

    @property
    def size(self) -> int:
        return len(self.add_table)

    @property
    def elements(self) -> range:
        return range(self.size)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def act(self, r: int, x: int) -> int:
        return self.act_table[r][x]

    @cached_property
    def _neg(self) -> tuple:
        return tuple(next(y for y in self.elements if self.add(x, y) == 0) for x in self.elements)

    def neg(self, x: int) -> int:
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self._neg[y])

    def order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.add(y, x)
            k += 1
        return k

    def multiple(self, k: int, x: int) -> int:
        y = 0
        for _ in range(k):
            y = self.add(y, x)
        return y

    @cached_property
    def basis(self) -> tuple[tuple, tuple]:
        """Generators and orders with every element a unique combination (found if not given)."""
        if self.generators:
            return self.generators, self.orders
        gens: list = []
        orders: list = []
        span = {0}
        # greedily add elements of largest order that enlarge the span as a direct summand
        while len(span) < self.size:
            best = None
            for x in sorted(self.elements, key=lambda e: (-self.order(e), e)):
                if x in span:
                    continue
                d = self.order(x)
                multiples = [self.multiple(k, x) for k in range(d)]
                new = {self.add(s, m) for s in span for m in multiples}
                if len(new) == len(span) * d:
                    best = (x, d, new)
                    break
            if best is None:
                raise ModuleError(f"{self.name}: no direct-sum basis found")
            gens.append(best[0])
            orders.append(best[1])
            span = best[2]
        return tuple(gens), tuple(orders)

    def problems(self) -> list[str]:
        R = self.ring
        E = self.elements
        out = []
        if any(self.add(0, x) != x for x in E):
            out.append("0 is not the additive identity")
        if any(self.add(x, y) != self.add(y, x) for x in E for y in E):
            out.append("addition is not commutative")
        if any(self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) for x in E for y in E for z in E):
            out.append("addition is not associative")
        if any(all(self.add(x, y) != 0 for y in E) for x in E):
            out.append("missing additive inverses")
        if out:
            return out
        if any(self.act(R.one, x) != x for x in E):
            out.append("1 does not act as the identity")
        for r in R.elements:
            for s in R.elements:
                for x in E:
                    if self.act(R.add(r, s), x) != self.add(self.act(r, x), self.act(s, x)):
                        out.append(f"(r + s)x = rx + sx fails at {(r, s, x)}")
                    if self.act(R.mul(r, s), x) != self.act(r, self.act(s, x)):
                        out.append(f"(rs)x = r(sx) fails at {(r, s, x)}")
            for x in E:
                for y in E:
                    if self.act(r, self.add(x, y)) != self.add(self.act(r, x), self.act(r, y)):
                        out.append(f"r(x + y) = rx + ry fails at {(r, x, y)}")
        return out[:10]


@dataclass(frozen=True)
class LinearMap:
    source: Module
    target: Module
    values: tuple  # values[x] = f(x)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __repr__(self) -> str:
        return f"{self.source.name}>{self.target.name}[{','.join(map(str, self.values))}]"

    @property
    def label(self) -> str:
        return repr(self)

    def then(self, g: "LinearMap") -> "LinearMap":
        """g o self."""
        if g.source is not self.target:
            raise ModuleError(f"cannot compose {self!r} with {g!r}")
        return LinearMap(self.source, g.target, tuple(g.values[v] for v in self.values))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target.size

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def kernel_set(self) -> list[int]:
        return [x for x in self.source.elements if self.values[x] == 0]

    def image_set(self) -> list[int]:
        return sorted(set(self.values))

    def problems(self) -> list[str]:
        A, B = self.source, self.target
        if len(self.values) != A.size or any(not 0 <= v < B.size for v in self.values):
            return ["values do not describe a map between the carriers"]
        out = []
        for x in A.elements:
            for y in A.elements:
                if self.values[A.add(x, y)] != B.add(self.values[x], self.values[y]):
                    out.append(f"not additive at {(x, y)}")
                    return out
        for r in A.ring.elements:
            for x in A.elements:
                if self.values[A.act(r, x)] != B.act(r, self.values[x]):
                    out.append(f"not linear at {(r, x)}")
                    return out
        return out


def identity_map(A: Module) -> LinearMap:
    return LinearMap(A, A, tuple(A.elements))


def zero_map(A: Module, B: Module) -> LinearMap:
    return LinearMap(A, B, tuple(0 for _ in A.elements))


def add_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    if f.source is not g.source or f.target is not g.target:
        raise ModuleError("maps are not parallel")
    B = f.target
    return LinearMap(f.source, B, tuple(B.add(a, b) for a, b in zip(f.values, g.values)))


def neg_map(f: LinearMap) -> LinearMap:
    return LinearMap(f.source, f.target, tuple(f.target.neg(v) for v in f.values))


def scale_map(r: int, f: LinearMap) -> LinearMap:
    return LinearMap(f.source, f.target, tuple(f.target.act(r, v) for v in f.values))


def is_linear(f: LinearMap) -> bool:
    return not f.problems()


def map_from_generators(A: Module, B: Module, images: Sequence[int]) -> LinearMap:
    """The additive map sending A's basis generators to ``images``."""
    gens, orders = A.basis
    coords = _coordinates(A)
    values = []
    for x in A.elements:
        y = 0
        for c, b in zip(coords[x], images):
            y = B.add(y, B.multiple(c, b))
        values.append(y)
    return LinearMap(A, B, tuple(values))


def _coordinates(A: Module) -> list[tuple]:
    cached = getattr(A, "_coords", None)
    if cached is not None:
        return cached
    gens, orders = A.basis
    coords: list = [None] * A.size
    for cs in itertools.product(*[range(d) for d in orders]):
        x = 0
        for c, g in zip(cs, gens):
            x = A.add(x, A.multiple(c, g))
        coords[x] = cs
    A._coords = coords  # type: ignore[attr-defined]
    return coords


def linear_maps(A: Module, B: Module) -> Iterator[LinearMap]:
    """Every R-linear map A -> B: generator images of compatible order, then a linearity check."""
    gens, orders = A.basis
    choices = [[b for b in B.elements if B.multiple(d, b) == 0] for d in orders]
    for images in itertools.product(*choices):
        f = map_from_generators(A, B, images)
        if all(f.values[A.act(r, g)] == B.act(r, f.values[g]) for r in A.ring.elements for g in gens):
            yield f


# ---------------------------------------------------------------------------
# representatives


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return out


def _partitions(e: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = e if largest is None else largest
    if e == 0:
        yield []
        return
    for k in range(min(e, largest), 0, -1):
        for rest in _partitions(e - k, k):
            yield [k] + rest


def group_types(n: int) -> list[tuple[int, ...]]:
    """Abelian groups of order n as sorted tuples of prime-power cyclic orders."""
    per_prime = [[sorted(p**k for k in part) for part in _partitions(e)] for p, e in _prime_powers(n)]
    out = []
    for combo in itertools.product(*per_prime):
        out.append(tuple(sorted(d for part in combo for d in part)))
    return sorted(out)


def group_name(orders: tuple[int, ...]) -> str:
    return "+".join(f"Z{d}" for d in orders) if orders else "0"


def cyclic_sum_tables(orders: tuple[int, ...]) -> tuple:
    size = 1
    for d in orders:
        size *= d
    weights = []
    w = 1
    for d in orders:
        weights.append(w)
        w *= d

    def coords(x):
        return [(x // w) % d for w, d in zip(weights, orders)]

    def encode(cs):
        return sum(c * w for c, w in zip(cs, weights))

    table = tuple(
        tuple(encode([(a + b) % d for a, b, d in zip(coords(x), coords(y), orders)]) for y in range(size))
        for x in range(size)
    )
    return table, tuple(weights)


def _endomorphisms(group: Module) -> list[tuple]:
    gens, orders = group.basis
    choices = [[b for b in group.elements if group.multiple(d, b) == 0] for d in orders]
    return [map_from_generators(group, group, imgs).values for imgs in itertools.product(*choices)]


def _ring_is_cyclic(R: FiniteRing) -> bool:
    """R is additively generated by 1, so every abelian group has at most one R-action."""
    k, x = 1, R.one
    while x != 0:
        x = R.add(x, R.one)
        k += 1
    return k == R.size


def _actions(R: FiniteRing, group: Module) -> list[tuple]:
    """Unital ring maps R -> End(group), each as a tuple of value tuples indexed by r."""
    n = group.size
    ident = tuple(range(n))
    if _ring_is_cyclic(R):
        # r = k * 1 acts as multiplication by k
        table = []
        x = 0
        mult = {}
        for k in range(R.size):
            mult[x] = k
            x = R.add(x, R.one)
        for r in R.elements:
            k = mult[r]
            table.append(tuple(group.multiple(k, g) for g in group.elements))
        acts = tuple(table)
        candidate = Module(R, group.add_table, acts)
        return [acts] if not candidate.problems() else []
    ends = _endomorphisms(group)
    out = []

    def compose(f, g):
        return tuple(f[v] for v in g)

    def plus(f, g):
        return tuple(group.add(a, b) for a, b in zip(f, g))

    def close(rho: dict) -> dict | None:
        """Extend by every forced sum and product; None on a contradiction."""
        rho = dict(rho)
        changed = True
        while changed:
            changed = False
            for r, fr in list(rho.items()):
                for s, fs in list(rho.items()):
                    for t, ft in ((R.add(r, s), plus(fr, fs)), (R.mul(r, s), compose(fr, fs))):
                        if t not in rho:
                            rho[t] = ft
                            changed = True
                        elif rho[t] != ft:
                            return None
        return rho

    def go(rho: dict):
        if len(rho) == R.size:
            out.append(tuple(rho[r] for r in R.elements))
            return
        r = next(x for x in R.elements if x not in rho)
        for f in ends:
            nxt = close({**rho, r: f})
            if nxt is not None:
                go(nxt)

    start = close({0: tuple(0 for _ in range(n)), R.one: ident})
    if start is not None:
        go(start)
    return sorted(set(out))


def _automorphisms(group: Module) -> list[tuple]:
    return [f for f in _endomorphisms(group) if len(set(f)) == len(f)]


def _canonical_action(acts: tuple, auts: list[tuple]) -> tuple:
    best = None
    for g in auts:
        inv = [0] * len(g)
        for x, y in enumerate(g):
            inv[y] = x
        conj = tuple(tuple(g[f[inv[x]]] for x in range(len(g))) for f in acts)
        if best is None or conj < best:
            best = conj
    return best


def module_representatives(R: FiniteRing, size: int) -> list[Module]:
    """One module per isomorphism class on a carrier of the given size."""
    out = []
    for orders in group_types(size):
        table, weights = cyclic_sum_tables(orders)
        gens = tuple(weights)
        group = Module(R, table, (), group_name(orders), gens, orders)
        acts = _actions(R, group)
        if not acts:
            continue
        if len(acts) > 1:
            auts = _automorphisms(group)
            acts = sorted({_canonical_action(a, auts) for a in acts})
        for k, a in enumerate(acts):
            name = group.name if len(acts) == 1 else f"{group.name}({k + 1})"
            out.append(Module(R, table, a, name, gens, orders))
    return out


def find_isomorphism(M: Module, N: Module) -> LinearMap | None:
    """An isomorphism M -> N, searching images of M's basis, or None."""
    if M.size != N.size:
        return None
    gens, orders = M.basis
    choices = [[b for b in N.elements if N.order(b) == d] for d in orders]
    for images in itertools.product(*choices):
        f = map_from_generators(M, N, images)
        if f.is_injective() and all(
            f.values[M.act(r, g)] == N.act(r, f.values[g]) for r in M.ring.elements for g in gens
        ):
            return f
    return None


def inverse_map(f: LinearMap) -> LinearMap:
    inv = [0] * f.target.size
    for x, y in enumerate(f.values):
        inv[y] = x
    return LinearMap(f.target, f.source, tuple(inv))


# ---------------------------------------------------------------------------
# concrete constructions


def submodule(B: Module, elements: Iterable[int], name: str = "") -> tuple[Module, LinearMap]:
    """The submodule on a subset closed under the operations, with its inclusion."""
    els = sorted(set(elements))
    if not els or els[0] != 0:
        raise ModuleError("a submodule contains 0")
    pos = {x: k for k, x in enumerate(els)}
    try:
        add = tuple(tuple(pos[B.add(x, y)] for y in els) for x in els)
        act = tuple(tuple(pos[B.act(r, x)] for x in els) for r in B.ring.elements)
    except KeyError:
        raise ModuleError("subset is not closed under the module operations") from None
    S = Module(B.ring, add, act, name or f"sub({B.name})")
    return S, LinearMap(S, B, tuple(els))


def quotient(B: Module, sub: Iterable[int], name: str = "") -> tuple[Module, LinearMap]:
    """B / S with the projection; cosets are numbered by their least element."""
    S = set(sub)
    coset_of: dict = {}
    reps = []
    for x in B.elements:
        if x in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for s in S:
            coset_of[B.add(x, s)] = k
    add = tuple(tuple(coset_of[B.add(a, b)] for b in reps) for a in reps)
    act = tuple(tuple(coset_of[B.act(r, a)] for a in reps) for r in B.ring.elements)
    Q = Module(B.ring, add, act, name or f"{B.name}/S")
    return Q, LinearMap(B, Q, tuple(coset_of[x] for x in B.elements))


@dataclass(frozen=True)
class Biproduct:
    obj: Module
    inclusions: tuple  # LinearMaps into obj
    projections: tuple  # LinearMaps out of obj


def direct_sum(A: Module, B: Module, name: str = "") -> Biproduct:
    """A + B on the carrier a * |B| + b."""
    if A.ring is not B.ring:
        raise ModuleError("modules over different rings")
    k = B.size

    def enc(a, b):
        return a * k + b

    pairs = [(a, b) for a in A.elements for b in B.elements]
    add = tuple(tuple(enc(A.add(a, c), B.add(b, d)) for c, d in pairs) for a, b in pairs)
    act = tuple(tuple(enc(A.act(r, a), B.act(r, b)) for a, b in pairs) for r in A.ring.elements)
    S = Module(A.ring, add, act, name or f"({A.name}+{B.name})")
    inc = (
        LinearMap(A, S, tuple(enc(a, 0) for a in A.elements)),
        LinearMap(B, S, tuple(enc(0, b) for b in B.elements)),
    )
    proj = (
        LinearMap(S, A, tuple(a for a, b in pairs)),
        LinearMap(S, B, tuple(b for a, b in pairs)),
    )
    return Biproduct(S, inc, proj)


def hom_module(A: Module, B: Module, maps: list[LinearMap] | None = None) -> tuple[Module, list[LinearMap]]:
    """hom(A, B) as a module under pointwise operations (the ring must be commutative)."""
    R = A.ring
    if not R.is_commutative():
        raise ModuleError("hom modules need a commutative ring")
    maps = list(linear_maps(A, B)) if maps is None else maps
    maps.sort(key=lambda f: f.values)
    if not maps or not maps[0].is_zero():
        raise ModuleError("hom set must start with the zero map")
    pos = {f.values: k for k, f in enumerate(maps)}
    add = tuple(tuple(pos[add_maps(f, g).values] for g in maps) for f in maps)
    act = tuple(tuple(pos[scale_map(r, f).values] for f in maps) for r in R.elements)
    return Module(R, add, act, f"hom({A.name},{B.name})"), maps


# ---------------------------------------------------------------------------
# the category of modules under a size cap


class ModuleCategory:
    """R-modules with at most ``cap`` elements, one per isomorphism class; homs are enumerated lazily."""

    def __init__(self, ring: FiniteRing, cap: int = 4):
        if cap < ring.size:
            raise CapExceededError(f"cap {cap} is smaller than the ring {ring.name} ({ring.size} elements)")
        self.ring = ring
        self.cap = cap
        self._homs: dict = {}
        self.objects: list[Module] = []
        for n in range(1, cap + 1):
            self.objects.extend(module_representatives(ring, n))
        self.by_name = {M.name: M for M in self.objects}

    def __repr__(self) -> str:
        return f"ModuleCategory({self.ring.name}, cap={self.cap})"

    @property
    def zero(self) -> Module:
        return self.objects[0]

    def __getitem__(self, name: str) -> Module:
        if name in ("R", self.ring.name) and name not in self.by_name:
            return self.regular()
        try:
            return self.by_name[name]
        except KeyError:
            raise ModuleError(f"no module named {name!r} over {self.ring.name} (cap {self.cap})") from None

    def names(self) -> list[str]:
        return [M.name for M in self.objects]

    def hom(self, A: Module, B: Module) -> list[LinearMap]:
        key = (id(A), id(B))
        out = self._homs.get(key)
        if out is None:
            out = sorted(linear_maps(A, B), key=lambda f: f.values)
            self._homs[key] = out
        return out

    def regular(self) -> Module:
        """The representative of R as a module over itself."""
        R = self.ring
        M = Module(R, R.add_table, tuple(tuple(R.mul(r, x) for x in R.elements) for r in R.elements), "R")
        return self.classify(M)[0]

    def classify(self, M: Module) -> tuple[Module, LinearMap]:
        """The representative isomorphic to M and an isomorphism M -> representative."""
        if M.size > self.cap:
            raise CapExceededError(f"module with {M.size} elements exceeds the cap {self.cap}")
        for N in self.objects:
            if N.size == M.size:
                f = find_isomorphism(M, N)
                if f is not None:
                    return N, f
        raise ModuleError(f"{M.name} matches no representative")  # pragma: no cover

    def biproduct(self, A: Module, B: Module) -> Biproduct:
        """A + B moved onto its representative; raises when it exceeds the cap."""
        if A.size * B.size > self.cap:
            raise CapExceededError(f"{A.name} + {B.name} has {A.size * B.size} elements, cap is {self.cap}")
        bp = direct_sum(A, B)
        N, iso = self.classify(bp.obj)
        inv = inverse_map(iso)
        return Biproduct(
            N,
            tuple(i.then(iso) for i in bp.inclusions),
            tuple(inv.then(p) for p in bp.projections),
        )

    def monomorphisms(self, A: Module, B: Module) -> list[LinearMap]:
        return [f for f in self.hom(A, B) if f.is_injective()]

    def explicit(self) -> tuple[ExplicitCategory, dict]:
        """The fragment as an explicit category; the dict maps names to linear maps."""
        names: dict = {}
        by_map: dict = {}
        for A in self.objects:
            for B in self.objects:
                for f in self.hom(A, B):
                    nm = A.name if (A is B and f.values == tuple(A.elements)) else repr(f)
                    names[nm] = f
                    by_map[(id(A), id(B), f.values)] = nm
        src = {nm: f.source.name for nm, f in names.items()}
        tgt = {nm: f.target.name for nm, f in names.items()}
        comp = []
        for A in self.objects:
            for B in self.objects:
                for g in self.hom(A, B):
                    for C in self.objects:
                        for f in self.hom(B, C):
                            h = g.then(f)
                            comp.append((by_map[(id(B), id(C), f.values)], by_map[(id(A), id(B), g.values)], by_map[(id(A), id(C), h.values)]))
        cat = make_category(list(names), src, tgt, comp, labels=dict(names), name=f"{self.ring.name}-Mod<={self.cap}")
        return cat, names
