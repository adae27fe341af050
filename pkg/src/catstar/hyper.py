"""A sequence model of the enlargement: internal elements as index sequences.

Truth is decided componentwise and a property counts as holding only on a
cofinite set of indices. A finite window cannot see cofiniteness, so a
decided verdict always rests on a certificate attached by the builder of
an internal element; without one the verdict is Undecided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Mapping

from .category import CategoryError, ExplicitCategory
from .filtered import (
    FiniteSubsystem,
    SetDiagram,
    compatible_families,
    cone_problems,
    finite_subsystem_cone,
    whole,
)
from .fixtures import poset_category
from .logic.evaluate import evaluate
from .logic.parser import parse_formula
from .logic.syntax import And, Const, Eq, Formula, In, Not, Pair, Term, constants, desugar, map_terms
from .logic.values import Atom, SSet, SValue, make_pair
from .rings import FiniteRing, ResidueRing

DEFAULT_WINDOW = 64


class CertificateError(ValueError):
    """A certificate is contradicted by a component inside the window."""


class WindowError(ValueError):
    """The window does not reach past the first defined index."""


# ---------------------------------------------------------------------------
# internal elements


@dataclass(frozen=True)
class Certificate:
    """A trusted assertion about the tail of an internal element.

    kind "constant": every component is the same value.
    kind "formula": ``formula`` holds at every index from ``start`` on.
    kind "increasing": components are strictly increasing integers.
    """

    kind: str
    formula: Formula | None = None
    start: int = 0
    note: str = ""


@dataclass(frozen=True, eq=False)
class InternalElement:
    generator: Callable[[int], object]
    defined_from: int = 0
    certificates: tuple = ()
    name: str = ""

    def __call__(self, n: int):
        if n < self.defined_from:
            raise WindowError(f"{self.name or 'element'} is undefined at index {n}")
        return self.generator(n)

    def components(self, stop: int, start: int | None = None) -> list:
        return [self(n) for n in range(self.defined_from if start is None else start, stop)]

    def certified(self, kind: str) -> list[Certificate]:
        return [c for c in self.certificates if c.kind == kind]

    @property
    def is_constant(self) -> bool:
        return bool(self.certified("constant"))

    def with_certificate(self, cert: Certificate) -> "InternalElement":
        return replace(self, certificates=self.certificates + (cert,))

    def renamed(self, name: str) -> "InternalElement":
        """The same sequence under a new name; formula certificates follow the name."""
        old = self.name
        certs = tuple(
            replace(c, formula=_rename_constant(c.formula, old, name)) if c.formula is not None else c
            for c in self.certificates
        )
        return replace(self, name=name, certificates=certs)


def _rename_constant(phi: Formula, old: str, new: str) -> Formula:
    def go(t: Term) -> Term:
        if isinstance(t, Const) and t.name == old:
            return Const(Atom(f"@{new}"), new)
        if isinstance(t, Pair):
            return Pair(go(t.left), go(t.right))
        return t

    return map_terms(phi, go)


def star_const(value, name: str = "") -> InternalElement:
    """The constant sequence: the image of a standard value."""
    return InternalElement(lambda n: value, 0, (Certificate("constant", note="constant sequence"),), name or str(value))


class _PrimeTable:
    """Primes by a sieve whose bound doubles on demand."""

    def __init__(self):
        self.primes: list[int] = []
        self.limit = 1

    def nth(self, n: int) -> int:
        while len(self.primes) <= n:
            self._grow(max(16, self.limit * 2))
        return self.primes[n]

    def _grow(self, limit: int):
        flags = bytearray([1]) * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for p in range(2, int(limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
        self.primes = [i for i in range(limit + 1) if flags[i]]
        self.limit = limit


_PRIMES = _PrimeTable()


def nth_prime(n: int) -> int:
    """The n-th prime, counting from nth_prime(0) = 2."""
    return _PRIMES.nth(n)


def _stmt(text: str, names: Iterable[str]) -> Formula:
    return parse_formula(text, {x: Atom(f"@{x}") for x in names})


def make_internal(
    builder: str,
    name: str | None = None,
    *,
    generator: Callable[[int], object] | None = None,
    defined_from: int = 0,
    certificates: Iterable[Certificate] = (),
) -> InternalElement:
    """Builders: identity (omega), nth_prime (P), factorial (H), custom (needs a generator)."""
    if builder == "identity":
        nm = name or "omega"
        return InternalElement(lambda n: n, 0, tuple(certificates), nm)
    if builder == "nth_prime":
        nm = name or "P"
        certs = (
            Certificate("formula", _stmt(f"is_prime({nm})", [nm]), 0, "every component is a prime"),
            Certificate("formula", _stmt(f"not is_even({nm})", [nm]), 1, "primes after 2 are odd"),
            Certificate("increasing", note="primes are listed in increasing order"),
        )
        return InternalElement(nth_prime, 0, certs + tuple(certificates), nm)
    if builder == "factorial":
        nm = name or "H"
        return InternalElement(factorial, 0, tuple(certificates), nm)
    if builder == "custom":
        if generator is None:
            raise ValueError("the custom builder needs a generator")
        return InternalElement(generator, defined_from, tuple(certificates), name or "custom")
    raise ValueError(f"unknown builder {builder!r}")


def increasing_certificate() -> Certificate:
    return Certificate("increasing", note="strictly increasing integer components")


# ---------------------------------------------------------------------------
# componentwise evaluation


def _is_prime(k) -> bool:
    return isinstance(k, int) and k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


@lru_cache(maxsize=None)
def _residue_is_field(modulus: int) -> bool:
    return ResidueRing(modulus).is_field()


def _is_field(r) -> bool:
    if isinstance(r, ResidueRing):
        return _residue_is_field(r.modulus)
    return isinstance(r, FiniteRing) and r.is_field()


RELATIONS: dict[str, tuple[int, Callable]] = {
    "lt": (2, lambda a, b: isinstance(a, int) and isinstance(b, int) and a < b),
    "le": (2, lambda a, b: isinstance(a, int) and isinstance(b, int) and a <= b),
    "divides": (2, lambda a, b: isinstance(a, int) and isinstance(b, int) and a != 0 and b % a == 0),
    "is_prime": (1, _is_prime),
    "is_even": (1, lambda a: isinstance(a, int) and a % 2 == 0),
    "is_field": (1, _is_field),
}


def encode(value, table: dict) -> SValue:
    """Domain values as superstructure values; ``table`` records atom -> value."""
    if isinstance(value, (Atom, SSet)):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not domain values")
    if isinstance(value, int):
        a = Atom(str(value))
    elif isinstance(value, (ResidueRing, FiniteRing)):
        a = Atom(value.name)
    elif isinstance(value, (set, frozenset, tuple, list)):
        return SSet(frozenset(encode(v, table) for v in value))
    else:
        raise TypeError(f"cannot encode {value!r}")
    table[a] = value
    return a


def _literal_value(c: Const):
    """Numerals written in a formula denote integers."""
    if isinstance(c.value, Atom) and c.name is not None and c.name.isdigit():
        return int(c.name)
    return None


def _internal_names(phi: Formula, elements: Mapping[str, InternalElement]) -> set[str]:
    return {c.name for c in constants(phi) if c.name in elements}


def component_formula(phi: Formula, elements: Mapping[str, InternalElement], n: int) -> Formula:
    """The statement at index n: internal constants replaced by their components, relations materialized."""
    table: dict = {}
    values = {name: encode(el(n), table) for name, el in elements.items() if name in _internal_names(phi, elements)}
    for c in constants(phi):
        lit = _literal_value(c)
        if lit is not None:
            encode(lit, table)
    universe = list(table.items())
    rel_values = {}
    for rel, (arity, pred) in RELATIONS.items():
        if arity == 1:
            rel_values[rel] = SSet(frozenset(a for a, v in universe if pred(v)))
        else:
            rel_values[rel] = SSet(
                frozenset(make_pair(a, b) for (a, v), (b, w) in itertools.product(universe, repeat=2) if pred(v, w))
            )

    def go(t: Term) -> Term:
        if isinstance(t, Const):
            if t.name in values:
                return Const(values[t.name], t.name)
            if t.name in rel_values and t.name not in elements:
                return Const(rel_values[t.name], t.name)
            return t
        if isinstance(t, Pair):
            return Pair(go(t.left), go(t.right))
        if hasattr(t, "fn"):
            return type(t)(go(t.fn), go(t.arg))
        return t

    return map_terms(phi, go)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "True", "False" or "Undecided"
    window: tuple  # (first index, stop)
    truths: tuple  # per-index truth values over the window
    certified: bool
    note: str = ""

    @property
    def count_true(self) -> int:
        return sum(self.truths)

    @property
    def count_false(self) -> int:
        return len(self.truths) - sum(self.truths)

    def first(self, value: bool) -> int | None:
        for k, t in enumerate(self.truths):
            if t == value:
                return self.window[0] + k
        return None

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "certified": self.certified,
            "window": list(self.window),
            "true": self.count_true,
            "false": self.count_false,
            "first_true": self.first(True),
            "first_false": self.first(False),
            "note": self.note,
        }


def _certify(phi: Formula, elements: Mapping[str, InternalElement]) -> tuple[bool, int, str] | None:
    """A certified truth value for phi from some index on, or None.

    Rules: formulas mentioning only constant sequences are index independent;
    t = t holds everywhere; Not and And combine certified parts; a formula
    matching a builder's formula certificate (or whose negation does) is
    decided from the certificate's start; lt/le/= against a standard integer
    are decided for strictly increasing sequences.
    """
    names = _internal_names(phi, elements)
    if all(elements[x].is_constant for x in names):
        start = max((elements[x].defined_from for x in names), default=0)
        return evaluate(component_formula(phi, elements, start)), start, "constant sequences"
    if isinstance(phi, Eq) and phi.left == phi.right:
        return True, 0, "equal terms"
    if isinstance(phi, Not):
        inner = _certify(phi.body, elements)
        return None if inner is None else (not inner[0], inner[1], inner[2])
    if isinstance(phi, And):
        a, b = _certify(phi.left, elements), _certify(phi.right, elements)
        if a is not None and not a[0]:
            return a
        if b is not None and not b[0]:
            return b
        if a is not None and b is not None:
            return True, max(a[1], b[1]), f"{a[2]}; {b[2]}"
        return None
    for x in sorted(names):
        for cert in elements[x].certified("formula"):
            claim = desugar(cert.formula)
            if claim == phi:
                return True, cert.start, cert.note
            if claim == Not(phi):
                return False, cert.start, cert.note
    return _certify_increasing(phi, elements)


def _certify_increasing(phi: Formula, elements: Mapping[str, InternalElement]) -> tuple[bool, int, str] | None:
    if isinstance(phi, In) and isinstance(phi.right, Const) and phi.right.name in ("lt", "le") and isinstance(phi.left, Pair):
        rel, a, b = phi.right.name, phi.left.left, phi.left.right
    elif isinstance(phi, Eq):
        rel, a, b = "eq", phi.left, phi.right
    else:
        return None
    for seq, std, seq_left in ((a, b, True), (b, a, False)):
        if not (isinstance(seq, Const) and seq.name in elements and elements[seq.name].certified("increasing")):
            continue
        if not isinstance(std, Const):
            continue
        k = _literal_value(std)
        if k is None and std.name in elements and elements[std.name].is_constant:
            k = elements[std.name](elements[std.name].defined_from)
        if not isinstance(k, int):
            continue
        el = elements[seq.name]
        n = el.defined_from
        while el(n) <= k:  # terminates: strictly increasing integers are unbounded
            n += 1
        # from n on the component exceeds k
        if rel == "eq":
            return False, n, "increasing sequence passes every standard integer"
        holds = not seq_left  # k < X and k <= X hold; X < k and X <= k fail
        return holds, n, "increasing sequence passes every standard integer"
    return None


def eval_on_window(
    phi: Formula | str,
    elements: Mapping[str, InternalElement],
    window: int = DEFAULT_WINDOW,
) -> Verdict:
    """Evaluate a statement componentwise on indices [start, window)."""
    if isinstance(phi, str):
        phi = parse_formula(phi, {x: Atom(f"@{x}") for x in elements})
    used = _internal_names(phi, elements)
    start = max((elements[x].defined_from for x in used), default=0)
    if window <= start:
        raise WindowError(f"window {window} does not reach past the first defined index {start}")
    truths = tuple(evaluate(component_formula(phi, elements, n)) for n in range(start, window))
    cert = _certify(desugar(phi), elements)
    if cert is not None:
        value, from_index, note = cert
        for n in range(max(from_index, start), window):
            if truths[n - start] != value:
                raise CertificateError(f"certificate ({note}) is contradicted at index {n}")
        return Verdict("True" if value else "False", (start, window), truths, True, note)
    return Verdict("Undecided", (start, window), truths, False, "no certificate covers this statement")


# ---------------------------------------------------------------------------
# residue rings along an internal integer


@dataclass(frozen=True)
class ResidueTower:
    modulus: InternalElement
    rings: InternalElement
    field_flags: tuple
    witnesses: dict  # index -> zero divisor (a, b) for non-fields
    verdict: Verdict

    __hash__ = None  # type: ignore[assignment]


def residue_tower(P: InternalElement, window: int = DEFAULT_WINDOW) -> ResidueTower:
    """The rings Z/P_n with a field check per component and an aggregate verdict."""
    certs = []
    if P.is_constant:
        certs.append(Certificate("constant", note="constant modulus"))
    for c in P.certified("formula"):
        if c.formula == _stmt(f"is_prime({P.name})", [P.name]):
            certs.append(Certificate("formula", _stmt("is_field(R)", ["R"]), c.start, "Z/p is a field for prime p"))
    rings = InternalElement(lambda n: ResidueRing(P(n)), P.defined_from, tuple(certs), "R")
    flags = []
    witnesses = {}
    for n in range(P.defined_from, window):
        ring = rings(n)
        ok = _is_field(ring)
        flags.append(ok)
        if not ok:
            witnesses[n] = ring.zero_divisor()
    verdict = eval_on_window("is_field(R)", {"R": rings}, window)
    return ResidueTower(P, rings, tuple(flags), witnesses, verdict)


# ---------------------------------------------------------------------------
# towers and the hyper-cone


@dataclass(frozen=True)
class TowerDiagram:
    """A cofiltered index category with an exhaustion by finite subsystems.

    ``object_at`` and ``morphism_at`` optionally realize the diagram.
    """

    index: ExplicitCategory
    exhaustion: Callable[[int], FiniteSubsystem]
    object_at: Callable[[str], object] | None = None
    morphism_at: Callable[[str], Callable] | None = None
    name: str = ""

    __hash__ = None  # type: ignore[assignment]


def full_exhaustion(cat: ExplicitCategory) -> Callable[[int], FiniteSubsystem]:
    """J_n is the whole category for every n."""
    J = whole(cat)
    return lambda n: J


def growing_exhaustion(cat: ExplicitCategory, order: Iterable[str] | None = None) -> Callable[[int], FiniteSubsystem]:
    """J_n holds the first n + 1 objects (in the given order) with every morphism among them."""
    obs = list(order) if order is not None else list(cat.objects)

    def J(n: int) -> FiniteSubsystem:
        chosen = set(obs[: n + 1])
        ms = [f for f in cat.sorted_morphisms if cat.src[f] in chosen and cat.tgt[f] in chosen]
        return FiniteSubsystem(tuple(obs[: n + 1]), tuple(ms))

    return J


def power_tower(p: int, stages: int) -> TowerDiagram:
    """Z/p^k for k = 1..stages with the reduction maps Z/p^m -> Z/p^k (m >= k).

    Index objects are the stage numbers; the arrow m -> k is named "m>k".
    """
    index = poset_category(list(range(1, stages + 1)), lambda a, b: a >= b, sep=">", name=f"tower({p})")
    order = [str(k) for k in range(1, stages + 1)]

    def obj(i: str) -> ResidueRing:
        return ResidueRing(p ** int(i))

    def mor(f: str):
        k = int(index.tgt[f])
        mod = p**k
        return lambda x: x % mod

    return TowerDiagram(index, growing_exhaustion(index, order), obj, mor, f"Z/{p}^n")


@dataclass(frozen=True)
class HyperCone:
    apex: InternalElement
    projections: dict  # standard object -> InternalElement of morphisms
    cones: tuple  # the cone at each index of the window
    window: int

    __hash__ = None  # type: ignore[assignment]

    def problems(self, tower: TowerDiagram) -> list[str]:
        """Triangle commutation at every defined index for every standard morphism."""
        I = tower.index
        out = []
        for n, cone in enumerate(self.cones):
            defined = {i for i, p in self.projections.items() if p.defined_from <= n}
            for phi in I.sorted_morphisms:
                i, j = I.src[phi], I.tgt[phi]
                if i in defined and j in defined and phi in tower.exhaustion(n).morphisms:
                    if I.compose(phi, self.projections[i](n)) != self.projections[j](n):
                        out.append(f"triangle over {phi!r} fails at index {n}")
        return out


def hyper_cone(tower: TowerDiagram, window: int = DEFAULT_WINDOW) -> HyperCone:
    """Component n of the apex is the cone apex over J_n; p_i is defined once i enters J_n."""
    I = tower.index
    cones = []
    for n in range(window):
        J = tower.exhaustion(n)
        cones.append(finite_subsystem_cone(I, J))
        problems = cone_problems(I, J, cones[-1])
        if problems:  # pragma: no cover - finite_subsystem_cone only returns commuting cones
            raise CategoryError("; ".join(problems))
    cones = tuple(cones)

    def apex_at(n: int) -> str:
        return cones[n].apex

    projections = {}
    for i in I.objects:
        first = next((n for n, c in enumerate(cones) if i in c.projections), None)
        if first is None:
            continue
        projections[i] = InternalElement(lambda n, i=i: cones[n].projections[i], first, (), f"p_{i}")
    return HyperCone(InternalElement(apex_at, 0, (), "i_-inf"), projections, cones, window)


# ---------------------------------------------------------------------------
# hom-sets out of a finite cyclic object


def cyclic_homs(m: int, n: int, kind: str = "ab") -> list[int]:
    """Homomorphisms Z/m -> Z/n, each given by the image of 1, found by table search.

    kind "ab": additive maps; kind "ring": unital ring maps. m = 1 is the zero object.
    """
    out = []
    for a in range(n):
        if (m * a) % n:
            continue  # 1 has order m, so its image must be killed by m
        f = [(x * a) % n for x in range(m)]
        if any(f[(x + y) % m] != (f[x] + f[y]) % n for x in range(m) for y in range(m)):
            continue
        if kind == "ring":
            if f[1 % m] != 1 % n or any(f[(x * y) % m] != (f[x] * f[y]) % n for x in range(m) for y in range(m)):
                continue
        elif kind != "ab":
            raise ValueError(f"unknown kind {kind!r}")
        out.append(a)
    return out


@dataclass(frozen=True)
class CorrespondenceReport:
    families: list  # compatible families over the window stages that extend further
    truncated_families: int
    lookahead: int
    sequences: int
    classes: list  # keys (projection values over observed stages)
    assignment: dict  # family index -> class index
    observed: tuple  # standard objects whose eventual projection the window sees
    bijective: bool
    legs_commute: bool
    zero_class: int | None

    __hash__ = None  # type: ignore[assignment]


def _tower_hom_diagram(p: int, stages: int, m: int, kind: str) -> SetDiagram:
    tower = power_tower(p, stages)
    I = tower.index
    values = {i: tuple(cyclic_homs(m, p ** int(i), kind)) for i in I.objects}
    maps = {f: {a: tower.morphism_at(f)(a) for a in values[I.src[f]]} for f in I.sorted_morphisms}
    return SetDiagram(I, values, maps)


def limit_correspondence(m: int, p: int = 2, window: int = 8, kind: str = "ab", lookahead: int = 2) -> CorrespondenceReport:
    """Compare lim_n hom(Z/m, Z/p^n) with classes of hom-sequences into the hyper-cone apex.

    The limit is computed as the compatible families on stages 1..window that
    extend to stages 1..window+lookahead. A hom-sequence (f_n) has f_n from
    Z/m into the apex component at index n; two sequences are equivalent when
    every observed standard projection agrees at the last index of the
    window, which stands in for "almost all n".
    """
    if window < 2:
        raise WindowError("the window needs at least two indices")
    base = compatible_families(_tower_hom_diagram(p, window, m, kind))
    extended = compatible_families(_tower_hom_diagram(p, window + lookahead, m, kind))
    stages = [str(k) for k in range(1, window + 1)]
    restricted = {tuple(f[s] for s in stages) for f in extended}
    families = [f for f in base if tuple(f[s] for s in stages) in restricted]

    tower = power_tower(p, window)
    cone = hyper_cone(tower, window)
    apex_homs = [cyclic_homs(m, p ** int(cone.apex(n)), kind) for n in range(window)]
    last = window - 1
    observed = tuple(i for i, pr in cone.projections.items() if pr.defined_from < last)
    observed = tuple(sorted(observed, key=int))

    def key_of(f_last: int) -> tuple:
        return tuple(tower.morphism_at(cone.projections[i](last))(f_last) for i in observed)

    n_sequences = 1
    for homs in apex_homs:
        n_sequences *= len(homs)
    if n_sequences == 0:
        keys = []
    else:
        keys = sorted({key_of(f) for f in apex_homs[last]})
    index_of = {k: c for c, k in enumerate(keys)}
    assignment = {}
    legs_commute = True
    for k, fam in enumerate(families):
        # the family's component at the apex stage gives a constant-position sequence
        key = key_of(fam[cone.apex(last)])
        assignment[k] = index_of.get(key)
        if key != tuple(fam[i] for i in observed):
            legs_commute = False
    bijective = None not in assignment.values() and len(set(assignment.values())) == len(families) == len(keys)
    zero_key = tuple(0 for _ in observed)
    return CorrespondenceReport(
        families,
        len(base),
        lookahead,
        n_sequences,
        keys,
        assignment,
        observed,
        bijective,
        legs_commute,
        index_of.get(zero_key),
    )


# ---------------------------------------------------------------------------
# the factorial apex of the divisibility system


@dataclass(frozen=True)
class InclusionCheck:
    n: int
    k: int
    image_of_one: int
    expected: int
    injective: bool
    additive: bool


def factorial_inclusions(window: int = 6) -> list[InclusionCheck]:
    """Z/n -> Z/(k!) sending 1 to k!/n, for n <= k < window, checked by tables."""
    H = make_internal("factorial")
    out = []
    for k in range(1, window):
        N = H(k)
        for n in range(1, k + 1):
            image = N // n
            f = [(x * image) % N for x in range(n)]
            additive = all(f[(x + y) % n] == (f[x] + f[y]) % N for x in range(n) for y in range(n))
            out.append(InclusionCheck(n, k, f[1 % n], (N // n) % N, len(set(f)) == n, additive))
    return out


def factorial_cocone_commutes(window: int = 6) -> bool:
    """iota_m after (Z/n -> Z/m, 1 -> m/n) equals iota_n whenever n | m <= k."""
    H = make_internal("factorial")
    for k in range(1, window):
        N = H(k)
        for m in range(1, k + 1):
            for n in range(1, m + 1):
                if m % n:
                    continue
                if ((m // n) * (N // m)) % N != (N // n) % N:
                    return False
    return True
