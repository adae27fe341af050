"""Star maps between fragments, syntactic transfer, and agreement checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .evaluate import DEFAULT_CONFIG, EvalConfig, evaluate
from .syntax import Apply, Const, Formula, Pair, Term, Var, constants, format_formula, map_terms
from .values import EMPTY, Atom, SSet, SValue, atoms, sorted_values

STAR_SUFFIX = "_star"


class TransferError(ValueError):
    """A constant lies outside the domain of the star map."""


@dataclass(frozen=True)
class StarMap:
    """A map on values: atoms go to themselves, finite sets elementwise, unless overridden.

    ``overrides`` are consulted first at every level, so a changed value is
    changed wherever it occurs inside other values. ``domain``, when given,
    restricts which constants may be transferred.
    """

    overrides: Mapping[SValue, SValue] = field(default_factory=dict)
    domain: frozenset | None = None
    name: str = "finite-star"

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, v: SValue) -> SValue:
        if v in self.overrides:
            return self.overrides[v]
        if isinstance(v, Atom):
            return v
        return SSet(frozenset(self(e) for e in v.elements))

    def covers(self, v: SValue) -> bool:
        return self.domain is None or v in self.domain


def identity_star() -> StarMap:
    return StarMap(name="identity")


def finite_star(fragment: Mapping[str, SValue] | None = None) -> StarMap:
    """The star map of a hereditarily finite fragment: *A = {*a | a in A}, *s = s.

    When a fragment is given, its values (and their members) form the domain.
    """
    if fragment is None:
        return StarMap()
    domain: set = set()

    def close(v: SValue):
        if v in domain:
            return
        domain.add(v)
        if isinstance(v, SSet):
            for e in v.elements:
                close(e)

    for v in fragment.values():
        close(v)
    return StarMap(domain=frozenset(domain))


# deliberately broken star maps, used to show that the checks can fail


def moved_atom_star(source: Atom, target: Atom) -> StarMap:
    """Sends one base element to another, violating *s = s."""
    return StarMap({source: target}, name=f"moved-atom {source}->{target}")


def enlarged_set_star(A: SSet, fresh: SValue = Atom("fresh")) -> StarMap:
    """Adds a new element to one finite set, violating *A = {*a | a in A}."""
    return StarMap({A: SSet(A.elements | {fresh})}, name=f"enlarged-set +{fresh}")


def nonempty_empty_star(fresh: SValue = Atom("fresh")) -> StarMap:
    """Makes the empty set nonempty, violating *{} = {}."""
    return StarMap({EMPTY: SSet(frozenset({fresh}))}, name="nonempty-empty")


def star_name(name: str | None) -> str | None:
    return None if name is None else name + STAR_SUFFIX


def _transfer_term(t: Term, star: StarMap) -> Term:
    if isinstance(t, Const):
        if not star.covers(t.value):
            raise TransferError(f"constant {t.name or t.value} is outside the domain of the star map")
        return Const(star(t.value), star_name(t.name))
    if isinstance(t, Var):
        return t
    if isinstance(t, Pair):
        return Pair(_transfer_term(t.left, star), _transfer_term(t.right, star))
    if isinstance(t, Apply):
        return Apply(_transfer_term(t.fn, star), _transfer_term(t.arg, star))
    raise TypeError(f"not a term: {t!r}")


def transfer(phi: Formula, star: StarMap) -> Formula:
    """Replace every constant by its star; the formula is otherwise unchanged."""
    return map_terms(phi, lambda t: _transfer_term(t, star))


@dataclass(frozen=True)
class TransferCheck:
    agree: bool
    original: bool
    starred: bool
    formula: str
    transferred: str
    moved: tuple = ()  # (constant, value, star value) for constants the map changed

    def witness(self) -> dict | None:
        if self.agree:
            return None
        return {
            "formula": self.formula,
            "transferred": self.transferred,
            "original": self.original,
            "starred": self.starred,
            "moved": [list(m) for m in self.moved],
        }


def check_transfer(phi: Formula, star: StarMap, config: EvalConfig = DEFAULT_CONFIG) -> TransferCheck:
    """Evaluate a statement and its transfer and compare the truth values."""
    starred_phi = transfer(phi, star)
    a = evaluate(phi, config)
    b = evaluate(starred_phi, config)
    moved = []
    seen = set()
    for c in constants(phi):
        key = (c.name, c.value)
        if key in seen:
            continue
        seen.add(key)
        image = star(c.value)
        if image != c.value:
            moved.append((c.name or str(c.value), str(c.value), str(image)))
    return TransferCheck(a == b, a, b, format_formula(phi), format_formula(starred_phi), tuple(sorted(moved)))


def base_atoms(fragment: Mapping[str, SValue]) -> list[Atom]:
    out: set = set()
    for v in fragment.values():
        out |= atoms(v)
    return sorted_values(out)
