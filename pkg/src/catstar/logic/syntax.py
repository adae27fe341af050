"""Terms and formulas of the bounded first-order language, with printing and substitution."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .values import EMPTY, SSet, SValue, sorted_values


class FormulaError(ValueError):
    """A formula violates the grammar (e.g. the bound variable occurs in its bound term)."""


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: SValue
    name: str | None = None


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Apply:
    """The application (f angle x)."""

    fn: "Term"
    arg: "Term"


Term = Union[Const, Var, Pair, Apply]


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class In:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


def _check_binder(var: str, bound: Term) -> None:
    if var in term_vars(bound):
        raise FormulaError(f"bound variable {var} occurs in its bound term")


@dataclass(frozen=True)
class ForallIn:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_binder(self.var, self.bound)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_binder(self.var, self.bound)


@dataclass(frozen=True)
class ExistsUnique:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_binder(self.var, self.bound)


Formula = Union[Eq, In, Not, And, ForallIn, Or, Implies, Iff, Exists, ExistsUnique]
BINARY = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}
QUANTIFIERS = {ForallIn: "forall", Exists: "exists", ExistsUnique: "exists1"}
CORE = (Eq, In, Not, And, ForallIn)


# -- traversal --------------------------------------------------------------


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Pair,)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, Apply):
        return term_vars(t.fn) | term_vars(t.arg)
    return set()


def free_vars(phi: Formula) -> set[str]:
    """Variables with at least one free occurrence."""
    if isinstance(phi, (Eq, In)):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Implies, Iff)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (ForallIn, Exists, ExistsUnique)):
        return term_vars(phi.bound) | (free_vars(phi.body) - {phi.var})
    raise TypeError(f"not a formula: {phi!r}")


def all_vars(phi: Formula) -> set[str]:
    if isinstance(phi, (Eq, In)):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Not):
        return all_vars(phi.body)
    if isinstance(phi, (And, Or, Implies, Iff)):
        return all_vars(phi.left) | all_vars(phi.right)
    return {phi.var} | term_vars(phi.bound) | all_vars(phi.body)


def constants(phi: Formula | Term) -> Iterator[Const]:
    if isinstance(phi, Const):
        yield phi
    elif isinstance(phi, Var):
        return
    elif isinstance(phi, (Pair, Eq, In, And, Or, Implies, Iff)):
        yield from constants(phi.left)
        yield from constants(phi.right)
    elif isinstance(phi, Apply):
        yield from constants(phi.fn)
        yield from constants(phi.arg)
    elif isinstance(phi, Not):
        yield from constants(phi.body)
    else:
        yield from constants(phi.bound)
        yield from constants(phi.body)


def is_statement(phi: Formula) -> bool:
    return not free_vars(phi)


def map_terms(phi: Formula, fn) -> Formula:
    """Rebuild ``phi`` applying ``fn`` to every maximal term (binders untouched)."""
    if isinstance(phi, (Eq, In)):
        return type(phi)(fn(phi.left), fn(phi.right))
    if isinstance(phi, Not):
        return Not(map_terms(phi.body, fn))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(map_terms(phi.left, fn), map_terms(phi.right, fn))
    return type(phi)(phi.var, fn(phi.bound), map_terms(phi.body, fn))


# -- substitution -----------------------------------------------------------


def _subst_term(t: Term, assignment: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return assignment.get(t.name, t)
    if isinstance(t, Pair):
        return Pair(_subst_term(t.left, assignment), _subst_term(t.right, assignment))
    if isinstance(t, Apply):
        return Apply(_subst_term(t.fn, assignment), _subst_term(t.arg, assignment))
    return t


def _as_term(v) -> Term:
    if isinstance(v, (Const, Var, Pair, Apply)):
        return v
    return Const(v)


def substitute(phi: Formula, assignment: Mapping[str, object]) -> Formula:
    """Replace free occurrences of the assigned variables; bound occurrences are left alone."""
    sub = {k: _as_term(v) for k, v in assignment.items()}
    return _substitute(phi, sub)


def _substitute(phi: Formula, sub: Mapping[str, Term]) -> Formula:
    if not sub:
        return phi
    if isinstance(phi, (Eq, In)):
        return type(phi)(_subst_term(phi.left, sub), _subst_term(phi.right, sub))
    if isinstance(phi, Not):
        return Not(_substitute(phi.body, sub))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(_substitute(phi.left, sub), _substitute(phi.right, sub))
    inner = {k: v for k, v in sub.items() if k != phi.var}
    return type(phi)(phi.var, _subst_term(phi.bound, sub), _substitute(phi.body, inner))


def fresh_var(avoid: set[str], base: str = "V") -> str:
    if base not in avoid:
        return base
    for n in itertools.count(1):
        if f"{base}{n}" not in avoid:
            return f"{base}{n}"
    raise AssertionError  # pragma: no cover


def alpha_rename(phi: Formula, prefix: str = "R") -> Formula:
    """Rename every bound variable to a fresh name; the meaning is unchanged."""
    avoid = all_vars(phi)
    counter = itertools.count()

    def go(f: Formula) -> Formula:
        if isinstance(f, (Eq, In)):
            return f
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, (And, Or, Implies, Iff)):
            return type(f)(go(f.left), go(f.right))
        while True:
            new = f"{prefix}{next(counter)}"
            if new not in avoid:
                break
        avoid.add(new)
        body = _substitute(f.body, {f.var: Var(new)})
        return type(f)(new, f.bound, go(body))

    return go(phi)


# -- desugaring -------------------------------------------------------------


def desugar(phi: Formula) -> Formula:
    """Rewrite or/implies/iff/exists/exists1 in terms of not, and, forall."""
    if isinstance(phi, (Eq, In)):
        return phi
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, And):
        return And(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, Or):
        return Not(And(Not(desugar(phi.left)), Not(desugar(phi.right))))
    if isinstance(phi, Implies):
        return Not(And(desugar(phi.left), Not(desugar(phi.right))))
    if isinstance(phi, Iff):
        return And(desugar(Implies(phi.left, phi.right)), desugar(Implies(phi.right, phi.left)))
    if isinstance(phi, ForallIn):
        return ForallIn(phi.var, phi.bound, desugar(phi.body))
    if isinstance(phi, Exists):
        return Not(ForallIn(phi.var, phi.bound, Not(desugar(phi.body))))
    if isinstance(phi, ExistsUnique):
        other = fresh_var(all_vars(phi) | {phi.var}, phi.var + "_")
        body = phi.body
        renamed = _substitute(body, {phi.var: Var(other)})
        unique = ForallIn(other, phi.bound, Implies(renamed, Eq(Var(other), Var(phi.var))))
        return desugar(Exists(phi.var, phi.bound, And(body, unique)))
    raise TypeError(f"not a formula: {phi!r}")


# -- printing ---------------------------------------------------------------


def format_value(v: SValue) -> str:
    if isinstance(v, SSet):
        if v == EMPTY:
            return "{}"
        return "{" + ", ".join(format_value(e) for e in sorted_values(v.elements)) + "}"
    return v.name


def format_term(t: Term) -> str:
    if isinstance(t, Const):
        return t.name if t.name is not None else format_value(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Pair):
        return f"pair({format_term(t.left)}, {format_term(t.right)})"
    if isinstance(t, Apply):
        return f"app({format_term(t.fn)}, {format_term(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def _open_ended(phi: Formula) -> bool:
    if type(phi) in QUANTIFIERS:
        return True
    if isinstance(phi, Not):
        return _open_ended(phi.body)
    return False


def format_formula(phi: Formula) -> str:
    """Canonical ASCII form; binary connectives are always parenthesized."""
    if isinstance(phi, Eq):
        return f"{format_term(phi.left)} = {format_term(phi.right)}"
    if isinstance(phi, In):
        return f"{format_term(phi.left)} in {format_term(phi.right)}"
    if isinstance(phi, Not):
        return f"not {format_formula(phi.body)}"
    if type(phi) in BINARY:
        left = format_formula(phi.left)
        if _open_ended(phi.left):
            left = f"({left})"
        return f"({left} {BINARY[type(phi)]} {format_formula(phi.right)})"
    if type(phi) in QUANTIFIERS:
        return f"{QUANTIFIERS[type(phi)]} {phi.var} in {format_term(phi.bound)} : {format_formula(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def depth(phi: Formula) -> int:
    if isinstance(phi, (Eq, In)):
        return 0
    if isinstance(phi, Not):
        return 1 + depth(phi.body)
    if isinstance(phi, (And, Or, Implies, Iff)):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 1 + depth(phi.body)


def const(value: SValue, name: str | None = None) -> Const:
    return Const(value, name)

