"""Truth of statements, following the recursive clauses of the truth definition literally."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And,
    Apply,
    Const,
    Eq,
    ForallIn,
    Formula,
    In,
    Not,
    Pair,
    Term,
    Var,
    desugar,
    free_vars,
    substitute,
)
from .values import DEFAULT_N_MAX, SSet, SValue, apply, make_pair, sorted_values


class EvaluationError(ValueError):
    """The input is not a statement or mentions an unbound variable."""


@dataclass(frozen=True)
class EvalConfig:
    n_max: int | None = DEFAULT_N_MAX
    encoding: str = "paper"


DEFAULT_CONFIG = EvalConfig()


def eval_term(t: Term, config: EvalConfig = DEFAULT_CONFIG) -> SValue:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Pair):
        return make_pair(eval_term(t.left, config), eval_term(t.right, config), config.encoding, config.n_max)
    if isinstance(t, Apply):
        return apply(eval_term(t.fn, config), eval_term(t.arg, config), config.encoding)
    if isinstance(t, Var):
        raise EvaluationError(f"variable {t.name} is not bound")
    raise TypeError(f"not a term: {t!r}")


def evaluate(phi: Formula, config: EvalConfig = DEFAULT_CONFIG) -> bool:
    """Truth value of a statement. Sugar is rewritten first."""
    free = free_vars(phi)
    if free:
        raise EvaluationError(f"not a statement; free variables {sorted(free)}")
    return _truth(desugar(phi), config)


def _truth(phi: Formula, config: EvalConfig) -> bool:
    if isinstance(phi, Eq):
        return eval_term(phi.left, config) == eval_term(phi.right, config)
    if isinstance(phi, In):
        right = eval_term(phi.right, config)
        left = eval_term(phi.left, config)
        return isinstance(right, SSet) and left in right.elements
    if isinstance(phi, Not):
        return not _truth(phi.body, config)
    if isinstance(phi, And):
        return _truth(phi.left, config) and _truth(phi.right, config)
    if isinstance(phi, ForallIn):
        bound = eval_term(phi.bound, config)
        if not isinstance(bound, SSet):
            # a bound term that is no set makes the statement true
            return True
        if phi.var not in free_vars(phi.body):
            # X does not occur free: the body is a statement, quantified or not
            return _truth(phi.body, config)
        return all(_truth(substitute(phi.body, {phi.var: tau}), config) for tau in sorted_values(bound.elements))
    raise TypeError(f"not a core formula: {phi!r}")
