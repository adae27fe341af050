"""Bounded first-order language over finite superstructures."""

from .evaluate import EvalConfig, EvaluationError, eval_term, evaluate
from .parser import ParseError, parse_formula, parse_term, parse_value
from .syntax import (
    And,
    Apply,
    Const,
    Eq,
    Exists,
    ExistsUnique,
    ForallIn,
    FormulaError,
    Iff,
    Implies,
    In,
    Not,
    Or,
    Pair,
    Var,
    alpha_rename,
    desugar,
    format_formula,
    format_term,
    format_value,
    free_vars,
    substitute,
)
from .transfer import (
    StarMap,
    TransferCheck,
    TransferError,
    check_transfer,
    enlarged_set_star,
    finite_star,
    identity_star,
    moved_atom_star,
    nonempty_empty_star,
    transfer,
)
from .values import EMPTY, Atom, RankOverflowError, SSet, apply, make_pair, make_set, make_tuple
