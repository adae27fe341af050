"""Recursive-descent parser for the ASCII formula syntax.

Identifiers starting with an uppercase letter are variables, unless the
fragment binds the name and no enclosing quantifier does. Other identifiers
and numerals are constants: they are looked up in the fragment and otherwise
denote base atoms. ``emptyset`` is the empty set and brace
literals ``{a, {b}}`` denote finite sets.

Binary connectives, loosest first: ``iff``, ``implies`` (right associative),
``or``, ``and``. A quantifier body extends as far to the right as possible.
``name(a)`` in formula position abbreviates ``a in name`` and ``name(a, b)``
abbreviates ``pair(a, b) in name``; in term position ``f(x)`` is ``app(f, x)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .syntax import (
    And,
    Apply,
    Const,
    Eq,
    Exists,
    ExistsUnique,
    ForallIn,
    Formula,
    FormulaError,
    Iff,
    Implies,
    In,
    Not,
    Or,
    Pair,
    Term,
    Var,
    term_vars,
)
from .values import DEFAULT_N_MAX, EMPTY, Atom, SValue, apply, make_pair, make_set


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct", "end"
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*|[0-9]+)|(<->|->|[(){},:=]))")
KEYWORDS = {"forall", "exists", "exists1", "in", "not", "and", "or", "implies", "iff", "pair", "app", "emptyset"}


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        if m.group(1) is not None:
            out.append(Token("ident", m.group(1), m.start(1)))
        else:
            out.append(Token("punct", m.group(2), m.start(2)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def is_variable_name(name: str) -> bool:
    return name[:1].isupper()


class _Parser:
    def __init__(self, text: str, fragment: Mapping[str, SValue] | None, encoding: str, n_max: int | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.fragment = fragment or {}
        self.encoding = encoding
        self.n_max = n_max
        self.bound: list[str] = []

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def at(self, value: str) -> bool:
        return self.tok.kind != "end" and self.tok.value == value

    def expect(self, value: str) -> Token:
        if not self.at(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")

    # terms
    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "punct" and tok.value == "{":
            return self.literal()
        if tok.kind != "ident" or tok.value in KEYWORDS - {"pair", "app", "emptyset"}:
            raise self.error("expected a term")
        self.i += 1
        name = tok.value
        if name in ("pair", "app"):
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return Pair(a, b) if name == "pair" else Apply(a, b)
        if name == "emptyset":
            return Const(EMPTY, "emptyset")
        head = self.name_term(name)
        if self.at("("):
            args = self.call_args()
            return Apply(head, args[0] if len(args) == 1 else Pair(args[0], args[1]))
        return head

    def name_term(self, name: str) -> Term:
        if is_variable_name(name) and (name not in self.fragment or name in self.bound):
            return Var(name)
        return self.constant(name)

    def call_args(self) -> list[Term]:
        open_tok = self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.i += 1
            args.append(self.term())
        self.expect(")")
        if len(args) > 2:
            raise self.error("at most two arguments are supported", open_tok)
        return args

    def constant(self, name: str) -> Const:
        if name in self.fragment:
            return Const(self.fragment[name], name)
        return Const(Atom(name), name)

    def literal(self) -> Const:
        return Const(self.literal_value())

    def literal_value(self) -> SValue:
        start = self.expect("{")
        items = []
        if not self.at("}"):
            items.append(self.closed_value())
            while self.at(","):
                self.i += 1
                items.append(self.closed_value())
        self.expect("}")
        try:
            return make_set(items, self.n_max)
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    def closed_value(self) -> SValue:
        start = self.tok
        t = self.term()
        if term_vars(t):
            raise self.error("variables are not allowed inside set literals", start)
        try:
            return evaluate_closed(t, self.encoding, self.n_max)
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    # formulas
    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        left = self.implies()
        while self.at("iff") or self.at("<->"):
            self.i += 1
            left = Iff(left, self.implies())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.at("implies") or self.at("->"):
            self.i += 1
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("or"):
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("and"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("not"):
            self.i += 1
            return Not(self.unary())
        if tok.kind == "ident" and tok.value in ("forall", "exists", "exists1"):
            self.i += 1
            var_tok = self.tok
            if var_tok.kind != "ident" or not is_variable_name(var_tok.value):
                raise self.error("expected a variable (uppercase identifier)")
            self.i += 1
            self.expect("in")
            bound_tok = self.tok
            bound = self.term()
            if var_tok.value in term_vars(bound):
                raise self.error(f"bound variable {var_tok.value} occurs in its bound term", bound_tok)
            self.expect(":")
            self.bound.append(var_tok.value)
            body = self.formula()
            self.bound.pop()
            cls = {"forall": ForallIn, "exists": Exists, "exists1": ExistsUnique}[tok.value]
            try:
                return cls(var_tok.value, bound, body)
            except FormulaError as exc:  # pragma: no cover - guarded above
                raise self.error(str(exc), tok) from None
        if self.at("("):
            self.i += 1
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atomic()

    def atomic(self) -> Formula:
        start = self.tok
        # predicate sugar: name(args) not followed by = or in
        if start.kind == "ident" and start.value not in KEYWORDS and self.peek().value == "(" and self.peek().kind == "punct":
            save = self.i
            self.i += 1
            args = self.call_args()
            if not (self.at("=") or self.at("in")):
                head = self.name_term(start.value)
                arg = args[0] if len(args) == 1 else Pair(args[0], args[1])
                return In(arg, head)
            self.i = save
        left = self.term()
        if self.at("="):
            self.i += 1
            return Eq(left, self.term())
        if self.at("in"):
            self.i += 1
            return In(left, self.term())
        raise self.error("expected '=' or 'in'")


def parse_formula(
    text: str,
    fragment: Mapping[str, SValue] | None = None,
    *,
    encoding: str = "paper",
    n_max: int | None = DEFAULT_N_MAX,
) -> Formula:
    p = _Parser(text, fragment, encoding, n_max)
    phi = p.formula()
    p.finish()
    return phi


def parse_term(
    text: str,
    fragment: Mapping[str, SValue] | None = None,
    *,
    encoding: str = "paper",
    n_max: int | None = DEFAULT_N_MAX,
) -> Term:
    p = _Parser(text, fragment, encoding, n_max)
    t = p.term()
    p.finish()
    return t


def evaluate_closed(t: Term, encoding: str = "paper", n_max: int | None = DEFAULT_N_MAX) -> SValue:
    """Value of a term without variables."""
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Pair):
        return make_pair(evaluate_closed(t.left, encoding, n_max), evaluate_closed(t.right, encoding, n_max), encoding, n_max)
    if isinstance(t, Apply):
        return apply(evaluate_closed(t.fn, encoding, n_max), evaluate_closed(t.arg, encoding, n_max), encoding)
    raise FormulaError(f"term {t!r} has a free variable")


def parse_value(
    text: str,
    fragment: Mapping[str, SValue] | None = None,
    *,
    encoding: str = "paper",
    n_max: int | None = DEFAULT_N_MAX,
) -> SValue:
    t = parse_term(text, fragment, encoding=encoding, n_max=n_max)
    if term_vars(t):
        raise ParseError("value literal contains a variable", 0, text)
    return evaluate_closed(t, encoding, n_max)
