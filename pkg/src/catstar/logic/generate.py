"""Seeded random values and statements for property tests."""

from __future__ import annotations

import random

from .syntax import And, Apply, Const, Eq, Exists, ExistsUnique, ForallIn, Formula, Iff, Implies, In, Not, Or, Pair, Term, Var
from .values import Atom, SSet, SValue, make_pair

ATOMS = (Atom("a"), Atom("b"), Atom("c"))
VARIABLES = ("X", "Y", "Z", "W")


def random_value(rng: random.Random, max_rank: int = 3, atoms=ATOMS) -> SValue:
    """An atom or a set of rank at most ``max_rank``, with small width."""
    if max_rank == 0 or rng.random() < 0.25:
        return rng.choice(atoms)
    roll = rng.random()
    if roll < 0.15:
        return SSet()
    if roll < 0.35 and max_rank >= 2:
        x, y = random_value(rng, max_rank - 2, atoms), random_value(rng, max_rank - 2, atoms)
        return make_pair(x, y)
    width = rng.randint(1, 3)
    return SSet(frozenset(random_value(rng, max_rank - 1, atoms) for _ in range(width)))


def random_graph(rng: random.Random, atoms=ATOMS) -> SSet:
    """A small relation on atoms, sometimes functional, sometimes not."""
    pairs = {make_pair(x, rng.choice(atoms)) for x in atoms if rng.random() < 0.8}
    if rng.random() < 0.3:
        pairs.add(make_pair(rng.choice(atoms), rng.choice(atoms)))
    return SSet(frozenset(pairs))


class StatementGenerator:
    def __init__(self, rng: random.Random, max_depth: int = 4, max_rank: int = 3, n_constants: int = 6):
        self.rng = rng
        self.max_depth = max_depth
        self.pool = [Const(random_value(rng, max_rank), f"k{i}") for i in range(n_constants)]
        self.pool.append(Const(random_graph(rng), "g"))

    def term(self, bound: list[str], allow_pair: bool = True) -> Term:
        rng = self.rng
        roll = rng.random()
        if bound and roll < 0.45:
            return Var(rng.choice(bound))
        if allow_pair and roll < 0.6:
            return Pair(self.term(bound, False), self.term(bound, False))
        if allow_pair and roll < 0.7:
            return Apply(self.term(bound, False), self.term(bound, False))
        return rng.choice(self.pool)

    def bound_term(self, var: str, bound: list[str]) -> Term:
        others = [v for v in bound if v != var]
        if others and self.rng.random() < 0.4:
            return Var(self.rng.choice(others))
        return self.rng.choice(self.pool)

    def formula(self, depth: int, bound: list[str]) -> Formula:
        rng = self.rng
        if depth == 0 or rng.random() < 0.2:
            cls = rng.choice((Eq, In))
            return cls(self.term(bound), self.term(bound))
        kind = rng.choice(("not", "and", "or", "implies", "iff", "forall", "forall", "exists", "exists1"))
        if kind == "not":
            return Not(self.formula(depth - 1, bound))
        if kind in ("and", "or", "implies", "iff"):
            cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
            return cls(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
        var = rng.choice(VARIABLES)
        cls = {"forall": ForallIn, "exists": Exists, "exists1": ExistsUnique}[kind]
        bound_term = self.bound_term(var, bound)
        return cls(var, bound_term, self.formula(depth - 1, bound + [var]))

    def statement(self) -> Formula:
        return self.formula(self.rng.randint(1, self.max_depth), [])


def random_statements(seed: int, count: int, max_depth: int = 4, max_rank: int = 3) -> list[Formula]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        gen = StatementGenerator(rng, max_depth, max_rank)
        out.extend(gen.statement() for _ in range(10))
    return out[:count]
