"""Finite rings given by Cayley tables, residue rings, and unital ring homomorphisms.

Ring files::

    ring Z4 size 4
    add
    0 1 2 3
    1 2 3 0
    ...
    mul
    ...

Element 0 is the additive identity; the multiplicative identity is found
from the table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .formats import FormatError


class RingError(ValueError):
    """The tables do not describe a ring with unit."""


class DegenerateRingError(RingError):
    """Z/0 and Z/1 are excluded from the residue rings."""


@dataclass(frozen=True)
class FiniteRing:
    name: str
    add_table: tuple  # add_table[a][b] = a + b
    mul_table: tuple

    @property
    def size(self) -> int:
        return len(self.add_table)

    @property
    def elements(self) -> range:
        return range(self.size)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def one(self) -> int:
        for e in self.elements:
            if all(self.mul(e, a) == a == self.mul(a, e) for a in self.elements):
                return e
        raise RingError(f"{self.name} has no multiplicative identity")

    @cached_property
    def _neg(self) -> tuple:
        return tuple(next(b for b in self.elements if self.add(a, b) == 0) for a in self.elements)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def problems(self) -> list[str]:
        n = self.size
        out = []
        for name, table in (("add", self.add_table), ("mul", self.mul_table)):
            if len(table) != n or any(len(row) != n or any(not 0 <= v < n for v in row) for row in table):
                out.append(f"{name} table is not a {n}x{n} table over 0..{n - 1}")
        if out:
            return out
        E = self.elements
        if any(self.add(0, a) != a for a in E):
            out.append("0 is not an additive identity")
        if any(self.add(a, b) != self.add(b, a) for a in E for b in E):
            out.append("addition is not commutative")
        for a, b, c in itertools.product(E, repeat=3):
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                out.append(f"addition is not associative at {(a, b, c)}")
                break
        if any(all(self.add(a, b) != 0 for b in E) for a in E):
            out.append("some element has no additive inverse")
        for a, b, c in itertools.product(E, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                out.append(f"multiplication is not associative at {(a, b, c)}")
                break
        for a, b, c in itertools.product(E, repeat=3):
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) or self.mul(
                self.add(a, b), c
            ) != self.add(self.mul(a, c), self.mul(b, c)):
                out.append(f"distributivity fails at {(a, b, c)}")
                break
        try:
            self.one
        except RingError as exc:
            out.append(str(exc))
        return out

    def units(self) -> list[int]:
        return [a for a in self.elements if any(self.mul(a, b) == self.one == self.mul(b, a) for b in self.elements)]

    def is_field(self) -> bool:
        return self.size > 1 and len(self.units()) == self.size - 1

    def is_commutative(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)

    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != 0:
            x = self.add(x, self.one)
            k += 1
        return k


def _tables(n: int, add, mul) -> tuple[tuple, tuple]:
    return (
        tuple(tuple(add(a, b) for b in range(n)) for a in range(n)),
        tuple(tuple(mul(a, b) for b in range(n)) for a in range(n)),
    )


def residue_ring(n: int, name: str | None = None) -> FiniteRing:
    if n < 1:
        raise RingError("modulus must be positive")
    a, m = _tables(n, lambda x, y: (x + y) % n, lambda x, y: (x * y) % n)
    return FiniteRing(name or f"Z{n}", a, m)


def product_ring(R: FiniteRing, S: FiniteRing, name: str | None = None) -> FiniteRing:
    """R x S with element (r, s) stored as r * |S| + s."""
    k = S.size

    def split(x):
        return divmod(x, k)

    def add(x, y):
        (r1, s1), (r2, s2) = split(x), split(y)
        return R.add(r1, r2) * k + S.add(s1, s2)

    def mul(x, y):
        (r1, s1), (r2, s2) = split(x), split(y)
        return R.mul(r1, r2) * k + S.mul(s1, s2)

    a, m = _tables(R.size * k, add, mul)
    return FiniteRing(name or f"{R.name}x{S.name}", a, m)


def f4() -> FiniteRing:
    """The field with four elements: a + b*x stored as a + 2b, with x^2 = x + 1."""

    def mul(u, v):
        a, b = u & 1, u >> 1
        c, d = v & 1, v >> 1
        # (a + bx)(c + dx) = ac + (ad + bc)x + bd(x + 1)
        lo = (a * c + b * d) % 2
        hi = (a * d + b * c + b * d) % 2
        return lo + 2 * hi

    a, m = _tables(4, lambda u, v: u ^ v, mul)
    return FiniteRing("F4", a, m)


def dual_numbers_f2() -> FiniteRing:
    """F2[x]/(x^2): a + b*x stored as a + 2b."""

    def mul(u, v):
        a, b = u & 1, u >> 1
        c, d = v & 1, v >> 1
        return (a * c) % 2 + 2 * ((a * d + b * c) % 2)

    a, m = _tables(4, lambda u, v: u ^ v, mul)
    return FiniteRing("F2[x]/x2", a, m)


def builtin_rings() -> dict[str, FiniteRing]:
    return {
        "Z2": residue_ring(2),
        "F2": residue_ring(2, "F2"),
        "Z3": residue_ring(3),
        "F3": residue_ring(3, "F3"),
        "Z4": residue_ring(4),
        "F4": f4(),
        "Z2xZ2": product_ring(residue_ring(2), residue_ring(2), "Z2xZ2"),
        "F2[x]/x2": dual_numbers_f2(),
        "Z6": residue_ring(6),
    }


def get_ring(name: str) -> FiniteRing:
    rings = builtin_rings()
    if name in rings:
        return rings[name]
    if name.startswith("Z") and name[1:].isdigit():
        return residue_ring(int(name[1:]))
    raise RingError(f"unknown ring {name!r}; known: {', '.join(sorted(rings))}")


def parse_ring(text: str) -> FiniteRing:
    name = None
    size = None
    blocks: dict = {}
    current = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "ring":
            if len(words) != 4 or words[2] != "size" or not words[3].isdigit():
                raise FormatError("expected 'ring NAME size N'", no)
            name, size = words[1], int(words[3])
        elif words[0] in ("add", "mul") and len(words) == 1:
            current = blocks.setdefault(words[0], [])
        elif current is not None:
            try:
                current.append(tuple(int(w) for w in words))
            except ValueError:
                raise FormatError(f"expected integers, got {line!r}", no) from None
        else:
            raise FormatError(f"cannot parse {line!r}", no)
    if name is None or set(blocks) != {"add", "mul"}:
        raise FormatError("a ring file needs a 'ring' header and both 'add' and 'mul' tables")
    ring = FiniteRing(name, tuple(blocks["add"]), tuple(blocks["mul"]))
    if ring.size != size:
        raise FormatError(f"declared size {size} but the add table has {ring.size} rows")
    problems = ring.problems()
    if problems:
        raise RingError("; ".join(problems))
    return ring


def format_ring(R: FiniteRing) -> str:
    out = [f"ring {R.name} size {R.size}", "add"]
    out += [" ".join(map(str, row)) for row in R.add_table]
    out.append("mul")
    out += [" ".join(map(str, row)) for row in R.mul_table]
    return "\n".join(out) + "\n"


def ring_homs(R: FiniteRing, S: FiniteRing) -> Iterator[tuple]:
    """Unital ring homomorphisms R -> S as value tuples, in lexicographic order."""
    n = R.size
    for images in itertools.product(S.elements, repeat=n):
        if images[R.one] != S.one or images[0] != 0:
            continue
        if all(
            images[R.add(a, b)] == S.add(images[a], images[b]) and images[R.mul(a, b)] == S.mul(images[a], images[b])
            for a in R.elements
            for b in R.elements
        ):
            yield images


# ---------------------------------------------------------------------------
# residue rings of arbitrary size, without tables


@dataclass(frozen=True)
class ResidueRing:
    """Z/nZ with arithmetic computed on demand."""

    modulus: int

    def __post_init__(self):
        if self.modulus in (0, 1):
            raise DegenerateRingError(f"Z/{self.modulus} is excluded")
        if self.modulus < 0:
            raise RingError("modulus must be positive")

    @property
    def name(self) -> str:
        return f"Z/{self.modulus}"

    def __str__(self) -> str:
        return self.name

    def units(self) -> list[int]:
        """Elements with a multiplicative inverse, found by solving a*b = 1."""
        out = []
        for a in range(1, self.modulus):
            try:
                pow(a, -1, self.modulus)
            except ValueError:
                continue
            out.append(a)
        return out

    def zero_divisor(self) -> tuple[int, int] | None:
        """Nonzero a, b with a*b = 0, or None."""
        n = self.modulus
        for a in range(2, n):
            if n % a == 0:
                return a, n // a
        return None

    def is_field(self) -> bool:
        return len(self.units()) == self.modulus - 1

    def to_finite_ring(self) -> FiniteRing:
        return residue_ring(self.modulus, self.name)
