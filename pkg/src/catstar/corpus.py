"""Transfer corpora: fragments, statements and deliberately broken star maps.

Corpus files (``.phi``)::

    # comment
    category C = walking_arrow      # binds C_M, C_s, C_t, C_c, C_Ob, C_hom
    let A = {b0, b1}
    let f = C[f]                    # the base element naming morphism f of C
    assert label: forall X in A : X in A
    fault moved b0 b1               # star map sending atom b0 to b1
    fault enlarge A                 # star map adding a fresh element to A
    fault empty                     # star map making the empty set nonempty
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import fixtures
from .category import ExplicitCategory
from .formats import FormatError
from .logic.evaluate import EvaluationError
from .logic.parser import ParseError, parse_formula, parse_value
from .logic.syntax import Formula
from .logic.transfer import (
    StarMap,
    TransferCheck,
    check_transfer,
    enlarged_set_star,
    finite_star,
    moved_atom_star,
    nonempty_empty_star,
)
from .logic.values import Atom, SSet, SValue, make_pair, make_set

FIXTURES: dict[str, Callable[[], ExplicitCategory]] = {
    "walking_arrow": fixtures.walking_arrow,
    "div12": fixtures.divisibility,
    "terminal": fixtures.terminal,
    "z2": fixtures.z2_monoid,
    "finset2": fixtures.truncated_finset,
}


def category_values(cat: ExplicitCategory, encoding: str = "paper") -> dict[str, SValue]:
    """The quadruple <M, s, t, c> as values, plus Ob = s(M) and the hom map <X, Y> |-> Mor(X, Y).

    Morphisms are base elements; c holds <<f, g>, h> for h = f o g.
    """
    A = Atom
    M = make_set(A(f) for f in cat.morphisms)
    s = make_set(make_pair(A(f), A(cat.src[f]), encoding) for f in cat.morphisms)
    t = make_set(make_pair(A(f), A(cat.tgt[f]), encoding) for f in cat.morphisms)
    c = make_set(make_pair(make_pair(A(f), A(g), encoding), A(h), encoding) for f, g, h in cat.comp)
    ob = make_set(A(x) for x in cat.objects)
    hom = make_set(
        make_pair(make_pair(A(x), A(y), encoding), make_set(A(f) for f in cat.hom(x, y)), encoding)
        for x in cat.objects
        for y in cat.objects
    )
    return {"M": M, "s": s, "t": t, "c": c, "Ob": ob, "hom": hom}


@dataclass
class Statement:
    label: str
    formula: Formula
    text: str
    line: int


@dataclass
class Corpus:
    fragment: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    statements: list = field(default_factory=list)
    faults: list = field(default_factory=list)  # (description, StarMap)
    name: str = ""


_LINE = re.compile(r"^(let|category|assert|fault)\s+(.*)$")
_ELEMENT = re.compile(r"^(\w+)\[(.+)\]$")


def parse_corpus(text: str, name: str = "") -> Corpus:
    corpus = Corpus(name=name)
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise FormatError(f"cannot parse {line!r}", no)
        kind, rest = m.groups()
        try:
            if kind == "category":
                cname, _, fixture = (p.strip() for p in rest.partition("="))
                if fixture not in FIXTURES:
                    raise FormatError(f"unknown fixture {fixture!r}", no)
                cat = FIXTURES[fixture]()
                corpus.categories[cname] = cat
                for key, value in category_values(cat).items():
                    corpus.fragment[f"{cname}_{key}"] = value
            elif kind == "let":
                cname, eq, value_text = (p.strip() for p in rest.partition("="))
                if not eq:
                    raise FormatError("expected 'let NAME = VALUE'", no)
                em = _ELEMENT.match(value_text)
                if em:
                    cat = corpus.categories.get(em.group(1))
                    if cat is None or em.group(2) not in cat.morphisms:
                        raise FormatError(f"no morphism {em.group(2)!r} in category {em.group(1)!r}", no)
                    corpus.fragment[cname] = Atom(em.group(2))
                else:
                    corpus.fragment[cname] = parse_value(value_text, corpus.fragment)
            elif kind == "assert":
                label, colon, body = rest.partition(":")
                if not colon:
                    raise FormatError("expected 'assert LABEL: FORMULA'", no)
                phi = parse_formula(body, corpus.fragment)
                corpus.statements.append(Statement(label.strip(), phi, body.strip(), no))
            else:
                corpus.faults.append(_fault(rest.split(), corpus.fragment, no))
        except ParseError as exc:
            raise FormatError(str(exc), no) from None
    return corpus


def _fault(words: list[str], fragment: dict, no: int) -> tuple[str, StarMap]:
    desc = " ".join(words)
    if words[:1] == ["moved"] and len(words) == 3:
        return desc, moved_atom_star(Atom(words[1]), Atom(words[2]))
    if words[:1] == ["enlarge"] and len(words) == 2:
        value = fragment.get(words[1])
        if not isinstance(value, SSet):
            raise FormatError(f"{words[1]!r} is not a set constant", no)
        return desc, enlarged_set_star(value)
    if words == ["empty"]:
        return desc, nonempty_empty_star()
    raise FormatError(f"unknown fault {desc!r}", no)


def load_corpus(path: str | Path) -> Corpus:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", path=str(p)) from None
    try:
        return parse_corpus(text, p.stem)
    except FormatError as exc:
        raise FormatError(exc.message, exc.line, str(p)) from None


def bundled_corpus_paths() -> list[Path]:
    root = resources.files("catstar") / "corpus_files"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".phi"))


def bundled_corpora() -> list[Corpus]:
    return [load_corpus(p) for p in bundled_corpus_paths()]


@dataclass(frozen=True)
class StatementResult:
    label: str
    text: str
    check: TransferCheck | None
    error: str | None = None

    @property
    def agree(self) -> bool:
        return self.check is not None and self.check.agree


def run_corpus(corpus: Corpus, star: StarMap | None = None) -> list[StatementResult]:
    """check_transfer on every statement; the default star map is the finite star of the fragment."""
    star = star or finite_star(corpus.fragment)
    out = []
    for st in corpus.statements:
        try:
            out.append(StatementResult(st.label, st.text, check_transfer(st.formula, star)))
        except (EvaluationError, ValueError) as exc:
            out.append(StatementResult(st.label, st.text, None, str(exc)))
    return out


def run_faults(corpus: Corpus) -> list[tuple[str, list[StatementResult]]]:
    return [(desc, run_corpus(corpus, star)) for desc, star in corpus.faults]

