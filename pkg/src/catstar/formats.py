"""Text formats for categories, functors, subsystems and fibration projections.

Category files::

    # comment
    obj a
    mor f : a -> b
    comp f a = f        # <f, a, f> in c, i.e. f = f o a

Functor / diagram files::

    source I.cat
    target C.cat
    map f -> g

Subsystem files::

    category I.cat
    objects: a b c
    morphisms: f g
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .category import ExplicitCategory, complete_composition, make_category


class FormatError(Exception):
    """Raised on unparseable input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.path = path


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


_NAME = r"[^\s:=]+"
_MOR = re.compile(rf"^mor\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$")
_OBJ = re.compile(rf"^obj\s+({_NAME})$")
_COMP = re.compile(rf"^comp\s+({_NAME})\s+({_NAME})\s*=\s*({_NAME})$")


def parse_category(text: str, *, complete: bool = False, name: str = "") -> ExplicitCategory:
    morphisms: list[str] = []
    src: dict = {}
    tgt: dict = {}
    comp: set = set()
    for no, line in _lines(text):
        if m := _OBJ.match(line):
            x = m.group(1)
            if x in src:
                raise FormatError(f"duplicate declaration of {x!r}", no)
            morphisms.append(x)
            src[x] = tgt[x] = x
        elif m := _MOR.match(line):
            f, a, b = m.groups()
            if f in src:
                raise FormatError(f"duplicate declaration of {f!r}", no)
            morphisms.append(f)
            src[f], tgt[f] = a, b
        elif m := _COMP.match(line):
            comp.add(m.groups())
        elif line.startswith("name "):
            name = line[5:].strip()
        else:
            raise FormatError(f"cannot parse {line!r}", no)
    # objects referenced as endpoints but never declared become identities
    for f in list(morphisms):
        for x in (src[f], tgt[f]):
            if x not in src:
                morphisms.append(x)
                src[x] = tgt[x] = x
    if complete:
        comp = complete_composition(morphisms, src, tgt, comp)
    return make_category(morphisms, src, tgt, comp, name=name)


def format_category(cat: ExplicitCategory) -> str:
    out = []
    if cat.name:
        out.append(f"name {cat.name}")
    for x in cat.objects:
        out.append(f"obj {x}")
    for f in cat.sorted_morphisms:
        if not cat.is_object(f):
            out.append(f"mor {f} : {cat.src[f]} -> {cat.tgt[f]}")
    for f, g, h in sorted(cat.comp):
        out.append(f"comp {f} {g} = {h}")
    return "\n".join(out) + "\n"


def load_category(path: str | Path, *, complete: bool = False) -> ExplicitCategory:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", path=str(p)) from None
    try:
        return parse_category(text, complete=complete, name=p.stem)
    except FormatError as exc:
        raise FormatError(exc.message, exc.line, str(p)) from None


@dataclass
class MapFile:
    """Header entries plus ``map``/``proj`` pairs."""

    headers: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)


_MAP = re.compile(rf"^(map|proj)\s+({_NAME})\s*->\s*({_NAME})$")
_HEADER = re.compile(r"^(source|target|index|total|base|category)\s+(\S+)$")


def parse_map(text: str) -> MapFile:
    out = MapFile()
    for no, line in _lines(text):
        if m := _MAP.match(line):
            _, a, b = m.groups()
            if a in out.pairs and out.pairs[a] != b:
                raise FormatError(f"conflicting images for {a!r}", no)
            out.pairs[a] = b
        elif m := _HEADER.match(line):
            out.headers[m.group(1)] = m.group(2)
        else:
            raise FormatError(f"cannot parse {line!r}", no)
    return out


def format_map(pairs: dict, headers: dict | None = None, keyword: str = "map") -> str:
    out = [f"{k} {v}" for k, v in (headers or {}).items()]
    out += [f"{keyword} {a} -> {b}" for a, b in sorted(pairs.items())]
    return "\n".join(out) + "\n"


@dataclass
class SubsystemSpec:
    objects: list
    morphisms: list
    category: str | None = None


def parse_subsystem(text: str) -> SubsystemSpec:
    objects: list = []
    morphisms: list = []
    category = None
    for no, line in _lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key == "objects":
            objects += rest.split()
        elif sep and key == "morphisms":
            morphisms += rest.split()
        elif line.startswith("category "):
            category = line.split(None, 1)[1]
        else:
            raise FormatError(f"cannot parse {line!r}", no)
    return SubsystemSpec(objects, morphisms, category)


def write_fibration(total: ExplicitCategory, base: ExplicitCategory, projection: dict, directory: str | Path) -> tuple[Path, Path, Path]:
    """Write F.cat, E.cat and p.map for ``catstar fib check``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = (d / "F.cat", d / "E.cat", d / "p.map")
    paths[0].write_text(format_category(total), encoding="utf-8")
    paths[1].write_text(format_category(base), encoding="utf-8")
    paths[2].write_text(format_map(projection, {"total": "F.cat", "base": "E.cat"}, keyword="proj"), encoding="utf-8")
    return paths


def read_text(path: str | Path) -> str:
    p = Path(path)
    try:
        return p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", path=str(p)) from None


def resolve(base: str | Path, ref: str) -> Path:
    """Resolve a path referenced from inside another file."""
    p = Path(ref)
    return p if p.is_absolute() else Path(base).parent / p
