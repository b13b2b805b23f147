"""Quivers, paths and the text format for bound quiver presentations.

Paths compose left to right: ``a*b`` means "a then b" and needs
``target(a) == source(b)``.  A trivial path ``e_v`` has no arrows.

File format (``#`` starts a comment)::

    field Q            | field F <p>
    vertices <n>
    arrow <name> <src> <dst>
    truncate <N>
    rel <coeff> <path> [<coeff> <path>]...
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple

from .errors import BadField, InvalidRelation, ParseError
from .fields import Field, QQ, GF

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_COEFF = re.compile(r"[+-]?\d+(/\d+)?$")


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"

    def then(self, other: Path) -> Path | None:
        """Concatenation ``self`` followed by ``other``, or ``None`` if not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)


def trivial_path(v: int) -> Path:
    return Path(v, v, ())


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def path(self) -> Path:
        return Path(self.source, self.target, (self.name,))


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise ValueError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            for v in (a.source, a.target):
                if not 0 <= v < self.num_vertices:
                    raise ValueError(f"arrow {a.name!r} uses vertex {v} out of range")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def path(self, names) -> Path:
        """Compose arrow names left to right; raises ValueError if not composable."""
        names = tuple(names)
        if not names:
            raise ValueError("empty arrow sequence")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise ValueError(f"{a.name}*{b.name} is not composable")
        return Path(arrows[0].source, arrows[-1].target, names)

    def paths_of_length(self, n: int) -> list[Path]:
        cur = [trivial_path(v) for v in range(self.num_vertices)]
        for _ in range(n):
            cur = [Path(p.source, a.target, p.arrows + (a.name,))
                   for p in cur for a in self.arrows if a.source == p.target]
        return cur

    def arrow_counts(self) -> list[list[int]]:
        """``counts[i][j]`` = number of arrows i -> j."""
        n = self.num_vertices
        counts = [[0] * n for _ in range(n)]
        for a in self.arrows:
            counts[a.source][a.target] += 1
        return counts

    def is_connected(self) -> bool:
        """Connectedness of the underlying undirected graph."""
        n = self.num_vertices
        adj = {v: set() for v in range(n)}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n


Term = tuple[Fraction, Path]


@dataclass(frozen=True)
class BoundQuiverPresentation:
    """Presentation of ``kQ / (<relations> + R^truncate)``.

    Relation coefficients are kept as rationals so the same presentation can
    be re-read over another field; they are reduced when the algebra is built.
    """

    field: Field
    quiver: Quiver
    truncate: int
    relations: tuple[tuple[Term, ...], ...] = ()
    header: tuple[str, ...] = dc_field(default=(), compare=False)

    def __post_init__(self):
        if self.truncate < 1:
            raise ValueError("truncation degree must be positive")
        for rel in self.relations:
            for coeff, path in rel:
                if not 2 <= path.length < self.truncate:
                    raise InvalidRelation(
                        f"relation term {path} has length {path.length}; need 2 <= length < {self.truncate}")
                if self.field.characteristic and Fraction(coeff).denominator % self.field.characteristic == 0:
                    raise InvalidRelation(f"coefficient {coeff} is undefined in {self.field}")

    def relation_vectors(self) -> list[dict[Path, object]]:
        """Relations as ``{path: field coefficient}`` with like terms combined."""
        out = []
        for rel in self.relations:
            vec: dict[Path, object] = {}
            for coeff, path in rel:
                vec[path] = vec.get(path, self.field.zero) + self.field(coeff)
            out.append({p: c for p, c in vec.items() if c})
        return out

    def with_field(self, field: Field) -> BoundQuiverPresentation:
        return BoundQuiverPresentation(field, self.quiver, self.truncate, self.relations, self.header)

    def with_truncation(self, n: int) -> BoundQuiverPresentation:
        """Same quiver and relations over ``R^n``; terms of length >= n are dropped."""
        rels = []
        for rel in self.relations:
            kept = tuple(t for t in rel if t[1].length < n)
            if kept:
                rels.append(kept)
        return BoundQuiverPresentation(self.field, self.quiver, n, tuple(rels), self.header)


# ---------------------------------------------------------------- text format

def _format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def emit_presentation(p: BoundQuiverPresentation) -> str:
    lines = [f"# {h}" if h else "#" for h in p.header]
    lines.append(f"field {p.field.descriptor()}")
    lines.append(f"vertices {p.quiver.num_vertices}")
    for a in p.quiver.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}")
    lines.append(f"truncate {p.truncate}")
    for rel in p.relations:
        body = " ".join(f"{_format_coeff(c)} {path}" for c, path in rel)
        lines.append(f"rel {body}")
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno)
    return int(tok)


def parse_presentation(text: str) -> BoundQuiverPresentation:
    """Parse the presentation text format, running every validity check."""
    header: list[str] = []
    seen_directive = False
    fld = None
    nverts = None
    arrows: list[tuple[Arrow, int]] = []
    truncate = None
    raw_rels: list[tuple[list[str], int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not seen_directive and stripped.startswith("#"):
            header.append(stripped[1:].strip())
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        seen_directive = True
        tok = line.split()
        kw, args = tok[0], tok[1:]
        if kw == "field":
            if fld is not None:
                raise ParseError("duplicate field line", lineno)
            if args == ["Q"]:
                fld = QQ
            elif len(args) == 2 and args[0] == "F":
                p = _int(args[1], lineno, "modulus")
                try:
                    fld = GF(p)
                except BadField as exc:
                    raise BadField(f"line {lineno}: {exc}") from None
            else:
                raise ParseError(f"bad field line {line!r}", lineno)
        elif kw == "vertices":
            if nverts is not None or len(args) != 1:
                raise ParseError("bad or duplicate vertices line", lineno)
            nverts = _int(args[0], lineno, "vertex count")
            if nverts < 1:
                raise ParseError("need at least one vertex", lineno)
        elif kw == "arrow":
            if len(args) != 3:
                raise ParseError("arrow needs: name source target", lineno)
            name = args[0]
            if not _NAME.match(name):
                raise ParseError(f"bad arrow name {name!r}", lineno)
            arrows.append((Arrow(name, _int(args[1], lineno, "source"), _int(args[2], lineno, "target")), lineno))
        elif kw == "truncate":
            if truncate is not None or len(args) != 1:
                raise ParseError("bad or duplicate truncate line", lineno)
            truncate = _int(args[0], lineno, "truncation degree")
            if truncate < 2:
                raise ParseError("truncation degree must be at least 2", lineno)
        elif kw == "rel":
            if not args or len(args) % 2:
                raise ParseError("rel needs coefficient/path pairs", lineno)
            raw_rels.append((args, lineno))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)

    if fld is None:
        raise ParseError("missing field line")
    if nverts is None:
        raise ParseError("missing vertices line")
    if truncate is None:
        raise ParseError("missing truncate line")

    names = set()
    for a, lineno in arrows:
        if a.name in names:
            raise ParseError(f"duplicate arrow {a.name!r}", lineno)
        names.add(a.name)
        for v in (a.source, a.target):
            if not 0 <= v < nverts:
                raise ParseError(f"vertex {v} out of range", lineno)
    quiver = Quiver(nverts, tuple(a for a, _ in arrows))

    relations = []
    for args, lineno in raw_rels:
        terms = []
        for ctok, ptok in zip(args[::2], args[1::2]):
            if not _COEFF.match(ctok):
                raise ParseError(f"bad coefficient {ctok!r}", lineno)
            num, _, den = ctok.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", lineno)
            coeff = Fraction(int(num), int(den) if den else 1)
            seq = ptok.split("*")
            for n in seq:
                if n not in names:
                    raise ParseError(f"unknown arrow {n!r}", lineno)
            try:
                path = quiver.path(seq)
            except ValueError as exc:
                raise InvalidRelation(str(exc), lineno) from None
            if not 2 <= path.length < truncate:
                raise InvalidRelation(
                    f"term {path} has length {path.length}; need 2 <= length < {truncate}", lineno)
            if fld.characteristic and coeff.denominator % fld.characteristic == 0:
                raise InvalidRelation(f"coefficient {ctok} undefined in {fld}", lineno)
            terms.append((coeff, path))
        relations.append(tuple(terms))

    return BoundQuiverPresentation(fld, quiver, truncate, tuple(relations), tuple(header))
