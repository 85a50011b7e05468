"""Text format for presented algebras.

    # comment
    field = 3
    vertex 1
    vertex 2
    arrow a: 1 -> 2
    arrow b: 2 -> 2
    relation b*b
    relation b*a - 2*a      (rejected: length-one term)
    option max_nilpotency = 8

Paths are written right-to-left, so ``b*a`` walks ``a`` first.  A term is an
optional integer scalar (optionally followed by ``*``) and a path.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .algebra import AlgebraPresentation, format_relation
from .quiver import Arrow, Path, Quiver, QuiverError

IDENT = r"[A-Za-z0-9_][A-Za-z0-9_'.]*"
_IDENT_RE = re.compile(IDENT)
_INT_RE = re.compile(r"[0-9]+")


class InstanceError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message, self.line, self.col = message, line, col
        where = "" if line is None else "line %d, column %d: " % (line, col or 1)
        super().__init__(where + message)


class ParseError(InstanceError):
    """Syntax error."""


class SemanticError(InstanceError):
    """Well-formed text that does not describe a valid presentation."""


@dataclass
class Instance:
    presentation: AlgebraPresentation
    options: dict[str, int] = field(default_factory=dict)
    name: str = "instance"

    def text(self) -> str:
        return print_instance(self.presentation, self.options)

    def digest(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()[:16]


class _Cursor:
    def __init__(self, text: str, line: int, col: int = 0):
        self.text, self.line, self.pos = text, line, col

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.pos + 1)

    def expect(self, lit: str) -> None:
        self.skip()
        if not self.text.startswith(lit, self.pos):
            raise self.error("expected %r" % lit)
        self.pos += len(lit)

    def match(self, regex: re.Pattern, what: str) -> str:
        self.skip()
        m = regex.match(self.text, self.pos)
        if not m:
            raise self.error("expected %s" % what)
        self.pos = m.end()
        return m.group(0)

    def ident(self) -> str:
        return self.match(_IDENT_RE, "an identifier")


def _parse_terms(cur: _Cursor) -> list[tuple[int, list[str], int]]:
    """``(scalar, arrow names, column)`` for each term of a relation."""
    terms = []
    sign = 1
    first = True
    while True:
        c = cur.peek()
        if c in "+-":
            sign = -1 if c == "-" else 1
            cur.pos += 1
        elif not first:
            raise cur.error("expected '+' or '-'")
        col = cur.pos + 1
        scalar = 1
        cur.skip()
        m = _IDENT_RE.match(cur.text, cur.pos)
        if m is None:
            raise cur.error("expected a term")
        word = m.group(0)
        if _INT_RE.fullmatch(word):
            scalar = int(word)
            cur.pos = m.end()
            if cur.peek() == "*":
                cur.pos += 1
        names = [cur.ident()]
        while cur.peek() == "*":
            cur.pos += 1
            names.append(cur.ident())
        terms.append((sign * scalar, names, col))
        sign, first = 1, False
        if cur.at_end():
            return terms


def parse_instance(text: str, name: str = "instance") -> Instance:
    p = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    raw_relations = []
    options: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        cur = _Cursor(line, lineno)
        if cur.at_end():
            continue
        kw = cur.match(re.compile(r"[a-z_]+"), "a keyword")
        if kw == "field":
            cur.expect("=")
            if p is not None:
                raise cur.error("field declared twice")
            p = int(cur.match(_INT_RE, "a prime"))
        elif kw == "vertex":
            v = cur.ident()
            if v in vertices:
                raise SemanticError("duplicate vertex %r" % v, lineno, 1)
            vertices.append(v)
        elif kw == "arrow":
            a = cur.ident()
            if _INT_RE.fullmatch(a):
                raise SemanticError("arrow ids must not be integers", lineno, 1)
            cur.expect(":")
            s = cur.ident()
            cur.expect("->")
            t = cur.ident()
            arrows.append(Arrow(a, s, t))
        elif kw == "relation":
            raw_relations.append((lineno, _parse_terms(cur)))
            continue
        elif kw == "option":
            key = cur.ident()
            cur.expect("=")
            options[key] = int(cur.match(_INT_RE, "an integer"))
        else:
            raise ParseError("unknown keyword %r" % kw, lineno, 1)
        if not cur.at_end():
            raise cur.error("unexpected trailing text")
    if p is None:
        raise SemanticError("missing 'field = <p>' line")
    try:
        q = Quiver(vertices, arrows)
    except QuiverError as exc:
        raise SemanticError(str(exc)) from None
    relations = []
    for lineno, terms in raw_relations:
        rel = []
        for scalar, names, col in terms:
            for n in names:
                if not q.has_arrow(n):
                    raise SemanticError("unknown arrow %r" % n, lineno, col)
            try:
                pth = q.path(*names)
            except QuiverError:
                raise SemanticError("path %s is not composable" % "*".join(names), lineno, col) from None
            rel.append((scalar, pth))
        ends = {(pth.source, pth.target) for _, pth in rel}
        if len(ends) > 1:
            raise SemanticError("relation terms have different endpoints", lineno, 1)
        relations.append(tuple(rel))
    try:
        pres = AlgebraPresentation(q, p, tuple(relations))
    except ValueError as exc:
        raise SemanticError(str(exc)) from None
    return Instance(pres, options, name)


def _format_term(c: int, pth: Path, first: bool) -> str:
    word = "*".join(pth.arrows)
    coeff = "" if c == 1 else "%d*" % c
    return ("" if first else " + ") + coeff + word


def print_instance(pres: AlgebraPresentation, options: dict[str, int] | None = None) -> str:
    lines = ["field = %d" % pres.p]
    lines += ["vertex %s" % v for v in pres.quiver.vertices]
    lines += ["arrow %s: %s -> %s" % (a.name, a.source, a.target) for a in pres.quiver.arrows]
    for rel in pres.relations:
        lines.append("relation " + "".join(_format_term(c, pth, k == 0) for k, (c, pth) in enumerate(rel)))
    for key, val in sorted((options or {}).items()):
        lines.append("option %s = %d" % (key, val))
    return "\n".join(lines) + "\n"


def load_instance(path) -> Instance:
    from pathlib import Path as FsPath

    fp = FsPath(path)
    return parse_instance(fp.read_text(encoding="utf-8"), fp.stem)


__all__ = [
    "Instance",
    "InstanceError",
    "ParseError",
    "SemanticError",
    "format_relation",
    "load_instance",
    "parse_instance",
    "print_instance",
]
