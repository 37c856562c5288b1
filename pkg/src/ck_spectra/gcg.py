"""Parser and emitter for the .gcg graph text format.

Grammar (comments run from '#' to end of line)::

    file        := stmt*
    stmt        := vertex_stmt | edge_stmt
    vertex_stmt := "vertex" IDENT ("," IDENT)* ";"
    edge_stmt   := "edge" (IDENT ":")? IDENT "->" IDENT ("*" (NAT | "inf"))? ";"

Vertices must be declared before use, the default multiplicity is one, and
"inf" stands for the OMEGA multiplicity.  Unlabeled duplicate edges between
the same pair merge additively (saturating); duplicate labels are errors.
All errors carry 1-based line and column positions.

``parse_graph(emit_gcg(g)) == g`` for every graph whose vertex names and
labels are identifiers, since the emitter writes the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateLabel, ParseError, UndeclaredVertex
from .graph_core import OMEGA, Bundle, Graph, is_omega

_KEYWORDS = {"vertex", "edge", "inf"}
_PUNCT = {",", ";", ":", "*", "->"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident | nat | punct | eof
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < len(src) and src[i] != "\n":
                i += 1
                col += 1
            continue
        if ch == "-" and src[i : i + 2] == "->":
            toks.append(_Tok("punct", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in ",;:*":
            toks.append(_Tok("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("nat", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Tok("ident", src[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(line, col, f"unexpected character {ch!r}")
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.pos = 0
        self.vertices: list[str] = []
        self.declared: set[str] = set()
        self.labels: set[str] = set()
        self.bundles: list[Bundle] = []

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect_punct(self, text: str) -> _Tok:
        tok = self.take()
        if tok.kind != "punct" or tok.text != text:
            raise ParseError(tok.line, tok.col, f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def expect_name(self) -> _Tok:
        tok = self.take()
        if tok.kind != "ident":
            raise ParseError(tok.line, tok.col, f"expected a name, found {tok.text or 'end of input'!r}")
        if tok.text in _KEYWORDS:
            raise ParseError(tok.line, tok.col, f"{tok.text!r} is a reserved word")
        return tok

    def parse(self) -> Graph:
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind == "ident" and tok.text == "vertex":
                self.take()
                self.vertex_stmt()
            elif tok.kind == "ident" and tok.text == "edge":
                self.take()
                self.edge_stmt()
            else:
                raise ParseError(tok.line, tok.col, f"expected 'vertex' or 'edge', found {tok.text!r}")
        return Graph(self.vertices, self.bundles)

    def vertex_stmt(self) -> None:
        while True:
            tok = self.expect_name()
            if tok.text in self.declared:
                raise ParseError(tok.line, tok.col, f"vertex {tok.text!r} already declared")
            self.declared.add(tok.text)
            self.vertices.append(tok.text)
            nxt = self.take()
            if nxt.kind == "punct" and nxt.text == ",":
                continue
            if nxt.kind == "punct" and nxt.text == ";":
                return
            raise ParseError(nxt.line, nxt.col, f"expected ',' or ';', found {nxt.text or 'end of input'!r}")

    def vertex_ref(self) -> str:
        tok = self.expect_name()
        if tok.text not in self.declared:
            raise UndeclaredVertex(tok.line, tok.col, f"vertex {tok.text!r} used before declaration")
        return tok.text

    def edge_stmt(self) -> None:
        label = None
        first = self.expect_name()
        if self.peek().kind == "punct" and self.peek().text == ":":
            self.take()
            if first.text in self.labels:
                raise DuplicateLabel(first.line, first.col, f"label {first.text!r} already used")
            self.labels.add(first.text)
            label = first.text
            src = self.vertex_ref()
        else:
            if first.text not in self.declared:
                raise UndeclaredVertex(first.line, first.col, f"vertex {first.text!r} used before declaration")
            src = first.text
        self.expect_punct("->")
        dst = self.vertex_ref()
        mult = 1
        tok = self.take()
        if tok.kind == "punct" and tok.text == "*":
            mtok = self.take()
            if mtok.kind == "ident" and mtok.text == "inf":
                mult = OMEGA
            elif mtok.kind == "nat":
                mult = int(mtok.text)
                if mult < 1:
                    raise ParseError(mtok.line, mtok.col, "multiplicity must be at least 1")
            else:
                raise ParseError(mtok.line, mtok.col, f"expected a count or 'inf', found {mtok.text or 'end of input'!r}")
            tok = self.take()
        if not (tok.kind == "punct" and tok.text == ";"):
            raise ParseError(tok.line, tok.col, f"expected ';', found {tok.text or 'end of input'!r}")
        self.bundles.append(Bundle(src, dst, mult, label))


def parse_graph(src: str) -> Graph:
    """Parse .gcg text into a graph."""
    return _Parser(src).parse()


def emit_gcg(g: Graph) -> str:
    """Canonical text form; parsing it reproduces the graph exactly."""
    lines = []
    if g.vertices:
        lines.append("vertex " + ", ".join(g.vertices) + ";")
    for b in g.bundles:
        head = f"edge {b.label}: " if b.label else "edge "
        stmt = f"{head}{b.src} -> {b.dst}"
        if is_omega(b.mult):
            stmt += " * inf"
        elif b.mult != 1:
            stmt += f" * {b.mult}"
        lines.append(stmt + ";")
    return "\n".join(lines) + ("\n" if lines else "")
