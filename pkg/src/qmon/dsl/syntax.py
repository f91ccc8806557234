"""Lexer, recursive-descent parser and canonical printer for .qmon files.

    doc    := def*
    def    := KIND NAME '{' [clause (';' clause)*] [';'] '}'
    clause := KEYWORD [group (',' group)*]
    group  := item+
    item   := ATOM | '<=' | '->' | '(' item* ')'

Commas inside parentheses belong to the enclosing group, so ``(x, y) -> v``
is one group. The AST is deliberately generic; meaning is assigned by the
loader.
"""

import re
from dataclasses import dataclass, field

from ..errors import QmonError

KINDS = ("quantale", "monoid", "vrelation", "vmonoid", "action", "cone",
         "enriched_action", "extension")

KEYWORDS = {
    "quantale": ("elements", "order", "tensor", "unit"),
    "monoid": ("elements", "identity", "table"),
    "vrelation": ("over", "on", "elements", "matrix", "order"),
    "vmonoid": ("monoid", "relation", "over", "matrix", "order"),
    "action": ("acting", "on", "table", "trivial"),
    "cone": ("over", "on", "cone"),
    "enriched_action": ("acting", "on", "action", "cone"),
    "extension": ("kernel", "middle", "quotient", "k", "p", "s"),
}


class DSLError(QmonError):
    """Diagnostic with a source position and the tokens that would have fit."""

    def __init__(self, message, line=0, col=0, expected=()):
        where = f"{line}:{col}: " if line else ""
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{where}{message}{exp}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)


class DSLSyntaxError(DSLError):
    pass


class DuplicateNameError(DSLError):
    pass


class UnresolvedReferenceError(DSLError):
    pass


class ArityError(DSLError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str      # atom, punct, eof
    value: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<punct><=|->|[{};,()])
  | (?P<atom>[A-Za-z0-9_.+*'^]+)
""", re.VERBOSE)


def tokenize(text):
    out = []
    pos, line, start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind in ("atom", "punct"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass(frozen=True)
class Clause:
    keyword: str
    groups: tuple                       # tuple of tuples of item strings
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Definition:
    kind: str
    name: str
    clauses: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def clause(self, keyword):
        for c in self.clauses:
            if c.keyword == keyword:
                return c
        return None


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected):
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.value)
        raise DSLSyntaxError(f"unexpected {got}", t.line, t.col, expected)

    def expect(self, value):
        if self.tok.value != value or self.tok.kind == "eof":
            self.fail((repr(value),))
        return self.advance()

    def document(self):
        defs = []
        while self.tok.kind != "eof":
            defs.append(self.definition())
        return defs

    def definition(self):
        t = self.tok
        if t.kind != "atom" or t.value not in KINDS:
            self.fail(KINDS)
        kind = self.advance().value
        if self.tok.kind != "atom":
            self.fail(("a name",))
        name = self.advance().value
        self.expect("{")
        clauses = []
        while self.tok.value != "}":
            if self.tok.kind == "eof":
                self.fail(("'}'",))
            clauses.append(self.clause(kind))
            if self.tok.value == ";":
                self.advance()
            elif self.tok.value != "}":
                self.fail(("';'", "'}'", "','"))
        self.advance()
        return Definition(kind, name, tuple(clauses), t.line, t.col)

    def clause(self, kind):
        t = self.tok
        if t.kind != "atom" or t.value not in KEYWORDS[kind]:
            self.fail(KEYWORDS[kind])
        self.advance()
        groups = []
        if self.tok.value not in (";", "}"):
            groups.append(self.group())
            while self.tok.value == ",":
                self.advance()
                groups.append(self.group())
        return Clause(t.value, tuple(groups), t.line, t.col)

    def group(self):
        items = []
        while True:
            t = self.tok
            if t.kind == "atom" or t.value in ("<=", "->"):
                items.append(self.advance().value)
            elif t.value == "(":
                items.append(self.paren())
            else:
                break
        if not items:
            self.fail(("an element", "'('"))
        return tuple(items)

    def paren(self):
        self.expect("(")
        parts = []
        while self.tok.value != ")":
            t = self.tok
            if t.kind == "atom" or t.value in (",", "<=", "->"):
                parts.append(self.advance().value)
            elif t.value == "(":
                parts.append(self.paren())
            else:
                self.fail(("')'", "an element"))
        self.advance()
        return "(" + "".join(p if p != "," else ", " for p in parts) + ")"


def parse_definitions(text):
    return Parser(text).document()


def tuple_items(item):
    """'(a, b)' -> ('a', 'b')."""
    if not (item.startswith("(") and item.endswith(")")):
        return None
    return tuple(s.strip() for s in item[1:-1].split(","))


def print_definition(d):
    lines = [f"{d.kind} {d.name} {{"]
    for c in d.clauses:
        body = ", ".join(" ".join(g) for g in c.groups)
        lines.append(f"  {c.keyword}{' ' + body if body else ''};")
    lines.append("}")
    return "\n".join(lines)


def print_definitions(defs):
    return "\n\n".join(print_definition(d) for d in defs) + ("\n" if defs else "")
