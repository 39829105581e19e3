"""Script language: lexer, statement parser and a static name/arity check.

Statements end with ``;``.  ``#`` starts a comment.

    ring R = GF(32003)[x,y,z] / (x^2*y + z^2) weights (1,2,2) order grevlex;
    use R;
    ideal I = (x^2, y^2);
    module M = coker [[z, y], [-x^2, z]];
    poly f = x*y;
    let H = hom(M, free(1));
    print trace(M);
    assert trace(M) == (x^2, y, z);
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class ScriptError(Exception):
    """Diagnostic carrying a 1-based line and column."""

    def __init__(self, message, line=0, col=0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<str>\"[^\"\n]*\")|(?P<op>==|[-+*^/(),;\[\]=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    col: int
    offset: int


def lex(text):
    out = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScriptError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            out.append(Token("int", int(m.group()), line, col, pos))
        elif kind == "str":
            out.append(Token("str", m.group()[1:-1], line, col, pos))
        elif kind in ("name", "op"):
            out.append(Token(kind, m.group(), line, col, pos))
        pos = m.end()
    out.append(Token("end", None, line, pos - line_start + 1, pos))
    return out


# -- AST ----------------------------------------------------------------------

@dataclass
class Node:
    line: int
    col: int


@dataclass
class Num(Node):
    value: int


@dataclass
class Name(Node):
    name: str


@dataclass
class Str(Node):
    value: str


@dataclass
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass
class Neg(Node):
    operand: Node


@dataclass
class Call(Node):
    func: str
    args: list


@dataclass
class TupleLit(Node):
    items: list


@dataclass
class ListLit(Node):
    items: list


@dataclass
class RingDecl(Node):
    name: str
    field: object  # ("gf", p) / ("qq",) / None for the session default
    variables: list
    relations: list
    weights: list | None
    order: str | None


@dataclass
class Use(Node):
    name: str


@dataclass
class Bind(Node):
    kind: str  # ideal / module / poly / let
    name: str
    expr: Node


@dataclass
class Print(Node):
    expr: Node
    text: str


@dataclass
class Assert(Node):
    expr: Node
    expected: Node | None
    text: str


@dataclass
class Script:
    statements: list = field(default_factory=list)
    source: str = ""


# function name -> (min args, max args or None)
ARITY = {
    "trace": (1, 1),
    "test_ideal": (1, 1),
    "trace_module": (2, 2),
    "closure": (2, 3),
    "family": (0, None),
    "intersect": (1, None),
    "colon": (2, 2),
    "ann": (1, 1),
    "generates": (2, 2),
    "free_summand": (1, 1),
    "socle": (0, 0),
    "maximal_ideal": (0, 0),
    "is_m_primary": (1, 1),
    "dim": (1, 1),
    "hom": (2, 2),
    "ext1": (2, 2),
    "tensor": (2, 2),
    "dsum": (2, None),
    "minimalize": (1, 1),
    "resolution": (2, 2),
    "syz": (1, 1),
    "free": (1, 1),
    "quotient": (1, 1),
    "coker": (1, 1),
    "image": (1, 1),
    "span": (1, 1),
    "eliminate": (2, None),
    "in_radical": (2, 2),
    "member": (2, 2),
    "singular_check": (1, 1),
    "colon_capturing": (2, None),
    "gb": (1, 1),
    "jacobian": (0, 0),
    "is_zero": (1, 1),
    "rank": (1, 1),
    "relations": (1, 1),
}

KEYWORDS = {"ring", "use", "ideal", "module", "poly", "let", "print", "assert", "true", "false"}
_PREFIX_CALLS = {"coker", "image", "span"}


class Parser:
    def __init__(self, text):
        self.text = text
        self.toks = lex(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ScriptError(msg, tok.line, tok.col)

    def at_op(self, op):
        t = self.peek()
        return t.kind == "op" and t.value == op

    def expect_op(self, op):
        t = self.peek()
        if not (t.kind == "op" and t.value == op):
            found = "end of input" if t.kind == "end" else repr(t.value)
            self.error(f"expected {op!r}, found {found}")
        return self.take()

    def expect_name(self, what="identifier"):
        t = self.peek()
        if t.kind != "name":
            self.error(f"expected {what}")
        return self.take()

    # -- statements --------------------------------------------------------
    def script(self):
        stmts = []
        while self.peek().kind != "end":
            stmts.append(self.statement())
        return Script(stmts, self.text)

    def statement(self):
        t = self.peek()
        if t.kind != "name":
            self.error("expected a statement")
        kw = t.value
        if kw == "ring":
            s = self.ring_decl()
        elif kw == "use":
            self.take()
            s = Use(t.line, t.col, self.expect_name("ring name").value)
        elif kw in ("ideal", "module", "poly", "let"):
            self.take()
            nm = self.expect_name("name to bind")
            if nm.value in KEYWORDS:
                self.error(f"{nm.value!r} is reserved", nm)
            self.expect_op("=")
            s = Bind(t.line, t.col, kw, nm.value, self.expr())
        elif kw == "print":
            self.take()
            start = self.peek().offset
            e = self.expr()
            s = Print(t.line, t.col, e, self._source(start))
        elif kw == "assert":
            self.take()
            start = self.peek().offset
            e = self.expr()
            text = self._source(start)
            expected = None
            if self.at_op("=="):
                self.take()
                expected = self.expr()
            s = Assert(t.line, t.col, e, expected, text)
        else:
            self.error(f"unknown statement {kw!r}")
        self.expect_op(";")
        return s

    def _source(self, start):
        end = self.peek().offset
        return " ".join(self.text[start:end].split())

    def ring_decl(self):
        t = self.take()
        name = self.expect_name("ring name").value
        self.expect_op("=")
        fld = None
        if self.peek().kind == "name":
            f = self.take()
            if f.value == "QQ":
                fld = ("qq",)
            elif f.value == "GF":
                self.expect_op("(")
                p = self.take()
                if p.kind != "int":
                    self.error("expected a prime", p)
                self.expect_op(")")
                fld = ("gf", p.value)
            else:
                self.error("expected GF(p) or QQ", f)
        self.expect_op("[")
        variables = [self.expect_name("variable").value]
        while self.at_op(","):
            self.take()
            variables.append(self.expect_name("variable").value)
        self.expect_op("]")
        relations = []
        if self.at_op("/"):
            self.take()
            self.expect_op("(")
            relations.append(self.expr())
            while self.at_op(","):
                self.take()
                relations.append(self.expr())
            self.expect_op(")")
        weights = None
        order = None
        while self.peek().kind == "name" and self.peek().value in ("weights", "order"):
            kw = self.take().value
            if kw == "weights":
                self.expect_op("(")
                weights = [self._int()]
                while self.at_op(","):
                    self.take()
                    weights.append(self._int())
                self.expect_op(")")
            else:
                order = self.expect_name("order name").value
        return RingDecl(t.line, t.col, name, fld, variables, relations, weights, order)

    def _int(self):
        t = self.take()
        if t.kind != "int":
            self.error("expected an integer", t)
        return t.value

    # -- expressions -------------------------------------------------------
    def expr(self):
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            left = self.term()
            if t.value == "-":
                left = Neg(t.line, t.col, left)
        else:
            left = self.term()
        while self.peek().kind == "op" and self.peek().value in ("+", "-"):
            op = self.take()
            left = BinOp(op.line, op.col, op.value, left, self.term())
        return left

    def term(self):
        left = self.power()
        while self.at_op("*"):
            op = self.take()
            left = BinOp(op.line, op.col, "*", left, self.power())
        return left

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            op = self.take()
            e = self.take()
            if e.kind != "int":
                self.error("exponent must be a non-negative integer", e)
            return BinOp(op.line, op.col, "^", base, Num(e.line, e.col, e.value))
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.take()
            return Num(t.line, t.col, t.value)
        if t.kind == "str":
            self.take()
            return Str(t.line, t.col, t.value)
        if t.kind == "name":
            self.take()
            if t.value in _PREFIX_CALLS and self.at_op("["):
                return Call(t.line, t.col, t.value, [self.atom()])
            if self.at_op("("):
                self.take()
                args = self._items(")")
                return Call(t.line, t.col, t.value, args)
            return Name(t.line, t.col, t.value)
        if t.kind == "op" and t.value == "(":
            self.take()
            items, trailing = self._items_tr(")")
            if len(items) == 1 and not trailing:
                return items[0]
            return TupleLit(t.line, t.col, items)
        if t.kind == "op" and t.value == "[":
            self.take()
            return ListLit(t.line, t.col, self._items("]"))
        if t.kind == "op" and t.value == "-":
            self.take()
            return Neg(t.line, t.col, self.power())
        self.error("unexpected end of input" if t.kind == "end" else f"unexpected {t.value!r}")

    def _items(self, close):
        return self._items_tr(close)[0]

    def _items_tr(self, close):
        items = []
        trailing = False
        if self.at_op(close):
            self.take()
            return items, trailing
        while True:
            items.append(self.expr())
            if self.at_op(","):
                self.take()
                if self.at_op(close):
                    trailing = True
                    self.take()
                    return items, trailing
                continue
            self.expect_op(close)
            return items, trailing


def _walk(node):
    yield node
    for v in vars(node).values():
        if isinstance(v, Node):
            yield from _walk(v)
        elif isinstance(v, list):
            for x in v:
                if isinstance(x, Node):
                    yield from _walk(x)


class Checker:
    """Static pass: unknown identifiers, arity mismatches, rebinding.

    State persists across calls so the REPL can check one statement at a time.
    """

    def __init__(self):
        self.rings = {}
        self.bound = set()
        self.active = None

    def statement(self, s):
        if isinstance(s, RingDecl):
            if s.name in self.bound or s.name in self.rings:
                raise ScriptError(f"name {s.name} is already bound", s.line, s.col)
            for r in s.relations:
                _check_expr(r, set(s.variables), set())
            self.rings[s.name] = set(s.variables)
            self.active = s.name
            return
        if isinstance(s, Use):
            if s.name not in self.rings:
                raise ScriptError(f"unknown ring {s.name}", s.line, s.col)
            self.active = s.name
            return
        if self.active is None:
            raise ScriptError("no ring declared before this statement", s.line, s.col)
        ring_vars = self.rings[self.active]
        if isinstance(s, Bind):
            _check_expr(s.expr, ring_vars, self.bound)
            if s.name in self.bound or s.name in self.rings:
                raise ScriptError(f"name {s.name} is already bound", s.line, s.col)
            if s.name in ring_vars:
                raise ScriptError(f"name {s.name} shadows a ring variable", s.line, s.col)
            self.bound.add(s.name)
        elif isinstance(s, Print):
            _check_expr(s.expr, ring_vars, self.bound)
        elif isinstance(s, Assert):
            _check_expr(s.expr, ring_vars, self.bound)
            if s.expected is not None:
                _check_expr(s.expected, ring_vars, self.bound)


def check(script):
    checker = Checker()
    for s in script.statements:
        checker.statement(s)
    return script


def _check_expr(e, ring_vars, bound):
    for n in _walk(e):
        if isinstance(n, Name):
            if n.name in ("true", "false") or n.name in ring_vars or n.name in bound:
                continue
            raise ScriptError(f"unknown identifier {n.name}", n.line, n.col)
        if isinstance(n, Call):
            if n.func not in ARITY:
                raise ScriptError(f"unknown operation {n.func}", n.line, n.col)
            lo, hi = ARITY[n.func]
            k = len(n.args)
            if k < lo or (hi is not None and k > hi):
                want = f"{lo}" if lo == hi else (f"at least {lo}" if hi is None else f"{lo} to {hi}")
                raise ScriptError(f"{n.func} expects {want} argument(s), got {k}", n.line, n.col)


def parse(text):
    """Parse and statically check a script; raises ScriptError."""
    return check(Parser(text).script())
