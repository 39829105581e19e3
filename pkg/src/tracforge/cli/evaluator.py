"""Statement-by-statement evaluation of parsed scripts into reports."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .. import closurelab as cl
from .. import fpmod as fm
from .. import gbengine as gb
from ..polycore import (
    DEFAULT_PRIME,
    GREVLEX,
    LEX,
    Field,
    MonomialOrder,
    Polynomial,
    PolyRing,
    QuotientRing,
    RingMismatch,
    format_polynomial,
)
from . import parser as P

PATHS = {
    "trace": "trace-of-hom",
    "test_ideal": "trace-of-hom",
    "trace_module": "images-of-hom",
    "family": "intersection-of-traces",
    "generates": "trace-module-membership",
    "free_summand": "trace-of-hom",
    "singular_check": "jacobian-in-radical",
    "colon_capturing": "colon-in-closure",
}


@dataclass
class Options:
    field: Field = Field(DEFAULT_PRIME)
    order: MonomialOrder = GREVLEX
    timing: bool = False


@dataclass
class AssertionOutcome:
    line: int
    text: str
    passed: bool
    expected: str
    actual: str


class Session:
    """Evaluation state: declared rings, the active ring and bound names."""

    def __init__(self, options=None):
        self.options = options or Options()
        self.rings = {}
        self.ring = None
        self.env = {}
        self.checker = P.Checker()
        self.reports = []
        self.assertions = []
        self.timings = []

    # -- driving -------------------------------------------------------------
    def run_text(self, text):
        script = P.Parser(text).script()
        for s in script.statements:
            self.checker.statement(s)
        for s in script.statements:
            self.execute(s)
        return self

    def execute(self, s):
        t0 = time.perf_counter()
        try:
            out = self._execute(s)
        except P.ScriptError:
            raise
        except (ValueError, RingMismatch, ZeroDivisionError, NotImplementedError, TypeError) as exc:
            raise P.ScriptError(f"evaluation error: {exc}", s.line, s.col) from exc
        self.timings.append((s.line, time.perf_counter() - t0))
        return out

    def _execute(self, s):
        if isinstance(s, P.RingDecl):
            self._declare_ring(s)
        elif isinstance(s, P.Use):
            self.ring = self.rings[s.name]
        elif isinstance(s, P.Bind):
            v = self.eval(s.expr)
            self.env[s.name] = self._coerce_binding(s.kind, v, s.expr)
        elif isinstance(s, P.Print):
            t0 = time.perf_counter()
            v = self.eval(s.expr)
            path = PATHS.get(s.expr.func, s.expr.func) if isinstance(s.expr, P.Call) else "value"
            if isinstance(s.expr, P.Call) and s.expr.func == "closure":
                path = "(IB:B)" if len(s.expr.args) == 2 else "tensor-membership"
            rep = cl.ClosureReport.for_value(self.ring, s.text, path, render(v), time.perf_counter() - t0)
            self.reports.append(rep)
            return rep
        elif isinstance(s, P.Assert):
            v = self.eval(s.expr)
            if s.expected is None:
                ok = truth(v)
                outcome = AssertionOutcome(s.line, s.text, ok, "true", "true" if ok else "false")
            else:
                e = self.eval(s.expected)
                want, got = canonical_pair(self.ring, e, v)
                outcome = AssertionOutcome(s.line, s.text, want == got, want, got)
            self.assertions.append(outcome)
            return outcome

    def _declare_ring(self, s):
        if s.field is None:
            fld = self.options.field
        elif s.field[0] == "qq":
            fld = Field(0)
        else:
            fld = Field(s.field[1])
        if s.order is None:
            order = self.options.order
        elif s.order == "grevlex":
            order = GREVLEX
        elif s.order == "lex":
            order = LEX
        elif s.order == "wgrevlex":
            if not s.weights:
                raise P.ScriptError("order wgrevlex needs ring weights", s.line, s.col)
            order = MonomialOrder("wgrevlex", tuple(s.weights))
        else:
            raise P.ScriptError(f"unknown order {s.order}", s.line, s.col)
        if s.weights is not None and len(s.weights) != len(s.variables):
            raise P.ScriptError("weights length must match the number of variables", s.line, s.col)
        base = PolyRing(tuple(s.variables), fld, order, tuple(s.weights) if s.weights else None)
        saved = self.ring
        self.ring = QuotientRing(base)
        rels = [self.to_poly(self.eval(r), r) for r in s.relations]
        self.ring = saved
        for r, node in zip(rels, s.relations):
            if s.weights is not None and not r.is_homogeneous(base.weights):
                raise P.ScriptError(
                    f"defining generator {format_polynomial(r)} is not homogeneous for weights "
                    f"({','.join(map(str, s.weights))})", node.line, node.col)
        try:
            ring = QuotientRing(base, tuple(rels))
        except ValueError as exc:
            raise P.ScriptError(str(exc), s.line, s.col) from exc
        self.rings[s.name] = ring
        self.ring = ring

    # -- expressions ------------------------------------------------------------
    def eval(self, e):
        if isinstance(e, P.Num):
            return self.ring.base.const(e.value)
        if isinstance(e, P.Str):
            return e.value
        if isinstance(e, P.Name):
            if e.name == "true":
                return True
            if e.name == "false":
                return False
            if e.name in self.ring.base._index:
                return self.ring.var(e.name)
            if e.name in self.env:
                return self.env[e.name]
            raise P.ScriptError(f"unknown identifier {e.name}", e.line, e.col)
        if isinstance(e, P.Neg):
            v = self.eval(e.operand)
            if isinstance(v, Polynomial):
                return -v
            raise P.ScriptError("negation needs a polynomial", e.line, e.col)
        if isinstance(e, P.BinOp):
            return self._binop(e)
        if isinstance(e, P.TupleLit):
            return tuple(self.eval(x) for x in e.items)
        if isinstance(e, P.ListLit):
            return [self.eval(x) for x in e.items]
        if isinstance(e, P.Call):
            return self._call(e)
        raise P.ScriptError("cannot evaluate expression", e.line, e.col)

    def _binop(self, e):
        a = self.eval(e.left)
        if e.op == "^":
            if not isinstance(a, Polynomial):
                raise P.ScriptError("only polynomials can be raised to a power", e.line, e.col)
            return a ** e.right.value
        b = self.eval(e.right)
        if isinstance(a, Polynomial) and isinstance(b, Polynomial):
            return {"+": a + b, "-": a - b, "*": a * b}[e.op]
        if e.op in "+*":
            ia, ib = self.to_ideal(a, e.left), self.to_ideal(b, e.right)
            return ia + ib if e.op == "+" else ia * ib
        raise P.ScriptError(f"operator {e.op} is not defined for these operands", e.line, e.col)

    # -- coercions ----------------------------------------------------------------
    def to_poly(self, v, node):
        if isinstance(v, Polynomial):
            return self.ring.base(v)
        raise P.ScriptError("expected a polynomial", node.line, node.col)

    def to_ideal(self, v, node):
        if isinstance(v, gb.Ideal):
            return v
        if isinstance(v, Polynomial):
            return gb.Ideal(self.ring, [v])
        if isinstance(v, (tuple, list)) and all(isinstance(x, Polynomial) for x in v):
            return gb.Ideal(self.ring, list(v))
        if isinstance(v, gb.Submodule) and v.rank == 1:
            return gb.Ideal.from_submodule(v)
        raise P.ScriptError("expected an ideal", node.line, node.col)

    def to_module(self, v, node):
        if isinstance(v, fm.FPModule):
            return v
        if isinstance(v, fm.HomResult):
            return v.module
        if isinstance(v, gb.Ideal):
            return fm.from_submodule([(f,) for f in v.polys], self.ring)
        if isinstance(v, gb.Submodule):
            return fm.from_submodule(v)
        if isinstance(v, (tuple, Polynomial)):
            return self.to_module(self.to_ideal(v, node), node)
        raise P.ScriptError("expected a module", node.line, node.col)

    def to_vectors(self, v, node):
        if isinstance(v, gb.Submodule):
            return list(v.gens)
        if isinstance(v, Polynomial):
            return [(v,)]
        if isinstance(v, (list, tuple)):
            out = []
            for x in v:
                if isinstance(x, Polynomial):
                    out.append((x,))
                elif isinstance(x, (tuple, list)) and all(isinstance(y, Polynomial) for y in x):
                    out.append(tuple(x))
                else:
                    raise P.ScriptError("expected a list of vectors", node.line, node.col)
            if len({len(x) for x in out}) > 1:
                raise P.ScriptError("vectors of different lengths", node.line, node.col)
            return out
        raise P.ScriptError("expected a list of vectors", node.line, node.col)

    def to_matrix(self, v, node):
        if isinstance(v, list) and v and all(isinstance(x, Polynomial) for x in v):
            v = [v]
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise P.ScriptError("expected a matrix [[...], ...]", node.line, node.col)
        if len({len(r) for r in v}) > 1:
            raise P.ScriptError("matrix rows have different lengths", node.line, node.col)
        for r in v:
            for x in r:
                if not isinstance(x, Polynomial):
                    raise P.ScriptError("matrix entries must be polynomials", node.line, node.col)
        return v

    def to_int(self, v, node):
        if isinstance(v, Polynomial) and v.is_constant():
            c = v.constant_term()
            return int(c) if self.ring.field.p == 0 else c
        raise P.ScriptError("expected an integer", node.line, node.col)

    def _coerce_binding(self, kind, v, node):
        if kind == "ideal":
            return self.to_ideal(v, node)
        if kind == "module":
            return self.to_module(v, node)
        if kind == "poly":
            return self.to_poly(v, node)
        return v

    # -- operations --------------------------------------------------------------
    def _call(self, e):
        f = e.func
        args = [self.eval(a) for a in e.args]
        n = e.args
        ring = self.ring
        mod = lambda i: self.to_module(args[i], n[i])  # noqa: E731
        ideal = lambda i: self.to_ideal(args[i], n[i])  # noqa: E731
        poly = lambda i: self.to_poly(args[i], n[i])  # noqa: E731
        if f in ("trace", "test_ideal"):
            return cl.trace_ideal(mod(0))
        if f == "trace_module":
            return cl.trace_module(mod(0), mod(1))
        if f == "closure":
            if len(args) == 2:
                return cl.closure_of_ideal(ideal(0), mod(1))
            M = mod(1)
            vecs = self.to_vectors(args[0], n[0])
            if any(len(v) != M.rank for v in vecs):
                raise P.ScriptError("submodule vectors do not fit the ambient module", n[0].line, n[0].col)
            return cl.closure_of_submodule(vecs, M, mod(2))
        if f == "family":
            return cl.family_test_ideal([mod(i) for i in range(len(args))], ring)
        if f == "intersect":
            return gb.intersect_all([ideal(i) for i in range(len(args))])
        if f == "colon":
            I = ideal(0)
            if isinstance(args[1], Polynomial):
                return gb.colon(I, (args[1],))
            return gb.module_colon(I, ideal(1))
        if f == "ann":
            M = mod(0)
            return gb.annihilator(M.rank, M.relation_module())
        if f == "generates":
            return cl.generates(mod(0), mod(1))
        if f == "free_summand":
            return cl.has_free_summand(mod(0))
        if f == "socle":
            return cl.socle(ring)
        if f == "maximal_ideal":
            return cl.maximal_ideal(ring)
        if f == "is_m_primary":
            return cl.is_m_primary(ideal(0))
        if f == "dim":
            return ring.base.const(gb.krull_dimension(ideal(0)))
        if f == "hom":
            return fm.hom(mod(0), mod(1))
        if f == "ext1":
            return fm.ext1(mod(0), mod(1))
        if f == "tensor":
            return fm.tensor(mod(0), mod(1))
        if f == "dsum":
            acc = mod(0)
            for i in range(1, len(args)):
                acc = fm.direct_sum(acc, mod(i))
            return acc
        if f == "minimalize":
            return fm.minimalize(mod(0))
        if f == "resolution":
            return fm.free_resolution(mod(0), self.to_int(args[1], n[1]))
        if f == "syz":
            return fm.syzygy_of_residue_field(ring, self.to_int(args[0], n[0]))
        if f == "free":
            return fm.free_module(ring, self.to_int(args[0], n[0]))
        if f == "quotient":
            I = ideal(0)
            return fm.from_cokernel([list(I.polys)], ring, 1) if I.polys else fm.free_module(ring, 1)
        if f == "coker":
            A = self.to_matrix(args[0], n[0])
            return fm.from_cokernel(A, ring)
        if f == "image":
            A = self.to_matrix(args[0], n[0])
            return fm.from_submodule(fm.columns_of(A), ring)
        if f == "span":
            return fm.from_submodule(self.to_vectors(args[0], n[0]), ring)
        if f == "eliminate":
            keep = []
            for a, node in zip(args[1:], n[1:]):
                if not (isinstance(a, Polynomial) and len(a.terms) == 1 and sum(next(iter(a.terms))) == 1):
                    raise P.ScriptError("eliminate keeps ring variables", node.line, node.col)
                keep.append(next(iter(a.terms)).index(1))
            return gb.eliminate(ideal(0), keep)
        if f == "in_radical":
            return gb.radical_membership(poly(0), ideal(1))
        if f == "member":
            return ideal(1).contains(poly(0))
        if f == "singular_check":
            return cl.singular_containment_check(mod(0))
        if f == "colon_capturing":
            return cl.colon_capturing_check(mod(0), [poly(i) for i in range(1, len(args))])
        if f == "gb":
            return GBList(ideal(0))
        if f == "jacobian":
            return gb.Ideal(ring, cl.jacobian_ideal_generators(ring))
        if f == "is_zero":
            return mod(0).is_zero()
        if f == "rank":
            return ring.base.const(mod(0).rank)
        if f == "relations":
            M = mod(0)
            return gb.Submodule(ring, M.rank, M.relations)
        raise P.ScriptError(f"unknown operation {f}", e.line, e.col)


@dataclass
class GBList:
    ideal: gb.Ideal


# -- rendering ---------------------------------------------------------------------

def _poly_text(ring, f):
    return cl._fmt(ring, f)


def _matrix_lines(ring, rows):
    return ["[" + ", ".join(_poly_text(ring, f) for f in row) + "]" for row in rows]


def render(v):
    """Canonical text lines for any script value."""
    if isinstance(v, bool):
        return ["true" if v else "false"]
    if isinstance(v, str):
        return [v]
    if isinstance(v, Polynomial):
        return [format_polynomial(v)]
    if isinstance(v, gb.Ideal):
        return [str(v)]
    if isinstance(v, GBList):
        gens = v.ideal.canonical_generators()
        return [_poly_text(v.ideal.ring, g) for g in gens] or ["0"]
    if isinstance(v, gb.Submodule):
        lines = cl.submodule_lines(v)
        return lines or ["(0)"]
    if isinstance(v, tuple):
        if v and isinstance(v[0], Polynomial):
            return [str(gb.Ideal(QuotientRing(v[0].ring), list(v)))]
        return ["(0)"]
    if isinstance(v, fm.HomResult):
        lines = [f"generators: {len(v.maps)}"]
        ring = v.module.ring
        for phi in v.maps:
            lines.append("[" + ", ".join("[" + ", ".join(_poly_text(ring, f) for f in row) + "]" for row in phi) + "]")
        return lines
    if isinstance(v, fm.FPModule):
        lines = [f"rank: {v.rank}", f"relations: {len(v.relations)}"]
        lines += [cl.format_vector(v.ring, c) for c in v.relations]
        return lines
    if isinstance(v, fm.FreeResolution):
        lines = ["ranks: " + " ".join(map(str, v.ranks))]
        for k in range(1, v.length() + 1):
            lines.append(f"d{k}:")
            lines += ["  " + s for s in _matrix_lines(v.ring, v.matrix(k))]
        return lines
    if isinstance(v, cl.SingularCheck):
        lines = ["true" if v.holds else "false", f"trace: {v.trace}"]
        for g in v.jacobian:
            key = format_polynomial(g)
            n = v.powers.get(key)
            lines.append(f"{key}: " + ("not in radical" if n is None and key in v.failures
                                        else (f"power {n}" if n is not None else "in radical")))
        return lines
    if isinstance(v, list):
        return [" ".join(render(x)) for x in v]
    return [str(v)]


def truth(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, cl.SingularCheck):
        return v.holds
    raise ValueError("assert without '==' needs a boolean expression")


def canonical_pair(ring, expected, actual):
    """Canonical texts (expected, actual); ideal-like expectations are normalized."""
    if isinstance(actual, gb.Ideal) and isinstance(expected, (tuple, Polynomial, gb.Ideal)):
        if isinstance(expected, tuple) and not expected:
            expected = gb.Ideal(ring, [])
        elif not isinstance(expected, gb.Ideal):
            expected = gb.Ideal(ring, list(expected) if isinstance(expected, tuple) else [expected])
        return str(expected), str(actual)
    if isinstance(actual, cl.SingularCheck) and isinstance(expected, bool):
        actual = actual.holds
    exp_text = expected if isinstance(expected, str) else "\n".join(render(expected))
    return exp_text, "\n".join(render(actual))


def run_script(text, options=None):
    """Parse and evaluate; returns the Session (reports, assertions, timings)."""
    return Session(options).run_text(text)


def format_reports(reports):
    return "\n".join(r.to_text() for r in reports)
