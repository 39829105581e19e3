"""Coefficient fields, monomial orders, polynomial rings and their quotients.

Polynomials are stored sparsely as ``{exponent tuple: coefficient}``.  Over
GF(p) coefficients are plain ints in ``range(p)``; over QQ they are
``fractions.Fraction`` values (always in lowest terms).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

DEFAULT_PRIME = 32003


class RingMismatch(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, pos=0):
        super().__init__(message)
        self.pos = pos


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """``characteristic == 0`` means QQ, otherwise GF(p)."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if not (p < 2**31 and _is_prime(p)):
                raise ValueError(f"GF({p}): modulus must be a prime below 2^31")

    @property
    def p(self):
        return self.characteristic

    def __call__(self, value):
        """Coerce an int, Fraction or string into a canonical scalar."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"{value} has no image in GF({p})")
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        value = Fraction(value)
        return value

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic) if self.characteristic else 1 / Fraction(a)

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def signed(self, a):
        """Symmetric representative used for printing GF(p) residues."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


QQ = Field(0)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order described by a nonsingular integer weight matrix.

    ``kind`` is one of ``grevlex``, ``lex``, ``wgrevlex`` (weights required)
    or ``elim`` (``block`` is the set of variable indices to eliminate; they
    are compared first by their degree, then grevlex inside each block).

    For ``wgrevlex`` ties of weighted degree fall back to the reverse
    lexicographic rule: the monomial with the smaller exponent in the last
    variable wins.  With weights (1,2,2), x^2*y beats z^2.
    """

    kind: str = "grevlex"
    weights: tuple | None = None
    block: frozenset | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "wgrevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wgrevlex":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weighted order needs strictly positive weights")

    def matrix(self, n):
        rows = []

        def revlex_rows(idx):
            # reverse-lex tie break on the variables in idx (all but the first)
            for i in reversed(idx[1:]):
                rows.append(tuple(-1 if j == i else 0 for j in range(n)))

        if n == 0:
            return ()
        if self.kind == "lex":
            return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        if self.kind in ("grevlex", "wgrevlex"):
            w = self.weights if self.kind == "wgrevlex" else (1,) * n
            if len(w) != n:
                raise ValueError("weight vector length does not match variable count")
            rows.append(tuple(w))
            revlex_rows(list(range(n)))
            return tuple(rows)
        first = [i for i in range(n) if i in self.block]
        second = [i for i in range(n) if i not in self.block]
        for idx in (first, second):
            if idx:
                rows.append(tuple(1 if j in idx else 0 for j in range(n)))
                revlex_rows(idx)
        return tuple(rows)

    def key_function(self, n):
        rows = self.matrix(n)

        def key(exps):
            return tuple(sum(r * e for r, e in zip(row, exps)) for row in rows)

        return key

    def __str__(self):
        if self.kind == "wgrevlex":
            return "wgrevlex(" + ",".join(map(str, self.weights)) + ")"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    field: Field = Field()
    order: MonomialOrder = GREVLEX
    weights: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for nm in self.names:
            if not _IDENT.match(nm):
                raise ValueError(f"bad variable name {nm!r}")
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        else:
            object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.names):
            raise ValueError("weights length must match the number of variables")
        if any(w <= 0 for w in self.weights):
            raise ValueError("grading weights must be positive")

    @property
    def nvars(self):
        return len(self.names)

    @cached_property
    def sort_key(self):
        return self.order.key_function(self.nvars)

    @cached_property
    def _index(self):
        return {nm: i for i, nm in enumerate(self.names)}

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        i = self._index[name] if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, c=1):
        c = self.field(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text):
        return parse_polynomial(text, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch("polynomial belongs to another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def extend(self, extra, order=None):
        """Ring with extra variables appended (same field and weights 1 for new ones)."""
        names = self.names + tuple(extra)
        return PolyRing(names, self.field, order or GREVLEX, self.weights + (1,) * len(extra))

    def with_order(self, order):
        return PolyRing(self.names, self.field, order, self.weights)

    def header(self):
        s = f"{self.field}[{','.join(self.names)}]"
        return s


class Polynomial:
    """Sparse multivariate polynomial; treat instances as immutable."""

    __slots__ = ("ring", "terms", "__weakref__")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- construction helpers -------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        return self.ring.const(other)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    # -- inspection -------------------------------------------------------
    def sorted_terms(self, order=None):
        key = self.ring.sort_key if order is None else order.key_function(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.sort_key if order is None else order.key_function(self.ring.nvars)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def degree(self, weights=None):
        if not self.terms:
            return -1
        w = weights or self.ring.weights
        return max(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def is_homogeneous(self, weights=None):
        return is_homogeneous(self, weights)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def derivative(self, var):
        i = self.ring._index[var] if isinstance(var, str) else var
        out = {}
        f = self.ring.field
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = f(c * e[i])
                if v:
                    out[tuple(ne)] = v
        return Polynomial(self.ring, out)

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self.scale(self.ring.field.inv(c))

    def map_to(self, ring, positions=None):
        """Re-embed into ``ring``; ``positions[i]`` is the index of variable i there."""
        n = ring.nvars
        positions = positions or list(range(self.ring.nvars))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    ne[positions[i]] = a
            out[tuple(ne)] = ring.field(c) if ring.field != self.ring.field else c
        return Polynomial(ring, {e: c for e, c in out.items() if c})

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def is_homogeneous(p, weights=None):
    """True iff all terms of ``p`` share one weighted degree (0 counts)."""
    if not p.terms:
        return True
    w = weights or p.ring.weights
    if any(x <= 0 for x in w):
        raise ValueError("weights must be positive")
    degs = {sum(a * b for a, b in zip(w, e)) for e in p.terms}
    return len(degs) == 1


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def leading_term(p, order=None):
    return p.leading_term(order)


# -- printing ---------------------------------------------------------------

def _monomial_str(names, exps):
    parts = []
    for nm, a in zip(names, exps):
        if a == 1:
            parts.append(nm)
        elif a > 1:
            parts.append(f"{nm}^{a}")
    return "*".join(parts)


def format_polynomial(p, order=None):
    if not p.terms:
        return "0"
    f = p.ring.field
    out = []
    for e, c in p.sorted_terms(order):
        c = f.signed(c)
        neg = c < 0
        mag = -c if neg else c
        mono = _monomial_str(p.ring.names, e)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def tokenize(text):
    """Yield (kind, value, pos) triples; kind in {'int','name','op','end'}."""
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and pos >= n:
            yield ("end", None, n)
            return
        if m.group(1) is not None:
            yield ("int", int(m.group(1)), m.start(1))
        elif m.group(2) is not None:
            yield ("name", m.group(2), m.start(2))
        elif m.group(3) is not None:
            yield ("op", m.group(3), m.start(3))
        else:
            yield ("end", None, n)
            return
        pos = m.end()


class PolyParser:
    """Recursive descent over ``+ - * ^`` and parentheses.

    ``resolve(name)`` may return a Polynomial (or int) for identifiers that are
    not ring variables; the script evaluator uses it for bound names.
    """

    def __init__(self, tokens, ring, resolve=None):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.resolve = resolve

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolynomialSyntaxError(f"expected {op!r}", t[2])
        return t

    def expr(self):
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", e[2])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return self.ring.const(val)
        if kind == "name":
            if val in self.ring._index:
                return self.ring.var(val)
            if self.resolve is not None:
                v = self.resolve(val, pos)
                if isinstance(v, Polynomial):
                    return v
                return self.ring.const(v)
            raise PolynomialSyntaxError(f"unknown identifier {val}", pos)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "op" and val == "-":
            return -self.power()
        raise PolynomialSyntaxError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_polynomial(text, ring):
    toks = list(tokenize(text))
    parser = PolyParser(toks, ring)
    v = parser.expr()
    t = parser.peek()
    if t[0] != "end":
        raise PolynomialSyntaxError(f"unexpected {t[1]!r}", t[2])
    return v


# -- quotient rings -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientRing:
    """``base / (relations)``.  The reduced Groebner basis is cached on creation."""

    base: PolyRing
    relations: tuple = ()
    allow_zero: bool = False
    _gb: tuple = field(default=(), init=False, repr=False)

    def __post_init__(self):
        rels = tuple(self.base(r) for r in self.relations)
        rels = tuple(r for r in rels if r)
        object.__setattr__(self, "relations", rels)
        from .gbengine import ideal_groebner

        gb = tuple(ideal_groebner(rels, self.base))
        object.__setattr__(self, "_gb", gb)
        if not self.allow_zero and any(g.is_constant() for g in gb):
            raise ValueError("defining ideal is the unit ideal (pass allow_zero=True for the zero ring)")

    @property
    def gb(self):
        return self._gb

    @property
    def field(self):
        return self.base.field

    @property
    def names(self):
        return self.base.names

    @property
    def nvars(self):
        return self.base.nvars

    @property
    def weights(self):
        return self.base.weights

    def is_zero_ring(self):
        return any(g.is_constant() for g in self._gb)

    def __call__(self, value):
        return self.base(value)

    def var(self, name):
        return self.base.var(name)

    def gens(self):
        return self.base.gens()

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.base.one()

    def reduce(self, f):
        from .gbengine import reduce_vector_mod_ring

        return reduce_vector_mod_ring(self, (self.base(f),))[0]

    def is_graded(self):
        return all(is_homogeneous(g) for g in self.relations)

    def header(self):
        s = self.base.header()
        if self.relations:
            s += " / (" + ", ".join(format_polynomial(r) for r in self.relations) + ")"
        if any(w != 1 for w in self.base.weights):
            s += " weights (" + ",".join(map(str, self.base.weights)) + ")"
        if self.base.order != GREVLEX:
            s += f" order {self.base.order}"
        return s

    def __eq__(self, other):
        if not isinstance(other, QuotientRing):
            return NotImplemented
        return self.base == other.base and self._gb == other._gb

    def __hash__(self):
        return hash((self.base, self._gb))

    def __repr__(self):
        return f"QuotientRing({self.header()!r})"

    def quotient(self, extra):
        """R/(extra): same ambient ring, enlarged defining ideal."""
        return QuotientRing(self.base, self.relations + tuple(self.base(f) for f in extra))


def polynomial_ring(names, field=None, order=GREVLEX, weights=None):
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    return PolyRing(tuple(names), field or Field(), order, weights)


def make_ring(names, relations=(), field=None, weights=None, order=GREVLEX):
    """Convenience constructor: ``make_ring("x,y,z", ["x^2*y+z^2"], weights=(1,2,2))``."""
    base = polynomial_ring(names, field, order, weights)
    return QuotientRing(base, tuple(base(r) for r in relations))


def integer_cleared(p):
    """Scale a QQ polynomial to coprime integer coefficients with positive lead."""
    if not p.terms:
        return p
    dens = [Fraction(c).denominator for c in p.terms.values()]
    m = lcm(*dens)
    nums = [int(Fraction(c) * m) for c in p.terms.values()]
    g = 0
    for v in nums:
        g = gcd(g, v)
    _, lc = p.leading_term()
    s = Fraction(m, g) * (1 if lc > 0 else -1)
    return p.scale(s)
