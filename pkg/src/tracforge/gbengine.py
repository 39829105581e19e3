"""Groebner bases for ideals and submodules of free modules over S/J.

Everything over a quotient ring R = S/J is computed in S: a submodule U of
R^b is represented by its generators together with g*e_i for every g in the
reduced Groebner basis of J.  Vectors of R^b are tuples of Polynomials.
"""

from __future__ import annotations

import contextlib
import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from . import _engine
from .polycore import GREVLEX, MonomialOrder, Polynomial, QuotientRing, RingMismatch

# GBs computed while an audit is active: list of (gb, encoder, p)
_AUDIT_STACK = []


@contextlib.contextmanager
def gb_audit_log():
    """Collect every Groebner basis computed inside the block."""
    log = []
    _AUDIT_STACK.append(log)
    try:
        yield log
    finally:
        _AUDIT_STACK.remove(log)


def _record(gb, enc, p):
    for log in _AUDIT_STACK:
        log.append((gb, enc, p))


def audit_groebner_bases(log, seed=0, big=50, fraction=0.10):
    """Re-check S-vector reduction for logged bases.

    Bases with more than ``big`` elements are checked on a ``fraction`` sample
    of their pairs, all others exhaustively.  Returns (bases, pairs, failures).
    """
    rng = random.Random(seed)
    pairs = failures = 0
    for gb, enc, p in log:
        sample = fraction if len(gb) > big else None
        n, bad = _engine.s_pair_audit(gb, enc, p, sample=sample, rng=rng)
        pairs += n
        failures += bad
    return len(log), pairs, failures


@lru_cache(maxsize=None)
def encoder(base, mode="top", order=None):
    order = order or base.order
    return _engine.Encoder(order.matrix(base.nvars), mode)


def _run_groebner(vecs, enc, p, product_criterion=False, stats=None):
    gb = _engine.groebner(vecs, enc, p, product_criterion=product_criterion, stats=stats)
    _record(gb, enc, p)
    return gb


# -- conversion ---------------------------------------------------------------

def to_internal(vec, enc, offset=0):
    out = {}
    for i, f in enumerate(vec):
        for e, c in f.terms.items():
            out[enc.encode(e, i + offset)] = c
    return out


def from_internal(d, enc, base, rank, offset=0):
    coords = [dict() for _ in range(rank)]
    for k, c in d.items():
        e, pos, _ = enc.decode(k)
        coords[pos - offset][e] = c
    return tuple(Polynomial(base, t) for t in coords)


def _lead_pos(d, enc):
    return enc.decode(max(d))[1]


def _ring_basis(base, gb):
    enc = encoder(base)
    basis = _engine.Basis(enc, base.field.p)
    for g in gb:
        basis.add(to_internal((g,), enc))
    return enc, basis


def reduce_polynomial(f, gb, base):
    if not gb or not f.terms:
        return f
    enc, basis = _ring_basis(base, tuple(gb))
    r = _engine.reduce_vector(to_internal((f,), enc), basis)
    return from_internal(r, enc, base, 1)[0]


def ring_reducer(ring):
    """Reducer table for the defining ideal, cached on the ring (write-once)."""
    red = ring.__dict__.get("_reducer")
    if red is None:
        red = _ring_basis(ring.base, ring.gb)
        object.__setattr__(ring, "_reducer", red)
    return red


def ideal_groebner(polys, base):
    """Reduced GB (ascending leading terms) of polynomials in the ambient ring."""
    enc = encoder(base)
    vecs = [to_internal((f,), enc) for f in polys if f.terms]
    gb = _run_groebner(vecs, enc, base.field.p, product_criterion=True)
    return [from_internal(g, enc, base, 1)[0] for g in gb]


def _coerce_vector(ring, v, rank):
    if isinstance(v, (Polynomial, int, str)):
        v = (v,)
    v = tuple(ring.base(x) for x in v)
    if len(v) != rank:
        raise ValueError(f"vector of length {len(v)} in a rank-{rank} module")
    return v


def reduce_vector_mod_ring(ring, v):
    if not ring.gb:
        return tuple(v)
    enc, basis = ring_reducer(ring)
    base = ring.base
    out = []
    for f in v:
        if f.terms:
            r = _engine.reduce_vector(to_internal((f,), enc), basis)
            f = from_internal(r, enc, base, 1)[0]
        out.append(f)
    return tuple(out)


def is_zero_vector(v):
    return all(not f.terms for f in v)


def unit_vector(ring, rank, i):
    return tuple(ring.one() if j == i else ring.zero() for j in range(rank))


def _lift_rows(ring, rank, enc, offset=0):
    rows = []
    for g in ring.gb:
        for i in range(rank):
            rows.append({enc.encode(e, i + offset): c for e, c in g.terms.items()})
    return rows


@dataclass
class GBTrace:
    """``transformation[k]`` expresses GB element k in the input generators
    (modulo the defining ideal); ``pairs_processed`` counts handled S-pairs."""

    transformation: list
    pairs_processed: int


class Submodule:
    """Finitely generated submodule of R^rank; ideals are the rank-1 case."""

    def __init__(self, ring, rank, gens=()):
        if not isinstance(ring, QuotientRing):
            ring = QuotientRing(ring)
        self.ring = ring
        self.rank = rank
        self.gens = tuple(_coerce_vector(ring, g, rank) for g in gens)
        self._gb = None
        self._basis = None

    # -- Groebner data (write-once caches) ---------------------------------
    def _enc(self):
        return encoder(self.ring.base)

    def internal_gb(self):
        if self._gb is None:
            enc = self._enc()
            vecs = [to_internal(g, enc) for g in self.gens]
            vecs += _lift_rows(self.ring, self.rank, enc)
            self._gb = _run_groebner(vecs, enc, self.ring.field.p, product_criterion=self.rank == 1)
        return self._gb

    def basis(self):
        if self._basis is None:
            b = _engine.Basis(self._enc(), self.ring.field.p)
            for g in self.internal_gb():
                b.add(g)
            self._basis = b
        return self._basis

    def groebner_basis(self):
        """Reduced GB of U + J*R^b as vectors (ascending leading terms)."""
        enc = self._enc()
        return [from_internal(g, enc, self.ring.base, self.rank) for g in self.internal_gb()]

    # -- queries ---------------------------------------------------------
    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch("submodules over different rings")
        if other.rank != self.rank:
            raise ValueError("submodules of free modules of different rank")

    def normal_form(self, v):
        v = _coerce_vector(self.ring, v, self.rank)
        enc = self._enc()
        r = _engine.reduce_vector(to_internal(v, enc), self.basis())
        return from_internal(r, enc, self.ring.base, self.rank)

    def contains(self, v):
        v = _coerce_vector(self.ring, v, self.rank)
        enc = self._enc()
        return not _engine.reduce_vector(to_internal(v, enc), self.basis())

    __contains__ = contains

    def contains_all(self, vectors):
        return all(self.contains(v) for v in vectors)

    def contains_module(self, other):
        self._check(other)
        return self.contains_all(other.gens)

    def same_as(self, other):
        self._check(other)
        return self.internal_gb() == other.internal_gb()

    def is_everything(self):
        return all(self.contains(unit_vector(self.ring, self.rank, i)) for i in range(self.rank))

    def is_zero(self):
        """True iff every generator vanishes in R^b."""
        return all(is_zero_vector(reduce_vector_mod_ring(self.ring, g)) for g in self.gens)

    def __add__(self, other):
        self._check(other)
        return type(self)._make(self.ring, self.rank, self.gens + other.gens)

    @classmethod
    def _make(cls, ring, rank, gens):
        return Submodule(ring, rank, gens)

    def reduced_gens(self):
        """Reduced GB generators with the defining-ideal part removed."""
        return [v for v in self.groebner_basis()
                if not is_zero_vector(reduce_vector_mod_ring(self.ring, v))]

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={len(self.gens)})"


class Ideal(Submodule):
    def __init__(self, ring, gens=()):
        if not isinstance(ring, QuotientRing):
            ring = QuotientRing(ring)
        gens = [g[0] if isinstance(g, tuple) else g for g in gens]
        super().__init__(ring, 1, [(g,) for g in gens])

    @classmethod
    def _make(cls, ring, rank, gens):
        return Ideal(ring, [g[0] for g in gens])

    @classmethod
    def from_submodule(cls, U):
        if U.rank != 1:
            raise ValueError("not an ideal")
        return cls(U.ring, [g[0] for g in U.gens])

    @property
    def polys(self):
        return [g[0] for g in self.gens]

    def contains(self, f):
        if isinstance(f, tuple):
            return super().contains(f)
        return super().contains((self.ring.base(f),))

    __contains__ = contains

    def canonical_generators(self):
        """Reduced GB of I + J minus the elements of J, descending by leading term."""
        gens = [v[0] for v in self.reduced_gens()]
        key = self.ring.base.sort_key
        gens.sort(key=lambda f: key(f.leading_term()[0]), reverse=True)
        return gens

    def is_unit(self):
        return self.contains(self.ring.one())

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, [f * g for f in self.polys for g in other.polys])
        g = self.ring.base(other)
        return Ideal(self.ring, [f * g for f in self.polys])

    def __str__(self):
        from .polycore import format_polynomial, integer_cleared

        gens = self.canonical_generators()
        if not gens:
            return "(0)"
        if any(g.is_constant() for g in gens):
            return "(1)"
        if self.ring.field.p == 0:
            gens = [integer_cleared(g) for g in gens]
        return "(" + ", ".join(format_polynomial(g) for g in gens) + ")"

    def __repr__(self):
        return f"Ideal{str(self)}"


def as_ideal(ring, gens):
    if isinstance(gens, Ideal):
        return gens
    if isinstance(gens, Submodule):
        return Ideal.from_submodule(gens)
    if isinstance(gens, (Polynomial, str, int)):
        gens = [gens]
    return Ideal(ring, [ring.base(g) for g in gens])


# -- primitive operations -----------------------------------------------------

def buchberger(U, order=None, trace=False):
    """Reduced GB of U (plus the defining-ideal lift) and optionally a GBTrace."""
    ring, rank = U.ring, U.rank
    base = ring.base
    p = ring.field.p
    stats = _engine.GBStats()
    if not trace:
        enc = encoder(base, "top", order)
        vecs = [to_internal(g, enc) for g in U.gens] + _lift_rows(ring, rank, enc)
        gb = _run_groebner(vecs, enc, p, product_criterion=rank == 1, stats=stats)
        return [from_internal(g, enc, base, rank) for g in gb], GBTrace([], stats.pairs_processed)
    m = len(U.gens)
    enc = encoder(base, rank, order)
    vecs = []
    for j, g in enumerate(U.gens):
        d = to_internal(g, enc)
        d[enc.encode((0,) * base.nvars, rank + j)] = base.field(1)
        vecs.append(d)
    vecs += _lift_rows(ring, rank, enc)
    full = _run_groebner(vecs, enc, p, stats=stats)
    gb, rows = [], []
    for g in full:
        if _lead_pos(g, enc) < rank:
            head = {k: c for k, c in g.items() if enc.decode(k)[1] < rank}
            tail = {k: c for k, c in g.items() if enc.decode(k)[1] >= rank}
            gb.append(from_internal(head, enc, base, rank))
            rows.append(from_internal(tail, enc, base, m, offset=rank))
    return gb, GBTrace(rows, stats.pairs_processed)


def normal_form(v, U):
    return U.normal_form(v)


def membership(v, U):
    return U.contains(v)


def _syzygy_vectors(ring, gens, rank):
    """Generators of {a in R^m : sum a_j gens_j = 0}, coordinates reduced mod J."""
    m = len(gens)
    base = ring.base
    if m == 0:
        return []
    enc = encoder(base, rank)
    one = base.field(1)
    zero_e = (0,) * base.nvars
    vecs = []
    for j, g in enumerate(gens):
        d = to_internal(g, enc)
        d[enc.encode(zero_e, rank + j)] = one
        vecs.append(d)
    vecs += _lift_rows(ring, rank, enc)
    gb = _run_groebner(vecs, enc, ring.field.p)
    out = []
    seen = set()
    for g in gb:
        if _lead_pos(g, enc) >= rank:
            v = reduce_vector_mod_ring(ring, from_internal(g, enc, base, m, offset=rank))
            if not is_zero_vector(v):
                key = tuple(frozenset(f.terms.items()) for f in v)
                if key not in seen:
                    seen.add(key)
                    out.append(v)
    return out


def syzygies(U):
    """Syzygy module of U's generator list, as a submodule of R^(#gens)."""
    return Submodule(U.ring, len(U.gens), _syzygy_vectors(U.ring, U.gens, U.rank))


def preimage(ring, columns, target, rank):
    """Generators of {a : sum a_j columns_j in target}; columns/target in R^rank."""
    m = len(columns)
    if m == 0:
        return []
    syz = _syzygy_vectors(ring, list(columns) + list(target), rank)
    out = []
    seen = set()
    for s in syz:
        v = s[:m]
        if not is_zero_vector(v):
            key = tuple(frozenset(f.terms.items()) for f in v)
            if key not in seen:
                seen.add(key)
                out.append(v)
    return out


def kernel_of_matrix(A, ring, ncols=None):
    """Kernel of R^a -> R^c given by the c x a matrix A (list of rows)."""
    rows = [[ring.base(x) for x in row] for row in A]
    c = len(rows)
    a = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    cols = [tuple(rows[i][j] for i in range(c)) for j in range(a)]
    if c == 0:
        return Submodule(ring, a, [unit_vector(ring, a, j) for j in range(a)])
    return Submodule(ring, a, _syzygy_vectors(ring, cols, c))


def combine(ring, coeffs, vectors, rank):
    acc = [ring.zero() for _ in range(rank)]
    for a, v in zip(coeffs, vectors):
        if not a.terms:
            continue
        for i in range(rank):
            if v[i].terms:
                acc[i] = acc[i] + a * v[i]
    return tuple(acc)


def intersect(U, V):
    """U ∩ V from the syzygies of the concatenated generator list."""
    U._check(V)
    ring, rank = U.ring, U.rank
    k = len(U.gens)
    syz = _syzygy_vectors(ring, list(U.gens) + list(V.gens), rank)
    gens = []
    for s in syz:
        v = reduce_vector_mod_ring(ring, combine(ring, s[:k], U.gens, rank))
        if not is_zero_vector(v):
            gens.append(v)
    return U._make(ring, rank, gens)


def intersect_all(mods):
    mods = list(mods)
    acc = mods[0]
    for m in mods[1:]:
        acc = intersect(acc, m)
    return acc


def colon(U, v):
    """(U : v) = {r in R : r v in U}."""
    v = _coerce_vector(U.ring, v, U.rank)
    syz = _syzygy_vectors(U.ring, [v] + list(U.gens), U.rank)
    return Ideal(U.ring, [s[0] for s in syz if s[0].terms])


def module_colon(U, V):
    """(U : V) = {r : r V ⊆ U}."""
    if not V.gens:
        return Ideal(U.ring, [U.ring.one()])
    return intersect_all([colon(U, v) for v in V.gens])


def annihilator(rank, W, ring=None):
    """Ann of R^rank / W as the intersection of the colons (W : e_i)."""
    if isinstance(W, Submodule):
        ring = W.ring
    else:
        W = Submodule(ring, rank, W)
    if rank == 0:
        return Ideal(ring, [ring.one()])
    return intersect_all([colon(W, unit_vector(ring, rank, i)) for i in range(rank)])


def eliminate(I, keep):
    """I ∩ k[keep], computed with a block elimination order."""
    ring = I.ring
    base = ring.base
    keep_idx = {base.names.index(v) if isinstance(v, str) else v for v in keep}
    drop = frozenset(i for i in range(base.nvars) if i not in keep_idx)
    if not drop:
        return Ideal(ring, I.polys)
    order = MonomialOrder("elim", block=drop)
    enc = encoder(base, "top", order)
    vecs = [to_internal((f,), enc) for f in I.polys] + _lift_rows(ring, 1, enc)
    gb = _run_groebner(vecs, enc, ring.field.p, product_criterion=True)
    out = []
    for g in gb:
        e, _, _ = enc.decode(max(g))
        if not any(e[i] for i in drop):
            out.append(from_internal(g, enc, base, 1)[0])
    return Ideal(ring, out)


def radical_membership(f, I):
    """f ∈ √(I + J) via 1 ∈ (I + J, 1 - t f) in S[t]."""
    ring = I.ring
    base = ring.base
    f = base(f)
    tname = "_t"
    while tname in base.names:
        tname += "_"
    ext = base.extend([tname])
    t = ext.var(tname)
    gens = [g.map_to(ext) for g in list(I.polys) + list(ring.gb)]
    gens.append(ext.one() - t * f.map_to(ext))
    gb = ideal_groebner(gens, ext)
    return any(g.is_constant() for g in gb)


def leading_monomials(I):
    enc = encoder(I.ring.base)
    return [enc.decode(max(g))[0] for g in I.internal_gb()]


def krull_dimension(I):
    """Dimension of R/I from maximal independent sets of the leading-term ideal."""
    lms = leading_monomials(I)
    n = I.ring.nvars
    if any(not any(e) for e in lms):
        raise ValueError("unit ideal has no dimension")
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lms]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def dimension_is_zero(I):
    return krull_dimension(I) == 0


def vector_degree(v, weights, shifts=None):
    """Common shifted degree of a homogeneous vector, None if inhomogeneous or zero."""
    deg = None
    for i, f in enumerate(v):
        if not f.terms:
            continue
        s = shifts[i] if shifts else 0
        for e in f.terms:
            d = sum(a * b for a, b in zip(weights, e)) + s
            if deg is None:
                deg = d
            elif d != deg:
                return None
    return deg


def minimal_generators(ring, vectors, rank, shifts=None, base=()):
    """Drop redundant generators of span(vectors) + span(base).

    For homogeneous input (with the given shifts) this yields a minimal
    generating set modulo span(base); otherwise an irredundant greedy subset.
    """
    vectors = [v for v in vectors if not is_zero_vector(v)]
    if not vectors:
        return []
    degs = [vector_degree(v, ring.weights, shifts) for v in vectors]
    graded = all(d is not None for d in degs)
    enc = encoder(ring.base)
    if graded:
        order = sorted(range(len(vectors)), key=lambda i: (degs[i], max(to_internal(vectors[i], enc))))
    else:
        order = sorted(range(len(vectors)), key=lambda i: max(to_internal(vectors[i], enc)))
    kept = []
    span = Submodule(ring, rank, list(base))
    for i in order:
        v = vectors[i]
        if span.contains(v):
            continue
        kept.append(v)
        span = Submodule(ring, rank, list(base) + kept)
    return kept
