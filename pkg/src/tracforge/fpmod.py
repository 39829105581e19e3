"""Finitely presented modules over quotient rings.

An FPModule is coker(R^r -> R^b): ``relations`` are the r columns, each a
vector of length b.  Matrices elsewhere are lists of rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gbengine import (
    Submodule,
    _syzygy_vectors,
    combine,
    is_zero_vector,
    minimal_generators,
    preimage,
    reduce_vector_mod_ring,
    unit_vector,
    vector_degree,
)
from .polycore import QuotientRing, RingMismatch


def columns_of(A, nrows=None):
    nrows = len(A) if nrows is None else nrows
    ncols = len(A[0]) if A else 0
    return [tuple(A[i][j] for i in range(nrows)) for j in range(ncols)]


def matrix_from_columns(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def mat_vec(ring, A, v):
    """A (list of rows) times vector v."""
    out = []
    for row in A:
        acc = ring.zero()
        for a, x in zip(row, v):
            if a.terms and x.terms:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def mat_mul(ring, A, B):
    cols = columns_of(B, len(A[0]) if A else 0)
    return matrix_from_columns([mat_vec(ring, A, c) for c in cols], len(A))


def infer_shifts(ring, rank, relations):
    """Generator degrees making every relation column homogeneous, or None.

    Unconstrained generators get degree 0; a connected component is pinned
    so its smallest generator degree is 0.
    """
    w = ring.weights
    if not all(f.is_homogeneous(w) for f in ring.relations):
        return None
    # edges: shift[i] - shift[j] = deg(c_j) - deg(c_i)
    adj = [[] for _ in range(rank)]
    for col in relations:
        nz = [(i, f) for i, f in enumerate(col) if f.terms]
        for i, f in nz:
            if not f.is_homogeneous(w):
                return None
        for (i, f), (j, g) in zip(nz, nz[1:]):
            d = g.degree(w) - f.degree(w)
            adj[i].append((j, -d))
            adj[j].append((i, d))
    shifts = [None] * rank
    for start in range(rank):
        if shifts[start] is not None:
            continue
        shifts[start] = 0
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j, d in adj[i]:
                want = shifts[i] + d
                if shifts[j] is None:
                    shifts[j] = want
                    comp.append(j)
                    stack.append(j)
                elif shifts[j] != want:
                    return None
        low = min(shifts[i] for i in comp)
        for i in comp:
            shifts[i] -= low
    return tuple(shifts)


class FPModule:
    """coker of the relation columns in R^rank, with optional generator degrees."""

    def __init__(self, ring, rank, relations=(), shifts=None, check_grading=True):
        if not isinstance(ring, QuotientRing):
            ring = QuotientRing(ring)
        self.ring = ring
        self.rank = rank
        rels = []
        for c in relations:
            c = reduce_vector_mod_ring(ring, tuple(ring.base(x) for x in c))
            if len(c) != rank:
                raise ValueError("relation column has the wrong length")
            if not is_zero_vector(c):
                rels.append(c)
        self.relations = tuple(rels)
        if shifts is None and check_grading:
            shifts = infer_shifts(ring, rank, self.relations)
        self.shifts = tuple(shifts) if shifts is not None else None
        self._rel = None

    @property
    def graded(self):
        return self.shifts is not None

    def relation_module(self):
        if self._rel is None:
            self._rel = Submodule(self.ring, self.rank, self.relations)
        return self._rel

    def matrix(self):
        return matrix_from_columns(self.relations, self.rank)

    def is_zero(self):
        rel = self.relation_module()
        return all(rel.contains(unit_vector(self.ring, self.rank, i)) for i in range(self.rank))

    def is_free(self):
        return not self.relations

    def __repr__(self):
        return f"FPModule(rank={self.rank}, relations={len(self.relations)})"


def free_module(ring, rank, shifts=None):
    return FPModule(ring, rank, (), shifts=shifts if shifts is not None else (0,) * rank)


def from_cokernel(A, ring, nrows=None):
    """coker of the matrix A (list of rows); ``nrows`` is needed for 0-column input."""
    if not isinstance(ring, QuotientRing):
        ring = QuotientRing(ring)
    rows = [[ring.base(x) for x in row] for row in A]
    b = len(rows) if nrows is None else nrows
    return FPModule(ring, b, columns_of(rows, b) if rows else ())


def subquotient(ring, gens, rels, rank, gen_shifts=None):
    """Presentation of (span(gens) + span(rels)) / span(rels) in R^rank."""
    gens = list(gens)
    relations = preimage(ring, gens, rels, rank) if gens else []
    M = FPModule(ring, len(gens), relations, shifts=gen_shifts, check_grading=gen_shifts is None)
    if M.graded:
        M = FPModule(ring, M.rank, minimal_generators(ring, M.relations, M.rank, M.shifts), shifts=M.shifts)
    return M


def from_submodule(gens, ring=None, ambient_shifts=None):
    """Presentation of the submodule of R^b spanned by ``gens``.

    Accepts a Submodule or a list of vectors (then ``ring`` is required).
    The result remembers its generators in ``embedding``.
    """
    if isinstance(gens, Submodule):
        ring, rank, vecs = gens.ring, gens.rank, list(gens.gens)
    else:
        if not isinstance(ring, QuotientRing):
            ring = QuotientRing(ring)
        vecs = [tuple(ring.base(x) for x in v) for v in gens]
        rank = len(vecs[0]) if vecs else 0
    degs = [vector_degree(v, ring.weights, ambient_shifts) for v in vecs]
    shifts = tuple(degs) if ring.is_graded() and all(d is not None for d in degs) else None
    syz = _syzygy_vectors(ring, vecs, rank)
    if shifts is not None:
        syz = minimal_generators(ring, syz, len(vecs), shifts)
    M = FPModule(ring, len(vecs), syz, shifts=shifts, check_grading=shifts is None)
    M.embedding = (tuple(vecs), rank)
    return M


@dataclass
class ModuleMap:
    """A homomorphism given by a b_target x b_source matrix (list of rows)."""

    source: FPModule
    target: FPModule
    matrix: list

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch("map between modules over different rings")
        ring = self.source.ring
        self.matrix = [[ring.base(x) for x in row] for row in self.matrix]
        if len(self.matrix) != self.target.rank or any(len(r) != self.source.rank for r in self.matrix):
            raise ValueError("matrix shape does not match source/target ranks")
        rel = self.target.relation_module()
        for c in self.source.relations:
            if not rel.contains(mat_vec(ring, self.matrix, c)):
                raise ValueError("matrix does not carry source relations into target relations")

    def columns(self):
        return columns_of(self.matrix, self.target.rank)

    def apply(self, v):
        return mat_vec(self.source.ring, self.matrix, v)


def kernel(f):
    ring = f.source.ring
    if f.target.rank:
        gens = preimage(ring, f.columns(), f.target.relations, f.target.rank)
    else:
        gens = [unit_vector(ring, f.source.rank, i) for i in range(f.source.rank)]
    return subquotient(ring, gens, f.source.relations, f.source.rank)


def image(f):
    return subquotient(f.source.ring, f.columns(), f.target.relations, f.target.rank)


def cokernel(f):
    return FPModule(f.source.ring, f.target.rank, list(f.columns()) + list(f.target.relations))


def direct_sum(M, N):
    if M.ring != N.ring:
        raise RingMismatch("direct sum of modules over different rings")
    z = M.ring.zero()
    rels = [c + (z,) * N.rank for c in M.relations] + [(z,) * M.rank + c for c in N.relations]
    shifts = M.shifts + N.shifts if M.graded and N.graded else None
    return FPModule(M.ring, M.rank + N.rank, rels, shifts=shifts, check_grading=shifts is None)


def tensor(M, N, prune=True):
    """M ⊗ N; basis e_i ⊗ f_j sits at index i * N.rank + j."""
    if M.ring != N.ring:
        raise RingMismatch("tensor of modules over different rings")
    ring = M.ring
    bm, bn = M.rank, N.rank
    z = ring.zero()
    rels = []
    for j in range(bn):
        for a in M.relations:
            v = [z] * (bm * bn)
            for i in range(bm):
                v[i * bn + j] = a[i]
            rels.append(tuple(v))
    for i in range(bm):
        for c in N.relations:
            v = [z] * (bm * bn)
            for j in range(bn):
                v[i * bn + j] = c[j]
            rels.append(tuple(v))
    shifts = None
    if M.graded and N.graded:
        shifts = tuple(M.shifts[i] + N.shifts[j] for i in range(bm) for j in range(bn))
    T = FPModule(ring, bm * bn, rels, shifts=shifts, check_grading=shifts is None)
    if prune and T.graded:
        T = FPModule(ring, T.rank, minimal_generators(ring, T.relations, T.rank, T.shifts), shifts=T.shifts)
    return T


@dataclass
class HomResult:
    """Hom(M, N) as a module plus, for each generator, its b_N x b_M matrix."""

    module: FPModule
    maps: list

    def __iter__(self):
        return iter((self.module, self.maps))


def _hom_vector_columns(ring, M, bN):
    """Columns of Φ -> (Φ a)_a over all relations a of M, Φ vectorized column-major."""
    r = len(M.relations)
    bM = M.rank
    z = ring.zero()
    cols = []
    for j in range(bM):
        for i in range(bN):
            v = [z] * (bN * r)
            for k, a in enumerate(M.relations):
                v[k * bN + i] = a[j]
            cols.append(tuple(v))
    return cols


def _blocks(ring, vectors, bN, copies):
    z = ring.zero()
    out = []
    for k in range(copies):
        for c in vectors:
            v = [z] * (bN * copies)
            v[k * bN:(k + 1) * bN] = c
            out.append(tuple(v))
    return out


def _unvec(v, bN, bM):
    return [[v[j * bN + i] for j in range(bM)] for i in range(bN)]


def _hom_candidates(ring, M, N):
    """Vectorized Φ (b_N x b_M) with Φ(rel M) ⊆ rel N, plus the zero-map block."""
    bN, bM = N.rank, M.rank
    r = len(M.relations)
    if r == 0 or bN == 0:
        gens = [unit_vector(ring, bN * bM, k) for k in range(bN * bM)]
    else:
        cols = _hom_vector_columns(ring, M, bN)
        gens = preimage(ring, cols, _blocks(ring, N.relations, bN, r), bN * r)
    zero_maps = _blocks(ring, N.relations, bN, bM)
    return gens, zero_maps


def hom(M, N):
    """Hom_R(M, N) with evaluation matrices for each generator."""
    if M.ring != N.ring:
        raise RingMismatch("Hom between modules over different rings")
    ring = M.ring
    bN, bM = N.rank, M.rank
    gens, zero_maps = _hom_candidates(ring, M, N)
    shifts = None
    if M.graded and N.graded:
        vec_shifts = [N.shifts[i] - M.shifts[j] for j in range(bM) for i in range(bN)]
        degs = [vector_degree(g, ring.weights, vec_shifts) for g in gens]
        if all(d is not None for d in degs):
            shifts = vec_shifts
    if shifts is not None:
        gens = minimal_generators(ring, gens, bN * bM, shifts, base=zero_maps)
        gen_shifts = tuple(vector_degree(g, ring.weights, shifts) for g in gens)
    else:
        gens = minimal_generators(ring, gens, bN * bM, None, base=zero_maps)
        gen_shifts = None
    H = subquotient(ring, gens, zero_maps, bN * bM, gen_shifts)
    return HomResult(H, [_unvec(g, bN, bM) for g in gens])


def hom_to_ring(M):
    """Hom(M, R) through the kernel of the transposed presentation: rows φ with φ A = 0."""
    ring = M.ring
    if not M.relations:
        rows = [unit_vector(ring, M.rank, i) for i in range(M.rank)]
    else:
        rows = _syzygy_vectors(ring, [tuple(c[j] for c in M.relations) for j in range(M.rank)], len(M.relations))
    shifts = tuple(-s for s in M.shifts) if M.graded else None
    rows = minimal_generators(ring, rows, M.rank, shifts)
    return rows


def ext1(M, N):
    """Ext^1(M, N) from the prefix F2 -> F1 -> F0 of a free resolution of M."""
    if M.ring != N.ring:
        raise RingMismatch("Ext between modules over different rings")
    ring = M.ring
    b0, bN = M.rank, N.rank
    A1 = M.relations
    b1 = len(A1)
    if b1 == 0 or bN == 0:
        return FPModule(ring, 0, ())
    A2 = _syzygy_vectors(ring, list(A1), b0)
    syz_module = FPModule(ring, b1, A2, check_grading=False)
    cycles, zero_maps = _hom_candidates(ring, syz_module, N)
    # boundaries: Φ ↦ Φ A1 for Φ = E_{i j}, i.e. row j of A1 placed in row i
    z = ring.zero()
    boundaries = []
    for j in range(b0):
        for i in range(bN):
            v = [z] * (bN * b1)
            for k, a in enumerate(A1):
                v[k * bN + i] = a[j]
            boundaries.append(tuple(v))
    return minimalize(subquotient(ring, cycles, boundaries + zero_maps, bN * b1))


def _unit_entry(ring, M):
    for k, col in enumerate(M.relations):
        for i, f in enumerate(col):
            if f.terms and f.is_constant():
                return i, k, f.constant_term()
    return None


def minimalize(M):
    """Eliminate unit entries, then drop redundant relations.

    For graded input the result is a minimal presentation; ungraded input is
    simplified the same way but minimality is not claimed.
    """
    ring = M.ring
    field = ring.field
    rank = M.rank
    rels = [tuple(c) for c in M.relations]
    shifts = list(M.shifts) if M.graded else None
    while True:
        cur = FPModule(ring, rank, rels, shifts=shifts, check_grading=False)
        hit = _unit_entry(ring, cur)
        if hit is None:
            break
        i, k, c = hit
        pivot = cur.relations[k]
        inv = field.inv(c)
        new = []
        for kk, col in enumerate(cur.relations):
            if kk == k:
                continue
            if col[i].terms:
                factor = col[i].scale(inv)
                col = tuple(a - factor * b for a, b in zip(col, pivot))
            new.append(col[:i] + col[i + 1:])
        rels = new
        rank -= 1
        if shifts is not None:
            shifts = shifts[:i] + shifts[i + 1:]
    cur = FPModule(ring, rank, rels, shifts=shifts, check_grading=shifts is None)
    kept = minimal_generators(ring, cur.relations, rank, cur.shifts)
    return FPModule(ring, rank, kept, shifts=cur.shifts, check_grading=False)


@dataclass
class FreeResolution:
    """Differentials d_1, d_2, ...; d_k is a list of columns of length ranks[k-1]."""

    ring: QuotientRing
    ranks: list
    differentials: list
    shifts: list
    minimal: bool

    def matrix(self, k):
        return matrix_from_columns(self.differentials[k - 1], self.ranks[k - 1])

    def length(self):
        return len(self.differentials)


def free_resolution(M, length):
    """Resolution prefix F_0 <- F_1 <- ... <- F_length (stops early at a zero syzygy)."""
    ring = M.ring
    if M.graded:
        M = minimalize(M)
    ranks = [M.rank]
    shifts = [M.shifts]
    diffs = []
    cols = list(M.relations)
    cur_shifts = M.shifts
    k = 0
    while cols and k < length:
        diffs.append(cols)
        ranks.append(len(cols))
        col_shifts = None
        if cur_shifts is not None:
            degs = [vector_degree(c, ring.weights, cur_shifts) for c in cols]
            col_shifts = tuple(degs) if all(d is not None for d in degs) else None
        shifts.append(col_shifts)
        k += 1
        if k >= length:
            break
        syz = _syzygy_vectors(ring, cols, ranks[-2])
        syz = minimal_generators(ring, syz, len(cols), col_shifts)
        cols = syz
        cur_shifts = col_shifts
    return FreeResolution(ring, ranks, diffs, shifts, minimal=M.graded)


def residue_field(ring):
    return FPModule(ring, 1, [(v,) for v in ring.gens()], shifts=(0,))


def syzygy_of_residue_field(ring, n):
    """Image of the n-th differential of a minimal resolution of k."""
    if n < 1:
        raise ValueError("n must be at least 1")
    res = free_resolution(residue_field(ring), n)
    if res.length() < n:
        return FPModule(ring, 0, ())
    return from_submodule(res.differentials[n - 1], ring, ambient_shifts=res.shifts[n - 1])


def base_change(M, ring):
    """M ⊗ R' for a quotient R' of M's ring by extra relations in the same ambient ring."""
    if ring.base != M.ring.base:
        raise RingMismatch("base change needs the same ambient polynomial ring")
    return FPModule(ring, M.rank, M.relations, shifts=M.shifts, check_grading=M.shifts is None)


def evaluate_map(phi, v):
    """Apply a b_N x b_M evaluation matrix to a vector of R^{b_M}."""
    ring = v[0].ring if v else None
    out = []
    for row in phi:
        acc = None
        for a, x in zip(row, v):
            t = a * x
            acc = t if acc is None else acc + t
        out.append(acc if acc is not None else ring.zero())
    return tuple(out)


__all__ = [
    "FPModule",
    "FreeResolution",
    "HomResult",
    "ModuleMap",
    "base_change",
    "cokernel",
    "columns_of",
    "combine",
    "direct_sum",
    "evaluate_map",
    "ext1",
    "free_module",
    "free_resolution",
    "from_cokernel",
    "from_submodule",
    "hom",
    "hom_to_ring",
    "image",
    "infer_shifts",
    "kernel",
    "mat_mul",
    "mat_vec",
    "matrix_from_columns",
    "minimalize",
    "residue_field",
    "subquotient",
    "syzygy_of_residue_field",
    "tensor",
]
