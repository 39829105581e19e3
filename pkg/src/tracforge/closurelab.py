"""Trace ideals, module closures and the diagnostics built on them."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

from .fpmod import FPModule, direct_sum, free_module, hom, hom_to_ring, tensor
from .gbengine import (
    Ideal,
    Submodule,
    annihilator,
    as_ideal,
    intersect,
    intersect_all,
    module_colon,
    preimage,
    radical_membership,
    colon,
    krull_dimension,
    unit_vector,
)
from .polycore import format_polynomial, integer_cleared


def _fmt(ring, f):
    if ring.field.p == 0:
        f = integer_cleared(f)
    return format_polynomial(f)


def format_vector(ring, v):
    return "(" + ", ".join(_fmt(ring, f) for f in v) + ")"


def submodule_lines(U):
    """Canonical generator strings of a submodule: its reduced GB, descending."""
    return [format_vector(U.ring, v) for v in reversed(U.reduced_gens())]


@dataclass
class ClosureReport:
    """Result record; ``to_text`` is byte-stable for diffing."""

    ring: str
    op: str
    path: str
    result: list
    seconds: float = field(default=0.0, compare=False)

    @classmethod
    def for_ideal(cls, I, op, path, seconds=0.0):
        gens = I.canonical_generators()
        if not gens:
            lines = ["(0)"]
        elif any(g.is_constant() for g in gens):
            lines = ["(1)"]
        else:
            lines = [str(I)]
        return cls(I.ring.header(), op, path, lines, seconds)

    @classmethod
    def for_value(cls, ring, op, path, lines, seconds=0.0):
        return cls(ring.header(), op, path, list(lines), seconds)

    def value(self):
        return "\n".join(self.result)

    def to_text(self):
        out = [f"ring: {self.ring}", f"op: {self.op}", f"path: {self.path}", "result:"]
        out += ["  " + line for line in self.result]
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.rstrip("\n").split("\n")
        head = {}
        i = 0
        while i < len(lines) and lines[i] != "result:":
            k, _, v = lines[i].partition(": ")
            head[k] = v
            i += 1
        if i == len(lines) or set(head) != {"ring", "op", "path"}:
            raise ValueError("malformed report block")
        result = [ln[2:] for ln in lines[i + 1:]]
        return cls(head["ring"], head["op"], head["path"], result)


# -- traces --------------------------------------------------------------------

def hom_maps_to_ring(B):
    """Generators of Hom(B, R) as rows (the fast transposed-presentation path)."""
    return hom_to_ring(B)


def trace_ideal(B):
    """tr_B(R): all entries of the generators of Hom(B, R)."""
    rows = hom_to_ring(B)
    return Ideal(B.ring, [f for row in rows for f in row if f.terms])


test_ideal = trace_ideal


def trace_module(B, A):
    """Submodule of R^{b_A} (relations of A included) spanned by all φ(B), φ: B -> A."""
    H = hom(B, A)
    cols = []
    for phi in H.maps:
        for j in range(B.rank):
            cols.append(tuple(phi[i][j] for i in range(A.rank)))
    return Submodule(A.ring, A.rank, cols + list(A.relations))


def generates(B, D):
    """True iff a direct sum of copies of B surjects onto D."""
    T = trace_module(B, D)
    return all(T.contains(unit_vector(D.ring, D.rank, i)) for i in range(D.rank))


def has_free_summand(B):
    return trace_ideal(B).is_unit()


def family_test_ideal(modules, ring=None):
    """Intersection of the trace ideals of a finite family.

    The empty family gives the unit ideal of ``ring`` with a warning.
    """
    modules = list(modules)
    if not modules:
        if ring is None:
            raise ValueError("empty family needs an explicit ring")
        warnings.warn("empty family: returning the unit ideal", stacklevel=2)
        return Ideal(ring, [ring.one()])
    return intersect_all([trace_ideal(B) for B in modules])


# -- closures -------------------------------------------------------------------

def closure_of_ideal(I, B):
    """(IB :_R B) = annihilator of B / IB."""
    ring = B.ring
    I = as_ideal(ring, I)
    W = list(B.relations)
    for f in I.polys:
        for i in range(B.rank):
            W.append(tuple(f if k == i else ring.zero() for k in range(B.rank)))
    return annihilator(B.rank, Submodule(ring, B.rank, W))


def closure_of_submodule(N, M, B):
    """N^{cl_B}_M for N given by generators in M's ambient free module.

    u is in the closure iff b_i ⊗ u vanishes in B ⊗ (M/N) for every
    generator b_i of B; the answer contains N and the relations of M.
    """
    ring = M.ring
    m = M.rank
    Ngens = list(N.gens) if isinstance(N, Submodule) else [tuple(v) for v in N]
    Q = FPModule(ring, m, list(M.relations) + Ngens, check_grading=False)
    T = tensor(B, Q, prune=False)
    base = list(M.relations) + Ngens
    if B.rank == 0:
        return Submodule(ring, m, [unit_vector(ring, m, j) for j in range(m)])
    parts = []
    z = ring.zero()
    for i in range(B.rank):
        cols = []
        for j in range(m):
            v = [z] * (B.rank * m)
            v[i * m + j] = ring.one()
            cols.append(tuple(v))
        gens = preimage(ring, cols, T.relations, B.rank * m)
        parts.append(Submodule(ring, m, gens + base))
    return intersect_all(parts) + Submodule(ring, m, base)


def colon_ideal(I, J):
    return module_colon(I, J)


# -- diagnostics --------------------------------------------------------------

def maximal_ideal(ring):
    return Ideal(ring, ring.gens())


def socle(ring):
    """(0 :_R m)."""
    return module_colon(Ideal(ring, []), maximal_ideal(ring))


def is_m_primary(J):
    ring = J.ring
    if J.is_unit():
        raise ValueError("the unit ideal is not m-primary")
    if not maximal_ideal(ring).contains_module(J):
        return False
    return all(radical_membership(v, J) for v in ring.gens())


@dataclass
class SingularCheck:
    """Outcome of checking Jacobian generators against √(tr_B(R) + (f)).

    ``powers`` maps each Jacobian generator (as text) to the least n ≤ bound
    with g^n in the ideal, or None when radical membership fails.
    """

    holds: bool
    trace: Ideal
    jacobian: list
    powers: dict
    failures: list


def jacobian_ideal_generators(ring):
    rels = ring.relations
    if not rels:
        return []
    if len(rels) != 1:
        raise NotImplementedError("singular-locus check needs a hypersurface ring")
    f = rels[0]
    return [f] + [f.derivative(i) for i in range(ring.nvars)]


def singular_containment_check(B, power_bound=8):
    ring = B.ring
    jac = jacobian_ideal_generators(ring)
    tau = trace_ideal(B)
    powers = {}
    failures = []
    for g in jac:
        key = format_polynomial(g)
        if not g.terms:
            powers[key] = 1
            continue
        if not radical_membership(g, tau):
            powers[key] = None
            failures.append(key)
            continue
        n, h = 1, g
        while n <= power_bound and not tau.contains(h):
            n += 1
            h = h * g
        powers[key] = n if n <= power_bound else None
    return SingularCheck(not failures, tau, jac, powers, failures)


def colon_capturing_check(B, sop):
    """(x_1..x_k) : x_{k+1} ⊆ (x_1..x_k)^{cl_B} for each proper prefix."""
    ring = B.ring
    sop = [ring.base(s) for s in sop]
    for k in range(1, len(sop)):
        I = Ideal(ring, sop[:k])
        c = colon(I, (sop[k],))
        cl = closure_of_ideal(I, B)
        if not cl.contains_module(c):
            return False
    return True


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


__all__ = [
    "ClosureReport",
    "SingularCheck",
    "closure_of_ideal",
    "closure_of_submodule",
    "colon_capturing_check",
    "direct_sum",
    "family_test_ideal",
    "format_vector",
    "free_module",
    "generates",
    "has_free_summand",
    "hom_maps_to_ring",
    "intersect",
    "is_m_primary",
    "jacobian_ideal_generators",
    "krull_dimension",
    "maximal_ideal",
    "singular_containment_check",
    "socle",
    "submodule_lines",
    "test_ideal",
    "timed",
    "trace_ideal",
    "trace_module",
]
