"""Shared rings, corpus modules and random generators for the test-suite."""

from __future__ import annotations

import itertools
import random

from tracforge.fpmod import FPModule, from_cokernel, from_submodule, syzygy_of_residue_field
from tracforge.gbengine import Ideal
from tracforge.polycore import make_ring


# criterion number -> one "PASS/FAIL" line, printed at the end of the run
ACCEPTANCE = {}


def whitney():
    return make_ring("x,y,z", ["x^2*y + z^2"], weights=(1, 2, 2))


def quadric_cone():
    return make_ring("a,b,c", ["b^2 - a*c"])


def cusp():
    return make_ring("a,b", ["b^2 - a^3"], weights=(2, 3))


def crossing_planes():
    return make_ring("x,y,z", ["x*z"])


def double_plane():
    return make_ring("x,y,z", ["z^2"])


def a3_surface():
    return make_ring("x,y,z", ["x*y - z^4"], weights=(2, 2, 1))


def whitney_M(R):
    return from_cokernel([["z", "y"], ["-x^2", "z"]], R)


def whitney_N(R):
    return from_cokernel([["z", "x*y"], ["-x", "z"]], R)


def whitney_Mj(R, j):
    return from_cokernel([["z", 0, "x*y", 0], [0, "z", f"y^{j + 1}", "-x*y"],
                          ["-x", 0, "z", 0], [f"-y^{j}", "x", 0, "z"]], R)


def whitney_Nj(R, j):
    return from_cokernel([["z", 0, "x*y", 0], [0, "z", f"y^{j}", "-x"],
                          ["-x", 0, "z", 0], [f"-y^{j}", "x*y", 0, "z"]], R)


def nilpotent_module(R, n):
    """coker(z*I - A), A = [[0, Phi], [0, 0]] with x on the diagonal of Phi and y above it."""
    size = 2 * n
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = "z"
    for i in range(n):
        rows[i][n + i] = "-x"
        if i + 1 < n:
            rows[i][n + i + 1] = "-y"
    return from_cokernel(rows, R)


def cusp_B(R):
    return from_submodule([("a^2", "b"), ("b", "a")], R)


def a3_modules(R):
    return (from_submodule([("y",), ("z",)], R),
            from_submodule([("y",), ("z^2",)], R),
            from_submodule([("x",), ("z",)], R))


def whitney_pool(R):
    return [whitney_M(R), whitney_N(R), whitney_Mj(R, 1), whitney_Nj(R, 2)]


def quadric_pool(R):
    K = syzygy_of_residue_field(R, 2)
    return [K, from_submodule([("a",), ("b",)], R), from_submodule([("b",), ("c",)], R),
            syzygy_of_residue_field(R, 1)]


# -- random data -------------------------------------------------------------

def monomials_of_degree(R, d):
    n = R.nvars
    w = R.weights
    out = []
    bound = [d // wi for wi in w]
    for e in itertools.product(*[range(b + 1) for b in bound]):
        if sum(a * b for a, b in zip(e, w)) == d:
            out.append(e)
    return out


def random_homogeneous(R, d, rng, density=0.6):
    """Random form of weighted degree d (possibly zero)."""
    p = R.field.p
    f = R.zero()
    if d < 0:
        return f
    for e in monomials_of_degree(R, d):
        if rng.random() < density:
            f = f + R.base.monomial(e, rng.randrange(1, p if p else 7))
    return R.reduce(f)


def random_ideal(R, rng, max_gens=3, degrees=(1, 2, 3)):
    gens = [random_homogeneous(R, rng.choice(degrees), rng) for _ in range(rng.randint(1, max_gens))]
    return Ideal(R, [g for g in gens if g.terms])


def random_vector(R, shifts, degree, rng, density=0.6):
    return tuple(random_homogeneous(R, degree - s, rng, density) for s in shifts)


def random_quotient_module(M, rng, count=1):
    """M modulo a few random homogeneous elements: a fresh graded module."""
    R = M.ring
    shifts = M.shifts or (0,) * M.rank
    extra = []
    for _ in range(count):
        deg = max(shifts) + rng.choice(R.weights) * rng.randint(1, 2)
        extra.append(random_vector(R, shifts, deg, rng))
    return FPModule(R, M.rank, list(M.relations) + extra, shifts=M.shifts, check_grading=M.shifts is None)


def rng_for(seed):
    return random.Random(seed)
