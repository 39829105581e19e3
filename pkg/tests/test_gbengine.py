import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cusp, random_homogeneous, random_ideal, whitney
from tracforge import _engine
from tracforge.gbengine import (
    Ideal,
    Submodule,
    annihilator,
    audit_groebner_bases,
    buchberger,
    colon,
    combine,
    dimension_is_zero,
    eliminate,
    encoder,
    gb_audit_log,
    intersect,
    kernel_of_matrix,
    krull_dimension,
    membership,
    normal_form,
    radical_membership,
    reduce_vector_mod_ring,
    syzygies,
)
from tracforge.polycore import QQ, make_ring, polynomial_ring


# -- an independent S-pair fixpoint oracle ------------------------------------------

def _naive_reduce(f, G):
    r = f.ring.zero()
    while f.terms:
        e, c = f.leading_term()
        for g in G:
            ge, gc = g.leading_term()
            if all(a >= b for a, b in zip(e, ge)):
                m = f.ring.monomial(tuple(a - b for a, b in zip(e, ge)), c * f.ring.field.inv(gc))
                f = f - m * g
                break
        else:
            lead = f.ring.monomial(e, c)
            r = r + lead
            f = f - lead
    return r


def naive_groebner(F):
    """Repeat S-polynomial reduction until stable, then minimize and reduce."""
    G = [f.monic() for f in F if f.terms]
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                (e1, _), (e2, _) = G[i].leading_term(), G[j].leading_term()
                L = tuple(max(a, b) for a, b in zip(e1, e2))
                R = G[i].ring
                s = R.monomial(tuple(a - b for a, b in zip(L, e1))) * G[i] - \
                    R.monomial(tuple(a - b for a, b in zip(L, e2))) * G[j]
                r = _naive_reduce(s, G)
                if r.terms:
                    G.append(r.monic())
                    changed = True
                    break
            if changed:
                break
    lts = [g.leading_term()[0] for g in G]
    mins = []
    for i, g in enumerate(G):
        if not any(j != i and all(a <= b for a, b in zip(lts[j], lts[i])) and (lts[j] != lts[i] or j < i)
                   for j in range(len(G))):
            mins.append(g)
    return {_naive_reduce(g - g.ring.monomial(*g.leading_term()), [h for h in mins if h is not g])
            + g.ring.monomial(*g.leading_term()) for g in mins}


def polys(U):
    return [v[0] for v in U]


# -- buchberger ----------------------------------------------------------------------

def test_buchberger_trivial_cases():
    S = make_ring("x,y,z")
    gb, trace = buchberger(Ideal(S, ["x"]))
    assert polys(gb) == [S("x")]
    T = make_ring("a,b,c")
    gb, _ = buchberger(Ideal(T, ["b^2 - a*c"]))
    assert polys(gb) == [T("b^2 - a*c")]
    gb, trace = buchberger(Submodule(S, 2, []))
    assert gb == [] and trace.pairs_processed == 0


def test_buchberger_against_fixpoint_oracle():
    S = make_ring("x,y,z")
    I = Ideal(S, ["x^2 - y", "x^3 - z"])
    gb, _ = buchberger(I)
    assert set(polys(gb)) == naive_groebner([S("x^2 - y"), S("x^3 - z")])
    assert I.contains(S("x^3 - z"))
    assert {str(g) for g in polys(gb)} == {"x^2 - y", "x*y - z", "y^2 - x*z"}


def _sympy_gb(polys_, names, p):
    gens = sympy.symbols(names)
    exprs = [sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(names, gens))) for f in polys_]
    G = sympy.groebner(exprs, *gens, order="grevlex", modulus=p)
    out = set()
    for g in G.exprs:
        q = sympy.Poly(g, *gens, modulus=p)
        out.add(frozenset((m, int(c) % p) for m, c in q.terms()))
    return out


def _ours(gb):
    return {frozenset(g.terms.items()) for g in gb}


@pytest.mark.parametrize("seed", range(12))
def test_buchberger_agrees_with_sympy(seed):
    rng = random.Random(seed)
    S = make_ring("x,y,z")
    F = [random_homogeneous(S, rng.choice((2, 3)), rng, 0.4) + (S("x") if rng.random() < 0.3 else 0)
         for _ in range(3)]
    F = [f for f in F if f.terms]
    if not F:
        return
    gb, _ = buchberger(Ideal(S, F))
    assert _ours(polys(gb)) == _sympy_gb(F, ["x", "y", "z"], 32003)


def test_gb_trace_reproduces_elements():
    R = whitney()
    gens = [(R("z"), R("-x^2")), (R("y"), R("z")), (R("x*y"), R("x*z"))]
    U = Submodule(R, 2, gens)
    gb, trace = buchberger(U, trace=True)
    assert len(gb) == len(trace.transformation)
    for g, row in zip(gb, trace.transformation):
        lhs = reduce_vector_mod_ring(R, combine(R, row, gens, 2))
        assert U.ring and Submodule(R, 2, []).normal_form(tuple(a - b for a, b in zip(lhs, g))) == (R.zero(),) * 2


@pytest.mark.parametrize("seed", range(8))
def test_gb_unique_under_shuffle_and_all_s_pairs_reduce(seed):
    rng = random.Random(seed)
    R = whitney()
    gens = [tuple(random_homogeneous(R, d, rng) for d in (2, 3)) for _ in range(3)]
    U = Submodule(R, 2, gens)
    shuffled = gens[:]
    rng.shuffle(shuffled)
    V = Submodule(R, 2, shuffled)
    assert U.internal_gb() == V.internal_gb()
    enc = encoder(R.base)
    checked, failures = _engine.s_pair_audit(U.internal_gb(), enc, R.field.p)
    assert failures == 0
    assert all(U.contains(g) for g in gens)


def test_audit_log_collects_bases():
    R = whitney()
    with gb_audit_log() as log:
        Ideal(R, ["x", "y^2"]).internal_gb()
    bases, pairs, failures = audit_groebner_bases(log)
    assert bases >= 1 and failures == 0


# -- normal form / membership --------------------------------------------------------

def test_normal_form_examples():
    S = make_ring("x,y")
    U = Ideal(S, ["x^2 - y"])
    assert normal_form((S.zero(),), U) == (S.zero(),)
    assert normal_form((S("x^2"),), U) == (S("y"),)
    T = make_ring("a,b,c")
    assert normal_form((T("b^3"),), Ideal(T, ["b^2 - a*c"])) == (T("a*b*c"),)


def test_membership_examples():
    R = cusp()
    assert not membership((R("b"),), Ideal(R, ["a"]))
    S = make_ring("x,y")
    U = Ideal(S, ["x^2", "y^2"])
    assert membership((S.zero(),), U)
    assert membership((S("x^2*y"),), U)
    with pytest.raises(ValueError):
        membership((S("x"), S("y")), U)


exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))


@settings(max_examples=80, deadline=None)
@given(st.lists(exps, min_size=1, max_size=4), exps)
def test_membership_matches_monomial_divisibility(gens, m):
    S = make_ring("x,y,z")
    I = Ideal(S, [S.base.monomial(e) for e in gens])
    expected = any(all(a <= b for a, b in zip(g, m)) for g in gens)
    assert I.contains(S.base.monomial(m)) == expected


# -- syzygies / kernels ----------------------------------------------------------------

def test_syzygy_examples():
    S = make_ring("x,y")
    Z = syzygies(Submodule(S, 1, [("x",), ("y",)]))
    assert Z.same_as(Submodule(S, 2, [("y", "-x")]))
    X = make_ring("x,y,z", ["x*z"])
    Z = syzygies(Submodule(X, 1, [("x",)]))
    assert Z.same_as(Submodule(X, 1, [("z",)]))


def test_syzygies_annihilate_generators():
    R = whitney()
    gens = [(R("z"), R("-x^2")), (R("y"), R("z")), (R("x"), R("y"))]
    Z = syzygies(Submodule(R, 2, gens))
    assert Z.gens
    for s in Z.gens:
        assert reduce_vector_mod_ring(R, combine(R, s, gens, 2)) == (R.zero(), R.zero())


def test_kernel_of_matrix_examples():
    S = make_ring("x,y")
    assert kernel_of_matrix([["1", "0"], ["0", "1"]], S).gens == ()
    K = kernel_of_matrix([["x", "y"]], S)
    assert K.same_as(Submodule(S, 2, [("y", "-x")]))
    R = whitney()
    # transpose of the presentation of M: rows (z, -x^2), (y, z)
    K = kernel_of_matrix([["z", "-x^2"], ["y", "z"]], R)
    expected = Submodule(R, 2, [("x^2", "z"), ("-z", "y")])
    assert K.same_as(expected)
    for a, b in K.gens:
        assert R.reduce(a * R("z") - b * R("x^2")).terms == {}


# -- intersections, colons, annihilators ---------------------------------------------

def test_intersect_examples():
    X = make_ring("x,y,z", ["x*z"])
    assert str(intersect(Ideal(X, ["x"]), Ideal(X, ["z"]))) == "(0)"
    R = whitney()
    A = Ideal(R, ["x^2", "y", "z"])
    assert intersect(A, A).same_as(A)
    assert str(intersect(A, Ideal(R, ["x", "z"]))) == "(x^2, x*y, z)"


@settings(max_examples=40, deadline=None)
@given(exps, exps)
def test_intersection_of_principal_monomials_is_lcm(e1, e2):
    S = make_ring("x,y,z")
    f, g = S.base.monomial(e1), S.base.monomial(e2)
    lcm = S.base.monomial(tuple(max(a, b) for a, b in zip(e1, e2)))
    assert intersect(Ideal(S, [f]), Ideal(S, [g])).same_as(Ideal(S, [lcm]))


def test_colon_examples():
    R = whitney()
    assert colon(Ideal(R, ["x"]), (R.zero(),)).is_unit()
    assert str(colon(Ideal(R, ["z"]), (R("x"),))) == "(x*y, z)"
    s = colon(Ideal(R, ["x^2"]), (R("z"),)) + colon(Ideal(R, ["z"]), (R("x^2"),))
    assert str(s) == "(x^2, y, z)"


@pytest.mark.parametrize("seed", range(15))
def test_colon_and_intersection_properties(seed):
    rng = random.Random(seed)
    R = whitney()
    I = random_ideal(R, rng)
    J = random_ideal(R, rng)
    f = random_homogeneous(R, rng.choice((1, 2)), rng) or R("x")
    C = colon(I, (f,))
    assert C.contains_module(I)
    assert all(I.contains(c * f) for c in C.polys)
    K = intersect(I, J)
    assert I.contains_module(K) and J.contains_module(K)


def test_annihilator_examples():
    S = make_ring("x,y")
    I = Ideal(S, ["x^2", "y^2"])
    assert annihilator(1, I).same_as(I)
    R = whitney()
    W = Submodule(R, 2, [("z", "-x^2"), ("y", "z")])
    assert str(annihilator(2, W)) == "(0)"


# -- elimination, radicals, dimension ------------------------------------------------

def test_eliminate_examples():
    S = make_ring("t,x,y")
    E = eliminate(Ideal(S, ["x - t", "y - t^2"]), ["x", "y"])
    assert E.same_as(Ideal(S, ["y - x^2"]))
    I = Ideal(S, ["x - t", "y"])
    assert eliminate(I, ["t", "x", "y"]).same_as(I)
    E = eliminate(Ideal(S, ["t*x - 1", "y"]), ["x", "y"])
    assert E.same_as(Ideal(S, ["y"]))


def test_radical_membership_examples():
    S = make_ring("x,y")
    assert radical_membership(S("y"), Ideal(S, ["y^2"]))
    assert not radical_membership(S("x"), Ideal(S, ["y"]))
    R = whitney()
    assert radical_membership(R("x*y"), Ideal(R, ["x^2", "y", "z"]))


@pytest.mark.parametrize("seed", range(10))
def test_radical_membership_consistent_with_powers(seed):
    rng = random.Random(seed)
    R = whitney()
    I = random_ideal(R, rng)
    f = random_homogeneous(R, rng.choice((1, 2)), rng)
    if any(I.contains(f ** n) for n in range(1, 7)):
        assert radical_membership(f, I)


def test_dimension_examples():
    S = make_ring("x,y,z")
    assert dimension_is_zero(Ideal(S, ["x", "y", "z"]))
    R = whitney()
    for j in range(1, 6):
        assert krull_dimension(Ideal(R, ["x", f"y^{j}", "z"])) == 0
    assert krull_dimension(Ideal(R, ["x^2", "x*y", "z"])) == 1
    assert krull_dimension(Ideal(R, [])) == 2
    with pytest.raises(ValueError):
        krull_dimension(Ideal(R, ["1"]))


def test_qq_coefficients():
    S = make_ring("x,y", field=QQ)
    I = Ideal(S, ["2*x^2 - 3*y", "x*y"])
    assert str(I) == "(2*x^2 - 3*y, x*y, y^2)"
    assert I.contains(S("y^2"))
