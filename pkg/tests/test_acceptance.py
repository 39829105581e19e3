"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import functools
import random
import sys
import traceback
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from helpers import (  # noqa: E402
    ACCEPTANCE,
    a3_surface,
    crossing_planes,
    cusp,
    cusp_B,
    double_plane,
    nilpotent_module,
    quadric_cone,
    quadric_pool,
    random_homogeneous,
    random_ideal,
    random_quotient_module,
    random_vector,
    whitney,
    whitney_M,
    whitney_Mj,
    whitney_N,
    whitney_Nj,
    whitney_pool,
)
from tracforge.cli.corpus import bundled_corpus  # noqa: E402
from tracforge.cli.evaluator import Session  # noqa: E402
from tracforge.closurelab import (  # noqa: E402
    closure_of_ideal,
    closure_of_submodule,
    family_test_ideal,
    generates,
    is_m_primary,
    singular_containment_check,
    socle,
    trace_ideal,
)
from tracforge.fpmod import (  # noqa: E402
    FPModule,
    base_change,
    direct_sum,
    ext1,
    free_module,
    from_cokernel,
    from_submodule,
    hom,
    hom_to_ring,
    subquotient,
    syzygy_of_residue_field,
    tensor,
)
from tracforge.gbengine import (  # noqa: E402
    Ideal,
    Submodule,
    annihilator,
    audit_groebner_bases,
    gb_audit_log,
    intersect,
    krull_dimension,
)
from tracforge.polycore import make_ring  # noqa: E402

INSTANCES = 200


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                detail = fn()
            except BaseException as exc:
                msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                ACCEPTANCE[n] = f"FAIL criterion {n}: {title} ({msg})"
                raise
            ACCEPTANCE[n] = f"PASS criterion {n}: {title}" + (f" ({detail})" if detail else "")
        return run
    return wrap


def equal_ideal(I, gens):
    return I.same_as(Ideal(I.ring, gens))


# -- 1 ---------------------------------------------------------------------------

@criterion(1, "cusp rank-two submodule has trace m")
def test_criterion_1():
    R = cusp()
    tau = trace_ideal(cusp_B(R))
    assert equal_ideal(tau, ["a", "b"]), str(tau)
    assert str(tau) == "(a, b)"


# -- 2 ---------------------------------------------------------------------------

@criterion(2, "second syzygy of k on the quadric cone and the closure of (a, c)")
def test_criterion_2():
    R = quadric_cone()
    K = syzygy_of_residue_field(R, 2)
    vecs, ambient = K.embedding
    assert ambient == 3 and len(vecs) == 4
    assert (K.rank, len(K.relations)) == (4, 4)
    assert not any(f.terms and f.is_constant() for c in K.relations for f in c)
    cl = closure_of_ideal(Ideal(R, ["a", "c"]), K)
    assert equal_ideal(cl, ["a", "b", "c"]), str(cl)
    # b K ⊆ (a, c) K, the membership behind the closure
    IK = Submodule(R, 3, [tuple(g * f for f in v) for g in (R("a"), R("c")) for v in vecs])
    assert all(IK.contains(tuple(R("b") * f for f in v)) for v in vecs)
    return "ambient rank 3, 4 columns, 4 relations"


# -- 3 ---------------------------------------------------------------------------

@criterion(3, "Whitney umbrella traces and family intersection")
def test_criterion_3():
    R = whitney()
    M, N = whitney_M(R), whitney_N(R)
    assert equal_ideal(trace_ideal(M), ["x^2", "y", "z"])
    assert equal_ideal(trace_ideal(N), ["x", "z"])
    fam = [M, N]
    for j in range(1, 6):
        Mj, Nj = whitney_Mj(R, j), whitney_Nj(R, j)
        for B in (Mj, Nj):
            assert equal_ideal(trace_ideal(B), ["x", f"y^{j}", "z"]), (j, str(trace_ideal(B)))
        fam += [Mj, Nj]
    tau = family_test_ideal(fam)
    assert equal_ideal(tau, ["x^2", "x*y", "z"]), str(tau)
    assert is_m_primary(tau) is False
    assert krull_dimension(tau) == 1


# -- 4 ---------------------------------------------------------------------------

def crossing_modules(R):
    mods = {"M": from_cokernel([["x"]], R), "M'": from_cokernel([["z"]], R)}
    for j in range(1, 4):
        mods[f"M{j}"] = from_cokernel([["z", f"-y^{j}"], [0, "x"]], R)
        mods[f"M'{j}"] = from_cokernel([["x", f"y^{j}"], [0, "z"]], R)
    return mods


@criterion(4, "crossing planes traces and empty family intersection")
def test_criterion_4():
    R = crossing_planes()
    mods = crossing_modules(R)
    assert equal_ideal(trace_ideal(mods["M"]), ["z"])
    assert equal_ideal(trace_ideal(mods["M'"]), ["x"])
    for j in range(1, 4):
        for name in (f"M{j}", f"M'{j}"):
            assert equal_ideal(trace_ideal(mods[name]), ["x", f"y^{j}", "z"]), name
    assert str(family_test_ideal(list(mods.values()))) == "(0)"
    assert str(intersect(Ideal(R, ["x"]), Ideal(R, ["z"]))) == "(0)"


# -- 5 ---------------------------------------------------------------------------

@criterion(5, "double plane nilpotent modules have trace (x, y, z)")
def test_criterion_5():
    R = double_plane()
    for n in (2, 3, 4):
        assert equal_ideal(trace_ideal(nilpotent_module(R, n)), ["x", "y", "z"]), n


# -- 6 ---------------------------------------------------------------------------

@criterion(6, "A3 surface Hom generators, traces and generation")
def test_criterion_6():
    R = a3_surface()
    M1 = from_submodule([("y",), ("z",)], R)
    M3 = from_submodule([("x",), ("z",)], R)
    rows = hom_to_ring(M1)
    H = Submodule(R, 2, rows)
    claimed = Submodule(R, 2, [("y", "z"), ("z^3", "x")])
    assert H.same_as(claimed)
    assert len(rows) == 2
    # the general Hom agrees and contains both claimed maps
    _, maps = hom(M1, free_module(R, 1))
    general = Submodule(R, 2, [tuple(phi[0]) for phi in maps])
    assert general.contains(("y", "z")) and general.contains(("z^3", "x")) and general.same_as(H)
    entries = Ideal(R, [f for r in rows for f in r])
    assert equal_ideal(entries, ["x", "y", "z"])
    assert equal_ideal(trace_ideal(M1), ["x", "y", "z"])
    assert equal_ideal(trace_ideal(M3), ["x", "y", "z"])
    assert generates(M1, M3) is False
    assert generates(M3, M1) is False


# -- 7 ---------------------------------------------------------------------------

def corpus_rings():
    Rw, Rq = whitney(), quadric_cone()
    return [(Rw, whitney_pool(Rw)), (Rq, quadric_pool(Rq))]


def sweep(name, body, count=INSTANCES):
    """Run ``body(rng, ring, pool, i)`` on ``count`` seeded instances split over two rings."""
    rings = corpus_rings()
    bad = []
    for i in range(count):
        R, pool = rings[i % 2]
        rng = random.Random(f"{name}-{i}")
        ok = body(rng, R, pool, i)
        if not ok:
            bad.append(i)
    return bad


def random_module(rng, pool):
    B = rng.choice(pool)
    return random_quotient_module(B, rng) if rng.random() < 0.6 else B


def closure_laws(rng, R, pool, i):
    B = random_module(rng, pool)
    I = random_ideal(R, rng)
    J = I + random_ideal(R, rng)
    cl = closure_of_ideal(I, B)
    return (cl.contains_module(I)
            and closure_of_ideal(cl, B).same_as(cl)
            and closure_of_ideal(J, B).contains_module(cl))


def trace_additivity(rng, R, pool, i):
    B, C = random_module(rng, pool), random_module(rng, pool)
    return trace_ideal(direct_sum(B, C)).same_as(trace_ideal(B) + trace_ideal(C))


def tensor_containment(rng, R, pool, i):
    B, C = random_module(rng, pool), random_module(rng, pool)
    T = trace_ideal(tensor(B, C))
    return intersect(trace_ideal(B), trace_ideal(C)).contains_module(T)


def generation_reversal(rng, R, pool, i):
    B = random_module(rng, pool)
    # half the instances take C a quotient of B (so B generates C), half a random module
    C = random_quotient_module(B, rng) if i % 4 < 2 else random_module(rng, pool)
    if i % 4 < 2 and not generates(B, C):
        return False
    if generates(B, C):
        return trace_ideal(B).contains_module(trace_ideal(C))
    return True


def trace_idempotence(rng, R, pool, i):
    B = random_module(rng, pool)
    dual = hom(B, free_module(R, 1)).module
    return trace_ideal(tensor(B, dual)).same_as(trace_ideal(B))


def ext_inequality(rng, R, pool, i):
    """0 -> B -> C -> D -> 0 with C a corpus module and B spanned by random elements."""
    C = random_module(rng, pool)
    shifts = C.shifts
    gens = []
    for _ in range(rng.randint(1, 2)):
        deg = max(shifts) + rng.choice(R.weights)
        v = random_vector(R, shifts, deg, rng)
        if any(f.terms for f in v):
            gens.append(v)
    if not gens:
        gens = [tuple(R.gens()[0] if k == 0 else R.zero() for k in range(C.rank))]
    B = subquotient(R, gens, C.relations, C.rank)
    D = FPModule(R, C.rank, list(C.relations) + gens, shifts=C.shifts, check_grading=False)
    E = ext1(D, free_module(R, 1))
    J = annihilator(E.rank, E.relation_module()) if E.rank else Ideal(R, ["1"])
    lhs = J * trace_ideal(B) + trace_ideal(D)
    return trace_ideal(C).contains_module(lhs)


def zero_closure_in_hom(rng, R, pool, i):
    M = random_module(rng, pool)
    N = random_module(rng, pool)
    H = hom(M, N).module
    return closure_of_submodule([], H, M).same_as(H.relation_module())


def base_change_containment(rng, R, pool, i):
    B = random_module(rng, pool)
    I = random_ideal(R, rng)
    g = random_homogeneous(R, rng.choice((1, 2)), rng) or R.gens()[0]
    rels = [str(f) for f in R.relations] + [str(g)]
    Rg = make_ring(",".join(R.names), rels, weights=R.weights)
    cl = closure_of_ideal(I, B)
    image = Ideal(Rg, [Rg.reduce(f) for f in cl.polys])
    target = closure_of_ideal(Ideal(Rg, [Rg.reduce(f) for f in I.polys]), base_change(B, Rg))
    return target.contains_module(image)


def artinian_socle(rng, R, pool, i):
    """socle ⊆ tr(B) for nonzero B, and a family containing k meets in the socle."""
    soc = socle(R)
    m = [str(v) for v in R.gens()]
    k = from_cokernel([m], R)
    rank = rng.randint(1, 2)
    rels = [random_vector(R, (0,) * rank, rng.randint(1, 2), rng) for _ in range(rng.randint(0, 3))]
    B = FPModule(R, rank, rels, shifts=(0,) * rank, check_grading=False)
    if B.is_zero():
        return True
    if not trace_ideal(B).contains_module(soc):
        return False
    return family_test_ideal([k, B]).same_as(soc)


def artinian_sweep(count=INSTANCES):
    rings = [make_ring("x,y", ["x^2", "x*y", "y^2"]), make_ring("x", ["x^4"])]
    bad = []
    for i in range(count):
        R = rings[i % 2]
        if not artinian_socle(random.Random(f"artinian-{i}"), R, None, i):
            bad.append(i)
    return bad


SUITES = [
    ("closure laws", closure_laws),
    ("trace additivity", trace_additivity),
    ("tensor containment", tensor_containment),
    ("generation reversal", generation_reversal),
    ("trace idempotence", trace_idempotence),
    ("Ext inequality", ext_inequality),
    ("zero closure in Hom", zero_closure_in_hom),
    ("quotient base change", base_change_containment),
]


@criterion(7, "randomized property suites")
def test_criterion_7():
    failures = {}
    for name, body in SUITES:
        bad = sweep(name, body)
        if bad:
            failures[name] = bad[:5]
    bad = artinian_sweep()
    if bad:
        failures["socle containment and family"] = bad[:5]
    assert not failures, f"counterexamples: {failures}"
    return f"{len(SUITES) + 1} suites x {INSTANCES} instances"


# -- 8 ---------------------------------------------------------------------------

def corpus_pairs():
    """Every (ring, module) bound by a corpus script, in corpus order."""
    pairs = []
    for path in sorted(bundled_corpus().glob("*.tfs")):
        sess = Session().run_text(path.read_text(encoding="utf-8"))
        for name, v in sess.env.items():
            if isinstance(v, FPModule):
                pairs.append((path.stem, name, v))
    return pairs


@criterion(8, "singular-locus containment for every corpus (ring, module) pair")
def test_criterion_8():
    checked, failed, skipped = 0, [], []
    for case, name, B in corpus_pairs():
        if len(B.ring.relations) != 1:
            skipped.append(f"{case}:{name}")
            continue
        chk = singular_containment_check(B)
        checked += 1
        if not chk.holds:
            failed.append(f"{case}:{name} trace {chk.trace} misses {', '.join(chk.failures)}")
    # the Whitney umbrella witness: every Jacobian generator has a power in tr(M)
    R = whitney()
    chk = singular_containment_check(whitney_M(R))
    assert chk.holds and all(n is not None for n in chk.powers.values())
    assert checked > 0
    assert not failed, "; ".join(failed)
    return f"{checked} pairs" + (f", {len(skipped)} non-hypersurface skipped" if skipped else "")


# -- 9 ---------------------------------------------------------------------------

@criterion(9, "S-pair audit of every Groebner basis computed in the corpus run")
def test_criterion_9():
    with gb_audit_log() as log:
        for path in sorted(bundled_corpus().glob("*.tfs")):
            Session().run_text(path.read_text(encoding="utf-8"))
    bases, pairs, failures = audit_groebner_bases(log)
    assert bases > 0
    assert failures == 0, f"{failures} of {pairs} S-vectors did not reduce to zero"
    return f"{bases} bases, {pairs} S-vectors"


if __name__ == "__main__":
    status = 0
    for fn_name in sorted(n for n in globals() if n.startswith("test_criterion_")):
        try:
            globals()[fn_name]()
        except Exception:
            traceback.print_exc(limit=1)
            status = 1
    for n in sorted(ACCEPTANCE):
        print(ACCEPTANCE[n])
    sys.exit(status)
