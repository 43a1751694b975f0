import random

import pytest
from hypothesis import given, settings, strategies as st

from symcoh.abelian import FinAbGroup
from symcoh.coeffs import NatTransformation, constant_functor, enumerate_nat_isos, pullback_functor
from symcoh.cochains import SymCochain, coboundary, pullback, pushforward, random_cochain
from symcoh.cohomology import random_cocycle
from symcoh.corpus import corpus_entries
from symcoh.errors import StructureError
from symcoh.groupoids import (
    UNIT_LEAF, CoherencePath, MonFunctorData, SkelSSMG, apply_move, build_S, build_functor,
    check_coherence, check_monoidal_functor, check_symmetric_iso, compose_functors,
    crossed_product, evaluate_path, extract_cocycle, is_coherent, is_monoidal_functor,
    normalize_path, parallel_paths,
)
from symcoh.monoid import MonoidHom, cyclic_group, enumerate_isomorphisms

Z2, Z4 = FinAbGroup((2,)), FinAbGroup((4,))
CORPUS = corpus_entries(3, 3)
ORDER3 = [e for e in CORPUS if e[1].size == 3]


def c2(G):
    M = cyclic_group(2)
    return M, constant_functor(M, G), M.index("a")


# -- crossed products ------------------------------------------------------------------

def test_untwisted_crossed_product_is_klein_four():
    M, F, a = c2(Z2)
    E, report = crossed_product(M, F)
    assert not report
    assert all(E.mul(x, x) == E.elements[E.unit] for x in E.elements)


def test_twisted_crossed_product_is_cyclic_of_order_four():
    M, F, a = c2(Z2)
    g = SymCochain(2, F, {(a, a): (1,)})
    E, report = crossed_product(M, F, g)
    assert not report
    x = ((0,), a)
    assert E.mul(x, x) == ((1,), M.unit)
    orders = []
    for y in E.elements:
        k, z = 1, y
        while z != E.elements[E.unit]:
            z, k = E.mul(z, y), k + 1
        orders.append(k)
    assert sorted(orders) == [1, 2, 4, 4]


def test_asymmetric_twist_rejected():
    M = cyclic_group(3)
    F = constant_functor(M, Z2)
    a, b = M.index("a"), M.index("a2")
    g = SymCochain(2, F, {(a, b): (1,)}, check=False)
    with pytest.raises(StructureError):
        crossed_product(M, F, g)


def test_non_cocycle_twist_reports_associativity():
    rng = random.Random(4)
    seen = 0
    for _, M, F in ORDER3:
        for _ in range(5):
            g = random_cochain(2, F, rng)
            if g.is_cocycle():
                continue
            E, report = crossed_product(M, F, g)
            law, (x, y, z) = report[0]
            assert law == "associativity"
            assert E.mul(E.mul(x, y), z) != E.mul(x, E.mul(y, z))
            seen += 1
    assert seen >= 10


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_crossed_product_is_monoid_iff_cocycle(entry, rng):
    _, M, F = entry
    g = random_cochain(2, F, rng) if rng.random() < 0.5 else random_cocycle(2, F, rng)
    E, report = crossed_product(M, F, g)
    assert (not report) == g.is_cocycle()


# -- coherence ------------------------------------------------------------------------------

def test_zero_associator_is_coherent():
    for _, M, F in CORPUS[:15]:
        assert is_coherent(build_S(M, F, SymCochain.zero(3, F)))


def _non_cocycles(rng, count):
    out = []
    for _, M, F in ORDER3:
        for _ in range(4):
            h = random_cochain(3, F, rng)
            if not h.is_cocycle():
                out.append((M, F, h))
    return out[:count]


def test_non_cocycle_fails_only_the_pentagon():
    cases = _non_cocycles(random.Random(1), 20)
    assert cases
    for M, F, h in cases:
        S = build_S(M, F, h)
        report = {r.axiom: r for r in check_coherence(S)}
        assert not report["pentagon"].passed
        x, y, z, t = report["pentagon"].witness
        assert coboundary(h)(x, y, z, t) != F.groups[M.prod((x, y, z, t))].zero()
        for ax in ("hexagon", "unit", "triangle", "symmetry", "diagonal", "naturality-a", "naturality-c", "naturality-r"):
            assert report[ax].passed, ax


def test_symmetry_table_violations_are_caught():
    M, F, a = c2(Z4)
    S = SkelSSMG(M, F, {}, {(a, a): (1,)}, {})
    report = {r.axiom: r for r in check_coherence(S)}
    assert not report["diagonal"].passed and report["diagonal"].witness == (a,)
    S = SkelSSMG(M, F, {}, {(a, a): (2,)}, {})
    report = {r.axiom: r for r in check_coherence(S)}
    assert report["symmetry"].passed and not report["diagonal"].passed


def test_unit_constraint_violation_is_caught():
    M, F, a = c2(Z2)
    S = SkelSSMG(M, F, {}, {}, {a: (1,)})
    assert not is_coherent(S)


def test_report_json_uses_labels():
    cases = _non_cocycles(random.Random(1), 1)
    M, F, h = cases[0]
    r = check_coherence(build_S(M, F, h))[0]
    data = r.to_json(M)
    assert data["axiom"] == "pentagon" and data["status"] == "fail"
    assert all(w in M.elements for w in data["witness"])


# -- extraction -----------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_extract_round_trip(entry, rng):
    _, M, F = entry
    h = random_cocycle(3, F, rng)
    M2, F2, h2 = extract_cocycle(build_S(M, F, h))
    assert (M2, F2, h2) == (M, F, h)


def test_extract_rejects_bad_tables():
    M, F, a = c2(Z2)
    with pytest.raises(StructureError, match="symmetry"):
        extract_cocycle(SkelSSMG(M, F, {}, {(a, a): (1,)}, {}))
    with pytest.raises(StructureError, match="unit"):
        extract_cocycle(SkelSSMG(M, F, {}, {}, {a: (1,)}))
    M, F, h = _non_cocycles(random.Random(1), 1)[0]
    with pytest.raises(StructureError, match="cocycle"):
        extract_cocycle(build_S(M, F, h))


# -- functors ------------------------------------------------------------------------------

def _equivalent_pair(M, F, rng):
    h = random_cocycle(3, F, rng)
    isos = list(enumerate_isomorphisms(M, M))
    i = isos[rng.randrange(len(isos))]
    # h' with i^* h' = psi_* h - d g0, so (i, psi, g0) is a functor S(h) -> S(h')
    psis = enumerate_nat_isos(F, pullback_functor(i, F))
    psi = psis[rng.randrange(len(psis))]
    A2i = psi.target
    g0 = random_cochain(2, A2i, rng)
    inv = i.inverse()
    X = pushforward(psi, h) - coboundary(g0)
    h2 = SymCochain(3, F, pullback(inv, X).values, check=False)
    assert pullback(i, h2, A2i) == X
    return h, h2, i, psi, g0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_witness_functor_passes_and_perturbation_fails(entry, rng):
    _, M, F = entry
    h, h2, i, psi, g0 = _equivalent_pair(M, F, rng)
    S, S2 = build_S(M, F, h), build_S(M, F, h2)
    Fd = build_functor(i, psi, g0)
    assert is_monoidal_functor(Fd, S, S2)
    bad = g0 + random_cochain(2, g0.functor, rng)
    if not coboundary(bad - g0).is_zero():
        report = {r.axiom: r for r in check_monoidal_functor(build_functor(i, psi, bad), S, S2)}
        assert not report["functor-associativity"].passed


def test_unit_and_symmetry_axioms_catch_bad_phi():
    M, F, a = c2(Z2)
    S = build_S(M, F, SymCochain.zero(3, F))
    i = MonoidHom.identity(M)
    psi = NatTransformation.identity(F)
    ok = MonFunctorData(i, psi, {}, (0,))
    assert is_monoidal_functor(ok, S, S)
    unit_bad = MonFunctorData(i, psi, {}, (1,))
    report = {r.axiom: r for r in check_monoidal_functor(unit_bad, S, S)}
    assert not report["functor-unit"].passed
    sym_bad = MonFunctorData(i, psi, {(M.unit, a): (1,)}, (0,))
    report = {r.axiom: r for r in check_monoidal_functor(sym_bad, S, S)}
    assert not report["functor-symmetry"].passed


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_composite_of_functors_is_a_functor(entry, rng):
    _, M, F = entry
    h, h2, i, psi, g0 = _equivalent_pair(M, F, rng)
    S, S2 = build_S(M, F, h), build_S(M, F, h2)
    F1 = build_functor(i, psi, g0)
    F2 = build_functor(MonoidHom.identity(M), NatTransformation.identity(F), SymCochain.zero(2, F))
    assert is_monoidal_functor(compose_functors(F2, F1), S, S2)
    # the identity functor on S2 after F1 has the same data as F1
    C = compose_functors(F2, F1)
    assert C.phi == F1.phi and C.i.map == F1.i.map


def test_symmetric_isomorphism_sign():
    rng = random.Random(8)
    M = cyclic_group(4)
    F = constant_functor(M, Z4)
    h = random_cocycle(3, F, rng)
    S = build_S(M, F, h)
    i, psi = MonoidHom.identity(M), NatTransformation.identity(F)
    f = SymCochain(1, F, {(1,): (1,), (2,): (3,), (3,): (2,)})
    Fd = build_functor(i, psi, SymCochain.zero(2, F))
    Fd2 = build_functor(i, psi, coboundary(f))
    theta = [(-(f(a)[0]),) for a in range(M.size)]
    assert check_symmetric_iso(theta, Fd, Fd2) == (True, None)
    theta_wrong = [f(a) for a in range(M.size)]
    ok, (law, w) = check_symmetric_iso(theta_wrong, Fd, Fd2)
    assert not ok and law == "tensor"
    assert is_monoidal_functor(Fd2, S, S)


# -- coherence paths ---------------------------------------------------------------------------

def test_moves_and_normal_form():
    M = cyclic_group(3)
    w = ((1, 2), (UNIT_LEAF, 1))
    assert apply_move(M, w, "c", ()) == ((UNIT_LEAF, 1), (1, 2))
    assert apply_move(M, w, "a", ()) == (1, (2, (UNIT_LEAF, 1)))
    with pytest.raises(StructureError):
        apply_move(M, w, "r", ())
    path, nf = normalize_path(M, w)
    assert nf == (1, (1, 2))
    assert CoherencePath(w, path.steps).target(M) == nf


def test_parallel_paths_agree_on_coherent_groupoids():
    rng = random.Random(11)
    for _, M, F in ORDER3[::3]:
        S = build_S(M, F, random_cocycle(3, F, rng))
        for _ in range(5):
            p, q = parallel_paths(M, rng)
            assert evaluate_path(S, p) == evaluate_path(S, q)


def test_parallel_paths_can_disagree_without_the_pentagon():
    rng = random.Random(12)
    disagreements = 0
    for M, F, h in _non_cocycles(random.Random(3), 10):
        S = build_S(M, F, h)
        for _ in range(40):
            p, q = parallel_paths(M, rng, leaves=4, steps=8)
            disagreements += evaluate_path(S, p) != evaluate_path(S, q)
    assert disagreements > 0
