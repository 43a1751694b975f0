import random

import pytest
from hypothesis import given, settings, strategies as st

from symcoh.abelian import FinAbGroup
from symcoh.coeffs import NatTransformation, constant_functor, enumerate_nat_isos, pullback_functor
from symcoh.cochains import SymCochain, coboundary, pullback, pushforward, random_cochain
from symcoh.cohomology import cohomology_group, random_cocycle
from symcoh.corpus import corpus_entries
from symcoh.errors import CapExceeded, StructureError
from symcoh.classify import (
    CocycleMorphism, CocycleTriple, NotPicard, brute_force_equivalence, compose_morphisms,
    decide_equivalence, deligne_invariants, group_structure, identity_morphism, maclane_report,
    same_class,
)
from symcoh.groupoids import build_S, is_monoidal_functor
from symcoh.monoid import (
    MonoidHom, abelian_group, cyclic_group, enumerate_isomorphisms, semilattice, trivial_monoid,
)

Z2, Z3, Z4 = FinAbGroup((2,)), FinAbGroup((3,)), FinAbGroup((4,))
CORPUS = corpus_entries(3, 3)
NONTRIVIAL = [(n, M, F) for n, M, F in CORPUS if cohomology_group(3, M, F).H.order > 1]


def triple(M, F, h=None):
    return CocycleTriple(M, F, SymCochain.zero(3, F) if h is None else h)


def shifted(L, rng):
    """A random triple equivalent to ``L`` together with the morphism ``L -> it``."""
    M, F = L.M, L.A
    isos = list(enumerate_isomorphisms(M, M))
    i = isos[rng.randrange(len(isos))]
    psis = enumerate_nat_isos(F, pullback_functor(i, F))
    psi = psis[rng.randrange(len(psis))]
    g = random_cochain(2, psi.target, rng)
    X = pushforward(psi, L.h) - coboundary(g)
    R = CocycleTriple(M, F, SymCochain(3, F, pullback(i.inverse(), X).values, check=False))
    return R, CocycleMorphism(L, R, i, psi, g)


# -- deciding equivalence ---------------------------------------------------------------------

def test_identical_triples_get_identity_like_witness():
    M = cyclic_group(4)
    L = triple(M, constant_functor(M, Z2))
    w = decide_equivalence(L, L)
    assert w is not None and w.i.map == (0, 1, 2, 3)
    assert is_monoidal_functor(w.functor(), L.groupoid(), L.groupoid())


def test_cohomologous_cocycles_found_with_identity_maps():
    rng = random.Random(1)
    M = cyclic_group(3)
    F = constant_functor(M, Z3)
    h = random_cocycle(3, F, rng)
    g0 = random_cochain(2, F, rng)
    L, R = triple(M, F, h), triple(M, F, h + coboundary(g0))
    w = decide_equivalence(L, R)
    assert w.i.map == MonoidHom.identity(M).map
    assert w.psi.components == NatTransformation.identity(F).components
    assert pushforward(w.psi, h) == pullback(w.i, R.h, w.psi.target) + coboundary(w.g)


def test_nonisomorphic_monoids_or_coefficients_are_inequivalent():
    M2, M3 = cyclic_group(2), cyclic_group(3)
    assert decide_equivalence(triple(M2, constant_functor(M2, Z2)),
                              triple(M3, constant_functor(M3, Z2))) is None
    assert decide_equivalence(triple(M2, constant_functor(M2, Z2)),
                              triple(M2, constant_functor(M2, Z3))) is None
    C4, K = cyclic_group(4), abelian_group((2, 2))
    assert decide_equivalence(triple(C4, constant_functor(C4, Z2)),
                              triple(K, constant_functor(K, Z2))) is None


def test_brute_force_on_trivial_monoid():
    M = trivial_monoid()
    L = triple(M, constant_functor(M, Z3))
    Fd = brute_force_equivalence(L, L)
    assert Fd is not None and is_monoidal_functor(Fd, L.groupoid(), L.groupoid())
    assert brute_force_equivalence(L, triple(M, constant_functor(M, Z2))) is None


def test_brute_force_cap():
    M = cyclic_group(3)
    L = triple(M, constant_functor(M, Z4))
    with pytest.raises(CapExceeded) as info:
        brute_force_equivalence(L, L, cap=100)
    assert info.value.required > 100


def test_nontrivial_classes_distinguished():
    # two functors on the same order-3 monoid whose H^3 is Z/2
    assert NONTRIVIAL
    for _, M, F in NONTRIVIAL:
        r = cohomology_group(3, M, F)
        L, R = triple(M, F), triple(M, F, r.lift((1,)))
        assert decide_equivalence(L, R) is None
        assert brute_force_equivalence(L, R) is None
        assert decide_equivalence(R, R) is not None
        assert brute_force_equivalence(R, R) is not None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_decide_agrees_with_brute_force(entry, rng):
    _, M, F = entry
    if M.size > 2 and rng.random() < 0.7:
        return
    L = triple(M, F, random_cocycle(3, F, rng))
    R = triple(M, F, random_cocycle(3, F, rng))
    try:
        brute = brute_force_equivalence(L, R, cap=200_000)
    except CapExceeded:
        return
    assert (decide_equivalence(L, R) is None) == (brute is None)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_equivalence_is_symmetric_and_transitive(entry, rng):
    _, M, F = entry
    L = triple(M, F, random_cocycle(3, F, rng))
    R, _ = shifted(L, rng)
    T, _ = shifted(R, rng)
    assert decide_equivalence(L, R) is not None and decide_equivalence(R, L) is not None
    assert decide_equivalence(L, T) is not None


# -- morphisms of triples -------------------------------------------------------------------

def test_morphism_invariant_is_checked():
    M = cyclic_group(3)
    a = M.index("a")
    F = constant_functor(M, Z3)
    L = triple(M, F)
    # on C3 with Z/3, g(a,a) = 1 alone has d g(a,a,a^2) = 2
    bad = SymCochain(2, F, {(a, a): (1,)})
    assert coboundary(bad)(a, a, M.index("a2")) == (2,)
    with pytest.raises(StructureError):
        CocycleMorphism(L, L, MonoidHom.identity(M), NatTransformation.identity(F), bad)
    assert identity_morphism(L).g.is_zero()


def test_composition_formula_pointwise():
    rng = random.Random(5)
    M = cyclic_group(3)
    F = constant_functor(M, Z3)
    L = triple(M, F, random_cocycle(3, F, rng))
    R, f1 = shifted(L, rng)
    T, f2 = shifted(R, rng)
    c = compose_morphisms(f2, f1)
    assert c.i.map == tuple(f2.i.map[f1.i.map[a]] for a in range(M.size))
    for a in range(M.size):
        assert c.psi.components[a] == f2.psi.components[f1.i.map[a]].compose(f1.psi.components[a])
    for (x, y), v in c.g.values.items():
        G = F.groups[M.table[x][y]]
        expect = G.add(f2.psi.components[f1.i.map[M.table[x][y]]](f1.g(x, y)),
                       f2.g(f1.i.map[x], f1.i.map[y]))
        assert v == expect


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_composition_laws(entry, rng):
    _, M, F = entry
    L = triple(M, F, random_cocycle(3, F, rng))
    R, f1 = shifted(L, rng)
    T, f2 = shifted(R, rng)
    U, f3 = shifted(T, rng)
    assert same_class(compose_morphisms(f3, compose_morphisms(f2, f1)),
                      compose_morphisms(compose_morphisms(f3, f2), f1))
    assert same_class(compose_morphisms(identity_morphism(R), f1), f1)
    assert same_class(compose_morphisms(f1, identity_morphism(L)), f1)


def test_same_class_ignores_cocycle_shifts():
    M = cyclic_group(2)
    F = constant_functor(M, Z2)
    L = triple(M, F)
    a = M.index("a")
    # g(a,a) = 1 is a 2-cocycle over Z/2 representing the nonzero class
    g = SymCochain(2, F, {(a, a): (1,)})
    f = CocycleMorphism(L, L, MonoidHom.identity(M), NatTransformation.identity(F), g)
    assert not same_class(f, identity_morphism(L))
    F4 = constant_functor(M, Z4)
    L4 = triple(M, F4)
    g4 = coboundary(SymCochain(1, F4, {(a,): (1,)}))
    f4 = CocycleMorphism(L4, L4, MonoidHom.identity(M), NatTransformation.identity(F4), g4)
    assert same_class(f4, identity_morphism(L4))


# -- groups and Picard invariants -----------------------------------------------------------

def test_group_structure():
    assert str(group_structure(abelian_group((2, 4)))) == "Z/2 x Z/4"
    assert str(group_structure(abelian_group((6,)))) == "Z/6"
    assert group_structure(trivial_monoid()).order == 1


def test_maclane_small():
    report = maclane_report(4, [Z2, Z3])
    assert len(report) == 5 * 2
    assert all(H.order == 1 for _, _, H in report)


def test_deligne_rejects_semilattice():
    M = semilattice(1)
    S = build_S(M, constant_functor(M, Z2), SymCochain.zero(3, constant_functor(M, Z2)))
    with pytest.raises(NotPicard) as info:
        deligne_invariants(S)
    assert info.value.element == M.elements[1 - M.unit]


def test_deligne_on_c2():
    M = cyclic_group(2)
    F = constant_functor(M, Z2)
    r = deligne_invariants(build_S(M, F, SymCochain.zero(3, F)))
    assert (str(r.G), str(r.A)) == ("Z/2", "Z/2")
    assert coboundary(r.witness).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2,), (3,), (4,), (2, 2), (5,), (6,)]),
       st.sampled_from([Z2, Z3, Z4, FinAbGroup((2, 2))]),
       st.randoms(use_true_random=False))
def test_deligne_witness_trivialises_the_associator(G, A, rng):
    M = abelian_group(G)
    F = constant_functor(M, A)
    h = random_cocycle(3, F, rng)
    r = deligne_invariants(build_S(M, F, h))
    assert r.G.invariant_factors == FinAbGroup(G).invariant_factors and r.A == A
    assert coboundary(r.witness) == pushforward(r.phi.inverse(), h)
