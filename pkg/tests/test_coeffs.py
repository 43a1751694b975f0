from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from symcoh.abelian import AbHom, FinAbGroup, group_homomorphisms
from symcoh.coeffs import (
    HMFunctor, NatTransformation, constant_functor, enumerate_nat_isos,
    enumerate_nat_transformations, pullback_functor, validate_functor, whisker,
)
from symcoh.corpus import corpus_entries
from symcoh.errors import StructureError
from symcoh.monoid import (
    MonoidHom, abelian_group, cyclic_group, enumerate_isomorphisms, semilattice, trivial_monoid,
)

Z2, Z3, Z4 = FinAbGroup((2,)), FinAbGroup((3,)), FinAbGroup((4,))
CORPUS = [(name, F) for name, _, F in corpus_entries(3, 2)]


def test_constant_functor_is_valid():
    M = cyclic_group(2)
    F = constant_functor(M, Z2)
    assert not validate_functor(F) and F.is_constant()


def test_broken_composition_is_reported():
    # C2 with Z/2 everywhere and a_* = 0: a_* a_* = 0 but (aa)_* = 1_* = id
    M = cyclic_group(2)
    ident, zero = AbHom.identity(Z2), AbHom.zero(Z2, Z2)
    action = [[ident, zero], [ident, zero]]
    F = HMFunctor(M, (Z2, Z2), action, check=False)
    bad = validate_functor(F)
    assert bad and bad[0][0] == "composition"
    with pytest.raises(StructureError, match="composition"):
        HMFunctor(M, (Z2, Z2), action)


def test_identity_arrow_must_act_trivially():
    M = trivial_monoid()
    neg = AbHom(Z3, Z3, [[2]])
    F = HMFunctor(M, (Z3,), [[neg]], check=False)
    assert validate_functor(F)[0][0] == "identity"


def test_wrong_codomain_rejected():
    M = cyclic_group(2)
    with pytest.raises(StructureError):
        HMFunctor(M, (Z2, Z3), [[AbHom.identity(Z2)] * 2] * 2)


def brute_nat(S, T, invertible):
    M = S.base
    out = []
    for comps in product(*(list(group_homomorphisms(S.groups[a], T.groups[a])) for a in range(M.size))):
        if invertible and not all(f.is_bijective() for f in comps):
            continue
        psi = NatTransformation(S, T, comps, check=False)
        if psi.naturality_failure() is None:
            out.append(tuple(f.matrix for f in comps))
    return sorted(out)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from(CORPUS))
def test_nat_enumeration_matches_brute_force(e1, e2):
    (_, S), (_, T) = e1, e2
    if S.base != T.base:
        return
    got = sorted(tuple(f.matrix for f in p.components) for p in enumerate_nat_transformations(S, T))
    assert got == brute_nat(S, T, False)
    got = sorted(tuple(f.matrix for f in p.components) for p in enumerate_nat_isos(S, T))
    assert got == brute_nat(S, T, True)


@pytest.mark.parametrize("M, G, isos, all_", [
    (trivial_monoid(), Z2, 1, 2),
    (trivial_monoid(), Z3, 2, 3),
    (abelian_group((2, 2)), FinAbGroup((2, 2)), 6, 16),
])
def test_nat_counts_on_constant_functors(M, G, isos, all_):
    F = constant_functor(M, G)
    assert len(enumerate_nat_isos(F, F)) == isos
    assert len(enumerate_nat_transformations(F, F)) == all_


def test_nonnatural_family_rejected():
    M = semilattice(1)
    A = constant_functor(M, Z2)
    B = HMFunctor(M, (Z2, Z2), [[AbHom.identity(Z2)] * 2, [AbHom.identity(Z2)] * 2])
    assert A == B
    comps = (AbHom.identity(Z2), AbHom.zero(Z2, Z2))
    with pytest.raises(StructureError, match="not natural"):
        NatTransformation(A, B, comps)


def test_pullback_along_identity_is_unchanged():
    for _, F in CORPUS:
        assert pullback_functor(MonoidHom.identity(F.base), F) == F


def test_constant_functor_is_fixed_by_automorphisms():
    M = abelian_group((4,))
    F = constant_functor(M, Z4)
    for i in enumerate_isomorphisms(M, M):
        assert pullback_functor(i, F) == F


def test_inverse_compose_and_whisker():
    M = cyclic_group(3)
    F = constant_functor(M, Z3)
    neg = NatTransformation(F, F, (AbHom(Z3, Z3, [[2]]),) * 3)
    assert neg.is_invertible()
    assert neg.compose(neg.inverse()).components == NatTransformation.identity(F).components
    i = [h for h in enumerate_isomorphisms(M, M) if h.map != (0, 1, 2)][0]
    w = whisker(neg, i)
    assert w.source == pullback_functor(i, F)
    assert w.naturality_failure() is None
