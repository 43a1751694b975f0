import random

import pytest
from hypothesis import given, settings, strategies as st

from symcoh.abelian import FinAbGroup
from symcoh.coeffs import constant_functor
from symcoh.cochains import SymCochain, coboundary, cochain_space, random_cochain
from symcoh.cohomology import (
    brute_force_cohomology, cohomology_group, is_cohomologous, random_cocycle,
)
from symcoh.corpus import corpus_entries
from symcoh.errors import CapExceeded, StructureError
from symcoh.monoid import cyclic_group, trivial_monoid

Z2, Z3 = FinAbGroup((2,)), FinAbGroup((3,))
CORPUS = corpus_entries(3, 3)


def sizes(r):
    return r.Z.order, r.B.order, r.H.order


def test_c2_with_z2():
    M = cyclic_group(2)
    F = constant_functor(M, Z2)
    H = [cohomology_group(n, M, F).H for n in (1, 2, 3)]
    assert [str(h) for h in H] == ["Z/2", "Z/2", "0"]


def test_trivial_monoid_has_no_cohomology():
    M = trivial_monoid()
    for n in (1, 2, 3):
        assert cohomology_group(n, M, constant_functor(M, Z3)).H.order == 1


def test_degree_out_of_range():
    M = cyclic_group(2)
    with pytest.raises(ValueError):
        cohomology_group(4, M, constant_functor(M, Z2))


def test_nonconstant_corpus_matches_oracle():
    for name, M, F in CORPUS:
        if "__nc" not in name:
            continue
        for n in (1, 2, 3):
            assert sizes(cohomology_group(n, M, F)) == sizes(brute_force_cohomology(n, M, F)), name


def test_nonzero_third_cohomology_example():
    # some order-3 inputs with nonconstant coefficients carry nonzero classes
    hits = [(name, M, F) for name, M, F in CORPUS
            if cohomology_group(3, M, F).H.order > 1]
    assert hits
    for name, M, F in hits:
        assert brute_force_cohomology(3, M, F).H == cohomology_group(3, M, F).H


def test_cap_is_enforced():
    M = cyclic_group(3)
    with pytest.raises(CapExceeded) as info:
        brute_force_cohomology(2, M, constant_functor(M, FinAbGroup((3, 3))), cap=10)
    assert info.value.required > 10


@pytest.mark.parametrize("idx", range(0, len(CORPUS), 4))
def test_representatives_and_boundaries(idx):
    _, M, F = CORPUS[idx]
    for n in (1, 2, 3):
        r = cohomology_group(n, M, F)
        for k, g in enumerate(r.generators):
            assert g.is_cocycle()
            e = [0] * r.H.rank
            e[k] = 1
            assert r.project(g) == r.H.reduce(e)
        if n > 1:
            for b in cochain_space(n - 1, F).basis():
                c = coboundary(SymCochain(n - 1, F, b))
                assert not any(r.project(c))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from([2, 3]), st.randoms(use_true_random=False))
def test_lift_project_round_trip(entry, n, rng):
    _, M, F = entry
    r = cohomology_group(n, M, F)
    coords = tuple(rng.randrange(d) for d in r.H.invariant_factors)
    h = r.lift(coords)
    assert h.is_cocycle() and r.project(h) == coords


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from([2, 3]), st.randoms(use_true_random=False))
def test_is_cohomologous_witness(entry, n, rng):
    _, M, F = entry
    h = random_cocycle(n, F, rng)
    g0 = random_cochain(n - 1, F, rng)
    h2 = h + coboundary(g0)
    g = is_cohomologous(h2, h)
    assert g is not None and coboundary(g) == h2 - h
    r = cohomology_group(n, M, F)
    other = random_cocycle(n, F, rng)
    same = r.project(other) == r.project(h)
    assert (is_cohomologous(other, h) is not None) == same


def test_is_cohomologous_rejects_non_cocycles():
    rng = random.Random(2)
    found = 0
    for _, M, F in CORPUS:
        g = random_cochain(2, F, rng)
        if g.is_cocycle():
            continue
        found += 1
        with pytest.raises(ValueError):
            is_cohomologous(g, SymCochain.zero(2, F))
    assert found


def test_is_cohomologous_rejects_degree_one():
    M = cyclic_group(2)
    F = constant_functor(M, Z2)
    with pytest.raises(ValueError):
        is_cohomologous(SymCochain.zero(1, F), SymCochain.zero(1, F))


def test_project_rejects_wrong_coefficients():
    M = cyclic_group(2)
    r = cohomology_group(2, M, constant_functor(M, Z2))
    with pytest.raises(StructureError):
        r.project(SymCochain.zero(2, constant_functor(M, Z3)))


def test_random_cocycles_are_reproducible():
    M = cyclic_group(4)
    F = constant_functor(M, FinAbGroup((2, 2)))
    a = [random_cocycle(2, F, random.Random(9)) for _ in range(2)]
    assert a[0] == a[1] and a[0].is_cocycle()
