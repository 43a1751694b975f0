import json
import os

import pytest

from symcoh.abelian import FinAbGroup
from symcoh.coeffs import validate_functor
from symcoh.corpus import (
    abelian_group_types, commutative_monoids, corpus_entries, count_monoids_brute,
    functors_valued_in, gen_corpus, nonconstant_functors,
)
from symcoh.files import functor_from_json, load, monoid_from_json
from symcoh.monoid import semilattice


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5)])
def test_monoid_counts_match_brute_force(n, count):
    assert len(commutative_monoids(n)) == count
    assert count_monoids_brute(n) == count


def test_larger_monoid_counts():
    # published counts of commutative monoids of orders 4 and 5
    assert [len(commutative_monoids(n)) for n in (4, 5)] == [19, 78]


def test_order_two_monoids_are_c2_and_semilattice():
    tables = {M.table for M in commutative_monoids(2)}
    assert tables == {((0, 1), (1, 0)), ((0, 1), (1, 1))}


def test_group_types():
    names = [str(G) for G in abelian_group_types(8)]
    assert len(names) == 11 and names[0] == "0"
    assert "Z/2 x Z/2 x Z/2" in names and "Z/2 x Z/4" in names
    assert sum(G.order == 8 for G in abelian_group_types(8)) == 3
    assert len(abelian_group_types(16)) == sum(
        {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1, 8: 3, 9: 2, 10: 1, 11: 1, 12: 2, 13: 1,
         14: 1, 15: 1, 16: 5}.values())


def test_semilattice_functors_by_hand():
    # groups in {0, Z/2}: e_* on A_e must be idempotent and e_* e_* = e_* on A_1
    M = semilattice(1)
    fs = list(functors_valued_in(M, [FinAbGroup(()), FinAbGroup((2,))]))
    assert len(fs) == 7
    assert all(not validate_functor(F) for F in fs)
    assert len(nonconstant_functors(M, [FinAbGroup(()), FinAbGroup((2,))])) == 5


def test_corpus_is_deterministic():
    a = [(n, M.table) for n, M, _ in corpus_entries(3, 3)]
    b = [(n, M.table) for n, M, _ in corpus_entries(3, 3)]
    assert a == b and len({n for n, _ in a}) == len(a)


def test_gen_corpus_writes_parsable_files(tmp_path):
    index = gen_corpus(2, 2, str(tmp_path))
    data = json.loads((tmp_path / "index.json").read_text())
    assert len(data["entries"]) == len(index)
    for e in index:
        M = monoid_from_json(load(os.path.join(tmp_path, e["monoid"])))
        functor_from_json(load(os.path.join(tmp_path, e["functor"])), M)
    assert not list(tmp_path.rglob("*.tmp"))
