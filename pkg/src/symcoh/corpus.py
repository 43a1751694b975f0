"""Small test corpora: commutative monoids, abelian groups and coefficient functors.

Monoids are generated up to isomorphism by filling the non-unit part of a
commutative table with associativity pruning, then keeping one table per
canonical relabelling.  :func:`count_monoids_brute` recounts them from every
square table with a pairwise isomorphism test and is the independent check.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import permutations, product

from .abelian import AbHom, FinAbGroup
from .coeffs import HMFunctor, constant_functor, enumerate_nat_isos, homs, validate_functor
from .monoid import MonoidTable, enumerate_isomorphisms, validate_monoid

__all__ = [
    "commutative_monoids", "count_monoids_brute", "abelian_group_types", "groups_up_to",
    "functors_valued_in", "nonconstant_functors", "corpus_entries", "gen_corpus",
]

LABELS = "1abcdefghijklmnopqrstuvwxyz"


def _labels(n):
    if n > len(LABELS):
        return ("1",) + tuple(f"x{k}" for k in range(1, n))
    return tuple(LABELS[:n])


def _canonical_key(table, n):
    best = None
    for p in permutations(range(1, n)):
        perm = (0,) + p
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        key = tuple(inv[table[perm[i]][perm[j]]] for i in range(1, n) for j in range(i, n))
        if best is None or key < best:
            best = key
    return best


def _tables(n):
    """Commutative monoid tables on ``0..n-1`` with unit ``0``, associativity-pruned."""
    if n == 1:
        yield [[0]]
        return
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    t = [[None] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = x

    def assoc_ok():
        for a, b, c in product(range(1, n), repeat=3):
            ab, bc = t[a][b], t[b][c]
            if ab is None or bc is None:
                continue
            l, r = t[ab][c], t[a][bc]
            if l is not None and r is not None and l != r:
                return False
        return True

    def rec(k):
        if k == len(cells):
            yield [row[:] for row in t]
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = t[j][i] = v
            if assoc_ok():
                yield from rec(k + 1)
        t[i][j] = t[j][i] = None

    yield from rec(0)


@lru_cache(maxsize=None)
def commutative_monoids(n):
    """All commutative monoids of order ``n`` up to isomorphism, in a fixed order."""
    if n < 1:
        raise ValueError("monoid order must be positive")
    seen = {}
    for t in _tables(n):
        key = _canonical_key(t, n)
        if key not in seen:
            seen[key] = t
    out = []
    labels = _labels(n)
    for key in sorted(seen):
        # rebuild from the canonical key so the chosen table is itself canonical
        t = [[None] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = t[x][0] = x
        it = iter(key)
        for i in range(1, n):
            for j in range(i, n):
                t[i][j] = t[j][i] = next(it)
        out.append(MonoidTable(labels, 0, t))
    return tuple(out)


def count_monoids_brute(n):
    """Count commutative monoids of order ``n`` from all ``n^(n*n)`` tables."""
    found = []
    for flat in product(range(n), repeat=n * n):
        t = [flat[r * n:(r + 1) * n] for r in range(n)]
        units = [u for u in range(n) if all(t[u][x] == x for x in range(n))]
        if len(units) != 1 or validate_monoid(range(n), units[0], t):
            continue
        M = MonoidTable(tuple(str(x) for x in range(n)), units[0], t)
        if not any(next(iter(enumerate_isomorphisms(M, N)), None) is not None for N in found):
            found.append(M)
    return len(found)


def abelian_group_types(max_order):
    """Every abelian group of order at most ``max_order``, the trivial one first."""
    out = []

    def chains(n, smallest):
        # invariant factor chains d1 | d2 | ... with product n, each a multiple of smallest
        if n == 1:
            yield ()
            return
        for d in range(smallest, n + 1):
            if n % d:
                continue
            for rest in chains(n // d, d):
                if all(r % d == 0 for r in rest):
                    yield (d,) + rest
    for n in range(1, max_order + 1):
        out.extend(FinAbGroup(c) for c in sorted(chains(n, 2)))
    return out


def groups_up_to(max_order):
    return abelian_group_types(max_order)


def functors_valued_in(M, groups):
    """Every functor on ``M`` whose groups are taken from ``groups``.

    Actions are chosen arrow by arrow; identity arrows are fixed and the
    composition law is checked as soon as its three arrows are assigned.
    """
    n = M.size
    T = M.table
    arrows = [(a, b) for a in range(n) for b in range(n) if b != M.unit]
    for gs in product(groups, repeat=n):
        action = [[None] * n for _ in range(n)]
        for a in range(n):
            action[a][M.unit] = AbHom.identity(gs[a])
        choices = [homs(gs[a], gs[T[a][b]]) for a, b in arrows]

        def ok(a, b):
            for x, y, z in product(range(n), repeat=3):
                if (x, y) != (a, b) and (T[x][y], z) != (a, b) and (x, T[y][z]) != (a, b):
                    continue
                f, g, h = action[x][y], action[T[x][y]][z], action[x][T[y][z]]
                if f is None or g is None or h is None:
                    continue
                if g.compose(f).matrix != h.matrix:
                    return False
            return True

        def rec(k):
            if k == len(arrows):
                yield HMFunctor(M, gs, [row[:] for row in action], check=False)
                return
            a, b = arrows[k]
            for f in choices[k]:
                action[a][b] = f
                if ok(a, b):
                    yield from rec(k + 1)
            action[a][b] = None

        for F in rec(0):
            assert not validate_functor(F)
            yield F


def nonconstant_functors(M, groups):
    """Functors valued in ``groups`` that are not constant, one per natural isomorphism class."""
    kept = []
    for F in functors_valued_in(M, groups):
        if F.is_constant():
            continue
        if any(K.groups == F.groups and next(iter(enumerate_nat_isos(K, F)), None) is not None
               for K in kept):
            continue
        kept.append(F)
    return kept


def corpus_entries(max_monoid_order, max_group_order, nonconstant_groups=None,
                   nonconstant_max_order=3):
    """``(name, M, F)`` for every monoid up to the order and every coefficient system.

    Constant functors cover all abelian groups of order at most
    ``max_group_order``.  Nonconstant ones take groups from
    ``nonconstant_groups`` (default the trivial group and Z/2) on monoids of
    order at most ``nonconstant_max_order``.
    """
    if nonconstant_groups is None:
        nonconstant_groups = [FinAbGroup(()), FinAbGroup((2,))]
    groups = abelian_group_types(max_group_order)
    out = []
    for n in range(1, max_monoid_order + 1):
        for k, M in enumerate(commutative_monoids(n)):
            mname = f"m{n}_{k}"
            for G in groups:
                gname = "x".join(map(str, G.invariant_factors)) or "0"
                out.append((f"{mname}__const_{gname}", M, constant_functor(M, G)))
            if n <= nonconstant_max_order:
                for j, F in enumerate(nonconstant_functors(M, nonconstant_groups)):
                    out.append((f"{mname}__nc{j}", M, F))
    return out


def _write_atomic(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def gen_corpus(max_monoid_order, max_group_order, out_dir):
    """Write monoid and functor files plus an ``index.json`` listing each pair."""
    from .files import dumps, functor_to_json, monoid_to_json
    os.makedirs(os.path.join(out_dir, "monoids"), exist_ok=True)
    os.makedirs(os.path.join(out_dir, "functors"), exist_ok=True)
    index = []
    written = set()
    for name, M, F in corpus_entries(max_monoid_order, max_group_order):
        mname = name.split("__")[0]
        mpath = os.path.join("monoids", mname + ".json")
        if mname not in written:
            _write_atomic(os.path.join(out_dir, mpath), dumps(monoid_to_json(M)))
            written.add(mname)
        fpath = os.path.join("functors", name + ".json")
        _write_atomic(os.path.join(out_dir, fpath), dumps(functor_to_json(F)))
        index.append({"name": name, "monoid": mpath, "functor": fpath})
    _write_atomic(os.path.join(out_dir, "index.json"), dumps({"entries": index}))
    return index
