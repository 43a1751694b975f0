"""Finite commutative monoids given by Cayley tables.

Elements are indexed ``0..n-1`` internally; labels only matter at the file
boundary.  The arrows of the category of multiplication witnesses are pairs
``(a, b): a -> ab`` with composition ``(ab, c)(a, b) = (a, bc)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import StructureError

__all__ = [
    "MonoidTable", "MonoidHom", "HMArrow", "validate_monoid",
    "enumerate_isomorphisms", "enumerate_homomorphisms", "hm_arrows",
    "compose_arrows", "identity_arrow", "cyclic_group", "abelian_group",
    "semilattice", "trivial_monoid",
]


def validate_monoid(elements, unit, table):
    """Every violated monoid law instance, as ``(law, witness indices)`` pairs.

    ``unit`` is an index and ``table`` a square array of indices.  Shape
    problems raise :class:`StructureError`; an empty list means the table is a
    commutative monoid.
    """
    n = len(elements)
    if n == 0:
        raise StructureError("a monoid needs at least one element")
    if len(set(elements)) != n:
        raise StructureError("element labels are not distinct")
    if not 0 <= unit < n:
        raise StructureError(f"unit index {unit} out of range")
    if len(table) != n or any(len(r) != n for r in table):
        raise StructureError(f"table is not {n} x {n}")
    for r in table:
        for x in r:
            if not (isinstance(x, int) and 0 <= x < n):
                raise StructureError(f"table entry {x!r} is not an element index")
    out = []
    for i in range(n):
        if table[unit][i] != i:
            out.append(("unit", (unit, i)))
        if table[i][unit] != i:
            out.append(("unit", (i, unit)))
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                out.append(("commutativity", (i, j)))
    for i, j, k in product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            out.append(("associativity", (i, j, k)))
    return out


@dataclass(frozen=True)
class MonoidTable:
    """A finite commutative monoid.  ``table[i][j]`` is the index of the product."""

    elements: tuple
    unit: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        bad = validate_monoid(self.elements, self.unit, self.table)
        if bad:
            law, w = bad[0]
            labels = ", ".join(self.elements[i] for i in w)
            raise StructureError(f"not a commutative monoid: {law} fails at ({labels})")

    @classmethod
    def from_labels(cls, elements, unit, table):
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        try:
            u = index[unit]
            t = [[index[x] for x in r] for r in table]
        except KeyError as exc:
            raise StructureError(f"unknown element label {exc.args[0]!r}") from None
        return cls(elements, u, t)

    def __len__(self):
        return len(self.elements)

    @property
    def size(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.table[a][b]

    def prod(self, xs):
        r = self.unit
        for x in xs:
            r = self.table[r][x]
        return r

    def index(self, label):
        try:
            return self.elements.index(label)
        except ValueError:
            raise StructureError(f"unknown element label {label!r}") from None

    def label(self, i):
        return self.elements[i]

    def nonunit(self):
        return [i for i in range(self.size) if i != self.unit]

    def idempotents(self):
        return [i for i in range(self.size) if self.table[i][i] == i]

    def inverse(self, a):
        """The inverse of ``a`` or ``None``."""
        for b in range(self.size):
            if self.table[a][b] == self.unit:
                return b
        return None

    def is_group(self):
        return all(self.inverse(a) is not None for a in range(self.size))

    def power_profile(self, a):
        """``(index, period)`` of the cyclic subsemigroup generated by ``a``."""
        seen = {}
        x, k = a, 1
        while x not in seen:
            seen[x] = k
            x = self.table[x][a]
            k += 1
        return seen[x], k - seen[x]

    def label_table(self):
        return [[self.elements[x] for x in r] for r in self.table]


@dataclass(frozen=True)
class MonoidHom:
    domain: MonoidTable
    codomain: MonoidTable
    map: tuple

    def __post_init__(self):
        m = tuple(self.map)
        object.__setattr__(self, "map", m)
        D, C = self.domain, self.codomain
        if len(m) != D.size or any(not 0 <= x < C.size for x in m):
            raise StructureError("map does not send domain indices to codomain indices")
        if m[D.unit] != C.unit:
            raise StructureError("map does not preserve the unit")
        for a, b in product(range(D.size), repeat=2):
            if m[D.table[a][b]] != C.table[m[a]][m[b]]:
                raise StructureError(
                    f"map is not multiplicative at ({D.elements[a]}, {D.elements[b]})")

    def __call__(self, a):
        return self.map[a]

    @classmethod
    def identity(cls, M):
        return cls(M, M, tuple(range(M.size)))

    def compose(self, inner):
        """``self`` after ``inner``."""
        return MonoidHom(inner.domain, self.codomain, tuple(self.map[x] for x in inner.map))

    def is_bijective(self):
        return self.domain.size == self.codomain.size == len(set(self.map))

    def inverse(self):
        inv = [0] * self.domain.size
        for a, x in enumerate(self.map):
            inv[x] = a
        return MonoidHom(self.codomain, self.domain, tuple(inv))


def _profile(M, a):
    return (a == M.unit, M.table[a][a] == a, M.power_profile(a))


def enumerate_homomorphisms(M, N, bijective=False):
    """Unit-preserving multiplicative maps ``M -> N`` by backtracking.

    Elements of ``M`` are assigned in index order and every product of already
    assigned elements is checked as soon as both factors are fixed.
    """
    n, m = M.size, N.size
    if bijective and n != m:
        return []
    if bijective:
        prof_n = {}
        for x in range(m):
            prof_n.setdefault(_profile(N, x), []).append(x)
        prof_m = {}
        for a in range(n):
            prof_m.setdefault(_profile(M, a), []).append(a)
        if {k: len(v) for k, v in prof_m.items()} != {k: len(v) for k, v in prof_n.items()}:
            return []
        cand = [prof_n[_profile(M, a)] for a in range(n)]
    else:
        cand = [[N.unit] if a == M.unit else list(range(m)) for a in range(n)]
    # assign the unit first, then the rest by index
    order = [M.unit] + [a for a in range(n) if a != M.unit]
    f = [None] * n
    used = set()
    out = []

    def consistent(k):
        a = order[k]
        for x in order[:k + 1]:
            for y in order[:k + 1]:
                xy = M.table[x][y]
                if a in (x, y, xy) and f[xy] is not None \
                        and f[xy] != N.table[f[x]][f[y]]:
                    return False
        return True

    def rec(k):
        if k == n:
            out.append(MonoidHom(M, N, tuple(f)))
            return
        a = order[k]
        for x in cand[a]:
            if bijective and x in used:
                continue
            f[a] = x
            used.add(x)
            if consistent(k):
                rec(k + 1)
            used.discard(x)
            f[a] = None

    rec(0)
    return out


def enumerate_isomorphisms(M, N):
    """All monoid isomorphisms ``M -> N``.

    Pruned by unit preservation, idempotency and the index/period profile of
    each element's powers, which any isomorphism preserves.
    """
    return enumerate_homomorphisms(M, N, bijective=True)


@dataclass(frozen=True)
class HMArrow:
    source: int
    label: int
    target: int


def hm_arrows(M):
    return [HMArrow(a, b, M.table[a][b]) for a in range(M.size) for b in range(M.size)]


def compose_arrows(M, second, first):
    """``second`` after ``first``: ``(ab, c)(a, b) = (a, bc)``."""
    if second.source != first.target:
        raise StructureError("arrows are not composable")
    a = first.source
    bc = M.table[first.label][second.label]
    return HMArrow(a, bc, M.table[a][bc])


def identity_arrow(M, a):
    return HMArrow(a, M.unit, a)


# -- constructors ------------------------------------------------------------

def trivial_monoid():
    return MonoidTable(("1",), 0, ((0,),))


def abelian_group(orders, letters="abcdefgh"):
    """The additive group ``Z/o1 x ... x Z/ok`` written multiplicatively.

    Labels are ``1`` for the unit and words like ``a``, ``a2b`` otherwise.
    """
    orders = tuple(int(o) for o in orders if o > 1)
    tuples = list(product(*(range(o) for o in orders)))
    index = {t: i for i, t in enumerate(tuples)}

    def label(t):
        parts = []
        for x, ch in zip(t, letters):
            if x == 1:
                parts.append(ch)
            elif x > 1:
                parts.append(f"{ch}{x}")
        return "".join(parts) or "1"

    table = [[index[tuple((x + y) % o for x, y, o in zip(s, t, orders))] for t in tuples]
             for s in tuples]
    return MonoidTable(tuple(label(t) for t in tuples), 0, table)


def cyclic_group(n):
    return abelian_group((n,)) if n > 1 else trivial_monoid()


def semilattice(n_idempotents=1):
    """``{1} + chain of idempotents e1 > e2 > ...`` with ``ei ej = e_max(i,j)``."""
    els = ["1"] + [f"e{k}" if n_idempotents > 1 else "e" for k in range(1, n_idempotents + 1)]
    n = len(els)
    table = [[max(i, j) for j in range(n)] for i in range(n)]
    return MonoidTable(tuple(els), 0, table)
