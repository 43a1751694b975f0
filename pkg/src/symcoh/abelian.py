"""Finite abelian groups and exact integer linear algebra.

Groups are direct sums of cyclic groups.  A :class:`FinAbGroup` is always in
invariant-factor form ``Z/d1 x ... x Z/dk`` with ``2 <= d1 | d2 | ... | dk``;
a :class:`CyclicSum` is an arbitrary direct sum ``Z/o1 x ... x Z/om`` and is
used for ambient coordinate systems (one summand per index tuple, say).
Elements are coordinate tuples; homomorphisms are integer matrices whose
column ``j`` is the image of generator ``j``.

Kernels, images, quotients and preimages are all computed from a Smith normal
form of the map matrix augmented by the codomain relations.  Since every group
here is finite, the augmented column lattice contains ``N * Z^m`` for ``N`` the
exponent, so the reduction is carried out modulo ``N``.  Integers are Python
ints throughout.

>>> G = FinAbGroup.from_orders([2, 3])
>>> print(G)
Z/6
>>> double = AbHom(FinAbGroup((4,)), FinAbGroup((4,)), [[2]])
>>> K, incl = hom_kernel(double)
>>> print(K, incl.matrix)
Z/2 ((2,),)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, lcm, prod

from .errors import StructureError

__all__ = [
    "xgcd", "smith_normal_form", "FinAbGroup", "CyclicSum", "GroupElement",
    "AbHom", "hom_kernel", "hom_image", "quotient", "quotient_by", "solve",
    "Preimage", "direct_sum", "canonical_iso", "group_homomorphisms",
    "group_isomorphisms", "invariants_from_torsion", "format_orders",
]


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b == g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _shape(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for r in m:
        if len(r) != cols:
            raise StructureError("ragged matrix")
    return rows, cols


def smith_normal_form(m):
    """Exact Smith normal form over the integers.

    Returns ``(U, D, V)`` with ``U`` and ``V`` unimodular and ``U m V = D``,
    ``D`` diagonal with non-negative entries ``d1 | d2 | ...``.

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> D
    [[2, 0], [0, 4]]
    """
    A = [list(map(int, r)) for r in m]
    nr, nc = _shape(A)
    U, V = _eye(nr), _eye(nc)

    def row_comb(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        for M in (A, U):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_comb(i, j, a, b, c, d):
        for M in (A, V):
            for r in M:
                x, y = r[i], r[j]
                r[i], r[j] = a * x + b * y, c * x + d * y

    for t in range(min(nr, nc)):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        U[t], U[i] = U[i], U[t]
        for M in (A, V):
            for r in M:
                r[t], r[j] = r[j], r[t]
        while True:
            dirty = False
            for i in range(t + 1, nr):
                a, b = A[t][t], A[i][t]
                if not b:
                    continue
                if b % a == 0:
                    row_comb(i, t, 1, -(b // a), 0, 1)
                else:
                    g, x, y = xgcd(a, b)
                    row_comb(t, i, x, y, -(b // g), a // g)
            for j in range(t + 1, nc):
                a, b = A[t][t], A[t][j]
                if not b:
                    continue
                if b % a == 0:
                    col_comb(j, t, 1, -(b // a), 0, 1)
                else:
                    g, x, y = xgcd(a, b)
                    col_comb(t, j, x, y, -(b // g), a // g)
                    dirty = True
            if dirty:
                continue
            p = A[t][t]
            bad = next((i for i in range(t + 1, nr)
                        if any(A[i][j] % p for j in range(t + 1, nc))), None)
            if bad is None:
                break
            row_comb(t, bad, 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def _unit_for(a, N):
    """A unit ``u`` mod ``N`` with ``u * a = gcd(a, N)`` mod ``N``."""
    g = gcd(a, N)
    n1 = N // g
    if n1 == 1:
        return 1
    u = pow((a // g) % n1, -1, n1)
    while gcd(u, N) != 1:
        u += n1
    return u % N


class _ModSNF:
    """Smith form of an integer matrix over ``Z/N``.

    After construction ``U A V = diag(s)`` modulo ``N`` where each ``s[i]``
    divides ``N`` (``s[i] == N`` encodes a zero pivot) and ``s[0] | s[1] | ...``.
    ``U``, ``V`` and their inverses are only tracked when requested.
    """

    def __init__(self, rows, ncols, N, u=False, uinv=False, v=False, vinv=False):
        self.N = N
        self.m = m = len(rows)
        self.n = n = ncols
        A = [[x % N for x in r] for r in rows]
        self.U = _eye(m) if u else None
        self.Uinv = _eye(m) if uinv else None
        self.V = _eye(n) if v else None
        self.Vinv = _eye(n) if vinv else None
        fac = _factor(N) if N > 1 else {}
        if len(fac) == 1:
            self._run_local(A)
        else:
            self._run(A)

    # Row operations act on A and U from the left, on Uinv from the right;
    # column operations act on A and V from the right, on Vinv from the left.

    def _rows2(self, A, t, i, a, b, c, d, ia, ib, ic, id_):
        """(row_t, row_i) <- (a t + b i, c t + d i); inverse has entries ia..id_."""
        N = self.N
        rt, ri = A[t], A[i]
        s = t
        A[t] = rt[:s] + [(a * x + b * y) % N for x, y in zip(rt[s:], ri[s:])]
        A[i] = ri[:s] + [(c * x + d * y) % N for x, y in zip(rt[s:], ri[s:])]
        if self.U is not None:
            U = self.U
            ut, ui = U[t], U[i]
            U[t] = [(a * x + b * y) % N for x, y in zip(ut, ui)]
            U[i] = [(c * x + d * y) % N for x, y in zip(ut, ui)]
        if self.Uinv is not None:
            for r in self.Uinv:
                x, y = r[t], r[i]
                r[t], r[i] = (ia * x + ic * y) % N, (ib * x + id_ * y) % N

    def _cols2(self, A, t, j, a, b, c, d, ia, ib, ic, id_):
        """(col_t, col_j) <- (a t + b j, c t + d j); inverse has entries ia..id_."""
        N = self.N
        for r in A[t:]:
            x, y = r[t], r[j]
            r[t], r[j] = (a * x + b * y) % N, (c * x + d * y) % N
        if self.V is not None:
            for r in self.V:
                x, y = r[t], r[j]
                r[t], r[j] = (a * x + b * y) % N, (c * x + d * y) % N
        if self.Vinv is not None:
            Vi = self.Vinv
            vt, vj = Vi[t], Vi[j]
            Vi[t] = [(ia * x + ic * y) % N for x, y in zip(vt, vj)]
            Vi[j] = [(ib * x + id_ * y) % N for x, y in zip(vt, vj)]

    def _swap(self, A, t, i, j):
        if i != t:
            A[t], A[i] = A[i], A[t]
            if self.U is not None:
                self.U[t], self.U[i] = self.U[i], self.U[t]
            if self.Uinv is not None:
                for r in self.Uinv:
                    r[t], r[i] = r[i], r[t]
        if j != t:
            for M in (A, self.V):
                if M is not None:
                    for r in M:
                        r[t], r[j] = r[j], r[t]
            if self.Vinv is not None:
                Vi = self.Vinv
                Vi[t], Vi[j] = Vi[j], Vi[t]

    def _run_local(self, A):
        """Elimination when ``N`` is a prime power.

        Divisors of ``N`` then form a chain, so a pivot of minimal gcd with
        ``N`` divides every remaining entry and plain rank-one updates suffice.
        """
        N, m, n = self.N, self.m, self.n
        U, Vinv = self.U, self.Vinv
        # columns of Uinv and V, so that their updates are row operations too
        UinvT = _eye(m) if self.Uinv is not None else None
        VT = _eye(n) if self.V is not None else None
        s = []
        for t in range(min(m, n)):
            best, bi, bj = N, -1, -1
            for i in range(t, m):
                r = A[i]
                for j in range(t, n):
                    x = r[j]
                    if x:
                        g = gcd(x, N)
                        if g < best:
                            best, bi, bj = g, i, j
                            if g == 1:
                                break
                if best == 1:
                    break
            if bi < 0:
                break
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
                if U is not None:
                    U[t], U[bi] = U[bi], U[t]
                if UinvT is not None:
                    UinvT[t], UinvT[bi] = UinvT[bi], UinvT[t]
            if bj != t:
                for r in A:
                    r[t], r[bj] = r[bj], r[t]
                if VT is not None:
                    VT[t], VT[bj] = VT[bj], VT[t]
                if Vinv is not None:
                    Vinv[t], Vinv[bj] = Vinv[bj], Vinv[t]
            u = _unit_for(A[t][t], N)
            if u != 1:
                ui = pow(u, -1, N)
                A[t] = [(u * x) % N for x in A[t]]
                if U is not None:
                    U[t] = [(u * x) % N for x in U[t]]
                if UinvT is not None:
                    UinvT[t] = [(ui * x) % N for x in UinvT[t]]
            g = A[t][t]
            rt = A[t]
            tail = rt[t:]
            for i in range(t + 1, m):
                x = A[i][t]
                if not x:
                    continue
                q = x // g
                ri = A[i]
                ri[t:] = [(y - q * z) % N for y, z in zip(ri[t:], tail)]
                if U is not None:
                    U[i] = [(y - q * z) % N for y, z in zip(U[i], U[t])]
                if UinvT is not None:
                    UinvT[t] = [(y + q * z) % N for y, z in zip(UinvT[t], UinvT[i])]
            for j in range(t + 1, n):
                x = rt[j]
                if not x:
                    continue
                q = x // g
                rt[j] = 0
                if VT is not None:
                    VT[j] = [(y - q * z) % N for y, z in zip(VT[j], VT[t])]
                if Vinv is not None:
                    Vinv[t] = [(y + q * z) % N for y, z in zip(Vinv[t], Vinv[j])]
            s.append(g)
        self.s = s + [N] * (min(m, n) - len(s))
        if UinvT is not None:
            self.Uinv = [list(r) for r in zip(*UinvT)]
        if VT is not None:
            self.V = [list(r) for r in zip(*VT)]

    def _run(self, A):
        N, m, n = self.N, self.m, self.n
        s = []
        for t in range(min(m, n)):
            best, bi, bj = N, -1, -1
            for i in range(t, m):
                r = A[i]
                for j in range(t, n):
                    x = r[j]
                    if x:
                        g = gcd(x, N)
                        if g < best:
                            best, bi, bj = g, i, j
                            if g == 1:
                                break
                if best == 1:
                    break
            if bi < 0:
                break
            self._swap(A, t, bi, bj)
            u = _unit_for(A[t][t], N)
            if u != 1:
                ui = pow(u, -1, N)
                A[t] = [(u * x) % N for x in A[t]]
                if self.U is not None:
                    self.U[t] = [(u * x) % N for x in self.U[t]]
                if self.Uinv is not None:
                    for r in self.Uinv:
                        r[t] = (r[t] * ui) % N
            while True:
                dirty = False
                for i in range(t + 1, m):
                    b = A[i][t]
                    if not b:
                        continue
                    p = A[t][t]
                    if b % p == 0:
                        q = b // p
                        self._rows2(A, t, i, 1, 0, -q, 1, 1, 0, q, 1)
                    else:
                        g, x, y = xgcd(p, b)
                        self._rows2(A, t, i, x, y, -(b // g), p // g,
                                    p // g, -y, b // g, x)
                for j in range(t + 1, n):
                    b = A[t][j]
                    if not b:
                        continue
                    p = A[t][t]
                    if b % p == 0:
                        q = b // p
                        self._cols2(A, t, j, 1, 0, -q, 1, 1, 0, q, 1)
                    else:
                        g, x, y = xgcd(p, b)
                        self._cols2(A, t, j, x, y, -(b // g), p // g,
                                    p // g, -y, b // g, x)
                        dirty = True
                if dirty:
                    continue
                p = A[t][t]
                if p == 1:
                    break
                bad = next((i for i in range(t + 1, m)
                            if any(x % p for x in A[i][t + 1:])), None)
                if bad is None:
                    break
                self._rows2(A, t, bad, 1, 1, 0, 1, 1, -1, 0, 1)
            s.append(A[t][t])
        self.s = s + [N] * (min(m, n) - len(s))


def format_orders(orders):
    orders = [o for o in orders if o != 1]
    if not orders:
        return "0"
    return " x ".join(f"Z/{d}" for d in orders)


class _GroupMixin:
    orders: tuple

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def exponent(self):
        return lcm(1, *self.orders)

    def is_trivial(self):
        return self.order == 1

    def zero(self):
        return (0,) * len(self.orders)

    def reduce(self, coords):
        if len(coords) != len(self.orders):
            raise StructureError(
                f"element has {len(coords)} coordinates, group has rank {len(self.orders)}")
        return tuple(int(x) % d for x, d in zip(coords, self.orders))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def sub(self, x, y):
        return tuple((a - b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.orders))

    def scale(self, k, x):
        return tuple(k * a % d for a, d in zip(x, self.orders))

    def elements(self):
        return product(*(range(d) for d in self.orders))

    def element_order(self, x):
        return lcm(1, *(d // gcd(a, d) for a, d in zip(x, self.orders)))

    def __call__(self, *coords):
        return GroupElement(self, self.reduce(coords))


@dataclass(frozen=True)
class FinAbGroup(_GroupMixin):
    """A finite abelian group in invariant-factor form."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", inv)
        for d in inv:
            if d < 2:
                raise StructureError(f"invariant factor {d} < 2")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise StructureError(f"invariant factors {inv} do not form a divisibility chain")

    @property
    def orders(self):
        return self.invariant_factors

    @classmethod
    def from_orders(cls, orders):
        return canonical_iso(orders)[0]

    def canonical(self):
        return self

    def __str__(self):
        return format_orders(self.invariant_factors)


@dataclass(frozen=True)
class CyclicSum(_GroupMixin):
    """A direct sum of cyclic groups in a fixed, not necessarily canonical, order."""

    orders: tuple = ()

    def __post_init__(self):
        o = tuple(int(d) for d in self.orders)
        if any(d < 1 for d in o):
            raise StructureError("cyclic orders must be positive")
        object.__setattr__(self, "orders", o)

    def canonical(self):
        return canonical_iso(self.orders)[0]

    def __str__(self):
        return format_orders(self.orders)


@dataclass(frozen=True)
class GroupElement:
    parent: object
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", self.parent.reduce(self.coords))

    def __add__(self, other):
        return GroupElement(self.parent, self.parent.add(self.coords, other.coords))

    def __sub__(self, other):
        return GroupElement(self.parent, self.parent.sub(self.coords, other.coords))

    def __neg__(self):
        return GroupElement(self.parent, self.parent.neg(self.coords))

    def __rmul__(self, k):
        return GroupElement(self.parent, self.parent.scale(k, self.coords))

    def is_zero(self):
        return not any(self.coords)


def _coords(x):
    return x.coords if isinstance(x, GroupElement) else tuple(x)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism ``domain -> codomain`` given by an integer matrix.

    The matrix has one row per codomain coordinate and one column per domain
    generator; column ``j`` is the image of generator ``j``.
    """

    domain: object
    codomain: object
    matrix: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        m, n = self.codomain.rank, self.domain.rank
        rows = tuple(tuple(int(x) % e for x in r)
                     for r, e in zip(self.matrix, self.codomain.orders))
        if len(rows) != m or any(len(r) != n for r in rows):
            raise StructureError(
                f"matrix shape does not match {m} x {n} (codomain x domain)")
        object.__setattr__(self, "matrix", rows)
        if self.check:
            for j, d in enumerate(self.domain.orders):
                if any(d * r[j] % e for r, e in zip(rows, self.codomain.orders)):
                    raise StructureError(
                        f"generator {j} of order {d} is not sent to an element of order dividing {d}")

    @classmethod
    def identity(cls, G):
        return cls(G, G, _eye(G.rank), check=False)

    @classmethod
    def zero(cls, G, H):
        return cls(G, H, [[0] * G.rank for _ in range(H.rank)], check=False)

    def __call__(self, x):
        x = _coords(x)
        return tuple(sum(a * b for a, b in zip(r, x)) % e
                     for r, e in zip(self.matrix, self.codomain.orders))

    def apply(self, x):
        return GroupElement(self.codomain, self(x))

    def compose(self, inner):
        """``self`` after ``inner``."""
        if inner.codomain.orders != self.domain.orders:
            raise StructureError("homomorphisms are not composable")
        cols = [self(c) for c in _columns(inner.matrix, inner.domain.rank)]
        return AbHom(inner.domain, self.codomain, _transpose(cols, self.codomain.rank),
                     check=False)

    def __add__(self, other):
        return AbHom(self.domain, self.codomain,
                     [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)],
                     check=False)

    def __neg__(self):
        return AbHom(self.domain, self.codomain, [[-a for a in r] for r in self.matrix],
                     check=False)

    def columns(self):
        return _columns(self.matrix, self.domain.rank)

    def is_injective(self):
        return hom_kernel(self)[0].order == 1

    def is_surjective(self):
        return hom_image(self)[0].order == self.codomain.order

    def is_bijective(self):
        return self.domain.order == self.codomain.order and self.is_injective()

    def inverse(self):
        if not self.is_bijective():
            raise ValueError("homomorphism is not invertible")
        pre = Preimage(self)
        cols = [pre.solve(tuple(int(i == j) for i in range(self.codomain.rank)))
                for j in range(self.codomain.rank)]
        return AbHom(self.codomain, self.domain, _transpose(cols, self.domain.rank))


def _columns(matrix, ncols):
    return [tuple(r[j] for r in matrix) for j in range(ncols)]


def _transpose(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


# -- canonical forms ---------------------------------------------------------

def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _crt_idempotent(q, n):
    """The residue mod ``n`` that is 1 mod ``q`` and 0 mod ``n // q`` (coprime split)."""
    r = n // q
    if r == 1:
        return 1 % n
    return (r * pow(r, -1, q)) % n


def canonical_iso(orders):
    """Invariant-factor form of ``Z/o1 x ... x Z/om``.

    Returns ``(G, to_canonical, from_canonical)`` where the two maps are
    mutually inverse isomorphisms between ``CyclicSum(orders)`` and ``G``.
    The decomposition goes through primary parts, so the cost is linear in
    the number of summands.
    """
    orders = tuple(int(o) for o in orders)
    src = CyclicSum(orders)
    # prime -> list of (exponent, coordinate)
    parts = {}
    for i, o in enumerate(orders):
        for p, k in _factor(o).items():
            parts.setdefault(p, []).append((k, i))
    width = max((len(v) for v in parts.values()), default=0)
    for v in parts.values():
        v.sort(key=lambda ki: (-ki[0], ki[1]))
    # invariant factor index j counts from the largest
    factors = []
    for j in range(width):
        factors.append(prod(p ** v[j][0] for p, v in parts.items() if j < len(v)))
    factors.reverse()
    G = FinAbGroup(tuple(factors))
    to_c = [[0] * len(orders) for _ in factors]
    from_c = [[0] * len(factors) for _ in orders]
    for p, v in parts.items():
        for j, (k, i) in enumerate(v):
            row = width - 1 - j
            q = p ** k
            to_c[row][i] += _crt_idempotent(q, factors[row])
            from_c[i][row] += _crt_idempotent(q, orders[i])
    return (G, AbHom(src, G, to_c, check=False), AbHom(G, src, from_c, check=False))


def invariants_from_torsion(total, count):
    """Invariant factors of a finite abelian group ``X`` of order ``total``.

    ``count(k)`` must return the number of elements killed by ``k``.  Used by
    the enumeration oracles, which only see element sets.
    """
    exps = {}
    for p, e in _factor(total).items():
        logs = [0]
        j = 1
        while logs[-1] < e:
            c = count(p ** j)
            lg = 0
            while c > 1:
                c //= p
                lg += 1
            logs.append(lg)
            j += 1
        # number of cyclic p-factors of order >= p^j is logs[j] - logs[j-1]
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        ks = []
        for j, c in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            ks += [j] * (c - nxt)
        exps[p] = sorted(ks, reverse=True)
    return canonical_iso([p ** k for p, ks in exps.items() for k in ks])[0]


# -- kernels, images, quotients ----------------------------------------------

def _scaled_rows(matrix, cod_orders, N):
    return [[(N // e) * x for x in r] for r, e in zip(matrix, cod_orders)]


def quotient_by(G, gens):
    """Quotient of ``G`` by the subgroup generated by ``gens``.

    Returns ``(Q, proj, lifts)`` with ``Q`` canonical, ``proj: G -> Q`` and
    ``lifts[i]`` a fixed preimage in ``G`` of the ``i``-th generator of ``Q``.
    """
    orders = G.orders
    r = len(orders)
    N = lcm(1, *orders)
    gens = [tuple(g) for g in gens]
    W = [[g[i] for g in gens] + [orders[i] if k == i else 0 for k in range(r)]
         for i in range(r)]
    snf = _ModSNF(W, len(gens) + r, N, u=True, uinv=True)
    keep = [i for i in range(r) if snf.s[i] > 1]
    Q = FinAbGroup(tuple(snf.s[i] for i in keep))
    proj = AbHom(G, Q, [snf.U[i] for i in keep], check=False)
    lifts = [G.reduce([snf.Uinv[k][i] for k in range(r)]) for i in keep]
    return Q, proj, lifts


def quotient(G, sub):
    """``G / sub(H)`` for an injective ``sub: H -> G``; returns ``(Q, proj)``."""
    if sub.codomain.orders != G.orders:
        raise StructureError("subgroup map does not land in G")
    if not sub.is_injective():
        raise ValueError("subgroup map is not injective")
    Q, proj, _ = quotient_by(G, sub.columns())
    return Q, proj


def hom_kernel(phi):
    """Kernel of ``phi`` as ``(K, incl)`` with ``K`` canonical and ``incl`` injective."""
    dom, cod = phi.domain.orders, phi.codomain.orders
    n = len(dom)
    N = lcm(1, *dom, *cod)
    snf = _ModSNF(_scaled_rows(phi.matrix, cod, N), n, N, v=True, vinv=True)
    s = snf.s + [N] * (n - len(snf.s))
    keep = [i for i in range(n) if s[i] > 1]
    gens = [[(N // s[i]) * snf.V[r][i] % N for r in range(n)] for i in keep]
    sub_orders = CyclicSum(tuple(s[i] for i in keep))
    rels = []
    for j, d in enumerate(dom):
        if d % N == 0:
            continue
        rel = []
        for i in keep:
            w = d * snf.Vinv[i][j] % N
            step = N // s[i]
            assert w % step == 0
            rel.append(w // step)
        rels.append(rel)
    K, _, lifts = quotient_by(sub_orders, rels)
    cols = []
    for lift in lifts:
        cols.append(tuple(sum(c * g[r] for c, g in zip(lift, gens)) for r in range(n)))
    return K, AbHom(K, phi.domain, _transpose(cols, n) if n else [], check=False)


def hom_image(phi):
    """Image of ``phi`` as ``(I, incl)`` with ``I`` canonical and ``incl`` injective."""
    cod = phi.codomain.orders
    m, n = len(cod), phi.domain.rank
    N = lcm(1, *cod)
    snf = _ModSNF(_scaled_rows(phi.matrix, cod, N), n, N, uinv=True)
    s = snf.s + [N] * (m - len(snf.s))
    keep = [i for i in reversed(range(m)) if s[i] < N]
    cols = []
    for i in keep:
        g = [s[i] * snf.Uinv[r][i] % N for r in range(m)]
        cols.append(tuple(g[r] // (N // cod[r]) for r in range(m)))
    I = FinAbGroup(tuple(N // s[i] for i in keep))
    return I, AbHom(I, phi.codomain, _transpose(cols, m), check=False)


class Preimage:
    """Solves ``phi(x) = y`` repeatedly against one factorization of ``phi``."""

    def __init__(self, phi):
        self.phi = phi
        cod = phi.codomain.orders
        self.N = N = lcm(1, *cod)
        self.n = phi.domain.rank
        self._snf = _ModSNF(_scaled_rows(phi.matrix, cod, N), self.n, N, u=True, v=True)

    def solve(self, y):
        """A preimage of ``y`` as a coordinate tuple, or ``None`` when none exists."""
        y = self.phi.codomain.reduce(_coords(y))
        N, snf = self.N, self._snf
        yt = [(N // e) * c for c, e in zip(y, self.phi.codomain.orders)]
        w = [sum(a * b for a, b in zip(row, yt)) % N for row in snf.U]
        z = [0] * self.n
        for i, wi in enumerate(w):
            si = snf.s[i] if i < len(snf.s) else N
            if wi % si:
                return None
            if i < self.n and si < N:
                z[i] = wi // si
        x = tuple(sum(a * b for a, b in zip(row, z)) for row in snf.V)
        x = self.phi.domain.reduce(x)
        assert self.phi(x) == y
        return x


def solve(phi, y):
    """Some ``x`` with ``phi(x) = y`` as a :class:`GroupElement`, else ``None``."""
    x = Preimage(phi).solve(y)
    return None if x is None else GroupElement(phi.domain, x)


def direct_sum(parts):
    """``(S, injections, projections)`` for the direct sum of ``parts``.

    ``S`` is canonical; ``injections[k]: parts[k] -> S`` and
    ``projections[k]: S -> parts[k]`` satisfy the biproduct identities.
    """
    parts = list(parts)
    orders = tuple(o for P in parts for o in P.orders)
    S, to_c, from_c = canonical_iso(orders)
    inj, proj = [], []
    off = 0
    for P in parts:
        k = P.rank
        inj.append(AbHom(P, S, [r[off:off + k] for r in to_c.matrix], check=False))
        proj.append(AbHom(S, P, from_c.matrix[off:off + k], check=False))
        off += k
    return S, inj, proj


# -- enumeration -------------------------------------------------------------

def group_homomorphisms(G, H):
    """All homomorphisms ``G -> H``, generator images chosen in element order."""
    cand = [[x for x in H.elements() if H.scale(d, x) == H.zero()] for d in G.orders]
    for images in product(*cand):
        yield AbHom(G, H, _transpose(images, H.rank), check=False)


def group_isomorphisms(G, H):
    """All isomorphisms ``G -> H`` (empty unless the invariant factors agree)."""
    if G.canonical().orders != H.canonical().orders:
        return []
    n = G.order
    out = []
    for f in group_homomorphisms(G, H):
        if len({f(x) for x in G.elements()}) == n:
            out.append(f)
    return out
