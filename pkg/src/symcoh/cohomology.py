"""Cocycles, coboundaries and the groups H^n for n = 1, 2, 3.

``Z^n`` is the kernel of the coboundary on symmetric n-cochains, ``B^n`` the
image of the previous coboundary (``B^1 = 0``), and ``H^n = Z^n / B^n``.  All
three are computed from Smith forms in the slot coordinates of
:mod:`symcoh.cochains`.  :func:`brute_force_cohomology` recomputes the same
orders by listing every assignment, and serves as the independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import prod

from .abelian import (
    AbHom, FinAbGroup, Preimage, hom_image, hom_kernel, invariants_from_torsion,
    quotient_by,
)
from .cochains import (
    SymCochain, coboundary, coboundary_matrix, cochain_space, is_symmetric,
)
from .errors import CapExceeded, StructureError

__all__ = [
    "CohomologyResult", "cohomology_group", "is_cohomologous", "brute_force_cohomology",
    "cocycle_space", "random_cocycle", "DEFAULT_CAP",
]

DEFAULT_CAP = 2_000_000


@dataclass
class CohomologyResult:
    degree: int
    Z: FinAbGroup
    B: FinAbGroup
    H: FinAbGroup
    generators: list = field(default_factory=list)
    lift: object = field(default=None, repr=False)
    project: object = field(default=None, repr=False)

    def sizes(self):
        return self.Z.order, self.B.order, self.H.order


class _Cocycles:
    """Kernel of the coboundary with solvers for membership and boundaries."""

    def __init__(self, n, functor):
        self.degree, self.functor = n, functor
        self.space = cochain_space(n, functor)
        self.d = coboundary_matrix(n, functor)
        self.Z, self.inc = hom_kernel(self.d)
        self._inc_pre = Preimage(self.inc)
        if n > 1:
            self.d_prev = coboundary_matrix(n - 1, functor)
            self._prev_pre = None
        else:
            self.d_prev = None
        self._quotient = None

    def z_coords(self, vec):
        return self._inc_pre.solve(vec)

    def boundary_solver(self):
        if self._prev_pre is None:
            self._prev_pre = Preimage(self.d_prev)
        return self._prev_pre

    def quotient(self):
        if self._quotient is None:
            if self.d_prev is None:
                gens = []
            else:
                gens = [self.z_coords(col) for col in self.d_prev.columns()]
                assert all(g is not None for g in gens)
            self._quotient = quotient_by(self.Z, gens)
        return self._quotient


@lru_cache(maxsize=128)
def cocycle_space(n, functor):
    if n not in (1, 2, 3):
        raise ValueError("cohomology is computed in degrees 1, 2 and 3 only")
    return _Cocycles(n, functor)


def cohomology_group(n, M, A):
    """``H^n(M, A)`` with ``Z^n``, ``B^n`` and representative cocycles.

    ``generators[i]`` is a cocycle whose class is the ``i``-th generator of
    ``H``.  ``project`` sends a cocycle to its class coordinates and ``lift``
    sends class coordinates back to a representative cocycle.
    """
    if A.base != M:
        raise StructureError("coefficients are defined on a different monoid")
    cz = cocycle_space(n, A)
    H, proj, lifts = cz.quotient()
    B = hom_image(cz.d_prev)[0] if cz.d_prev is not None else FinAbGroup(())
    assert cz.Z.order == B.order * H.order

    def to_cochain(zc):
        return cz.space.from_vector(cz.inc(zc))

    def lift(hc):
        hc = H.reduce(hc)
        zc = cz.Z.zero()
        for x, l in zip(hc, lifts):
            zc = cz.Z.add(zc, cz.Z.scale(x, l))
        return to_cochain(zc)

    def project(c):
        if c.functor != A or c.degree != n:
            raise StructureError("cochain has the wrong degree or coefficients")
        zc = cz.z_coords(cz.space.to_vector(c))
        if zc is None:
            raise ValueError("not a cocycle")
        return proj(zc)

    gens = [to_cochain(l) for l in lifts]
    return CohomologyResult(n, cz.Z, B, H, gens, lift, project)


def is_cohomologous(h1, h2, n=None):
    """A cochain ``g`` with ``h1 - h2 = d g``, or ``None`` if the classes differ.

    Both inputs must be cocycles of degree 2 or 3 over the same coefficients.
    The witness is re-checked with the coboundary formula before returning.
    """
    n = h1.degree if n is None else n
    if n not in (2, 3) or h1.degree != n or h2.degree != n:
        raise ValueError("cohomologous test needs two cocycles of degree 2 or 3")
    if h1.functor != h2.functor:
        raise StructureError("cocycles live over different coefficients")
    cz = cocycle_space(n, h1.functor)
    for h in (h1, h2):
        v = cz.space.to_vector(h)
        if any(cz.d(v)):
            raise ValueError("input is not a cocycle")
    diff = cz.space.to_vector(h1 - h2)
    x = cz.boundary_solver().solve(diff)
    if x is None:
        return None
    g = cochain_space(n - 1, h1.functor).from_vector(x)
    if coboundary(g, check=False) != h1 - h2:
        raise AssertionError("boundary witness failed verification")
    return g


def random_cocycle(n, functor, rng):
    """A uniformly random ``n``-cocycle drawn through kernel coordinates."""
    cz = cocycle_space(n, functor)
    zc = tuple(rng.randrange(d) for d in cz.Z.orders)
    return cz.space.from_vector(cz.inc(zc))


# -- enumeration oracle -------------------------------------------------------------

def _alternating_coboundary(vals, n, F):
    """Coboundary of raw values by the alternating face formula, on non-unit tuples."""
    M = F.base
    T = M.table
    nonunit = [x for x in range(M.size) if x != M.unit]
    out = {}
    for t in product(nonunit, repeat=n + 1):
        G = F.groups[M.prod(t)]

        def val(s):
            return vals.get(s) or F.groups[M.prod(s)].zero()

        total = F.act(M.prod(t[1:]), t[0], val(t[1:]))
        for i in range(1, n + 1):
            s = t[:i - 1] + (T[t[i - 1]][t[i]],) + t[i + 1:]
            total = G.add(total, G.scale((-1) ** i, val(s)))
        last = F.act(M.prod(t[:-1]), t[-1], val(t[:-1]))
        total = G.add(total, G.scale((-1) ** (n + 1), last))
        if any(total):
            out[t] = total
    return out


def _symmetric_assignments(n, F):
    M = F.base
    nonunit = [x for x in range(M.size) if x != M.unit]
    tuples = list(product(nonunit, repeat=n))
    groups = [list(F.groups[M.prod(t)].elements()) for t in tuples]
    for vals in product(*groups):
        d = {t: v for t, v in zip(tuples, vals) if any(v)}
        if is_symmetric(n, d, F)[0]:
            yield d


def _freeze(d):
    return frozenset(d.items())


def _candidates(n, F):
    M = F.base
    if n == 0:
        return 1
    nonunit = [x for x in range(M.size) if x != M.unit]
    return prod(F.groups[M.prod(t)].order for t in product(nonunit, repeat=n))


def _add(d1, d2, F, sign=1):
    M = F.base
    out = dict(d1)
    for t, v in d2.items():
        G = F.groups[M.prod(t)]
        w = G.add(out.get(t, G.zero()), G.scale(sign, v))
        if any(w):
            out[t] = w
        else:
            out.pop(t, None)
    return out


def _scale(d, k, F):
    M = F.base
    out = {}
    for t, v in d.items():
        w = F.groups[M.prod(t)].scale(k, v)
        if any(w):
            out[t] = w
    return out


def brute_force_cohomology(n, M, A, cap=DEFAULT_CAP):
    """``Z^n``, ``B^n`` and ``H^n`` by listing every candidate assignment.

    Refuses with :class:`CapExceeded` when the number of candidate
    assignments in degrees ``n`` and ``n - 1`` exceeds ``cap``.  Group
    structures are recovered from counts of ``k``-torsion elements.
    """
    if n not in (1, 2, 3):
        raise ValueError("cohomology is computed in degrees 1, 2 and 3 only")
    required = _candidates(n, A) + (_candidates(n - 1, A) if n > 1 else 0)
    if required > cap:
        raise CapExceeded(required, cap)
    cochains = list(_symmetric_assignments(n, A))
    cocycles = [c for c in cochains if not _alternating_coboundary(c, n, A)]
    if n > 1:
        B = {_freeze(_alternating_coboundary(c, n - 1, A))
             for c in _symmetric_assignments(n - 1, A)}
    else:
        B = {_freeze({})}

    def structure(elems):
        return invariants_from_torsion(
            len(elems), lambda k: sum(1 for c in elems if not _scale(c, k, A)))

    Zg = structure(cocycles)
    Bg = structure([dict(b) for b in B])
    nz, nb = len(cocycles), len(B)

    def h_torsion(k):
        return sum(1 for c in cocycles if _freeze(_scale(c, k, A)) in B) // nb

    Hg = invariants_from_torsion(nz // nb, h_torsion)
    return CohomologyResult(n, Zg, Bg, Hg)
