"""Equivalence of symmetric monoidal groupoids through cohomology classes.

Two triples ``(M, A, h)`` and ``(M', A', h')`` give equivalent groupoids
exactly when some monoid isomorphism ``i`` and natural isomorphism
``psi: A -> A' i`` carry ``[h]`` to ``i^*[h']``.  :func:`decide_equivalence`
searches ``(i, psi)`` and solves for the 2-cochain ``g`` with
``psi_* h = i^* h' + d g``; :func:`brute_force_equivalence` searches functor
data directly and is used only to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import prod

from .abelian import AbHom, FinAbGroup, invariants_from_torsion
from .coeffs import (
    NatTransformation, constant_functor, enumerate_nat_isos, homs, pullback_functor, whisker,
)
from .cochains import SymCochain, coboundary, pullback, pushforward
from .cohomology import cohomology_group, is_cohomologous
from .errors import CapExceeded, StructureError
from .groupoids import (
    MonFunctorData, build_S, build_functor, check_monoidal_functor, extract_cocycle,
    is_monoidal_functor,
)
from .monoid import MonoidHom, enumerate_isomorphisms

__all__ = [
    "CocycleTriple", "CocycleMorphism", "EquivalenceWitness", "decide_equivalence",
    "brute_force_equivalence", "compose_morphisms", "identity_morphism", "same_class",
    "maclane_report", "deligne_invariants", "DeligneResult", "NotPicard",
    "group_structure", "DEFAULT_BRUTE_CAP",
]

DEFAULT_BRUTE_CAP = 1_000_000


class NotPicard(StructureError):
    """Some object has no tensor inverse."""

    def __init__(self, element):
        super().__init__(f"not a Picard category: {element} has no tensor inverse")
        self.element = element


@dataclass(frozen=True)
class CocycleTriple:
    M: object
    A: object
    h: SymCochain

    def __post_init__(self):
        if self.A.base != self.M or self.h.functor != self.A or self.h.degree != 3:
            raise StructureError("h must be a 3-cochain over A, and A must live on M")
        if not coboundary(self.h, check=False).is_zero():
            raise StructureError("h is not a cocycle")

    def groupoid(self):
        return build_S(self.M, self.A, self.h)


@dataclass(frozen=True)
class CocycleMorphism:
    """``(i, psi, g)`` with ``psi_* h = i^* h' + d g``, checked on construction."""

    source: CocycleTriple
    target: CocycleTriple
    i: MonoidHom
    psi: NatTransformation
    g: SymCochain

    def __post_init__(self):
        L, R = self.source, self.target
        if self.i.domain != L.M or self.i.codomain != R.M:
            raise StructureError("monoid map does not match the triples")
        A2i = pullback_functor(self.i, R.A)
        if self.psi.source != L.A or self.psi.target != A2i:
            raise StructureError("psi must go from A to A' i")
        if self.g.degree != 2 or self.g.functor != A2i:
            raise StructureError("g must be a 2-cochain over A' i")
        lhs = pushforward(self.psi, L.h)
        rhs = pullback(self.i, R.h, A2i) + coboundary(self.g, check=False)
        if lhs != rhs:
            raise StructureError("psi_* h differs from i^* h' + d g")


def identity_morphism(L):
    return CocycleMorphism(L, L, MonoidHom.identity(L.M), NatTransformation.identity(L.A),
                           SymCochain.zero(2, L.A))


def compose_morphisms(f2, f1):
    """``f2 . f1 = (i2 i1, (psi2 i1) psi1, (psi2 i1)_* g1 + i1^* g2)``."""
    if f1.target != f2.source or f1.i.codomain != f2.i.domain:
        raise StructureError("morphisms are not composable")
    i = f2.i.compose(f1.i)
    psi2i = whisker(f2.psi, f1.i)
    psi = psi2i.compose(f1.psi)
    target = pullback_functor(i, f2.target.A)
    psi = NatTransformation(f1.source.A, target, psi.components, check=False)
    g = pushforward(psi2i, f1.g) + pullback(f1.i, f2.g, psi2i.target)
    g = SymCochain(2, target, g.values, check=False)
    return CocycleMorphism(f1.source, f2.target, i, psi, g)


def same_class(f, f2):
    """Equal ``i`` and ``psi`` and ``g - g'`` a coboundary."""
    if f.i.map != f2.i.map or f.psi.components != f2.psi.components:
        return False
    diff = f.g - f2.g
    return is_cohomologous(diff, SymCochain.zero(2, diff.functor), 2) is not None


@dataclass(frozen=True)
class EquivalenceWitness:
    i: MonoidHom
    psi: NatTransformation
    g: SymCochain

    def functor(self):
        return build_functor(self.i, self.psi, self.g)


def _verify_witness(L, R, w):
    S, S2 = L.groupoid(), R.groupoid()
    report = check_monoidal_functor(w.functor(), S, S2)
    if not all(r.passed for r in report):
        raise AssertionError(f"equivalence witness fails {[r.axiom for r in report if not r.passed]}")
    if not (w.i.is_bijective() and w.psi.is_invertible()):
        raise AssertionError("equivalence witness is not invertible")


def decide_equivalence(L, R, verify=True):
    """An :class:`EquivalenceWitness` for ``S(L) ~ S(R)``, or ``None``.

    Monoid isomorphisms and natural isomorphisms are tried in their fixed
    enumeration order and the first pair whose classes match wins.
    """
    for i in enumerate_isomorphisms(L.M, R.M):
        A2i = pullback_functor(i, R.A)
        pulled = pullback(i, R.h, A2i)
        for psi in enumerate_nat_isos(L.A, A2i):
            g = is_cohomologous(pushforward(psi, L.h), pulled, 3)
            if g is not None:
                w = EquivalenceWitness(i, psi, g)
                if verify:
                    _verify_witness(L, R, w)
                return w
    return None


def brute_force_equivalence(L, R, cap=DEFAULT_BRUTE_CAP):
    """Search every functor datum between the two groupoids directly.

    Object maps range over all bijections, morphism maps over all families
    of homomorphisms, and ``phi``/``phi0`` over all table values.  The first
    datum that passes every functor axiom and is invertible is returned as
    ``(i, psi components, phi, phi0)``; ``None`` when there is none.
    """
    M, M2 = L.M, R.M
    if M.size != M2.size:
        return None
    S, S2 = L.groupoid(), R.groupoid()
    pairs = list(product(range(M.size), repeat=2))
    maps = [p for p in permutations(range(M2.size))]
    total = 0
    for mp in maps:
        total += (prod(len(homs(L.A.groups[a], R.A.groups[mp[a]])) for a in range(M.size))
                  * prod(R.A.groups[mp[M.table[a][b]]].order for a, b in pairs)
                  * R.A.groups[M2.unit].order)
    if total > cap:
        raise CapExceeded(total, cap)
    for mp in maps:
        try:
            i = MonoidHom(M, M2, mp)
        except StructureError:
            continue
        A2i = pullback_functor(i, R.A)
        hom_choices = [homs(L.A.groups[a], A2i.groups[a]) for a in range(M.size)]
        phi_choices = [list(A2i.groups[M.table[a][b]].elements()) for a, b in pairs]
        unit_choices = list(A2i.groups[M.unit].elements())
        for comps in product(*hom_choices):
            if not all(f.is_bijective() for f in comps):
                continue
            psi = NatTransformation(L.A, A2i, comps, check=False)
            if psi.naturality_failure() is not None:
                continue
            for phis in product(*phi_choices):
                phi = dict(zip(pairs, phis))
                for phi0 in unit_choices:
                    Fd = MonFunctorData(i, psi, phi, phi0)
                    if is_monoidal_functor(Fd, S, S2):
                        return Fd
    return None


# -- vanishing and Picard invariants ---------------------------------------------

def group_structure(M):
    """Invariant factors of a finite abelian group given as a monoid table."""
    def killed(k):
        count = 0
        for a in range(M.size):
            x = M.unit
            for _ in range(k):
                x = M.table[x][a]
            count += x == M.unit
        return count
    return invariants_from_torsion(M.size, killed)


def maclane_report(max_group_order, coefficient_groups):
    """``H^3(G, A)`` for every abelian ``G`` up to the given order and each listed ``A``.

    Returns a list of ``(G, A, H)`` with ``G`` and ``A`` as :class:`FinAbGroup`.
    """
    from .corpus import abelian_group_types
    from .monoid import abelian_group
    out = []
    for G in abelian_group_types(max_group_order):
        M = abelian_group(G.invariant_factors)
        for A in coefficient_groups:
            H = cohomology_group(3, M, constant_functor(M, A)).H
            out.append((G, A, H))
    return out


@dataclass(frozen=True)
class DeligneResult:
    G: FinAbGroup
    monoid: object
    A: FinAbGroup
    phi: NatTransformation
    witness: SymCochain


def deligne_invariants(S):
    """The pair ``(G, A)`` of a strictly commutative Picard groupoid.

    ``G`` is the monoid of objects, which must be a group, and ``A`` the
    automorphism group of the unit.  ``phi[a] = a_*: A -> Aut(a)`` identifies
    the coefficients with the constant functor, and ``witness`` is a 2-cochain
    whose coboundary is the transported associativity cocycle.
    """
    M, F, h = extract_cocycle(S)
    for a in range(M.size):
        if M.inverse(a) is None:
            raise NotPicard(M.elements[a])
    A = F.groups[M.unit]
    const = constant_functor(M, A)
    phi = NatTransformation(const, F, tuple(F.action[M.unit][a] for a in range(M.size)))
    if not phi.is_invertible():
        raise AssertionError("a_* is not invertible on a group")
    transported = pushforward(phi.inverse(), h)
    g = is_cohomologous(transported, SymCochain.zero(3, const), 3)
    return DeligneResult(group_structure(M), M, A, phi, g)
