"""Coefficient systems: abelian-group-valued functors on the category of a monoid.

A functor assigns a group ``A[a]`` to every element and a homomorphism
``b_*: A[a] -> A[ab]`` to every arrow ``(a, b)``.  It must send ``1_*`` to the
identity and satisfy ``c_* b_* = (bc)_*``.  The full action table is stored
and checked, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .abelian import AbHom, group_homomorphisms, group_isomorphisms
from .errors import StructureError
from .monoid import MonoidHom, MonoidTable

__all__ = [
    "HMFunctor", "validate_functor", "constant_functor", "pullback_functor",
    "NatTransformation", "enumerate_nat_isos", "enumerate_nat_transformations",
    "isos", "homs", "whisker",
]


@lru_cache(maxsize=None)
def isos(G, H):
    """Isomorphisms ``G -> H`` as a tuple (cached)."""
    return tuple(group_isomorphisms(G, H))


@lru_cache(maxsize=None)
def homs(G, H):
    return tuple(group_homomorphisms(G, H))


def _same(f, g):
    return f.matrix == g.matrix


def validate_functor(F):
    """Violations of the functor laws as ``(law, witness)`` pairs.

    ``law`` is ``"identity"`` with witness ``(a, generator)`` or
    ``"composition"`` with witness ``(a, b, c, generator)``.
    """
    M, out = F.base, []
    u = M.unit
    for a in range(M.size):
        f = F.action[a][u]
        for j, col in enumerate(f.columns()):
            if col != tuple(int(i == j) for i in range(F.groups[a].rank)):
                out.append(("identity", (a, j)))
                break
    for a, b, c in product(range(M.size), repeat=3):
        ab = M.table[a][b]
        lhs = F.action[ab][c].compose(F.action[a][b])
        rhs = F.action[a][M.table[b][c]]
        if lhs.matrix != rhs.matrix:
            j = next(j for j, (x, y) in enumerate(zip(lhs.columns(), rhs.columns())) if x != y)
            out.append(("composition", (a, b, c, j)))
    return out


@dataclass(frozen=True, eq=True)
class HMFunctor:
    """``groups[a]`` is the group at ``a``; ``action[a][b]`` is ``b_*`` on it."""

    base: MonoidTable
    groups: tuple
    action: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        M = self.base
        groups = tuple(self.groups)
        action = tuple(tuple(r) for r in self.action)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "action", action)
        if len(groups) != M.size:
            raise StructureError(f"expected {M.size} groups, got {len(groups)}")
        if len(action) != M.size or any(len(r) != M.size for r in action):
            raise StructureError("action table must be |M| x |M|")
        for a, b in product(range(M.size), repeat=2):
            f = action[a][b]
            if f.domain != groups[a] or f.codomain != groups[M.table[a][b]]:
                raise StructureError(
                    f"action of ({M.elements[a]}, {M.elements[b]}) has the wrong domain or codomain")
        if self.check:
            bad = validate_functor(self)
            if bad:
                law, w = bad[0]
                labels = ", ".join(M.elements[x] for x in w[:-1])
                raise StructureError(f"functor {law} law fails at ({labels}), generator {w[-1]}")
        object.__setattr__(self, "_hash", hash((M, groups, action)))

    def __hash__(self):
        return self._hash

    def act(self, a, b, x):
        """``b_* x`` for ``x`` in the group at ``a``."""
        return self.action[a][b](x)

    def group(self, a):
        return self.groups[a]

    def is_constant(self):
        G = self.groups[0]
        return all(H == G for H in self.groups) and all(
            f.matrix == AbHom.identity(G).matrix for r in self.action for f in r)


def constant_functor(M, G):
    ident = AbHom.identity(G)
    return HMFunctor(M, (G,) * M.size, tuple((ident,) * M.size for _ in range(M.size)),
                     check=False)


def pullback_functor(i, F):
    """``F`` composed with ``i``: groups ``F[ia]`` and actions ``(ib)_*``."""
    if i.codomain != F.base:
        raise StructureError("monoid map does not land in the functor's base")
    M = i.domain
    groups = tuple(F.groups[i(a)] for a in range(M.size))
    action = tuple(tuple(F.action[i(a)][i(b)] for b in range(M.size)) for a in range(M.size))
    return HMFunctor(M, groups, action, check=False)


@dataclass(frozen=True)
class NatTransformation:
    """Components ``psi[a]: source[a] -> target[a]`` over a common base.

    Naturality is ``psi[ab] b_* = b_* psi[a]``; for a target of the form
    ``F' i`` this is the square ``psi_ab(a_* u) = (ia)_* psi_b(u)``.
    """

    source: HMFunctor
    target: HMFunctor
    components: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        S, T = self.source, self.target
        if S.base != T.base:
            raise StructureError("source and target functors live on different monoids")
        if len(comps) != S.base.size:
            raise StructureError("one component per element is required")
        for a, f in enumerate(comps):
            if f.domain != S.groups[a] or f.codomain != T.groups[a]:
                raise StructureError(f"component at {S.base.elements[a]} has the wrong type")
        if self.check:
            w = self.naturality_failure()
            if w is not None:
                a, b = w
                raise StructureError(
                    f"not natural at arrow ({S.base.elements[a]}, {S.base.elements[b]})")

    def naturality_failure(self):
        S, T, M = self.source, self.target, self.source.base
        for a, b in product(range(M.size), repeat=2):
            ab = M.table[a][b]
            if not _same(self.components[ab].compose(S.action[a][b]),
                         T.action[a][b].compose(self.components[a])):
                return (a, b)
        return None

    def __call__(self, a, x):
        return self.components[a](x)

    def is_invertible(self):
        return all(f.is_bijective() for f in self.components)

    def inverse(self):
        return NatTransformation(self.target, self.source,
                                 tuple(f.inverse() for f in self.components), check=False)

    def compose(self, inner):
        """Vertical composite ``self . inner``."""
        return NatTransformation(inner.source, self.target,
                                 tuple(f.compose(g) for f, g in zip(self.components, inner.components)),
                                 check=False)

    @classmethod
    def identity(cls, F):
        return cls(F, F, tuple(AbHom.identity(G) for G in F.groups), check=False)


def whisker(psi, i):
    """``psi i``: the components ``psi[i(a)]`` as a transformation of pulled-back functors."""
    return NatTransformation(pullback_functor(i, psi.source), pullback_functor(i, psi.target),
                             tuple(psi.components[i(a)] for a in range(i.domain.size)),
                             check=False)


def _enumerate(S, T, choices):
    M = S.base
    if S.base != T.base:
        raise StructureError("source and target functors live on different monoids")
    order = [M.unit] + [a for a in range(M.size) if a != M.unit]
    psi = [None] * M.size
    out = []

    def ok(k):
        a = order[k]
        done = order[:k + 1]
        for x, y in product(done, range(M.size)):
            xy = M.table[x][y]
            if a not in (x, xy) or psi[xy] is None:
                continue
            if not _same(psi[xy].compose(S.action[x][y]), T.action[x][y].compose(psi[x])):
                return False
        return True

    def rec(k):
        if k == M.size:
            out.append(NatTransformation(S, T, tuple(psi), check=False))
            return
        a = order[k]
        for f in choices(S.groups[a], T.groups[a]):
            psi[a] = f
            if ok(k):
                rec(k + 1)
        psi[a] = None

    rec(0)
    return out


def enumerate_nat_isos(S, T):
    """All natural isomorphisms ``S -> T``, in a fixed deterministic order.

    Components are chosen unit first; each naturality square is checked as
    soon as both of its components are fixed.
    """
    return _enumerate(S, T, isos)


def enumerate_nat_transformations(S, T):
    """All natural transformations ``S -> T`` (components need not be invertible)."""
    return _enumerate(S, T, homs)
