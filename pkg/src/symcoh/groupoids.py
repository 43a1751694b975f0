"""Crossed products, skeletal strictly symmetric groupoids and their axioms.

A skeletal groupoid here has the elements of a monoid ``M`` as objects and
only automorphisms, ``Aut(a) = A[a]``, written additively.  Tensor on objects
is the multiplication of ``M`` and on morphisms ``u_a (x) u_b = b_* u_a + a_* u_b``.
The constraints are tables: ``alpha(x, y, z)`` in ``A[xyz]``, ``gamma(x, y)``
in ``A[xy]`` and ``rho(x)`` in ``A[x]``.  Because every hom-set is an abelian
group of automorphisms, each commutative diagram becomes an equation between
sums, which is how the axioms are checked below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .coeffs import HMFunctor, NatTransformation, pullback_functor
from .cochains import SymCochain, coboundary, is_symmetric
from .errors import CapExceeded, StructureError
from .monoid import MonoidHom, MonoidTable, validate_monoid

__all__ = [
    "CrossedProduct", "crossed_product", "SkelSSMG", "build_S", "AxiomResult",
    "check_coherence", "MonFunctorData", "build_functor", "check_monoidal_functor",
    "check_symmetric_iso", "compose_functors", "CoherencePath", "evaluate_path",
    "apply_move", "normalize_path", "random_word", "random_walk", "parallel_paths",
    "extract_cocycle", "UNIT_LEAF", "DEFAULT_CROSSED_CAP",
]

DEFAULT_CROSSED_CAP = 10_000


def _tensor(F, a, u, b, v):
    """``u (x) v`` for ``u`` in ``A[a]`` and ``v`` in ``A[b]``."""
    G = F.groups[F.base.table[a][b]]
    return G.add(F.act(a, b, u), F.act(b, a, v))


# -- crossed products ---------------------------------------------------------------

class CrossedProduct:
    """Pairs ``(u, a)`` with ``(u,a)(v,b) = (a_* v + b_* u + g(a, b), ab)``."""

    def __init__(self, M, A, g=None, cap=DEFAULT_CROSSED_CAP):
        if g is not None and (g.degree != 2 or g.functor != A):
            raise StructureError("twist must be a 2-cochain over the given coefficients")
        self.base, self.coeffs, self.twist = M, A, g
        size = sum(G.order for G in A.groups)
        if size > cap:
            raise CapExceeded(size, cap)
        self.elements = [(u, a) for a in range(M.size) for u in A.groups[a].elements()]
        self.index = {e: k for k, e in enumerate(self.elements)}
        self.unit = self.index[(A.groups[M.unit].zero(), M.unit)]
        self.table = [[self.index[self.mul(x, y)] for y in self.elements]
                      for x in self.elements]

    def mul(self, x, y):
        (u, a), (v, b) = x, y
        M, A = self.base, self.coeffs
        ab = M.table[a][b]
        w = _tensor(A, a, u, b, v)
        if self.twist is not None:
            w = A.groups[ab].add(w, self.twist(a, b))
        return (w, ab)

    def report(self):
        """Violated monoid laws with witnesses given as ``(u, a)`` pairs."""
        bad = validate_monoid(list(range(len(self.elements))), self.unit, self.table)
        return [(law, tuple(self.elements[i] for i in w)) for law, w in bad]

    def is_commutative_monoid(self):
        return not self.report()

    def as_monoid(self, labels=None):
        M = self.base
        if labels is None:
            labels = [f"({','.join(map(str, u))};{M.elements[a]})" for u, a in self.elements]
        return MonoidTable(tuple(labels), self.unit, self.table)


def crossed_product(M, A, g=None, cap=DEFAULT_CROSSED_CAP):
    """Build the (twisted) crossed product and its monoid-law report."""
    if g is not None:
        ok, bad = is_symmetric(2, g.values, A)
        if not ok:
            raise StructureError(f"twist is not a symmetric 2-cochain: {bad[0]}")
    E = CrossedProduct(M, A, g, cap)
    return E, E.report()


# -- skeletal groupoids -------------------------------------------------------------

def _clean_table(F, arity, table, name):
    M = F.base
    out = {}
    for t, v in (table or {}).items():
        t = (t,) if isinstance(t, int) else tuple(t)
        if len(t) != arity or any(not 0 <= x < M.size for x in t):
            raise StructureError(f"{name} key {t} is not a {arity}-tuple of objects")
        G = F.groups[M.prod(t)]
        if len(v) != G.rank:
            raise StructureError(f"{name} value at {t} does not lie in {G}")
        v = G.reduce(v)
        if any(v):
            out[t] = v
    return out


@dataclass(frozen=True)
class SkelSSMG:
    """Presentation of a skeletal, totally disconnected symmetric monoidal groupoid.

    Missing table entries are zero.  ``assoc`` is keyed by triples, ``sym`` by
    pairs and ``unit_constraint`` by single objects.
    """

    base: MonoidTable
    coeffs: HMFunctor
    assoc: dict = field(default_factory=dict)
    sym: dict = field(default_factory=dict)
    unit_constraint: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.coeffs.base != self.base:
            raise StructureError("automorphism groups are indexed by a different monoid")
        object.__setattr__(self, "assoc", _clean_table(self.coeffs, 3, self.assoc, "assoc"))
        object.__setattr__(self, "sym", _clean_table(self.coeffs, 2, self.sym, "sym"))
        object.__setattr__(self, "unit_constraint",
                           {t[0]: v for t, v in _clean_table(
                               self.coeffs, 1, self.unit_constraint, "unit_constraint").items()})

    def __hash__(self):
        return hash((self.base, self.coeffs, frozenset(self.assoc.items()),
                     frozenset(self.sym.items()), frozenset(self.unit_constraint.items())))

    def group(self, x):
        return self.coeffs.groups[x]

    def alpha(self, x, y, z):
        return self.assoc.get((x, y, z)) or self.group(self.base.prod((x, y, z))).zero()

    def gamma(self, x, y):
        return self.sym.get((x, y)) or self.group(self.base.table[x][y]).zero()

    def rho(self, x):
        return self.unit_constraint.get(x) or self.group(x).zero()

    def tensor(self, a, u, b, v):
        return _tensor(self.coeffs, a, u, b, v)

    def whisker(self, a, u, b):
        """``u (x) 0_b = b_* u``."""
        return self.coeffs.act(a, b, u)


def build_S(M, A, h):
    """The groupoid with ``alpha = h`` and identity symmetry and unit constraints."""
    if h.degree != 3 or h.functor != A or A.base != M:
        raise StructureError("h must be a 3-cochain over the given coefficients")
    return SkelSSMG(M, A, dict(h.values), {}, {})


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    status: str
    witness: tuple = None
    note: str = None

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self, M):
        out = {"axiom": self.axiom, "status": self.status}
        if self.witness is not None:
            out["witness"] = [M.elements[x] for x in self.witness]
        if self.note:
            out["note"] = self.note
        return out


def _first(instances, holds):
    for w in instances:
        if not holds(*w):
            return w
    return None


def _generators(G):
    return [tuple(int(i == j) for i in range(G.rank)) for j in range(G.rank)]


def check_coherence(S):
    """Per-axiom report, one :class:`AxiomResult` per named axiom.

    The names are ``pentagon``, ``hexagon``, ``unit``, ``triangle`` (derived),
    ``symmetry`` (involutive) and ``diagonal`` (``c_{x,x} = 0``).  Also checks naturality of the three constraints against the tensor and the
    derived unit/associativity triangle; if that triangle fails while every
    primary axiom holds, its result carries the note ``inconsistent``.
    """
    M, F = S.base, S.coeffs
    T, one, n = M.table, M.unit, M.size
    act = F.act
    els = range(n)

    def grp(*xs):
        return F.groups[M.prod(xs)]

    def pentagon(x, y, z, t):
        G = grp(x, y, z, t)
        lhs = G.add(S.alpha(x, y, T[z][t]), S.alpha(T[x][y], z, t))
        rhs = G.add(G.add(act(T[T[y][z]][t], x, S.alpha(y, z, t)),
                          S.alpha(x, T[y][z], t)),
                    act(T[T[x][y]][z], t, S.alpha(x, y, z)))
        return lhs == rhs

    def hexagon(x, y, z):
        G = grp(x, y, z)
        lhs = G.add(G.add(act(T[x][z], y, S.gamma(x, z)), S.alpha(y, x, z)),
                    act(T[x][y], z, S.gamma(x, y)))
        rhs = G.add(G.add(S.alpha(y, z, x), S.gamma(x, T[y][z])), S.alpha(x, y, z))
        return lhs == rhs

    def unit(x, y):
        G = grp(x, y)
        lhs = G.add(G.add(act(y, x, S.rho(y)), act(y, x, S.gamma(one, y))), S.alpha(x, one, y))
        return lhs == act(x, y, S.rho(x))

    def triangle(x, y):
        G = grp(x, y)
        return G.add(act(y, x, S.rho(y)), S.alpha(x, y, one)) == S.rho(T[x][y])

    def symmetry(x, y):
        G = grp(x, y)
        return not any(G.add(S.gamma(y, x), S.gamma(x, y)))

    def strict(x):
        return not any(S.gamma(x, x))

    def nat_assoc(a, b, c, k):
        # generator k of one factor against zero in the others
        for pos in range(3):
            objs = (a, b, c)
            G = F.groups[objs[pos]]
            if k >= G.rank:
                continue
            us = [F.groups[o].zero() for o in objs]
            us[pos] = _generators(G)[k]
            left = S.tensor(T[a][b], S.tensor(a, us[0], b, us[1]), c, us[2])
            right = S.tensor(a, us[0], T[b][c], S.tensor(b, us[1], c, us[2]))
            if left != right:
                return False
        return True

    def nat_sym(a, b):
        for u in _generators(F.groups[a]):
            if S.tensor(a, u, b, F.groups[b].zero()) != S.tensor(b, F.groups[b].zero(), a, u):
                return False
        return True

    def nat_unit(a):
        return all(act(a, one, u) == u for u in _generators(F.groups[a]))

    max_rank = max((G.rank for G in F.groups), default=0)
    checks = [
        ("pentagon", product(els, repeat=4), pentagon),
        ("hexagon", product(els, repeat=3), hexagon),
        ("unit", product(els, repeat=2), unit),
        ("symmetry", product(els, repeat=2), symmetry),
        ("diagonal", ((x,) for x in els), strict),
        ("naturality-a", ((a, b, c, k) for a, b, c in product(els, repeat=3)
                          for k in range(max_rank)), nat_assoc),
        ("naturality-c", product(els, repeat=2), nat_sym),
        ("naturality-r", ((x,) for x in els), nat_unit),
    ]
    out = []
    for name, inst, holds in checks:
        w = _first(inst, holds)
        if name == "naturality-a" and w is not None:
            w = w[:3]
        out.append(AxiomResult(name, "pass" if w is None else "fail", w))
    w = _first(product(els, repeat=2), triangle)
    primary = ("pentagon", "hexagon", "unit", "symmetry", "diagonal")
    primary_ok = all(r.passed for r in out if r.axiom in primary)
    note = "inconsistent" if (w is not None and primary_ok) else None
    out.insert(3, AxiomResult("triangle", "pass" if w is None else "fail", w, note))
    return out


def is_coherent(S):
    return all(r.passed for r in check_coherence(S))


# -- symmetric monoidal functors -------------------------------------------------

@dataclass(frozen=True)
class MonFunctorData:
    """A functor between skeletal groupoids: objects by ``i``, morphisms by ``psi``.

    ``psi`` is a transformation from the source coefficients to the target
    coefficients pulled back along ``i``; ``phi[(a, b)]`` lies in the target
    group at ``i(ab)`` and ``phi0`` in the target group at the unit.
    """

    i: MonoidHom
    psi: NatTransformation
    phi: dict
    phi0: tuple

    def __post_init__(self):
        i, psi = self.i, self.psi
        if psi.source.base != i.domain or psi.target.base != i.domain:
            raise StructureError("psi is not indexed by the functor's source monoid")
        F2 = psi.target
        object.__setattr__(self, "phi", _clean_table(F2, 2, self.phi, "phi"))
        G1 = F2.groups[i.domain.unit]
        if len(self.phi0) != G1.rank:
            raise StructureError("phi0 does not lie in the group at the unit")
        object.__setattr__(self, "phi0", G1.reduce(self.phi0))

    def phi_at(self, a, b):
        M = self.i.domain
        return self.phi.get((a, b)) or self.psi.target.groups[M.table[a][b]].zero()


def build_functor(i, psi, g):
    """``phi = g`` and ``phi0 = 0``; morphisms go through ``psi``."""
    if g.degree != 2 or g.functor != psi.target:
        raise StructureError("g must be a 2-cochain over the pulled-back target coefficients")
    return MonFunctorData(i, psi, dict(g.values), psi.target.groups[i.domain.unit].zero())


def check_monoidal_functor(Fd, S, S2, stop_at_first=False):
    """Per-axiom report for naturality and the three functor coherence axioms.

    The associativity axiom is evaluated twice: as the hexagon-shaped diagram
    and rearranged as the cocycle-difference equation
    ``psi h(a,b,c) = h'(ia,ib,ic) + (ia)_* g(b,c) - g(ab,c) + g(a,bc) - (ic)_* g(a,b)``.
    The two evaluations must agree at every triple.
    """
    i, psi = Fd.i, Fd.psi
    if i.domain != S.base or i.codomain != S2.base:
        raise StructureError("object map does not go between the two groupoids")
    if psi.source != S.coeffs:
        raise StructureError("psi does not start at the source automorphism groups")
    M, M2 = S.base, S2.base
    T = M.table
    A2 = S2.coeffs
    if psi.target.groups != tuple(A2.groups[i(a)] for a in range(M.size)):
        raise StructureError("psi does not land in the target automorphism groups")
    els = range(M.size)
    out = []

    def push(a, u):
        return psi.components[a](u)

    def natural(a, b):
        # psi_{ab}(a_* u_b + b_* u_a) = (ia)_* psi_b(u_b) + (ib)_* psi_a(u_a), on generators
        for x, y in ((a, b), (b, a)):
            for u in _generators(S.coeffs.groups[x]):
                lhs = push(T[x][y], S.coeffs.act(x, y, u))
                rhs = A2.act(i(x), i(y), push(x, u))
                if lhs != rhs:
                    return False
        return True

    def assoc_axiom(x, y, z):
        xyz = M.prod((x, y, z))
        G = A2.groups[i(xyz)]
        lhs = G.add(G.add(push(xyz, S.alpha(x, y, z)), Fd.phi_at(T[x][y], z)),
                    A2.act(i(T[x][y]), i(z), Fd.phi_at(x, y)))
        rhs = G.add(G.add(Fd.phi_at(x, T[y][z]), A2.act(i(T[y][z]), i(x), Fd.phi_at(y, z))),
                    S2.alpha(i(x), i(y), i(z)))
        return lhs == rhs

    def cocycle_form(a, b, c):
        abc = M.prod((a, b, c))
        G = A2.groups[i(abc)]
        lhs = push(abc, S.alpha(a, b, c))
        rhs = S2.alpha(i(a), i(b), i(c))
        rhs = G.add(rhs, A2.act(i(T[b][c]), i(a), Fd.phi_at(b, c)))
        rhs = G.sub(rhs, Fd.phi_at(T[a][b], c))
        rhs = G.add(rhs, Fd.phi_at(a, T[b][c]))
        rhs = G.sub(rhs, A2.act(i(T[a][b]), i(c), Fd.phi_at(a, b)))
        return lhs == rhs

    def both(x, y, z):
        p, q = assoc_axiom(x, y, z), cocycle_form(x, y, z)
        if p != q:
            raise AssertionError(f"associativity forms disagree at {(x, y, z)}")
        return p

    def unit_axiom(x):
        G = A2.groups[i(x)]
        lhs = G.add(G.add(push(x, S.rho(x)), Fd.phi_at(x, M.unit)),
                    A2.act(i(M.unit), i(x), Fd.phi0))
        return lhs == S2.rho(i(x))

    def sym_axiom(x, y):
        G = A2.groups[i(T[x][y])]
        lhs = G.add(Fd.phi_at(y, x), S2.gamma(i(x), i(y)))
        rhs = G.add(push(T[x][y], S.gamma(x, y)), Fd.phi_at(x, y))
        return lhs == rhs

    checks = [
        ("naturality", product(els, repeat=2), natural),
        ("functor-associativity", product(els, repeat=3), both),
        ("functor-unit", ((x,) for x in els), unit_axiom),
        ("functor-symmetry", product(els, repeat=2), sym_axiom),
    ]
    for name, inst, holds in checks:
        w = _first(inst, holds)
        out.append(AxiomResult(name, "pass" if w is None else "fail", w))
        if stop_at_first and w is not None:
            break
    return out


def is_monoidal_functor(Fd, S, S2):
    return all(r.passed for r in check_monoidal_functor(Fd, S, S2, stop_at_first=True))


def check_symmetric_iso(theta, Fd, Fd2):
    """Whether ``theta[a]`` (in the target group at ``i(a)``) is a symmetric isomorphism.

    Returns ``(True, None)`` or ``(False, (law, witness))``.  Naturality in
    an abelian automorphism group forces both functors to agree on morphisms.
    """
    if Fd.i.map != Fd2.i.map or Fd.i.domain != Fd2.i.domain:
        return False, ("objects", None)
    M = Fd.i.domain
    i = Fd.i
    A2 = Fd.psi.target
    theta = [A2.groups[a].reduce(theta[a]) for a in range(M.size)]
    for a in range(M.size):
        if Fd.psi.components[a].matrix != Fd2.psi.components[a].matrix:
            return False, ("naturality", (a,))
    T = M.table
    for x, y in product(range(M.size), repeat=2):
        G = A2.groups[T[x][y]]
        lhs = G.add(theta[T[x][y]], Fd.phi_at(x, y))
        # theta_x (x) theta_y = (iy)_* theta_x + (ix)_* theta_y
        rhs = G.add(Fd2.phi_at(x, y), _tensor(A2, x, theta[x], y, theta[y]))
        if lhs != rhs:
            return False, ("tensor", (x, y))
    G = A2.groups[M.unit]
    if G.add(theta[M.unit], Fd.phi0) != Fd2.phi0:
        return False, ("unit", ())
    return True, None


def compose_functors(F2, F1):
    """``F2 . F1`` with ``phi(x,y) = psi2(phi1(x,y)) + phi2(i1 x, i1 y)``."""
    i1, i2 = F1.i, F2.i
    if i1.codomain != i2.domain:
        raise StructureError("functors are not composable")
    i = i2.compose(i1)
    M = i1.domain
    A = F1.psi.source
    A3 = pullback_functor(i1, F2.psi.target)
    comps = tuple(F2.psi.components[i1(a)].compose(F1.psi.components[a]) for a in range(M.size))
    psi = NatTransformation(A, A3, comps, check=False)
    phi = {}
    for x, y in product(range(M.size), repeat=2):
        xy = M.table[x][y]
        G = A3.groups[xy]
        v = G.add(F2.psi.components[i1(xy)](F1.phi_at(x, y)), F2.phi_at(i1(x), i1(y)))
        if any(v):
            phi[(x, y)] = v
    G1 = A3.groups[M.unit]
    phi0 = G1.add(F2.psi.components[i2.domain.unit](F1.phi0), F2.phi0)
    return MonFunctorData(i, psi, phi, phi0)


# -- coherence paths ----------------------------------------------------------------

UNIT_LEAF = "I"


def _is_leaf(w):
    return not isinstance(w, tuple)


def _word_product(M, w):
    if w == UNIT_LEAF:
        return M.unit
    if _is_leaf(w):
        return w
    return M.table[_word_product(M, w[0])][_word_product(M, w[1])]


def _subword(w, pos):
    for p in pos:
        if _is_leaf(w):
            raise StructureError(f"position {pos} does not name a subword")
        w = w[p]
    return w


def _replace(w, pos, new):
    if not pos:
        return new
    p = pos[0]
    if _is_leaf(w):
        raise StructureError(f"position {pos} does not name a subword")
    parts = list(w)
    parts[p] = _replace(w[p], pos[1:], new)
    return tuple(parts)


def _complement(M, w, pos):
    """Product of every leaf outside the subword at ``pos``."""
    r = M.unit
    for p in pos:
        other = w[1 - p]
        r = M.table[r][_word_product(M, other)]
        w = w[p]
    return r


MOVES = ("a", "a-", "c", "r", "r-")


def apply_move(M, w, move, pos):
    """Rewrite ``w`` by one move at ``pos``; returns the new word.

    ``a``: ``(x y) z -> x (y z)``; ``a-`` its inverse; ``c``: ``x y -> y x``;
    ``r``: ``x I -> x``; ``r-``: ``x -> x I``.
    """
    s = _subword(w, pos)
    if move == "a":
        if _is_leaf(s) or _is_leaf(s[0]):
            raise StructureError("a needs a subword of shape (x y) z")
        new = (s[0][0], (s[0][1], s[1]))
    elif move == "a-":
        if _is_leaf(s) or _is_leaf(s[1]):
            raise StructureError("a- needs a subword of shape x (y z)")
        new = ((s[0], s[1][0]), s[1][1])
    elif move == "c":
        if _is_leaf(s):
            raise StructureError("c needs a subword of shape x y")
        new = (s[1], s[0])
    elif move == "r":
        if _is_leaf(s) or s[1] != UNIT_LEAF:
            raise StructureError("r needs a subword of shape x I")
        new = s[0]
    elif move == "r-":
        new = (s, UNIT_LEAF)
    else:
        raise StructureError(f"unknown move {move!r}")
    return _replace(w, pos, new)


def _move_value(S, w, move, pos):
    M = S.base
    s = _subword(w, pos)
    if move in ("a", "a-"):
        x, y, z = ((s[0][0], s[0][1], s[1]) if move == "a" else (s[0], s[1][0], s[1][1]))
        v = S.alpha(*(_word_product(M, t) for t in (x, y, z)))
        sign = 1 if move == "a" else -1
    elif move == "c":
        v = S.gamma(_word_product(M, s[0]), _word_product(M, s[1]))
        sign = 1
    else:
        core = s[0] if move == "r" else s
        v = S.rho(_word_product(M, core))
        sign = 1 if move == "r" else -1
    obj = _word_product(M, s)
    rest = _complement(M, w, pos)
    G = S.group(M.table[obj][rest])
    return G.scale(sign, S.whisker(obj, v, rest))


@dataclass(frozen=True)
class CoherencePath:
    """A start word and a list of ``(move, position)`` steps.

    Words are binary trees: a leaf is an element index (a variable standing
    for that object, repeats allowed) or :data:`UNIT_LEAF`; an inner node is a
    pair ``(left, right)``.  Positions are tuples of 0/1 child choices.
    """

    source: object
    steps: tuple = ()

    def target(self, M):
        w = self.source
        for k, (move, pos) in enumerate(self.steps):
            try:
                w = apply_move(M, w, move, tuple(pos))
            except StructureError as exc:
                raise StructureError(f"step {k}: {exc}") from None
        return w

    def then(self, other):
        return CoherencePath(self.source, tuple(self.steps) + tuple(other.steps))


def evaluate_path(S, path):
    """Sum of the step values: the composite automorphism of the common object."""
    M = S.base
    w = path.source
    total = S.group(_word_product(M, w)).zero()
    G = S.group(_word_product(M, w))
    for k, (move, pos) in enumerate(path.steps):
        pos = tuple(pos)
        try:
            v = _move_value(S, w, move, pos)
            w = apply_move(M, w, move, pos)
        except StructureError as exc:
            raise StructureError(f"step {k}: {exc}") from None
        total = G.add(total, v)
    return total


def _leaves(w):
    if _is_leaf(w):
        return [w]
    return _leaves(w[0]) + _leaves(w[1])


def _find(w, pred, pos=()):
    if pred(w):
        return pos
    if _is_leaf(w):
        return None
    for p in (0, 1):
        r = _find(w[p], pred, pos + (p,))
        if r is not None:
            return r
    return None


def normalize_path(M, w):
    """Steps from ``w`` to its normal form: units removed, right-nested, leaves sorted."""
    steps = []

    def do(move, pos):
        nonlocal w
        w = apply_move(M, w, move, pos)
        steps.append((move, pos))

    # remove unit leaves
    while not _is_leaf(w) and UNIT_LEAF in _leaves(w):
        pos = _find(w, lambda s: not _is_leaf(s) and UNIT_LEAF in s)
        s = _subword(w, pos)
        if s[1] != UNIT_LEAF:
            do("c", pos)
        do("r", pos)
    # right-nest
    while True:
        pos = _find(w, lambda s: not _is_leaf(s) and not _is_leaf(s[0]))
        if pos is None:
            break
        do("a", pos)
    # bubble sort the comb x1 (x2 (x3 ...))
    leaves = _leaves(w)
    n = len(leaves)
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if leaves[k] != UNIT_LEAF and leaves[k] > leaves[k + 1]:
                pos = (1,) * k
                if k == n - 2:
                    do("c", pos)
                else:
                    do("a-", pos)
                    do("c", pos + (0,))
                    do("a", pos)
                leaves[k], leaves[k + 1] = leaves[k + 1], leaves[k]
                changed = True
    return CoherencePath(None, tuple(steps)), w


def random_word(M, rng, leaves=4, unit_prob=0.2):
    """A random bracketing of random elements with occasional unit leaves."""
    items = [UNIT_LEAF if rng.random() < unit_prob else rng.randrange(M.size)
             for _ in range(leaves)]
    while len(items) > 1:
        k = rng.randrange(len(items) - 1)
        items[k:k + 2] = [(items[k], items[k + 1])]
    return items[0]


def _positions(w, pos=()):
    yield pos, w
    if not _is_leaf(w):
        for p in (0, 1):
            yield from _positions(w[p], pos + (p,))


def random_walk(M, w, rng, steps=6, max_leaves=8):
    """A random sequence of applicable moves starting at ``w``."""
    out = []
    for _ in range(steps):
        options = []
        big = len(_leaves(w)) >= max_leaves
        for pos, s in _positions(w):
            if not _is_leaf(s):
                options.append(("c", pos))
                if not _is_leaf(s[0]):
                    options.append(("a", pos))
                if not _is_leaf(s[1]):
                    options.append(("a-", pos))
                if s[1] == UNIT_LEAF:
                    options.append(("r", pos))
            if not big:
                options.append(("r-", pos))
        move, pos = rng.choice(options)
        w = apply_move(M, w, move, pos)
        out.append((move, pos))
    return out, w


def parallel_paths(M, rng, leaves=4, steps=6):
    """Two random paths with the same source and target word."""
    w = random_word(M, rng, leaves)
    paths = []
    targets = []
    for _ in range(2):
        walk, end = random_walk(M, w, rng, steps)
        norm, final = normalize_path(M, end)
        paths.append(CoherencePath(w, tuple(walk) + norm.steps))
        targets.append(final)
    if targets[0] != targets[1]:
        raise AssertionError("normal forms of parallel walks differ")
    return paths[0], paths[1]


# -- extraction -----------------------------------------------------------------------

def extract_cocycle(S):
    """Read ``(M, A, h)`` off a groupoid whose symmetry and unit constraints vanish.

    ``b_* u_a`` is recovered as the whiskering ``u_a (x) 0_b``, which is the
    stored action.  ``h`` is the associativity table and must be a symmetric
    3-cocycle; otherwise the first failed law is reported.
    """
    if S.sym:
        raise StructureError("symmetry constraint is not identically zero")
    if S.unit_constraint:
        raise StructureError("unit constraint is not identically zero")
    M, F = S.base, S.coeffs
    ok, bad = is_symmetric(3, S.assoc, F)
    if not ok:
        law, w = bad
        raise StructureError(
            f"associativity table violates {law} at {tuple(M.elements[x] for x in w)}")
    h = SymCochain(3, F, S.assoc, check=False)
    d = coboundary(h, check=False)
    if not d.is_zero():
        t = min(d.values)
        raise StructureError(
            f"associativity table is not a cocycle: coboundary nonzero at "
            f"{tuple(M.elements[x] for x in t)}")
    return M, F, h
