"""JSON codecs for monoids, coefficient functors, cochains, groupoids and witnesses.

Every ``*_to_json`` returns plain data; :func:`dumps` renders it with sorted
keys so that parsing and re-emitting a canonical file gives identical bytes.
Element tuples are written as labels joined by ``|``.
"""

from __future__ import annotations

import json
from itertools import product

from .abelian import AbHom, FinAbGroup
from .coeffs import HMFunctor, NatTransformation, pullback_functor
from .cochains import SymCochain
from .errors import StructureError
from .groupoids import MonFunctorData, SkelSSMG
from .monoid import MonoidHom, MonoidTable

__all__ = [
    "InputError", "dumps", "loads", "load",
    "monoid_to_json", "monoid_from_json", "functor_to_json", "functor_from_json",
    "cochain_to_json", "cochain_from_json", "groupoid_to_json", "groupoid_from_json",
    "witness_to_json", "witness_from_json", "functor_data_to_json", "functor_data_from_json",
]

SEP = "|"


class InputError(StructureError):
    """A file that does not parse or does not match its schema."""


def dumps(obj):
    return json.dumps(obj, sort_keys=True) + "\n"


def loads(text, where="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return loads(text, path)


def _need(d, key, kind, where):
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    if key not in d:
        raise InputError(f"{where}: missing key {key!r}")
    v = d[key]
    if not isinstance(v, kind):
        raise InputError(f"{where}: {key!r} has the wrong type")
    return v


def _ints(v, where):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InputError(f"{where}: expected a list of integers")
    return v


def _key(M, t):
    return SEP.join(M.elements[x] for x in t)


def _parse_key(M, key, arity, where):
    parts = key.split(SEP)
    if len(parts) != arity:
        raise InputError(f"{where}: key {key!r} does not name {arity} element(s)")
    try:
        return tuple(M.index(p) for p in parts)
    except StructureError as exc:
        raise InputError(f"{where}: {exc}") from None


# -- monoids ----------------------------------------------------------------------------

def monoid_to_json(M):
    return {"elements": list(M.elements), "unit": M.elements[M.unit],
            "table": [list(r) for r in M.label_table()]}


def monoid_from_json(d, where="monoid"):
    elements = _need(d, "elements", list, where)
    unit = _need(d, "unit", str, where)
    table = _need(d, "table", list, where)
    if not elements or not all(isinstance(e, str) and e for e in elements):
        raise InputError(f"{where}: elements must be nonempty strings")
    if len(set(elements)) != len(elements):
        raise InputError(f"{where}: element labels are not unique")
    if any(SEP in e for e in elements):
        raise InputError(f"{where}: element labels may not contain {SEP!r}")
    if len(table) != len(elements) or any(
            not isinstance(r, list) or len(r) != len(elements) for r in table):
        raise InputError(f"{where}: table must be {len(elements)} x {len(elements)}")
    return MonoidTable.from_labels(elements, unit, table)


# -- functors ---------------------------------------------------------------------------

def _default_action(G, H):
    if G == H:
        return AbHom.identity(G)
    if G.order == 1 or H.order == 1:
        return AbHom.zero(G, H)
    return None


def functor_to_json(F):
    M = F.base
    groups = {M.elements[a]: list(G.invariant_factors) for a, G in enumerate(F.groups)}
    action = {}
    for a, b in product(range(M.size), repeat=2):
        f = F.action[a][b]
        dflt = _default_action(f.domain, f.codomain)
        if dflt is None or dflt.matrix != f.matrix:
            action[_key(M, (a, b))] = [list(r) for r in f.matrix]
    return {"groups": groups, "action": action}


def _matrix(v, rows, cols, where):
    if not isinstance(v, list) or len(v) != rows:
        raise InputError(f"{where}: expected {rows} matrix row(s)")
    for r in v:
        _ints(r, where)
        if len(r) != cols:
            raise InputError(f"{where}: expected {cols} column(s) per row")
    return tuple(tuple(r) for r in v)


def functor_from_json(d, M, where="functor"):
    """Parse a functor on ``M``.

    Omitted actions are filled in with the identity when domain and codomain
    are the same group and with the zero map when either is trivial; any
    other omitted action is an error.
    """
    gd = _need(d, "groups", dict, where)
    ad = d.get("action", {}) if isinstance(d, dict) else {}
    if not isinstance(ad, dict):
        raise InputError(f"{where}: 'action' must be an object")
    groups = []
    for e in M.elements:
        if e not in gd:
            raise InputError(f"{where}: no group given at {e!r}")
        try:
            groups.append(FinAbGroup(tuple(_ints(gd[e], f"{where}.groups.{e}"))))
        except StructureError as exc:
            raise InputError(f"{where}.groups.{e}: {exc}") from None
    extra = set(gd) - set(M.elements)
    if extra:
        raise InputError(f"{where}: groups given at unknown elements {sorted(extra)}")
    given = {_parse_key(M, k, 2, f"{where}.action"): v for k, v in ad.items()}
    action = []
    for a in range(M.size):
        row = []
        for b in range(M.size):
            G, H = groups[a], groups[M.table[a][b]]
            if (a, b) in given:
                mat = _matrix(given[(a, b)], H.rank, G.rank, f"{where}.action.{_key(M, (a, b))}")
                try:
                    row.append(AbHom(G, H, mat))
                except (StructureError, ValueError) as exc:
                    raise InputError(f"{where}.action.{_key(M, (a, b))}: {exc}") from None
            else:
                f = _default_action(G, H)
                if f is None:
                    raise InputError(
                        f"{where}: action {_key(M, (a, b))} from {G} to {H} must be given")
                row.append(f)
        action.append(row)
    return HMFunctor(M, groups, action)


# -- cochains ---------------------------------------------------------------------------

def _values_to_json(M, values):
    return {_key(M, t): list(v) for t, v in sorted(values.items())}


def _values_from_json(d, F, arity, where):
    M = F.base
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object")
    out = {}
    for k, v in d.items():
        t = _parse_key(M, k, arity, where)
        if M.unit in t:
            raise InputError(f"{where}: key {k!r} contains the unit")
        out[t] = tuple(_ints(v, f"{where}.{k}"))
    return out


def cochain_to_json(c):
    return {"degree": c.degree, "values": _values_to_json(c.base, c.values)}


def cochain_from_json(d, F, where="cochain", degree=None):
    n = _need(d, "degree", int, where)
    if degree is not None and n != degree:
        raise InputError(f"{where}: expected a degree {degree} cochain, got degree {n}")
    vals = _values_from_json(d.get("values", {}), F, n, f"{where}.values")
    return SymCochain(n, F, vals)


# -- groupoids --------------------------------------------------------------------------

def groupoid_to_json(S):
    M = S.base
    return {
        "monoid": monoid_to_json(M),
        "functor": functor_to_json(S.coeffs),
        "assoc": _values_to_json(M, S.assoc),
        "sym": _values_to_json(M, S.sym),
        "unit_constraint": _values_to_json(M, {(a,): v for a, v in S.unit_constraint.items()}),
    }


def groupoid_from_json(d, where="groupoid"):
    M = monoid_from_json(_need(d, "monoid", dict, where), f"{where}.monoid")
    F = functor_from_json(_need(d, "functor", dict, where), M, f"{where}.functor")

    def table(key, arity):
        raw = d.get(key, {})
        if not isinstance(raw, dict):
            raise InputError(f"{where}: {key!r} must be an object")
        out = {}
        for k, v in raw.items():
            out[_parse_key(M, k, arity, f"{where}.{key}")] = tuple(_ints(v, f"{where}.{key}.{k}"))
        return out
    return SkelSSMG(M, F, table("assoc", 3), table("sym", 2), table("unit_constraint", 1))


# -- functor data and witnesses ---------------------------------------------------------

def _i_to_json(i):
    return {i.domain.elements[a]: i.codomain.elements[i(a)] for a in range(i.domain.size)}


def _i_from_json(d, M, M2, where):
    if not isinstance(d, dict) or set(d) != set(M.elements):
        raise InputError(f"{where}: object map must name every source element")
    return MonoidHom(M, M2, [M2.index(d[e]) for e in M.elements])


def _psi_to_json(psi):
    M = psi.source.base
    return {M.elements[a]: [list(r) for r in f.matrix] for a, f in enumerate(psi.components)}


def _psi_from_json(d, A, A2i, where):
    M = A.base
    if not isinstance(d, dict) or set(d) != set(M.elements):
        raise InputError(f"{where}: psi must give a component at every element")
    comps = []
    for a, e in enumerate(M.elements):
        G, H = A.groups[a], A2i.groups[a]
        mat = _matrix(d[e], H.rank, G.rank, f"{where}.{e}")
        comps.append(AbHom(G, H, mat))
    return NatTransformation(A, A2i, comps)


def witness_to_json(w):
    return {"i": _i_to_json(w.i), "psi": _psi_to_json(w.psi), "g": cochain_to_json(w.g)}


def witness_from_json(d, S, S2, where="witness"):
    """``(i, psi, g)`` between two groupoids, as produced by ``classify``."""
    from .classify import EquivalenceWitness
    i = _i_from_json(_need(d, "i", dict, where), S.base, S2.base, f"{where}.i")
    A2i = pullback_functor(i, S2.coeffs)
    psi = _psi_from_json(_need(d, "psi", dict, where), S.coeffs, A2i, f"{where}.psi")
    g = cochain_from_json(_need(d, "g", dict, where), A2i, f"{where}.g", degree=2)
    return EquivalenceWitness(i, psi, g)


def functor_data_to_json(Fd):
    M = Fd.i.domain
    return {"i": _i_to_json(Fd.i), "psi": _psi_to_json(Fd.psi),
            "phi": _values_to_json(M, Fd.phi), "phi0": list(Fd.phi0)}


def functor_data_from_json(d, S, S2, where="functor"):
    """Functor data with an explicit ``phi`` table, or a witness with ``g``."""
    if isinstance(d, dict) and "g" in d and "phi" not in d:
        return witness_from_json(d, S, S2, where).functor()
    M = S.base
    i = _i_from_json(_need(d, "i", dict, where), M, S2.base, f"{where}.i")
    A2i = pullback_functor(i, S2.coeffs)
    psi = _psi_from_json(_need(d, "psi", dict, where), S.coeffs, A2i, f"{where}.psi")
    raw = _need(d, "phi", dict, where)
    phi = {_parse_key(M, k, 2, f"{where}.phi"): tuple(_ints(v, f"{where}.phi.{k}"))
           for k, v in raw.items()}
    phi0 = tuple(_ints(d.get("phi0", [0] * A2i.groups[M.unit].rank), f"{where}.phi0"))
    return MonFunctorData(i, psi, phi, phi0)
