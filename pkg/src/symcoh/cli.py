"""Command-line interface.

Exit codes: 0 when the answer is positive (valid, zero, equivalent, all axioms
pass), 1 when it is negative (nonzero, not equivalent, an axiom fails), and 2
for input that does not parse or is rejected by a module check.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import __version__
from .abelian import FinAbGroup
from .coeffs import constant_functor
from .cochains import SymCochain
from .errors import CapExceeded, StructureError
from .files import (
    InputError, cochain_from_json, cochain_to_json, dumps, functor_data_from_json,
    functor_from_json, groupoid_from_json, groupoid_to_json, load, monoid_from_json,
    monoid_to_json, witness_to_json,
)

OK, NEGATIVE, INVALID = 0, 1, 2
DEFAULT_SEED = 0
DEFAULT_MACLANE_GROUPS = ("2", "3", "4", "2,2")


class _Out:
    def __init__(self, fmt, stream):
        self.fmt, self.stream, self.report = fmt, stream, {}

    def line(self, text):
        if self.fmt == "text":
            print(text, file=self.stream)

    def set(self, key, value):
        self.report[key] = value

    def finish(self):
        if self.fmt == "json":
            self.stream.write(dumps(self.report))


def _group(text):
    text = text.strip()
    if text in ("", "0"):
        return FinAbGroup(())
    try:
        orders = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad group {text!r}; expected orders like 2,4") from None
    return FinAbGroup.from_orders(orders)


def _monoid(args):
    if not args.monoid:
        raise InputError("--monoid is required")
    return monoid_from_json(load(args.monoid), args.monoid)


def _coeffs(args, M):
    if args.coeffs and args.constant is not None:
        raise InputError("give either --coeffs or --constant, not both")
    if args.coeffs:
        return functor_from_json(load(args.coeffs), M, args.coeffs)
    if args.constant is not None:
        return constant_functor(M, _group(args.constant))
    raise InputError("--coeffs or --constant is required")


def _cochain(path, F, degree=None):
    return cochain_from_json(load(path), F, path, degree)


def _labels(M, t):
    return [M.elements[x] for x in t]


def _write(args, text):
    if args.out:
        tmp = args.out + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, args.out)
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------------

def cmd_validate(args, out):
    M = _monoid(args)
    out.line(f"monoid: valid ({M.size} elements)")
    out.set("monoid", "valid")
    F = None
    if args.coeffs or args.constant is not None:
        F = _coeffs(args, M)
        out.line("coefficients: valid")
        out.set("coefficients", "valid")
    for path in args.cochain or []:
        if F is None:
            raise InputError("validating a cochain needs --coeffs or --constant")
        c = _cochain(path, F, args.degree)
        out.line(f"cochain {path}: valid symmetric {c.degree}-cochain")
        out.set(f"cochain:{path}", "valid")
    if args.groupoid:
        for path in args.groupoid:
            groupoid_from_json(load(path), path)
            out.line(f"groupoid {path}: valid")
            out.set(f"groupoid:{path}", "valid")
    return OK


def cmd_cohomology(args, out):
    from .cohomology import DEFAULT_CAP, brute_force_cohomology, cohomology_group
    M = _monoid(args)
    F = _coeffs(args, M)
    degrees = [args.degree] if args.degree else [1, 2, 3]
    nonzero = False
    results = {}
    for n in degrees:
        if args.method == "brute":
            try:
                r = brute_force_cohomology(n, M, F, args.cap or DEFAULT_CAP)
            except CapExceeded as exc:
                raise StructureError(str(exc)) from None
        else:
            r = cohomology_group(n, M, F)
        nonzero |= r.H.order > 1
        line = f"H^{n} = {r.H}"
        entry = {"H": list(r.H.invariant_factors)}
        if args.sizes:
            line += f"  (|Z| = {r.Z.order}, |B| = {r.B.order})"
            entry.update(Z=r.Z.order, B=r.B.order)
        out.line(line)
        if args.reps:
            if args.method == "brute":
                raise InputError("--reps needs --method snf")
            entry["reps"] = [cochain_to_json(g) for g in r.generators]
            for g in r.generators:
                out.line(dumps(cochain_to_json(g)).rstrip())
        results[str(n)] = entry
    out.set("cohomology", results)
    return NEGATIVE if nonzero else OK


def cmd_cohomologous(args, out):
    from .cohomology import is_cohomologous
    M = _monoid(args)
    F = _coeffs(args, M)
    if not args.cochain or len(args.cochain) != 2:
        raise InputError("cohomologous needs exactly two --cochain files")
    h1, h2 = (_cochain(p, F) for p in args.cochain)
    for p, h in zip(args.cochain, (h1, h2)):
        if h.degree not in (2, 3):
            raise InputError(f"{p}: cohomologous test is for degrees 2 and 3")
        if not h.is_cocycle():
            raise StructureError(f"{p}: not a cocycle")
    g = is_cohomologous(h1, h2)
    if g is None:
        out.line("not cohomologous")
        out.set("cohomologous", False)
        return NEGATIVE
    out.line("cohomologous; witness:")
    out.line(dumps(cochain_to_json(g)).rstrip())
    out.set("cohomologous", True)
    out.set("witness", cochain_to_json(g))
    return OK


def cmd_crossed_product(args, out):
    from .groupoids import crossed_product
    M = _monoid(args)
    F = _coeffs(args, M)
    g = _cochain(args.cochain[0], F, 2) if args.cochain else SymCochain.zero(2, F)
    E, report = crossed_product(M, F, g, args.cap) if args.cap else crossed_product(M, F, g)
    if report:
        law, w = report[0]
        labels = [f"({','.join(map(str, u))};{M.elements[a]})" for u, a in w]
        out.line(f"not a commutative monoid: {law} fails at {tuple(labels)}")
        out.set("monoid", None)
        out.set("failure", {"law": law, "witness": labels})
        return NEGATIVE
    data = monoid_to_json(E.as_monoid())
    out.line(f"commutative monoid with {len(data['elements'])} elements")
    out.set("monoid", data)
    if args.out:
        _write(args, dumps(data))
    elif out.fmt == "text":
        out.line(dumps(data).rstrip())
    return OK


def cmd_build_s(args, out):
    from .groupoids import build_S
    M = _monoid(args)
    F = _coeffs(args, M)
    h = _cochain(args.cochain[0], F, 3) if args.cochain else SymCochain.zero(3, F)
    data = groupoid_to_json(build_S(M, F, h))
    if args.out:
        _write(args, dumps(data))
        out.line(f"wrote {args.out}")
    elif out.fmt == "text":
        out.line(dumps(data).rstrip())
    out.set("groupoid", data)
    return OK


def _groupoids(args, count):
    paths = args.groupoid or []
    if len(paths) != count:
        raise InputError(f"expected {count} --groupoid file(s), got {len(paths)}")
    return [groupoid_from_json(load(p), p) for p in paths]


def cmd_coherence(args, out):
    from .groupoids import check_coherence
    (S,) = _groupoids(args, 1)
    report = check_coherence(S)
    for r in report:
        w = "" if r.witness is None else f" at {tuple(_labels(S.base, r.witness))}"
        note = f" ({r.note})" if r.note else ""
        out.line(f"{r.axiom}: {r.status}{w}{note}")
    out.set("axioms", [r.to_json(S.base) for r in report])
    return OK if all(r.passed for r in report) else NEGATIVE


def cmd_functor_check(args, out):
    from .groupoids import check_monoidal_functor
    S, S2 = _groupoids(args, 2)
    if not args.functor:
        raise InputError("--functor is required")
    Fd = functor_data_from_json(load(args.functor), S, S2, args.functor)
    report = check_monoidal_functor(Fd, S, S2)
    for r in report:
        w = "" if r.witness is None else f" at {tuple(_labels(S.base, r.witness))}"
        out.line(f"{r.axiom}: {r.status}{w}")
    invertible = Fd.i.is_bijective() and Fd.psi.is_invertible()
    out.line(f"invertible: {'yes' if invertible else 'no'}")
    out.set("axioms", [r.to_json(S.base) for r in report])
    out.set("invertible", invertible)
    return OK if all(r.passed for r in report) else NEGATIVE


def cmd_classify(args, out):
    from .classify import (
        CocycleTriple, DEFAULT_BRUTE_CAP, brute_force_equivalence, decide_equivalence,
    )
    from .files import functor_data_to_json
    from .groupoids import extract_cocycle
    S, S2 = _groupoids(args, 2)
    L, R = (CocycleTriple(*extract_cocycle(x)) for x in (S, S2))
    if args.method == "brute":
        try:
            Fd = brute_force_equivalence(L, R, args.cap or DEFAULT_BRUTE_CAP)
        except CapExceeded as exc:
            raise StructureError(str(exc)) from None
        data = None if Fd is None else functor_data_to_json(Fd)
    else:
        w = decide_equivalence(L, R)
        data = None if w is None else witness_to_json(w)
    out.set("equivalent", data is not None)
    out.set("witness", data)
    if data is None:
        out.line("not equivalent")
        return NEGATIVE
    out.line("equivalent; witness:")
    out.line(dumps(data).rstrip())
    return OK


def cmd_maclane(args, out):
    from .classify import maclane_report
    groups = args.coeff_group or list(DEFAULT_MACLANE_GROUPS)
    rows = maclane_report(args.max_order, [_group(s) for s in groups])
    allzero = True
    entries = []
    for G, A, H in rows:
        allzero &= H.order == 1
        out.line(f"G = {G}, A = {A}: H^3 = {H}")
        entries.append({"G": list(G.invariant_factors), "A": list(A.invariant_factors),
                        "H3": list(H.invariant_factors)})
    out.set("rows", entries)
    out.line("all zero" if allzero else "nonzero groups found")
    return OK if allzero else NEGATIVE


def cmd_deligne(args, out):
    from .classify import deligne_invariants
    (S,) = _groupoids(args, 1)
    d = deligne_invariants(S)
    out.line(f"G = {d.G}")
    out.line(f"A = {d.A}")
    out.set("G", list(d.G.invariant_factors))
    out.set("A", list(d.A.invariant_factors))
    if d.witness is None:
        out.line("no trivializing cochain found")
        out.set("witness", None)
        return NEGATIVE
    out.line("trivializing 2-cochain: " + dumps(cochain_to_json(d.witness)).rstrip())
    out.set("witness", cochain_to_json(d.witness))
    return OK


def cmd_gen_corpus(args, out):
    from .corpus import gen_corpus
    if not args.out:
        raise InputError("--out DIR is required")
    index = gen_corpus(args.max_monoid_order, args.max_group_order, args.out)
    out.line(f"wrote {len(index)} entries to {args.out}")
    out.set("entries", len(index))
    return OK


COMMANDS = {
    "validate": (cmd_validate, "check monoid, coefficient, cochain and groupoid files"),
    "cohomology": (cmd_cohomology, "compute H^n for n = 1, 2, 3"),
    "cohomologous": (cmd_cohomologous, "decide whether two cocycles have the same class"),
    "crossed-product": (cmd_crossed_product, "build the crossed product monoid of a 2-cochain"),
    "build-s": (cmd_build_s, "build the skeletal groupoid of a 3-cochain"),
    "coherence": (cmd_coherence, "check every coherence axiom of a groupoid"),
    "functor-check": (cmd_functor_check, "check symmetric monoidal functor data"),
    "classify": (cmd_classify, "decide equivalence of two groupoids"),
    "maclane": (cmd_maclane, "check vanishing of H^3 over abelian groups"),
    "deligne": (cmd_deligne, "compute the invariants (G, A) of a Picard groupoid"),
    "gen-corpus": (cmd_gen_corpus, "write the test corpus of monoids and coefficients"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="symcoh", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--monoid", metavar="PATH")
        s.add_argument("--coeffs", metavar="PATH")
        s.add_argument("--constant", metavar="ORDERS",
                       help="constant coefficients, e.g. 2 or 2,2 (0 for the trivial group)")
        s.add_argument("--cochain", metavar="PATH", action="append")
        s.add_argument("--groupoid", metavar="PATH", action="append")
        s.add_argument("--functor", metavar="PATH")
        s.add_argument("--degree", type=int, choices=(1, 2, 3))
        s.add_argument("--method", choices=("snf", "brute"), default="snf")
        s.add_argument("--cap", type=int)
        s.add_argument("--reps", action="store_true")
        s.add_argument("--sizes", action="store_true")
        s.add_argument("--seed", type=int, default=DEFAULT_SEED)
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--out", metavar="PATH")
        s.add_argument("--max-order", type=int, default=8)
        s.add_argument("--coeff-group", metavar="ORDERS", action="append")
        s.add_argument("--max-monoid-order", type=int, default=3)
        s.add_argument("--max-group-order", type=int, default=3)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    if args.cap is not None and args.cap < 1:
        print("error: --cap must be positive", file=stderr)
        return INVALID
    random.seed(args.seed)
    out = _Out(args.format, stdout)
    func = COMMANDS[args.command][0]
    try:
        code = func(args, out)
    except (StructureError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        if args.format == "json":
            stdout.write(dumps({"error": str(exc)}))
        return INVALID
    out.finish()
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
