"""Command line entry point: ``fdcalc <command> ...``.

All inputs are JSON files (``-`` reads stdin); all results go to stdout as
JSON with sorted keys. Exit status is 0 on success, 1 when a check fails or
a computation is refused, 2 on usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .errors import FdcalcError, SchemaError, UnknownSuite
from .funcalc import (AnalyticSoft, core, describe, higher_difference, jacobian, partial_difference,
                      tense_certify, tensor_value)
from .newton import check_counit_iso, check_unit_iso, default_test_presheaves, new_element_sequence
from .prof import compose, left_hom, right_hom
from .suites import SUITES, render, resolve_seed, run_suite


class UsageError(Exception):
    pass


def _read(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError("", f"{path} is not JSON: {e}") from None


def _load(path, loader):
    return loader(_read(path))


def _object(cat, text):
    """Resolve an object named on the command line."""
    names = {ser.key_str(a): a for a in cat.objects}
    if text in names:
        return names[text]
    try:
        value = ser.from_json(json.loads(text))
    except json.JSONDecodeError:
        value = None
    if value is not None and ser.key_str(value) in names:
        return names[ser.key_str(value)]
    raise UsageError(f"unknown object {text!r}; objects are {', '.join(names)}")


def certificate_json(cert):
    return {"node": describe(cert.node), "rule": cert.rule,
            "children": [certificate_json(c) for c in cert.children]}


def _emit(doc):
    sys.stdout.write(ser.dumps(doc) + "\n")


# -- commands -------------------------------------------------------------------------

def cmd_validate(args):
    doc = _read(args.file)
    try:
        kind = args.kind or ser.detect_kind(doc)
        value = ser.LOADERS[kind](doc)
    except SchemaError as e:
        _emit({"valid": False, "pointer": e.pointer, "message": str(e)})
        return 1
    out = {"valid": True, "kind": kind}
    if kind == "functor":
        try:
            out["certificate"] = certificate_json(tense_certify(value))
        except FdcalcError as e:
            out["certificate"] = None
            out["notTense"] = str(e)
    _emit(out)
    return 0


def cmd_compose(args):
    Q = _load(args.outer, ser.profunctor_from_json)
    P = _load(args.inner, ser.profunctor_from_json)
    _emit(ser.profunctor_to_json(compose(Q, P), witness=True))
    return 0


def cmd_tensor(args):
    P = _load(args.profunctor, ser.profunctor_from_json)
    phi = _load(args.presheaf, ser.presheaf_from_json)
    tv = tensor_value(P, phi)
    doc = ser.presheaf_to_json(tv.presheaf)
    doc["witness"] = {ser.key_str(b): {ser.key_str(r): [ser.to_json(m) for m in ms]
                                       for r, ms in q.members.items()}
                      for b, q in tv.quotients.items() if q.members}
    _emit(doc)
    return 0


def cmd_hom(args):
    X = _load(args.first, ser.profunctor_from_json)
    Y = _load(args.second, ser.profunctor_from_json)
    result = left_hom(X, Y, args.bound) if args.side == "left" else right_hom(X, Y, args.bound)
    _emit(ser.profunctor_to_json(result))
    return 0


def cmd_core(args):
    F = _load(args.functor, ser.functor_from_json)
    _emit(ser.profunctor_to_json(core(F)))
    return 0


def cmd_diff(args):
    F = _load(args.functor, ser.functor_from_json)
    phi = _load(args.at, ser.presheaf_from_json)
    cert = tense_certify(F)
    a = _object(F.dom, args.object)
    sub = partial_difference(F, a, phi)
    _emit({"difference": ser.subobject_to_json(sub), "certificate": certificate_json(cert)})
    return 0


def cmd_jacobian(args):
    F = _load(args.functor, ser.functor_from_json)
    phi = _load(args.at, ser.presheaf_from_json)
    cert = tense_certify(F)
    J = jacobian(F, phi)
    _emit({"jacobian": ser.profunctor_to_json(J),
           "ambients": {ser.key_str(a): ser.presheaf_to_json(x) for a, x in J.ambients.items()},
           "certificate": certificate_json(cert)})
    return 0


def cmd_higher_diff(args):
    F = _load(args.functor, ser.functor_from_json)
    phi = _load(args.at, ser.presheaf_from_json)
    cert = tense_certify(F)
    seq = tuple(_object(F.dom, s) for s in args.sequence.split(",") if s != "")
    sub = higher_difference(F, seq, phi)
    _emit({"sequence": [ser.to_json(a) for a in seq], "difference": ser.subobject_to_json(sub),
           "certificate": certificate_json(cert)})
    return 0


def cmd_newton(args):
    F = _load(args.functor, ser.functor_from_json)
    n = args.max_arity
    checks = [args.check] if args.check else ["unit", "counit", "idempotent"]
    D = new_element_sequence(F, n)
    out = {"functor": describe(F), "maxArity": n,
           "cells": {ser.pair_str(x, b): len(ps) for (x, b), ps in D.cells.items() if ps},
           "sequence": ser.sequence_to_json(D)}
    ok = True
    if "unit" in checks:
        S = F.seq if isinstance(F, AnalyticSoft) and F.seq.max_arity == n else D
        rep = check_unit_iso(S)
        out["unit"] = {"bijective": rep["bijective"], "equivariant": rep["equivariant"],
                       "cells": {ser.pair_str(*k): list(v) for k, v in rep["cells"].items() if any(v)}}
        ok = ok and rep["ok"]
    if "counit" in checks or "idempotent" in checks:
        rep = check_counit_iso(F, n)
        tests = default_test_presheaves(F.dom, n)
        if "counit" in checks:
            out["counit"] = {"iso": rep["iso"],
                             "witnesses": [{"at": ser.presheaf_to_json(phi), "status": s}
                                           for phi, s in zip(tests, rep["statuses"])]}
            if isinstance(F, AnalyticSoft):
                ok = ok and rep["iso"]
        if "idempotent" in checks:
            out["idempotent"] = rep["idempotent"]
            ok = ok and rep["idempotent"]
    out["ok"] = ok
    _emit(out)
    return 0 if ok else 1


def _chain_instance(args):
    from .chain import check_chain_laws
    F = _load(args.F, ser.functor_from_json)
    G = _load(args.G, ser.functor_from_json)
    H = _load(args.H, ser.functor_from_json) if args.H else None
    phi = _load(args.at, ser.presheaf_from_json)
    rep = check_chain_laws(F, G, phi, H=H)
    laws = {k: v for k, v in rep.items() if k not in ("rule", "ok")}
    return {"suite": "chain-rule", "instance": {"F": describe(F), "G": describe(G),
                                                "H": describe(H) if H else None},
            "laws": {k: {"pass": int(v), "fail": int(not v)} for k, v in sorted(laws.items())},
            "ok": rep["ok"]}


def _bounds(args):
    return {"cases": args.cases, "max_objects": args.max_objects, "max_elems": args.max_elems,
            "max_arity": args.max_arity}


def cmd_verify(args):
    if not args.suites:
        raise UsageError("name at least one suite")
    if args.F or args.G:
        if args.suites != ["chain-rule"] or not (args.F and args.G and args.at):
            raise UsageError("--F/--G/--at apply to chain-rule only and need all three")
        report = _chain_instance(args)
        _emit(report)
        return 0 if report["ok"] else 1
    seed = resolve_seed(args.seed)
    reports = [run_suite(name, seed, **_bounds(args)) for name in args.suites]
    for r in reports:
        print(render(r), file=sys.stderr)
    _emit(reports[0] if len(reports) == 1 else {"suites": reports, "ok": all(r["ok"] for r in reports)})
    return 0 if all(r["ok"] for r in reports) else 1


def cmd_report(args):
    names = args.suites or list(SUITES)
    seed = resolve_seed(args.seed)
    reports = [run_suite(name, seed, **_bounds(args)) for name in names]
    for r in reports:
        print(render(r), file=sys.stderr)
    summary = {r["suite"]: "pass" if r["ok"] else "fail" for r in reports}
    _emit({"seed": seed, "summary": summary, "suites": reports, "ok": all(r["ok"] for r in reports)})
    return 0 if all(r["ok"] for r in reports) else 1


# -- parser ------------------------------------------------------------------------------

def _suite_flags(p):
    p.add_argument("--seed", type=int, help="random seed (default: $FDCALC_SEED or 0)")
    p.add_argument("--cases", type=int, help="instances per suite")
    p.add_argument("--max-objects", type=int)
    p.add_argument("--max-elems", type=int)
    p.add_argument("--max-arity", type=int)


def build_parser():
    parser = argparse.ArgumentParser(prog="fdcalc", description="Finite difference calculus for "
                                     "functors between presheaf categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check a JSON document")
    p.add_argument("file")
    p.add_argument("--kind", choices=sorted(ser.LOADERS))
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("compose", help="compose two profunctors, outer first")
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("tensor", help="tensor a profunctor with a presheaf")
    p.add_argument("profunctor")
    p.add_argument("presheaf")
    p.set_defaults(run=cmd_tensor)

    p = sub.add_parser("hom", help="left or right hom of two profunctors")
    p.add_argument("side", choices=["left", "right"])
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--bound", type=int, default=10 ** 6)
    p.set_defaults(run=cmd_hom)

    p = sub.add_parser("core", help="profunctor of values at representables")
    p.add_argument("--functor", required=True)
    p.set_defaults(run=cmd_core)

    p = sub.add_parser("diff", help="partial difference in one direction")
    p.add_argument("--functor", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--object", required=True)
    p.set_defaults(run=cmd_diff)

    p = sub.add_parser("jacobian", help="all partial differences as a profunctor")
    p.add_argument("--functor", required=True)
    p.add_argument("--at", required=True)
    p.set_defaults(run=cmd_jacobian)

    p = sub.add_parser("higher-diff", help="difference along a sequence of objects")
    p.add_argument("--functor", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--sequence", required=True, help="comma separated object names")
    p.set_defaults(run=cmd_higher_diff)

    p = sub.add_parser("newton", help="new-element sequence and its unit/counit checks")
    p.add_argument("--functor", required=True)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--check", choices=["unit", "counit", "idempotent"])
    p.set_defaults(run=cmd_newton)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", metavar="suite", help=", ".join(SUITES))
    _suite_flags(p)
    p.add_argument("--F")
    p.add_argument("--G")
    p.add_argument("--H")
    p.add_argument("--at")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("report", help="run every suite and summarize")
    p.add_argument("--suites", nargs="*")
    _suite_flags(p)
    p.set_defaults(run=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.run(args)
    except (UsageError, UnknownSuite) as e:
        print(f"fdcalc: {e}", file=sys.stderr)
        return 2
    except SchemaError as e:
        _emit({"error": "SchemaError", "pointer": e.pointer, "message": str(e)})
        return 2
    except FdcalcError as e:
        _emit({"error": type(e).__name__, "message": str(e)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
