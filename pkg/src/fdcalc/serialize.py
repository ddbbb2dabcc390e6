"""JSON encoding of categories, presheaves, profunctors, symmetric
sequences and functor expressions.

Names are JSON scalars or arrays; arrays decode to tuples. Map keys that
name objects, morphisms or elements are strings: a string name is used
as-is and anything else is its compact JSON text. Pairs are written
``"(k1,k2)"``. Decoding resolves keys against the names already declared,
so the encoding never has to be guessed.
"""

from __future__ import annotations

import json

from .analytic import SymmetricSequence, symmetric_sequence
from .errors import FdcalcError, SchemaError
from .fincat import FinCategory, free_soft, free_symmetric
from .fixtures import ARR, COSPAN, D2, ONE
from .funcalc import (AnalyticSoft, AnalyticStrict, Compose, Constant, Delta, Identity, Linear,
                      Monomial, Product, Sum)
from .order import canon, sort_canon
from .presheaf import Presheaf, Subobject
from .prof import Profunctor

NAMED = {"1": ONE, "Arr": ARR, "D2": D2, "Cospan": COSPAN}


def to_json(x):
    if isinstance(x, tuple):
        return [to_json(y) for y in x]
    if isinstance(x, frozenset):
        return [to_json(y) for y in sort_canon(x)]
    return x


def from_json(x):
    if isinstance(x, list):
        return tuple(from_json(y) for y in x)
    return x


def key_str(x):
    if isinstance(x, str):
        return x
    return json.dumps(to_json(x), separators=(",", ":"))


def pair_str(x, y):
    return f"({key_str(x)},{key_str(y)})"


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True)


class _Resolver:
    def __init__(self, names, path, what):
        self.table = {key_str(n): n for n in names}
        self.path, self.what = path, what

    def __call__(self, key, path=None):
        try:
            return self.table[key]
        except KeyError:
            raise SchemaError(path or self.path, f"unknown {self.what} {key!r}") from None


class _PairResolver:
    def __init__(self, xs, ys, path, what):
        self.table = {pair_str(x, y): (x, y) for x in xs for y in ys}
        self.path, self.what = path, what

    def __call__(self, key):
        try:
            return self.table[key]
        except KeyError:
            raise SchemaError(f"{self.path}/{key}", f"unknown {self.what} {key!r}") from None


def _need(doc, field, path, kind=None):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if field not in doc:
        raise SchemaError(f"{path}/{field}", "missing field")
    v = doc[field]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"{path}/{field}", f"expected {kind.__name__}")
    return v


# -- categories -------------------------------------------------------------------

def category_to_json(cat):
    doc = {
        "objects": [to_json(a) for a in cat.objects],
        "morphisms": [{"id": to_json(m), "src": to_json(cat.src(m)), "dst": to_json(cat.dst(m))}
                      for m in cat.morphisms],
        "identities": {key_str(a): to_json(cat.identity(a)) for a in cat.objects},
        "compose": [[to_json(g), to_json(f), to_json(gf)] for (g, f), gf in cat.compose_table().items()],
    }
    if cat.generated:
        g = cat.generated
        doc["generated"] = {"kind": g["kind"], "base": category_ref(g["base"]), "maxArity": g["maxArity"]}
    return doc


def category_ref(cat):
    for name, c in NAMED.items():
        if c is cat:
            return name
    return category_to_json(cat)


def category_from_json(doc, path=""):
    from .fincat import validate_category
    if isinstance(doc, str):
        if doc not in NAMED:
            raise SchemaError(path, f"unknown named category {doc!r}")
        return NAMED[doc]
    if isinstance(doc, dict) and "generated" in doc:
        g = doc["generated"]
        base = category_from_json(_need(g, "base", f"{path}/generated"), f"{path}/generated/base")
        n = _need(g, "maxArity", f"{path}/generated", int)
        kind = _need(g, "kind", f"{path}/generated")
        if kind == "bang":
            return free_symmetric(base, n)
        if kind == "down":
            return free_soft(base, n)
        raise SchemaError(f"{path}/generated/kind", f"unknown kind {kind!r}")
    objects = sort_canon(from_json(a) for a in _need(doc, "objects", path, list))
    morphisms = []
    for i, m in enumerate(_need(doc, "morphisms", path, list)):
        p = f"{path}/morphisms/{i}"
        morphisms.append((from_json(_need(m, "id", p)), from_json(_need(m, "src", p)),
                          from_json(_need(m, "dst", p))))
    morphisms.sort(key=lambda m: canon(m[0]))
    obj = _Resolver(objects, f"{path}/identities", "object")
    ids = {obj(k, f"{path}/identities/{k}"): from_json(v)
           for k, v in _need(doc, "identities", path, dict).items()}
    compose = {}
    for i, t in enumerate(_need(doc, "compose", path, list)):
        if not isinstance(t, list) or len(t) != 3:
            raise SchemaError(f"{path}/compose/{i}", "expected [g, f, g.f]")
        g, f, gf = (from_json(x) for x in t)
        compose[g, f] = gf
    try:
        return validate_category(objects, morphisms, ids, compose)
    except FdcalcError as e:
        raise SchemaError(path, str(e)) from e


# -- presheaves -------------------------------------------------------------------

def presheaf_to_json(phi):
    base = phi.base
    return {
        "base": category_ref(base),
        "elems": {key_str(a): [to_json(x) for x in phi.elems[a]] for a in base.objects},
        "action": {key_str(f): {key_str(x): to_json(y) for x, y in phi.action[f].items()}
                   for f in base.morphisms if not base.is_identity(f)},
    }


def presheaf_from_json(doc, path="", base=None):
    if base is None:
        base = category_from_json(_need(doc, "base", path), f"{path}/base")
    obj = _Resolver(base.objects, f"{path}/elems", "object")
    elems = {}
    for k, xs in _need(doc, "elems", path, dict).items():
        if not isinstance(xs, list):
            raise SchemaError(f"{path}/elems/{k}", "expected a list")
        elems[obj(k, f"{path}/elems/{k}")] = [from_json(x) for x in xs]
    mor = _Resolver(base.morphisms, f"{path}/action", "morphism")
    action = {}
    for k, table in doc.get("action", {}).items():
        f = mor(k, f"{path}/action/{k}")
        if not isinstance(table, dict):
            raise SchemaError(f"{path}/action/{k}", "expected an object")
        src = _Resolver(elems.get(base.src(f), []), f"{path}/action/{k}", "element")
        dst = _Resolver(elems.get(base.dst(f), []), f"{path}/action/{k}", "element")
        action[f] = {}
        for x, y in table.items():
            where = f"{path}/action/{k}/{x}"
            action[f][src(x, where)] = dst(key_str(from_json(y)), where)
    try:
        return Presheaf(base, elems, action)
    except FdcalcError as e:
        raise SchemaError(path, str(e)) from e


def subobject_to_json(sub):
    return {"parent": presheaf_to_json(sub.parent),
            "subset": {key_str(a): [to_json(x) for x in sort_canon(xs)] for a, xs in sub.subset.items()}}


def subobject_from_json(doc, path=""):
    parent = presheaf_from_json(_need(doc, "parent", path), f"{path}/parent")
    obj = _Resolver(parent.base.objects, f"{path}/subset", "object")
    subset = {obj(k): {from_json(x) for x in xs} for k, xs in _need(doc, "subset", path, dict).items()}
    return Subobject(parent, subset)


# -- profunctors ------------------------------------------------------------------

def _cells_to_json(P):
    return {pair_str(a, b): [to_json(x) for x in xs] for (a, b), xs in P.cells.items() if xs}


def _actions_to_json(P):
    A, B = P.src, P.dst
    left = {pair_str(f, b): {key_str(x): to_json(y) for x, y in t.items()}
            for (f, b), t in P.left.items() if t and not A.is_identity(f)}
    right = {pair_str(a, g): {key_str(x): to_json(y) for x, y in t.items()}
             for (a, g), t in P.right.items() if t and not B.is_identity(g)}
    return left, right


def profunctor_to_json(P, witness=False):
    if isinstance(P, SymmetricSequence):
        return sequence_to_json(P)
    left, right = _actions_to_json(P)
    doc = {"src": category_ref(P.src), "dst": category_ref(P.dst), "cells": _cells_to_json(P),
           "leftAction": left, "rightAction": right}
    if witness and getattr(P, "quotients", None):
        doc["witness"] = {pair_str(a, c): {key_str(r): [to_json(m) for m in ms]
                                           for r, ms in q.members.items()}
                          for (a, c), q in P.quotients.items() if q.members}
    return doc


def _decode_cells_and_actions(doc, path, A, B, cells_key, left_key, right_key):
    cell = _PairResolver(A.objects, B.objects, f"{path}/{cells_key}", "cell")
    cells = {}
    for k, xs in _need(doc, cells_key, path, dict).items():
        cells[cell(k)] = [from_json(x) for x in xs]

    def decode(field, xs, ys, src_cell):
        out = {}
        res = _PairResolver(xs, ys, f"{path}/{field}", "action key")
        for k, table in doc.get(field, {}).items():
            key = res(k)
            names = _Resolver(cells.get(src_cell(key), []), f"{path}/{field}/{k}", "element")
            out[key] = {names(x): from_json(y) for x, y in table.items()}
        return out

    left = decode(left_key, A.morphisms, B.objects, lambda k: (A.dst(k[0]), k[1]))
    right = decode(right_key, A.objects, B.morphisms, lambda k: (k[0], B.src(k[1])))
    return cells, left, right


def profunctor_from_json(doc, path=""):
    if isinstance(doc, dict) and "mode" in doc:
        return sequence_from_json(doc, path)
    A = category_from_json(_need(doc, "src", path), f"{path}/src")
    B = category_from_json(_need(doc, "dst", path), f"{path}/dst")
    cells, left, right = _decode_cells_and_actions(doc, path, A, B, "cells", "leftAction", "rightAction")
    try:
        return Profunctor(A, B, cells, left, right)
    except FdcalcError as e:
        raise SchemaError(path, str(e)) from e


def sequence_to_json(S):
    left, right = _actions_to_json(S)
    return {"mode": S.mode, "base": category_ref(S.base), "target": category_ref(S.target),
            "maxArity": S.max_arity, "cells": _cells_to_json(S),
            "seqAction": left, "targetAction": right}


def sequence_from_json(doc, path=""):
    mode = _need(doc, "mode", path)
    if mode not in ("strict", "soft"):
        raise SchemaError(f"{path}/mode", "mode must be strict or soft")
    base = category_from_json(_need(doc, "base", path), f"{path}/base")
    target = category_from_json(_need(doc, "target", path), f"{path}/target")
    n = _need(doc, "maxArity", path, int)
    cat = free_soft(base, n) if mode == "soft" else free_symmetric(base, n)
    cells, left, right = _decode_cells_and_actions(doc, path, cat, target, "cells", "seqAction",
                                                   "targetAction")
    try:
        return symmetric_sequence(mode, base, target, n, cells, left, right)
    except FdcalcError as e:
        raise SchemaError(path, str(e)) from e


# -- functor expressions ----------------------------------------------------------

def functor_to_json(F):
    if isinstance(F, Identity):
        return {"kind": "identity", "cat": category_ref(F.cat)}
    if isinstance(F, Constant):
        return {"kind": "constant", "value": presheaf_to_json(F.value), "source": category_ref(F.source)}
    if isinstance(F, Linear):
        return {"kind": "linear", "prof": profunctor_to_json(F.prof)}
    if isinstance(F, Monomial):
        return {"kind": "monomial", "prof": profunctor_to_json(F.prof)}
    if isinstance(F, (AnalyticStrict, AnalyticSoft)):
        return {"kind": "analytic", "seq": sequence_to_json(F.seq)}
    if isinstance(F, (Sum, Product)):
        return {"kind": "sum" if isinstance(F, Sum) else "product",
                "left": functor_to_json(F.left), "right": functor_to_json(F.right)}
    if isinstance(F, Compose):
        return {"kind": "compose", "outer": functor_to_json(F.outer), "inner": functor_to_json(F.inner)}
    if isinstance(F, Delta):
        return {"kind": "delta", "inner": functor_to_json(F.inner), "obj": to_json(F.obj)}
    raise TypeError(F)


def functor_from_json(doc, path=""):
    kind = _need(doc, "kind", path)
    try:
        if kind == "identity":
            return Identity(category_from_json(_need(doc, "cat", path), f"{path}/cat"))
        if kind == "constant":
            return Constant(presheaf_from_json(_need(doc, "value", path), f"{path}/value"),
                            category_from_json(_need(doc, "source", path), f"{path}/source"))
        if kind in ("linear", "monomial"):
            P = profunctor_from_json(_need(doc, "prof", path), f"{path}/prof")
            return Linear(P) if kind == "linear" else Monomial(P)
        if kind == "analytic":
            S = sequence_from_json(_need(doc, "seq", path), f"{path}/seq")
            return AnalyticStrict(S) if S.mode == "strict" else AnalyticSoft(S)
        if kind in ("sum", "product"):
            left = functor_from_json(_need(doc, "left", path), f"{path}/left")
            right = functor_from_json(_need(doc, "right", path), f"{path}/right")
            return Sum(left, right) if kind == "sum" else Product(left, right)
        if kind == "compose":
            return Compose(functor_from_json(_need(doc, "outer", path), f"{path}/outer"),
                           functor_from_json(_need(doc, "inner", path), f"{path}/inner"))
        if kind == "delta":
            inner = functor_from_json(_need(doc, "inner", path), f"{path}/inner")
            obj = _Resolver(inner.dom.objects, f"{path}/obj", "object")(key_str(from_json(doc.get("obj"))))
            return Delta(inner, obj)
    except SchemaError:
        raise
    except FdcalcError as e:
        raise SchemaError(path, str(e)) from e
    raise SchemaError(f"{path}/kind", f"unknown functor kind {kind!r}")


def detect_kind(doc):
    if not isinstance(doc, dict):
        raise SchemaError("", "expected a JSON object")
    if "kind" in doc:
        return "functor"
    if "mode" in doc:
        return "sequence"
    if "cells" in doc:
        return "profunctor"
    if "parent" in doc:
        return "subobject"
    if "elems" in doc:
        return "presheaf"
    if "objects" in doc or "generated" in doc:
        return "category"
    raise SchemaError("", "cannot tell what this document describes")


LOADERS = {
    "category": category_from_json,
    "presheaf": presheaf_from_json,
    "subobject": subobject_from_json,
    "profunctor": profunctor_from_json,
    "sequence": sequence_from_json,
    "functor": functor_from_json,
}


def load_any(doc):
    kind = detect_kind(doc)
    return kind, LOADERS[kind](doc)


def to_doc(x):
    if isinstance(x, FinCategory):
        return category_to_json(x)
    if isinstance(x, Presheaf):
        return presheaf_to_json(x)
    if isinstance(x, Subobject):
        return subobject_to_json(x)
    if isinstance(x, Profunctor):
        return profunctor_to_json(x)
    return functor_to_json(x)
