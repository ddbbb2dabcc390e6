"""Newton series: the soft sequence of new elements of a functor at zero,
the analytic functor it generates, and the transposes between maps out of
an analytic functor and maps into that sequence."""

from __future__ import annotations

import itertools

from .analytic import (SymmetricSequence, analytic_value, identity_values, sequence_category,
                       slot_map)
from .errors import ActionEscapesNewElements, NaturalityError, NotNew, NotTense
from .funcalc import AnalyticSoft, evaluate, evaluate_nat
from .presheaf import NatTrans, is_pullback_square, sum_map, sum_of_reps, terminal, yoneda_map
from .prof import ProfMorphism


def _drop(seq, keep):
    return tuple(seq[i] for i in keep)


def subsum_inclusion(base, seq, keep):
    """``Q(seq restricted to keep) -> Q(seq)`` for an increasing index tuple ``keep``."""
    return sum_map(base, seq, _drop(seq, keep), keep, tuple(base.identity(seq[i]) for i in keep))


def new_elements_at_zero(F, seq):
    """``{b: new elements of F(Q(seq))(b)}``."""
    base = F.dom
    ambient = evaluate(F, sum_of_reps(base, seq))
    old = {b: set() for b in F.cod.objects}
    n = len(seq)
    for j in range(n):
        keep = tuple(i for i in range(n) if i != j)
        inc = evaluate_nat(F, subsum_inclusion(base, seq, keep))
        for b, comp in inc.components.items():
            old[b] |= set(comp.values())
    return ambient, {b: [x for x in ambient.elems[b] if x not in old[b]] for b in F.cod.objects}


def new_element_sequence(F, max_arity=3):
    """The soft sequence whose ``(seq, b)`` cell is the set of new elements
    of ``F(Q(seq))(b)``, acted on by ``F`` of slot maps."""
    base, B = F.dom, F.cod
    cat = sequence_category("soft", base, max_arity)
    ambients, cells = {}, {}
    for x in cat.objects:
        ambients[x], new = new_elements_at_zero(F, x)
        for b in B.objects:
            cells[x, b] = new[b]
    members = {k: set(v) for k, v in cells.items()}
    left = {}
    for m in cat.morphisms:
        if cat.is_identity(m):
            continue
        if not any(cells[m.dst, b] for b in B.objects):
            continue
        fm = evaluate_nat(F, slot_map(base, m))
        for b in B.objects:
            table = {}
            for p in cells[m.dst, b]:
                y = fm.components[b][p]
                if y not in members[m.src, b]:
                    raise ActionEscapesNewElements(m, p)
                table[p] = y
            left[m, b] = table
    right = {(x, g): {p: ambients[x].action[g][p] for p in cells[x, B.src(g)]}
             for x in cat.objects for g in B.morphisms if not B.is_identity(g)}
    seq = SymmetricSequence("soft", base, B, max_arity, cells, left, right, check=False)
    seq.functor = F
    seq.ambients = ambients
    return seq


def newton_functor(F, max_arity=3):
    """The analytic functor generated by the new-element sequence of ``F``."""
    return AnalyticSoft(new_element_sequence(F, max_arity))


class TransFamily:
    """A natural transformation between functor expressions, given by its
    components at whatever presheaves are asked for."""

    def __init__(self, source, target, component):
        self.source, self.target = source, target
        self._component = component
        self._cache = {}

    def at(self, phi):
        if phi not in self._cache:
            self._cache[phi] = self._component(phi)
        return self._cache[phi]


def transpose_up(u, F):
    """``u: S -> new_element_sequence(F)`` to ``t: analytic(S) -> F`` with
    ``t[p, phi] = F(phi)(u(p))``."""
    S = u.src

    def component(phi):
        val = analytic_value(S, phi)
        target = evaluate(F, phi)
        maps = {}
        comps = {}
        for b, q in val.quotients.items():
            comp = {}
            for r, members in q.members.items():
                outs = set()
                for x, p, vals in members:
                    if (x, vals) not in maps:
                        maps[x, vals] = evaluate_nat(F, yoneda_map(phi, x, vals))
                    outs.add(maps[x, vals].components[b][u.components[x, b][p]])
                if len(outs) != 1:
                    raise AssertionError(f"transpose not well defined on {r!r}")
                comp[r] = outs.pop()
            comps[b] = comp
        return NatTrans(val.presheaf, target, comps, check=False)

    return TransFamily(AnalyticSoft(S), F, component)


def is_tense_family(t, S, max_arity):
    """Pullback test on every inclusion of a subsum into ``Q(seq)``."""
    base = S.base
    cat = sequence_category("soft", base, max_arity)
    G = AnalyticSoft(S)
    for x in cat.objects:
        n = len(x)
        for r in range(n):
            for keep in itertools.combinations(range(n), r):
                mu = subsum_inclusion(base, x, keep)
                top = evaluate_nat(G, mu)
                bottom = evaluate_nat(t.target, mu)
                if not is_pullback_square(top, t.at(mu.src), t.at(mu.dst), bottom):
                    return False, (x, keep)
    return True, None


def transpose_down(t, S, F, max_arity=3, require_tense=True):
    """``t: analytic(S) -> F`` to ``u: S -> new_element_sequence(F)`` with
    ``u(p) = t[p, id]``."""
    base = S.base
    target = new_element_sequence(F, max_arity)
    if require_tense:
        ok, witness = is_tense_family(t, S, max_arity)
        if not ok:
            raise NotTense(F, witness)
    comps = {}
    for (x, b), ps in S.cells.items():
        if not ps:
            comps[x, b] = {}
            continue
        q = sum_of_reps(base, x)
        val = analytic_value(S, q)
        tq = t.at(q)
        new = set(target.cells[x, b])
        comp = {}
        for p in ps:
            y = tq.components[b][val.rep(b, (x, p, identity_values(base, x)))]
            if y not in new:
                raise NotNew(f"{p!r} at {x!r} is sent to an old element")
            comp[p] = y
        comps[x, b] = comp
    return ProfMorphism(S, target, comps, check=True)


def unit_map(S):
    """``p`` goes to the class of ``(p, id)`` in ``analytic(S)(Q(seq))``."""
    base = S.base
    comps = {}
    for (x, b), ps in S.cells.items():
        if ps:
            val = analytic_value(S, sum_of_reps(base, x))
            comps[x, b] = {p: val.rep(b, (x, p, identity_values(base, x))) for p in ps}
    return comps


def check_unit_iso(S):
    """Whether the unit ``S -> new_element_sequence(analytic(S))`` is an
    equivariant bijection in every cell."""
    D = new_element_sequence(AnalyticSoft(S), S.max_arity)
    unit = unit_map(S)
    report = {"bijective": True, "equivariant": True, "cells": {}}
    for k, ps in S.cells.items():
        image = [unit[k][p] for p in ps] if ps else []
        ok = set(image) == set(D.cells[k]) and len(set(image)) == len(image)
        report["cells"][k] = (len(ps), len(D.cells[k]))
        if not ok:
            report["bijective"] = False
    if report["bijective"]:
        try:
            ProfMorphism(S, D, {k: unit.get(k, {}) for k in S.cells}, check=True)
        except NaturalityError:
            report["equivariant"] = False
    report["ok"] = report["bijective"] and report["equivariant"]
    report["sequence"] = D
    return report


def counit(F, max_arity=3):
    """``analytic(new_element_sequence(F)) -> F``."""
    D = new_element_sequence(F, max_arity)
    ident = ProfMorphism(D, D, {k: {p: p for p in ps} for k, ps in D.cells.items()}, check=False)
    return transpose_up(ident, F), D


def default_test_presheaves(base, max_arity):
    cat = sequence_category("soft", base, max_arity)
    return [sum_of_reps(base, x) for x in cat.objects] + [terminal(base)]


def check_counit_iso(F, max_arity=3, tests=None):
    """Report, for each test presheaf, whether the counit is an iso, and
    whether the comonad is idempotent (the unit of the new-element sequence
    is an iso)."""
    eps, D = counit(F, max_arity)
    tests = default_test_presheaves(F.dom, max_arity) if tests is None else tests
    statuses = []
    for phi in tests:
        c = eps.at(phi)
        mono, epi = c.is_mono(), c.is_epi()
        statuses.append("iso" if mono and epi else "mono" if mono else "epi" if epi else "neither")
    unit = check_unit_iso(D)
    return {
        "statuses": statuses,
        "iso": all(s == "iso" for s in statuses),
        "idempotent": unit["ok"],
        "sequence": D,
    }


def sequence_transformation(m):
    """``analytic(m): analytic(S) -> analytic(S2)`` for ``m: S -> S2``."""
    S, S2 = m.src, m.dst

    def component(phi):
        src, dst = analytic_value(S, phi), analytic_value(S2, phi)
        comps = {b: {r: dst.rep(b, (r[0], m.components[r[0], b][r[1]], r[2])) for r in xs}
                 for b, xs in src.presheaf.elems.items()}
        return NatTrans(src.presheaf, dst.presheaf, comps, check=False)

    return TransFamily(AnalyticSoft(S), AnalyticSoft(S2), component)
