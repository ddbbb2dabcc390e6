"""Verification suites: seeded random instances run through law checks.

Every check compares two independently computed routes (a direct
construction against a formula, a brute-force enumeration, or an explicit
bijection), so a suite can fail without any internal assertion firing.
"""

from __future__ import annotations

import itertools
import math
import os

from .analytic import (analytic_value, derived_sequence, diverse_factorize, free_sequence, is_diverse,
                       map_values, sequence_category, slot_map, soften)
from .chain import check_chain_laws, tangent_compose
from .errors import FdcalcError, SizeGuardExceeded, UnknownSuite
from .fincat import concat_morphisms, discrete_category
from .fixtures import ARR, D2, ONE, fibred_product_profunctor
from .funcalc import (AnalyticSoft, AnalyticStrict, Compose, Identity, Linear, Monomial, Product, Sum,
                      evaluate, evaluate_nat, iterated_difference_expr, nested_to_flat, new_elements,
                      partial_difference, permute_flat, difference_value, preserves_binary_sums)
from .generators import Generator
from .newton import (check_counit_iso, check_unit_iso, new_element_sequence, sequence_transformation,
                     transpose_down, transpose_up, default_test_presheaves)
from .order import UnionFind
from .presheaf import (Presheaf, boolean_factorize, compose_nat, coproduct, hom_set, is_complemented,
                       is_pi0_surjective, iter_hom, representable, yoneda_map)
from .prof import (ProfMorphism, Tensor, associator, compose, curry_left, curry_right, left_hom,
                   left_unitor, prof_hom_set, right_hom, right_unitor, uncurry_left, uncurry_right)
from .serialize import to_doc

DEFAULTS = {"max_objects": 3, "max_elems": 3, "max_arity": 3}


def resolve_seed(seed=None):
    if seed is not None:
        return int(seed)
    return int(os.environ.get("FDCALC_SEED", "0"))


def _doc(x):
    try:
        return to_doc(x)
    except Exception:
        return repr(x)


def _bijection(mapping, domain, codomain):
    """``mapping`` restricted to ``domain`` is a bijection onto ``codomain``."""
    image = [mapping[x] for x in domain]
    return len(set(image)) == len(image) and set(image) == set(codomain)


def _iso(m):
    return all(_bijection(m.components[k], m.src.cells[k], m.dst.cells[k]) for k in m.src.cells)


def _small_base(gen, max_objects=2):
    choices = [ONE, ARR, D2]
    if max_objects >= 2:
        choices.append(gen.discrete(gen.rng.randint(1, max_objects)))
    return gen.rng.choice(choices)


# -- prof-laws ----------------------------------------------------------------------

def _coend_oracle(Q, P):
    """Composite cardinalities, glued along every morphism rather than generators."""
    A, B, C = P.src, P.dst, Q.dst
    sizes = {}
    for a in A.objects:
        for c in C.objects:
            uf = UnionFind((b, x, y) for b in B.objects for x in P.cells[a, b] for y in Q.cells[b, c])
            for g in B.morphisms:
                b, b2 = B.src(g), B.dst(g)
                for x in P.cells[a, b]:
                    for y in Q.cells[b2, c]:
                        uf.union((b2, P.right[a, g][x], y), (b, x, Q.left[g, c][y]))
            sizes[a, c] = len(uf.classes()[1])
    return sizes


def prof_laws_case(gen, i, bounds):
    k = bounds["max_objects"]
    A, B, C = (discrete_category([f"{p}{j}" for j in range(gen.rng.randint(1, k))]) for p in "abc")
    P = gen.discrete_profunctor(A, B, bounds["max_elems"], "p")
    Q = gen.discrete_profunctor(B, C, bounds["max_elems"], "q")
    R = gen.discrete_profunctor(A, C, bounds["max_elems"], "r")
    n = lambda X, x, y: len(X.cells[x, y])
    laws = {}
    QP = compose(Q, P)
    laws["matrix_product"] = all(n(QP, a, c) == sum(n(Q, b, c) * n(P, a, b) for b in B.objects)
                                 for a in A.objects for c in C.objects)
    QR = left_hom(Q, R)
    laws["left_hom_formula"] = all(n(QR, a, b) == math.prod(n(R, a, c) ** n(Q, b, c) for c in C.objects)
                                   for a in A.objects for b in B.objects)
    RP = right_hom(R, P)
    laws["right_hom_formula"] = all(n(RP, b, c) == math.prod(n(R, a, c) ** n(P, a, b) for a in A.objects)
                                    for b in B.objects for c in C.objects)
    # the same laws over categories with arrows
    X = gen.category(("one", "arr", "preorder"))
    Y = gen.category(("one", "arr", "d2"))
    P2 = gen.profunctor(X, Y, 3)
    Q2 = gen.profunctor(Y, X, 3)
    R2 = gen.profunctor(X, X, 3)
    Q2P2 = compose(Q2, P2)
    laws["coend_oracle"] = {k: len(v) for k, v in Q2P2.cells.items()} == _coend_oracle(Q2, P2)
    laws["associator_iso"] = _iso(associator(R2, Q2, P2))
    laws["unitors_iso"] = _iso(left_unitor(P2)) and _iso(right_unitor(P2))
    alphas = prof_hom_set(Q2P2, R2, bound=5000)
    if alphas:
        alpha = gen.rng.choice(alphas)
        beta_l = curry_left(alpha, Q2, P2)
        beta_r = curry_right(alpha, Q2, P2)
        laws["curry_round_trip"] = (uncurry_left(beta_l, Q2, R2) == alpha
                                    and uncurry_right(beta_r, P2, R2) == alpha)
    betas = prof_hom_set(P2, left_hom(Q2, R2), bound=5000)
    if betas:
        beta = gen.rng.choice(betas)
        laws["uncurry_round_trip"] = curry_left(uncurry_left(beta, Q2, R2), Q2, P2) == beta
    return laws, {"P": P, "Q": Q, "R": R, "P2": P2, "Q2": Q2, "R2": R2}


# -- boolean-factorization --------------------------------------------------------

def _fill_ins(u, v, a, b):
    """Diagonals ``d`` with ``d . u = a`` and ``v . d = b`` for a square ``v a = b u``."""
    return [d for d in hom_set(u.dst, v.src) if compose_nat(d, u) == a and compose_nat(v, d) == b]


def boolean_factorization_case(gen, i, bounds):
    cat = gen.category(("one", "arr", "d2", "preorder", "monoid"))
    X = gen.presheaf(cat, bounds["max_elems"], prefix="x")
    Y = gen.presheaf(cat, bounds["max_elems"], prefix="y")
    t = gen.nat_trans(X, Y)
    if t is None:
        X = Presheaf(cat, {}, {})
        t = hom_set(X, Y)[0]
    e, m = boolean_factorize(t)
    laws = {
        "factors": compose_nat(m, e) == t,
        "left_pi0_surjective": is_pi0_surjective(e),
        "right_complemented_mono": m.is_mono() and is_complemented(m.image()),
    }
    # orthogonality against the factorization of a second map into Y
    Z = gen.presheaf(cat, bounds["max_elems"], prefix="z")
    s = gen.nat_trans(Z, Y)
    unique = True
    if s is not None:
        _, v = boolean_factorize(s)
        for a in hom_set(X, v.src):
            b = m
            if compose_nat(v, a) != compose_nat(b, e):
                continue
            if len(_fill_ins(e, v, a, b)) != 1:
                unique = False
    fills = _fill_ins(e, m, e, m)
    laws["fill_in_unique"] = unique and len(fills) == 1
    return laws, {"t": t}


# -- delta-rules ----------------------------------------------------------------------

def _subset(sub):
    return {b: set(xs) for b, xs in sub.subset.items()}


def delta_rules_case(gen, i, bounds):
    base = _small_base(gen)
    phi = gen.presheaf(base, bounds["max_elems"])
    a = gen.rng.choice(base.objects)
    kinds = ("identity", "constant", "linear", "monomial", "analytic")
    F = gen.functor(base, depth=2, kinds=kinds)
    G = gen.functor(base, depth=2, kinds=kinds)
    H = gen.functor(base, depth=0, kinds=kinds)
    laws = {}
    tag_a = lambda h: (1, h)

    # identity: the new elements are exactly the tagged representable
    d = partial_difference(Identity(base), a, phi)
    rep = representable(base, a)
    laws["identity"] = all(_bijection({h: tag_a(h) for h in rep.elems[b]}, rep.elems[b], d.subset[b])
                           for b in base.objects)

    # linear: p in P(a, b) goes to the class of (a, (1, id_a), p)
    C = gen.rng.choice([ONE, ARR, D2])
    P = gen.profunctor(base, C, 3)
    dv = difference_value(Linear(P), a, phi)
    T = Tensor(P, dv.shifted)
    ida = base.identity(a)
    laws["linear"] = all(_bijection({p: T.rep(c, (a, (1, ida), p)) for p in P.cells[a, c]},
                                    P.cells[a, c], dv.complement.subset[c]) for c in C.objects)

    # sum: tagged union
    dF, dG = partial_difference(F, a, phi), partial_difference(G, a, phi)
    dS = partial_difference(Sum(F, G), a, phi)
    laws["sum"] = _subset(dS) == {b: {(0, x) for x in dF.subset[b]} | {(1, y) for y in dG.subset[b]}
                                  for b in base.objects}

    # product: a pair is new iff some coordinate is new; three-way classification
    def product_rule(parts):
        dvs = [difference_value(Fi, a, phi) for Fi in parts]
        whole = partial_difference(_product(parts), a, phi)
        ok = True
        for b in base.objects:
            new = [set(v.complement.subset[b]) for v in dvs]
            amb = [v.ambient.elems[b] for v in dvs]
            expected = {x for x in itertools.product(*amb) if any(x[j] in new[j] for j in range(len(x)))}
            got = {_flatten(x, len(parts)) for x in whole.subset[b]}
            counts = sum(math.prod(len(new[j]) if j in S else len(amb[j]) - len(new[j])
                                   for j in range(len(parts)))
                         for r in range(1, len(parts) + 1)
                         for S in itertools.combinations(range(len(parts)), r))
            ok = ok and got == expected and counts == len(got)
        return ok

    laws["product"] = product_rule([F, G])
    laws["finite_product"] = product_rule([F, G, H])

    # naturality of the classification along t: phi -> psi
    psi = gen.presheaf(base, bounds["max_elems"], prefix="w")
    t = gen.nat_trans(phi, psi)
    if t is not None:
        laws["product_natural"] = _classification_natural(F, G, a, t)

    # profunctor scalar rule
    dvF = difference_value(F, a, phi)
    inner = dvF.complement.as_presheaf()
    src = Tensor(P, inner)
    dst_val = difference_value(Compose(Linear(P), F), a, phi)
    amb = Tensor(P, dvF.ambient)
    table = {c: {r: amb.rep(c, r) for r in src.presheaf.elems[c]} for c in C.objects}
    laws["scalar_profunctor"] = all(_bijection(table[c], src.presheaf.elems[c], dst_val.complement.subset[c])
                                    for c in C.objects) and all(
        len({amb.rep(c, m) for m in src.quotients[c].members[r]}) == 1
        for c in C.objects for r in src.presheaf.elems[c])

    # coproduct-preserving outer functor
    L = Linear(gen.profunctor(base, base, 3))
    outer = Sum(L, Identity(base)) if gen.rng.random() < 0.5 else L
    if preserves_binary_sums(outer):
        g_inc = evaluate_nat(outer, dvF.complement.inclusion())
        dGF = partial_difference(Compose(outer, F), a, phi)
        laws["scalar_functor"] = g_inc.is_mono() and {b: set(g_inc.components[b].values())
                                                      for b in base.objects} == _subset(dGF)

    # the old part and the new part together give everything
    laws["sum_decomposition"] = all(
        _bijection({**{("old", x): dvF.inclusion.components[b][x] for x in dvF.inclusion.src.elems[b]},
                    **{("new", x): x for x in dvF.complement.subset[b]}},
                   [("old", x) for x in dvF.inclusion.src.elems[b]] + [("new", x) for x in dvF.complement.subset[b]],
                   dvF.ambient.elems[b]) for b in base.objects)
    return laws, {"F": F, "G": G, "H": H, "phi": phi, "object": repr(a)}


def _product(parts):
    out = parts[0]
    for p in parts[1:]:
        out = Product(out, p)
    return out


def _flatten(x, n):
    out = []
    for _ in range(n - 1):
        x, last = x
        out.append(last)
    out.append(x)
    return tuple(reversed(out))


def _classification_natural(F, G, a, t):
    base = t.src.base
    shift = lambda m: _shift(m, a)
    moved = evaluate_nat(Product(F, G), shift(t))
    before = [difference_value(X, a, t.src) for X in (F, G)]
    after = [difference_value(X, a, t.dst) for X in (F, G)]
    for b in base.objects:
        for x, y in moved.components[b].items():
            for j in range(2):
                if (x[j] in before[j].complement.subset[b]) != (y[j] in after[j].complement.subset[b]):
                    return False
    return True


def _shift(t, a):
    from .presheaf import coproduct_map, identity_nat
    return coproduct_map([t, identity_nat(representable(t.src.base, a))])


# -- clairaut -----------------------------------------------------------------------------

def clairaut_case(gen, i, bounds):
    base = _small_base(gen)
    phi = gen.presheaf(base, bounds["max_elems"])
    F = gen.functor(base, depth=2, kinds=("identity", "constant", "linear", "monomial", "analytic"))
    n = gen.rng.randint(1, bounds["max_arity"])
    seq = tuple(gen.rng.choice(base.objects) for _ in range(n))
    nested = evaluate(iterated_difference_expr(F, seq), phi)
    to_flat = evaluate_nat(F, nested_to_flat(phi, seq))
    via_nesting = {b: {to_flat.components[b][x] for x in xs} for b, xs in nested.elems.items()}
    direct = _subset(new_elements(F, phi, seq))
    laws = {"iterated_equals_new_elements": via_nesting == direct}
    ok = True
    for perm in itertools.permutations(range(n)):
        permuted = tuple(seq[p] for p in perm)
        other = new_elements(F, phi, permuted)
        iso = evaluate_nat(F, permute_flat(phi, seq, perm))
        ok = ok and {b: {iso.components[b][x] for x in xs} for b, xs in other.subset.items()} == direct
    laws["permutation_invariant"] = ok
    return laws, {"F": F, "phi": phi, "sequence": repr(seq)}


# -- analytic-nabla -----------------------------------------------------------------

def small_presheaves(base, total=3):
    """Every presheaf on a discrete category or on Arr with at most ``total`` elements."""
    out = []
    objs = base.objects
    for sizes in itertools.product(range(total + 1), repeat=len(objs)):
        if sum(sizes) > total:
            continue
        elems = {a: [f"v{a}{j}" for j in range(k)] for a, k in zip(objs, sizes)}
        arrows = [f for f in base.morphisms if not base.is_identity(f)]
        tables = [list(itertools.product(elems[base.dst(f)], repeat=len(elems[base.src(f)])))
                  for f in arrows]
        for choice in itertools.product(*tables):
            action = {f: dict(zip(elems[base.src(f)], img)) for f, img in zip(arrows, choice)}
            try:
                out.append(Presheaf(base, elems, action))
            except FdcalcError:
                continue
    return out


def nabla_bijection(S, a, phi):
    """Whether classes of the derived sequence's analytic functor at ``phi``
    correspond to new elements of ``S`` at ``phi + rep(a)``."""
    D = derived_sequence(S, a)
    dv = difference_value(AnalyticStrict(S), a, phi)
    big = analytic_value(S, dv.shifted)
    small = analytic_value(D, phi)
    ida = S.base.identity(a)
    for b in S.dst.objects:
        table = {}
        for r in small.presheaf.elems[b]:
            images = {big.rep(b, (x + (a,) * n, p, tuple((0, v) for v in vals) + ((1, ida),) * n))
                      for x, (n, p), vals in small.members(b, r)}
            if len(images) != 1:
                return False
            table[r] = images.pop()
        if not _bijection(table, small.presheaf.elems[b], dv.complement.subset[b]):
            return False
    return True


def sym_square_plus_linear(max_arity=3):
    """``X + sym^2 X`` as a strict sequence over the point."""
    cat = sequence_category("strict", ONE, max_arity)
    swap = next(m for m in cat.hom(("*", "*"), ("*", "*")) if m.sigma == (1, 0))
    ident = cat.identity(("*", "*"))
    return free_sequence("strict", ONE, ONE, max_arity, [("x", ("*",), "*"), ("s", ("*", "*"), "*")],
                         [((("*", "*"), "*"), ("s", swap, "id*"), ("s", ident, "id*"))])


def analytic_nabla_case(gen, i, bounds):
    base = gen.rng.choice([ARR, D2])
    S = gen.sequence("strict", base, ONE, max_arity=bounds["max_arity"], max_gens=2)
    laws = {"bijection": all(nabla_bijection(S, a, phi)
                             for phi in small_presheaves(base, bounds["max_elems"]) for a in base.objects)}
    if i == 0:
        X = sym_square_plus_linear(bounds["max_arity"])
        from .fixtures import set_of
        laws["one_object_cardinality"] = all(
            partial_difference(AnalyticStrict(X), "*", set_of(n)).size() == n + 2
            for n in range(0, 3)) and all(nabla_bijection(X, "*", set_of(n)) for n in range(3))
    return laws, {"S": S}


# -- addition-formula ---------------------------------------------------------------

def double_coend(S, phi1, phi2):
    """Classes of ``(x1, x2, p, v1, v2)`` with ``p`` in ``S(x1 x2; b)``, glued
    along both sequence variables separately."""
    cat, base, N = S.src, S.base, S.max_arity
    out = {}
    for b in S.dst.objects:
        uf = UnionFind()
        objs = [(x1, x2) for x1 in cat.objects for x2 in cat.objects if len(x1) + len(x2) <= N]
        for x1, x2 in objs:
            for p in S.cells[x1 + x2, b]:
                for v1 in itertools.product(*(phi1.elems[c] for c in x1)):
                    for v2 in itertools.product(*(phi2.elems[c] for c in x2)):
                        uf.add((x1, x2, p, v1, v2))
        for m in cat.generators:
            for side in (0, 1):
                for x in cat.objects:
                    if len(m.src) + len(x) > N:
                        continue
                    if side == 0:
                        mm, ys, yd, phi = concat_morphisms(base, m, cat.identity(x)), (m.src, x), (m.dst, x), phi1
                    else:
                        mm, ys, yd, phi = concat_morphisms(base, cat.identity(x), m), (x, m.src), (x, m.dst), phi2
                    moving = ys[side]
                    acts = [phi.action[f] for f in m.fs]
                    for q in S.cells[yd[0] + yd[1], b]:
                        p = S.left[mm, b][q]
                        fixed_elems = phi2 if side == 0 else phi1
                        for vals in itertools.product(*(phi.elems[c] for c in moving)):
                            moved = tuple(acts[j][vals[m.sigma[j]]] for j in range(len(m.dst)))
                            for other in itertools.product(*(fixed_elems.elems[c] for c in x)):
                                if side == 0:
                                    uf.union((ys[0], ys[1], p, vals, other), (yd[0], yd[1], q, moved, other))
                                else:
                                    uf.union((ys[0], ys[1], p, other, vals), (yd[0], yd[1], q, other, moved))
        out[b] = uf.classes()[1]
    return out


def addition_case(gen, i, bounds):
    base = gen.rng.choice([ONE, ARR, D2])
    S = gen.sequence("strict", base, ONE, max_arity=bounds["max_arity"], max_gens=2)
    phi1 = gen.presheaf(base, 2, prefix="u")
    phi2 = gen.presheaf(base, 2, prefix="w")
    total = coproduct([phi1, phi2])
    val = analytic_value(S, total)
    oracle = double_coend(S, phi1, phi2)
    ok = True
    for b in S.dst.objects:
        table = {}
        for r, members in oracle[b].items():
            images = {val.rep(b, (x1 + x2, p, tuple((0, v) for v in v1) + tuple((1, v) for v in v2)))
                      for x1, x2, p, v1, v2 in members}
            if len(images) != 1:
                ok = False
                break
            table[r] = images.pop()
        ok = ok and _bijection(table, list(oracle[b]), val.presheaf.elems[b])
    return {"double_coend_bijection": ok}, {"S": S, "phi1": phi1, "phi2": phi2}


# -- newton -------------------------------------------------------------------------------

def _random_prof_map(gen, P, R, limit=500):
    """A random profunctor morphism ``P -> R`` among the first ``limit`` found."""
    try:
        found = list(itertools.islice(iter_hom(P.as_presheaf(), R.as_presheaf()), limit))
    except SizeGuardExceeded:
        return None
    if not found:
        return None
    comps = {k: {} for k in P.cells}
    for (k, x), v in gen.rng.choice(found).items():
        comps[k][x] = v
    return ProfMorphism(P, R, comps)


def newton_unit_case(gen, i, bounds):
    base = gen.rng.choice([ONE, ARR, D2])
    n = gen.rng.randint(1, bounds["max_arity"])
    S = gen.sequence("soft", base, ONE, max_arity=n, max_gens=2, max_cells=60)
    report = check_unit_iso(S)
    laws = {"unit_bijective": report["bijective"], "unit_equivariant": report["equivariant"]}
    # transposes between S -> new elements of F and analytic(S) -> F
    S2 = S if i % 2 == 0 else gen.sequence("soft", base, ONE, max_arity=n, max_gens=2, max_cells=60)
    F = AnalyticSoft(S2)
    u = _random_prof_map(gen, S, new_element_sequence(F, n))
    if u is not None:
        t = transpose_up(u, F)
        u2 = transpose_down(t, S, F, n)
        laws["down_after_up"] = u2 == u
        t2 = transpose_up(u2, F)
        laws["up_after_down"] = all(t2.at(phi) == t.at(phi) for phi in default_test_presheaves(base, n))
    # a transformation that was not built as a transpose
    m = _random_prof_map(gen, S, S2)
    if m is not None:
        t = sequence_transformation(m)
        back = transpose_up(transpose_down(t, S, F, n), F)
        laws["up_after_down_induced"] = all(back.at(phi) == t.at(phi)
                                            for phi in default_test_presheaves(base, n))
    return laws, {"S": S, "S2": S2}


def newton_counit_case(gen, i, bounds):
    base = gen.rng.choice([ONE, ARR])
    n = 2
    kinds = ("identity", "constant", "linear", "monomial", "analytic")
    F = gen.functor(base, depth=1, kinds=kinds)
    if i == 0:
        F = Monomial(fibred_product_profunctor())
    report = check_counit_iso(F, n)
    laws = {"idempotent": report["idempotent"],
            "statuses_reported": len(report["statuses"]) == len(default_test_presheaves(F.dom, n))}
    soft = [N for N in _nodes(F) if isinstance(N, AnalyticSoft)]
    soft.append(AnalyticSoft(gen.sequence("soft", base, ONE, max_arity=n, max_gens=2, max_cells=30)))
    laws["soft_counit_iso"] = all(check_counit_iso(N, n)["iso"] for N in soft)
    return laws, {"F": F, "statuses": report["statuses"]}


def _nodes(F):
    yield F
    for child in ("left", "right", "outer", "inner"):
        sub = getattr(F, child, None)
        if sub is not None and hasattr(sub, "dom"):
            yield from _nodes(sub)


# -- chain-rule --------------------------------------------------------------------

def chain_case(gen, i, bounds):
    base = gen.rng.choice([ONE, ARR, D2])
    kinds = ("identity", "constant", "linear", "monomial", "analytic")
    F = gen.functor(base, depth=2, kinds=kinds)
    G = gen.functor(base, depth=2, kinds=kinds)
    H = gen.functor(base, depth=0, kinds=kinds) if i % 2 == 0 else None
    phi = gen.presheaf(base, 2)
    psi = gen.presheaf(base, 2, prefix="w")
    t = gen.nat_trans(phi, psi)
    report = check_chain_laws(F, G, phi, H=H, maps=[t] if t is not None else [])
    laws = {k: v for k, v in report.items() if k not in ("ok", "rule")}
    _, fibre = tangent_compose(F, G, phi, gen.presheaf(base, 2, prefix="d"))
    laws["tangent_fibre_defined"] = fibre is not None
    return laws, {"F": F, "G": G, "H": H, "phi": phi}


# -- diverse ----------------------------------------------------------------------------

def _relatives_brute(phi, u, v):
    base = phi.base
    for c in base.objects:
        for z in phi.elems[c]:
            hits = [any(phi.action[f][z] == x for f in base.hom(c, a)) for a, x in (u, v)]
            if all(hits):
                return True
    return False


def diverse_case(gen, i, bounds):
    base = gen.rng.choice([ONE, ARR, D2])
    phi = gen.presheaf(base, bounds["max_elems"])
    n = gen.rng.randint(0, bounds["max_arity"])
    seq = tuple(gen.rng.choice(base.objects) for _ in range(n))
    if any(not phi.elems[a] for a in seq):
        seq = tuple(a for a in seq if phi.elems[a])
    vals = tuple(gen.rng.choice(phi.elems[a]) for a in seq)
    t = yoneda_map(phi, seq, vals)
    m, psi = diverse_factorize(t)
    laws = {
        "factors": compose_nat(psi, slot_map(base, m)) == t,
        "surjective_slots": set(m.sigma) == set(range(len(m.src))),
    }
    cseq, cvals = map_values(psi)
    items = list(zip(cseq, cvals))
    laws["diverse"] = is_diverse(psi) and not any(
        _relatives_brute(phi, items[j], items[k]) for j in range(len(items)) for k in range(j + 1, len(items)))
    # diverse exactly when every factorization has a bijective slot map, and
    # no factorization uses fewer summands than the one found
    soft = sequence_category("soft", base, max(len(seq), 1))

    def factorizations(target):
        tseq, _ = map_values(target)
        for c in soft.objects:
            if len(c) > len(tseq):
                continue
            for mm in soft.hom(c, tseq):
                for vs in itertools.product(*(phi.elems[a] for a in c)):
                    p = yoneda_map(phi, c, vs)
                    if compose_nat(p, slot_map(base, mm)) == target:
                        yield mm, p

    laws["fewest_summands"] = min(len(mm.src) for mm, _ in factorizations(t)) == len(m.src)
    laws["characterization"] = all(
        is_diverse(x) == all(len(set(mm.sigma)) == len(mm.sigma) for mm, _ in factorizations(x))
        for x in (t, psi))
    # softening a strict sequence: glue along all morphisms, not generators
    S = gen.sequence("strict", base, ONE, max_arity=2, max_gens=1, max_cells=12)
    soft_S = soften(S)
    strict, soft2 = S.src, soft_S.src
    sizes_ok = True
    for x in soft2.objects:
        uf = UnionFind((c, mm, p) for c in strict.objects for mm in soft2.hom(x, c) for p in S.cells[c, "*"])
        for h in strict.morphisms:
            for mm in soft2.hom(x, h.src):
                for q in S.cells[h.dst, "*"]:
                    uf.union((h.src, mm, S.left[h, "*"][q]), (h.dst, soft2.compose(h, mm), q))
        sizes_ok = sizes_ok and len(uf.classes()[1]) == len(soft_S.cells[x, "*"])
    laws["soften_oracle"] = sizes_ok
    return laws, {"phi": phi, "sequence": repr(seq), "values": repr(vals)}


# -- registry ----------------------------------------------------------------------------

SUITES = {
    "prof-laws": (prof_laws_case, 50,
                  "profunctor composition multiplies cardinalities over discrete bases; "
                  "the closed structure, unitors, associator and currying agree with brute force"),
    "boolean-factorization": (boolean_factorization_case, 100,
                              "every transformation factors as a component-surjective map followed by "
                              "a complemented mono, with unique diagonal fill-ins"),
    "delta-rules": (delta_rules_case, 50,
                    "differences of identity, linear, sum, product and scalar-multiplied functors"),
    "clairaut": (clairaut_case, 30,
                 "iterated differences equal new elements and ignore the order of directions"),
    "analytic-nabla": (analytic_nabla_case, 20,
                       "the difference of an analytic functor is the analytic functor of the "
                       "derived sequence"),
    "addition-formula": (addition_case, 20,
                         "an analytic functor at a sum is the double coend over split sequences"),
    "newton-unit": (newton_unit_case, 30,
                    "a soft sequence is recovered from the new elements of its analytic functor"),
    "newton-counit": (newton_counit_case, 20,
                      "the Newton series of a soft analytic functor is itself; taking new elements "
                      "twice changes nothing"),
    "chain-rule": (chain_case, 20,
                   "the comparison map between Jacobians is well defined, unital, associative "
                   "and natural"),
    "diverse": (diverse_case, 30,
                "maps from sums of representables factor through a diverse map with the fewest summands; "
                "softening agrees with brute force"),
}


def run_suite(name, seed=None, cases=None, **bounds):
    """Run a named suite and return a deterministic report dict."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    case_fn, default_cases, claim = SUITES[name]
    seed = resolve_seed(seed)
    bounds = {**DEFAULTS, **{k: v for k, v in bounds.items() if v is not None}}
    n = default_cases if cases is None else cases
    gen = Generator(seed, **bounds)
    laws, failures = {}, []
    for i in range(n):
        try:
            results, instance = case_fn(gen, i, bounds)
        except FdcalcError as e:
            results, instance = {"raised": False}, {"error": f"{type(e).__name__}: {e}"}
        for law, ok in results.items():
            tally = laws.setdefault(law, {"pass": 0, "fail": 0})
            tally["pass" if ok else "fail"] += 1
            if not ok:
                failures.append({"case": i, "law": law,
                                 "instance": {k: _doc(v) for k, v in instance.items() if v is not None}})
    return {
        "suite": name,
        "checks": claim,
        "seed": seed,
        "bounds": bounds,
        "instances": n,
        "laws": {k: laws[k] for k in sorted(laws)},
        "failures": failures,
        "generator": gen.stats,
        "ok": not failures,
    }


def render(report):
    """A plain-text table for one suite report."""
    lines = [f"suite {report['suite']} (seed {report['seed']}, {report['instances']} instances)",
             f"  checks: {report['checks']}"]
    for law, tally in report["laws"].items():
        mark = "ok  " if not tally["fail"] else "FAIL"
        lines.append(f"  {mark} {law:<32} {tally['pass']:>4} passed {tally['fail']:>4} failed")
    for f in report["failures"][:5]:
        lines.append(f"  counterexample: case {f['case']} law {f['law']}")
    lines.append("  PASS" if report["ok"] else "  FAIL")
    return "\n".join(lines)
