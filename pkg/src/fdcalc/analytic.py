"""Symmetric sequences and the analytic functors they present.

A symmetric sequence is a profunctor from a truncated sequence category
(strict: permutations; soft: surjections) into a target category. Its
analytic functor sends a presheaf ``phi`` to the coend of
``S(seq; b) x phi(seq_1) x ... x phi(seq_n)``; elements are named by the
smallest triple ``(seq, p, values)`` in their class, which also has the
shortest sequence.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from .errors import EndpointMismatch, FunctorLawError, ModeError
from .fincat import SeqMorphism, concat_morphisms, free_soft, free_symmetric
from .order import UnionFind, canon
from .presheaf import NatTrans, Presheaf, pi0, rep_sequence, sum_of_reps, yoneda_map
from .prof import Profunctor, Quotient

MODES = ("strict", "soft")


@lru_cache(maxsize=64)
def sequence_category(mode, base, max_arity):
    if mode == "strict":
        return free_symmetric(base, max_arity)
    if mode == "soft":
        return free_soft(base, max_arity)
    raise ModeError(f"unknown mode {mode!r}")


class SymmetricSequence(Profunctor):
    def __init__(self, mode, base, target, max_arity, cells, left, right, check=True):
        self.mode, self.base, self.target, self.max_arity = mode, base, target, max_arity
        cat = sequence_category(mode, base, max_arity)
        super().__init__(cat, target, cells, left, right, check=check)

    def arity_sizes(self):
        """Total number of elements in each arity."""
        out = [0] * (self.max_arity + 1)
        for (seq, _), xs in self.cells.items():
            out[len(seq)] += len(xs)
        return out

    def __repr__(self):
        return f"SymmetricSequence({self.mode}, arity<={self.max_arity}, sizes={self.arity_sizes()})"


def _complete_left(cat, target, cells, given):
    """Extend a left action known on generators to every morphism."""
    def known(g, b):
        if (g, b) in given:
            return given[g, b]
        if not cells.get((cat.dst(g), b)):
            return {}
        raise FunctorLawError(f"no action given for generator {g!r} at {b!r}")

    full = {}
    seen = set()
    queue = deque()
    for x in cat.objects:
        i = cat.identity(x)
        seen.add(i)
        queue.append(i)
        for b in target.objects:
            full[i, b] = {p: p for p in cells.get((x, b), ())}
    gens = set(cat.generators)
    while queue:
        m = queue.popleft()
        for g in cat.out(cat.dst(m)):
            if g not in gens:
                continue
            gm = cat.compose(g, m)
            if gm in seen:
                continue
            seen.add(gm)
            queue.append(gm)
            for b in target.objects:
                act_m = full[m, b]
                full[gm, b] = {p: act_m[q] for p, q in known(g, b).items()}
    for key, table in given.items():
        if key in full and full[key] != dict(table):
            raise FunctorLawError(f"given action of {key[0]!r} disagrees with its factorization")
    return full


def symmetric_sequence(mode, base, target, max_arity, cells, seq_action=None, target_action=None,
                       check=True):
    """Build a symmetric sequence, deriving the action of composite
    sequence morphisms from the action on generating ones when needed."""
    cat = sequence_category(mode, base, max_arity)
    seq_action = dict(seq_action or {})
    cells = {k: list(v) for k, v in cells.items()}
    for (seq, b) in cells:
        if len(seq) > max_arity:
            raise FunctorLawError(f"cell at {seq!r} exceeds the maximum arity")
    missing = any((m, b) not in seq_action and cells.get((cat.dst(m), b))
                  for m in cat.morphisms if not cat.is_identity(m) for b in target.objects)
    if missing:
        seq_action = _complete_left(cat, target, cells, seq_action)
    return SymmetricSequence(mode, base, target, max_arity, cells, seq_action,
                             dict(target_action or {}), check=check)


def free_sequence(mode, base, target, max_arity, generators, relations=(), check=True):
    """The symmetric sequence generated by named elements, modulo relations.

    ``generators`` lists ``(name, seq, b)``. Elements are ``(name, m, g)``
    standing for ``g . name . m``. ``relations`` lists pairs of elements in
    the same cell to identify; the identification is closed under both
    actions."""
    cat = sequence_category(mode, base, max_arity)
    B = target
    cells = {}
    for name, seq, b0 in generators:
        for y in cat.objects:
            for m in cat.hom(y, seq):
                for b1 in B.objects:
                    for g in B.hom(b0, b1):
                        cells.setdefault((y, b1), []).append((name, m, g))
    left = {}
    for k in cat.morphisms:
        y = cat.dst(k)
        for b in B.objects:
            left[k, b] = {(n, m, g): (n, cat.compose(m, k), g) for n, m, g in cells.get((y, b), ())}
    right = {}
    for h in B.morphisms:
        for y in cat.objects:
            right[y, h] = {(n, m, g): (n, m, B.compose(h, g)) for n, m, g in cells.get((y, B.src(h)), ())}
    free = SymmetricSequence(mode, base, target, max_arity, cells, left, right, check=False)
    if not relations:
        return free
    q = congruence_quotient_prof(free, relations)
    return SymmetricSequence(mode, base, target, max_arity, q.cells, q.left, q.right, check=check)


def congruence_quotient_prof(P, pairs):
    """Quotient a profunctor by the least congruence containing ``pairs``,
    given as ``((a, b), x, y)``."""
    A, B = P.src, P.dst
    uf = UnionFind((k, x) for k, xs in P.cells.items() for x in xs)
    lgens = [(f, A.src(f), A.dst(f)) for f in A.generators]
    rgens = [(g, B.src(g), B.dst(g)) for g in B.generators]
    work = [((k, x), (k, y)) for k, x, y in pairs]
    while work:
        u, v = work.pop()
        if u[0] != v[0]:
            raise FunctorLawError("relations must identify elements of the same cell")
        if not uf.union(u, v):
            continue
        (a, b), x = u
        y = v[1]
        for f, a2, a1 in lgens:
            if a1 == a:
                t = P.left[f, b]
                work.append((((a2, b), t[x]), ((a2, b), t[y])))
        for g, b1, b2 in rgens:
            if b1 == b:
                t = P.right[a, g]
                work.append((((a, b2), t[x]), ((a, b2), t[y])))
    rep_of, _ = uf.classes()
    name = {kx: r[1] for kx, r in rep_of.items()}
    cells = {k: {name[k, x] for x in xs} for k, xs in P.cells.items()}
    left = {(f, b): {name[(A.dst(f), b), x]: name[(A.src(f), b), y] for x, y in t.items()}
            for (f, b), t in P.left.items()}
    right = {(a, g): {name[(a, B.src(g)), x]: name[(a, B.dst(g)), y] for x, y in t.items()}
             for (a, g), t in P.right.items()}
    return Profunctor(A, B, cells, left, right, check=False)


# -- evaluation --------------------------------------------------------------------

class AnalyticValue:
    """The analytic functor of ``S`` at ``phi``, with class tables."""

    def __init__(self, S, phi):
        if phi.base != S.base:
            raise EndpointMismatch("presheaf base differs from the sequence base")
        cat, B = S.src, S.dst
        self.sequence, self.argument = S, phi
        self.quotients = {}
        tuples = {x: list(itertools.product(*(phi.elems[a] for a in x))) for x in cat.objects}
        for b in B.objects:
            uf = UnionFind()
            for x in cat.objects:
                ps = S.cells[x, b]
                for vals in tuples[x]:
                    for p in ps:
                        uf.add((x, p, vals))
            for m in cat.generators:
                x, c = m.src, m.dst
                qs = S.cells[c, b]
                if not qs:
                    continue
                lm = S.left[m, b]
                acts = [phi.action[f] for f in m.fs]
                for vals in tuples[x]:
                    cvals = tuple(acts[j][vals[m.sigma[j]]] for j in range(len(c)))
                    for q in qs:
                        uf.union((x, lm[q], vals), (c, q, cvals))
            self.quotients[b] = Quotient(uf)
        elems = {b: q.classes() for b, q in self.quotients.items()}
        action = {}
        for g in B.morphisms:
            b, b2 = B.src(g), B.dst(g)
            rep = self.quotients[b2].rep_of
            action[g] = {r: rep[r[0], S.right[r[0], g][r[1]], r[2]] for r in elems[b]}
        self.presheaf = Presheaf(B, elems, action, check=False)

    def rep(self, b, pre):
        return self.quotients[b].rep_of[pre]

    def members(self, b, r):
        return self.quotients[b].members[r]


@lru_cache(maxsize=512)
def analytic_value(S, phi):
    return AnalyticValue(S, phi)


def analytic_eval(S, phi):
    return analytic_value(S, phi).presheaf


def analytic_nat(S, t):
    src, dst = analytic_value(S, t.src), analytic_value(S, t.dst)
    comps = {}
    for b, xs in src.presheaf.elems.items():
        comps[b] = {r: dst.rep(b, (r[0], r[1], tuple(t.components[a][v] for a, v in zip(r[0], r[2]))))
                    for r in xs}
    return NatTrans(src.presheaf, dst.presheaf, comps, check=False)


# -- the slot profunctor ------------------------------------------------------------

@lru_cache(maxsize=32)
def slot_profunctor(mode, base, max_arity):
    """``Q(seq; a)`` is the disjoint union of ``base(seq_i, a)``; it is the
    sum of representables on ``seq`` viewed as a profunctor."""
    cat = sequence_category(mode, base, max_arity)
    cells = {(x, a): [(i, h) for i, xi in enumerate(x) for h in base.hom(xi, a)]
             for x in cat.objects for a in base.objects}
    left = {}
    for m in cat.morphisms:
        for a in base.objects:
            left[m, a] = {(j, h): (m.sigma[j], base.compose(h, m.fs[j])) for j, h in cells[m.dst, a]}
    right = {(x, g): {(i, h): (i, base.compose(g, h)) for i, h in cells[x, base.src(g)]}
             for x in cat.objects for g in base.morphisms}
    return Profunctor(cat, base, cells, left, right, check=False)


def slot_presheaf(base, seq):
    return sum_of_reps(base, seq)


def slot_map(base, m):
    """The map ``Q(m): Q(dst) -> Q(src)`` for a sequence morphism ``m``."""
    src = sum_of_reps(base, m.dst)
    dst = sum_of_reps(base, m.src)
    comps = {a: {(j, h): (m.sigma[j], base.compose(h, m.fs[j])) for j, h in src.elems[a]}
             for a in base.objects}
    return NatTrans(src, dst, comps, check=False)


def identity_values(base, seq):
    """The tuple naming the identity of ``Q(seq)``."""
    return tuple((i, base.identity(a)) for i, a in enumerate(seq))


# -- derived sequences --------------------------------------------------------------

def derived_sequence(S, a):
    """Append copies of ``a`` and take coinvariants of their permutations.

    Cell ``(X, b)`` is the disjoint union over ``n >= 1`` of
    ``S(X + a^n; b)`` modulo permutations of the last ``n`` slots; elements
    are ``(n, p)`` with ``p`` the smallest member of its orbit."""
    if S.mode != "strict":
        raise ModeError("derived sequences are defined for strict sequences")
    N, base, B = S.max_arity, S.base, S.dst
    if N < 1:
        raise ModeError("maximum arity must be at least 1")
    cat = sequence_category("strict", base, N - 1)
    ida = base.identity(a)

    def orbit_min(x, n, b, p):
        y = x + (a,) * n
        k = len(x)
        best = p
        for pi in itertools.permutations(range(n)):
            m = SeqMorphism(y, y, tuple(range(k)) + tuple(k + i for i in pi),
                            tuple(base.identity(c) for c in y))
            q = S.left[m, b][p]
            if canon(q) < canon(best):
                best = q
        return best

    cells = {}
    for x in cat.objects:
        for b in B.objects:
            cells[x, b] = {(n, orbit_min(x, n, b, p))
                           for n in range(1, N - len(x) + 1) for p in S.cells[x + (a,) * n, b]}
    left = {}
    for m in cat.morphisms:
        y, x = m.src, m.dst
        for b in B.objects:
            table = {}
            for n, p in cells[x, b]:
                tail = SeqMorphism((a,) * n, (a,) * n, tuple(range(n)), (ida,) * n)
                mm = concat_morphisms(base, m, tail)
                table[n, p] = (n, orbit_min(y, n, b, S.left[mm, b][p]))
            left[m, b] = table
    right = {}
    for g in B.morphisms:
        b, b2 = B.src(g), B.dst(g)
        for x in cat.objects:
            right[x, g] = {(n, p): (n, orbit_min(x, n, b2, S.right[x + (a,) * n, g][p]))
                           for n, p in cells[x, b]}
    return SymmetricSequence("strict", base, B, N - 1, cells, left, right, check=False)


# -- softening ----------------------------------------------------------------------

def soften(S):
    """Left Kan extension of a strict sequence along the inclusion of the
    permutation category into the surjection category.

    Elements are classes of ``(c, m, p)`` with ``m: seq -> c`` a soft
    morphism and ``p in S(c; b)``."""
    if S.mode != "strict":
        raise ModeError("only strict sequences can be softened")
    base, B, N = S.base, S.dst, S.max_arity
    strict, soft = S.src, sequence_category("soft", base, N)
    quotients = {}
    for x in soft.objects:
        for b in B.objects:
            uf = UnionFind()
            for c in strict.objects:
                ps = S.cells[c, b]
                for m in soft.hom(x, c):
                    for p in ps:
                        uf.add((c, m, p))
            for h in strict.generators:
                c, d = h.src, h.dst
                qs = S.cells[d, b]
                if not qs:
                    continue
                lh = S.left[h, b]
                for m in soft.hom(x, c):
                    hm = soft.compose(h, m)
                    for q in qs:
                        uf.union((c, m, lh[q]), (d, hm, q))
            quotients[x, b] = Quotient(uf)
    cells = {k: q.classes() for k, q in quotients.items()}
    left = {}
    for k in soft.morphisms:
        x2, x = soft.src(k), soft.dst(k)
        for b in B.objects:
            rep = quotients[x2, b].rep_of
            left[k, b] = {r: rep[r[0], soft.compose(r[1], k), r[2]] for r in cells[x, b]}
    right = {}
    for g in B.morphisms:
        b, b2 = B.src(g), B.dst(g)
        for x in soft.objects:
            rep = quotients[x, b2].rep_of
            right[x, g] = {r: rep[r[0], r[1], S.right[r[0], g][r[2]]] for r in cells[x, b]}
    out = SymmetricSequence("soft", base, B, N, cells, left, right, check=False)
    out.quotients = quotients
    return out


def canonical_soft_representative(base, x, multiplicities):
    """The order-preserving surjection morphism ``x -> x_1^m_1 ... x_n^m_n``
    with identity components."""
    dst = tuple(a for a, k in zip(x, multiplicities) for _ in range(k))
    sigma = tuple(i for i, k in enumerate(multiplicities) for _ in range(k))
    return SeqMorphism(x, dst, sigma, tuple(base.identity(a) for a in dst))


# -- diverse maps ---------------------------------------------------------------------

def ancestors(phi, a, x):
    """Every ``(a2, y, f)`` with ``f: a2 -> a`` sending ``y`` to ``x``."""
    base = phi.base
    return [(base.src(f), y, f) for f in base.into(a) for y in phi.elems[base.src(f)]
            if phi.action[f][y] == x]


def _ancestor_set(phi, a, x):
    return {(a2, y) for a2, y, _ in ancestors(phi, a, x)}


def are_relatives(phi, u, v):
    return bool(_ancestor_set(phi, *u) & _ancestor_set(phi, *v))


def map_values(t):
    """The elements ``t(i, id)`` picked out by a map from a sum of representables."""
    seq = rep_sequence(t.src)
    base = t.src.base
    return seq, tuple(t.components[a][(i, base.identity(a))] for i, a in enumerate(seq))


def is_diverse(t):
    seq, vals = map_values(t)
    items = list(zip(seq, vals))
    return not any(are_relatives(t.dst, items[i], items[j])
                   for i in range(len(items)) for j in range(i + 1, len(items)))


def diverse_factorize(t):
    """Factor ``t`` as a diverse map after a soft slot map with the fewest
    summands. Returns ``(m, psi)`` with ``m: c -> seq`` a soft morphism and
    ``psi: Q(c) -> phi`` diverse, so that ``t = psi . Q(m)``."""
    phi = t.dst
    seq, vals = map_values(t)
    n = len(seq)
    cover = {}
    for i, (a, x) in enumerate(zip(seq, vals)):
        for a2, y, f in ancestors(phi, a, x):
            cover.setdefault((a2, y), {}).setdefault(i, f)
    candidates = sorted(cover, key=canon)
    chosen = () if n == 0 else None
    for k in range(1, n + 1):
        if chosen is not None:
            break
        for combo in itertools.combinations(candidates, k):
            if set().union(*(cover[c] for c in combo)) == set(range(n)):
                chosen = combo
                break
    sigma, fs = [], []
    for i in range(n):
        j = next(j for j, c in enumerate(chosen) if i in cover[c])
        sigma.append(j)
        fs.append(cover[chosen[j]][i])
    c = tuple(a2 for a2, _ in chosen)
    m = SeqMorphism(c, seq, tuple(sigma), tuple(fs))
    psi = yoneda_map(phi, c, tuple(y for _, y in chosen))
    return m, psi


def boolean_image_key(phi, seq, vals):
    """Components of ``phi`` met by the values; the Boolean image of the map they name."""
    comps = pi0(phi)
    return frozenset(comps.component(a, x) for a, x in zip(seq, vals))
