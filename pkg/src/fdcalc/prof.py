"""Profunctors between finite categories.

A profunctor ``P: A -|-> B`` assigns a set ``P(a, b)`` to each pair of
objects, contravariantly in ``a`` and covariantly in ``b``. Composition is
the coend over the middle category, computed by union-find; classes are
named by their canonically smallest member ``(b, x, y)``.
"""

from __future__ import annotations

import math

from .errors import EndpointMismatch, FunctorLawError, NaturalityError, SizeGuardExceeded
from .fincat import opposite, product_category
from .fixtures import ONE, POINT
from .order import UnionFind, canon, sort_canon
from .presheaf import DEFAULT_BOUND, NatTrans, Presheaf, iter_hom, pi0


class Quotient:
    """Result of a coend: every pre-element's class representative."""

    def __init__(self, uf):
        self.rep_of, self.members = uf.classes()

    def rep(self, pre):
        return self.rep_of[pre]

    def classes(self):
        return list(self.members)


class Profunctor:
    def __init__(self, src, dst, cells, left, right, check=True):
        self.src, self.dst = src, dst
        self.cells = {(a, b): tuple(sort_canon(set(cells.get((a, b), ()))))
                      for a in src.objects for b in dst.objects}
        self.left = {}
        for f in src.morphisms:
            a = src.dst(f)
            for b in dst.objects:
                if (f, b) in left:
                    self.left[f, b] = dict(left[f, b])
                elif src.is_identity(f):
                    self.left[f, b] = {x: x for x in self.cells[a, b]}
                elif not self.cells[a, b]:
                    self.left[f, b] = {}
                else:
                    raise FunctorLawError(f"no left action for {f!r} at {b!r}")
        self.right = {}
        for g in dst.morphisms:
            b = dst.src(g)
            for a in src.objects:
                if (a, g) in right:
                    self.right[a, g] = dict(right[a, g])
                elif dst.is_identity(g):
                    self.right[a, g] = {x: x for x in self.cells[a, b]}
                elif not self.cells[a, b]:
                    self.right[a, g] = {}
                else:
                    raise FunctorLawError(f"no right action for {g!r} at {a!r}")
        self._key = None
        self._hash = None
        if check:
            self.check()

    def lact(self, f, b, x):
        """Pull ``x in P(a, b)`` back along ``f: a2 -> a``."""
        return self.left[f, b][x]

    def ract(self, a, g, x):
        """Push ``x in P(a, b)`` forward along ``g: b -> b2``."""
        return self.right[a, g][x]

    def check(self):
        A, B = self.src, self.dst
        for (f, b), table in self.left.items():
            a2, a = A.src(f), A.dst(f)
            if set(table) != set(self.cells[a, b]) or not set(table.values()) <= set(self.cells[a2, b]):
                raise FunctorLawError(f"left action of {f!r} at {b!r} is not a map of cells")
        for (a, g), table in self.right.items():
            b, b2 = B.src(g), B.dst(g)
            if set(table) != set(self.cells[a, b]) or not set(table.values()) <= set(self.cells[a, b2]):
                raise FunctorLawError(f"right action of {g!r} at {a!r} is not a map of cells")
        for a in A.objects:
            for b in B.objects:
                if any(x != y for x, y in self.left[A.identity(a), b].items()):
                    raise FunctorLawError("identity acts non-trivially on the left")
                if any(x != y for x, y in self.right[a, B.identity(b)].items()):
                    raise FunctorLawError("identity acts non-trivially on the right")
        for g, f in A.composable_pairs():
            gf = A.compose(g, f)
            for b in B.objects:
                lg, lf, lgf = self.left[g, b], self.left[f, b], self.left[gf, b]
                for x, y in lg.items():
                    if lf[y] != lgf[x]:
                        raise FunctorLawError(f"left action not functorial at {g!r} after {f!r}")
        for g, f in B.composable_pairs():
            gf = B.compose(g, f)
            for a in A.objects:
                rg, rf, rgf = self.right[a, g], self.right[a, f], self.right[a, gf]
                for x, y in rf.items():
                    if rg[y] != rgf[x]:
                        raise FunctorLawError(f"right action not functorial at {g!r} after {f!r}")
        for f in A.generators:
            a2, a = A.src(f), A.dst(f)
            for g in B.generators:
                b, b2 = B.src(g), B.dst(g)
                for x in self.cells[a, b]:
                    if self.right[a2, g][self.left[f, b][x]] != self.left[f, b2][self.right[a, g][x]]:
                        raise FunctorLawError(f"actions of {f!r} and {g!r} do not commute")
        return True

    def row(self, a):
        """``P(a, -)`` as a presheaf on the target."""
        B = self.dst
        return Presheaf(B, {b: self.cells[a, b] for b in B.objects},
                        {g: self.right[a, g] for g in B.morphisms}, check=False)

    def column(self, b):
        """``P(-, b)`` as a presheaf on the opposite of the source."""
        Aop = self._opposite_src()
        return Presheaf(Aop, {a: self.cells[a, b] for a in Aop.objects},
                        {f: self.left[f, b] for f in Aop.morphisms}, check=False)

    def _opposite_src(self):
        if getattr(self, "_aop", None) is None:
            self._aop = opposite(self.src)
        return self._aop

    def as_presheaf(self):
        """The same data as a presheaf on ``A^op x B``."""
        cat = product_category(self._opposite_src(), self.dst)
        elems = {(a, b): self.cells[a, b] for a, b in cat.objects}
        action = {}
        for f, g in cat.morphisms:
            a, a2 = self.src.dst(f), self.src.src(f)
            b = self.dst.src(g)
            lf, rg = self.left[f, b], self.right[a2, g]
            action[f, g] = {x: rg[lf[x]] for x in self.cells[a, b]}
        return Presheaf(cat, elems, action, check=False)

    def size(self):
        return sum(len(v) for v in self.cells.values())

    def cardinalities(self):
        return [[len(self.cells[a, b]) for b in self.dst.objects] for a in self.src.objects]

    def key(self):
        if self._key is None:
            A, B = self.src, self.dst
            srt = lambda d: tuple(sorted(d.items(), key=lambda kv: canon(kv[0])))
            self._key = (tuple(self.cells.values()),
                         tuple(srt(self.left[f, b]) for f in A.generators for b in B.objects),
                         tuple(srt(self.right[a, g]) for a in A.objects for g in B.generators))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Profunctor):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"Profunctor({self.src!r} -|-> {self.dst!r}, {self.size()} elements)"


class ProfMorphism:
    def __init__(self, src, dst, components, check=True):
        if src.src != dst.src or src.dst != dst.dst:
            raise EndpointMismatch("profunctor morphism between different hom-types")
        self.src, self.dst = src, dst
        self.components = {k: dict(components.get(k, {})) for k in src.cells}
        if check:
            self.check()

    def __call__(self, a, b, x):
        return self.components[a, b][x]

    def check(self):
        P, R = self.src, self.dst
        for k, comp in self.components.items():
            if set(comp) != set(P.cells[k]) or not set(comp.values()) <= set(R.cells[k]):
                raise NaturalityError(f"component at {k!r} is not a map of cells")
        for f in P.src.generators:
            a2, a = P.src.src(f), P.src.dst(f)
            for b in P.dst.objects:
                for x in P.cells[a, b]:
                    if self.components[a2, b][P.lact(f, b, x)] != R.lact(f, b, self.components[a, b][x]):
                        raise NaturalityError(f"not natural along {f!r}")
        for g in P.dst.generators:
            b, b2 = P.dst.src(g), P.dst.dst(g)
            for a in P.src.objects:
                for x in P.cells[a, b]:
                    if self.components[a, b2][P.ract(a, g, x)] != R.ract(a, g, self.components[a, b][x]):
                        raise NaturalityError(f"not natural along {g!r}")
        return True

    def is_iso(self):
        return all(len(set(c.values())) == len(c) == len(self.dst.cells[k])
                   for k, c in self.components.items())

    def __eq__(self, other):
        return (isinstance(other, ProfMorphism) and self.src == other.src
                and self.dst == other.dst and self.components == other.components)

    def __hash__(self):
        return hash(tuple(tuple(sorted(c.items(), key=lambda kv: canon(kv[0])))
                          for c in self.components.values()))


def identity_prof_morphism(P):
    return ProfMorphism(P, P, {k: {x: x for x in xs} for k, xs in P.cells.items()}, check=False)


def compose_prof_morphisms(beta, alpha):
    """beta after alpha (vertical composition)."""
    return ProfMorphism(alpha.src, beta.dst,
                        {k: {x: beta.components[k][y] for x, y in c.items()}
                         for k, c in alpha.components.items()}, check=False)


def prof_hom_set(P, R, bound=DEFAULT_BOUND):
    """All profunctor morphisms ``P -> R``."""
    X, Y = P.as_presheaf(), R.as_presheaf()
    out = []
    for m in iter_hom(X, Y, bound):
        comps = {k: {} for k in P.cells}
        for (k, x), v in m.items():
            comps[k][x] = v
        out.append(ProfMorphism(P, R, comps, check=False))
    return out


def identity_prof(cat):
    """The hom profunctor: cells are the hom-sets of ``cat``."""
    cells = {(a, b): cat.hom(a, b) for a in cat.objects for b in cat.objects}
    left = {(f, b): {h: cat.compose(h, f) for h in cat.hom(cat.dst(f), b)}
            for f in cat.morphisms for b in cat.objects}
    right = {(a, g): {h: cat.compose(g, h) for h in cat.hom(a, cat.src(g))}
             for a in cat.objects for g in cat.morphisms}
    return Profunctor(cat, cat, cells, left, right, check=False)


# -- composition -------------------------------------------------------------------

def compose(Q, P, check=True):
    """``Q (x) P`` for ``P: A -|-> B`` and ``Q: B -|-> C``.

    The result carries a ``quotients`` dict mapping each cell to the
    ``Quotient`` of triples ``(b, x, y)`` with ``x in P(a, b)``, ``y in Q(b, c)``.
    """
    A, B, C = P.src, P.dst, Q.dst
    if Q.src is not B and Q.src != B:
        raise EndpointMismatch("middle categories differ")
    quotients = {}
    for a in A.objects:
        for c in C.objects:
            uf = UnionFind()
            for b in B.objects:
                for x in P.cells[a, b]:
                    for y in Q.cells[b, c]:
                        uf.add((b, x, y))
            for g in B.generators:
                b, b2 = B.src(g), B.dst(g)
                ys = Q.cells[b2, c]
                if not ys:
                    continue
                lq, rp = Q.left[g, c], P.right[a, g]
                for x in P.cells[a, b]:
                    gx = rp[x]
                    for y2 in ys:
                        uf.union((b, x, lq[y2]), (b2, gx, y2))
            quotients[a, c] = Quotient(uf)
    cells = {k: q.classes() for k, q in quotients.items()}
    left = {}
    for f in A.morphisms:
        if A.is_identity(f):
            continue
        a2, a = A.src(f), A.dst(f)
        for c in C.objects:
            rep = quotients[a2, c].rep_of
            left[f, c] = {r: rep[r[0], P.left[f, r[0]][r[1]], r[2]] for r in cells[a, c]}
    right = {}
    for h in C.morphisms:
        if C.is_identity(h):
            continue
        c, c2 = C.src(h), C.dst(h)
        for a in A.objects:
            rep = quotients[a, c2].rep_of
            right[a, h] = {r: rep[r[0], r[1], Q.right[r[0], h][r[2]]] for r in cells[a, c]}
    result = Profunctor(A, C, cells, left, right, check=check)
    result.quotients = quotients
    return result


def presheaf_as_prof(phi):
    """A presheaf on ``A`` as a profunctor ``1 -|-> A``."""
    A = phi.base
    return Profunctor(ONE, A, {(POINT, a): phi.elems[a] for a in A.objects}, {},
                      {(POINT, g): phi.action[g] for g in A.morphisms}, check=False)


def prof_as_presheaf(P):
    """Inverse of ``presheaf_as_prof``."""
    B = P.dst
    return Presheaf(B, {b: P.cells[POINT, b] for b in B.objects},
                    {g: P.right[POINT, g] for g in B.morphisms}, check=False)


class Tensor:
    """``P (x) phi`` together with the quotient tables naming its elements."""

    def __init__(self, P, phi):
        if P.src is not phi.base and P.src != phi.base:
            raise EndpointMismatch("profunctor source differs from presheaf base")
        comp = compose(P, presheaf_as_prof(phi), check=False)
        self.presheaf = prof_as_presheaf(comp)
        self.quotients = {b: comp.quotients[POINT, b] for b in P.dst.objects}

    def rep(self, b, pre):
        """Class of the triple ``(a, x in phi(a), p in P(a, b))``."""
        return self.quotients[b].rep_of[pre]


def tensor_presheaf(P, phi):
    return Tensor(P, phi).presheaf


def tensor_nat(P, t):
    """``P (x) t`` for a natural transformation ``t``."""
    src, dst = Tensor(P, t.src), Tensor(P, t.dst)
    comps = {b: {r: dst.rep(b, (r[0], t.components[r[0]][r[1]], r[2])) for r in src.presheaf.elems[b]}
             for b in P.dst.objects}
    return NatTrans(src.presheaf, dst.presheaf, comps, check=False)


# -- closed structure --------------------------------------------------------------

def _family(m):
    return tuple(sorted(m.items(), key=lambda kv: canon(kv[0])))


def left_hom(Q, R, bound=DEFAULT_BOUND):
    """``Q / R`` for ``Q: B -|-> C`` and ``R: A -|-> C``; a profunctor ``A -|-> B``
    whose ``(a, b)`` cell is the set of natural families ``Q(b, -) -> R(a, -)``.

    Each element is a sorted tuple of ``((c, y), r)`` pairs."""
    B, A, C = Q.src, R.src, Q.dst
    if R.dst != C:
        raise EndpointMismatch("left hom needs a common target")
    cells = {}
    for a in A.objects:
        ra = R.row(a)
        for b in B.objects:
            qb = Q.row(b)
            size = math.prod(len(R.cells[a, c]) ** len(Q.cells[b, c]) for c in C.objects)
            if size > bound:
                raise SizeGuardExceeded(size, bound)
            cells[a, b] = [_family(m) for m in iter_hom(qb, ra, None)]
    left = {}
    for f in A.morphisms:
        a = A.dst(f)
        for b in B.objects:
            left[f, b] = {t: tuple(((c, y), R.left[f, c][r]) for (c, y), r in t) for t in cells[a, b]}
    right = {}
    for g in B.morphisms:
        b, b2 = B.src(g), B.dst(g)
        for a in A.objects:
            table = {}
            for t in cells[a, b]:
                d = dict(t)
                table[t] = _family({(c, y2): d[c, Q.left[g, c][y2]]
                                    for c in C.objects for y2 in Q.cells[b2, c]})
            right[a, g] = table
    return Profunctor(A, B, cells, left, right, check=False)


def right_hom(R, P, bound=DEFAULT_BOUND):
    """``R \\ P`` for ``R: A -|-> C`` and ``P: A -|-> B``; a profunctor ``B -|-> C``
    whose ``(b, c)`` cell is the set of natural families ``P(-, b) -> R(-, c)``."""
    A, B, C = P.src, P.dst, R.dst
    if R.src != A:
        raise EndpointMismatch("right hom needs a common source")
    cells = {}
    for b in B.objects:
        pb = P.column(b)
        for c in C.objects:
            rc = R.column(c)
            size = math.prod(len(R.cells[a, c]) ** len(P.cells[a, b]) for a in A.objects)
            if size > bound:
                raise SizeGuardExceeded(size, bound)
            cells[b, c] = [_family(m) for m in iter_hom(pb, rc, None)]
    left = {}
    for g in B.morphisms:
        b2, b = B.src(g), B.dst(g)
        for c in C.objects:
            table = {}
            for u in cells[b, c]:
                d = dict(u)
                table[u] = _family({(a, x2): d[a, P.right[a, g][x2]]
                                    for a in A.objects for x2 in P.cells[a, b2]})
            left[g, c] = table
    right = {}
    for h in C.morphisms:
        for b in B.objects:
            c = C.src(h)
            right[b, h] = {u: tuple(((a, x), R.right[a, h][r]) for (a, x), r in u) for u in cells[b, c]}
    return Profunctor(B, C, cells, left, right, check=False)


def transpose(P):
    """``P^T: B^op -|-> A^op`` with the same cells."""
    Aop, Bop = opposite(P.src), opposite(P.dst)
    cells = {(b, a): P.cells[a, b] for a in P.src.objects for b in P.dst.objects}
    left = {(g, a): P.right[a, g] for g in P.dst.morphisms for a in P.src.objects}
    right = {(b, f): P.left[f, b] for f in P.src.morphisms for b in P.dst.objects}
    return Profunctor(Bop, Aop, cells, left, right, check=False)


def hom_tense_check(P):
    """Whether ``P / (-)`` is tense: every ``f: a -> a2`` must induce a
    surjection on components from ``P(a2, -)`` to ``P(a, -)``.

    Returns ``(True, None)`` or ``(False, (f, representative))`` where the
    representative ``(b, x)`` names a component that is missed."""
    A, B = P.src, P.dst
    comps = {a: pi0(P.row(a)) for a in A.objects}
    for f in A.morphisms:
        a, a2 = A.src(f), A.dst(f)
        hit = {comps[a].component(b, P.left[f, b][x]) for b in B.objects for x in P.cells[a2, b]}
        for cls in comps[a].classes:
            r = comps[a].rep_of_class[cls]
            if comps[a].of[r] not in hit:
                return False, (f, r)
    return True, None


# -- bicategory structure ------------------------------------------------------------

def whisker_left(Q, alpha, check=False):
    """``Q (x) alpha: Q (x) P -> Q (x) P2``."""
    src, dst = compose(Q, alpha.src, check=check), compose(Q, alpha.dst, check=check)
    comps = {(a, c): {r: dst.quotients[a, c].rep((r[0], alpha.components[a, r[0]][r[1]], r[2]))
                      for r in src.cells[a, c]} for a, c in src.cells}
    return ProfMorphism(src, dst, comps, check=False)


def whisker_right(beta, P, check=False):
    """``beta (x) P: Q (x) P -> Q2 (x) P``."""
    src, dst = compose(beta.src, P, check=check), compose(beta.dst, P, check=check)
    comps = {(a, c): {r: dst.quotients[a, c].rep((r[0], r[1], beta.components[r[0], c][r[2]]))
                      for r in src.cells[a, c]} for a, c in src.cells}
    return ProfMorphism(src, dst, comps, check=False)


def left_unitor(P):
    """``Id (x) P -> P``: ``[x, g]`` goes to ``g . x``."""
    src = compose(identity_prof(P.dst), P, check=False)
    comps = {(a, c): {r: P.right[a, r[2]][r[1]] for r in src.cells[a, c]} for a, c in src.cells}
    return ProfMorphism(src, P, comps, check=False)


def right_unitor(P):
    """``P (x) Id -> P``: ``[f, x]`` goes to ``x . f``."""
    src = compose(P, identity_prof(P.src), check=False)
    comps = {(a, c): {r: P.left[r[1], c][r[2]] for r in src.cells[a, c]} for a, c in src.cells}
    return ProfMorphism(src, P, comps, check=False)


def associator(R, Q, P):
    """``(R (x) Q) (x) P -> R (x) (Q (x) P)``."""
    rq = compose(R, Q, check=False)
    src = compose(rq, P, check=False)
    qp = compose(Q, P, check=False)
    dst = compose(R, qp, check=False)
    comps = {}
    for (a, d), cls in src.cells.items():
        table = {}
        for b, x, z in cls:
            c, y, r = z
            w = qp.quotients[a, c].rep((b, x, y))
            table[b, x, z] = dst.quotients[a, d].rep((c, w, r))
        comps[a, d] = table
    return ProfMorphism(src, dst, comps, check=False)


def restrict(P, left_functor=None, right_functor=None):
    """``P(F -, G -)`` for finite functors ``F`` into the source and ``G`` into the target."""
    A2 = left_functor.src if left_functor else P.src
    B2 = right_functor.src if right_functor else P.dst
    F = left_functor.on_objects if left_functor else {a: a for a in P.src.objects}
    Fm = left_functor.on_morphisms if left_functor else {f: f for f in P.src.morphisms}
    G = right_functor.on_objects if right_functor else {b: b for b in P.dst.objects}
    Gm = right_functor.on_morphisms if right_functor else {g: g for g in P.dst.morphisms}
    cells = {(a, b): P.cells[F[a], G[b]] for a in A2.objects for b in B2.objects}
    left = {(f, b): P.left[Fm[f], G[b]] for f in A2.morphisms for b in B2.objects}
    right = {(a, g): P.right[F[a], Gm[g]] for a in A2.objects for g in B2.morphisms}
    return Profunctor(A2, B2, cells, left, right, check=False)


def lower_star(F):
    """``F_*(a, b) = B(Fa, b)``."""
    return restrict(identity_prof(F.dst), left_functor=F)


def upper_star(F):
    """``F^*(b, a) = B(b, Fa)``."""
    return restrict(identity_prof(F.dst), right_functor=F)


# -- adjunction transposes ----------------------------------------------------------

def curry_left(alpha, Q, P):
    """``alpha: Q (x) P -> R`` to ``P -> Q / R``."""
    QP, R = alpha.src, alpha.dst
    target = left_hom(Q, R)
    comps = {}
    for (a, b), xs in P.cells.items():
        table = {}
        for x in xs:
            fam = {(c, y): alpha.components[a, c][QP.quotients[a, c].rep((b, x, y))]
                   for c in Q.dst.objects for y in Q.cells[b, c]}
            table[x] = _family(fam)
        comps[a, b] = table
    return ProfMorphism(P, target, comps, check=False)


def curry_right(alpha, Q, P):
    """``alpha: Q (x) P -> R`` to ``Q -> R \\ P``."""
    QP, R = alpha.src, alpha.dst
    target = right_hom(R, P)
    comps = {}
    for (b, c), ys in Q.cells.items():
        table = {}
        for y in ys:
            fam = {(a, x): alpha.components[a, c][QP.quotients[a, c].rep((b, x, y))]
                   for a in P.src.objects for x in P.cells[a, b]}
            table[y] = _family(fam)
        comps[b, c] = table
    return ProfMorphism(Q, target, comps, check=False)


def uncurry_left(beta, Q, R):
    """``beta: P -> Q / R`` back to ``Q (x) P -> R``."""
    P = beta.src
    QP = compose(Q, P, check=False)
    comps = {(a, c): {r: dict(beta.components[a, r[0]][r[1]])[c, r[2]] for r in cls}
             for (a, c), cls in QP.cells.items()}
    return ProfMorphism(QP, R, comps, check=False)


def uncurry_right(beta, P, R):
    """``beta: Q -> R \\ P`` back to ``Q (x) P -> R``."""
    Q = beta.src
    QP = compose(Q, P, check=False)
    comps = {(a, c): {r: dict(beta.components[r[0], c][r[2]])[a, r[1]] for r in cls}
             for (a, c), cls in QP.cells.items()}
    return ProfMorphism(QP, R, comps, check=False)
