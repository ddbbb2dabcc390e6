"""Covariant set-valued functors on a finite category (called presheaves
here), their natural transformations, subobjects, and the Boolean
structure: connected components, complemented subobjects and the
factorization of a map into a component-surjective part followed by a
complemented inclusion."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .errors import (BaseMismatch, FunctorLawError, NaturalityError, NotComplemented,
                     NotSumOfReps, SizeGuardExceeded, UnknownObject)
from .order import UnionFind, canon, sort_canon

DEFAULT_BOUND = 10 ** 6


class Presheaf:
    def __init__(self, base, elems, action, check=True, presorted=False):
        self.base = base
        self.elems = {}
        for a in base.objects:
            if presorted:
                self.elems[a] = tuple(elems.get(a, ()))
            else:
                self.elems[a] = tuple(sort_canon(set(elems.get(a, ()))))
        for a in elems:
            if not base.has_object(a):
                raise UnknownObject(a)
        self.action = {}
        for f in base.morphisms:
            if f in action:
                self.action[f] = dict(action[f])
            elif base.is_identity(f):
                self.action[f] = {x: x for x in self.elems[base.src(f)]}
            elif not self.elems[base.src(f)]:
                self.action[f] = {}
            else:
                raise FunctorLawError(f"no action given for {f!r}")
        self._key = None
        self._hash = None
        self._members = None
        if check:
            self.check()

    def check(self):
        base = self.base
        for f in base.morphisms:
            s, d = base.src(f), base.dst(f)
            table = self.action[f]
            target = set(self.elems[d])
            if set(table) != set(self.elems[s]):
                raise FunctorLawError(f"action of {f!r} is not total on {s!r}")
            for x, y in table.items():
                if y not in target:
                    raise FunctorLawError(f"action of {f!r} sends {x!r} outside {d!r}")
            if base.is_identity(f) and any(x != y for x, y in table.items()):
                raise FunctorLawError(f"identity {f!r} acts non-trivially")
        for g, f in base.composable_pairs():
            ag, af, agf = self.action[g], self.action[f], self.action[base.compose(g, f)]
            for x, y in af.items():
                if ag[y] != agf[x]:
                    raise FunctorLawError(f"action not functorial at {g!r} after {f!r} on {x!r}")
        return True

    def act(self, f, x):
        return self.action[f][x]

    def __getitem__(self, a):
        return self.elems[a]

    def elements(self):
        """All (object, element) pairs in canonical order."""
        return [(a, x) for a in self.base.objects for x in self.elems[a]]

    def size(self):
        return sum(len(v) for v in self.elems.values())

    def contains(self, a, x):
        if self._members is None:
            self._members = {b: set(xs) for b, xs in self.elems.items()}
        return x in self._members[a]

    def key(self):
        if self._key is None:
            base = self.base
            self._key = (tuple(self.elems[a] for a in base.objects),
                         tuple(tuple(sorted(self.action[f].items(), key=lambda kv: canon(kv[0])))
                               for f in base.generators))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self.base == other.base and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        sizes = ", ".join(f"{a!r}:{len(self.elems[a])}" for a in self.base.objects)
        return f"Presheaf({sizes})"


def same_base(*things):
    base = things[0].base
    for t in things[1:]:
        if t.base is not base and t.base != base:
            raise BaseMismatch("presheaves live over different categories")
    return base


def representable(cat, a):
    """The covariant hom functor out of ``a``."""
    elems = {b: cat.hom(a, b) for b in cat.objects}
    action = {f: {h: cat.compose(f, h) for h in elems[cat.src(f)]} for f in cat.morphisms}
    return Presheaf(cat, elems, action, check=False)


def terminal(cat):
    return Presheaf(cat, {a: ["*"] for a in cat.objects},
                    {f: {"*": "*"} for f in cat.morphisms}, check=False)


def empty_presheaf(cat):
    return Presheaf(cat, {}, {}, check=False)


def subset_presheaf(parent, subset):
    """The subpresheaf spanned by ``subset`` (assumed closed)."""
    base = parent.base
    action = {f: {x: parent.action[f][x] for x in subset[base.src(f)]} for f in base.morphisms}
    return Presheaf(base, subset, action, check=False)


class NatTrans:
    def __init__(self, src, dst, components, check=True):
        same_base(src, dst)
        self.src, self.dst = src, dst
        self.components = {a: dict(components.get(a, {})) for a in src.base.objects}
        self._key = None
        self._hash = None
        if check:
            self.check()

    def check(self):
        base = self.src.base
        for a in base.objects:
            comp = self.components[a]
            if set(comp) != set(self.src.elems[a]):
                raise NaturalityError(f"component at {a!r} is not total")
            for y in comp.values():
                if not self.dst.contains(a, y):
                    raise NaturalityError(f"component at {a!r} leaves the codomain")
        for f in base.generators:
            s, d = base.src(f), base.dst(f)
            for x in self.src.elems[s]:
                if self.components[d][self.src.act(f, x)] != self.dst.act(f, self.components[s][x]):
                    raise NaturalityError(f"naturality fails at {f!r} on {x!r}")
        return True

    def __call__(self, a, x):
        return self.components[a][x]

    def is_mono(self):
        return all(len(set(c.values())) == len(c) for c in self.components.values())

    def is_epi(self):
        return all(set(self.components[a].values()) == set(self.dst.elems[a])
                   for a in self.src.base.objects)

    def is_iso(self):
        return self.is_mono() and self.is_epi()

    def image(self):
        return Subobject(self.dst, {a: set(c.values()) for a, c in self.components.items()})

    def key(self):
        if self._key is None:
            self._key = (self.src.key(), self.dst.key(),
                         tuple(tuple(sorted(self.components[a].items(), key=lambda kv: canon(kv[0])))
                               for a in self.src.base.objects))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash


def identity_nat(phi):
    return NatTrans(phi, phi, {a: {x: x for x in xs} for a, xs in phi.elems.items()}, check=False)


def compose_nat(u, t):
    """u after t."""
    return NatTrans(t.src, u.dst, {a: {x: u.components[a][y] for x, y in c.items()}
                                   for a, c in t.components.items()}, check=False)


class Subobject:
    def __init__(self, parent, subset, check=True):
        self.parent = parent
        self.subset = {a: frozenset(subset.get(a, ())) for a in parent.base.objects}
        if check:
            base = parent.base
            for a, xs in self.subset.items():
                if not xs <= set(parent.elems[a]):
                    raise FunctorLawError(f"subset at {a!r} is not inside the parent")
            for f in base.generators:
                d = base.dst(f)
                for x in self.subset[base.src(f)]:
                    if parent.act(f, x) not in self.subset[d]:
                        raise FunctorLawError(f"subset not closed under {f!r} at {x!r}")

    def __contains__(self, ax):
        a, x = ax
        return x in self.subset[a]

    def __eq__(self, other):
        return isinstance(other, Subobject) and self.parent == other.parent and self.subset == other.subset

    def __hash__(self):
        return hash(tuple(self.subset.values()))

    def size(self):
        return sum(len(s) for s in self.subset.values())

    def as_presheaf(self):
        return subset_presheaf(self.parent, self.subset)

    def inclusion(self):
        sub = self.as_presheaf()
        return NatTrans(sub, self.parent, {a: {x: x for x in xs} for a, xs in sub.elems.items()},
                        check=False)

    def __repr__(self):
        return "Subobject(" + ", ".join(f"{a!r}:{sort_canon(xs)}" for a, xs in self.subset.items()) + ")"


def full_subobject(phi):
    return Subobject(phi, {a: set(xs) for a, xs in phi.elems.items()}, check=False)


# -- sums and products --------------------------------------------------------

def coproduct(parts, base=None):
    """Tagged disjoint union; elements of part ``k`` become ``(k, x)``."""
    if base is None:
        base = same_base(*parts)
    return _coproduct(tuple(parts), base)


@lru_cache(maxsize=4096)
def _coproduct(parts, base):
    elems = {a: [(k, x) for k, p in enumerate(parts) for x in p.elems[a]] for a in base.objects}
    action = {f: {(k, x): (k, y) for k, p in enumerate(parts) for x, y in p.action[f].items()}
              for f in base.morphisms}
    return Presheaf(base, elems, action, check=False, presorted=True)


def coproduct_injection(parts, k, total=None):
    total = total or coproduct(parts)
    return NatTrans(parts[k], total, {a: {x: (k, x) for x in parts[k].elems[a]}
                                      for a in total.base.objects}, check=False)


def binary_sum(phi, psi):
    total = coproduct([phi, psi])
    return total, (coproduct_injection([phi, psi], 0, total), coproduct_injection([phi, psi], 1, total))


def coproduct_map(maps):
    """Sum of natural transformations, between tagged coproducts."""
    src = coproduct([t.src for t in maps])
    dst = coproduct([t.dst for t in maps])
    comps = {a: {(k, x): (k, y) for k, t in enumerate(maps) for x, y in t.components[a].items()}
             for a in src.base.objects}
    return NatTrans(src, dst, comps, check=False)


@lru_cache(maxsize=4096)
def product_presheaf(phi, psi):
    base = same_base(phi, psi)
    elems = {a: [(x, y) for x in phi.elems[a] for y in psi.elems[a]] for a in base.objects}
    action = {f: {(x, y): (phi.action[f][x], psi.action[f][y]) for x, y in elems[base.src(f)]}
              for f in base.morphisms}
    return Presheaf(base, elems, action, check=False, presorted=True)


def product(phi, psi):
    total = product_presheaf(phi, psi)
    base = total.base
    p0 = NatTrans(total, phi, {a: {xy: xy[0] for xy in total.elems[a]} for a in base.objects}, check=False)
    p1 = NatTrans(total, psi, {a: {xy: xy[1] for xy in total.elems[a]} for a in base.objects}, check=False)
    return total, (p0, p1)


def product_map(t, u):
    src, dst = product_presheaf(t.src, u.src), product_presheaf(t.dst, u.dst)
    comps = {a: {(x, y): (t.components[a][x], u.components[a][y]) for x, y in src.elems[a]}
             for a in src.base.objects}
    return NatTrans(src, dst, comps, check=False)


# -- connected components and complements -------------------------------------

class Components:
    def __init__(self, phi):
        self.presheaf = phi
        uf = UnionFind(phi.elements())
        base = phi.base
        for f in base.generators:
            s, d = base.src(f), base.dst(f)
            for x, y in phi.action[f].items():
                uf.union((s, x), (d, y))
        self.of, members = uf.classes()
        self.classes = [frozenset(m) for m in members.values()]
        self.rep_of_class = {c: min(c, key=canon) for c in self.classes}

    def __len__(self):
        return len(self.classes)

    def component(self, a, x):
        return self.of[a, x]


def pi0(phi):
    """Connected components of the category of elements."""
    return Components(phi)


def complement_witness(sub):
    """First (morphism, element) where an outside element moves into ``sub``."""
    phi, base = sub.parent, sub.parent.base
    for f in base.generators:
        s, d = base.src(f), base.dst(f)
        inside = sub.subset[d]
        for x in phi.elems[s]:
            if x not in sub.subset[s] and phi.action[f][x] in inside:
                return f, x
    return None


def is_complemented(sub):
    return complement_witness(sub) is None


def negate(sub):
    """Largest subobject disjoint from ``sub``."""
    phi, base = sub.parent, sub.parent.base
    keep = {}
    for a in base.objects:
        outs = base.out(a)
        keep[a] = {x for x in phi.elems[a]
                   if all(phi.action[f][x] not in sub.subset[base.dst(f)] for f in outs)}
    return Subobject(phi, keep, check=False)


def complement(sub):
    w = complement_witness(sub)
    if w is not None:
        raise NotComplemented(*w)
    return Subobject(sub.parent, {a: set(sub.parent.elems[a]) - xs for a, xs in sub.subset.items()},
                     check=False)


def is_pi0_surjective(t):
    comps = pi0(t.dst)
    hit = {comps.component(a, y) for a, c in t.components.items() for y in c.values()}
    return len(hit) == len(comps)


def boolean_factorize(t):
    """Split ``t`` as a component-surjective map followed by a complemented
    inclusion; returns ``(e, m)`` with ``m`` the inclusion."""
    comps = pi0(t.dst)
    hit = {comps.component(a, y) for a, c in t.components.items() for y in c.values()}
    middle = {a: {x for x in t.dst.elems[a] if comps.component(a, x) in hit} for a in t.dst.base.objects}
    sub = Subobject(t.dst, middle, check=False)
    m = sub.inclusion()
    e = NatTrans(t.src, m.src, t.components, check=False)
    return e, m


# -- sums of representables ------------------------------------------------------

def sum_of_reps(cat, seq):
    """Coproduct of representables; elements are ``(i, h)`` with ``h`` out of ``seq[i]``."""
    return coproduct([representable(cat, a) for a in seq], base=cat)


def rep_sequence(phi):
    """Recover ``seq`` when ``phi`` is literally ``sum_of_reps(base, seq)``."""
    base = phi.base
    seq = {}
    for a, x in phi.elements():
        if not (isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int)):
            raise NotSumOfReps(f"element {x!r} is not a tagged morphism")
        i, h = x
        if h in base.identities.values() and base.src(h) == a:
            seq[i] = a
    if sorted(seq) != list(range(len(seq))):
        raise NotSumOfReps("summand tags are not 0..n-1")
    result = tuple(seq[i] for i in range(len(seq)))
    if sum_of_reps(base, result) != phi:
        raise NotSumOfReps("presheaf differs from the sum of representables it names")
    return result


def sum_map(cat, src_seq, dst_seq, alpha, fs):
    """The map from the sum over ``dst_seq`` to the sum over ``src_seq``
    sending summand ``j`` into summand ``alpha[j]`` by precomposing with
    ``fs[j]: src_seq[alpha[j]] -> dst_seq[j]``."""
    src = sum_of_reps(cat, dst_seq)
    dst = sum_of_reps(cat, src_seq)
    comps = {a: {(j, h): (alpha[j], cat.compose(h, fs[j])) for j, h in src.elems[a]}
             for a in cat.objects}
    return NatTrans(src, dst, comps, check=False)


def classify_sum_of_reps(t):
    """Describe a map between sums of representables by its index map and
    components; report whether it is a complemented mono and whether it is
    surjective on components."""
    src_seq, dst_seq = rep_sequence(t.src), rep_sequence(t.dst)
    cat = t.src.base
    alpha, fs = [], []
    for j, c in enumerate(src_seq):
        i, f = t.components[c][(j, cat.identity(c))]
        alpha.append(i)
        fs.append(f)
    injective = len(set(alpha)) == len(alpha)
    return {
        "src": src_seq, "dst": dst_seq, "alpha": tuple(alpha), "fs": tuple(fs),
        "complemented_mono": injective and all(cat.is_iso(f) for f in fs),
        "pi0_surjective": set(alpha) == set(range(len(dst_seq))),
    }


def element_map(phi, a, x):
    """The map ``rep(a) -> phi`` sending ``h`` to ``h . x``."""
    cat = phi.base
    src = representable(cat, a)
    return NatTrans(src, phi, {b: {h: phi.action[h][x] for h in src.elems[b]} for b in cat.objects},
                    check=False)


def yoneda_map(phi, seq, values):
    """The map out of the sum of representables on ``seq`` picking ``values[i]``."""
    cat = phi.base
    src = sum_of_reps(cat, seq)
    comps = {a: {(i, h): phi.act(h, values[i]) for i, h in src.elems[a]} for a in cat.objects}
    return NatTrans(src, phi, comps, check=False)


# -- hom-sets -------------------------------------------------------------------

def candidate_count(src, dst):
    return math.prod(len(dst.elems[a]) ** len(src.elems[a]) for a in src.base.objects)


def iter_hom(src, dst, bound=DEFAULT_BOUND):
    """Enumerate natural transformations ``src -> dst`` as dicts keyed by
    ``(object, element)``. Search is by backtracking with forward
    propagation; ``bound`` caps the raw function space."""
    base = same_base(src, dst)
    if bound is not None:
        size = candidate_count(src, dst)
        if size > bound:
            raise SizeGuardExceeded(size, bound)
    order = src.elements()
    genset = set(base.generators)
    gens = {a: [(f, base.dst(f)) for f in base.out(a) if f in genset] for a in base.objects}
    assign = {}

    def extend(a, x, v):
        added = []
        stack = [(a, x, v)]
        while stack:
            a, x, v = stack.pop()
            k = (a, x)
            if k in assign:
                if assign[k] != v:
                    for key in added:
                        del assign[key]
                    return None
                continue
            assign[k] = v
            added.append(k)
            for f, d in gens[a]:
                stack.append((d, src.action[f][x], dst.action[f][v]))
        return added

    def search(i):
        while i < len(order) and order[i] in assign:
            i += 1
        if i == len(order):
            yield dict(assign)
            return
        a, x = order[i]
        for v in dst.elems[a]:
            added = extend(a, x, v)
            if added is None:
                continue
            yield from search(i + 1)
            for key in added:
                del assign[key]

    yield from search(0)


def hom_set(src, dst, bound=DEFAULT_BOUND):
    """All natural transformations ``src -> dst``."""
    result = []
    for m in iter_hom(src, dst, bound):
        comps = {a: {} for a in src.base.objects}
        for (a, x), v in m.items():
            comps[a][x] = v
        result.append(NatTrans(src, dst, comps, check=False))
    return result


def is_pullback_square(top, left, right, bottom):
    """Square ``P -top-> X -right-> Z`` and ``P -left-> Y -bottom-> Z``.

    Checks commutativity and that ``P`` maps bijectively onto the fibred
    product at every object."""
    base = top.src.base
    for a in base.objects:
        pairs = {}
        for p in top.src.elems[a]:
            x, y = top.components[a][p], left.components[a][p]
            if right.components[a][x] != bottom.components[a][y]:
                return False
            if (x, y) in pairs:
                return False
            pairs[x, y] = p
        fibre = sum(1 for x in right.src.elems[a] for y in bottom.src.elems[a]
                    if right.components[a][x] == bottom.components[a][y])
        if fibre != len(pairs):
            return False
    return True


# -- quotients --------------------------------------------------------------------

def congruence_quotient(phi, pairs):
    """Quotient of ``phi`` by the least congruence identifying each pair of
    ``((a, x), (a, y))``. Elements are renamed to their class minimum."""
    base = phi.base
    uf = UnionFind(phi.elements())
    work = list(pairs)
    while work:
        (a, x), (b, y) = work.pop()
        if a != b:
            raise BaseMismatch("can only identify elements over the same object")
        if uf.union((a, x), (a, y)):
            for f in base.generators:
                if base.src(f) == a:
                    d = base.dst(f)
                    work.append(((d, phi.action[f][x]), (d, phi.action[f][y])))
    rep_of, _ = uf.classes()
    name = {k: r[1] for k, r in rep_of.items()}
    elems = {a: {name[a, x] for x in phi.elems[a]} for a in base.objects}
    action = {f: {name[base.src(f), x]: name[base.dst(f), y] for x, y in phi.action[f].items()}
              for f in base.morphisms}
    q = Presheaf(base, elems, action, check=False)
    proj = NatTrans(phi, q, {a: {x: name[a, x] for x in phi.elems[a]} for a in base.objects},
                    check=False)
    return q, proj


def all_subobjects(phi):
    """Every subpresheaf, found by closing subsets of elements."""
    base = phi.base
    items = phi.elements()
    seen = set()
    result = []
    for r in range(len(items) + 1):
        for gens in itertools.combinations(items, r):
            closed = set()
            stack = list(gens)
            while stack:
                a, x = stack.pop()
                if (a, x) in closed:
                    continue
                closed.add((a, x))
                for f in base.out(a):
                    stack.append((base.dst(f), phi.action[f][x]))
            key = frozenset(closed)
            if key not in seen:
                seen.add(key)
                sub = {a: set() for a in base.objects}
                for a, x in closed:
                    sub[a].add(x)
                result.append(Subobject(phi, sub, check=False))
    return result
