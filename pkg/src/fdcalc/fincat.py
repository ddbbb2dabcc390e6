"""Finite categories with explicit hom-sets, and the truncated sequence
categories built over them (the free symmetric category and its soft
variant, where index maps are surjections rather than bijections)."""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .errors import BadIdentity, CategoryError, DanglingEndpoint, NonAssociative, UnknownObject


class SeqMorphism(NamedTuple):
    """A morphism of a sequence category.

    ``sigma[j]`` is the source slot feeding target slot ``j`` and
    ``fs[j]: src[sigma[j]] -> dst[j]`` is a morphism of the base.
    """

    src: tuple
    dst: tuple
    sigma: tuple
    fs: tuple


class FinCategory:
    def __init__(self, objects, morphisms, identities, compose, *,
                 generators=None, generated=None, name=None):
        self.objects = tuple(objects)
        self.name = name
        self.generated = generated
        self._obj_index = {a: i for i, a in enumerate(self.objects)}
        if len(self._obj_index) != len(self.objects):
            raise CategoryError("duplicate object ids")
        mors = {}
        for m, s, d in morphisms:
            if m in mors:
                raise CategoryError(f"duplicate morphism id {m!r}")
            if s not in self._obj_index or d not in self._obj_index:
                raise DanglingEndpoint(m, f"({s!r} -> {d!r})")
            mors[m] = (s, d)
        decl = {m: i for i, m in enumerate(mors)}
        order = sorted(mors, key=lambda m: (self._obj_index[mors[m][0]],
                                            self._obj_index[mors[m][1]], decl[m]))
        self._mor = {m: mors[m] for m in order}
        self._mor_index = {m: i for i, m in enumerate(order)}
        self.identities = dict(identities)
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self._mor.get(i) != (a, a):
                raise BadIdentity(a)
        self._idset = set(self.identities.values())
        if callable(compose):
            self._composer, self._table = compose, None
        else:
            self._composer, self._table = None, dict(compose)
        self._hom = {}
        self._out = {a: [] for a in self.objects}
        self._into = {a: [] for a in self.objects}
        for m, (s, d) in self._mor.items():
            self._hom.setdefault((s, d), []).append(m)
            self._out[s].append(m)
            self._into[d].append(m)
        if generators is None:
            generators = [m for m in self._mor if m not in self._idset]
        self.generators = tuple(generators)
        self._key = None

    # -- structure ---------------------------------------------------------
    @property
    def morphisms(self):
        return tuple(self._mor)

    def src(self, f):
        return self._mor[f][0]

    def dst(self, f):
        return self._mor[f][1]

    def identity(self, a):
        try:
            return self.identities[a]
        except KeyError:
            raise UnknownObject(a) from None

    def is_identity(self, f):
        return f in self._idset

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def out(self, a):
        return tuple(self._out[a])

    def into(self, b):
        return tuple(self._into[b])

    def has_object(self, a):
        return a in self._obj_index

    def obj_index(self, a):
        try:
            return self._obj_index[a]
        except KeyError:
            raise UnknownObject(a) from None

    def mor_index(self, f):
        return self._mor_index[f]

    def compose(self, g, f):
        """g after f."""
        if self._mor[f][1] != self._mor[g][0]:
            raise CategoryError(f"{g!r} and {f!r} are not composable")
        if self._table is not None:
            return self._table[g, f]
        return self._composer(g, f)

    def composable_pairs(self):
        for f in self._mor:
            for g in self._out[self._mor[f][1]]:
                yield g, f

    def inverse(self, f):
        s, d = self._mor[f]
        for g in self.hom(d, s):
            if self.compose(g, f) == self.identities[s] and self.compose(f, g) == self.identities[d]:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def compose_table(self):
        return {(g, f): self.compose(g, f) for g, f in self.composable_pairs()}

    def check_laws(self):
        """Exhaustively verify endpoints, identity laws and associativity."""
        table = {}
        for g, f in self.composable_pairs():
            try:
                gf = self.compose(g, f)
            except KeyError:
                raise CategoryError(f"composition table misses ({g!r}, {f!r})") from None
            if gf not in self._mor or self._mor[gf] != (self.src(f), self.dst(g)):
                raise DanglingEndpoint(gf, f"as composite of {g!r} and {f!r}")
            table[g, f] = gf
        for f, (s, d) in self._mor.items():
            if table[f, self.identities[s]] != f:
                raise BadIdentity(s)
            if table[self.identities[d], f] != f:
                raise BadIdentity(d)
        for f, (s, d) in self._mor.items():
            for g in self._out[d]:
                gf = table[g, f]
                for h in self._out[self._mor[g][1]]:
                    if table[h, gf] != table[table[h, g], f]:
                        raise NonAssociative(f, g, h)
        return True

    # -- equality ------------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (self.objects, tuple(self._mor.items()),
                         tuple(sorted(self.identities.items(), key=lambda kv: self._obj_index[kv[0]])),
                         tuple(sorted(((g, f, gf) for (g, f), gf in self.compose_table().items()),
                                      key=lambda t: (self._mor_index[t[1]], self._mor_index[t[0]]))))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash((self.objects, tuple(self._mor)))

    def __repr__(self):
        label = self.name or f"{len(self.objects)} objects"
        return f"FinCategory({label}, {len(self._mor)} morphisms)"


def validate_category(objects, morphisms, identities, compose):
    """Build a category from raw tables and check every law.

    ``morphisms`` is a list of ``(id, src, dst)``; ``compose`` maps
    ``(g, f)`` to ``g after f`` (or is a list of ``[g, f, gf]`` triples).
    """
    if not isinstance(compose, dict):
        compose = {(g, f): gf for g, f, gf in compose}
    mor = {m: (s, d) for m, s, d in morphisms}
    objs = set(objects)
    for m, (s, d) in mor.items():
        if s not in objs or d not in objs:
            raise DanglingEndpoint(m, f"({s!r} -> {d!r})")
    for (g, f), gf in compose.items():
        for x in (g, f, gf):
            if x not in mor:
                raise DanglingEndpoint(x, "in composition table")
        if mor[f][1] != mor[g][0]:
            raise DanglingEndpoint(g, f"composed with {f!r}")
    cat = FinCategory(objects, morphisms, identities, compose)
    cat.check_laws()
    return cat


def discrete_category(objects, name=None):
    ids = {a: ("id", a) for a in objects}
    return FinCategory(objects, [(ids[a], a, a) for a in objects], ids,
                       {(ids[a], ids[a]): ids[a] for a in objects}, name=name)


def opposite(cat):
    """Same objects and morphism ids, endpoints swapped."""
    return FinCategory(cat.objects, [(m, cat.dst(m), cat.src(m)) for m in cat.morphisms],
                       cat.identities, lambda g, f: cat.compose(f, g),
                       generators=cat.generators, name=f"{cat.name}^op" if cat.name else None)


def product_category(c, d):
    objects = [(a, b) for a in c.objects for b in d.objects]
    morphisms = [((f, g), (c.src(f), d.src(g)), (c.dst(f), d.dst(g)))
                 for f in c.morphisms for g in d.morphisms]
    identities = {(a, b): (c.identity(a), d.identity(b)) for a, b in objects}
    gens = [(f, d.identity(b)) for f in c.generators for b in d.objects]
    gens += [(c.identity(a), g) for a in c.objects for g in d.generators]
    name = f"{c.name}x{d.name}" if c.name and d.name else None
    return FinCategory(objects, morphisms, identities,
                       lambda g, f: (c.compose(g[0], f[0]), d.compose(g[1], f[1])),
                       generators=gens, name=name)


def _surjections(m, n):
    if n == 0:
        return [()] if m == 0 else []
    return [s for s in itertools.product(range(n), repeat=m) if len(set(s)) == n]


def _sequence_category(base, max_arity, soft):
    objects = [()]
    for n in range(1, max_arity + 1):
        objects += list(itertools.product(base.objects, repeat=n))
    morphisms = []
    for x in objects:
        for c in objects:
            n, m = len(x), len(c)
            if soft:
                sigmas = _surjections(m, n)
            else:
                sigmas = list(itertools.permutations(range(n))) if m == n else []
            for sigma in sigmas:
                homs = [base.hom(x[sigma[j]], c[j]) for j in range(m)]
                for fs in itertools.product(*homs):
                    morphisms.append((SeqMorphism(x, c, sigma, fs), x, c))
    identities = {x: SeqMorphism(x, x, tuple(range(len(x))), tuple(base.identity(a) for a in x))
                  for x in objects}

    def compose(g, f):
        tau, sigma = g.sigma, f.sigma
        return SeqMorphism(f.src, g.dst, tuple(sigma[t] for t in tau),
                           tuple(base.compose(g.fs[k], f.fs[tau[k]]) for k in range(len(tau))))

    gens = []
    for x in objects:
        n = len(x)
        ids = [base.identity(a) for a in x]
        for j in range(n):
            for f in base.out(x[j]):
                if not base.is_identity(f):
                    c = x[:j] + (base.dst(f),) + x[j + 1:]
                    gens.append(SeqMorphism(x, c, tuple(range(n)), tuple(ids[:j] + [f] + ids[j + 1:])))
        for i in range(n - 1):
            sigma = tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, n))
            c = tuple(x[s] for s in sigma)
            gens.append(SeqMorphism(x, c, sigma, tuple(base.identity(a) for a in c)))
        if soft and 1 <= n < max_arity:
            c = x + (x[-1],)
            gens.append(SeqMorphism(x, c, tuple(range(n)) + (n - 1,), tuple(ids + [ids[-1]])))
    kind = "down" if soft else "bang"
    return FinCategory(objects, morphisms, identities, compose, generators=gens,
                       generated={"kind": kind, "base": base, "maxArity": max_arity},
                       name=f"{kind}({base.name or 'A'},{max_arity})")


def free_symmetric(base, max_arity=3):
    """Sequences of length <= max_arity with permutation-indexed morphisms."""
    return _sequence_category(base, max_arity, soft=False)


def free_soft(base, max_arity=3):
    """Sequences of length <= max_arity with surjection-indexed morphisms."""
    return _sequence_category(base, max_arity, soft=True)


def concat_morphisms(base, m1, m2):
    """Juxtapose two sequence morphisms side by side."""
    k = len(m1.src)
    return SeqMorphism(m1.src + m2.src, m1.dst + m2.dst,
                       m1.sigma + tuple(s + k for s in m2.sigma), m1.fs + m2.fs)


class FinFunctor:
    """A functor between finite categories given by object and morphism maps."""

    def __init__(self, src, dst, on_objects, on_morphisms, check=True):
        self.src, self.dst = src, dst
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        if check:
            self.check()

    def __call__(self, x):
        if x in self.on_morphisms:
            return self.on_morphisms[x]
        return self.on_objects[x]

    def check(self):
        for f in self.src.morphisms:
            g = self.on_morphisms[f]
            if (self.dst.src(g), self.dst.dst(g)) != (self.on_objects[self.src.src(f)],
                                                      self.on_objects[self.src.dst(f)]):
                raise DanglingEndpoint(f, "under functor")
        for a in self.src.objects:
            if self.on_morphisms[self.src.identity(a)] != self.dst.identity(self.on_objects[a]):
                raise BadIdentity(a)
        for g, f in self.src.composable_pairs():
            if self.on_morphisms[self.src.compose(g, f)] != self.dst.compose(self.on_morphisms[g],
                                                                             self.on_morphisms[f]):
                raise CategoryError(f"functor does not preserve {g!r} after {f!r}")
