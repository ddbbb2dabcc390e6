"""Seeded random instances: categories, presheaves, natural transformations,
profunctors, symmetric sequences and functor expressions.

Everything is drawn from one ``random.Random``, so a seed fixes the whole
stream. Instances are built constructively (sums of representables cut
down by random congruences) and rejected when they exceed the size bounds;
``Generator.stats`` records how many draws were tried and accepted.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from .analytic import free_sequence, sequence_category
from .errors import FdcalcError, NonAssociative, SizeGuardExceeded
from .fincat import FinCategory, discrete_category, opposite, product_category
from .fixtures import ARR, D2, ONE
from .funcalc import (AnalyticSoft, AnalyticStrict, Compose, Constant, Identity, Linear, Monomial,
                      Product, Sum)
from .order import sort_canon
from .presheaf import (NatTrans, Presheaf, coproduct, congruence_quotient, iter_hom, representable,
                       terminal)
from .prof import Profunctor, hom_tense_check


def relabel(phi, prefix="x"):
    """Rename elements to short strings, numbered per object in canonical order."""
    names = {a: {x: f"{prefix}{i}" for i, x in enumerate(phi.elems[a])} for a in phi.base.objects}
    action = {f: {names[phi.base.src(f)][x]: names[phi.base.dst(f)][y] for x, y in t.items()}
              for f, t in phi.action.items()}
    return Presheaf(phi.base, {a: list(n.values()) for a, n in names.items()}, action, check=False)


def profunctor_from_presheaf(A, B, phi):
    """Read a presheaf on ``A^op x B`` as a profunctor ``A -|-> B``."""
    cells = {k: list(phi.elems[k]) for k in phi.base.objects}
    left = {(f, b): dict(phi.action[f, B.identity(b)]) for f in A.morphisms for b in B.objects}
    right = {(a, g): dict(phi.action[A.identity(a), g]) for a in A.objects for g in B.morphisms}
    return Profunctor(A, B, cells, left, right, check=False)


class Generator:
    def __init__(self, seed=0, max_objects=3, max_elems=3, max_arity=3):
        self.rng = random.Random(seed)
        self.max_objects = max_objects
        self.max_elems = max_elems
        self.max_arity = max_arity
        self.tried = Counter()
        self.accepted = Counter()

    @property
    def stats(self):
        return {k: {"tried": self.tried[k], "accepted": self.accepted[k],
                    "rate": round(self.accepted[k] / self.tried[k], 4)}
                for k in sorted(self.tried)}

    def _record(self, kind, ok):
        self.tried[kind] += 1
        if ok:
            self.accepted[kind] += 1
        return ok

    # -- categories ----------------------------------------------------------------
    def discrete(self, n=None):
        n = self.rng.randint(1, self.max_objects) if n is None else n
        return discrete_category([f"a{i}" for i in range(n)])

    def preorder(self, n=None):
        """Reflexive-transitive closure of a random relation."""
        n = self.rng.randint(1, self.max_objects) if n is None else n
        objs = [f"o{i}" for i in range(n)]
        le = {(i, i) for i in range(n)}
        for i, j in itertools.permutations(range(n), 2):
            if self.rng.random() < 0.35:
                le.add((i, j))
        changed = True
        while changed:
            changed = False
            for (i, j), (k, l) in itertools.product(list(le), repeat=2):
                if j == k and (i, l) not in le:
                    le.add((i, l))
                    changed = True
        mid = {(i, j): f"{objs[i]}<{objs[j]}" for i, j in le}
        mors = [(mid[i, j], objs[i], objs[j]) for i, j in sorted(le)]
        comp = {(mid[j, k], mid[i, j]): mid[i, k] for i, j in le for j2, k in le if j2 == j}
        self._record("preorder", True)
        return FinCategory(objs, mors, {objs[i]: mid[i, i] for i in range(n)}, comp)

    def monoid(self, size=None, tries=200):
        """A one-object category with a random associative multiplication."""
        size = self.rng.randint(2, 3) if size is None else size
        elems = ["1"] + [f"m{i}" for i in range(1, size)]
        for _ in range(tries):
            table = {}
            for g, f in itertools.product(elems, repeat=2):
                table[g, f] = f if g == "1" else g if f == "1" else self.rng.choice(elems)
            cat = FinCategory(["*"], [(m, "*", "*") for m in elems], {"*": "1"}, table)
            try:
                cat.check_laws()
            except NonAssociative:
                self._record("monoid", False)
                continue
            self._record("monoid", True)
            return cat
        raise FdcalcError("no associative table found")

    def category(self, kinds=("one", "arr", "d2", "discrete", "preorder", "monoid")):
        kind = self.rng.choice(kinds)
        if kind == "one":
            return ONE
        if kind == "arr":
            return ARR
        if kind == "d2":
            return D2
        if kind == "discrete":
            return self.discrete()
        if kind == "preorder":
            return self.preorder()
        return self.monoid()

    # -- presheaves ----------------------------------------------------------------
    def presheaf(self, cat, max_elems=None, tries=50, prefix="x"):
        """A sum of representables and terminals, quotiented by a random
        congruence. The size aims at a target drawn uniformly from
        ``1..max_elems`` (occasionally zero) and never exceeds the bound."""
        bound = self.max_elems if max_elems is None else max_elems
        target = 0 if bound == 0 or self.rng.random() < 0.05 else self.rng.randint(1, bound)
        for _ in range(tries):
            parts, size = [], 0
            while size < target:
                if self.rng.random() < 0.2:
                    part = terminal(cat)
                else:
                    part = representable(cat, self.rng.choice(cat.objects))
                parts.append(part)
                size += part.size()
            phi = coproduct(parts, base=cat)
            pairs = []
            if self.rng.random() < 0.5:
                a = self.rng.choice(cat.objects)
                if len(phi.elems[a]) >= 2:
                    x, y = self.rng.sample(list(phi.elems[a]), 2)
                    pairs.append(((a, x), (a, y)))
            if pairs:
                phi, _ = congruence_quotient(phi, pairs)
            if self._record("presheaf", phi.size() <= bound):
                return relabel(phi, prefix)
        return Presheaf(cat, {}, {})

    def set_presheaf(self, cat, n, prefix="x"):
        """``n`` elements over a discrete base, spread at random."""
        elems = {a: [] for a in cat.objects}
        for i in range(n):
            elems[self.rng.choice(cat.objects)].append(f"{prefix}{i}")
        return Presheaf(cat, elems, {})

    def nat_trans(self, src, dst, limit=2000):
        """A uniformly chosen natural transformation, or ``None`` if there is none."""
        try:
            found = list(itertools.islice(iter_hom(src, dst), limit))
        except SizeGuardExceeded:
            found = []
        self._record("nat_trans", bool(found))
        if not found:
            return None
        comps = {a: {} for a in src.base.objects}
        for (a, x), v in self.rng.choice(found).items():
            comps[a][x] = v
        return NatTrans(src, dst, comps, check=False)

    # -- profunctors ---------------------------------------------------------------
    def discrete_profunctor(self, A, B, max_cell=None, prefix="p"):
        top = self.max_elems if max_cell is None else max_cell
        cells = {(a, b): [f"{prefix}{i}" for i in range(self.rng.randint(0, top))]
                 for a in A.objects for b in B.objects}
        self._record("discrete_profunctor", True)
        return Profunctor(A, B, cells, {}, {})

    def profunctor(self, A, B, max_elems=None):
        phi = self.presheaf(product_category(opposite(A), B), max_elems, prefix="p")
        return profunctor_from_presheaf(A, B, phi)

    # -- symmetric sequences -------------------------------------------------------
    def sequence(self, mode, base, target=ONE, max_arity=None, max_gens=2, max_cells=40, tries=50):
        """A free sequence on random generators modulo random relations."""
        n = self.max_arity if max_arity is None else max_arity
        cat = sequence_category(mode, base, n)
        for _ in range(tries):
            gens = []
            for i in range(self.rng.randint(1, max_gens)):
                seq = self.rng.choice(cat.objects)
                gens.append((f"g{i}", seq, self.rng.choice(target.objects)))
            S = free_sequence(mode, base, target, n, gens)
            relations = []
            for _ in range(self.rng.randint(0, 2)):
                name, seq, b = self.rng.choice(gens)
                here = [x for x in S.cells.get((seq, b), ()) if x[0] == name]
                if len(here) >= 2:
                    x, y = self.rng.sample(sort_canon(here), 2)
                    relations.append(((seq, b), x, y))
            if relations:
                S = free_sequence(mode, base, target, n, gens, relations, check=False)
            if self._record(f"{mode}_sequence", S.size() <= max_cells):
                return S
        raise FdcalcError("no sequence within bounds")

    # -- functor expressions -------------------------------------------------------
    def leaf(self, dom, cod, kinds=("identity", "constant", "linear", "monomial", "analytic")):
        for _ in range(20):
            kind = self.rng.choice(kinds)
            if kind == "identity" and dom is cod:
                return Identity(dom)
            if kind == "constant":
                return Constant(self.presheaf(cod, 2, prefix="c"), dom)
            if kind == "linear":
                return Linear(self.profunctor(dom, cod, 2))
            if kind == "monomial":
                P = self.profunctor(cod, dom, 2)
                ok, _ = hom_tense_check(P)
                if self._record("monomial", ok):
                    return Monomial(P)
            if kind == "analytic":
                mode = self.rng.choice(["strict", "soft"])
                S = self.sequence(mode, dom, cod, max_arity=2, max_gens=1, max_cells=12)
                return AnalyticStrict(S) if mode == "strict" else AnalyticSoft(S)
        return Identity(dom) if dom is cod else Constant(terminal(cod), dom)

    def functor(self, dom, cod=None, depth=2, kinds=None):
        """A grammar expression ``Set^dom -> Set^cod``."""
        cod = dom if cod is None else cod
        kw = {} if kinds is None else {"kinds": kinds}
        if depth <= 0 or self.rng.random() < 0.35:
            return self.leaf(dom, cod, **kw)
        node = self.rng.choice(["sum", "product", "compose"])
        if node == "compose":
            return Compose(self.functor(cod, cod, depth - 1, kinds), self.functor(dom, cod, depth - 1, kinds))
        left, right = self.functor(dom, cod, depth - 1, kinds), self.functor(dom, cod, depth - 1, kinds)
        return Sum(left, right) if node == "sum" else Product(left, right)
