"""Functor expressions between presheaf categories and their finite
differences.

An expression is built from identities, constants, tensoring with a
profunctor, homming out of a profunctor, analytic functors of symmetric
sequences, sums, products, composites and partial differences. Evaluation
is memoized on ``(expression, presheaf)``; ``functools.lru_cache`` is
thread-safe, so shared caches are fine.

The partial difference of ``F`` in direction ``a`` at ``phi`` is the
complement of ``F(phi)`` inside ``F(phi + rep(a))``; its elements are
elements of that larger presheaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import analytic
from .errors import BaseMismatch, EndpointMismatch, NotNew, NotPPI, NotTense
from .presheaf import (NatTrans, Presheaf, Subobject, coproduct, coproduct_injection,
                       coproduct_map, element_map, full_subobject, identity_nat, iter_hom,
                       product_presheaf, product_map, representable, complement, complement_witness)
from .prof import Profunctor, Tensor, _family, hom_tense_check, tensor_nat


class FunctorExpr:
    """Base class; ``dom`` and ``cod`` are the base categories."""

    def __add__(self, other):
        return Sum(self, other)

    def __mul__(self, other):
        return Product(self, other)

    def __matmul__(self, other):
        return Compose(self, other)


@dataclass(frozen=True)
class Identity(FunctorExpr):
    cat: object

    @property
    def dom(self):
        return self.cat

    @property
    def cod(self):
        return self.cat


@dataclass(frozen=True)
class Constant(FunctorExpr):
    value: Presheaf
    source: object

    @property
    def dom(self):
        return self.source

    @property
    def cod(self):
        return self.value.base


@dataclass(frozen=True)
class Linear(FunctorExpr):
    """``phi`` goes to ``P (x) phi``."""
    prof: Profunctor

    @property
    def dom(self):
        return self.prof.src

    @property
    def cod(self):
        return self.prof.dst


@dataclass(frozen=True)
class Monomial(FunctorExpr):
    """For ``P: A -|-> B``, ``phi`` on ``B`` goes to ``a -> Nat(P(a, -), phi)``."""
    prof: Profunctor

    @property
    def dom(self):
        return self.prof.dst

    @property
    def cod(self):
        return self.prof.src


@dataclass(frozen=True)
class AnalyticStrict(FunctorExpr):
    seq: object

    def __post_init__(self):
        if self.seq.mode != "strict":
            raise analytic.ModeError("expected a strict sequence")

    @property
    def dom(self):
        return self.seq.base

    @property
    def cod(self):
        return self.seq.target


@dataclass(frozen=True)
class AnalyticSoft(FunctorExpr):
    seq: object

    def __post_init__(self):
        if self.seq.mode != "soft":
            raise analytic.ModeError("expected a soft sequence")

    @property
    def dom(self):
        return self.seq.base

    @property
    def cod(self):
        return self.seq.target


def _same(c1, c2, what):
    if c1 is not c2 and c1 != c2:
        raise EndpointMismatch(what)


@dataclass(frozen=True)
class Sum(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __post_init__(self):
        _same(self.left.dom, self.right.dom, "summands have different domains")
        _same(self.left.cod, self.right.cod, "summands have different codomains")

    @property
    def dom(self):
        return self.left.dom

    @property
    def cod(self):
        return self.left.cod


@dataclass(frozen=True)
class Product(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __post_init__(self):
        _same(self.left.dom, self.right.dom, "factors have different domains")
        _same(self.left.cod, self.right.cod, "factors have different codomains")

    @property
    def dom(self):
        return self.left.dom

    @property
    def cod(self):
        return self.left.cod


@dataclass(frozen=True)
class Compose(FunctorExpr):
    """``outer`` after ``inner``."""
    outer: FunctorExpr
    inner: FunctorExpr

    def __post_init__(self):
        _same(self.inner.cod, self.outer.dom, "composite does not typecheck")

    @property
    def dom(self):
        return self.inner.dom

    @property
    def cod(self):
        return self.outer.cod


@dataclass(frozen=True)
class Delta(FunctorExpr):
    """The partial difference of ``inner`` in the direction of ``obj``."""
    inner: FunctorExpr
    obj: object

    def __post_init__(self):
        self.inner.dom.obj_index(self.obj)

    @property
    def dom(self):
        return self.inner.dom

    @property
    def cod(self):
        return self.inner.cod


def shift(cat, a):
    """``phi + rep(a)`` as an expression."""
    return Sum(Identity(cat), Constant(representable(cat, a), cat))


def tensor_expr(P, F):
    """``P (x) F``."""
    return Compose(Linear(P), F)


# -- evaluation ------------------------------------------------------------------

def evaluate(F, phi):
    if phi.base is not F.dom and phi.base != F.dom:
        raise BaseMismatch(f"argument lives over {phi.base!r}, expected {F.dom!r}")
    return _evaluate(F, phi)


@lru_cache(maxsize=4096)
def _evaluate(F, phi):
    if isinstance(F, Identity):
        return phi
    if isinstance(F, Constant):
        return F.value
    if isinstance(F, Linear):
        return tensor_value(F.prof, phi).presheaf
    if isinstance(F, Monomial):
        return monomial_eval(F.prof, phi)
    if isinstance(F, (AnalyticStrict, AnalyticSoft)):
        return analytic.analytic_eval(F.seq, phi)
    if isinstance(F, Sum):
        return coproduct([_evaluate(F.left, phi), _evaluate(F.right, phi)])
    if isinstance(F, Product):
        return product_presheaf(_evaluate(F.left, phi), _evaluate(F.right, phi))
    if isinstance(F, Compose):
        return _evaluate(F.outer, _evaluate(F.inner, phi))
    if isinstance(F, Delta):
        return difference_value(F.inner, F.obj, phi).complement.as_presheaf()
    raise TypeError(f"not a functor expression: {F!r}")


@lru_cache(maxsize=1024)
def tensor_value(P, phi):
    return Tensor(P, phi)


def monomial_eval(P, phi):
    A, B = P.src, P.dst
    elems = {a: [_family(m) for m in iter_hom(P.row(a), phi)] for a in A.objects}
    action = {}
    for f in A.morphisms:
        a, a2 = A.src(f), A.dst(f)
        cells2 = [(b, p) for b in B.objects for p in P.cells[a2, b]]
        table = {}
        for s in elems[a]:
            d = dict(s)
            table[s] = _family({(b, p): d[b, P.left[f, b][p]] for b, p in cells2})
        action[f] = table
    return Presheaf(A, elems, action, check=False)


def evaluate_nat(F, t):
    """``F(t)`` for a natural transformation ``t``."""
    if t.src.base is not F.dom and t.src.base != F.dom:
        raise BaseMismatch("transformation lives over the wrong category")
    return _evaluate_nat(F, t)


@lru_cache(maxsize=4096)
def _evaluate_nat(F, t):
    if isinstance(F, Identity):
        return t
    if isinstance(F, Constant):
        return identity_nat(F.value)
    if isinstance(F, Linear):
        return tensor_nat(F.prof, t)
    if isinstance(F, Monomial):
        src, dst = _evaluate(F, t.src), _evaluate(F, t.dst)
        comps = {a: {s: tuple((k, t.components[k[0]][v]) for k, v in s) for s in xs}
                 for a, xs in src.elems.items()}
        return NatTrans(src, dst, comps, check=False)
    if isinstance(F, (AnalyticStrict, AnalyticSoft)):
        return analytic.analytic_nat(F.seq, t)
    if isinstance(F, Sum):
        return coproduct_map([_evaluate_nat(F.left, t), _evaluate_nat(F.right, t)])
    if isinstance(F, Product):
        return product_map(_evaluate_nat(F.left, t), _evaluate_nat(F.right, t))
    if isinstance(F, Compose):
        return _evaluate_nat(F.outer, _evaluate_nat(F.inner, t))
    if isinstance(F, Delta):
        rep = representable(F.dom, F.obj)
        big = _evaluate_nat(F.inner, coproduct_map([t, identity_nat(rep)]))
        src, dst = _evaluate(F, t.src), _evaluate(F, t.dst)
        comps = {}
        for b, xs in src.elems.items():
            comps[b] = {x: big.components[b][x] for x in xs}
            for x, y in comps[b].items():
                if not dst.contains(b, y):
                    raise NotTense(F, (b, x))
        return NatTrans(src, dst, comps, check=False)
    raise TypeError(f"not a functor expression: {F!r}")


# -- tenseness --------------------------------------------------------------------

@dataclass
class TenseCertificate:
    node: FunctorExpr
    rule: str
    children: list

    def rules(self):
        out = [self.rule]
        for c in self.children:
            out += c.rules()
        return out


def tense_certify(F):
    """Certify tenseness structurally, or raise ``NotTense`` with a witness."""
    if isinstance(F, Identity):
        return TenseCertificate(F, "identity", [])
    if isinstance(F, Constant):
        return TenseCertificate(F, "constant", [])
    if isinstance(F, Linear):
        return TenseCertificate(F, "cocontinuous", [])
    if isinstance(F, Monomial):
        ok, witness = hom_tense_check(F.prof)
        if not ok:
            raise NotTense(F, witness)
        return TenseCertificate(F, "hom-pi0", [])
    if isinstance(F, (AnalyticStrict, AnalyticSoft)):
        return TenseCertificate(F, "analytic", [])
    if isinstance(F, Sum):
        return TenseCertificate(F, "closure-sum", [tense_certify(F.left), tense_certify(F.right)])
    if isinstance(F, Product):
        return TenseCertificate(F, "closure-product", [tense_certify(F.left), tense_certify(F.right)])
    if isinstance(F, Compose):
        return TenseCertificate(F, "closure-compose", [tense_certify(F.outer), tense_certify(F.inner)])
    if isinstance(F, Delta):
        return TenseCertificate(F, "partial-difference", [tense_certify(F.inner)])
    raise TypeError(f"not a functor expression: {F!r}")


def preserves_binary_sums(F):
    """Structural sufficient condition used by the composite rule."""
    if isinstance(F, (Identity, Linear)):
        return True
    if isinstance(F, Sum):
        return preserves_binary_sums(F.left) and preserves_binary_sums(F.right)
    if isinstance(F, Compose):
        return preserves_binary_sums(F.outer) and preserves_binary_sums(F.inner)
    return False


# -- partial differences ---------------------------------------------------------

class DifferenceValue:
    """``F(phi) -> F(phi + rep(a))`` together with the complement of its image."""

    def __init__(self, F, a, phi):
        self.functor, self.obj, self.argument = F, a, phi
        rep = representable(F.dom, a)
        self.shifted = coproduct([phi, rep])
        self.injection = coproduct_injection([phi, rep], 0, self.shifted)
        self.inclusion = evaluate_nat(F, self.injection)
        self.ambient = self.inclusion.dst
        if not self.inclusion.is_mono():
            raise NotTense(F, ("inclusion not injective", a))
        self.old = self.inclusion.image()
        w = complement_witness(self.old)
        if w is not None:
            raise NotTense(F, ("image not complemented",) + w)
        self.complement = complement(self.old)


@lru_cache(maxsize=2048)
def difference_value(F, a, phi):
    return DifferenceValue(F, a, phi)


def partial_difference(F, a, phi):
    """New elements of ``F(phi + rep(a))``, as a subobject of it."""
    evaluate(F, phi)
    return difference_value(F, a, phi).complement


def representable_map(cat, f):
    """For ``f: a2 -> a``, the map ``rep(a) -> rep(a2)`` precomposing with ``f``."""
    a2, a = cat.src(f), cat.dst(f)
    src, dst = representable(cat, a), representable(cat, a2)
    return NatTrans(src, dst, {b: {h: cat.compose(h, f) for h in src.elems[b]} for b in cat.objects},
                    check=False)


def jacobian(F, phi):
    """Partial differences in every direction, assembled into a profunctor
    from the domain category to the codomain category."""
    A, B = F.dom, F.cod
    evaluate(F, phi)
    vals = {a: difference_value(F, a, phi) for a in A.objects}
    cells = {(a, b): vals[a].complement.subset[b] for a in A.objects for b in B.objects}
    left = {}
    for f in A.morphisms:
        if A.is_identity(f):
            continue
        a2, a = A.src(f), A.dst(f)
        move = evaluate_nat(F, coproduct_map([identity_nat(phi), representable_map(A, f)]))
        for b in B.objects:
            table = {x: move.components[b][x] for x in cells[a, b]}
            for x, y in table.items():
                if y not in cells[a2, b]:
                    raise NotTense(F, (f, b, x))
            left[f, b] = table
    right = {(a, g): {x: vals[a].ambient.action[g][x] for x in cells[a, B.src(g)]}
             for a in A.objects for g in B.morphisms if not B.is_identity(g)}
    J = Profunctor(A, B, cells, left, right, check=False)
    J.ambients = {a: vals[a].ambient for a in A.objects}
    J.functor, J.argument = F, phi
    return J


def nested_shift(phi, seq):
    """``(((phi + rep a1) + rep a2) + ...)``, the argument iterated differences see."""
    cat = phi.base
    out = phi
    for a in seq:
        out = coproduct([out, representable(cat, a)])
    return out


def flat_shift(phi, seq):
    """``phi + rep a1 + ... + rep an`` with tags ``0..n``."""
    cat = phi.base
    return coproduct([phi] + [representable(cat, a) for a in seq], base=cat)


def _nested_tag(x, n):
    """Turn a nested-sum element into its flat tag."""
    for k in range(n, 0, -1):
        tag, x = x
        if tag == 1:
            return (k, x)
    return (0, x)


def nested_to_flat(phi, seq):
    src, dst = nested_shift(phi, seq), flat_shift(phi, seq)
    n = len(seq)
    return NatTrans(src, dst, {a: {x: _nested_tag(x, n) for x in xs} for a, xs in src.elems.items()},
                    check=False)


def omit_inclusion(phi, seq, j):
    """The summand inclusion of ``flat_shift(phi, seq minus j)`` into ``flat_shift(phi, seq)``."""
    rest = seq[:j] + seq[j + 1:]
    src, dst = flat_shift(phi, rest), flat_shift(phi, seq)
    relabel = lambda k: k if k <= j else k + 1
    return NatTrans(src, dst, {a: {(k, x): (relabel(k), x) for k, x in xs}
                               for a, xs in src.elems.items()}, check=False)


def permute_flat(phi, seq, perm):
    """Iso ``flat_shift(phi, permuted) -> flat_shift(phi, seq)`` where
    ``permuted[i] = seq[perm[i]]``."""
    permuted = tuple(seq[p] for p in perm)
    src, dst = flat_shift(phi, permuted), flat_shift(phi, seq)
    return NatTrans(src, dst, {a: {(k, x): ((0 if k == 0 else perm[k - 1] + 1), x) for k, x in xs}
                               for a, xs in src.elems.items()}, check=False)


def new_elements(F, phi, seq):
    """Elements of ``F(flat_shift(phi, seq))`` outside the image of every
    summand-omitting inclusion."""
    ambient = evaluate(F, flat_shift(phi, seq))
    old = {b: set() for b in F.cod.objects}
    for j in range(len(seq)):
        inc = evaluate_nat(F, omit_inclusion(phi, seq, j))
        for b, comp in inc.components.items():
            old[b] |= set(comp.values())
    return Subobject(ambient, {b: set(ambient.elems[b]) - old[b] for b in F.cod.objects}, check=False)


def iterated_difference_expr(F, seq):
    G = F
    for a in reversed(seq):
        G = Delta(G, a)
    return G


def higher_difference(F, seq, phi):
    """The iterated difference along ``seq``, computed both by nesting partial
    differences and by the new-element formula; the two must agree.

    Returns a subobject of ``F(flat_shift(phi, seq))``, or of ``F(phi)``
    for the empty sequence."""
    seq = tuple(seq)
    if not seq:
        return full_subobject(evaluate(F, phi))
    nested = evaluate(iterated_difference_expr(F, seq), phi)
    to_flat = evaluate_nat(F, nested_to_flat(phi, seq))
    via_nesting = {b: {to_flat.components[b][x] for x in xs} for b, xs in nested.elems.items()}
    direct = new_elements(F, phi, seq)
    if via_nesting != {b: set(v) for b, v in direct.subset.items()}:
        raise AssertionError("iterated and direct higher differences disagree")
    return direct


def clairaut_check(F, seq, phi, perm):
    """Whether the higher difference along a permuted sequence corresponds to
    the original one under the reindexing isomorphism."""
    seq = tuple(seq)
    permuted = tuple(seq[p] for p in perm)
    d1 = higher_difference(F, seq, phi)
    d2 = higher_difference(F, permuted, phi)
    iso = evaluate_nat(F, permute_flat(phi, seq, perm))
    moved = {b: {iso.components[b][x] for x in xs} for b, xs in d2.subset.items()}
    return moved == {b: set(v) for b, v in d1.subset.items()}


# -- elements as maps ----------------------------------------------------------------

def ppi_of_element(F, phi, a, b, x):
    """Turn a new element ``x`` of ``F(phi + rep(a))`` at ``b`` into the map
    ``F(phi) + rep(b) -> F(phi + rep(a))`` that is the inclusion on the
    first summand and sends ``g: b -> b2`` to ``g . x``."""
    dv = difference_value(F, a, phi)
    if x not in dv.complement.subset[b]:
        raise NotNew(f"{x!r} already lies in F(phi)")
    C = F.cod
    fphi = evaluate(F, phi)
    rep_b = representable(C, b)
    dom = coproduct([fphi, rep_b])
    comps = {}
    for c in C.objects:
        comp = {(0, y): dv.inclusion.components[c][y] for y in fphi.elems[c]}
        for g in rep_b.elems[c]:
            comp[(1, g)] = dv.ambient.action[g][x]
        comps[c] = comp
    u = NatTrans(dom, dv.ambient, comps, check=True)
    for c in C.objects:
        for g in rep_b.elems[c]:
            if comps[c][(1, g)] in dv.old.subset[c]:
                raise NotPPI(f"{g!r} sends {x!r} back into F(phi)")
    return u


def element_of_ppi(u, b):
    """Inverse of ``ppi_of_element``: the image of ``id_b``."""
    return u.components[b][(1, u.src.base.identity(b))]


def is_ppi(u, old):
    """``u: X + rep(b) -> Y`` with ``old`` a subobject of ``Y``: the preimage of
    ``old`` must be exactly the first summand, mapped injectively."""
    for c, comp in u.components.items():
        firsts = [y for (k, _), y in comp.items() if k == 0]
        if len(set(firsts)) != len(firsts):
            return False
        for (k, _), y in comp.items():
            if (y in old.subset[c]) != (k == 0):
                return False
    return True


# -- the difference operator and tangent -------------------------------------------

def difference_operator(F, phi, psi):
    """``jacobian(F, phi) (x) psi``."""
    J = jacobian(F, phi)
    return Tensor(J, psi).presheaf


def tangent(F, phi, psi):
    return evaluate(F, phi), difference_operator(F, phi, psi)


# -- core ---------------------------------------------------------------------------

def core(F):
    """``core(F)(a, b) = F(rep a)(b)``."""
    A, B = F.dom, F.cod
    reps = {a: evaluate(F, representable(A, a)) for a in A.objects}
    cells = {(a, b): reps[a].elems[b] for a in A.objects for b in B.objects}
    left = {}
    for f in A.morphisms:
        if A.is_identity(f):
            continue
        m = evaluate_nat(F, representable_map(A, f))
        for b in B.objects:
            left[f, b] = dict(m.components[b])
    right = {(a, g): reps[a].action[g] for a in A.objects for g in B.morphisms}
    return Profunctor(A, B, cells, left, right, check=False)


def core_counit(F, phi):
    """``core(F) (x) phi -> F(phi)``: ``[x, y]`` goes to ``F(x)(y)`` with ``x``
    read as a map out of a representable. Raises if this is not constant
    on classes."""
    tv = Tensor(core(F), phi)
    target = evaluate(F, phi)
    maps = {}
    comps = {}
    for b, q in tv.quotients.items():
        comp = {}
        for r, members in q.members.items():
            vals = set()
            for a, x, y in members:
                if (a, x) not in maps:
                    maps[a, x] = evaluate_nat(F, element_map(phi, a, x))
                vals.add(maps[a, x].components[b][y])
            if len(vals) != 1:
                raise AssertionError(f"counit not well defined on class {r!r}")
            comp[r] = vals.pop()
        comps[b] = comp
    return NatTrans(tv.presheaf, target, comps, check=True)


def describe(F):
    """Short readable form of an expression."""
    if isinstance(F, Identity):
        return "Id"
    if isinstance(F, Constant):
        return f"Const[{F.value.size()}]"
    if isinstance(F, Linear):
        return f"Lin[{F.prof.size()}]"
    if isinstance(F, Monomial):
        return f"Hom[{F.prof.size()}]"
    if isinstance(F, AnalyticStrict):
        return f"Strict{F.seq.arity_sizes()}"
    if isinstance(F, AnalyticSoft):
        return f"Soft{F.seq.arity_sizes()}"
    if isinstance(F, Sum):
        return f"({describe(F.left)} + {describe(F.right)})"
    if isinstance(F, Product):
        return f"({describe(F.left)} x {describe(F.right)})"
    if isinstance(F, Compose):
        return f"{describe(F.outer)}.{describe(F.inner)}"
    if isinstance(F, Delta):
        return f"D_{F.obj}[{describe(F.inner)}]"
    return repr(F)

