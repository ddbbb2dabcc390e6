"""The chain rule: a comparison map from the composite of two Jacobians to
the Jacobian of the composite functor, and its coherence checks."""

from __future__ import annotations

from .errors import NaturalityError
from .funcalc import (Compose, Identity, Sum, evaluate, evaluate_nat, jacobian, ppi_of_element)
from .presheaf import (NatTrans, coproduct, coproduct_injection, coproduct_map, identity_nat,
                       representable)
from .prof import ProfMorphism, Tensor, compose


class ChainRule:
    """``jacobian(G, F phi) (x) jacobian(F, phi) -> jacobian(G F, phi)``.

    A class ``[u (x) t]`` goes to ``G(t^)(u)`` where ``t^`` is the map out of
    ``F(phi) + rep(b)`` determined by the new element ``t``."""

    def __init__(self, F, G, phi):
        self.F, self.G, self.phi = F, G, phi
        self.inner = jacobian(F, phi)
        self.outer = jacobian(G, evaluate(F, phi))
        self.domain = compose(self.outer, self.inner, check=False)
        self.target = jacobian(Compose(G, F), phi)
        self._lifts = {}
        comps = {}
        for (a, c), q in self.domain.quotients.items():
            comp = {}
            for r, members in q.members.items():
                vals = {self.value(a, b, t, c, u) for b, t, u in members}
                if len(vals) != 1:
                    raise NaturalityError(f"chain map not constant on class {r!r}")
                v = vals.pop()
                if v not in self.target.cells[a, c]:
                    raise NaturalityError(f"chain map sends {r!r} to an old element")
                comp[r] = v
            comps[a, c] = comp
        self.morphism = ProfMorphism(self.domain, self.target, comps, check=True)

    def value(self, a, b, t, c, u):
        key = (a, b, t)
        if key not in self._lifts:
            self._lifts[key] = evaluate_nat(self.G, ppi_of_element(self.F, self.phi, a, b, t))
        return self._lifts[key].components[c][u]

    def __call__(self, a, c, r):
        return self.morphism.components[a, c][r]


def chain_map(F, G, phi):
    return ChainRule(F, G, phi).morphism


def _is_bijective(m):
    return all(len(set(comp.values())) == len(comp) == len(m.dst.cells[k])
               for k, comp in m.components.items())


def _shift_map(t, a):
    """``t + rep(a)``."""
    return coproduct_map([t, identity_nat(representable(t.src.base, a))])


def check_associativity(F, G, H, phi):
    """Both bracketings of ``v (x) u (x) t`` give the same element of the
    triple composite's Jacobian."""
    fphi = evaluate(F, phi)
    gf = ChainRule(F, G, phi)
    hg = ChainRule(G, H, fphi)
    outer_first = ChainRule(F, Compose(H, G), phi)
    inner_first = ChainRule(Compose(G, F), H, phi)
    JF, JG, JH = gf.inner, gf.outer, hg.outer
    A, B, C, D = F.dom, F.cod, G.cod, H.cod
    for a in A.objects:
        for b in B.objects:
            for t in JF.cells[a, b]:
                for c in C.objects:
                    for u in JG.cells[b, c]:
                        s = gf.value(a, b, t, c, u)
                        for d in D.objects:
                            for v in JH.cells[c, d]:
                                w = hg.value(b, c, u, d, v)
                                if outer_first.value(a, b, t, d, w) != inner_first.value(a, c, s, d, v):
                                    return False
    return True


def check_naturality_in_argument(F, G, m):
    """For ``m: phi -> psi``, the chain maps at both ends commute with the
    induced maps of Jacobians."""
    phi, psi = m.src, m.dst
    at_phi, at_psi = ChainRule(F, G, phi), ChainRule(F, G, psi)
    fm = evaluate_nat(F, m)
    GF = Compose(G, F)
    for (a, c), cls in at_phi.domain.cells.items():
        shift_inner = evaluate_nat(F, _shift_map(m, a))
        shift_total = evaluate_nat(GF, _shift_map(m, a))
        for b, t, u in cls:
            t2 = shift_inner.components[b][t]
            u2 = evaluate_nat(G, _shift_map(fm, b)).components[c][u]
            if at_psi.value(a, b, t2, c, u2) != shift_total.components[c][at_phi.value(a, b, t, c, u)]:
                return False
    return True


def _sum_injection(F, F2, X):
    x1, x2 = evaluate(F, X), evaluate(F2, X)
    return coproduct_injection([x1, x2], 0, coproduct([x1, x2]))


def check_naturality_in_inner(F, F2, G, phi):
    """Along the summand inclusion ``F -> F + F2``."""
    Fs = Sum(F, F2)
    plain, summed = ChainRule(F, G, phi), ChainRule(Fs, G, phi)
    alpha_phi = _sum_injection(F, F2, phi)
    for (a, c), cls in plain.domain.cells.items():
        shifted = coproduct([phi, representable(F.dom, a)])
        alpha = _sum_injection(F, F2, shifted)
        g_alpha = evaluate_nat(G, alpha)
        for b, t, u in cls:
            t2 = alpha.components[b][t]
            u2 = evaluate_nat(G, _shift_map(alpha_phi, b)).components[c][u]
            if summed.value(a, b, t2, c, u2) != g_alpha.components[c][plain.value(a, b, t, c, u)]:
                return False
    return True


def check_naturality_in_outer(F, G, G2, phi):
    """Along the summand inclusion ``G -> G + G2``."""
    Gs = Sum(G, G2)
    plain, summed = ChainRule(F, G, phi), ChainRule(F, Gs, phi)
    fphi = evaluate(F, phi)
    for (a, c), cls in plain.domain.cells.items():
        fshift = evaluate(F, coproduct([phi, representable(F.dom, a)]))
        beta_target = _sum_injection(G, G2, fshift)
        for b, t, u in cls:
            beta = _sum_injection(G, G2, coproduct([fphi, representable(F.cod, b)]))
            u2 = beta.components[c][u]
            if summed.value(a, b, t, c, u2) != beta_target.components[c][plain.value(a, b, t, c, u)]:
                return False
    return True


def check_chain_laws(F, G, phi, H=None, maps=()):
    """Run every coherence check that applies; returns a dict of booleans."""
    report = {}
    rule = ChainRule(F, G, phi)
    report["well_defined"] = True
    report["left_unit"] = _is_bijective(chain_map(F, Identity(F.cod), phi))
    report["right_unit"] = _is_bijective(chain_map(Identity(F.dom), F, phi))
    if H is not None:
        report["associative"] = check_associativity(F, G, H, phi)
    for i, m in enumerate(maps):
        report[f"natural_{i}"] = check_naturality_in_argument(F, G, m)
    report["inner_summand"] = check_naturality_in_inner(F, F, G, phi)
    report["outer_summand"] = check_naturality_in_outer(F, G, G, phi)
    report["ok"] = all(report.values())
    report["rule"] = rule
    return report


def tangent_compose(F, G, phi, psi):
    """Compare the composite of tangent maps with the tangent of the
    composite. Returns ``(base, fibre)`` where ``base`` is the identity of
    ``G(F(phi))`` and ``fibre`` maps
    ``jacobian(G, F phi) (x) (jacobian(F, phi) (x) psi)`` to
    ``jacobian(G F, phi) (x) psi``."""
    rule = ChainRule(F, G, phi)
    inner = Tensor(rule.inner, psi)
    src = Tensor(rule.outer, inner.presheaf)
    dst = Tensor(rule.target, psi)
    comps = {}
    for c, q in src.quotients.items():
        comp = {}
        for r, members in q.members.items():
            vals = set()
            for b, z, u in members:
                a, x, t = z
                vals.add(dst.rep(c, (a, x, rule.value(a, b, t, c, u))))
            if len(vals) != 1:
                raise NaturalityError(f"tangent composite not constant on {r!r}")
            comp[r] = vals.pop()
        comps[c] = comp
    fibre = NatTrans(src.presheaf, dst.presheaf, comps, check=True)
    return identity_nat(evaluate(Compose(G, F), phi)), fibre
