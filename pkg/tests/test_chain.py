from hypothesis import given, settings
from hypothesis import strategies as st

from fdcalc.chain import ChainRule, chain_map, check_associativity, check_chain_laws, tangent_compose
from fdcalc.fixtures import ARR, D2, ONE, phi_arr, set_of
from fdcalc.funcalc import Compose, Identity, Linear, Product, jacobian, partial_difference
from fdcalc.generators import Generator
from fdcalc.presheaf import empty_presheaf, representable
from fdcalc.prof import compose

SQUARE = Product(Identity(ONE), Identity(ONE))
KINDS = ("identity", "constant", "linear", "monomial", "analytic")


def bijective(m):
    return all(len(set(c.values())) == len(c) == len(m.dst.cells[k]) for k, c in m.components.items())


def test_unitors():
    gen = Generator(1)
    F = gen.functor(ARR, depth=2, kinds=KINDS)
    phi = phi_arr()
    assert bijective(chain_map(F, Identity(ARR), phi))
    assert bijective(chain_map(Identity(ARR), F, phi))


def test_square_after_square_at_one_point():
    rule = ChainRule(SQUARE, SQUARE, set_of(1))
    # (1+1)^2 - 1 new elements on each side, (1+1)^4 - 1 for the composite
    assert rule.inner.size() == rule.outer.size() == 3
    assert rule.domain.size() == 9
    assert rule.target.size() == 15
    comp = rule.morphism.components["*", "*"]
    assert len(set(comp.values())) == len(comp)


def test_linear_triples_compose_to_matrix_products():
    gen = Generator(4)
    P = gen.profunctor(ARR, D2, 2)
    Q = gen.profunctor(D2, ARR, 2)
    R = gen.profunctor(ARR, ONE, 2)
    phi = phi_arr()
    m = chain_map(Linear(P), Linear(Q), phi)
    assert bijective(m)
    assert m.dst.cardinalities() == compose(Q, P).cardinalities()
    assert check_associativity(Linear(P), Linear(Q), Linear(R), phi)


def test_mixed_triple_associativity():
    F = Linear(Generator(5).profunctor(ONE, ONE, 2))
    assert check_associativity(F, SQUARE, SQUARE, set_of(1))
    assert check_associativity(SQUARE, F, SQUARE, set_of(2))


def test_identity_third_functor():
    F = SQUARE
    assert check_associativity(F, F, Identity(ONE), set_of(1))


def test_tangent_fibres():
    gen = Generator(6)
    P = gen.profunctor(ARR, ARR, 2)
    Q = gen.profunctor(ARR, ARR, 2)
    phi = phi_arr()
    _, fibre = tangent_compose(Linear(P), Linear(Q), phi, empty_presheaf(ARR))
    assert fibre.src.size() == fibre.dst.size() == 0
    _, fibre = tangent_compose(Linear(P), Linear(Q), phi, gen.presheaf(ARR, 3))
    assert fibre.is_iso()
    F = Product(Identity(ARR), Identity(ARR))
    for a in ARR.objects:
        _, fibre = tangent_compose(F, F, phi, representable(ARR, a))
        J = jacobian(Compose(F, F), phi)
        assert [len(fibre.dst.elems[b]) for b in ARR.objects] == [len(J.cells[a, b]) for b in ARR.objects]
        assert fibre.dst.size() == partial_difference(Compose(F, F), a, phi).size()


@settings(max_examples=15)
@given(st.integers(0, 2 ** 32 - 1))
def test_chain_laws_on_random_pairs(seed):
    gen = Generator(seed)
    base = gen.rng.choice([ONE, ARR, D2])
    F = gen.functor(base, depth=1, kinds=KINDS)
    G = gen.functor(base, depth=1, kinds=KINDS)
    H = gen.functor(base, depth=0, kinds=KINDS)
    phi = gen.presheaf(base, 2)
    t = gen.nat_trans(phi, gen.presheaf(base, 2, prefix="w"))
    report = check_chain_laws(F, G, phi, H=H, maps=[t] if t is not None else [])
    assert report["ok"], {k: v for k, v in report.items() if v is False}
