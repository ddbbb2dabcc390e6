import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdcalc.analytic import free_sequence, soften
from fdcalc.errors import NotNew, NotTense
from fdcalc.fixtures import ARR, D2, ONE, POINT, fibred_product_profunctor
from fdcalc.funcalc import (AnalyticSoft, Constant, Identity, Linear, Monomial, Product, Sum, evaluate)
from fdcalc.generators import Generator
from fdcalc.newton import (TransFamily, check_counit_iso, check_unit_iso, counit, default_test_presheaves,
                           new_element_sequence, newton_functor, transpose_down, transpose_up)
from fdcalc.presheaf import NatTrans, terminal
from fdcalc.prof import ProfMorphism
from fdcalc.suites import small_presheaves
from helpers import symmetric_pair

SQUARE = Product(Identity(ONE), Identity(ONE))


def cells_by_arity(D):
    out = [0] * (D.max_arity + 1)
    for (x, _), ps in D.cells.items():
        out[len(x)] += len(ps)
    return out


def test_identity_new_elements_are_homs():
    D = new_element_sequence(Identity(ARR), 3)
    for (x, b), ps in D.cells.items():
        if len(x) == 1:
            assert len(ps) == len(ARR.hom(x[0], b))
        else:
            assert not ps


def test_linear_new_elements_are_cells():
    P = Generator(1).profunctor(ARR, D2, 3)
    D = new_element_sequence(Linear(P), 3)
    for (x, b), ps in D.cells.items():
        assert len(ps) == (len(P.cells[x[0], b]) if len(x) == 1 else 0)


def test_square_new_elements_by_arity():
    assert cells_by_arity(new_element_sequence(SQUARE, 4)) == [0, 1, 2, 0, 0]


def test_newton_functor_reproduces_linear_identity_constant():
    P = Generator(2).profunctor(ARR, ARR, 3)
    psi = Generator(3).presheaf(ARR, 2)
    for F in (Linear(P), Identity(ARR), Constant(psi, ARR)):
        G = newton_functor(F, 2)
        for phi in small_presheaves(ARR, 2):
            assert evaluate(G, phi).size() == evaluate(F, phi).size()
        assert check_counit_iso(F, 2)["iso"]


def test_unit_examples():
    for S in (symmetric_pair("soft"), soften(symmetric_pair("strict"))):
        report = check_unit_iso(S)
        assert report["ok"]
        assert all(n == m for n, m in report["cells"].values())
    empty = free_sequence("soft", ONE, ONE, 2, [])
    assert check_unit_iso(empty)["ok"]


def test_counit_of_identity_family_is_unit():
    S = symmetric_pair("soft")
    F = AnalyticSoft(S)
    D = new_element_sequence(F, 2)
    ident = ProfMorphism(D, D, {k: {p: p for p in ps} for k, ps in D.cells.items()})
    t = transpose_up(ident, F)
    eps, _ = counit(F, 2)
    for phi in default_test_presheaves(ONE, 2):
        assert t.at(phi) == eps.at(phi)


def test_old_element_target_is_rejected():
    S = free_sequence("soft", ONE, ONE, 1, [("p", ("*",), "*")])
    F = Sum(Identity(ONE), Constant(terminal(ONE), ONE))
    G = AnalyticSoft(S)

    def to_point(phi):
        src, dst = evaluate(G, phi), evaluate(F, phi)
        return NatTrans(src, dst, {POINT: {r: (1, "*") for r in src.elems[POINT]}})

    t = TransFamily(G, F, to_point)
    with pytest.raises(NotNew):
        transpose_down(t, S, F, 1, require_tense=False)
    with pytest.raises(NotTense):
        transpose_down(t, S, F, 1)


def test_counit_not_iso_for_fibred_product():
    report = check_counit_iso(Monomial(fibred_product_profunctor()), 2)
    assert not report["iso"]
    assert report["idempotent"]
    assert "iso" in report["statuses"]


# -- properties -------------------------------------------------------------------------

@st.composite
def soft_sequences(draw):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    base = draw(st.sampled_from([ONE, ARR, D2]))
    n = draw(st.integers(1, 2))
    return gen, gen.sequence("soft", base, ONE, max_arity=n, max_gens=2, max_cells=30)


@settings(max_examples=20)
@given(soft_sequences())
def test_unit_is_equivariant_bijection(drawn):
    _, S = drawn
    assert check_unit_iso(S)["ok"]


@settings(max_examples=20)
@given(soft_sequences())
def test_soft_counit_is_iso(drawn):
    _, S = drawn
    report = check_counit_iso(AnalyticSoft(S), S.max_arity)
    assert report["iso"] and report["idempotent"]


@settings(max_examples=20)
@given(st.integers(0, 2 ** 32 - 1))
def test_new_element_sequence_is_idempotent(seed):
    gen = Generator(seed)
    base = gen.rng.choice([ONE, ARR])
    F = gen.functor(base, depth=1, kinds=("identity", "constant", "linear", "monomial", "analytic"))
    assert check_counit_iso(F, 2)["idempotent"]
