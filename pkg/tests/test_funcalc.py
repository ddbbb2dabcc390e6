import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcalc.analytic import free_sequence
from fdcalc.errors import NotNew, NotTense
from fdcalc.fixtures import (ARR, D2, ONE, POINT, collapsing_profunctor, phi_arr, set_of,
                             terminal_at_target_profunctor)
from fdcalc.funcalc import (AnalyticStrict, Compose, Constant, Identity, Linear, Monomial, Product, Sum,
                            core, core_counit, difference_operator, element_of_ppi, evaluate,
                            evaluate_nat, higher_difference, is_ppi, jacobian, partial_difference,
                            ppi_of_element, representable_map, tense_certify)
from fdcalc.generators import Generator
from fdcalc.presheaf import (Presheaf, compose_nat, empty_presheaf, hom_set, identity_nat,
                             is_complemented, representable)
from fdcalc.prof import identity_prof, tensor_presheaf
from helpers import isomorphic, sizes

PHI = phi_arr()
SQUARE = Product(Identity(ONE), Identity(ONE))
CUBE = Product(SQUARE, Identity(ONE))


def test_evaluation_basics():
    assert evaluate(Identity(ARR), PHI) == PHI
    assert sizes(evaluate(Linear(identity_prof(ARR)), PHI)) == sizes(PHI)
    assert evaluate(SQUARE, set_of(3)).size() == 9


def test_linear_functor_need_not_preserve_monos():
    P = collapsing_profunctor()
    t = representable_map(ARR, "e")
    assert t.is_mono()
    assert not evaluate_nat(Linear(P), t).is_mono()
    assert tense_certify(Linear(P)).rule == "cocontinuous"


def test_identity_on_maps():
    gen = Generator(2)
    psi = gen.presheaf(ARR, 3)
    for t in hom_set(psi, PHI):
        assert evaluate_nat(Identity(ARR), t) == t


def test_certificates():
    assert tense_certify(Linear(identity_prof(ARR))).rule == "cocontinuous"
    with pytest.raises(NotTense) as exc:
        tense_certify(Monomial(terminal_at_target_profunctor()))
    assert exc.value.witness[0] == "e"
    S = free_sequence("strict", ONE, ONE, 2, [("p", ("*",), "*")])
    cert = tense_certify(Compose(Linear(identity_prof(ONE)), AnalyticStrict(S)))
    assert cert.rule == "closure-compose"
    assert cert.rules() == ["closure-compose", "cocontinuous", "analytic"]


def test_difference_of_identity_is_representable():
    for a in ARR.objects:
        d = partial_difference(Identity(ARR), a, PHI)
        assert {b: len(xs) for b, xs in d.subset.items()} == sizes(representable(ARR, a))


def test_difference_of_linear_is_row():
    gen = Generator(4)
    P = gen.profunctor(ARR, D2, 3)
    for a in ARR.objects:
        for phi in (PHI, empty_presheaf(ARR)):
            d = partial_difference(Linear(P), a, phi)
            assert [len(d.subset[b]) for b in D2.objects] == [len(P.cells[a, b]) for b in D2.objects]


def test_difference_of_square_at_two():
    assert partial_difference(SQUARE, POINT, set_of(2)).size() == (2 + 1) ** 2 - 2 ** 2 == 5


def test_jacobian_examples():
    gen = Generator(6)
    P = gen.profunctor(ARR, ARR, 3)
    assert isomorphic(jacobian(Linear(P), PHI), P)
    assert isomorphic(jacobian(Identity(ARR), PHI), identity_prof(ARR))
    P2 = gen.profunctor(ARR, ARR, 2)
    F = Sum(Linear(P), Linear(P2))
    assert isomorphic(jacobian(F, PHI), core(F))


def test_constant_summand_drops_out_of_jacobian():
    # a nonempty constant does not preserve sums, so the core overcounts
    gen = Generator(6)
    P = gen.profunctor(ARR, ARR, 3)
    psi = Presheaf(ARR, {0: ["c"], 1: ["d"]}, {"e": {"c": "d"}})
    F = Sum(Linear(P), Constant(psi, ARR))
    assert isomorphic(jacobian(F, PHI), P)
    assert core(F).size() == P.size() + len(ARR.objects) * psi.size()


def test_higher_difference_examples():
    assert higher_difference(SQUARE, (), set_of(2)).size() == 4
    assert higher_difference(Identity(ARR), (0, 1), PHI).size() == 0
    assert higher_difference(SQUARE, (POINT, POINT), set_of(0)).size() == 2


@pytest.mark.parametrize("n,expected", list(enumerate([0, 1, 6, 6, 0])))
def test_cube_differences_at_zero(n, expected):
    assert higher_difference(CUBE, (POINT,) * n, set_of(0)).size() == expected


def test_element_map_round_trips():
    gen = Generator(9)
    P = gen.profunctor(ARR, ARR, 3)
    F = Product(Linear(P), Identity(ARR))
    for a in ARR.objects:
        d = partial_difference(F, a, PHI)
        for b in ARR.objects:
            for x in d.subset[b]:
                u = ppi_of_element(F, PHI, a, b, x)
                assert element_of_ppi(u, b) == x
                assert is_ppi(u, _old(F, a))
    with pytest.raises(NotNew):
        ppi_of_element(Identity(ARR), PHI, 0, 0, (0, "x"))


def _old(F, a):
    from fdcalc.funcalc import difference_value
    return difference_value(F, a, PHI).old


def test_identity_element_map_is_inclusion_plus_identity():
    u = ppi_of_element(Identity(ARR), PHI, 1, 1, (1, "id1"))
    assert u.components[1][(1, "id1")] == (1, "id1")
    assert all(u.components[b][(0, x)] == (0, x) for b in ARR.objects for x in PHI.elems[b])


def test_difference_operator_examples():
    gen = Generator(12)
    P = gen.profunctor(ARR, D2, 3)
    psi = gen.presheaf(ARR, 3, prefix="w")
    D = difference_operator(Linear(P), PHI, psi)
    assert sizes(D) == sizes(tensor_presheaf(P, psi))
    assert difference_operator(Linear(P), PHI, empty_presheaf(ARR)).size() == 0
    F = Product(Identity(ARR), Identity(ARR))
    for a in ARR.objects:
        D = difference_operator(F, PHI, representable(ARR, a))
        assert sizes(D) == {b: len(xs) for b, xs in partial_difference(F, a, PHI).subset.items()}


def test_core_examples():
    gen = Generator(13)
    P = gen.profunctor(ARR, D2, 3)
    assert isomorphic(core(Linear(P)), P)
    assert isomorphic(core(Identity(ARR)), identity_prof(ARR))
    psi = gen.presheaf(D2, 3)
    C = core(Constant(psi, ARR))
    assert all(len(C.cells[a, b]) == len(psi.elems[b]) for a in ARR.objects for b in D2.objects)


def test_core_counit():
    gen = Generator(14)
    P = gen.profunctor(ARR, ARR, 3)
    assert core_counit(Linear(P), PHI).is_iso()
    assert core_counit(Identity(ARR), PHI).is_iso()
    c = core_counit(SQUARE, set_of(2))
    assert c.src.size() == 2 and c.dst.size() == 4
    assert c.is_mono() and not c.is_epi()


# -- properties -------------------------------------------------------------------------

@st.composite
def point_functors(draw, depth=2):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    return gen.functor(ONE, depth=depth, kinds=("identity", "constant", "linear", "monomial", "analytic"))


@given(point_functors(), st.integers(0, 2), st.integers(0, 3))
def test_new_elements_follow_inclusion_exclusion(F, m, n):
    """Over finite sets the n-th difference at m is the alternating binomial sum."""
    values = [evaluate(F, set_of(m + k)).size() for k in range(n + 1)]
    expected = sum((-1) ** (n - k) * math.comb(n, k) * values[k] for k in range(n + 1))
    assert higher_difference(F, (POINT,) * n, set_of(m)).size() == expected


@st.composite
def arrow_functors(draw):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    base = draw(st.sampled_from([ARR, D2]))
    F = gen.functor(base, depth=2, kinds=("identity", "constant", "linear", "monomial", "analytic"))
    return gen, F


@given(arrow_functors())
def test_grammar_functors_preserve_complemented_monos(drawn):
    gen, F = drawn
    phi = gen.presheaf(F.dom, 3)
    for a in F.dom.objects:
        d = partial_difference(F, a, phi)
        assert is_complemented(d)


@given(arrow_functors())
def test_evaluation_is_functorial(drawn):
    gen, F = drawn
    X = gen.presheaf(F.dom, 2, prefix="x")
    Y = gen.presheaf(F.dom, 2, prefix="y")
    Z = gen.presheaf(F.dom, 2, prefix="z")
    t, u = gen.nat_trans(X, Y), gen.nat_trans(Y, Z)
    if t is None or u is None:
        return
    assert evaluate_nat(F, compose_nat(u, t)) == compose_nat(evaluate_nat(F, u), evaluate_nat(F, t))
    assert evaluate_nat(F, identity_nat(X)) == identity_nat(evaluate(F, X))


@given(arrow_functors())
def test_element_map_round_trip_property(drawn):
    gen, F = drawn
    phi = gen.presheaf(F.dom, 2)
    J = jacobian(F, phi)
    for (a, b), xs in J.cells.items():
        for x in xs:
            assert element_of_ppi(ppi_of_element(F, phi, a, b, x), b) == x
