import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcalc.analytic import (analytic_eval, are_relatives, derived_sequence, diverse_factorize,
                             free_sequence, is_diverse, map_values, slot_map,
                             slot_profunctor, soften)
from fdcalc.errors import ModeError
from fdcalc.fixtures import ARR, D2, ONE, phi_arr, set_of
from fdcalc.funcalc import AnalyticSoft, AnalyticStrict, evaluate, partial_difference
from fdcalc.generators import Generator
from fdcalc.presheaf import compose_nat, pi0, yoneda_map
from fdcalc.prof import left_hom, presheaf_as_prof
from fdcalc.suites import small_presheaves, sym_square_plus_linear
from helpers import PT, symmetric_pair

@pytest.mark.parametrize("n", range(5))
def test_strict_evaluation_counts_multisets(n):
    S = symmetric_pair("strict")
    assert analytic_eval(S, set_of(n)).size() == n + n * (n + 1) // 2


@pytest.mark.parametrize("n", range(5))
def test_soft_evaluation_glues_diagonal(n):
    S = symmetric_pair("soft")
    assert S.arity_sizes() == [0, 1, 1]
    assert analytic_eval(S, set_of(n)).size() == n + n * (n - 1) // 2


def test_arity_zero_is_constant():
    S = free_sequence("strict", ARR, D2, 2, [("k", (), "a0")])
    sizes = {analytic_eval(S, phi).size() for phi in small_presheaves(ARR, 2)}
    assert sizes == {1}


def test_derived_sequence_counts():
    S = symmetric_pair("strict")
    D = derived_sequence(S, "*")
    assert D.arity_sizes() == [2, 1]
    only_constants = free_sequence("strict", ONE, ONE, 2, [("k", (), "*")])
    assert derived_sequence(only_constants, "*").size() == 0
    with pytest.raises(ModeError):
        derived_sequence(symmetric_pair("soft"), "*")


def test_softening_counts():
    S = free_sequence("strict", ONE, ONE, 2, [("p", PT, "*")])
    assert soften(S).arity_sizes() == [0, 1, 0]
    assert soften(symmetric_pair("strict", linear=False)).arity_sizes() == [0, 1, 1]
    T = symmetric_pair("strict")
    for n in range(4):
        assert analytic_eval(soften(T), set_of(n)).size() == analytic_eval(T, set_of(n)).size()


def test_one_object_difference_of_square_plus_linear():
    X = sym_square_plus_linear(3)
    for n in range(4):
        assert partial_difference(AnalyticStrict(X), "*", set_of(n)).size() == n + 2


def test_slot_profunctor_components_and_products():
    Q = slot_profunctor("strict", ARR, 2)
    phi = phi_arr()
    families = left_hom(Q, presheaf_as_prof(phi))
    for x in Q.src.objects:
        assert len(pi0(Q.row(x))) == len(x)
        expected = 1
        for a in x:
            expected *= len(phi.elems[a])
        assert len(families.cells["*", x]) == expected


def test_diverse_examples():
    phi = phi_arr()
    t = yoneda_map(phi, (0, 1), ("x", "z"))
    assert is_diverse(t)
    t = yoneda_map(phi, (1, 1), ("y", "y"))
    assert not is_diverse(t)
    m, psi = diverse_factorize(t)
    assert len(m.src) == 1 and is_diverse(psi)
    assert compose_nat(psi, slot_map(ARR, m)) == t
    for a, x in phi.elements():
        assert is_diverse(yoneda_map(phi, (a,), (x,)))


def test_relatives_share_an_ancestor():
    phi = phi_arr()
    assert are_relatives(phi, (0, "x"), (1, "y"))
    assert not are_relatives(phi, (1, "y"), (1, "z"))


# -- properties -------------------------------------------------------------------------

@st.composite
def strict_sequences(draw, bases=(ONE, ARR, D2)):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    base = draw(st.sampled_from(bases))
    return gen, gen.sequence("strict", base, ONE, max_arity=3, max_gens=2, max_cells=30)


@given(strict_sequences())
def test_softening_preserves_the_analytic_functor(drawn):
    gen, S = drawn
    soft = soften(S)
    for phi in small_presheaves(S.base, 2):
        assert evaluate(AnalyticSoft(soft), phi).size() == evaluate(AnalyticStrict(S), phi).size()


@given(strict_sequences(bases=(ARR, D2)))
def test_difference_matches_derived_sequence_sizes(drawn):
    _, S = drawn
    for a in S.base.objects:
        D = derived_sequence(S, a)
        for phi in small_presheaves(S.base, 2):
            assert partial_difference(AnalyticStrict(S), a, phi).size() == analytic_eval(D, phi).size()


@st.composite
def picked_maps(draw):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    base = draw(st.sampled_from([ONE, ARR, D2]))
    phi = gen.presheaf(base, 3)
    seq = tuple(a for a in draw(st.lists(st.sampled_from(base.objects), max_size=3)) if phi.elems[a])
    vals = tuple(gen.rng.choice(phi.elems[a]) for a in seq)
    return yoneda_map(phi, seq, vals)


@given(picked_maps())
def test_diverse_factorization_properties(t):
    m, psi = diverse_factorize(t)
    base = t.src.base
    assert compose_nat(psi, slot_map(base, m)) == t
    assert is_diverse(psi)
    assert set(m.sigma) == set(range(len(m.src)))
    seq, _ = map_values(t)
    assert (len(m.src) == len(seq)) == is_diverse(t)
