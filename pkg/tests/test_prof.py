import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcalc.errors import EndpointMismatch, SizeGuardExceeded
from fdcalc.fincat import opposite
from fdcalc.fixtures import ARR, D2, ONE, POINT, phi_arr
from fdcalc.generators import Generator
from fdcalc.order import UnionFind
from fdcalc.presheaf import Presheaf
from fdcalc.prof import (Profunctor, associator, compose, curry_left, curry_right, hom_tense_check,
                         identity_prof, left_hom, left_unitor, prof_hom_set, right_hom, right_unitor,
                         tensor_presheaf, transpose, uncurry_left, uncurry_right)


def matrix(A, B, sizes, prefix):
    cells = {(a, b): [f"{prefix}{i}" for i in range(sizes[i][j])]
             for i, a in enumerate(A.objects) for j, b in enumerate(B.objects)}
    return Profunctor(A, B, cells, {}, {})


P = matrix(D2, D2, [[1, 2], [0, 1]], "p")
Q = matrix(D2, D2, [[2, 0], [3, 1]], "q")
R = matrix(D2, D2, [[2, 1], [1, 3]], "r")


def test_discrete_composite_is_matrix_product():
    assert compose(Q, P).cardinalities() == [[8, 2], [3, 1]]


def test_discrete_homs_are_exponentials():
    assert left_hom(Q, R).cardinalities() == [[4, 8], [1, 3]]
    assert right_hom(R, P).cardinalities() == [[2, 1], [4, 3]]


def test_empty_cells_give_singleton_families():
    Z = matrix(D2, D2, [[0, 0], [0, 0]], "z")
    assert left_hom(Z, R).cardinalities() == [[1, 1], [1, 1]]
    assert right_hom(R, Z).cardinalities() == [[1, 1], [1, 1]]


def test_identity_profunctor():
    I = identity_prof(ARR)
    assert I.cells[0, 1] == ("e",)
    assert identity_prof(D2).cardinalities() == [[1, 0], [0, 1]]
    assert compose(I, I).cardinalities() == I.cardinalities()


def _coend_sizes(Q, P):
    """Glue along every morphism of the middle category."""
    out = {}
    for a in P.src.objects:
        for c in Q.dst.objects:
            uf = UnionFind((b, x, y) for b in P.dst.objects for x in P.cells[a, b] for y in Q.cells[b, c])
            for g in P.dst.morphisms:
                b, b2 = P.dst.src(g), P.dst.dst(g)
                for x in P.cells[a, b]:
                    for y in Q.cells[b2, c]:
                        uf.union((b2, P.right[a, g][x], y), (b, x, Q.left[g, c][y]))
            out[a, c] = len(uf.classes()[1])
    return out


def test_hom_of_arrow_composes_to_itself():
    I = identity_prof(ARR)
    II = compose(I, I)
    assert {k: len(v) for k, v in II.cells.items()} == _coend_sizes(I, I)
    assert left_unitor(I).is_iso()


def test_tensor_with_hom_returns_presheaf():
    phi = phi_arr()
    out = tensor_presheaf(identity_prof(ARR), phi)
    assert {a: len(xs) for a, xs in out.elems.items()} == {0: 1, 1: 2}


def test_tensor_discrete_vector():
    phi = Presheaf(D2, {"a0": ["u", "v"], "a1": ["w"]}, {})
    out = tensor_presheaf(P, phi)
    assert [len(out.elems[b]) for b in D2.objects] == [2 * 1 + 1 * 0, 2 * 2 + 1 * 1]


def _brute_families(X, Y):
    """Natural maps between two presheaves on the same base, by full enumeration."""
    base = X.base
    items = X.elements()
    count = 0
    for choice in itertools.product(*(Y.elems[a] for a, _ in items)):
        m = dict(zip(items, choice))
        if all(Y.action[f][m[base.src(f), x]] == m[base.dst(f), X.action[f][x]]
               for f in base.morphisms for x in X.elems[base.src(f)]):
            count += 1
    return count


def test_homs_over_arrow_match_enumeration():
    gen = Generator(3)
    for _ in range(5):
        Qa = gen.profunctor(ONE, ARR, 3)
        Ra = gen.profunctor(D2, ARR, 3)
        lh = left_hom(Qa, Ra)
        for a in D2.objects:
            assert len(lh.cells[a, POINT]) == _brute_families(Qa.row(POINT), Ra.row(a))
        Pa = gen.profunctor(ARR, D2, 3)
        Sa = gen.profunctor(ARR, ONE, 3)
        rh = right_hom(Sa, Pa)
        for b in D2.objects:
            assert len(rh.cells[b, POINT]) == _brute_families(Pa.column(b), Sa.column(POINT))


def test_hom_size_guard():
    big = matrix(D2, D2, [[3, 3], [3, 3]], "b")
    with pytest.raises(SizeGuardExceeded):
        left_hom(big, big, bound=100)


def test_endpoint_mismatch():
    with pytest.raises(EndpointMismatch):
        left_hom(identity_prof(ARR), identity_prof(D2))


def test_transpose():
    assert transpose(identity_prof(ARR)) == identity_prof(opposite(ARR))
    assert transpose(P).cardinalities() == [list(r) for r in zip(*P.cardinalities())]
    gen = Generator(8)
    X = gen.profunctor(ARR, D2, 3)
    assert transpose(transpose(X)).cells == X.cells


def test_hom_tense_check_examples():
    assert hom_tense_check(identity_prof(ARR)) == (True, None)
    bad = Profunctor(ARR, ONE, {(0, POINT): ["u"], (1, POINT): []}, {}, {})
    ok, witness = hom_tense_check(bad)
    assert not ok and witness[0] == "e"


# -- properties -------------------------------------------------------------------------

@given(st.integers(0, 2 ** 32 - 1))
def test_discrete_formulas(seed):
    gen = Generator(seed)
    A, B, C = (gen.discrete() for _ in range(3))
    X = gen.discrete_profunctor(A, B, 3, "x")
    Y = gen.discrete_profunctor(B, C, 3, "y")
    Z = gen.discrete_profunctor(A, C, 3, "z")
    n = lambda M, i, j: len(M.cells[i, j])
    YX = compose(Y, X)
    assert all(n(YX, a, c) == sum(n(X, a, b) * n(Y, b, c) for b in B.objects)
               for a in A.objects for c in C.objects)
    YZ = left_hom(Y, Z)
    assert all(n(YZ, a, b) == math.prod(n(Z, a, c) ** n(Y, b, c) for c in C.objects)
               for a in A.objects for b in B.objects)
    ZX = right_hom(Z, X)
    assert all(n(ZX, b, c) == math.prod(n(Z, a, c) ** n(X, a, b) for a in A.objects)
               for b in B.objects for c in C.objects)


@st.composite
def triples(draw):
    gen = Generator(draw(st.integers(0, 2 ** 32 - 1)))
    A = gen.category(("one", "arr", "d2", "preorder"))
    B = gen.category(("one", "arr", "d2"))
    C = gen.category(("one", "arr"))
    return gen, gen.profunctor(A, B, 3), gen.profunctor(B, C, 3), gen.profunctor(C, A, 3)


@given(triples())
def test_coend_composition_matches_full_gluing(t):
    _, X, Y, _ = t
    assert {k: len(v) for k, v in compose(Y, X).cells.items()} == _coend_sizes(Y, X)


@given(triples())
def test_unitors_and_associator_are_isos(t):
    _, X, Y, Z = t
    assert left_unitor(X).is_iso() and right_unitor(X).is_iso()
    assert associator(Z, Y, X).is_iso()


@given(triples())
def test_currying_round_trips(t):
    gen, X, Y, _ = t
    R2 = gen.profunctor(X.src, Y.dst, 3)
    YX = compose(Y, X)
    alphas = prof_hom_set(YX, R2, bound=5000)
    for alpha in alphas[:5]:
        assert uncurry_left(curry_left(alpha, Y, X), Y, R2) == alpha
        assert uncurry_right(curry_right(alpha, Y, X), X, R2) == alpha
    for beta in prof_hom_set(X, left_hom(Y, R2), bound=5000)[:5]:
        assert curry_left(uncurry_left(beta, Y, R2), Y, X) == beta
