import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcalc.errors import FunctorLawError, NotComplemented, NotSumOfReps
from fdcalc.fincat import FinCategory
from fdcalc.fixtures import ARR, D2, ONE, phi_arr
from fdcalc.generators import Generator
from fdcalc.presheaf import (NatTrans, Presheaf, Subobject, all_subobjects, binary_sum,
                             boolean_factorize, classify_sum_of_reps, complement, compose_nat,
                             coproduct_injection, empty_presheaf, full_subobject, hom_set,
                             identity_nat, is_complemented, is_pi0_surjective, is_pullback_square,
                             negate, pi0, product, representable, sum_map, sum_of_reps, terminal)

PHI = phi_arr()


def test_representables_on_arrow():
    r0, r1 = representable(ARR, 0), representable(ARR, 1)
    assert r0.elems == {0: ("id0",), 1: ("e",)}
    assert r1.elems == {0: (), 1: ("id1",)}


def test_representable_on_discrete_is_indicator():
    r = representable(D2, "a0")
    assert [len(r.elems[a]) for a in D2.objects] == [1, 0]


def test_malformed_action_is_rejected():
    with pytest.raises(FunctorLawError):
        Presheaf(ARR, {0: ["x"], 1: ["y"]}, {"e": {"x": "nope"}})
    with pytest.raises(FunctorLawError):
        Presheaf(ARR, {0: ["x"], 1: ["y"]}, {"e": {}})


def test_sums():
    total, _ = binary_sum(PHI, representable(ARR, 0))
    assert len(total.elems[1]) == 3
    _, (left, _) = binary_sum(PHI, empty_presheaf(ARR))
    assert left.is_iso()
    inj = coproduct_injection([PHI, representable(ARR, 1)], 0)
    assert inj.is_mono() and is_complemented(inj.image())


def test_products():
    sq, _ = product(PHI, PHI)
    assert len(sq.elems[1]) == 4
    _, (first, _) = product(PHI, terminal(ARR))
    assert first.is_iso()
    assert product(PHI, empty_presheaf(ARR))[0].size() == 0


def test_components():
    comps = pi0(PHI)
    assert len(comps) == 2
    assert comps.component(0, "x") == comps.component(1, "y") != comps.component(1, "z")
    assert len(pi0(representable(ARR, 0))) == 1
    assert len(pi0(empty_presheaf(ARR))) == 0


def test_complemented_examples():
    assert is_complemented(Subobject(PHI, {0: {"x"}, 1: {"y"}}))
    assert not is_complemented(Subobject(PHI, {1: {"y"}}))
    assert is_complemented(full_subobject(PHI))


def test_negation():
    y = Subobject(PHI, {1: {"y"}})
    not_y = negate(y)
    assert not_y.subset == {0: frozenset(), 1: frozenset({"z"})}
    assert negate(not_y).subset == {0: frozenset({"x"}), 1: frozenset({"y"})}
    assert negate(full_subobject(PHI)).size() == 0


def test_complement():
    xy = Subobject(PHI, {0: {"x"}, 1: {"y"}})
    assert complement(xy).subset == {0: frozenset(), 1: frozenset({"z"})}
    assert complement(full_subobject(PHI)).size() == 0
    with pytest.raises(NotComplemented) as exc:
        complement(Subobject(PHI, {1: {"y"}}))
    assert (exc.value.morphism, exc.value.element) == ("e", "x")


def test_component_surjectivity():
    inj = coproduct_injection([PHI, representable(ARR, 1)], 0)
    assert not is_pi0_surjective(inj)
    assert is_pi0_surjective(identity_nat(PHI))
    pick_y = NatTrans(representable(ARR, 1), PHI, {0: {}, 1: {"id1": "y"}})
    assert not is_pi0_surjective(pick_y)


def test_boolean_factorization_examples():
    pick_y = NatTrans(representable(ARR, 1), PHI, {0: {}, 1: {"id1": "y"}})
    e, m = boolean_factorize(pick_y)
    assert m.src.elems == {0: ("x",), 1: ("y",)}
    e, m = boolean_factorize(identity_nat(PHI))
    assert m.src == PHI and e.is_iso()
    empty = empty_presheaf(ARR)
    e, m = boolean_factorize(hom_set(empty, PHI)[0])
    assert m.src.size() == 0


def test_classify_sums_of_representables():
    codiag = sum_map(ARR, (0,), (0, 0), (0, 0), ("id0", "id0"))
    info = classify_sum_of_reps(codiag)
    assert info["alpha"] == (0, 0) and info["pi0_surjective"] and not info["complemented_mono"]
    along_e = sum_map(ARR, (0,), (1,), (0,), ("e",))
    info = classify_sum_of_reps(along_e)
    assert info["alpha"] == (0,) and not info["complemented_mono"]
    info = classify_sum_of_reps(identity_nat(sum_of_reps(ARR, (0,))))
    assert info["complemented_mono"] and info["pi0_surjective"]
    with pytest.raises(NotSumOfReps):
        classify_sum_of_reps(identity_nat(PHI))


def test_hom_set_against_brute_force():
    src, dst = representable(ARR, 0), PHI
    brute = 0
    for choice in itertools.product(*(dst.elems[a] for a, _ in src.elements())):
        table = dict(zip(src.elements(), choice))
        if all(dst.act(f, table[ARR.src(f), x]) == table[ARR.dst(f), src.act(f, x)]
               for f in ARR.morphisms for x in src.elems[ARR.src(f)]):
            brute += 1
    assert len(hom_set(src, dst)) == brute == 1


def test_pullback_of_subobject():
    gen = Generator(5)
    psi = gen.presheaf(ARR, 3)
    for t in hom_set(psi, PHI):
        for s in all_subobjects(PHI):
            pulled = {a: {x for x in psi.elems[a] if t.components[a][x] in s.subset[a]} for a in ARR.objects}
            back = Subobject(psi, pulled)
            top = NatTrans(back.as_presheaf(), s.as_presheaf(),
                           {a: {x: t.components[a][x] for x in pulled[a]} for a in ARR.objects})
            assert is_pullback_square(top, back.inclusion(), s.inclusion(), t)
            if is_complemented(s):
                assert is_complemented(back)


Z2 = FinCategory(["*"], [("1", "*", "*"), ("g", "*", "*")], {"*": "1"},
                 {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"})


def test_groupoid_subobjects_all_complemented():
    gen = Generator(11)
    for _ in range(10):
        phi = gen.presheaf(Z2, 4)
        assert all(is_complemented(s) for s in all_subobjects(phi))


# -- properties -------------------------------------------------------------------------

CATS = [ONE, ARR, D2, Z2]


@st.composite
def presheaves(draw, max_elems=4):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    gen = Generator(seed, max_objects=2)
    cat = draw(st.sampled_from(CATS + ["preorder"]))
    if cat == "preorder":
        cat = gen.preorder()
    return gen.presheaf(cat, max_elems), gen


@given(presheaves())
def test_components_match_graph_oracle(drawn):
    phi, _ = drawn
    g = nx.Graph()
    g.add_nodes_from(phi.elements())
    for f in phi.base.morphisms:
        for x, y in phi.action[f].items():
            g.add_edge((phi.base.src(f), x), (phi.base.dst(f), y))
    comps = pi0(phi)
    assert len(comps) == nx.number_connected_components(g)
    for cc in nx.connected_components(g):
        assert len({comps.component(*v) for v in cc}) == 1


@given(presheaves())
def test_negation_is_complemented_and_stabilizes(drawn):
    phi, gen = drawn
    subs = all_subobjects(phi)
    s = gen.rng.choice(subs)
    n1 = negate(s)
    assert is_complemented(n1)
    n2 = negate(n1)
    assert all(s.subset[a] <= n2.subset[a] for a in phi.base.objects)
    assert negate(negate(n2)) == n2


@given(presheaves())
def test_complemented_lattice_closed_under_meet_and_join(drawn):
    phi, _ = drawn
    comp = [s for s in all_subobjects(phi) if is_complemented(s)]
    for s, t in itertools.combinations(comp, 2):
        meet = Subobject(phi, {a: s.subset[a] & t.subset[a] for a in phi.base.objects})
        join = Subobject(phi, {a: s.subset[a] | t.subset[a] for a in phi.base.objects})
        assert is_complemented(meet) and is_complemented(join)


@given(presheaves(), presheaves())
def test_boolean_factorization_properties(d1, d2):
    psi, gen = d1
    phi = gen.presheaf(psi.base, 3, prefix="y")
    maps = hom_set(psi, phi)
    if not maps:
        return
    t = gen.rng.choice(maps)
    e, m = boolean_factorize(t)
    assert compose_nat(m, e) == t
    assert is_pi0_surjective(e)
    assert m.is_mono() and is_complemented(m.image())


@given(st.lists(st.sampled_from(ARR.objects), max_size=3), st.data())
def test_complemented_subobjects_of_sums_are_subsums(seq, data):
    total = sum_of_reps(ARR, tuple(seq))
    subsums = {frozenset(ks) for r in range(len(seq) + 1) for ks in itertools.combinations(range(len(seq)), r)}
    found = set()
    for s in all_subobjects(total):
        if is_complemented(s):
            tags = {i for a in ARR.objects for i, _ in s.subset[a]}
            assert all((i, h) in s.subset[a] for a in ARR.objects for i, h in total.elems[a] if i in tags)
            found.add(frozenset(tags))
    assert found == subsums


@given(presheaves())
def test_composition_of_complemented_inclusions(drawn):
    phi, gen = drawn
    comp = [s for s in all_subobjects(phi) if is_complemented(s)]
    outer = gen.rng.choice(comp)
    inner_parent = outer.as_presheaf()
    inner = gen.rng.choice([s for s in all_subobjects(inner_parent) if is_complemented(s)])
    composite = Subobject(phi, inner.subset)
    assert is_complemented(composite)
