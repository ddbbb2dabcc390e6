"""Small shared builders for the test modules."""

from fdcalc.analytic import free_sequence, sequence_category
from fdcalc.fixtures import ONE
from fdcalc.prof import prof_hom_set

PT = ("*",)
PT2 = ("*", "*")


def isomorphic(X, Y, bound=20000):
    """Whether two profunctors with the same endpoints are isomorphic."""
    if X.cardinalities() != Y.cardinalities():
        return False
    return any(m.is_iso() for m in prof_hom_set(X, Y, bound))


def sizes(phi):
    return {a: len(xs) for a, xs in phi.elems.items()}


def symmetric_pair(mode, max_arity=2, linear=True):
    """A swap-invariant element in arity two, plus (strict mode) one in arity one."""
    cat = sequence_category(mode, ONE, max_arity)
    swap = next(m for m in cat.hom(PT2, PT2) if m.sigma == (1, 0))
    ident = cat.identity(PT2)
    gens = [("q", PT2, "*")]
    if mode == "strict" and linear:
        gens.append(("p", PT, "*"))
    return free_sequence(mode, ONE, ONE, max_arity, gens, [((PT2, "*"), ("q", swap, "id*"), ("q", ident, "id*"))])
