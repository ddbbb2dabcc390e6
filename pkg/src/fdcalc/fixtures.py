"""Small named categories and presheaves used in examples and tests."""

from __future__ import annotations

from .fincat import FinCategory, discrete_category

POINT = "*"


def terminal_category():
    return FinCategory([POINT], [("id*", POINT, POINT)], {POINT: "id*"},
                       {("id*", "id*"): "id*"}, name="1")


def arrow_category():
    """Objects 0 and 1 with a single non-identity arrow e: 0 -> 1."""
    mors = [("id0", 0, 0), ("id1", 1, 1), ("e", 0, 1)]
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1",
            ("e", "id0"): "e", ("id1", "e"): "e"}
    return FinCategory([0, 1], mors, {0: "id0", 1: "id1"}, comp, name="Arr")


def two_point_category():
    return discrete_category(["a0", "a1"], name="D2")


def cospan_category():
    """0 -> 2 <- 1; presheaf limits over it are fibred products."""
    mors = [("id0", 0, 0), ("id1", 1, 1), ("id2", 2, 2), ("l", 0, 2), ("r", 1, 2)]
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("id2", "id2"): "id2",
            ("l", "id0"): "l", ("id2", "l"): "l", ("r", "id1"): "r", ("id2", "r"): "r"}
    return FinCategory([0, 1, 2], mors, {0: "id0", 1: "id1", 2: "id2"}, comp, name="Cospan")


ONE = terminal_category()
ARR = arrow_category()
D2 = two_point_category()
COSPAN = cospan_category()


def phi_arr():
    """On Arr: x at 0, {y, z} at 1, with e sending x to y."""
    from .presheaf import Presheaf
    return Presheaf(ARR, {0: ["x"], 1: ["y", "z"]}, {"e": {"x": "y"}})


def set_of(n, prefix="s"):
    """A finite set as a presheaf on the terminal category."""
    from .presheaf import Presheaf
    return Presheaf(ONE, {POINT: [f"{prefix}{i}" for i in range(n)]}, {})


def fibred_product_profunctor():
    """``1 -|-> Cospan`` shaped like the cospan itself; its monomial functor
    sends a presheaf to the fibred product of its two legs."""
    from .prof import Profunctor
    cells = {(POINT, 0): ["u"], (POINT, 1): ["v"], (POINT, 2): ["w"]}
    right = {(POINT, "l"): {"u": "w"}, (POINT, "r"): {"v": "w"}}
    return Profunctor(ONE, COSPAN, cells, {}, right)


def collapsing_profunctor():
    """``Arr -|-> 1`` whose action along the epi ``e`` merges two elements,
    so tensoring with it does not preserve monos."""
    from .prof import Profunctor
    cells = {(0, POINT): ["w"], (1, POINT): ["u", "v"]}
    left = {("e", POINT): {"u": "w", "v": "w"}}
    return Profunctor(ARR, ONE, cells, left, {})


def terminal_at_target_profunctor():
    """``Arr -|-> 1`` with one element over 0 and none over 1. Its monomial
    functor sends a set ``X`` to ``X -> 1``: it preserves limits but sends
    proper subsets to subobjects without complements."""
    from .prof import Profunctor
    return Profunctor(ARR, ONE, {(0, POINT): ["u"], (1, POINT): []}, {}, {})
