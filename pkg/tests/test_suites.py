import pytest

from fdcalc.errors import UnknownSuite
from fdcalc.fincat import FinCategory
from fdcalc.generators import Generator
from fdcalc.serialize import dumps
from fdcalc.suites import SUITES, render, run_suite


def test_generator_is_deterministic():
    a, b = Generator(17), Generator(17)
    for _ in range(5):
        ca, cb = a.category(), b.category()
        assert ca == cb
        assert a.presheaf(ca) == b.presheaf(cb)
    assert a.stats == b.stats


def test_generated_objects_are_lawful():
    gen = Generator(2)
    for _ in range(10):
        cat = gen.category()
        cat.check_laws()
        phi = gen.presheaf(cat)
        phi.check()
        assert phi.size() <= gen.max_elems
    assert gen.stats["presheaf"]["accepted"] == 10


def test_monoid_rejection_is_recorded():
    gen = Generator(0)
    m = gen.monoid(3)
    assert isinstance(m, FinCategory)
    stats = gen.stats["monoid"]
    assert stats["accepted"] == 1 and stats["tried"] >= 1


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_a_short_run(name):
    report = run_suite(name, seed=3, cases=3)
    assert report["ok"], report["failures"]
    assert report["instances"] == 3
    assert all(t["fail"] == 0 for t in report["laws"].values())
    assert name in render(report)


def test_reports_are_reproducible():
    first = dumps(run_suite("clairaut", seed=5, cases=4))
    assert first == dumps(run_suite("clairaut", seed=5, cases=4))
    assert first != dumps(run_suite("clairaut", seed=6, cases=4))
