from fractions import Fraction

import pytest

import onsager.lie as lie
from onsager import caches
from onsager.verify import (
    CATALOG,
    SuiteConfig,
    audit_span,
    audit_theorem,
    run_suite,
)


@pytest.fixture
def corrupted_bracket():
    """Deliberately wrong [h, x] structure constant, caches flushed."""
    original = lie._H_X_SCALE
    lie._H_X_SCALE = Fraction(3)
    caches.clear_all()
    yield
    lie._H_X_SCALE = original
    caches.clear_all()


def test_catalog_is_complete_and_stable():
    assert len(CATALOG) == 25
    assert len(set(CATALOG)) == len(CATALOG)
    for tag in ("I5", "I6", "I7", "I8", "I9", "LL", "BRKDEG", "CORINT",
                "THMAUDIT", "REALIZE"):
        assert tag in CATALOG


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(max_index=0).validate()
    with pytest.raises(ValueError):
        SuiteConfig(tags=("NOPE",)).validate()
    with pytest.raises(ValueError):
        SuiteConfig(jobs=0).validate()
    with pytest.raises(ValueError):
        SuiteConfig(format="xml").validate()
    SuiteConfig().validate()


def test_run_suite_small_all_pass():
    report = run_suite(SuiteConfig(max_index=2, max_order=2,
                                   tags=("I6", "XKL1", "PU", "LL", "REALIZE")))
    assert report.all_pass
    assert report.n_fail == 0
    assert all(r.counterexample is None for r in report.results)


def test_run_suite_xkl1_wider_grid():
    report = run_suite(SuiteConfig(max_index=4, max_order=1, tags=("XKL1",)))
    assert report.all_pass


def test_report_order_independent_of_jobs():
    cfg1 = SuiteConfig(max_index=2, max_order=2, tags=("I6", "I7"), jobs=1)
    cfg4 = SuiteConfig(max_index=2, max_order=2, tags=("I6", "I7"), jobs=4)
    r1 = run_suite(cfg1)
    r4 = run_suite(cfg4)
    assert [(r.tag, r.params, r.passed) for r in r1.results] == \
           [(r.tag, r.params, r.passed) for r in r4.results]


def test_corruption_makes_i7_fail(corrupted_bracket):
    # the corrupted [h, x] constant enters the I7 identity once divided
    # powers of order >= 2 bring in Lambda and D factors
    report = run_suite(SuiteConfig(max_index=1, max_order=2, tags=("I7",)))
    assert not report.all_pass
    failing = [r for r in report.results if not r.passed]
    assert failing
    lhs, rhs = failing[0].counterexample
    assert not (lhs - rhs).is_zero


def test_corruption_makes_realize_fail(corrupted_bracket):
    report = run_suite(SuiteConfig(max_index=2, max_order=1, tags=("REALIZE",)))
    assert not report.all_pass
    failing = [r for r in report.results if not r.passed]
    assert failing[0].counterexample is not None


def test_suite_recovers_after_corruption_fixture(corrupted_bracket):
    # within the fixture the suite fails ...
    assert not run_suite(SuiteConfig(max_index=1, max_order=2, tags=("I7",))).all_pass


def test_suite_green_after_recovery():
    # ... and after fixture teardown everything passes again
    assert run_suite(SuiteConfig(max_index=1, max_order=2, tags=("I7",))).all_pass


def test_audit_span_examples():
    even6 = audit_span("even", 6)
    assert (even6.dimension, even6.rank) == (4, 3)
    assert even6.quotient == [0]
    odd7 = audit_span("odd", 7)
    assert (odd7.dimension, odd7.rank) == (4, 3)
    assert odd7.quotient == [1]
    even2 = audit_span("even", 2)
    assert (even2.dimension, even2.rank) == (2, 1)


def test_audit_span_validation():
    with pytest.raises(ValueError):
        audit_span("sideways", 4)
    with pytest.raises(ValueError):
        audit_span("even", 0)


def test_audit_theorem_small():
    rep = audit_theorem(1, 1)
    assert rep.count == 4
    assert rep.rank == 4
    assert rep.independent and rep.triangular and rep.integral


def test_audit_theorem_degenerate():
    rep = audit_theorem(0, 4)
    assert rep.count == 1
    assert rep.independent


def test_audit_theorem_reports_dependency_at_2_3():
    # lam(1,1,1) + lam(3,1,1) - lam(2,2,1) = 0 enters at index 3
    rep = audit_theorem(2, 3)
    assert not rep.independent
    assert rep.codimension >= 1
    assert not rep.triangular
