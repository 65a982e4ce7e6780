import pytest

from gorsum import suites


@pytest.mark.parametrize("suite", [
    suites.fiber_product_identities,
    suites.connected_sum_identities,
    suites.a_invariant_gate,
    suites.golod_bound,
    suites.colength_agreement,
    suites.groebner_vs_slices,
    suites.construction_audits,
])
def test_quick_suites(suite):
    res = suite(8, seed=2024)
    assert res.ok, (res.name, res.failures)


def test_resolution_suites_small():
    for res in (suites.dress_kramer(3, 1, order=4), suites.golod_socle_quotients(3, 1, order=4),
                suites.golod_factorization(3, 1, order=4), suites.connected_sum_poincare(2, 1, order=4)):
        assert res.ok, (res.name, res.failures)


def test_suite_results_are_deterministic():
    a = suites.connected_sum_identities(6, seed=9)
    b = suites.connected_sum_identities(6, seed=9)
    assert (a.passed, a.total, a.detail) == (b.passed, b.total, b.detail)


def test_empty_suite_is_not_a_pass():
    assert not suites.SuiteResult("nothing").ok


def test_corpus_is_bundled():
    names = {p.name for p in suites.corpus_paths()}
    assert {"fermat.gs", "nonstandard.gs", "cubic_ci.gs"} <= names
    assert suites.corpus_roundtrip().ok
