"""End-to-end acceptance criteria.

Each test registers a one-line verdict in ``ACCEPTANCE``; the terminal summary
(see ``conftest.py``) prints them in order.  Running this file directly prints
the same lines.
"""

import time

import pytest

from gorsum import suites
from gorsum.colength import gcl_bounds, hv_epi_search, verify_cover
from gorsum.dsl import parse_session
from gorsum.fields import GF
from gorsum.resolution import deviations, minimal_free_resolution
from gorsum.session import SessionRunner, run_checks

from helpers import alg, corpus_text

pytestmark = pytest.mark.acceptance

ACCEPTANCE = {}

F101 = GF(101)


class Criterion:
    """Times a block and records its verdict, also when an assertion inside fails."""

    def __init__(self, number, title, limit=30.0):
        self.number, self.title, self.limit = number, title, limit
        self.notes = []

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and elapsed <= self.limit
        if exc_type is None and not ok:
            self.notes.append(f"over the {self.limit:.0f} s limit")
        if exc_type is not None:
            self.notes.append(f"{exc_type.__name__}: {exc}".splitlines()[0][:120])
        note = "; ".join(self.notes)
        ACCEPTANCE[self.number] = (f"{'PASS' if ok else 'FAIL'} {self.number}. {self.title} "
                                   f"[{elapsed:.1f} s]" + (f" {note}" if note else ""))
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {elapsed:.1f} s (limit {self.limit:.0f} s)")
        return False


def _session(name):
    runner = SessionRunner(parse_session(corpus_text(name)), order=8)
    report = run_checks(runner)
    bad = [(r.name, r.actual) for r in report.records if r.status != "pass"]
    assert not bad, bad
    return runner


def _suite_ok(crit, res):
    crit.notes.append(f"{res.name}: {res.passed}/{res.total}" + (f" ({res.detail})" if res.detail else ""))
    assert res.ok, (res.name, res.failures[:5])


def test_1_fermat_connected_sums():
    with Criterion(1, "connected sums of cubic truncations over QQ, plain and 2-twisted"):
        runner = _session("fermat")
        for name in ("Q", "Q2"):
            Q = runner.ring(name).algebra
            assert Q.dim == 4 and Q.is_gorenstein and Q.hilbert == [1, 2, 1]


def test_2_nonstandard_gluing():
    with Criterion(2, "quintic truncations over k[z]/(z^2): fiber product and connected sum"):
        runner = _session("nonstandard")
        entry = runner.ring("Q")
        assert entry.parts["P"].algebra.hilbert == [1, 1, 2, 2, 2]
        Q = entry.algebra
        assert Q.hilbert == [1, 1, 2, 1, 1] and Q.dim == 6


def test_3_complete_intersection_betti_numbers():
    with Criterion(3, "k[x]/(x^3) # k[y]/(y^3) over F_101: Betti numbers and deviations", limit=10.0):
        runner = _session("cubic_ci")
        Q = runner.ring("Q").algebra
        assert minimal_free_resolution(Q, None, 8).betti == list(range(1, 10))
        eps, verdict = deviations(Q, 8)
        assert eps.eps == [2, 2, 0, 0, 0, 0, 0, 0]
        assert verdict.complete_intersection and verdict.codim == 2


def test_4_dress_kramer():
    with Criterion(4, "fiber products over k: Poincare series of k and R/soc R", limit=300.0) as c:
        _suite_ok(c, suites.dress_kramer(50, seed=4, order=6))


def test_5_golod():
    with Criterion(5, "Golod socle quotients, Golod bound, Golod factorization") as c:
        _suite_ok(c, suites.golod_socle_quotients(50, seed=5, order=6))
        _suite_ok(c, suites.golod_bound(200, seed=55, order=6))
        _suite_ok(c, suites.golod_factorization(20, seed=555, order=6))


def test_6_connected_sum_poincare():
    with Criterion(6, "Poincare series of connected sums over k of Gorenstein pairs") as c:
        _suite_ok(c, suites.connected_sum_poincare(25, seed=6, order=6))


def test_7_length_hilbert_type_identities():
    with Criterion(7, "length, Hilbert series, a-invariant gate and type inequalities") as c:
        _suite_ok(c, suites.fiber_product_identities(200, seed=7))
        _suite_ok(c, suites.connected_sum_identities(200, seed=77))
        _suite_ok(c, suites.a_invariant_gate(200, seed=777))


def test_8_gorenstein_colength():
    with Criterion(8, "Gorenstein colength bounds, Teter witnesses, trivial extensions") as c:
        Q = alg(F101, ["x", "y"], ["x^2", "x*y", "y^2"])
        rep = gcl_bounds(Q)
        assert (rep.lower, rep.upper) == (1, 1)
        verify_cover(rep.witness.map, Q)
        assert hv_epi_search(Q).found and rep.teter is not None
        runner = _session("colength_fiber")
        entry = runner.ring("P")
        rep = gcl_bounds(entry.algebra, fiber=entry.fiber)
        assert (rep.lower, rep.upper) == (1, 1)
        _suite_ok(c, suites.colength_agreement(50, seed=8))


def test_9_infrastructure():
    with Criterion(9, "Groebner dimensions, associativity audits, session round trip") as c:
        _suite_ok(c, suites.groebner_vs_slices(100, seed=9))
        _suite_ok(c, suites.construction_audits(20, seed=99))
        _suite_ok(c, suites.corpus_roundtrip())


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
