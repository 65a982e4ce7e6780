import pytest

from gorsum.dsl import parse_session
from gorsum.session import Report, SessionRunner, run_checks

from helpers import corpus_text


def _run(text, **kw):
    return run_checks(SessionRunner(parse_session(text), **kw))


@pytest.mark.parametrize("name", ["fermat", "nonstandard", "squarezero", "cubic_ci", "colength_fiber"])
def test_corpus_checks_pass(name):
    report = _run(corpus_text(name))
    bad = [(r.name, r.actual) for r in report.records if r.status != "pass"]
    assert not bad and report.exit_code == 0


def test_failure_and_error_statuses():
    text = "\n".join([
        "field F = QQ;",
        "ring R = F[x:1]/(x^3);",
        "check length(R) == 3;",
        "check length(R) == 4;",
        "check iso_presentation(R, F[u:1]/(u^2); u -> x) == true;",
    ])
    report = _run(text)
    assert [r.status for r in report.records] == ["pass", "fail", "fail"]
    assert report.records[1].expected == 4 and report.records[1].actual == 3
    assert report.exit_code == 1


def test_error_dominates_failure():
    text = "field F = QQ;\nring R = F[x:1]/(x^3);\ncheck length(R) == 4;\ncheck golod(R) == true;"
    report = _run(text)
    assert [r.status for r in report.records] == ["fail", "error"]
    assert "not a map" in report.records[1].actual
    assert report.exit_code == 2


def test_ring_entries():
    runner = SessionRunner(parse_session(corpus_text("fermat")))
    Q = runner.ring("Q").algebra
    assert Q.dim == 4 and Q.is_gorenstein
    assert runner.ring("Q").parts["P"].algebra.dim == 5


def test_report_json_round_trip():
    report = _run(corpus_text("cubic_ci"))
    again = Report.from_json(report.to_json())
    assert again.as_dict() == report.as_dict()
    assert "pass" in report.to_text()
