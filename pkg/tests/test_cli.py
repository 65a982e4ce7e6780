import json

import pytest
from click.testing import CliRunner

from gorsum.cli import main

from helpers import corpus_path


@pytest.fixture
def cli():
    return CliRunner()


@pytest.mark.parametrize("name", ["fermat", "nonstandard", "squarezero", "cubic_ci", "colength_fiber"])
def test_verify_corpus(cli, name):
    res = cli.invoke(main, ["verify", corpus_path(name)])
    assert res.exit_code == 0, res.output


def test_verify_json(cli):
    res = cli.invoke(main, ["verify", corpus_path("squarezero"), "--format", "json"])
    data = json.loads(res.output)
    assert [r["status"] for r in data["records"]] == ["pass"] * 3


def test_verify_failure_exit_code(cli, tmp_path):
    f = tmp_path / "bad.gs"
    f.write_text("field F = QQ;\nring R = F[x:1]/(x^3);\ncheck length(R) == 4;\n")
    assert cli.invoke(main, ["verify", str(f)]).exit_code == 1


def test_parse_error_exit_code(cli, tmp_path):
    f = tmp_path / "broken.gs"
    f.write_text("field F = QQ;\nring R = F[x:1]/(x^3)\n")
    res = cli.invoke(main, ["verify", str(f)])
    assert res.exit_code == 2
    assert "broken.gs:3:" in res.output


def test_missing_file(cli, tmp_path):
    assert cli.invoke(main, ["verify", str(tmp_path / "nope.gs")]).exit_code == 2


def test_resolve(cli):
    res = cli.invoke(main, ["resolve", corpus_path("cubic_ci"), "--format", "json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["betti"] == list(range(1, 10))


def test_analyze(cli):
    res = cli.invoke(main, ["analyze", corpus_path("fermat")])
    assert res.exit_code == 0 and res.output.startswith("R:")


def test_golod_rejects_a_map_to_the_residue_field(cli):
    res = cli.invoke(main, ["golod", corpus_path("fermat"), "--map", "eR", "--format", "json", "--order", "5"])
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["golod_up_to_order"] is False
    assert data["bound"] == [1, 1, 2, 3, 5, 8] and data["first_difference"] == 1


def test_golod_socle_quotient(cli, tmp_path):
    f = tmp_path / "sq.gs"
    f.write_text("field F = GF(101);\nring R = F[x:1, y:1]/(x^2, y^2);\n"
                 "ring T = F[u:1, v:1]/(u^2, u*v, v^2);\nmap p : R -> T sends x -> u, y -> v;\n")
    res = cli.invoke(main, ["golod", str(f), "--map", "p", "--format", "json", "--order", "6"])
    data = json.loads(res.output)
    assert data["golod_up_to_order"] is True and data["poincare"] == [2 ** i for i in range(7)]


def test_colength(cli):
    res = cli.invoke(main, ["colength", corpus_path("squarezero"), "--format", "json"])
    data = json.loads(res.output)
    assert (data["lower"], data["upper"]) == (1, 1) and data["teter_witness"]


def test_random_suite_small(cli):
    res = cli.invoke(main, ["random-suite", "--count", "2", "--seed", "5", "--order", "4"])
    assert res.exit_code == 0, res.output
    assert res.output.count("PASS") == 12


def test_version(cli):
    res = cli.invoke(main, ["--version"])
    assert "0.1.0" in res.output
