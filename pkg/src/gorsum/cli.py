"""Command line entry point: ``gorsum <command> SESSION.gs``."""

from __future__ import annotations

import os
import sys

import click

from .dsl import LetDecl, RingDecl, SessionError
from .resolution import DEFAULT_BUDGET, golod_test, minimal_free_resolution
from .session import CheckRecord, Report, SessionRunner, load_session, run_checks

FORMAT = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                      show_default=True, help="Report format.")
ORDER = click.option("--order", type=int, default=8, show_default=True, help="Series truncation order.")
BUDGET = click.option("--budget", type=int, default=DEFAULT_BUDGET, show_default=True,
                      help="Largest free-module dimension a resolution may reach.")


def default_seed() -> int:
    return int(os.environ.get("GORSUM_SEED", "0"))


def _emit(report: Report, fmt: str) -> None:
    click.echo(report.to_json() if fmt == "json" else report.to_text())


def _fail(message: str, fmt: str, command: str):
    if fmt == "json":
        click.echo(Report(command, data={"error": message}).to_json())
    else:
        click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _runner(path, fmt, command, order=8, budget=DEFAULT_BUDGET):
    try:
        session = load_session(path)
    except SessionError as exc:
        _fail(f"{path}:{exc}", fmt, command)
    except OSError as exc:
        _fail(str(exc), fmt, command)
    return SessionRunner(session, order=order, budget=budget, seed=default_seed())


def _default_ring(runner: SessionRunner, name: str | None) -> str:
    if name:
        return name
    decls = runner.session.declarations
    lets = [d.name for d in decls if isinstance(d, LetDecl)]
    rings = [d.name for d in decls if isinstance(d, RingDecl)]
    if lets:
        return lets[0]
    if rings:
        return rings[0]
    raise click.UsageError("the session declares no ring")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Fiber products, connected sums and their homological invariants."""


@main.command()
@click.argument("session", type=click.Path(dir_okay=False))
@FORMAT
def analyze(session, fmt):
    """Invariants of every ring and construction in SESSION."""
    runner = _runner(session, fmt, "analyze")
    rings = {}
    for d in runner.session.declarations:
        if not isinstance(d, (RingDecl, LetDecl)):
            continue
        try:
            inv = runner.ring(d.name).algebra.invariants().as_dict()
        except Exception as exc:
            inv = {"error": f"{type(exc).__name__}: {exc}"}
        rings[d.name] = inv
    report = Report("analyze", data={"rings": rings})
    if fmt == "json":
        click.echo(report.to_json())
    else:
        for name, inv in rings.items():
            click.echo(f"{name}: " + ", ".join(f"{k}={_plain(v)}" for k, v in inv.items()))
    sys.exit(2 if any("error" in v for v in rings.values()) else 0)


def _plain(v):
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


@main.command()
@click.argument("session", type=click.Path(dir_okay=False))
@FORMAT
@ORDER
@BUDGET
def verify(session, fmt, order, budget):
    """Run every ``check`` of SESSION; exit 0 when all pass, 1 on a failure, 2 on an error."""
    runner = _runner(session, fmt, "verify", order, budget)
    report = run_checks(runner)
    _emit(report, fmt)
    sys.exit(report.exit_code)


@main.command()
@click.argument("session", type=click.Path(dir_okay=False))
@click.option("--ring", "ring_name", default=None, help="Ring to resolve over (default: first construction).")
@click.option("--module", "module_name", default="k", show_default=True,
              help="Module to resolve: k or a declared module.")
@click.option("--steps", type=int, default=None, help="Homological steps (default: --order).")
@FORMAT
@ORDER
@BUDGET
def resolve(session, ring_name, module_name, steps, fmt, order, budget):
    """Betti numbers of a minimal free resolution."""
    runner = _runner(session, fmt, "resolve", order, budget)
    name = _default_ring(runner, ring_name)
    steps = order if steps is None else steps
    try:
        A = runner.ring(name).algebra
        M = runner.module(module_name, A)
        bt = minimal_free_resolution(A, M, steps, budget)
    except Exception as exc:
        _fail(f"{type(exc).__name__}: {exc}", fmt, "resolve")
    data = {"ring": name, "module": module_name, "steps": steps, "betti": bt.betti}
    if A.graded:
        data["graded_betti"] = bt.graded_betti()
    _emit(Report("resolve", data=data), fmt)


@main.command()
@click.argument("session", type=click.Path(dir_okay=False))
@click.option("--map", "map_name", required=True, help="Surjection to test, e.g. Q.kappa or a declared map.")
@FORMAT
@ORDER
@BUDGET
def golod(session, map_name, fmt, order, budget):
    """Compare P^Q_k with the Golod bound up to --order."""
    runner = _runner(session, fmt, "golod", order, budget)
    try:
        res = golod_test(runner.morphism(map_name), order, budget)
    except Exception as exc:
        _fail(f"{type(exc).__name__}: {exc}", fmt, "golod")
    data = {"map": map_name, "order": order, "golod_up_to_order": res.golod,
            "poincare": res.lhs.coeffs, "bound": res.rhs.coeffs}
    if not res.golod:
        data["first_difference"] = res.degree
    _emit(Report("golod", data=data), fmt)


@main.command()
@click.argument("session", type=click.Path(dir_okay=False))
@click.option("--ring", "ring_name", default=None, help="Ring to bound (default: first construction).")
@FORMAT
def colength(session, ring_name, fmt):
    """Lower and upper bounds for the Gorenstein colength, with a verified cover."""
    from .colength import gcl_bounds

    runner = _runner(session, fmt, "colength")
    name = _default_ring(runner, ring_name)
    try:
        entry = runner.ring(name)
        rep = gcl_bounds(entry.algebra, fiber=entry.fiber, seed=default_seed())
    except Exception as exc:
        _fail(f"{type(exc).__name__}: {exc}", fmt, "colength")
    data = {"ring": name, **rep.as_dict()}
    if rep.teter is not None:
        data["teter_witness"] = True
    _emit(Report("colength", data=data), fmt)


@main.command("random-suite")
@click.option("--count", type=int, default=10, show_default=True, help="Instances per property.")
@click.option("--seed", type=int, default=None, help="Random seed (default: GORSUM_SEED or 0).")
@FORMAT
@click.option("--order", type=int, default=6, show_default=True, help="Series truncation order.")
def random_suite(count, seed, fmt, order):
    """Randomized checks of the sum identities on graded instances over F_101."""
    from .suites import run_random_suite

    seed = default_seed() if seed is None else seed
    results = run_random_suite(count, seed, order)
    report = Report("random-suite", data={"seed": seed, "count": count, "order": order})
    for r in results:
        report.records.append(CheckRecord(r.name, "pass" if r.ok else "fail", r.total, r.passed, r.detail))
    if fmt == "json":
        click.echo(report.to_json())
    else:
        for r in results:
            click.echo(f"{'PASS' if r.ok else 'FAIL':5} {r.name}: {r.passed}/{r.total}"
                       + (f"  ({r.detail})" if r.detail else ""))
    sys.exit(report.exit_code)


if __name__ == "__main__":  # pragma: no cover
    main()
