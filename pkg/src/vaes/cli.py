"""Command line front end.

Thin client over the service handlers: every subcommand builds a request
model, calls the shared handler in process, and prints canonical JSON.

Exit codes: 0 success, 1 invariant failure (failed residual, failed suite
check, or a tampered state file), 2 malformed configuration or usage,
3 well-formed input with no computable solution.
"""

from __future__ import annotations

import json
import sys

import click
from pydantic import ValidationError

from .serialize import canonical_json
from .service.handlers import (
    ComputationError,
    handle_catalog,
    handle_classify,
    handle_solve,
    handle_verify,
)
from .service.schemas import ClassifyRequest, SolveRequest, VerifyRequest

__all__ = ["main"]


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise click.UsageError(f"{path} must contain a JSON object")
    return data


def _emit(out: str | None, payload) -> None:
    text = canonical_json(payload) + "\n"
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _request(model, data: dict):
    try:
        return model(**data)
    except ValidationError as exc:
        raise click.UsageError(f"invalid configuration: {exc}") from exc


@click.group()
@click.version_option(package_name="vaes")
def main() -> None:
    """Vector eigenstates of coupled boson-spin lowering operators."""


@main.command()
@click.option("--config", type=click.Path(dir_okay=False), required=True,
              help="JSON file with a 'couplings' object.")
@click.option("--tol", type=float, default=1e-10, show_default=True,
              help="Classification tolerance (relative).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the report here instead of stdout.")
def classify(config: str, tol: float, out: str | None) -> None:
    """Sort couplings into case and commutator scenario."""
    cfg = _load_json(config)
    req = _request(ClassifyRequest, {"couplings": cfg.get("couplings", {}), "tol": tol})
    resp = handle_classify(req)
    _emit(out, resp.model_dump())


@main.command()
@click.option("--config", type=click.Path(dir_okay=False), default=None,
              help="JSON solve configuration.")
@click.option("--preset", default=None, help="Preset key from `vaes catalog`.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the state document here instead of stdout.")
def solve(config: str | None, preset: str | None, out: str | None) -> None:
    """Build a state and write its canonical document."""
    if config is not None and preset is not None:
        raise click.UsageError("provide either --config or --preset, not both")
    cfg = _load_json(config) if config else {}
    if preset is not None:
        cfg["preset"] = preset
    if not cfg:
        raise click.UsageError("provide --config or --preset")
    req = _request(SolveRequest, cfg)
    try:
        resp = handle_solve(req)
    except ComputationError as exc:
        click.echo(f"no solution: {exc}", err=True)
        sys.exit(3)
    except KeyError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(out, resp.document)
    r = resp.residual
    click.echo(
        f"{'PASS' if r.passed else 'FAIL'} {resp.family} (K={resp.k}): residual "
        f"{r.relative_residual:.2e}, tail {r.tail_mass:.2e}",
        err=True,
    )
    if not r.passed:
        sys.exit(1)


@main.command()
@click.option("--suite", type=click.Choice(["smoke", "full"]), default=None,
              help="Run the built-in check suite.")
@click.option("--state", "state_path", type=click.Path(dir_okay=False), default=None,
              help="Re-verify a state document written by solve.")
@click.option("--config", type=click.Path(dir_okay=False), default=None,
              help="Solve this configuration and judge its residuals.")
@click.option("--tol", type=float, default=1e-8, show_default=True,
              help="Residual tolerance for --state/--config.")
@click.option("--seed", type=int, default=None,
              help="Offset the suite's draw seeds.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here as well.")
def verify(suite, state_path, config, tol, seed, out) -> None:
    """Check invariants: the full suite, a state file, or a config."""
    modes = sum(x is not None for x in (suite, state_path, config))
    if modes != 1:
        raise click.UsageError("provide exactly one of --suite, --state, --config")

    if config is not None:
        req = _request(SolveRequest, _load_json(config))
        try:
            resp = handle_solve(req)
        except ComputationError as exc:
            click.echo(f"no solution: {exc}", err=True)
            sys.exit(3)
        r = resp.residual
        line = (
            f"{'PASS' if r.passed else 'FAIL'} {resp.family}: residual "
            f"{r.relative_residual:.2e} (tol {tol:g}), tail {r.tail_mass:.2e}"
        )
        click.echo(line)
        if out:
            _emit(out, {"passed": r.passed, "lines": [line]})
        sys.exit(0 if r.passed and r.relative_residual <= tol else 1)

    if state_path is not None:
        doc = _load_json(state_path)
        req = VerifyRequest(document=doc, tol=tol)
    else:
        req = VerifyRequest(suite=suite, seed=seed)
    try:
        resp = handle_verify(req)
    except ValueError as exc:
        # checksum mismatch or a document that no longer parses
        click.echo(f"FAIL state-document: {exc}")
        sys.exit(1)
    for line in resp.lines:
        click.echo(line)
    if suite is not None:
        click.echo(f"OVERALL: {'PASS' if resp.passed else 'FAIL'}")
    if out:
        _emit(out, resp.model_dump())
    sys.exit(0 if resp.passed else 1)


@main.command()
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def catalog(out: str | None) -> None:
    """List the built-in presets."""
    _emit(out, handle_catalog().model_dump())


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
