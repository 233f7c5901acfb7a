"""
specpoly command line
====================

CONCEPT: Thin commands over the library
---------------------------------------
Each command parses its flags, calls one library entry and hands the rows to
src/cli/output.py. The commands share one exit-code contract:

    0  ok
    1  a verification case failed
    2  usage error (bad flags, invalid family/N/index)
    3  numeric failure (series, quadrature or shooting did not converge)

    poly           exact polynomial tables
    spectrum       closed-form eigenvalues, optionally against the shooting oracle
    eigenfunction  eigenfunction samples on a grid of x values
    moments        moments, S-fraction coefficients, phi3 symmetry numbers
    verify         run a verification suite and emit its report
"""
import functools
import logging
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path

import typer
from rich.console import Console
from rich.logging import RichHandler

from src.config import get_settings
from src.errors import BracketError, DomainError, EvaluationError, ParameterError, StepError
from src.exact_poly.families import Family, FamilySpec, hermite_coincidence, polynomials
from src.exact_poly.moments import moments_from_sfraction, phi3_symmetry_numbers, sfraction_coeffs
from src.oracle.shooting import ShootingConfig, shoot_eigenvalue
from src.spectra.eigen import EigenSpec, eigenvalues
from src.spectra.eigenfunctions import Route, eigenfunction, eigenfunction_handle
from src.cli.output import OutputFormat, console, emit_rows
from src.verification.suites import run_suite

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="specpoly",
    help="Exact polynomial families, spectra and verification for -y'' + x^(2N+2) y = x^N E y.",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)

MAX_MOMENTS = 40
ORACLE_HALF_WIDTH = 0.9
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class SuiteName(str, Enum):
    ALL = "all"
    EXACT = "exact"
    SPECTRA = "spectra"
    WKB = "wkb"
    SPECFUN = "specfun"
    ORTHOGONALITY = "orthogonality"


def _setup_logging(level: str) -> None:
    root = logging.getLogger()
    if any(isinstance(h, RichHandler) for h in root.handlers):
        return
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler])


def _handled(command):
    """Map library errors onto the exit-code contract."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (ParameterError, DomainError) as exc:
            typer.echo(f"Error: {exc}", err=True)
            raise typer.Exit(EXIT_USAGE)
        except (EvaluationError, BracketError, StepError) as exc:
            typer.echo(f"Numeric failure: {type(exc).__name__}: {exc}", err=True)
            raise typer.Exit(EXIT_NUMERIC)

    return wrapper


def _parse_range(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not match:
        raise typer.BadParameter(f"expected LO..HI, got '{text}'", param_hint="--range")
    return int(match.group(1)), int(match.group(2))


def _parse_floats(text: str, hint: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated numbers, got '{text}'", param_hint=hint)


def _parse_ints(text: str, hint: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated integers, got '{text}'", param_hint=hint)


def _parse_tolerances(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items:
        kind, sep, value = item.partition("=")
        try:
            out[kind.strip()] = float(value)
        except ValueError:
            sep = ""
        if not sep:
            raise typer.BadParameter(f"expected KIND=VALUE, got '{item}'", param_hint="--tol")
    return out


@app.callback()
def main(
    log_level: str | None = typer.Option(None, "--log-level", help="Overrides SPECPOLY_LOG_LEVEL."),
):
    try:
        level = log_level or get_settings().log_level
    except ParameterError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_USAGE)
    _setup_logging(level.upper())


@app.command()
@_handled
def poly(
    family: Family = typer.Option(..., "--family", help="p, q (even N) or P, Q (odd N)."),
    N: int = typer.Option(..., "--N"),
    n: int = typer.Option(..., "--n", help="Highest index in the table."),
    fmt: OutputFormat = typer.Option(OutputFormat.PRETTY, "--format"),
    check_hermite: bool = typer.Option(False, "--check-hermite", help="N = 0 only: compare with Hermite polynomials."),
):
    """Exact polynomial table f_0 .. f_n of one family."""
    spec = FamilySpec(family, N)
    table = polynomials(spec, n)
    if check_hermite:
        if N != 0:
            raise typer.BadParameter("the Hermite check needs N = 0", param_hint="--check-hermite")
        verdicts = [hermite_coincidence(k)["ok"] for k in range(n + 1)]
        for k, ok in enumerate(verdicts):
            typer.echo(f"hermite n={k}: {'pass' if ok else 'fail'}")
        if not all(verdicts):
            raise typer.Exit(EXIT_VERIFY_FAILED)
        return

    if fmt == OutputFormat.PRETTY:
        for k, p in enumerate(table):
            typer.echo(f"{spec.label} n={k}: {p.pretty()}")
        return
    rows = [{"n": k, "degree": p.degree, "coefficients": p.to_strings()} for k, p in enumerate(table)]
    emit_rows(fmt, spec.label, ["n", "degree", "coefficients"], rows, {"family": family.value, "N": N})


@app.command()
@_handled
def spectrum(
    N: int = typer.Option(..., "--N"),
    index_range: str = typer.Option(..., "--range", help="Index range LO..HI, both ends included."),
    oracle: bool = typer.Option(False, "--oracle", help="Also solve each eigenvalue by shooting."),
    fmt: OutputFormat = typer.Option(OutputFormat.PRETTY, "--format"),
):
    """Closed-form eigenvalues E_n for an index range."""
    n_lo, n_hi = _parse_range(index_range)
    specs = eigenvalues(N, n_lo, n_hi)
    tol = get_settings().tolerance("shooting")

    rows = []
    failed = numeric_failure = False
    for spec in specs:
        row = {"n": spec.n, "E_exact": spec.E}
        if oracle:
            bracket = (spec.E - ORACLE_HALF_WIDTH, spec.E + ORACLE_HALF_WIDTH)
            try:
                result = shoot_eigenvalue(N, ShootingConfig.from_settings(bracket))
            except (BracketError, StepError, EvaluationError) as exc:
                logger.warning("[Spectrum] shooting failed for (N=%d, n=%d): %s", N, spec.n, exc)
                row.update({"E_shooting": None, "delta": None, "status": "fail", "message": str(exc)})
                numeric_failure = True
            else:
                delta = abs(result.E - spec.E)
                ok = result.converged and delta <= tol
                failed = failed or not ok
                row.update({"E_shooting": result.E, "delta": delta, "status": "pass" if ok else "fail"})
        rows.append(row)

    columns = ["n", "E_exact"] + (["E_shooting", "delta", "status"] if oracle else [])
    emit_rows(fmt, f"Spectrum N={N}", columns, rows, {"N": N, "range": [n_lo, n_hi]})
    if numeric_failure:
        raise typer.Exit(EXIT_NUMERIC)
    if failed:
        raise typer.Exit(EXIT_VERIFY_FAILED)


def _sample(spec: EigenSpec, x: float, route: Route | None) -> dict:
    if route is None:
        value, used = eigenfunction(spec, x)
        return {"y": value.value, "error": value.est_abs_error, "route": used.value}
    handle = eigenfunction_handle(spec, route)
    if not handle.allows(x):
        raise DomainError(f"{route.value} is not available at x = {x}")
    value = handle.evaluate(x)
    return {"y": value.value, "error": value.est_abs_error, "route": route.value}


@app.command("eigenfunction")
@_handled
def eigenfunction_cmd(
    N: int = typer.Option(..., "--N"),
    n: int = typer.Option(..., "--n"),
    xs: str = typer.Option(..., "--x", help="Comma-separated sample points."),
    route: Route | None = typer.Option(None, "--route", help="Force one evaluation route."),
    compare: Route | None = typer.Option(None, "--compare", help="Second route; adds a ratio column."),
    fmt: OutputFormat = typer.Option(OutputFormat.CSV, "--format"),
):
    """Canonically normalized eigenfunction samples (x, y, route)."""
    spec = EigenSpec.of(N, n)
    points = _parse_floats(xs, "--x")

    rows = []
    any_error = False
    for x in points:
        row = {"x": x}
        try:
            row.update(_sample(spec, x, route))
            if compare is not None:
                other = _sample(spec, x, compare)
                row["ratio"] = row["y"] / other["y"] if other["y"] != 0 else None
        except (DomainError, EvaluationError) as exc:
            row["message"] = str(exc)
            any_error = True
        rows.append(row)

    columns = ["x", "y", "error", "route"] + (["ratio"] if compare is not None else []) + ["message"]
    emit_rows(fmt, f"Eigenfunction N={N} n={n}", columns, rows, {"N": N, "n": n, "E": spec.E})
    if any_error:
        raise typer.Exit(EXIT_NUMERIC)


@app.command()
@_handled
def moments(
    family: Family = typer.Option(..., "--family"),
    N: int = typer.Option(..., "--N"),
    count: int = typer.Option(..., "--count", min=1),
    cfrac: bool = typer.Option(False, "--cfrac", help="S-fraction coefficients instead of moments."),
    phi3: bool = typer.Option(False, "--phi3", help="Q family, N = 1: the phi3 symmetry numbers."),
    fmt: OutputFormat = typer.Option(OutputFormat.PRETTY, "--format"),
):
    """Exact moments a_0 .. a_{count-1}, or the fraction coefficients."""
    if count > MAX_MOMENTS:
        raise typer.BadParameter(f"count must be <= {MAX_MOMENTS}", param_hint="--count")
    if cfrac and phi3:
        raise typer.BadParameter("--cfrac and --phi3 are exclusive", param_hint="--phi3")
    spec = FamilySpec(family, N)
    meta = {"family": family.value, "N": N}

    if phi3:
        if family != Family.ODD_Q or N != 1:
            raise typer.BadParameter("--phi3 needs --family Q --N 1", param_hint="--phi3")
        values = phi3_symmetry_numbers(count)
        rows = [{"n": k, "value": _fraction(v)} for k, v in enumerate(values, start=1)]
        emit_rows(fmt, "phi3 symmetry numbers", ["n", "value"], rows, meta)
        return
    if cfrac:
        coeffs = sfraction_coeffs(spec, count)
        rows = [{"k": k, "value": str(c)} for k, c in enumerate(coeffs, start=1)]
        emit_rows(fmt, f"{spec.label} S-fraction", ["k", "value"], rows, meta)
        return

    seq = moments_from_sfraction(spec, count)
    rows = [{"k": k, "value": str(a), "signed": str(seq.signed(k))} for k, a in enumerate(seq.values)]
    emit_rows(fmt, f"{spec.label} moments", ["k", "value", "signed"], rows, meta)


def _fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@app.command()
@_handled
def verify(
    suite: SuiteName = typer.Option(SuiteName.ALL, "--suite"),
    Ns: str | None = typer.Option(None, "--N", help="Comma-separated orders, e.g. -1,1,2."),
    tol: list[str] | None = typer.Option(None, "--tol", help="Tolerance override KIND=VALUE, repeatable."),
    fmt: OutputFormat = typer.Option(OutputFormat.PRETTY, "--format"),
    output: Path | None = typer.Option(None, "--output", help="Also write the JSON report here."),
):
    """Run a verification suite; exit 1 if any case fails."""
    orders = _parse_ints(Ns, "--N") if Ns else None
    report = run_suite(suite.value, orders, _parse_tolerances(tol or []))

    if output is not None:
        output.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    if fmt == OutputFormat.JSON:
        typer.echo(report.model_dump_json(indent=2))
    elif fmt == OutputFormat.CSV:
        rows = [case.model_dump() for case in report.cases]
        emit_rows(fmt, "", ["name", "status", "measured", "expected", "tolerance", "message"], rows)
    else:
        counts = report.counts()
        failures = [case.model_dump() for case in report.failed]
        if failures:
            emit_rows(fmt, "Failing cases", ["name", "measured", "expected", "tolerance", "message"], failures)
        console.print(
            f"[bold]{report.suite}[/bold]: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['skip']} skip in {report.wall_time:.1f}s (tolerances {report.config_version})"
        )
    if not report.ok:
        raise typer.Exit(EXIT_VERIFY_FAILED)


def run() -> None:
    app()


if __name__ == "__main__":
    run()
