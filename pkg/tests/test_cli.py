"""Tests for the specpoly command line."""
import csv
import io
import json

import pytest
from typer.testing import CliRunner

from src.cli.app import app
from src.exact_poly.families import Family, FamilySpec, polynomial
from src.exact_poly.poly import ExactPoly
from src.spectra.eigen import EigenSpec
from src.spectra.eigenfunctions import eigenfunction


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(app, list(args))


# --- poly ------------------------------------------------------------------------------

def test_poly_pretty_matches_reference_table(runner):
    result = invoke(runner, "poly", "--family", "P", "--N", "1", "--n", "4")
    assert result.exit_code == 0
    assert result.stdout.strip().splitlines()[-1] == "P(N=1) n=4: z^4+97z^3+2685z^2+22970z+43225"


def test_poly_trivial_index(runner):
    result = invoke(runner, "poly", "--family", "q", "--N", "2", "--n", "0")
    assert result.exit_code == 0
    assert result.stdout.strip().endswith(": 1")


def test_poly_json_round_trip(runner):
    result = invoke(runner, "poly", "--family", "Q", "--N", "-1", "--n", "6", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    spec = FamilySpec(Family.ODD_Q, -1)
    assert data["family"] == "Q" and data["N"] == -1
    for row in data["rows"]:
        assert ExactPoly.from_strings(row["coefficients"]) == polynomial(spec, row["n"])


def test_poly_csv(runner):
    result = invoke(runner, "poly", "--family", "p", "--N", "2", "--n", "2", "--format", "csv")
    assert result.exit_code == 0
    rows = list(csv.reader(io.StringIO(result.stdout)))
    assert rows[0] == ["n", "degree", "coefficients"]
    assert rows[3] == ["2", "2", "84 -28 1"]


def test_poly_hermite_check(runner):
    result = invoke(runner, "poly", "--family", "p", "--N", "0", "--n", "2", "--check-hermite")
    assert result.exit_code == 0
    assert "hermite n=2: pass" in result.stdout


def test_poly_usage_errors(runner):
    assert invoke(runner, "poly", "--family", "P", "--N", "2", "--n", "3").exit_code == 2
    assert invoke(runner, "poly", "--family", "x", "--N", "2", "--n", "3").exit_code == 2
    assert invoke(runner, "poly", "--family", "p", "--N", "2", "--n", "3", "--check-hermite").exit_code == 2


# --- spectrum --------------------------------------------------------------------------

def test_spectrum_even(runner):
    result = invoke(runner, "spectrum", "--N", "2", "--range", "0..3", "--format", "json")
    assert result.exit_code == 0
    assert [row["E_exact"] for row in json.loads(result.stdout)["rows"]] == [3, 5, 11, 13]


def test_spectrum_empty_range(runner):
    result = invoke(runner, "spectrum", "--N", "1", "--range", "3..1", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["rows"] == []


def test_spectrum_bad_range(runner):
    assert invoke(runner, "spectrum", "--N", "1", "--range", "1-3").exit_code == 2
    assert invoke(runner, "spectrum", "--N", "2", "--range", "-1..2").exit_code == 2


@pytest.mark.slow
def test_spectrum_with_oracle(runner):
    result = invoke(runner, "spectrum", "--N", "1", "--range", "-2..2", "--oracle", "--format", "json")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert [row["E_exact"] for row in rows] == [-9, -3, 3, 9, 15]
    assert max(row["delta"] for row in rows) < 1e-6
    assert {row["status"] for row in rows} == {"pass"}


# --- eigenfunction ---------------------------------------------------------------------

def test_eigenfunction_gaussian_at_origin(runner):
    result = invoke(runner, "eigenfunction", "--N", "0", "--n", "0", "--x", "0", "--format", "json")
    assert result.exit_code == 0
    row = json.loads(result.stdout)["rows"][0]
    assert row["y"] == pytest.approx(1.0, rel=1e-14)
    assert row["route"] == "LaguerreForm"


def test_eigenfunction_matches_library(runner):
    result = invoke(runner, "eigenfunction", "--N", "1", "--n", "-1", "--x", "0.5,1.0", "--format", "json")
    assert result.exit_code == 0
    spec = EigenSpec.of(1, -1)
    for row in json.loads(result.stdout)["rows"]:
        assert row["y"] == pytest.approx(eigenfunction(spec, row["x"])[0].value, rel=1e-14)


def test_eigenfunction_route_ratio_is_constant(runner):
    result = invoke(
        runner, "eigenfunction", "--N", "-1", "--n", "-1", "--x", "0.5,1.0,2.0",
        "--route", "BesselK0Form", "--compare", "BatemanForm", "--format", "json",
    )
    assert result.exit_code == 0
    ratios = [row["ratio"] for row in json.loads(result.stdout)["rows"]]
    assert ratios == pytest.approx([1.0, 1.0, 1.0], rel=1e-7)


def test_eigenfunction_reports_domain_errors_per_point(runner):
    result = invoke(
        runner, "eigenfunction", "--N", "1", "--n", "0", "--x", "1.0,-1.0",
        "--route", "TricomiForm", "--format", "json",
    )
    assert result.exit_code == 3
    rows = json.loads(result.stdout)["rows"]
    assert "y" in rows[0]
    assert "TricomiForm" in rows[1]["message"]


# --- moments ---------------------------------------------------------------------------

def test_moments_sfraction(runner):
    result = invoke(runner, "moments", "--family", "P", "--N", "1", "--cfrac", "--count", "4", "--format", "json")
    assert result.exit_code == 0
    assert [row["value"] for row in json.loads(result.stdout)["rows"]] == ["7", "5", "13", "11"]


def test_moments_phi3(runner):
    result = invoke(runner, "moments", "--family", "Q", "--N", "1", "--phi3", "--count", "1", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["rows"][0]["value"] == "5/24"


def test_moments_first_is_one(runner):
    result = invoke(runner, "moments", "--family", "p", "--N", "0", "--count", "1", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["rows"] == [{"k": 0, "value": "1", "signed": "1"}]


def test_moments_usage_errors(runner):
    assert invoke(runner, "moments", "--family", "P", "--N", "1", "--phi3", "--count", "1").exit_code == 2
    assert invoke(runner, "moments", "--family", "P", "--N", "1", "--count", "41").exit_code == 2
    assert invoke(runner, "moments", "--family", "P", "--N", "1", "--count", "0").exit_code == 2


# --- verify ----------------------------------------------------------------------------

def test_verify_wkb_json(runner, tmp_path):
    target = tmp_path / "report.json"
    result = invoke(runner, "verify", "--suite", "wkb", "--N", "1", "--format", "json", "--output", str(target))
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["suite"] == "wkb"
    assert len(report["cases"]) == 6
    assert {c["status"] for c in report["cases"]} == {"pass"}
    assert json.loads(target.read_text(encoding="utf-8")) == report


def test_verify_exact(runner):
    result = invoke(runner, "verify", "--suite", "exact", "--N", "-1,1,2")
    assert result.exit_code == 0


def test_verify_failure_exit_code(runner):
    result = invoke(runner, "verify", "--suite", "wkb", "--N", "2", "--tol", "wkb_offset=0", "--format", "json")
    report = json.loads(result.stdout)
    failed = [c for c in report["cases"] if c["status"] == "fail"]
    assert (result.exit_code == 1) == bool(failed)


def test_verify_usage_errors(runner):
    assert invoke(runner, "verify", "--suite", "plots").exit_code == 2
    assert invoke(runner, "verify", "--suite", "wkb", "--tol", "wkb").exit_code == 2
    assert invoke(runner, "verify", "--suite", "wkb", "--tol", "bogus=1").exit_code == 2
