"""Tests for the verification gate, golden values and suites."""
import json
import math
from fractions import Fraction

import pytest

from src.config import get_settings
from src.errors import EvaluationError, ParameterError
from src.exact_poly.families import Family, FamilySpec, polynomial
from src.exact_poly.poly import ExactPoly
from src.spectra.eigen import eigenvalue
from src.verification import golden
from src.verification.report import SCHEMA_VERSION, Report, VerificationGate
from src.verification.suites import (
    CONSISTENCY_GRID,
    DEFAULT_NS,
    consistency_grid,
    record_consistency,
    run_suite,
)


@pytest.fixture
def gate():
    return VerificationGate("unit", {"quadrature": 1e-7, "exact": 0.0})


# --- gate -----------------------------------------------------------------------------

def test_exact_case_pass_and_fail(gate):
    assert gate.exact("same", 12, 12).status == "pass"
    case = gate.exact("different", 12, 13)
    assert case.status == "fail"
    assert case.measured == "12" and case.expected == "13"


def test_exact_case_keeps_big_integers_as_strings(gate):
    big = 3**80
    case = gate.exact("big", big, big)
    assert case.measured == str(big)
    assert gate.exact("fraction", Fraction(5, 24), Fraction(5, 24)).measured == "5/24"


def test_zero_case(gate):
    p = ExactPoly.of(1, 2, 3)
    assert gate.zero("vanishes", p - p).status == "pass"
    case = gate.zero("residual", ExactPoly.of(0, 3))
    assert case.status == "fail"
    assert "(1, 3)" in case.message


def test_empty_case(gate):
    assert gate.empty("none", []).status == "pass"
    case = gate.empty("some", ["c_1 differs", "c_2 differs"])
    assert case.status == "fail"
    assert case.measured == "2"


def test_close_absolute_and_relative(gate):
    assert gate.close("abs", 1.0 + 1e-8, 1.0, "quadrature").status == "pass"
    assert gate.close("abs far", 1.0 + 1e-6, 1.0, "quadrature").status == "fail"
    assert gate.close("rel", 1e6 + 1e-2, 1e6, "quadrature", relative=True).status == "pass"
    assert gate.close("nan", math.nan, 1.0, "quadrature").status == "fail"


def test_below(gate):
    assert gate.below("small", -5e-8, "quadrature").status == "pass"
    assert gate.below("large", 1e-3, "quadrature").status == "fail"
    assert gate.below("inf", math.inf, "quadrature").status == "fail"


def test_guard_turns_numeric_errors_into_failures(gate):
    with gate.guard("series"):
        raise EvaluationError("did not converge", partial=1.0, bound=0.5)
    case = gate.cases[-1]
    assert case.status == "fail"
    assert "EvaluationError" in case.message


def test_guard_does_not_hide_programming_errors(gate):
    with pytest.raises(ZeroDivisionError):
        with gate.guard("bug"):
            1 / 0


def test_report_counts_and_json(gate):
    gate.exact("a", 1, 1)
    gate.exact("b", 1, 2)
    gate.skip("c", "no table")
    report = gate.report(0.25, "v1")
    assert report.counts() == {"pass": 1, "fail": 1, "skip": 1}
    assert not report.ok
    data = json.loads(report.model_dump_json())
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["config_version"] == "v1"
    assert [c["name"] for c in data["cases"]] == ["a", "b", "c"]


def test_report_merge_keeps_order():
    first = Report(suite="x", cases=[], wall_time=1.0)
    gate = VerificationGate("y", {})
    gate.skip("only", "reason")
    merged = first.merged(gate.report(2.0))
    assert merged.suite == "x"
    assert merged.wall_time == pytest.approx(3.0)
    assert [c.name for c in merged.cases] == ["only"]


# --- golden values ----------------------------------------------------------------------

@pytest.mark.parametrize("key", list(golden.POLYNOMIAL_TABLES), ids=lambda k: f"{k[0].value}{k[1]}")
def test_golden_tables_match_recurrence(key):
    spec = FamilySpec(*key)
    for n, expected in enumerate(golden.table_polynomials(spec)):
        assert polynomial(spec, n) == expected


def test_golden_table_missing():
    assert golden.table_polynomials(FamilySpec(Family.EVEN_P, 4)) is None


@pytest.mark.parametrize("N", list(golden.SPECTRA))
def test_golden_spectra_match_formula(N):
    n_lo, values = golden.SPECTRA[N]
    assert [eigenvalue(N, n) for n in range(n_lo, n_lo + len(values))] == values


# --- suites ---------------------------------------------------------------------------

def test_exact_suite_passes():
    report = run_suite("exact", [-1, 1, 2])
    assert report.ok, [c.name for c in report.failed]
    assert report.counts()["skip"] == 0
    names = [c.name for c in report.cases]
    assert "phi3 C_2" in names
    assert "P(N=1) S-fraction" in names


def test_exact_suite_skips_missing_tables():
    report = run_suite("exact", [4])
    skipped = [c.name for c in report.cases if c.status == "skip"]
    assert skipped == ["p(N=4) table", "q(N=4) table"]
    assert report.ok


def test_wkb_suite():
    report = run_suite("wkb", [1, 2])
    assert report.ok, [c.name for c in report.failed]
    assert report.counts()["pass"] == 12


def test_tolerance_override_is_recorded():
    report = run_suite("wkb", [1], {"wkb": 1e-6})
    assert {c.tolerance for c in report.cases} == {1e-6}


def test_run_suite_rejects_bad_input():
    with pytest.raises(ParameterError):
        run_suite("plots")
    with pytest.raises(ParameterError):
        run_suite("wkb", [1], {"nonsense": 1.0})
    with pytest.raises(ParameterError):
        run_suite("wkb", [1], {"wkb": -1.0})


def test_reports_are_deterministic():
    first = run_suite("exact", [0])
    second = run_suite("exact", [0])
    assert [(c.name, c.status, c.measured) for c in first.cases] == [
        (c.name, c.status, c.measured) for c in second.cases
    ]


def _consistency_result(used: int, total: int, spread: float = 1e-12) -> dict:
    skipped = [{"x": 3.0 - 0.1 * k, "reason": "relative error estimate 1.0e-07"} for k in range(total - used)]
    return {"spread": spread, "points": used, "total": total, "skipped": skipped}


def test_consistency_case_reports_used_and_skipped_points():
    gate = VerificationGate("unit", {"proportionality": 1e-8})
    case = record_consistency(gate, "consistency", _consistency_result(8, 10))
    assert case.status == "pass"
    assert case.message.startswith("used 8/10; skipped x=3.0")


def test_consistency_case_fails_with_too_few_points():
    gate = VerificationGate("unit", {"proportionality": 1e-8})
    case = record_consistency(gate, "consistency", _consistency_result(1, 10))
    assert case.status == "fail"
    assert "used 1/10" in case.message
    assert record_consistency(gate, "all used", _consistency_result(10, 10, spread=1e-6)).status == "fail"


def test_consistency_grid_follows_the_envelope():
    assert consistency_grid(-1) == CONSISTENCY_GRID
    assert max(consistency_grid(1)) == 2.7
    assert max(consistency_grid(3)) == 1.8


def test_spectra_suite_defaults_cover_reference_energies():
    assert 3 in DEFAULT_NS["spectra"]
    assert get_settings().numeric("verify_energy_max") >= 21


@pytest.mark.slow
def test_spectra_suite_reaches_higher_energies():
    report = run_suite("spectra", [1, 2, 3])
    shooting = {
        (c.name.split()[0], c.expected) for c in report.cases
        if " shooting n=" in c.name and c.status == "pass"
    }
    for E in (3.0, 5.0, 11.0, 13.0, 19.0, 21.0):
        assert ("N=2", E) in shooting
    for E in (-15.0, -9.0, 9.0, 15.0):
        assert ("N=1", E) in shooting
    for E in (-15.0, -5.0, 5.0, 15.0, 25.0):
        assert ("N=3", E) in shooting


@pytest.mark.slow
def test_spectra_suite_without_table_only_skips_table():
    report = run_suite("spectra", [5])
    table = [c for c in report.cases if c.name == "N=5 spectrum table"]
    assert [c.status for c in table] == ["skip"]
    assert any(c.name.startswith("N=5 shooting") for c in report.cases)
