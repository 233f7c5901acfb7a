"""
Verification Gate
=================
Every check ends up as one Case: pass, fail or skip, with what was measured,
what was expected and the tolerance that decided it. A numeric failure inside
a check becomes a failing case carrying the error message, never a silent
gap in the report.

Exact quantities are recorded as decimal strings so large integers survive
JSON untouched.
"""
import logging
import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field

from src.errors import SpecpolyError
from src.exact_poly.poly import ExactPoly

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

Status = Literal["pass", "fail", "skip"]


class Case(BaseModel):
    name: str
    status: Status
    measured: str | float | None = None
    expected: str | float | None = None
    tolerance: float | None = None
    message: str = ""


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    config_version: str = ""
    suite: str
    cases: list[Case] = Field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failed(self) -> list[Case]:
        return [c for c in self.cases if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def merged(self, other: "Report") -> "Report":
        return Report(
            schema_version=self.schema_version,
            config_version=self.config_version or other.config_version,
            suite=self.suite,
            cases=self.cases + other.cases,
            wall_time=self.wall_time + other.wall_time,
        )


def _exact_str(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return str(value)


class VerificationGate:
    """Collects cases for one suite in the order they are checked."""

    def __init__(self, suite: str, tolerances: dict[str, float]):
        self.suite = suite
        self.tolerances = tolerances
        self.cases: list[Case] = []

    def tolerance(self, kind: str) -> float:
        return self.tolerances[kind]

    def _add(self, case: Case) -> Case:
        self.cases.append(case)
        if case.status == "fail":
            logger.warning("[Verify] FAIL %s: %s", case.name, case.message or f"{case.measured} vs {case.expected}")
        return case

    def exact(self, name: str, measured, expected) -> Case:
        status = "pass" if measured == expected else "fail"
        return self._add(Case(
            name=name, status=status, measured=_exact_str(measured),
            expected=_exact_str(expected), tolerance=0.0,
        ))

    def zero(self, name: str, residual: ExactPoly) -> Case:
        """An exact polynomial residual that must vanish."""
        ok = residual.is_zero()
        message = "" if ok else "first nonzero term (power, coefficient) = {}".format(residual.first_nonzero())
        return self._add(Case(
            name=name, status="pass" if ok else "fail", measured="0" if ok else str(residual),
            expected="0", tolerance=0.0, message=message,
        ))

    def empty(self, name: str, mismatches: list[str]) -> Case:
        ok = not mismatches
        return self._add(Case(
            name=name, status="pass" if ok else "fail", measured=str(len(mismatches)),
            expected="0", tolerance=0.0, message="; ".join(mismatches),
        ))

    def close(self, name: str, measured: float, expected: float, kind: str, relative: bool = False) -> Case:
        tol = self.tolerance(kind)
        deviation = abs(measured - expected)
        if relative and expected != 0:
            deviation /= abs(expected)
        status = "pass" if math.isfinite(deviation) and deviation <= tol else "fail"
        return self._add(Case(
            name=name, status=status, measured=float(measured), expected=float(expected), tolerance=tol,
        ))

    def below(self, name: str, measured: float, kind: str, message: str = "") -> Case:
        tol = self.tolerance(kind)
        status = "pass" if math.isfinite(measured) and abs(measured) <= tol else "fail"
        return self._add(Case(
            name=name, status=status, measured=float(measured), expected=0.0, tolerance=tol, message=message,
        ))

    def skip(self, name: str, reason: str) -> Case:
        return self._add(Case(name=name, status="skip", message=reason))

    def fail(self, name: str, message: str) -> Case:
        return self._add(Case(name=name, status="fail", message=message))

    @contextmanager
    def guard(self, name: str):
        """Turn a numeric error raised inside the block into a failing case."""
        try:
            yield
        except SpecpolyError as exc:
            self.fail(name, f"{type(exc).__name__}: {exc}")

    def report(self, wall_time: float, config_version: str = "") -> Report:
        return Report(
            config_version=config_version, suite=self.suite, cases=list(self.cases), wall_time=wall_time,
        )
