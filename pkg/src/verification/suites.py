"""
Verification Suites
===================

CONCEPT: One suite, one report
------------------------------
    exact          golden tables, polynomial identities, fractions, moments
    spectra        eigenvalue formulas against the shooting oracle, residuals,
                   reflection, agreement between closed forms
    wkb            action integrals
    specfun        Airy integrals and ODE, Bateman vs K0, generating functions
    orthogonality  norms, numeric weighted integrals, the moment bridge

Cases are appended in a fixed order (suite, then N, then index), so two runs
produce the same report. `all` runs every suite and concatenates the cases.
"""
import logging
import math
import time
from dataclasses import replace

import sympy

from src.config import get_settings
from src.errors import ParameterError
from src.exact_poly.families import Family, FamilySpec, hermite_coincidence, polynomial
from src.exact_poly.identities import check_diff_relation, check_ode_identity
from src.exact_poly.moments import (
    check_jfraction_consistency,
    hankel_determinants,
    moment_functional,
    moments_from_sfraction,
    norm_exact,
    phi3_symmetry_numbers,
    sfraction_coeffs,
)
from src.oracle.differences import first_derivative
from src.oracle.shooting import spectrum_scan
from src.oracle.weights import moment_bridge, norm_gamma_form, orthogonality_numeric_even
from src.specfun.bessel import airy_integral_closed_form, airy_integral_numeric, generalized_airy
from src.specfun.values import DEFAULT_CONFIG, EvalConfig
from src.spectra.eigen import EigenSpec, eigenvalue
from src.spectra.eigenfunctions import Route, decomposition_consistency, reflection_defect
from src.spectra.generating import expected_coefficients, generating_function_coefficients
from src.spectra.residual import ode_residual
from src.spectra.wkb import action_offset, wkb_action
from src.verification import golden
from src.verification.report import Case, Report, VerificationGate

logger = logging.getLogger(__name__)

SUITES = ("exact", "spectra", "wkb", "specfun", "orthogonality")

DEFAULT_NS = {
    "exact": (-1, 0, 1, 2, 3, 4, 5),
    "spectra": (-1, 0, 1, 2, 3),
    "wkb": (-1, 0, 1, 2, 3),
    "specfun": (-1, 0, 1, 2, 3, 5),
    "orthogonality": (-1, 0, 1, 2, 3, 4, 5),
}

EXACT_MAX_INDEX = 8
CONSISTENCY_GRID = [0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1, 2.4, 2.7, 3.0]
BATEMAN_GRID = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
# consistency samples stop where e^{-x^{N+2}/(N+2)} falls below 1e-3
ENVELOPE_FLOOR = 1e-3


def _families(N: int) -> list[FamilySpec]:
    return [FamilySpec(fam, N) for fam in Family if fam.is_even == (N % 2 == 0)]


def _exact_suite(gate: VerificationGate, Ns) -> None:
    for N in Ns:
        for spec in _families(N):
            label = spec.label
            table = golden.table_polynomials(spec)
            if table is None:
                gate.skip(f"{label} table", "no reference table")
            else:
                for n, expected in enumerate(table):
                    gate.exact(f"{label} table n={n}", polynomial(spec, n), expected)

            for n in range(EXACT_MAX_INDEX + 1):
                gate.zero(f"{label} ode n={n}", check_ode_identity(spec, n))
                gate.zero(f"{label} relation n={n}", check_diff_relation(spec, n))

            gate.empty(f"{label} J-fraction", check_jfraction_consistency(spec, EXACT_MAX_INDEX))
            example = golden.SFRACTION_EXAMPLES.get((spec.family, spec.N))
            if example is not None:
                gate.exact(f"{label} S-fraction", sfraction_coeffs(spec, len(example)), example)

            moments = moments_from_sfraction(spec, 2 * EXACT_MAX_INDEX + 1)
            for m in range(EXACT_MAX_INDEX + 1):
                for n in range(m, EXACT_MAX_INDEX + 1):
                    value = moment_functional(moments, polynomial(spec, m), polynomial(spec, n))
                    expected = norm_exact(spec, n) if m == n else 0
                    gate.exact(f"{label} L[f_{m} f_{n}]", value, expected)
            dets = hankel_determinants(moments, EXACT_MAX_INDEX)
            gate.exact(f"{label} Hankel positive", all(d > 0 for d in dets), True)

        if N == 0:
            for n in range(EXACT_MAX_INDEX + 1):
                result = hermite_coincidence(n)
                gate.zero(f"Hermite even n={n}", result["even_residual"])
                gate.zero(f"Hermite odd n={n}", result["odd_residual"])
        if N == -1:
            for spec in _families(-1):
                for n in range(6):
                    double = int(sympy.factorial2(2 * n - 1) * sympy.factorial2(2 * n + 1))
                    gate.exact(f"{spec.label} norm n={n}", norm_exact(spec, n), double)
        if N == 1:
            gate.exact("phi3 C_2", phi3_symmetry_numbers(1)[0], golden.PHI3_FIRST)


def _energy_window(N: int, cap: float) -> tuple[float, float]:
    # offset by half a scan step so no eigenvalue sits on a grid point
    if N % 2 == 0:
        return 0.05, cap + 0.05
    return -cap - 0.05, cap + 0.05


def consistency_grid(N: int) -> list[float]:
    limit = -math.log(ENVELOPE_FLOOR)
    return [x for x in CONSISTENCY_GRID if x ** (N + 2) / (N + 2) <= limit]


def _consistency_config(N: int) -> EvalConfig:
    # odd N >= 1 routes resolve a tighter target; the Bateman integral does not
    if N >= 1:
        return replace(DEFAULT_CONFIG, target_rel_tol=get_settings().numeric("consistency_rel_tol"))
    return DEFAULT_CONFIG


def record_consistency(gate: VerificationGate, name: str, result: dict) -> Case:
    """One case per consistency run, failing when too few sample points were usable."""
    used, total = result["points"], result["total"]
    detail = f"used {used}/{total}"
    if result["skipped"]:
        detail += "; skipped " + ", ".join(f"x={s['x']} ({s['reason']})" for s in result["skipped"])
    if used < get_settings().numeric("consistency_min_used") * total:
        return gate.fail(name, f"too few usable points, {detail}")
    return gate.below(name, result["spread"], "proportionality", message=detail)


def _spectra_suite(gate: VerificationGate, Ns) -> None:
    cap = get_settings().numeric("verify_energy_max")
    for N in Ns:
        if N in golden.SPECTRA:
            n_lo, values = golden.SPECTRA[N]
            formula = [eigenvalue(N, n) for n in range(n_lo, n_lo + len(values))]
            gate.exact(f"N={N} spectrum table", formula, values)
        else:
            gate.skip(f"N={N} spectrum table", "no reference spectrum")

        name = f"N={N} shooting"
        with gate.guard(name):
            lo, hi = _energy_window(N, cap)
            found = spectrum_scan(N, (lo, hi))
            n_range = range(0, 200) if N % 2 == 0 else range(-200, 200)
            expected = [(n, eigenvalue(N, n)) for n in n_range if lo < eigenvalue(N, n) < hi]
            if len(found) != len(expected):
                gate.fail(name, f"found {len(found)} eigenvalues, expected {len(expected)}")
            else:
                for (n, E), result in zip(expected, found):
                    gate.close(f"N={N} shooting n={n}", result.E, E, "shooting")
                    if N % 2 == 0:
                        gate.exact(f"N={N} nodes n={n}", result.n_nodes, n)

        indices = [0, 1, 2] if N % 2 == 0 else [-2, -1, 0, 1]
        for n in indices:
            spec = EigenSpec.of(N, n)
            for x in (0.5, 1.0, 1.8):
                with gate.guard(f"N={N} residual n={n} x={x}"):
                    gate.below(f"N={N} residual n={n} x={x}", ode_residual(spec, x), "finite_difference")

        if N % 2 != 0:
            cfg = _consistency_config(N)
            for n in range(3):
                name = f"N={N} reflection n={n}"
                with gate.guard(name):
                    result = reflection_defect(N, n, [0.5, 1.5], cfg)
                    gate.below(name, result["deviation"], "proportionality")
                for x in (0.5, 1.5):
                    name = f"N={N} residual n={n} x={-x}"
                    with gate.guard(name):
                        gate.below(name, ode_residual(EigenSpec.of(N, n), -x), "finite_difference")
            for n in range(-3, 4):
                name = f"N={N} representation consistency n={n}"
                with gate.guard(name):
                    result = decomposition_consistency(
                        N, n, consistency_grid(N), tol=gate.tolerance("proportionality"), cfg=cfg,
                    )
                    record_consistency(gate, name, result)


def _wkb_suite(gate: VerificationGate, Ns) -> None:
    for N in Ns:
        for n in range(6):
            if N % 2 != 0:
                name = f"N={N} action n={n}"
                with gate.guard(name):
                    gate.close(name, wkb_action(N, eigenvalue(N, n)), (n + 0.5) * math.pi, "wkb")
            else:
                name = f"N={N} action offset n={n}"
                with gate.guard(name):
                    expected = math.pi / (2 * (N + 2)) * (-1 if n % 2 == 0 else 1)
                    gate.close(name, action_offset(N, n), expected, "wkb_offset")


def _airy_ode_residual(N: int, x: float, h: float = 1e-2) -> float:
    """|A'' - x^{2/(N+1)} A| / (|A| (1 + x^{2/(N+1)})), A'' from A' by Richardson."""
    slope = lambda s: generalized_airy(N, s)[1].value  # noqa: E731
    second = (16 * first_derivative(slope, x, h / 2) - first_derivative(slope, x, h)) / 15
    value = generalized_airy(N, x)[0].value
    potential = x ** (2.0 / (N + 1))
    return abs(second - potential * value) / (abs(value) * (1 + potential))


def _specfun_suite(gate: VerificationGate, Ns) -> None:
    with gate.guard("Ai integral"):
        value, _ = airy_integral_numeric(1)
        gate.close("Ai integral", value, 1.0 / 3.0, "special_function")

    for N in Ns:
        if N >= 1 and N % 2 == 1:
            with gate.guard(f"A_{N} integral"):
                value, _ = airy_integral_numeric(N)
                gate.close(f"A_{N} integral", value, airy_integral_closed_form(N), "quadrature", relative=True)
            for x in (0.5, 1.0, 2.0):
                with gate.guard(f"A_{N} ode x={x}"):
                    gate.below(f"A_{N} ode x={x}", _airy_ode_residual(N, x), "airy_ode")

        for spec in _families(N):
            name = f"{spec.label} generating function"
            with gate.guard(name):
                got = generating_function_coefficients(spec, 1.0, 6)
                want = expected_coefficients(spec, 1.0, 6)
                scale = max(abs(w) for w in want)
                worst = max(abs(g - w) / max(abs(w), 1e-2 * scale) for g, w in zip(got, want))
                gate.below(name, worst, "generating_function")

    if -1 in Ns:
        for n in (-1, -2, -3):
            name = f"Bateman vs K0 n={n}"
            with gate.guard(name):
                result = decomposition_consistency(
                    -1, n, BATEMAN_GRID, first=Route.BATEMAN, tol=gate.tolerance("proportionality"),
                )
                record_consistency(gate, name, result)


def _orthogonality_suite(gate: VerificationGate, Ns) -> None:
    for N in Ns:
        for spec in _families(N):
            label = spec.label
            for n in range(6):
                gate.close(
                    f"{label} norm Gamma form n={n}", norm_gamma_form(spec, n), float(norm_exact(spec, n)),
                    "norm_gamma", relative=True,
                )
            if not spec.is_even:
                continue
            for m in range(5):
                for n in range(m, 5):
                    name = f"{label} weighted <{m},{n}>"
                    with gate.guard(name):
                        deviation = orthogonality_numeric_even(N, spec.family, m, n)
                        scale = math.sqrt(norm_gamma_form(spec, m) * norm_gamma_form(spec, n))
                        gate.below(name, deviation / scale, "quadrature")
            with gate.guard(f"{label} moment bridge"):
                bridge = moment_bridge(N, spec.family)
                gate.close(f"{label} moment bridge scale", bridge["scale"], 1.0, "moment_bridge")
                gate.below(f"{label} moment bridge spread", bridge["spread"], "moment_bridge")
                gate.exact(f"{label} moment bridge numeric", bridge["consistent"], True)


_RUNNERS = {
    "exact": _exact_suite,
    "spectra": _spectra_suite,
    "wkb": _wkb_suite,
    "specfun": _specfun_suite,
    "orthogonality": _orthogonality_suite,
}


def run_suite(name: str, Ns: list[int] | None = None, tolerances: dict[str, float] | None = None) -> Report:
    """Run one suite, or every suite for name == "all"."""
    if name == "all":
        report = None
        for suite in SUITES:
            part = run_suite(suite, Ns, tolerances)
            report = part if report is None else report.merged(part)
        return report.model_copy(update={"suite": "all"})
    if name not in _RUNNERS:
        raise ParameterError(f"unknown suite '{name}', expected one of {('all',) + SUITES}")

    settings = get_settings()
    merged = {kind: settings.tolerance(kind) for kind in settings.tolerances}
    for kind, value in (tolerances or {}).items():
        if kind not in merged:
            raise ParameterError(f"unknown tolerance kind '{kind}'")
        if not value >= 0:
            raise ParameterError(f"tolerance '{kind}' must be non-negative")
        merged[kind] = value

    chosen = tuple(DEFAULT_NS[name] if Ns is None else Ns)
    gate = VerificationGate(name, merged)
    start = time.perf_counter()
    _RUNNERS[name](gate, chosen)
    report = gate.report(time.perf_counter() - start, settings.version)
    counts = report.counts()
    logger.info(
        "[Verify] %s: %d pass, %d fail, %d skip in %.1fs",
        name, counts["pass"], counts["fail"], counts["skip"], report.wall_time,
    )
    return report
