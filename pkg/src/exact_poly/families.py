"""
Polynomial Families
===================

CONCEPT: Four monic families, one recurrence shape
---------------------------------------------------
Every family obeys f_{n+1}(z) = (z - b_n) f_n(z) - c_n f_{n-1}(z) with integer
b_n, c_n. With A = 2(N+2):

    p (even N):  b_n = A(2n+1) - 2   c_n = An(An - 2)
    q (even N):  b_n = A(2n+1) + 2   c_n = An(An + 2)
    P, Q (odd N): b_n = -A(2n+1)     c_n = (An)^2 - 1

The even recurrences run from n = 0 with f_{-1} = 0. The odd ones share b_n
and c_n but not their first members (P_1 = z + 2N + 5, Q_1 = z + 2N + 3), so
they only run from n = 1. `initial_shift` gives the effective b_0 for all four.

CONCEPT: Variables
------------------
z = 4x^{N+2} throughout: z = 4x^2 for the harmonic oscillator (N=0),
z = 4x for N = -1 and z = 4x^3 for N = 1.
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from src.errors import ParameterError
from src.exact_poly.poly import ExactPoly


class Family(str, Enum):
    EVEN_P = "p"
    EVEN_Q = "q"
    ODD_P = "P"
    ODD_Q = "Q"

    @property
    def is_even(self) -> bool:
        return self in (Family.EVEN_P, Family.EVEN_Q)

    @property
    def partner(self) -> "Family":
        """The family coupled to this one (p<->q, P<->Q)."""
        return {
            Family.EVEN_P: Family.EVEN_Q,
            Family.EVEN_Q: Family.EVEN_P,
            Family.ODD_P: Family.ODD_Q,
            Family.ODD_Q: Family.ODD_P,
        }[self]


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    N: int

    def __post_init__(self):
        if not isinstance(self.family, Family):
            try:
                object.__setattr__(self, "family", Family(self.family))
            except ValueError:
                raise ParameterError(f"unknown family '{self.family}'")
        if not isinstance(self.N, int) or isinstance(self.N, bool):
            raise ParameterError(f"N must be an integer, got {self.N!r}")
        if self.N < -1:
            raise ParameterError(f"N must be >= -1, got {self.N}")
        if self.family.is_even and self.N % 2 != 0:
            raise ParameterError(f"family {self.family.value} needs even N, got N={self.N}")
        if not self.family.is_even and self.N % 2 == 0:
            raise ParameterError(f"family {self.family.value} needs odd N, got N={self.N}")

    @property
    def is_even(self) -> bool:
        return self.family.is_even

    @property
    def alpha(self) -> int:
        """2(N+2), the scale that appears in every coefficient."""
        return 2 * (self.N + 2)

    def partner(self) -> "FamilySpec":
        return FamilySpec(self.family.partner, self.N)

    @property
    def label(self) -> str:
        return f"{self.family.value}(N={self.N})"


@dataclass(frozen=True)
class RecurrenceCoeffs:
    n: int
    b: int
    c: int


def check_index(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParameterError(f"{name} must be a non-negative integer, got {n!r}")


def recurrence_coeffs(spec: FamilySpec, n: int) -> RecurrenceCoeffs:
    check_index(n)
    A = spec.alpha
    if spec.family is Family.EVEN_P:
        return RecurrenceCoeffs(n=n, b=A * (2 * n + 1) - 2, c=A * n * (A * n - 2))
    if spec.family is Family.EVEN_Q:
        return RecurrenceCoeffs(n=n, b=A * (2 * n + 1) + 2, c=A * n * (A * n + 2))
    return RecurrenceCoeffs(n=n, b=-A * (2 * n + 1), c=(A * n) ** 2 - 1)


def initial_shift(spec: FamilySpec) -> int:
    """b such that f_1(z) = z - b."""
    if spec.is_even:
        return recurrence_coeffs(spec, 0).b
    if spec.family is Family.ODD_P:
        return -(spec.alpha + 1)
    return -(spec.alpha - 1)


@lru_cache(maxsize=256)
def _sequence(spec: FamilySpec, n_max: int) -> tuple[ExactPoly, ...]:
    z = ExactPoly.z()
    polys = [ExactPoly.const(1), z - initial_shift(spec)]
    for n in range(1, n_max):
        rc = recurrence_coeffs(spec, n)
        polys.append((z - rc.b) * polys[n] - polys[n - 1] * rc.c)
    return tuple(polys[: n_max + 1])


def polynomials(spec: FamilySpec, n_max: int) -> list[ExactPoly]:
    """f_0 ... f_{n_max} of one family."""
    check_index(n_max, "n_max")
    return list(_sequence(spec, n_max))


def polynomial(spec: FamilySpec, n: int) -> ExactPoly:
    check_index(n)
    return _sequence(spec, n)[n]


def hermite_polynomials(n_max: int) -> list[ExactPoly]:
    """Physicists' Hermite H_0..H_{n_max} in x from H_{k+1} = 2xH_k - 2kH_{k-1}."""
    x = ExactPoly.z()
    out = [ExactPoly.const(1), x * 2]
    for k in range(1, n_max):
        out.append(x * out[k] * 2 - out[k - 1] * (2 * k))
    return out[: n_max + 1]


def hermite_coincidence(n: int) -> dict:
    """
    Compare the N=0 families with Hermite polynomials:
    p_n(4x^2) = H_{2n}(x) and 2x q_n(4x^2) = H_{2n+1}(x).
    """
    check_index(n)
    H = hermite_polynomials(2 * n + 1)
    p = polynomial(FamilySpec(Family.EVEN_P, 0), n).substitute_monomial(4, 2)
    q = polynomial(FamilySpec(Family.EVEN_Q, 0), n).substitute_monomial(4, 2).shift(1) * 2
    even_residual = p - H[2 * n]
    odd_residual = q - H[2 * n + 1]
    return {
        "n": n,
        "even_residual": even_residual,
        "odd_residual": odd_residual,
        "ok": even_residual.is_zero() and odd_residual.is_zero(),
    }


def laguerre_from_family(spec: FamilySpec, n: int, t: float) -> float:
    """
    Generalized Laguerre L_n^(alpha)(t) read off the monic even families,
    alpha = -1/(N+2) for p and +1/(N+2) for q.

    p_n(z) = (-1)^n n! A^n L_n(z/A) with A = 2(N+2).
    """
    if not spec.is_even:
        raise ParameterError(f"Laguerre form only exists for even families, got {spec.label}")
    check_index(n)
    A = spec.alpha
    return float(polynomial(spec, n)(A * t)) / ((-1) ** n * math.factorial(n) * A**n)


def laguerre_order(spec: FamilySpec) -> float:
    if not spec.is_even:
        raise ParameterError(f"Laguerre form only exists for even families, got {spec.label}")
    return (-1.0 if spec.family is Family.EVEN_P else 1.0) / (spec.N + 2)
