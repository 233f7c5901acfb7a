"""
Moments, Continued Fractions and Norms
======================================

CONCEPT: Integer S-fractions
----------------------------
The moment series of every family is a Stieltjes continued fraction

    sum a_n t^n = 1 / (1 - alpha_1 t / (1 - alpha_2 t / (1 - ...)))

whose coefficients come in integer pairs. With A = 2(N+2) and k = 1, 2, ...:

    p:  alpha_{2k-1} = kA - 2,  alpha_{2k} = kA
    q:  alpha_{2k-1} = kA + 2,  alpha_{2k} = kA
    P:  alpha_{2k-1} = kA + 1,  alpha_{2k} = kA - 1
    Q:  alpha_{2k-1} = kA - 1,  alpha_{2k} = kA + 1

Expanding the fraction bottom-up in exact integer power series gives the
moments. Contracting pairs of levels gives a Jacobi fraction whose
coefficients must equal the recurrence coefficients.

CONCEPT: Sign convention for odd N
----------------------------------
The P/Q recurrences shift by +A(2n+1) while the S-fraction is positive, so the
positive measure lives in w = -z. The moment functional therefore uses
L[z^k] = (-1)^k a_k for P and Q. Under that convention L[f_m f_n] vanishes off
the diagonal and equals prod_{k<=n} c_k on it.
"""
from dataclasses import dataclass
from fractions import Fraction

import sympy

from src.errors import ParameterError
from src.exact_poly.families import (
    Family,
    FamilySpec,
    RecurrenceCoeffs,
    check_index,
    initial_shift,
    recurrence_coeffs,
)
from src.exact_poly.poly import ExactPoly


@dataclass(frozen=True)
class MomentSequence:
    values: tuple[int, ...]
    family: FamilySpec
    sfrac: tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise ParameterError("a moment sequence must start with a_0 = 1")

    def __len__(self) -> int:
        return len(self.values)

    def signed(self, k: int) -> int:
        """The moment the functional uses for z^k."""
        a = self.values[k]
        if self.family.is_even:
            return a
        return -a if k % 2 else a


def _check_count(count: int) -> None:
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ParameterError(f"count must be a positive integer, got {count!r}")


def sfraction_coeffs(spec: FamilySpec, count: int) -> list[int]:
    _check_count(count)
    A = spec.alpha
    first, second = {
        Family.EVEN_P: (-2, 0),
        Family.EVEN_Q: (2, 0),
        Family.ODD_P: (1, -1),
        Family.ODD_Q: (-1, 1),
    }[spec.family]
    out = []
    for j in range(1, count + 1):
        k = (j + 1) // 2
        out.append(k * A + (first if j % 2 else second))
    return out


def _inverse_unit_series(v: list[int]) -> list[int]:
    """1/v for an integer series with v[0] = 1, same truncation order."""
    w = [0] * len(v)
    w[0] = 1
    for k in range(1, len(v)):
        w[k] = -sum(v[j] * w[k - j] for j in range(1, k + 1))
    return w


def moments_from_sfraction(spec: FamilySpec, count: int) -> MomentSequence:
    """a_0 ... a_{count-1} from the S-fraction truncated at depth 2*count."""
    _check_count(count)
    coeffs = sfraction_coeffs(spec, 2 * count)
    series = [1] + [0] * (count - 1)
    for alpha in reversed(coeffs):
        # 1 - alpha t S(t)
        denom = [1] + [-alpha * series[k - 1] for k in range(1, count)]
        series = _inverse_unit_series(denom)
    return MomentSequence(values=tuple(series), family=spec, sfrac=tuple(coeffs))


def moment_functional(moments: MomentSequence, poly: ExactPoly, poly2: ExactPoly) -> int:
    """L[poly * poly2] with the family's sign convention."""
    product = poly * poly2
    if product.degree >= len(moments):
        raise ParameterError(
            f"need {product.degree + 1} moments for degree {product.degree}, "
            f"have {len(moments)}"
        )
    return sum(c * moments.signed(k) for k, c in enumerate(product.coeffs))


def norm_exact(spec: FamilySpec, n: int) -> int:
    """L[f_n^2] = c_1 c_2 ... c_n."""
    check_index(n)
    norm = 1
    for k in range(1, n + 1):
        norm *= recurrence_coeffs(spec, k).c
    return norm


def hankel_determinants(moments: MomentSequence, order: int) -> list[int]:
    """det[a_{i+j}]_{0<=i,j<=m} for m = 0 .. order, Bareiss elimination."""
    check_index(order, "order")
    if 2 * order >= len(moments):
        raise ParameterError(f"order {order} needs {2 * order + 1} moments, have {len(moments)}")
    dets = []
    for m in range(order + 1):
        H = sympy.Matrix(m + 1, m + 1, lambda i, j: moments.values[i + j])
        dets.append(int(H.det(method="bareiss")))
    return dets


def contract_sfraction(coeffs: list[int]) -> list[RecurrenceCoeffs]:
    """
    Even contraction of an S-fraction into J-fraction coefficients:
    b_0 = alpha_1, b_n = alpha_{2n} + alpha_{2n+1}, c_n = alpha_{2n-1} alpha_{2n}.
    """
    if not coeffs:
        raise ParameterError("need at least one S-fraction coefficient")
    alpha = [0] + list(coeffs)  # 1-based
    out = [RecurrenceCoeffs(n=0, b=alpha[1], c=0)]
    n = 1
    while 2 * n + 1 < len(alpha):
        out.append(RecurrenceCoeffs(
            n=n,
            b=alpha[2 * n] + alpha[2 * n + 1],
            c=alpha[2 * n - 1] * alpha[2 * n],
        ))
        n += 1
    return out


def check_jfraction_consistency(spec: FamilySpec, n_max: int) -> list[str]:
    """Mismatches between the contracted S-fraction and the recurrence, empty if none."""
    check_index(n_max, "n_max")
    contracted = contract_sfraction(sfraction_coeffs(spec, 2 * n_max + 1))
    # odd families: the Stieltjes variable is -z
    sign = 1 if spec.is_even else -1
    mismatches = []
    for rc in contracted[: n_max + 1]:
        expected_b = initial_shift(spec) if rc.n == 0 else recurrence_coeffs(spec, rc.n).b
        if rc.b != sign * expected_b:
            mismatches.append(f"{spec.label} b_{rc.n}: fraction {rc.b}, recurrence {sign * expected_b}")
        if rc.n >= 1:
            expected_c = recurrence_coeffs(spec, rc.n).c
            if rc.c != expected_c:
                mismatches.append(f"{spec.label} c_{rc.n}: fraction {rc.c}, recurrence {expected_c}")
    return mismatches


def phi3_symmetry_numbers(count: int) -> list[Fraction]:
    """a_n / (6n 4^n) for the N=1 Q moments, n = 1 .. count."""
    _check_count(count)
    moments = moments_from_sfraction(FamilySpec(Family.ODD_Q, 1), count + 1)
    return [Fraction(moments.values[n], 6 * n * 4**n) for n in range(1, count + 1)]
