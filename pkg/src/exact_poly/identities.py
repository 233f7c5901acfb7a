"""
Exact differential identities of the polynomial families.

Each check builds the left-hand side minus the right-hand side as an
ExactPoly. A correct implementation returns the zero polynomial; anything
else is a defect and `first_nonzero()` names the offending term.

With A = 2(N+2):

  even  (second order)   A z f'' + (c - z) f' + n f = 0
                         c = 2N+2 for p, 2N+6 for q
  even  (relation)       A z f_n' + f_{n+1} + (A(n+1) -+ 2 - z) f_n = 0
                         -2 for p, +2 for q
  odd   (second order)   2A z P'' + 4(N+3) P' + 2z Q' + Q = (2n+1) P
                         2A z Q'' + 4(N+1) Q' + 2z P' + P = (2n+1) Q
  odd   (relation)       2A z P_n' = 2P_{n+1} - z Q_n - (2A(n+1) + 2 + z) P_n
                         2A z Q_n' = 2Q_{n+1} - z P_n - (2A(n+1) - 2 + z) Q_n
"""
from src.exact_poly.families import Family, FamilySpec, check_index, polynomial
from src.exact_poly.poly import ExactPoly


def check_ode_identity(spec: FamilySpec, n: int) -> ExactPoly:
    check_index(n)
    z = ExactPoly.z()
    A = spec.alpha
    N = spec.N
    f = polynomial(spec, n)
    d1 = f.derivative()
    d2 = d1.derivative()

    if spec.is_even:
        c = 2 * N + 2 if spec.family is Family.EVEN_P else 2 * N + 6
        return (z * d2) * A + (c - z) * d1 + f * n

    # the odd equations couple each family to its partner
    g = polynomial(spec.partner(), n)
    first_order = 4 * (N + 3) if spec.family is Family.ODD_P else 4 * (N + 1)
    return (z * d2) * (2 * A) + d1 * first_order + (z * g.derivative()) * 2 + g - f * (2 * n + 1)


def check_diff_relation(spec: FamilySpec, n: int) -> ExactPoly:
    check_index(n)
    z = ExactPoly.z()
    A = spec.alpha
    f = polynomial(spec, n)
    f_next = polynomial(spec, n + 1)

    if spec.is_even:
        shift = -2 if spec.family is Family.EVEN_P else 2
        return (z * f.derivative()) * A + f_next + (A * (n + 1) + shift - z) * f

    g = polynomial(spec.partner(), n)
    shift = 2 if spec.family is Family.ODD_P else -2
    rhs = f_next * 2 - z * g - (2 * A * (n + 1) + shift + z) * f
    return (z * f.derivative()) * (2 * A) - rhs
