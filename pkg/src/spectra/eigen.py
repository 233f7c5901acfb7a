"""
Exact Spectra
=============

    -y'' + x^{2N+2} y = E x^N y,    y -> 0 as x -> +-inf

CONCEPT: Two kinds of spectrum
------------------------------
Even N: x^N >= 0, the potential is symmetric and the eigenfunctions alternate
in parity. With n = 2m (even parity) or n = 2m + 1 (odd parity)

    E = 2m(N+2) + N + 1     or     E = 2m(N+2) + N + 3.

Odd N: x^N changes sign, so the spectrum runs in both directions. Every
integer n (negative ones included) gives

    E_n = (2n + 1)(N + 2),   and E_{-n-1} = -E_n.

N = -1 belongs to the odd case.
"""
from dataclasses import dataclass
from enum import Enum

from src.errors import ParameterError


class Branch(str, Enum):
    EVEN_PARITY = "EvenParity"
    ODD_PARITY = "OddParity"
    ODD_N = "OddN"


def check_order(N: int) -> None:
    if not isinstance(N, int) or isinstance(N, bool):
        raise ParameterError(f"N must be an integer, got {N!r}")
    if N < -1:
        raise ParameterError(f"N must be >= -1, got {N}")


def eigenvalue(N: int, n: int) -> int:
    check_order(N)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParameterError(f"n must be an integer, got {n!r}")
    if N % 2 != 0:
        return (2 * n + 1) * (N + 2)
    if n < 0:
        raise ParameterError(f"even N needs n >= 0, got n = {n}")
    m, parity = divmod(n, 2)
    return 2 * m * (N + 2) + N + 1 + 2 * parity


@dataclass(frozen=True)
class EigenSpec:
    N: int
    n: int
    E: int
    branch: Branch

    def __post_init__(self):
        expected = eigenvalue(self.N, self.n)
        if self.E != expected:
            raise ParameterError(f"E = {self.E} is not the eigenvalue {expected} of (N={self.N}, n={self.n})")
        if self.branch != _branch(self.N, self.n):
            raise ParameterError(f"branch {self.branch.value} does not match (N={self.N}, n={self.n})")

    @classmethod
    def of(cls, N: int, n: int) -> "EigenSpec":
        return cls(N, n, eigenvalue(N, n), _branch(N, n))

    @property
    def odd_N(self) -> bool:
        return self.branch == Branch.ODD_N

    @property
    def m(self) -> int:
        """Index of the polynomial inside the eigenfunction."""
        if self.odd_N:
            return self.n if self.n >= 0 else -self.n - 1
        return self.n // 2

    def reflected(self) -> "EigenSpec":
        """Odd N: the partner -n-1 with E -> -E."""
        if not self.odd_N:
            raise ParameterError("reflection pairs only exist for odd N")
        return EigenSpec.of(self.N, -self.n - 1)


def _branch(N: int, n: int) -> Branch:
    if N % 2 != 0:
        return Branch.ODD_N
    return Branch.EVEN_PARITY if n % 2 == 0 else Branch.ODD_PARITY


def eigenvalues(N: int, n_lo: int, n_hi: int) -> list[EigenSpec]:
    """All eigenvalues with n_lo <= n <= n_hi, sorted by n. An empty range gives []."""
    check_order(N)
    if N % 2 == 0 and n_lo < 0:
        raise ParameterError(f"even N needs n_lo >= 0, got {n_lo}")
    return [EigenSpec.of(N, n) for n in range(n_lo, n_hi + 1)]
