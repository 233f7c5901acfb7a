"""
Dense integer polynomials in z.

Coefficients are Python ints stored lowest degree first, so
(84, -28, 1) is z^2 - 28z + 84. Trailing zeros are stripped on construction,
the zero polynomial has no coefficients and degree -1.
"""
from dataclasses import dataclass
from typing import Iterable, Union

Scalar = Union[int, float, complex]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ExactPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        for c in self.coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def of(cls, *coeffs: int) -> "ExactPoly":
        return cls(tuple(coeffs))

    @classmethod
    def z(cls) -> "ExactPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "ExactPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def first_nonzero(self) -> tuple[int, int] | None:
        """(power, coefficient) of the lowest nonzero term, None for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k, c
        return None

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: "ExactPoly | int") -> "ExactPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ExactPoly | int") -> "ExactPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: int) -> "ExactPoly":
        return _lift(other) - self

    def __mul__(self, other: "ExactPoly | int") -> "ExactPoly":
        if isinstance(other, int):
            return ExactPoly(tuple(other * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return ExactPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "ExactPoly":
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return ExactPoly((0,) * k + self.coeffs)

    def derivative(self) -> "ExactPoly":
        return ExactPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def substitute_monomial(self, scale: int, power: int) -> "ExactPoly":
        """p(scale * x^power) as a polynomial in x."""
        out = [0] * (power * max(self.degree, 0) + 1)
        for k, c in enumerate(self.coeffs):
            out[power * k] = c * scale**k
        return ExactPoly(tuple(out))

    def __call__(self, z: Scalar) -> Scalar:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    # --- formatting -------------------------------------------------------

    def to_strings(self) -> list[str]:
        """Decimal strings, lowest degree first."""
        return [str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "ExactPoly":
        return cls(tuple(int(s) for s in items))

    def pretty(self, var: str = "z") -> str:
        """Descending powers, e.g. z^2-28z+84."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __str__(self) -> str:
        return self.pretty()


def _lift(p: "ExactPoly | int") -> ExactPoly:
    if isinstance(p, ExactPoly):
        return p
    if isinstance(p, int) and not isinstance(p, bool):
        return ExactPoly((p,))
    raise TypeError(f"cannot combine ExactPoly with {type(p).__name__}")
