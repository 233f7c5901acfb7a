"""Evaluation settings and tagged results shared by the special functions."""
from dataclasses import dataclass
from enum import Enum

from src.config import Settings, get_settings
from src.errors import ParameterError


class MethodTag(str, Enum):
    SERIES = "Series"
    KUMMER_TRANSFORMED = "KummerTransformedSeries"
    INTEGRAL_REP = "IntegralRep"
    DECOMPOSITION = "Decomposition"


@dataclass(frozen=True)
class EvalConfig:
    target_rel_tol: float = 1e-12
    max_series_terms: int = 500
    quad_abs_tol: float = 1e-12
    # 1F1 switches to e^x 1F1(b-a, b; -x) below this argument
    kummer_threshold: float = -30.0
    # U sums its two 1F1 branches up to this argument, integral beyond
    tricomi_series_max: float = 6.0

    def __post_init__(self):
        if not self.target_rel_tol > 0 or not self.quad_abs_tol > 0:
            raise ParameterError("tolerances must be positive")
        if self.max_series_terms < 1:
            raise ParameterError("max_series_terms must be >= 1")
        if self.tricomi_series_max <= 0:
            raise ParameterError("tricomi_series_max must be positive")

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> "EvalConfig":
        settings = settings or get_settings()
        return cls(
            max_series_terms=int(settings.numerics.get("max_series_terms", 500)),
            kummer_threshold=settings.numerics.get("kummer_threshold", -30.0),
            tricomi_series_max=settings.numerics.get("tricomi_series_max", 6.0),
        )


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class SpecialValue:
    value: float
    est_abs_error: float
    method_tag: MethodTag

    def __post_init__(self):
        if not self.est_abs_error >= 0:
            raise ParameterError(f"error estimate must be non-negative, got {self.est_abs_error}")

    def __float__(self) -> float:
        return float(self.value)
