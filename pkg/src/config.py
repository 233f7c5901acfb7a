# src/config.py
"""
Runtime Configuration
=====================

CONCEPT: Tolerances are versioned inputs
-----------------------------------------
Every verification verdict depends on a tolerance. Those numbers live in
config/tolerances.yaml, next to a `version` field, so a report can always say
which tolerance set produced it.

The environment can adjust things without touching the file:
    SPECPOLY_CONFIG     → alternate YAML path
    SPECPOLY_TOL_SCALE  → multiplies every floating tolerance (exact ones stay 0)
    SPECPOLY_LOG_LEVEL  → log level the CLI installs
"""
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import yaml
from dotenv import load_dotenv

from src.errors import ParameterError

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "tolerances.yaml"


@dataclass(frozen=True)
class Settings:
    version: str
    schema_version: int
    tol_scale: float
    tolerances: dict[str, float] = field(default_factory=dict)
    numerics: dict[str, float] = field(default_factory=dict)
    log_level: str = "WARNING"

    def tolerance(self, kind: str) -> float:
        if kind not in self.tolerances:
            raise ParameterError(f"unknown tolerance kind '{kind}'")
        base = self.tolerances[kind]
        return 0.0 if base == 0 else base * self.tol_scale

    def numeric(self, key: str) -> float:
        if key not in self.numerics:
            raise ParameterError(f"unknown numeric setting '{key}'")
        return self.numerics[key]


def _read_scale() -> float:
    raw = os.getenv("SPECPOLY_TOL_SCALE", "1")
    try:
        scale = float(raw)
    except ValueError:
        raise ParameterError(f"SPECPOLY_TOL_SCALE must be a number, got '{raw}'")
    if not scale > 0:
        raise ParameterError(f"SPECPOLY_TOL_SCALE must be positive, got {scale}")
    return scale


def load_settings(path: str | Path | None = None) -> Settings:
    """Read the tolerance YAML and fold in environment overrides."""
    if path is None:
        path = os.getenv("SPECPOLY_CONFIG") or DEFAULT_CONFIG_PATH
    path = Path(path)
    if not path.exists():
        raise ParameterError(f"config file not found: {path}")

    with open(path, "r") as f:
        data = yaml.safe_load(f) or {}

    for key in ("version", "schema_version", "tolerances"):
        if key not in data:
            raise ParameterError(f"{path} is missing '{key}'")

    tolerances = {k: float(v) for k, v in data["tolerances"].items()}
    if any(v < 0 for v in tolerances.values()):
        raise ParameterError(f"{path}: tolerances must be non-negative")

    settings = Settings(
        version=str(data["version"]),
        schema_version=int(data["schema_version"]),
        tol_scale=_read_scale(),
        tolerances=tolerances,
        numerics={k: float(v) for k, v in (data.get("numerics") or {}).items()},
        log_level=os.getenv("SPECPOLY_LOG_LEVEL", "WARNING").upper(),
    )
    logger.info(
        "[Config] tolerances %s from %s (scale %g)",
        settings.version, path, settings.tol_scale,
    )
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
