"""Shared configuration constants and the optional knotring.toml settings file."""

from typing import Any, Dict, Optional
from pathlib import Path

import tomli
import tomli_w
from pydantic import Field, BaseModel

CONFIG_FILE_NAME = "knotring.toml"

# Curve numerics
DEFAULT_SAMPLES = 2048
DEFAULT_MARGIN = 0.25
DEFAULT_TOL = 1e-8
DEFAULT_SEP_MIN = 4
DEFAULT_BUDGET = 40

# Ring arithmetic
DEFAULT_MAX_EXPONENT = 4096
CATALOG_N_RANGE = (3, 12)

# Spectral window: p in [-(P_FACTOR * n), 0], q in [0, Q_FACTOR * n]
WINDOW_P_FACTOR = 3
WINDOW_Q_FACTOR = 4

FLOAT_FORMAT = ".16e"


class CurveSettings(BaseModel):
  """Tolerances and sizes for the curve model."""

  samples: int = Field(default=DEFAULT_SAMPLES, ge=16)
  margin: float = Field(default=DEFAULT_MARGIN, gt=0.0)
  tol: float = Field(default=DEFAULT_TOL, gt=0.0)
  sep_min: int = Field(default=DEFAULT_SEP_MIN, ge=1)
  budget: int = Field(default=DEFAULT_BUDGET, ge=1)


class RingSettings(BaseModel):
  """Guards for exact ring arithmetic."""

  max_exponent: int = Field(default=DEFAULT_MAX_EXPONENT, ge=1)


class Settings(BaseModel):
  curves: CurveSettings = CurveSettings()
  rings: RingSettings = RingSettings()


def load_config(path: Optional[str] = None, project_root: str = ".") -> Settings:
  """Load settings from a TOML file; knotring.toml in project_root is used when no path is given."""
  config_path = Path(path) if path else Path(project_root) / CONFIG_FILE_NAME
  if not config_path.exists():
    if path:
      raise FileNotFoundError(f"Config file not found: {config_path}")
    return Settings()
  with open(config_path, "rb") as f:
    data: Dict[str, Any] = tomli.load(f)
  return Settings.model_validate(data)


def save_config(settings: Settings, path: str) -> None:
  """Write settings to a TOML file."""
  with open(path, "wb") as f:
    tomli_w.dump(settings.model_dump(), f)
