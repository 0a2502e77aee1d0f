"""Property checks run by `knotring check`."""

from .base import Check, CheckResult
from .compat import CompatibilityCheck
from .degrees import DegreeCheck
from .morphism import MorphismCheck

__all__ = [
  "Check",
  "CheckResult",
  "CompatibilityCheck",
  "DegreeCheck",
  "MorphismCheck",
]
