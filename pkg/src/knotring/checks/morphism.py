"""Well-definedness and multiplicativity of the inclusion Imm′ -> Imm."""

from typing import Callable, Optional

from .base import Check, CheckResult
from ..catalog import inclusion_morphism
from ..errors import KnotringError
from ..algebra import check_morphism_multiplicative


class MorphismCheck(Check):
  name = "morphism"

  def __init__(self, ui_callback: Optional[Callable[..., None]] = None):
    super().__init__(ui_callback)

  def run(self, n: int = 4, window: int = 20) -> CheckResult:
    try:
      f = inclusion_morphism(n)
    except KnotringError as e:
      return CheckResult(success=False, error=str(e))
    self._notify_ui("check_started", self.name)
    report = check_morphism_multiplicative(f, (-window, window))
    lines = [f"n={n} window=[{-window},{window}]", f"pairs checked: {report.checked}"]
    lines += [f"relation not preserved: {w}" for w in report.relation_witnesses]
    lines += [f"violation: {x} * {y}" for x, y in report.violations]
    error = None if report.success else f"{len(report.violations) + len(report.relation_witnesses)} problems"
    return CheckResult(success=report.success, data=report, error=error, lines=lines)
