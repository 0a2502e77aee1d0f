"""Base classes for property checks."""

from abc import ABC
from typing import Any, List, Callable, Optional
from dataclasses import field, dataclass


@dataclass
class CheckResult:
  """Result from a check run; lines is the canonical report."""

  success: bool
  data: Any = None
  error: Optional[str] = None
  lines: List[str] = field(default_factory=list)

  def to_text(self) -> str:
    body = list(self.lines)
    body.append("pass" if self.success else f"fail{': ' + self.error if self.error else ''}")
    return "".join(line + "\n" for line in body)


class Check(ABC):
  """Base class for all checks."""

  name = "check"

  def __init__(self, ui_callback: Optional[Callable[..., None]] = None):
    self.ui_callback = ui_callback

  def run(self, *args: Any, **kwargs: Any) -> CheckResult:
    """Run the check with given parameters."""
    raise NotImplementedError("Subclasses must implement run()")

  def _notify_ui(self, event: str, *args, **kwargs) -> None:
    """Notify the UI of an event."""
    if self.ui_callback:
      self.ui_callback(event, *args, **kwargs)
