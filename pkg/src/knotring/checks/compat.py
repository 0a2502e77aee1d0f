"""Resolution commutes with the little-intervals product."""

from typing import Callable, Optional

from .base import Check, CheckResult
from ..curves import concat
from ..errors import KnotringError
from ..immersions import figure_eight_chain
from ..desingularize import Resolver, resolve, concat_decorated

COMPAT_TOL = 1e-6


class CompatibilityCheck(Check):
  """resolve(d1 · d2) against resolve(d1) · resolve(d2) for chains of k and l figure-eights."""

  name = "compat"

  def __init__(self, resolver: Optional[Resolver] = None, ui_callback: Optional[Callable[..., None]] = None):
    super().__init__(ui_callback)
    self.resolver = resolver or Resolver(ui_callback=ui_callback)

  def run(self, n: int = 5, k: int = 1, l: int = 1) -> CheckResult:
    try:
      self._notify_ui("check_started", self.name)
      d1, d2 = figure_eight_chain(k, n), figure_eight_chain(l, n)
      product = concat_decorated(d1, d2, self.resolver.tol)
      left = self.resolver.auto_parameters(product)
      # The squeeze halves time and space, so each factor sees twice the parameters.
      right = concat(resolve(d1, 2.0 * left.eps, 2.0 * left.delta), resolve(d2, 2.0 * left.eps, 2.0 * left.delta))
      distance = left.curve.sup_distance(right)
      right_embedded = self.resolver.is_embedded(right)
    except KnotringError as e:
      return CheckResult(success=False, error=str(e), lines=[f"n={n} k={k} l={l}"])

    lines = [
      f"n={n} k={k} l={l}",
      f"eps: {left.eps:.16e}",
      f"delta: {left.delta:.16e}",
      f"sup distance: {distance:.3e}",
      f"embedded: {'yes' if right_embedded else 'no'}",
    ]
    success = distance < COMPAT_TOL and right_embedded
    error = None
    if not right_embedded:
      error = "product of resolutions is not embedded"
    elif distance >= COMPAT_TOL:
      error = f"resolutions differ by {distance:.3e}"
    return CheckResult(success=success, data=distance, error=error, lines=lines)
