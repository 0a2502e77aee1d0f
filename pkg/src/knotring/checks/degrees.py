"""Degree laws: product shift, regrading, compatibility and associativity."""

import itertools
from typing import List, Callable, Optional

from .base import Check, CheckResult
from ..degrees import (
  ShiftSign,
  Convention,
  SingularClass,
  regrade,
  gysin_shift,
  product_degree,
  singular_product,
  desingularization_shift,
  check_associativity_degrees,
  check_compatibility_degrees,
)

DEGREE_RANGE = range(-6, 7)
K_RANGE = range(0, 4)


class DegreeCheck(Check):
  name = "degrees"

  def __init__(self, ui_callback: Optional[Callable[..., None]] = None):
    super().__init__(ui_callback)

  def run(self, n: int = 3, sign: ShiftSign = ShiftSign.PLUS) -> CheckResult:
    failures: List[str] = []
    for k, l in itertools.product(K_RANGE, K_RANGE):
      for x, y in itertools.product(DEGREE_RANGE, DEGREE_RANGE):
        if not check_compatibility_degrees(k, l, x, y, n, sign):
          failures.append(f"compatibility k={k} l={l} degrees=({x},{y})")
    for x, y, z in itertools.product(DEGREE_RANGE, repeat=3):
      if not check_associativity_degrees(x, y, z, n):
        failures.append(f"associativity degrees=({x},{y},{z})")
      a, b, c = SingularClass(1, x), SingularClass(2, y), SingularClass(0, z)
      if singular_product(singular_product(a, b, n), c, n) != singular_product(a, singular_product(b, c, n), n):
        failures.append(f"k-graded associativity degrees=({x},{y},{z})")
    for x, y in itertools.product(DEGREE_RANGE, DEGREE_RANGE):
      raw = product_degree(x, y, n, Convention.RAW)
      if regrade(raw, n) != product_degree(regrade(x, n), regrade(y, n), n, Convention.REGRADED):
        failures.append(f"regrading degrees=({x},{y})")
    for k in K_RANGE:
      if desingularization_shift(k, n, sign) != (gysin_shift(k, n) if sign == ShiftSign.PLUS else -gysin_shift(k, n)):
        failures.append(f"desingularization shift k={k}")

    lines = [f"n={n} sign={sign.value}", f"product shift: {-(2 * n - 1):+d}"]
    lines += [f"gysin shift k={k}: {gysin_shift(k, n):+d}" for k in K_RANGE]
    lines += failures
    return CheckResult(success=not failures, data=failures, error=f"{len(failures)} failures" if failures else None, lines=lines)
