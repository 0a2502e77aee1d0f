"""Planar diagrams of long knots: Gauss codes and trefoil recognition."""

from typing import List, Sequence
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, DEFAULT_SEP_MIN
from .curves import LongCurve
from .errors import CurveError
from .singularities import double_points


@dataclass(frozen=True)
class GaussSymbol:
  """One passage through a crossing: its label, over or under, and the crossing sign."""

  label: int
  over: bool
  sign: int

  def __str__(self) -> str:
    return f"{'O' if self.over else 'U'}{self.label}{'+' if self.sign > 0 else '-'}"


def format_gauss_code(code: Sequence[GaussSymbol]) -> str:
  return " ".join(str(s) for s in code)


def gauss_code(curve: LongCurve, tol: float = DEFAULT_TOL, sep_min: int = DEFAULT_SEP_MIN) -> List[GaussSymbol]:
  """Gauss code of the projection to the (x₁, x₂)-plane, height read from x₃."""
  if curve.ambient_dim < 3:
    raise CurveError("a knot diagram needs ambient dimension at least 3")
  shadow = LongCurve(curve.t, curve.points[:, :2])
  passages = []
  for i, dp in enumerate(double_points(shadow, tol, sep_min)):
    if not dp.transversal:
      raise CurveError(f"projection has a tangential crossing at t=({dp.t1:.6g}, {dp.t2:.6g})")
    z1, z2 = float(curve(dp.t1)[2]), float(curve(dp.t2)[2])
    if abs(z1 - z2) < tol:
      raise CurveError(f"strands meet in space at t=({dp.t1:.6g}, {dp.t2:.6g})")
    over_t, under_t = (dp.t1, dp.t2) if z1 > z2 else (dp.t2, dp.t1)
    d_over, d_under = shadow.derivative(over_t), shadow.derivative(under_t)
    sign = 1 if d_over[0] * d_under[1] - d_over[1] * d_under[0] > 0 else -1
    passages.append((over_t, i, True, sign))
    passages.append((under_t, i, False, sign))
  passages.sort()
  labels = {}
  code = []
  for _, crossing, over, sign in passages:
    labels.setdefault(crossing, len(labels) + 1)
    code.append(GaussSymbol(labels[crossing], over, sign))
  return code


def _relabel(code: Sequence[GaussSymbol]) -> List[int]:
  labels = {}
  return [labels.setdefault(s.label, len(labels) + 1) for s in code]


def is_trefoil(code: Sequence[GaussSymbol]) -> bool:
  """Alternating three-crossing code 1 2 3 1 2 3 with equal signs, up to rotation and mirror."""
  if len(code) != 6:
    return False
  if len({s.sign for s in code}) != 1:
    return False
  for shift in range(6):
    rotated = list(code[shift:]) + list(code[:shift])
    if _relabel(rotated) != [1, 2, 3, 1, 2, 3]:
      continue
    if all(rotated[i].over != rotated[i + 1].over for i in range(5)):
      return True
  return False


def crossing_number(code: Sequence[GaussSymbol]) -> int:
  return len({s.label for s in code})


def writhe(code: Sequence[GaussSymbol]) -> int:
  return int(np.sum([s.sign for s in code if s.over]))
