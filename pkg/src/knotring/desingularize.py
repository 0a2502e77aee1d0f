"""Resolution of decorated long immersions into long knots.

Each decorated double point f(t1) = f(t2) is resolved by pushing one strand off in
the chosen normal direction v with a compactly supported bump of width ε and
height δ: σ(f)(t) = f(t) + Σ α_i(t).
"""

from typing import List, Tuple, Callable, Optional, Sequence
from dataclasses import field, dataclass

import numpy as np
from scipy.spatial import cKDTree

from .config import DEFAULT_TOL, DEFAULT_BUDGET, DEFAULT_SEP_MIN
from .curves import LongCurve, DecorationRecord, concat
from .errors import CurveError, DecorationError, NumericFailure, NoValidParametersError
from .singularities import DoublePointDatum, double_points, refine_double_point

DEFAULT_EPS = 0.05
DEFAULT_DELTA = 0.01
UNIT_TOL = 1e-9
NORMAL_TOL = 1e-8
MIN_BUMP_SAMPLES = 4


@dataclass(frozen=True, eq=False)
class Decoration:
  point: DoublePointDatum
  v: np.ndarray
  a: int = 1

  @property
  def center(self) -> float:
    """Parameter of the strand that gets pushed off."""
    return self.point.t1 if self.a == 1 else self.point.t2

  def flipped(self) -> "Decoration":
    """The other resolution of the same double point: -v on the other strand."""
    return Decoration(self.point, -self.v, 2 if self.a == 1 else 1)

  def record(self) -> DecorationRecord:
    return DecorationRecord(self.point.t1, self.point.t2, tuple(float(x) for x in self.v), self.a)


@dataclass(frozen=True, eq=False)
class DecoratedImmersion:
  curve: LongCurve
  decorations: Tuple[Decoration, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, "decorations", tuple(self.decorations))
    params = []
    for i, d in enumerate(self.decorations):
      if d.a not in (1, 2):
        raise DecorationError(f"decoration {i}: sign choice must be 1 or 2, got {d.a}")
      if not d.point.transversal or d.point.plane is None:
        raise DecorationError(f"decoration {i}: double point at t=({d.point.t1:.6g}, {d.point.t2:.6g}) is not transversal")
      v = np.asarray(d.v, dtype=float)
      if v.shape != (self.curve.ambient_dim,):
        raise DecorationError(f"decoration {i}: vector has dimension {v.shape}, expected {self.curve.ambient_dim}")
      if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise DecorationError(f"decoration {i}: vector is not a unit vector")
      if np.max(np.abs(d.point.plane @ v)) > NORMAL_TOL:
        raise DecorationError(f"decoration {i}: vector is not orthogonal to the double-point plane")
      params += [d.point.t1, d.point.t2]
    if len(set(params)) != len(params):
      raise DecorationError("decorations share a double-point parameter")

  @property
  def k(self) -> int:
    return len(self.decorations)

  def records(self) -> List[DecorationRecord]:
    return [d.record() for d in self.decorations]


def decorate(curve: LongCurve, records: Sequence[DecorationRecord], tol: float = DEFAULT_TOL) -> DecoratedImmersion:
  """Attach decorations read from a curve file, re-deriving each double point's plane."""
  decorations = []
  for i, r in enumerate(records):
    point = refine_double_point(curve, r.t1, r.t2, tol)
    if point is None:
      raise DecorationError(f"decoration {i}: no double point near t=({r.t1:.6g}, {r.t2:.6g})")
    decorations.append(Decoration(point, np.asarray(r.v, dtype=float), r.a))
  return DecoratedImmersion(curve, tuple(decorations))


def bump(t: np.ndarray, center: float, eps: float) -> np.ndarray:
  """exp(1 - 1/(1 - u²)) for |u| < 1 with u = (t - center)/eps, exactly 0 elsewhere; peak 1 at the center."""
  u = (np.asarray(t, dtype=float) - center) / eps
  out = np.zeros_like(u)
  inside = np.abs(u) < 1.0
  out[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
  return out


def _check_windows(d: DecoratedImmersion, eps: float) -> None:
  params = [p for dec in d.decorations for p in dec.point.parameters]
  for i, dec in enumerate(d.decorations):
    c = dec.center
    if 1.0 - abs(c) < eps:
      raise DecorationError(f"decoration {i}: bump window [{c - eps:.6g}, {c + eps:.6g}] leaves (-1, 1)")
    for p in params:
      if p != c and abs(p - c) < eps:
        raise DecorationError(f"decoration {i}: bump window overlaps double-point parameter {p:.6g}")


def resolve(d: DecoratedImmersion, eps: float, delta: float) -> LongCurve:
  """σ(f)(t) = f(t) + Σ (-1)^{a_i} δ bump_i(t) v_i, sampled on the curve's grid."""
  if d.k == 0:
    return d.curve
  if eps <= 0 or delta <= 0:
    raise DecorationError(f"eps and delta must be positive, got {eps}, {delta}")
  _check_windows(d, eps)
  t = d.curve.t
  points = np.array(d.curve.points)
  for dec in d.decorations:
    sign = -1.0 if dec.a == 1 else 1.0
    points += sign * delta * np.outer(bump(t, dec.center, eps), dec.v)
  out = d.curve.with_points(points)
  out.validate()
  return out


@dataclass
class ResolveResult:
  curve: LongCurve
  eps: float
  delta: float
  attempts: int = 0
  diagnostics: List[str] = field(default_factory=list)


class Resolver:
  """Searches (ε, δ) for which the resolution of a decorated immersion is embedded."""

  def __init__(
    self,
    tol: float = DEFAULT_TOL,
    sep_min: int = DEFAULT_SEP_MIN,
    budget: int = DEFAULT_BUDGET,
    ui_callback: Optional[Callable[..., None]] = None,
  ):
    self.tol = tol
    self.sep_min = sep_min
    self.budget = budget
    self.ui_callback = ui_callback

  def _notify_ui(self, event: str, *args) -> None:
    if self.ui_callback:
      self.ui_callback(event, *args)

  def initial_parameters(self, d: DecoratedImmersion) -> Tuple[float, float]:
    """ε at half the smallest gap between decoration parameters, δ at a tenth of the strand clearance."""
    if d.k == 0:
      return DEFAULT_EPS, DEFAULT_DELTA
    params = sorted(p for dec in d.decorations for p in dec.point.parameters)
    eps = 0.5 * float(np.min(np.diff(params))) if len(params) > 1 else 1.0
    for dec in d.decorations:
      eps = min(eps, 1.0 - abs(dec.center))
    return eps, 0.1 * self.clearance(d, eps)

  def clearance(self, d: DecoratedImmersion, eps: float) -> float:
    """Smallest distance from a double point to the parts of the curve away from its two strands."""
    curve = d.curve
    best = 1.0
    for dec in d.decorations:
      far = np.ones(curve.samples, dtype=bool)
      for p in dec.point.parameters:
        far &= np.abs(curve.t - p) > eps
      if not np.any(far):
        continue
      dist, _ = cKDTree(curve.points[far]).query(dec.point.point)
      if dist > 0:
        best = min(best, float(dist))
    return best

  def is_embedded(self, curve: LongCurve) -> bool:
    return not double_points(curve, self.tol, self.sep_min)

  def auto_parameters(self, d: DecoratedImmersion) -> ResolveResult:
    """Halve (ε, δ) from the initial guess until the resolution is embedded."""
    eps, delta = self.initial_parameters(d)
    if d.k == 0:
      return ResolveResult(d.curve, eps, delta)
    h = float(d.curve.t[1] - d.curve.t[0])
    diagnostics = []
    for attempt in range(1, self.budget + 1):
      self._notify_ui("eps_delta_attempt", attempt, eps, delta)
      if eps < MIN_BUMP_SAMPLES * h:
        diagnostics.append(f"attempt {attempt}: eps={eps:.3e} is below the sampling resolution")
        break
      try:
        curve = resolve(d, eps, delta)
        remaining = double_points(curve, self.tol, self.sep_min)
      except (CurveError, NumericFailure) as e:
        diagnostics.append(f"attempt {attempt}: eps={eps:.3e} delta={delta:.3e}: {e}")
      else:
        if not remaining:
          self._notify_ui("eps_delta_found", attempt, eps, delta)
          return ResolveResult(curve, eps, delta, attempt, diagnostics)
        diagnostics.append(f"attempt {attempt}: eps={eps:.3e} delta={delta:.3e}: {len(remaining)} double points remain")
      eps, delta = eps / 2.0, delta / 2.0
    raise NoValidParametersError("no valid parameters found", diagnostics)


def auto_parameters(d: DecoratedImmersion, **kwargs) -> Tuple[float, float]:
  result = Resolver(**kwargs).auto_parameters(d)
  return result.eps, result.delta


def concat_decorated(d1: DecoratedImmersion, d2: DecoratedImmersion, tol: float = DEFAULT_TOL) -> DecoratedImmersion:
  """Little-intervals product of decorated immersions; decorations follow their strands."""
  curve = concat(d1.curve, d2.curve)
  decorations = []
  for shift, source in ((-1.0, d1), (1.0, d2)):
    for dec in source.decorations:
      t1, t2 = (dec.point.t1 + shift) / 2.0, (dec.point.t2 + shift) / 2.0
      point = refine_double_point(curve, t1, t2, tol)
      if point is None:
        raise DecorationError(f"double point at t=({t1:.6g}, {t2:.6g}) lost in the product")
      decorations.append(Decoration(point, dec.v, dec.a))
  return DecoratedImmersion(curve, tuple(decorations))
