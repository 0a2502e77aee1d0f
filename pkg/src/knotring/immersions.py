"""Explicit long immersions: a planar figure-eight and the two-double-point trefoil family.

The trefoil family starts from the polynomial trefoil shadow x = t³ - 3t,
y = t⁴ - 4t², which crosses itself three times. One crossing is lifted out of the
plane; the other two stay double points whose parameters interleave
t₁ < t₂ < t₃ < t₄ with γ(t₁) = γ(t₃) and γ(t₂) = γ(t₄). Resolving them with the
standard decoration gives an alternating three-crossing diagram, a trefoil.
"""

from math import sqrt
from typing import List, Tuple, Callable, Optional
from dataclasses import field, dataclass

import numpy as np

from .curves import LongCurve, axis
from .errors import CurveError, NoValidParametersError
from .config import DEFAULT_MARGIN, DEFAULT_SAMPLES
from .desingularize import Resolver, Decoration, ResolveResult, DecoratedImmersion, concat_decorated
from .singularities import DoublePointDatum, double_points, normal_fiber_vector

# Trefoil shadow: polynomial parameter t = SHADOW_SPAN * tau / SHADOW_END.
SHADOW_SPAN = 2.2
SHADOW_END = 0.9
SHADOW_SCALE = 1.0 / 16.0
LIFT_HEIGHT = 0.02
LIFT_WIDTH = 0.035


def figure_eight(n: int = 3, samples: int = DEFAULT_SAMPLES, margin: float = DEFAULT_MARGIN) -> LongCurve:
  """Planar long immersion with a single transverse double point at t = ±sqrt(1 - 3^{-1/4})."""
  if n < 2:
    raise CurveError(f"ambient dimension must be at least 2, got {n}")

  def f(t: np.ndarray) -> np.ndarray:
    b = np.where(np.abs(t) < 1.0, (1.0 - t**2) ** 4, 0.0)
    out = np.zeros((len(t), n))
    out[:, 0] = t * (1.0 - 3.0 * b)
    out[:, 1] = 0.5 * b
    return out

  return LongCurve.from_function(f, n, samples, margin)


def figure_eight_parameter() -> float:
  return sqrt(1.0 - 3.0 ** (-0.25))


def _smooth_step(x: np.ndarray) -> np.ndarray:
  """C∞ step from 0 (x <= 0) to 1 (x >= 1)."""
  x = np.clip(x, 0.0, 1.0)
  g0 = np.where(x > 0, np.exp(-1.0 / np.maximum(x, 1e-300)), 0.0)
  g1 = np.where(x < 1, np.exp(-1.0 / np.maximum(1.0 - x, 1e-300)), 0.0)
  return g0 / (g0 + g1)


def _shadow(tau: np.ndarray) -> np.ndarray:
  t = SHADOW_SPAN * tau / SHADOW_END
  return SHADOW_SCALE * np.column_stack([t**3 - 3.0 * t, t**4 - 4.0 * t**2])


def shadow_crossings() -> List[Tuple[float, float]]:
  """Parameter pairs of the three crossings of the shadow, in curve time."""
  to_tau = SHADOW_END / SHADOW_SPAN
  r3, big, small = sqrt(3.0), (sqrt(6.0) + sqrt(2.0)) / 2.0, (sqrt(6.0) - sqrt(2.0)) / 2.0
  return [
    (-big * to_tau, small * to_tau),
    (-r3 * to_tau, r3 * to_tau),
    (-small * to_tau, big * to_tau),
  ]


def budney_base_immersion(n: int = 3, samples: int = DEFAULT_SAMPLES, margin: float = DEFAULT_MARGIN) -> LongCurve:
  """Long immersion in ℝⁿ (n >= 3) with exactly two interleaved transverse double points."""
  if n < 3:
    raise CurveError(f"the trefoil family needs n >= 3, got {n}")
  lifted = shadow_crossings()[2][1]

  def f(tau: np.ndarray) -> np.ndarray:
    w = _smooth_step((np.abs(tau) - SHADOW_END) / (1.0 - SHADOW_END))[:, None]
    plane = (1.0 - w) * _shadow(tau) + w * axis(tau, 2)
    u = (tau - lifted) / LIFT_WIDTH
    inside = np.abs(u) < 1.0
    z = np.zeros_like(tau)
    z[inside] = LIFT_HEIGHT * np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
    out = np.zeros((len(tau), n))
    out[:, :2] = plane
    out[:, 2] = z
    return out

  return LongCurve.from_function(f, n, samples, margin)


def standard_vectors(n: int) -> Tuple[np.ndarray, np.ndarray]:
  """v₁ = e₃ at the first double point, v₂ = -e₃ at the second: the trefoil resolution."""
  e3 = np.eye(n)[2]
  return e3, -e3


def budney_decorated(
  v1: np.ndarray,
  v2: np.ndarray,
  base: Optional[LongCurve] = None,
  points: Optional[List[DoublePointDatum]] = None,
  **kwargs,
) -> DecoratedImmersion:
  """Decorate the base immersion, projecting v1, v2 onto the normal fibres of the double points.

  Pass the double points of `base` when decorating it repeatedly.
  """
  base = base if base is not None else budney_base_immersion(len(v1), **kwargs)
  points = points if points is not None else double_points(base)
  if len(points) != 2:
    raise CurveError(f"base immersion should have 2 double points, found {len(points)}")
  decorations = tuple(
    Decoration(dp, normal_fiber_vector(dp.plane, np.asarray(v, dtype=float)), 1) for dp, v in zip(points, (v1, v2))
  )
  return DecoratedImmersion(base, decorations)


def budney_family(
  v1: np.ndarray,
  v2: np.ndarray,
  resolver: Optional[Resolver] = None,
  base: Optional[LongCurve] = None,
  points: Optional[List[DoublePointDatum]] = None,
) -> ResolveResult:
  """des(v1, v2): the resolved long knot for one point of S^{n-3} × S^{n-3}."""
  resolver = resolver or Resolver()
  return resolver.auto_parameters(budney_decorated(v1, v2, base, points))


def fiber_samples(n: int, count: int) -> np.ndarray:
  """Deterministic unit vectors spread over the normal sphere span(e₃, …, eₙ)."""
  m = n - 2
  if m == 1:
    coords = np.array([[1.0 if i % 2 == 0 else -1.0] for i in range(count)])
  elif m == 2:
    angles = 2.0 * np.pi * np.arange(count) / count
    coords = np.column_stack([np.cos(angles), np.sin(angles)])
  elif m == 3:
    # Fibonacci lattice
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    phi = np.pi * (1.0 + sqrt(5.0)) * k
    r = np.sqrt(1.0 - z**2)
    coords = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
  else:
    coords = np.random.default_rng(0).normal(size=(count, m))
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)
  out = np.zeros((count, n))
  out[:, 2:] = coords
  return out


@dataclass
class SweepReport:
  n: int
  grid_size: int
  embedded: int = 0
  total: int = 0
  failures: List[str] = field(default_factory=list)

  @property
  def success(self) -> bool:
    return self.embedded == self.total

  def to_text(self) -> str:
    lines = [f"n={self.n} grid={self.grid_size}", f"{self.embedded}/{self.total} embedded"]
    lines += self.failures
    return "".join(line + "\n" for line in lines)


def budney_sweep(n: int, grid_size: int, resolver: Optional[Resolver] = None, ui_callback: Optional[Callable[..., None]] = None) -> SweepReport:
  """Resolve the family on a grid_size × grid_size grid of S^{n-3} × S^{n-3}."""
  resolver = resolver or Resolver()
  base = budney_base_immersion(n)
  points = double_points(base, resolver.tol, resolver.sep_min)
  samples = fiber_samples(n, grid_size)
  report = SweepReport(n, grid_size)
  for i, v1 in enumerate(samples):
    for j, v2 in enumerate(samples):
      report.total += 1
      try:
        budney_family(v1, v2, resolver, base, points)
        report.embedded += 1
      except NoValidParametersError as e:
        report.failures.append(f"({i},{j}): {e}")
      if ui_callback:
        ui_callback("sweep_progress", report.total, grid_size * grid_size)
  return report


def figure_eight_decorated(n: int = 3, a: int = 1, samples: int = DEFAULT_SAMPLES) -> DecoratedImmersion:
  """The figure-eight with its double point decorated by e₃."""
  curve = figure_eight(n, samples)
  points = double_points(curve)
  if len(points) != 1:
    raise CurveError(f"figure-eight should have 1 double point, found {len(points)}")
  v = normal_fiber_vector(points[0].plane, np.eye(n)[2])
  return DecoratedImmersion(curve, (Decoration(points[0], v, a),))


def figure_eight_chain(k: int, n: int = 3, samples: int = DEFAULT_SAMPLES) -> DecoratedImmersion:
  """k decorated figure-eights multiplied left to right; k = 0 is the trivial long knot."""
  if k < 0:
    raise CurveError(f"k must be non-negative, got {k}")
  if k == 0:
    return DecoratedImmersion(LongCurve.trivial(n, samples))
  chain = figure_eight_decorated(n, samples=samples)
  for _ in range(k - 1):
    chain = concat_decorated(chain, figure_eight_decorated(n, samples=samples))
  return chain
