"""Long curves in ℝⁿ, closed curves on Sⁿ and the maps between them.

A long curve is stored as samples on a uniform grid over [-1-margin, 1+margin]
with cubic interpolation in between; it agrees with the axis t ↦ (t, 0, …, 0)
outside (-1, 1). Sphere curves have period 1 and their marked point at s = 0.
"""

from typing import List, Tuple, Callable, Optional, Sequence
from functools import cached_property
from dataclasses import field, dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .config import FLOAT_FORMAT, DEFAULT_MARGIN, DEFAULT_SAMPLES
from .errors import CurveError, FormatError, SupportError, ProjectionCenterError

BALL_TOL = 1e-9
REGULARITY_TOL = 1e-12
CENTER_TOL = 1e-6
ARC_SAMPLES = 64


def uniform_grid(samples: int = DEFAULT_SAMPLES, margin: float = DEFAULT_MARGIN) -> np.ndarray:
  return np.linspace(-1.0 - margin, 1.0 + margin, samples)


def axis(t: np.ndarray, n: int) -> np.ndarray:
  t = np.asarray(t, dtype=float)
  out = np.zeros(t.shape + (n,))
  out[..., 0] = t
  return out


def _frozen(a: np.ndarray) -> np.ndarray:
  a = np.array(a, dtype=float)
  a.setflags(write=False)
  return a


@dataclass(frozen=True, eq=False)
class LongCurve:
  t: np.ndarray
  points: np.ndarray

  def __post_init__(self):
    t, points = _frozen(self.t), _frozen(self.points)
    if t.ndim != 1 or points.ndim != 2 or points.shape[0] != t.shape[0]:
      raise CurveError(f"expected N parameters and N x n points, got {t.shape} and {points.shape}")
    if points.shape[1] < 2:
      raise CurveError("ambient dimension must be at least 2")
    if t.shape[0] < 4 or np.any(np.diff(t) <= 0):
      raise CurveError("parameter grid must be strictly increasing with at least 4 samples")
    if t[0] > -1.0 or t[-1] < 1.0:
      raise CurveError("parameter grid must cover [-1, 1]")
    object.__setattr__(self, "t", t)
    object.__setattr__(self, "points", points)

  @classmethod
  def from_function(
    cls,
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    samples: int = DEFAULT_SAMPLES,
    margin: float = DEFAULT_MARGIN,
  ) -> "LongCurve":
    """Sample a vectorized f: (N,) -> (N, n); the axis is imposed for |t| >= 1."""
    t = uniform_grid(samples, margin)
    points = np.array(f(t), dtype=float).reshape(len(t), n)
    return cls.from_samples(t, points)

  @classmethod
  def from_samples(cls, t: np.ndarray, points: np.ndarray) -> "LongCurve":
    t = np.asarray(t, dtype=float)
    points = np.array(points, dtype=float)
    outside = np.abs(t) >= 1.0
    points[outside] = axis(t[outside], points.shape[1])
    return cls(t, points)

  @classmethod
  def trivial(cls, n: int, samples: int = DEFAULT_SAMPLES, margin: float = DEFAULT_MARGIN) -> "LongCurve":
    return cls.from_function(lambda t: axis(t, n), n, samples, margin)

  @property
  def ambient_dim(self) -> int:
    return self.points.shape[1]

  @property
  def samples(self) -> int:
    return self.t.shape[0]

  @property
  def margin(self) -> float:
    return float(-1.0 - self.t[0])

  @cached_property
  def spline(self) -> CubicSpline:
    return CubicSpline(self.t, self.points, axis=0)

  @cached_property
  def velocity(self) -> np.ndarray:
    """f′ at the samples."""
    return self.spline(self.t, 1)

  def __call__(self, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    values = np.array(self.spline(s))
    outside = np.abs(s) >= 1.0
    if np.any(outside):
      values[outside] = axis(s[outside], self.ambient_dim)
    return values

  def derivative(self, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    values = np.array(self.spline(s, 1))
    outside = np.abs(s) >= 1.0
    if np.any(outside):
      values[outside] = np.eye(self.ambient_dim)[0]
    return values

  def interior(self) -> np.ndarray:
    return np.abs(self.t) <= 1.0

  def validate(self) -> None:
    """Check the support, ball and regularity conditions at every sample."""
    outside = ~(np.abs(self.t) < 1.0)
    if np.any(self.points[outside] != axis(self.t[outside], self.ambient_dim)):
      raise SupportError("curve leaves the axis outside (-1, 1)")
    radii = np.linalg.norm(self.points[self.interior()], axis=1)
    if np.any(radii > 1.0 + BALL_TOL):
      raise SupportError(f"curve leaves the unit ball (max radius {radii.max():.6g})")
    speed = np.linalg.norm(self.velocity, axis=1)
    if np.any(speed <= REGULARITY_TOL):
      i = int(np.argmin(speed))
      raise CurveError(f"curve is not regular near t={self.t[i]:.6g}")

  def with_points(self, points: np.ndarray) -> "LongCurve":
    return LongCurve.from_samples(self.t, points)

  def reversed(self) -> "LongCurve":
    """t ↦ D f(-t) with D = diag(-1, 1, …, 1); again a long curve."""
    flip = np.ones(self.ambient_dim)
    flip[0] = -1.0
    return LongCurve.from_samples(-self.t[::-1], self.points[::-1] * flip)

  def transformed(self, rotation: np.ndarray) -> "LongCurve":
    """Apply R ∈ SO(n) fixing e₁ (the SO(n-1) symmetry of long knots)."""
    R = np.asarray(rotation, dtype=float)
    _check_rotation(R, self.ambient_dim)
    e1 = np.eye(self.ambient_dim)[0]
    if not np.allclose(R @ e1, e1, atol=1e-12):
      raise CurveError("rotation must fix the long axis e1")
    return LongCurve.from_samples(self.t, self.points @ R.T)

  def tangent_indicatrix(self) -> np.ndarray:
    """Gauss map f′/‖f′‖ at the samples, a loop in S^{n-1} based at e₁."""
    v = self.velocity / np.linalg.norm(self.velocity, axis=1, keepdims=True)
    outside = np.abs(self.t) >= 1.0
    v[outside] = np.eye(self.ambient_dim)[0]
    return v

  def sup_distance(self, other: "LongCurve") -> float:
    if other.points.shape != self.points.shape:
      raise CurveError("curves are sampled differently")
    return float(np.max(np.abs(self.points - other.points)))


def _check_rotation(R: np.ndarray, dim: int) -> None:
  if R.shape != (dim, dim):
    raise CurveError(f"expected a {dim}x{dim} rotation, got shape {R.shape}")
  if not np.allclose(R.T @ R, np.eye(dim), atol=1e-10) or np.linalg.det(R) < 0:
    raise CurveError("matrix is not a rotation (orthogonal with determinant +1)")


def concat(c1: LongCurve, c2: LongCurve, grid: Optional[np.ndarray] = None) -> LongCurve:
  """Little-intervals product: c1 squeezed into [-1, 0], c2 into [0, 1]."""
  if c1.ambient_dim != c2.ambient_dim:
    raise CurveError(f"cannot concatenate curves in dimensions {c1.ambient_dim} and {c2.ambient_dim}")
  t = c1.t if grid is None else np.asarray(grid, dtype=float)
  e1 = np.eye(c1.ambient_dim)[0]
  points = axis(t, c1.ambient_dim)
  left = (t > -1.0) & (t <= 0.0)
  right = (t > 0.0) & (t < 1.0)
  points[left] = (c1(2.0 * t[left] + 1.0) - e1) / 2.0
  points[right] = (c2(2.0 * t[right] - 1.0) + e1) / 2.0
  return LongCurve.from_samples(t, points)


def squeeze_left(t: np.ndarray) -> np.ndarray:
  """Parameters of the left factor of concat at concat times t ∈ [-1, 0]."""
  return 2.0 * np.asarray(t) + 1.0


def squeeze_right(t: np.ndarray) -> np.ndarray:
  return 2.0 * np.asarray(t) - 1.0


# Sphere curves


def to_sphere(x: np.ndarray) -> np.ndarray:
  """Inverse stereographic projection ℝⁿ -> Sⁿ from the center N = (1, 0, …, 0)."""
  x = np.atleast_2d(x)
  r2 = np.sum(x * x, axis=1, keepdims=True)
  return np.hstack([(r2 - 1.0) / (r2 + 1.0), 2.0 * x / (r2 + 1.0)])


def from_sphere(y: np.ndarray) -> np.ndarray:
  y = np.atleast_2d(y)
  return y[:, 1:] / (1.0 - y[:, :1])


def sphere_parameter(t: np.ndarray) -> np.ndarray:
  """Long-curve time t ∈ ℝ -> sphere-curve time s ∈ (0, 1); s = 0 is the marked point."""
  return 0.5 + np.arctan(np.asarray(t, dtype=float)) / np.pi


def long_parameter(s: np.ndarray) -> np.ndarray:
  return np.tan(np.pi * (np.asarray(s, dtype=float) - 0.5))


@dataclass(frozen=True, eq=False)
class SphereCurve:
  s: np.ndarray
  points: np.ndarray
  long_grid: Optional[np.ndarray] = field(default=None)

  def __post_init__(self):
    s, points = _frozen(self.s), _frozen(self.points)
    if s.ndim != 1 or points.ndim != 2 or points.shape[0] != s.shape[0]:
      raise CurveError(f"expected M parameters and M x (n+1) points, got {s.shape} and {points.shape}")
    if s[0] != 0.0 or s[-1] >= 1.0 or np.any(np.diff(s) <= 0):
      raise CurveError("sphere curve parameters must increase from 0 within [0, 1)")
    if np.any(np.abs(np.linalg.norm(points, axis=1) - 1.0) > 1e-9):
      raise CurveError("sphere curve samples must lie on the unit sphere")
    object.__setattr__(self, "s", s)
    object.__setattr__(self, "points", points)
    if self.long_grid is not None:
      object.__setattr__(self, "long_grid", _frozen(self.long_grid))

  @property
  def ambient_dim(self) -> int:
    """n for a curve in Sⁿ ⊂ ℝ^{n+1}."""
    return self.points.shape[1] - 1

  @cached_property
  def spline(self) -> CubicSpline:
    s = np.append(self.s, 1.0)
    points = np.vstack([self.points, self.points[:1]])
    return CubicSpline(s, points, axis=0, bc_type="periodic")

  def __call__(self, s) -> np.ndarray:
    values = np.atleast_2d(self.spline(np.mod(s, 1.0)))
    return values / np.linalg.norm(values, axis=1, keepdims=True)

  def rotate(self, A: np.ndarray) -> "SphereCurve":
    return rotate(A, self)

  def one_jet(self) -> Tuple[np.ndarray, np.ndarray]:
    return one_jet(self)

  def ev(self) -> Tuple[np.ndarray, np.ndarray]:
    return ev(self)


def compactify(c: LongCurve, arc_samples: int = ARC_SAMPLES) -> SphereCurve:
  """Close a long curve through N = (1, 0, …, 0) ∈ Sⁿ."""
  s_grid = sphere_parameter(c.t)
  left = np.linspace(0.0, s_grid[0], arc_samples, endpoint=False)
  right = np.linspace(s_grid[-1], 1.0, arc_samples + 1)[1:-1]
  center = np.eye(c.ambient_dim + 1)[0]
  left_points = np.vstack([center, to_sphere(axis(long_parameter(left[1:]), c.ambient_dim))])
  right_points = to_sphere(axis(long_parameter(right), c.ambient_dim))
  return SphereCurve(
    s=np.concatenate([left, s_grid, right]),
    points=np.vstack([left_points, to_sphere(c.points), right_points]),
    long_grid=c.t,
  )


def decompactify(sc: SphereCurve, grid: Optional[np.ndarray] = None) -> LongCurve:
  """Stereographic projection back to a long curve on the given (or recorded) grid."""
  t = grid if grid is not None else sc.long_grid
  if t is None:
    t = uniform_grid()
  t = np.asarray(t, dtype=float)
  y = sc(sphere_parameter(t))
  gap = 1.0 - y[:, 0]
  if np.any(gap < CENTER_TOL):
    i = int(np.argmin(gap))
    raise ProjectionCenterError(f"sphere curve passes through the projection center at t={t[i]:.6g}")
  return LongCurve.from_samples(t, from_sphere(y))


def rotate(A: np.ndarray, sc: SphereCurve) -> SphereCurve:
  """Pointwise action of A ∈ SO(n+1)."""
  A = np.asarray(A, dtype=float)
  _check_rotation(A, sc.points.shape[1])
  return SphereCurve(s=sc.s, points=sc.points @ A.T, long_grid=sc.long_grid)


def one_jet(sc: SphereCurve, s: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
  """(γ(s), γ′(s)/‖γ′(s)‖) at the samples, a loop in the unit tangent bundle of Sⁿ."""
  s = sc.s if s is None else np.atleast_1d(np.asarray(s, dtype=float))
  gamma = sc(s)
  d = np.atleast_2d(sc.spline(np.mod(s, 1.0), 1))
  d = d - np.sum(d * gamma, axis=1, keepdims=True) * gamma
  return gamma, d / np.linalg.norm(d, axis=1, keepdims=True)


def ev(sc: SphereCurve) -> Tuple[np.ndarray, np.ndarray]:
  """The 1-jet at the marked point."""
  gamma, tangent = one_jet(sc, np.array([0.0]))
  return gamma[0], tangent[0]


# Curve files


@dataclass(frozen=True)
class DecorationRecord:
  """A `dp` line: double point parameters, normal vector and resolution sign."""

  t1: float
  t2: float
  v: Tuple[float, ...]
  a: int = 1


def _fmt(x: float) -> str:
  return format(float(x), FLOAT_FORMAT)


def format_curve(c: LongCurve, decorations: Sequence[DecorationRecord] = ()) -> str:
  lines = [f"longcurve n={c.ambient_dim} N={c.samples}"]
  for t, p in zip(c.t, c.points):
    lines.append(" ".join(_fmt(x) for x in (t, *p)))
  for d in decorations:
    lines.append(" ".join(["dp", _fmt(d.t1), _fmt(d.t2), *(_fmt(x) for x in d.v), f"a={d.a}"]))
  return "".join(line + "\n" for line in lines)


def format_sphere_curve(sc: SphereCurve) -> str:
  lines = [f"spherecurve n={sc.ambient_dim} N={len(sc.s)}"]
  for s, p in zip(sc.s, sc.points):
    lines.append(" ".join(_fmt(x) for x in (s, *p)))
  return "".join(line + "\n" for line in lines)


def _parse_header(line: str, kind: str) -> Tuple[int, int]:
  parts = line.split()
  if len(parts) != 3 or parts[0] != kind or not parts[1].startswith("n=") or not parts[2].startswith("N="):
    raise FormatError(f"expected header '{kind} n=<dim> N=<samples>'", 1)
  try:
    return int(parts[1][2:]), int(parts[2][2:])
  except ValueError:
    raise FormatError("bad header numbers", 1) from None


def _parse_rows(lines: List[str], count: int, width: int) -> np.ndarray:
  rows = []
  for number, line in enumerate(lines[:count], start=2):
    values = line.split()
    if len(values) != width:
      raise FormatError(f"expected {width} numbers, got {len(values)}", number)
    try:
      rows.append([float(v) for v in values])
    except ValueError:
      raise FormatError("bad number", number) from None
  if len(rows) != count:
    raise FormatError(f"expected {count} samples, got {len(rows)}")
  return np.array(rows)


def parse_curve(text: str) -> Tuple[LongCurve, List[DecorationRecord]]:
  lines = [line for line in text.splitlines() if line.strip()]
  if not lines:
    raise FormatError("empty curve file")
  n, count = _parse_header(lines[0], "longcurve")
  rows = _parse_rows(lines[1:], count, n + 1)
  decorations = []
  for number, line in enumerate(lines[1 + count :], start=2 + count):
    parts = line.split()
    if len(parts) != n + 4 or parts[0] != "dp" or not parts[-1].startswith("a="):
      raise FormatError("expected 'dp t1 t2 v1 … vn a=<1|2>'", number)
    try:
      a = int(parts[-1][2:])
      values = [float(x) for x in parts[1:-1]]
    except ValueError:
      raise FormatError("bad decoration numbers", number) from None
    if a not in (1, 2):
      raise FormatError(f"sign choice must be 1 or 2, got {a}", number)
    decorations.append(DecorationRecord(values[0], values[1], tuple(values[2:]), a))
  try:
    curve = LongCurve(rows[:, 0], rows[:, 1:])
    curve.validate()
  except CurveError as e:
    raise FormatError(str(e)) from None
  return curve, decorations


def parse_sphere_curve(text: str) -> SphereCurve:
  lines = [line for line in text.splitlines() if line.strip()]
  if not lines:
    raise FormatError("empty curve file")
  n, count = _parse_header(lines[0], "spherecurve")
  rows = _parse_rows(lines[1:], count, n + 2)
  return SphereCurve(rows[:, 0], rows[:, 1:])
