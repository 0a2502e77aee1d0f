"""Double points of long immersions and their normal data."""

from typing import Dict, List, Tuple, Optional
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.optimize import least_squares

from .config import DEFAULT_TOL, DEFAULT_SEP_MIN
from .curves import LongCurve
from .errors import DecorationError, SingularityClusterError

CLUSTER_WINDOW = 8
TRANSVERSALITY_TOL = 1e-8
SAME_SOLUTION_TOL = 1e-7
DEGENERATE_SEED_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DoublePointDatum:
  """f(t1) = f(t2) with t1 < t2; plane is an orthonormal 2 x n frame of the two tangents."""

  t1: float
  t2: float
  point: np.ndarray
  plane: Optional[np.ndarray]
  transversal: bool
  residual: float = 0.0

  @property
  def parameters(self) -> Tuple[float, float]:
    return (self.t1, self.t2)


def _tangent_plane(u1: np.ndarray, u2: np.ndarray) -> Tuple[Optional[np.ndarray], bool]:
  u1 = u1 / np.linalg.norm(u1)
  u2 = u2 / np.linalg.norm(u2)
  if 1.0 - float(np.dot(u1, u2)) ** 2 <= TRANSVERSALITY_TOL:
    return None, False
  q, _ = np.linalg.qr(np.column_stack([u1, u2]))
  return q.T.copy(), True


def refine_double_point(curve: LongCurve, t1: float, t2: float, tol: float = DEFAULT_TOL) -> Optional[DoublePointDatum]:
  """Least-squares refinement of f(t1) - f(t2) = 0 from a starting pair; None if it does not close up."""

  def residual(x: np.ndarray) -> np.ndarray:
    return curve(x[0]) - curve(x[1])

  def jacobian(x: np.ndarray) -> np.ndarray:
    return np.column_stack([curve.derivative(x[0]), -curve.derivative(x[1])])

  sol = least_squares(residual, np.array([t1, t2]), jac=jacobian, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
  a, b = sorted(float(x) for x in sol.x)
  if not (-1.0 < a < b < 1.0):
    return None
  gap = float(np.linalg.norm(curve(a) - curve(b)))
  if gap >= tol:
    return None
  plane, transversal = _tangent_plane(curve.derivative(a), curve.derivative(b))
  return DoublePointDatum(a, b, (curve(a) + curve(b)) / 2.0, plane, transversal, gap)


def _local_spacing(points: np.ndarray) -> np.ndarray:
  """Largest of the two neighbouring steps at each sample."""
  steps = np.linalg.norm(np.diff(points, axis=0), axis=1)
  h = np.empty(len(points))
  h[0], h[-1] = steps[0], steps[-1]
  h[1:-1] = np.maximum(steps[:-1], steps[1:])
  return h


def _candidate_pairs(curve: LongCurve, sep_min: int) -> List[Tuple[int, int]]:
  """Grid index pairs closer in space than twice the local spacing but far apart along the curve."""
  index = np.flatnonzero(curve.interior())
  points = curve.points[index]
  tree = cKDTree(points)
  pairs = set()
  for i, near in enumerate(tree.query_ball_point(points, r=2.0 * _local_spacing(points))):
    for j in near:
      if abs(j - i) > sep_min:
        a, b = (i, j) if i < j else (j, i)
        pairs.add((int(index[a]), int(index[b])))
  return sorted(pairs)


def _cluster(curve: LongCurve, pairs: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
  """One representative (the closest pair) per CLUSTER_WINDOW-sized cell of index pairs."""
  points = curve.points
  best: Dict[Tuple[int, int], Tuple[float, Tuple[int, int]]] = {}
  for i, j in pairs:
    cell = (i // CLUSTER_WINDOW, j // CLUSTER_WINDOW)
    gap = float(np.linalg.norm(points[i] - points[j]))
    if cell not in best or gap < best[cell][0]:
      best[cell] = (gap, (i, j))
  return [best[cell][1] for cell in sorted(best)]


def double_points(curve: LongCurve, tol: float = DEFAULT_TOL, sep_min: int = DEFAULT_SEP_MIN) -> List[DoublePointDatum]:
  """All self-intersections of the curve, sorted by t1; tangential ones come back flagged."""
  h = float(curve.t[1] - curve.t[0])
  found: List[DoublePointDatum] = []
  for i, j in _cluster(curve, _candidate_pairs(curve, sep_min)):
    datum = refine_double_point(curve, float(curve.t[i]), float(curve.t[j]), tol)
    if datum is None or datum.t2 - datum.t1 <= sep_min * h:
      continue
    if any(abs(datum.t1 - d.t1) < SAME_SOLUTION_TOL and abs(datum.t2 - d.t2) < SAME_SOLUTION_TOL for d in found):
      continue
    for d in found:
      if abs(datum.t1 - d.t1) < sep_min * h and abs(datum.t2 - d.t2) < sep_min * h:
        raise SingularityClusterError(
          f"unresolvable singularity cluster near t=({d.t1:.6g}, {d.t2:.6g}) and ({datum.t1:.6g}, {datum.t2:.6g})"
        )
    found.append(datum)
  found.sort(key=lambda d: (d.t1, d.t2))
  return found


def normal_fiber_vector(plane: np.ndarray, seed_direction: np.ndarray) -> np.ndarray:
  """Unit vector orthogonal to the plane, from Gram-Schmidt of the seed."""
  plane = np.atleast_2d(np.asarray(plane, dtype=float))
  seed = np.asarray(seed_direction, dtype=float)
  if seed.shape != (plane.shape[1],):
    raise DecorationError(f"seed has shape {seed.shape}, expected ({plane.shape[1]},)")
  w = seed - plane.T @ (plane @ seed)
  norm = float(np.linalg.norm(w))
  if norm < DEGENERATE_SEED_TOL:
    raise DecorationError("seed direction lies in the double-point plane")
  return w / norm


def fiber_basis(plane: np.ndarray) -> np.ndarray:
  """Orthonormal basis (rows) of the normal space of the plane; it spans the S^{n-3} fibre."""
  plane = np.atleast_2d(np.asarray(plane, dtype=float))
  n = plane.shape[1]
  q, _ = np.linalg.qr(np.vstack([plane, np.eye(n)]).T)
  return q[:, 2:n].T.copy()
