"""Tests for double-point detection and normal data."""

from __future__ import annotations

from math import sqrt

import numpy as np
import pytest

from knotring.curves import LongCurve, rotate, compactify, decompactify
from knotring.errors import DecorationError
from knotring.config import DEFAULT_SEP_MIN
from knotring.immersions import figure_eight, budney_base_immersion, figure_eight_parameter
from knotring.singularities import _cluster, fiber_basis, double_points, _candidate_pairs, normal_fiber_vector, refine_double_point


class TestDoublePoints:
  def test_trivial_has_none(self):
    assert double_points(LongCurve.trivial(3)) == []

  @pytest.mark.parametrize("n", [2, 3, 5])
  def test_figure_eight(self, n: int):
    """Test that the figure-eight has one transverse double point at ±τ."""
    points = double_points(figure_eight(n))
    assert len(points) == 1
    dp = points[0]
    tau = figure_eight_parameter()
    assert dp.t1 == pytest.approx(-tau, abs=1e-8)
    assert dp.t2 == pytest.approx(tau, abs=1e-8)
    assert dp.transversal
    assert dp.plane.shape == (2, n)
    assert np.allclose(dp.plane @ dp.plane.T, np.eye(2))
    assert dp.residual < 1e-8

  def test_budney_base_interleaves(self):
    """Test the two crossings of the base immersion and their interleaving."""
    k = 0.9 / 2.2
    big, small = (sqrt(6.0) + sqrt(2.0)) / 2.0, (sqrt(6.0) - sqrt(2.0)) / 2.0
    first, second = double_points(budney_base_immersion(3))
    assert (first.t1, first.t2) == pytest.approx((-big * k, small * k), abs=1e-8)
    assert (second.t1, second.t2) == pytest.approx((-sqrt(3.0) * k, sqrt(3.0) * k), abs=1e-8)
    assert first.t1 < second.t1 < first.t2 < second.t2

  def test_refine_from_nearby_seed(self):
    """Test that a rough starting pair converges onto the crossing."""
    dp = refine_double_point(figure_eight(3), -0.48, 0.48)
    assert dp is not None
    assert dp.t2 == pytest.approx(figure_eight_parameter(), abs=1e-8)

  def test_candidates_follow_local_spacing(self):
    """Test that a small, finely sampled shadow yields a few candidates per crossing, not same-strand neighbours."""
    c = budney_base_immersion(5)
    representatives = _cluster(c, _candidate_pairs(c, DEFAULT_SEP_MIN))
    assert 2 <= len(representatives) <= 8
    for i, j in representatives:
      assert j - i > 10 * DEFAULT_SEP_MIN

  @pytest.mark.parametrize("curve", [figure_eight(3), budney_base_immersion(3)])
  def test_reversal_negates_parameters(self, curve: LongCurve):
    """Test that reversing a curve keeps its double points at the negated parameters."""
    forward = double_points(curve)
    backward = double_points(curve.reversed())
    assert len(backward) == len(forward)
    expected = sorted((-d.t2, -d.t1) for d in forward)
    for d, (t1, t2) in zip(backward, expected):
      assert (d.t1, d.t2) == pytest.approx((t1, t2), abs=1e-8)

  def test_count_survives_compactify_and_rotate(self):
    """Test that closing up through N and rotating about N keeps both double points."""
    curve = budney_base_immersion(4)
    sc = compactify(curve)
    c, s = np.cos(0.6), np.sin(0.6)
    A = np.eye(5)
    A[2, 2], A[2, 4], A[4, 2], A[4, 4] = c, -s, s, c
    assert len(double_points(decompactify(sc))) == 2
    assert len(double_points(decompactify(rotate(A, sc)))) == 2

  def test_detection_is_deterministic(self):
    c = budney_base_immersion(4)
    a, b = double_points(c), double_points(c)
    assert [(d.t1, d.t2) for d in a] == [(d.t1, d.t2) for d in b]


class TestNormalData:
  @pytest.fixture
  def plane(self) -> np.ndarray:
    return double_points(figure_eight(5))[0].plane

  def test_normal_vector(self, plane: np.ndarray):
    """Test that Gram-Schmidt lands in the normal space with unit length."""
    v = normal_fiber_vector(plane, np.array([0.3, 0.2, 1.0, 0.0, 0.0]))
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.allclose(plane @ v, 0.0)

  def test_seed_in_plane(self, plane: np.ndarray):
    with pytest.raises(DecorationError):
      normal_fiber_vector(plane, plane[0])

  def test_seed_shape(self, plane: np.ndarray):
    with pytest.raises(DecorationError):
      normal_fiber_vector(plane, np.ones(3))

  def test_fiber_basis(self, plane: np.ndarray):
    """Test that the fibre basis is orthonormal and normal to the plane."""
    basis = fiber_basis(plane)
    assert basis.shape == (3, 5)
    assert np.allclose(basis @ basis.T, np.eye(3))
    assert np.allclose(basis @ plane.T, 0.0)
