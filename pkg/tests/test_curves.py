"""Tests for long curves, sphere curves and the curve file format."""

from __future__ import annotations

import numpy as np
import pytest

from knotring.errors import CurveError, FormatError, SupportError, ProjectionCenterError
from knotring.immersions import figure_eight
from knotring.curves import (
  LongCurve,
  DecorationRecord,
  axis,
  concat,
  rotate,
  one_jet,
  compactify,
  parse_curve,
  decompactify,
  format_curve,
  uniform_grid,
  squeeze_left,
  squeeze_right,
  sphere_parameter,
  long_parameter,
  parse_sphere_curve,
  format_sphere_curve,
)

SAMPLES = 512


@pytest.fixture
def trivial() -> LongCurve:
  return LongCurve.trivial(3, SAMPLES)


@pytest.fixture
def eight() -> LongCurve:
  return figure_eight(3, SAMPLES)


class TestLongCurve:
  def test_trivial_is_valid(self, trivial: LongCurve):
    trivial.validate()
    assert trivial.ambient_dim == 3
    assert trivial.samples == SAMPLES

  def test_samples_are_read_only(self, trivial: LongCurve):
    """Test that a curve cannot be mutated through its arrays."""
    with pytest.raises(ValueError):
      trivial.points[0, 0] = 5.0

  def test_axis_imposed_outside(self):
    """Test that from_samples forces the axis for |t| >= 1."""
    t = uniform_grid(64)
    c = LongCurve.from_samples(t, np.ones((64, 3)))
    outside = np.abs(t) >= 1.0
    assert np.array_equal(c.points[outside], axis(t[outside], 3))
    assert np.allclose(c(np.array([-3.0, 2.0])), [[-3.0, 0.0, 0.0], [2.0, 0.0, 0.0]])

  def test_support_violation(self):
    """Test that a curve off the axis near the ends is rejected."""
    t = uniform_grid(64)
    points = axis(t, 3)
    points[0, 1] = 0.1
    with pytest.raises(SupportError):
      LongCurve(t, points).validate()

  def test_ball_violation(self):
    """Test that a curve leaving the unit ball is rejected."""
    big = LongCurve.from_function(lambda t: np.column_stack([t, 2.0 * (1.0 - t**2), 0.0 * t]), 3, SAMPLES)
    with pytest.raises(SupportError, match="unit ball"):
      big.validate()

  def test_grid_must_cover_interval(self):
    with pytest.raises(CurveError):
      LongCurve(np.linspace(-0.5, 0.5, 16), np.zeros((16, 3)))

  def test_reversed_twice(self, eight: LongCurve):
    """Test that reversing twice gives the curve back."""
    back = eight.reversed().reversed()
    assert np.allclose(back.points, eight.points, atol=1e-12)

  def test_transformed(self, eight: LongCurve):
    """Test that rotations fixing e₁ act and others are refused."""
    R = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    moved = eight.transformed(R)
    assert np.allclose(moved.points[:, 2], eight.points[:, 1])
    moved.validate()
    swap = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(CurveError):
      eight.transformed(swap)
    with pytest.raises(CurveError):
      eight.transformed(np.diag([1.0, 1.0, -1.0]))

  def test_tangent_indicatrix(self, eight: LongCurve):
    """Test that the Gauss map is a unit loop based at e₁."""
    g = eight.tangent_indicatrix()
    assert np.allclose(np.linalg.norm(g, axis=1), 1.0)
    assert np.allclose(g[0], [1.0, 0.0, 0.0])
    assert np.allclose(g[-1], [1.0, 0.0, 0.0])


class TestConcat:
  def test_trivial_is_unit(self, trivial: LongCurve, eight: LongCurve):
    """Test that the axis is a unit for the product up to reparametrization."""
    assert concat(trivial, trivial).sup_distance(trivial) < 1e-12
    product = concat(eight, trivial)
    product.validate()
    t = product.t[(product.t > -1.0) & (product.t <= 0.0)]
    assert np.allclose(product(t), (eight(squeeze_left(t)) - [1.0, 0.0, 0.0]) / 2.0, atol=1e-12)

  def test_right_factor(self, trivial: LongCurve, eight: LongCurve):
    product = concat(trivial, eight)
    t = product.t[(product.t > 0.0) & (product.t < 1.0)]
    assert np.allclose(product(t), (eight(squeeze_right(t)) + [1.0, 0.0, 0.0]) / 2.0, atol=1e-12)

  def test_dimension_mismatch(self, trivial: LongCurve):
    with pytest.raises(CurveError):
      concat(trivial, LongCurve.trivial(4, SAMPLES))


class TestSphereCurves:
  def test_parameters_invert(self):
    t = np.linspace(-5.0, 5.0, 11)
    assert np.allclose(long_parameter(sphere_parameter(t)), t)

  def test_compactify_round_trip(self, eight: LongCurve):
    """Test that decompactify undoes compactify on the recorded grid."""
    sc = compactify(eight)
    assert np.allclose(np.linalg.norm(sc.points, axis=1), 1.0)
    back = decompactify(sc)
    assert back.sup_distance(eight) < 1e-9

  def test_marked_point(self, trivial: LongCurve):
    """Test that the compactified curve starts at N, heading along e₁."""
    gamma, tangent = compactify(trivial).ev()
    assert np.allclose(gamma, [1.0, 0.0, 0.0, 0.0], atol=1e-9)
    assert abs(abs(tangent[1]) - 1.0) < 1e-3

  def test_one_jet_is_unit_tangent(self, eight: LongCurve):
    gamma, tangent = one_jet(compactify(eight))
    assert np.allclose(np.linalg.norm(tangent, axis=1), 1.0)
    assert np.allclose(np.sum(gamma * tangent, axis=1), 0.0, atol=1e-9)

  def test_one_jet_commutes_with_rotation(self, eight: LongCurve):
    """Test that the 1-jet of a rotated sphere curve is the rotated 1-jet."""
    sc = compactify(eight)
    c1, s1, c2, s2 = np.cos(0.4), np.sin(0.4), np.cos(1.1), np.sin(1.1)
    A = np.array([[c1, 0.0, -s1, 0.0], [0.0, c2, 0.0, -s2], [s1, 0.0, c1, 0.0], [0.0, s2, 0.0, c2]])
    gamma, tangent = one_jet(sc)
    moved_gamma, moved_tangent = one_jet(rotate(A, sc))
    assert np.allclose(moved_gamma, gamma @ A.T, atol=1e-12)
    assert np.allclose(moved_tangent, tangent @ A.T, atol=1e-9)

  def test_rotation_through_center(self, trivial: LongCurve):
    """Test that a curve moved through the projection center cannot be projected."""
    sc = rotate(np.diag([-1.0, -1.0, 1.0, 1.0]), compactify(trivial))
    # t = 0 lies on the odd grid and now maps to N.
    with pytest.raises(ProjectionCenterError):
      decompactify(sc, uniform_grid(SAMPLES + 1))

  def test_rotate_refuses_reflections(self, trivial: LongCurve):
    with pytest.raises(CurveError):
      compactify(trivial).rotate(np.diag([-1.0, 1.0, 1.0, 1.0]))


class TestCurveFiles:
  def test_round_trip_is_exact(self, eight: LongCurve):
    """Test that the 17-digit format reproduces every float."""
    record = DecorationRecord(-0.5, 0.5, (0.0, 0.0, 1.0), 2)
    curve, records = parse_curve(format_curve(eight, [record]))
    assert np.array_equal(curve.points, eight.points)
    assert np.array_equal(curve.t, eight.t)
    assert records == [record]

  def test_header(self, eight: LongCurve):
    assert format_curve(eight).splitlines()[0] == "longcurve n=3 N=512"

  def test_sphere_file(self, trivial: LongCurve):
    sc = compactify(trivial)
    again = parse_sphere_curve(format_sphere_curve(sc))
    assert np.array_equal(again.points, sc.points)

  def test_bad_header(self):
    with pytest.raises(FormatError, match="line 1"):
      parse_curve("curve n=3 N=4\n")

  def test_short_file(self, eight: LongCurve):
    text = "".join(format_curve(eight).splitlines(keepends=True)[:10])
    with pytest.raises(FormatError):
      parse_curve(text)

  def test_bad_decoration_sign(self, trivial: LongCurve):
    text = format_curve(trivial) + "dp -0.5 0.5 0 0 1 a=3\n"
    with pytest.raises(FormatError):
      parse_curve(text)

  def test_support_is_checked_on_read(self):
    """Test that a file whose curve leaves the axis outside (-1, 1) is a format error."""
    t = uniform_grid(64)
    points = axis(t, 3)
    points[0, 1] = 0.1
    with pytest.raises(FormatError, match="axis"):
      parse_curve(format_curve(LongCurve(t, points)))

  def test_ball_is_checked_on_read(self):
    big = LongCurve.from_function(lambda t: np.column_stack([t, 2.0 * (1.0 - t**2), 0.0 * t]), 3, SAMPLES)
    with pytest.raises(FormatError, match="unit ball"):
      parse_curve(format_curve(big))
