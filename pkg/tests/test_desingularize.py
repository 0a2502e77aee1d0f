"""Tests for resolving decorated double points."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np
import pytest

from knotring.diagrams import gauss_code
from knotring.curves import LongCurve, DecorationRecord
from knotring.immersions import figure_eight, fiber_samples, figure_eight_decorated
from knotring.singularities import double_points
from knotring.errors import DecorationError, NoValidParametersError
from knotring.desingularize import (
  DEFAULT_EPS,
  DEFAULT_DELTA,
  Resolver,
  Decoration,
  DecoratedImmersion,
  bump,
  decorate,
  resolve,
  auto_parameters,
  concat_decorated,
)


@pytest.fixture
def decorated() -> DecoratedImmersion:
  return figure_eight_decorated(3)


class TestBump:
  def test_profile(self):
    """Test peak height one at the center and exact zero outside the window."""
    t = np.array([-0.3, -0.2, 0.0, 0.1, 0.2, 0.25])
    b = bump(t, 0.0, 0.2)
    assert b[2] == 1.0
    assert b[0] == 0.0 and b[1] == 0.0 and b[4] == 0.0 and b[5] == 0.0
    assert 0.0 < b[3] < 1.0


class TestDecorations:
  def test_sign_choice(self, decorated: DecoratedImmersion):
    dec = decorated.decorations[0]
    with pytest.raises(DecorationError):
      DecoratedImmersion(decorated.curve, (Decoration(dec.point, dec.v, 3),))

  def test_vector_must_be_unit(self, decorated: DecoratedImmersion):
    dec = decorated.decorations[0]
    with pytest.raises(DecorationError):
      DecoratedImmersion(decorated.curve, (Decoration(dec.point, 2.0 * dec.v, 1),))

  def test_vector_must_be_normal(self, decorated: DecoratedImmersion):
    dec = decorated.decorations[0]
    with pytest.raises(DecorationError):
      DecoratedImmersion(decorated.curve, (Decoration(dec.point, dec.point.plane[0], 1),))

  def test_flipped(self, decorated: DecoratedImmersion):
    """Test that flipping swaps the strand and negates the vector."""
    dec = decorated.decorations[0]
    flipped = dec.flipped()
    assert flipped.a == 2
    assert flipped.center == dec.point.t2
    assert np.array_equal(flipped.v, -dec.v)

  def test_records_round_trip(self, decorated: DecoratedImmersion):
    """Test that decorations rebuilt from records find the same double point."""
    again = decorate(decorated.curve, decorated.records())
    assert again.decorations[0].point.t1 == pytest.approx(decorated.decorations[0].point.t1, abs=1e-10)

  def test_record_without_double_point(self):
    with pytest.raises(DecorationError):
      decorate(LongCurve.trivial(3), figure_eight_decorated(3).records())


class TestResolve:
  def test_no_decorations(self):
    """Test that k = 0 resolves to the curve itself."""
    d = DecoratedImmersion(LongCurve.trivial(3))
    assert resolve(d, 0.1, 0.1) is d.curve
    assert auto_parameters(d) == (DEFAULT_EPS, DEFAULT_DELTA)

  def test_window_must_fit(self, decorated: DecoratedImmersion):
    with pytest.raises(DecorationError):
      resolve(decorated, 0.99, 0.01)

  def test_parameters_positive(self, decorated: DecoratedImmersion):
    with pytest.raises(DecorationError):
      resolve(decorated, 0.1, 0.0)

  def test_resolution_is_embedded(self, decorated: DecoratedImmersion):
    """Test that the searched parameters remove the double point."""
    result = Resolver().auto_parameters(decorated)
    assert double_points(result.curve) == []
    result.curve.validate()
    assert 0.0 < result.eps and 0.0 < result.delta
    assert result.attempts >= 1

  def test_resolution_moves_only_the_window(self, decorated: DecoratedImmersion):
    """Test that points outside the bump window are untouched."""
    eps, delta = auto_parameters(decorated)
    out = resolve(decorated, eps, delta)
    center = decorated.decorations[0].center
    far = np.abs(decorated.curve.t - center) >= eps
    assert np.array_equal(out.points[far], decorated.curve.points[far])
    assert out.sup_distance(decorated.curve) == pytest.approx(delta, rel=1e-3)

  def test_two_resolutions_differ(self, decorated: DecoratedImmersion):
    """Test that the two sign choices give opposite crossings."""
    eps, delta = auto_parameters(decorated)
    flipped = DecoratedImmersion(decorated.curve, (decorated.decorations[0].flipped(),))
    first = gauss_code(resolve(decorated, eps, delta))
    second = gauss_code(resolve(flipped, eps, delta))
    assert [s.over for s in first] == [False, True]
    assert double_points(resolve(flipped, eps, delta)) == []
    assert [s.over for s in second] == [True, False]

  def test_every_fiber_vector_in_five_dimensions(self):
    """Test that the ℝ⁵ figure-eight resolves to an embedding for 200 vectors of its normal S²."""
    base = figure_eight_decorated(5)
    point = base.decorations[0].point
    resolver = Resolver()
    for v in fiber_samples(5, 200):
      result = resolver.auto_parameters(DecoratedImmersion(base.curve, (Decoration(point, v, 1),)))
      assert double_points(result.curve) == []

  def test_rotation_commutes_with_resolution(self, decorated: DecoratedImmersion):
    """Test that resolving a rotated decorated immersion gives the rotated resolution."""
    c, s = np.cos(0.7), np.sin(0.7)
    R = np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    dec = decorated.decorations[0]
    moved = decorate(decorated.curve.transformed(R), [DecorationRecord(dec.point.t1, dec.point.t2, tuple(R @ dec.v), dec.a)])
    eps, delta = auto_parameters(decorated)
    assert np.allclose(resolve(moved, eps, delta).points, resolve(decorated, eps, delta).points @ R.T, atol=1e-9)

  def test_ui_events(self, decorated: DecoratedImmersion):
    """Test that the search reports each attempt and the final parameters."""
    events: List[Tuple] = []
    Resolver(ui_callback=lambda event, *args: events.append((event, *args))).auto_parameters(decorated)
    assert events[0][0] == "eps_delta_attempt"
    assert events[-1][0] == "eps_delta_found"

  def test_budget_exhausted(self, decorated: DecoratedImmersion):
    """Test that an empty budget fails with diagnostics attached."""
    with pytest.raises(NoValidParametersError) as exc:
      Resolver(budget=0).auto_parameters(decorated)
    assert exc.value.diagnostics == []


class TestProduct:
  def test_decorations_follow_strands(self, decorated: DecoratedImmersion):
    """Test that the product carries both decorations at the squeezed parameters."""
    product = concat_decorated(decorated, decorated)
    assert product.k == 2
    t1 = decorated.decorations[0].point.t1
    assert product.decorations[0].point.t1 == pytest.approx((t1 - 1.0) / 2.0, abs=1e-9)
    assert product.decorations[1].point.t1 == pytest.approx((t1 + 1.0) / 2.0, abs=1e-9)

  def test_undecorated_double_point_is_kept(self):
    """Test that an undecorated factor keeps its double point in the product."""
    bare = DecoratedImmersion(figure_eight(3))
    product = concat_decorated(figure_eight_decorated(3), bare)
    assert product.k == 1
    assert len(double_points(product.curve)) == 2
