"""Tests for exact ring arithmetic: normal forms, signs, torsion and morphisms."""

from __future__ import annotations

import itertools

import pytest

from knotring.errors import (
  FormatError,
  MorphismError,
  NonEnumerableError,
  PresentationError,
  ExponentOverflowError,
  UnknownGeneratorError,
  PresentationMismatchError,
)
from knotring.algebra import (
  Kind,
  Relation,
  Commutation,
  RingElement,
  RingMorphism,
  GeneratorSpec,
  RingPresentation,
  tensor,
  multiply,
  normalize,
  unit_ring,
  rank_in_degree,
  basis_in_degree,
  parse_presentation,
  check_morphism_multiplicative,
)
from knotring.catalog import loop_homology_sphere


def _ring(*gens, relations=()) -> RingPresentation:
  return RingPresentation(generators=tuple(gens), relations=tuple(relations))


def _gen(name, degree, kind=Kind.POLYNOMIAL, central=False) -> GeneratorSpec:
  return GeneratorSpec(name=name, degree=degree, kind=kind, commutation=Commutation.CENTRAL if central else Commutation.KOSZUL)


class TestPresentation:
  """Validation of generators and relations."""

  def test_duplicate_names_rejected(self):
    """Test that two generators with one name are rejected."""
    with pytest.raises(PresentationError):
      _ring(_gen("x", 1), _gen("x", 2))

  def test_relation_length_must_match(self):
    """Test that a relation over the wrong number of generators is rejected."""
    with pytest.raises(PresentationError):
      _ring(_gen("x", 2), relations=[Relation(coefficient=1, monomial=(1, 1))])

  def test_degree_zero_polynomial_rejected(self):
    """Test that a polynomial generator in degree 0 is rejected."""
    with pytest.raises(PresentationError):
      _ring(_gen("x", 0))

  def test_odd_koszul_polynomial_rejected(self):
    """Test that x·x = -x·x cannot be silently violated by an odd Koszul polynomial generator."""
    with pytest.raises(PresentationError):
      parse_presentation("gen x deg=1 kind=poly comm=koszul\n")
    ring = parse_presentation("gen x deg=1 kind=poly comm=central\n")
    x = ring.element("x")
    assert multiply(x, x).to_text() == "x^2"

  def test_negative_polynomial_must_be_nilpotent(self):
    """Test that an unbounded negative polynomial generator is rejected unless a power relation kills it."""
    with pytest.raises(PresentationError):
      _ring(_gen("x", -2))
    ring = _ring(_gen("x", -2), relations=[Relation(coefficient=1, monomial=(3,))])
    assert rank_in_degree(ring, -4) == 1
    assert rank_in_degree(ring, -6) == 0

  def test_relations_are_sorted_and_deduplicated(self):
    """Test that relations end up in canonical order regardless of input order."""
    rels = [Relation(coefficient=1, monomial=(1, 1)), Relation(coefficient=1, monomial=(2, 0)), Relation(coefficient=1, monomial=(1, 1))]
    ring = _ring(_gen("x", 2), _gen("y", 4), relations=rels)
    assert [r.monomial for r in ring.relations] == [(2, 0), (1, 1)]

  def test_invalid_generator_name(self):
    """Test that names must be identifiers."""
    with pytest.raises(ValueError):
      _gen("2x", 1)

  def test_relation_cannot_be_unit(self):
    """Test that the unit monomial is not a valid relation."""
    with pytest.raises(ValueError):
      Relation(coefficient=1, monomial=(0, 0))

  def test_unknown_generator(self):
    """Test that parsing an element with an unknown name fails."""
    ring = loop_homology_sphere(3)
    with pytest.raises(UnknownGeneratorError):
      ring.element("z")

  def test_text_round_trip(self):
    """Test that the canonical text form parses back to an equal presentation."""
    ring = loop_homology_sphere(4)
    assert parse_presentation(ring.to_text()) == ring

  def test_parse_reports_line_number(self):
    """Test that malformed presentation text reports its line."""
    with pytest.raises(FormatError, match="line 2"):
      parse_presentation("gen a deg=2 kind=poly comm=koszul\nrel x a\n")

  def test_unit_ring(self):
    """Test that the unit ring is Z in degree 0."""
    ring = unit_ring()
    assert basis_in_degree(ring, 0) == [((), 0)]
    assert basis_in_degree(ring, 1) == []


class TestArithmetic:
  """Normal forms, signs and torsion."""

  @pytest.fixture
  def odd(self) -> RingPresentation:
    return loop_homology_sphere(3)

  @pytest.fixture
  def even(self) -> RingPresentation:
    return loop_homology_sphere(4)

  def test_koszul_sign(self):
    """Test that odd generators anticommute."""
    ring = _ring(_gen("x", 1, Kind.EXTERIOR), _gen("y", 1, Kind.EXTERIOR))
    x, y = ring.generator("x"), ring.generator("y")
    assert multiply(y, x) == -multiply(x, y)
    assert multiply(y, x).to_text() == "-x*y"

  def test_central_generators_commute(self):
    """Test that two central generators commute regardless of degree."""
    ring = _ring(_gen("x", 1, central=True), _gen("y", 1, central=True))
    x, y = ring.generator("x"), ring.generator("y")
    assert multiply(y, x) == multiply(x, y)

  def test_exterior_squares_vanish(self, odd: RingPresentation):
    """Test that an exterior generator squares to zero."""
    a = odd.generator("a")
    assert multiply(a, a).is_zero

  def test_odd_loop_ring_products(self, odd: RingPresentation):
    """Test products in Λ(a) ⊗ Z[u]."""
    assert (odd.element("u") * odd.element("a*u")).to_text() == "a*u^2"
    assert (odd.element("u") * odd.element("a")) == odd.element("a*u")

  def test_even_loop_ring_relations(self, even: RingPresentation):
    """Test a² = 0, ab = 0 and that av is 2-torsion."""
    a, b, v = even.generator("a"), even.generator("b"), even.generator("v")
    assert (a * a).is_zero
    assert (a * b).is_zero
    assert (b * a).is_zero
    assert (a * v * 2).is_zero
    assert not (a * v).is_zero
    assert (a * v * 3) == a * v

  def test_torsion_in_basis(self, even: RingPresentation):
    """Test that basis enumeration reports torsion orders."""
    # deg(a v) = -4 + 6 = 2
    assert basis_in_degree(even, 2) == [((0, 1, 1), 2)]
    assert rank_in_degree(even, 2) == 0
    assert basis_in_degree(even, 6) == [((0, 0, 1), 0)]
    assert basis_in_degree(even, 5) == [((1, 0, 1), 0)]

  def test_to_text_format(self, even: RingPresentation):
    """Test the canonical text form of elements."""
    assert even.element("0").to_text() == "0"
    assert even.element("v^2 + 2*b*v").to_text() == "2*b*v + v^2"
    assert even.element("-v").to_text() == "-v"
    assert even.element("3").to_text() == "3"
    assert even.element("v - v").to_text() == "0"

  def test_normalize_reorders_words(self):
    """Test that normalize sorts letters and tracks signs."""
    ring = _ring(_gen("x", 1, Kind.EXTERIOR), _gen("y", 3, Kind.EXTERIOR), _gen("z", 2))
    assert normalize([(1, "z*y*x")], ring).to_text() == "-x*y*z"
    assert normalize([(1, "y*x"), (1, "x*y")], ring).is_zero

  def test_exponent_bound(self, odd: RingPresentation):
    """Test that exceeding max_exponent raises instead of allocating."""
    small = odd.model_copy(update={"max_exponent": 4})
    with pytest.raises(ExponentOverflowError):
      small.element("u^5")
    u2 = small.element("u^2")
    with pytest.raises(ExponentOverflowError):
      multiply(u2, small.element("u^3"))

  def test_mismatched_presentations(self, odd: RingPresentation, even: RingPresentation):
    """Test that elements of different rings cannot be combined."""
    with pytest.raises(PresentationMismatchError):
      odd.one() + even.one()

  def test_non_enumerable(self):
    """Test that enumeration refuses a degree-zero polynomial generator."""
    ring = RingPresentation.model_construct(generators=(_gen("x", 0),), relations=(), max_exponent=8)
    with pytest.raises(NonEnumerableError):
      basis_in_degree(ring, 0)


class TestBruteForce:
  """Compare products against an independent word-level expansion."""

  @staticmethod
  def _expand(ring: RingPresentation, mx, my):
    """Product of two monomials by writing out the letters and bubble-sorting them."""
    letters = [i for i, e in enumerate(mx) for _ in range(e)] + [i for i, e in enumerate(my) for _ in range(e)]
    sign = 1
    changed = True
    while changed:
      changed = False
      for k in range(len(letters) - 1):
        if letters[k] > letters[k + 1]:
          sign *= ring.swap_sign(letters[k], letters[k + 1])
          letters[k], letters[k + 1] = letters[k + 1], letters[k]
          changed = True
    m = tuple(letters.count(i) for i in range(ring.rank))
    return RingElement.from_terms(ring, {m: sign})

  @pytest.mark.parametrize("n", [3, 4, 5, 6])
  def test_products_match_word_expansion(self, n: int):
    """Test basis products of the loop ring in a window."""
    ring = loop_homology_sphere(n)
    basis = [m for d in range(-2 * n, 3 * n) for m, _ in basis_in_degree(ring, d)]
    for mx, my in itertools.product(basis, repeat=2):
      x, y = RingElement.from_terms(ring, {mx: 1}), RingElement.from_terms(ring, {my: 1})
      assert multiply(x, y) == self._expand(ring, mx, my)

  def test_associativity(self):
    """Test (xy)z = x(yz) on a mixed-parity ring."""
    ring = _ring(_gen("x", 1, Kind.EXTERIOR), _gen("y", 2), _gen("z", 3, Kind.EXTERIOR), _gen("w", 1, central=True))
    basis = [m for d in range(0, 7) for m, _ in basis_in_degree(ring, d)]
    elements = [RingElement.from_terms(ring, {m: 1}) for m in basis]
    for x, y, z in itertools.product(elements[:12], repeat=3):
      assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


class TestTensor:
  def test_renames_colliding_generators(self):
    """Test that the second factor's colliding names get a suffix."""
    t = tensor(loop_homology_sphere(3), loop_homology_sphere(3))
    assert t.names == ("a", "u", "a_2", "u_2")

  def test_signs_cross_factors(self):
    """Test that odd generators from different factors anticommute."""
    t = tensor(loop_homology_sphere(3), loop_homology_sphere(5))
    a, a2 = t.generator("a"), t.generator("a_2")
    assert a2 * a == -(a * a2)


class TestMorphism:
  @pytest.fixture
  def ring(self) -> RingPresentation:
    return loop_homology_sphere(4)

  def test_identity_is_multiplicative(self, ring: RingPresentation):
    """Test that the identity passes the multiplicativity check."""
    report = check_morphism_multiplicative(RingMorphism.identity(ring), (-8, 12))
    assert report.success
    assert report.checked > 0

  def test_degree_mismatch_rejected(self, ring: RingPresentation):
    """Test that an image of the wrong degree is rejected."""
    with pytest.raises(MorphismError):
      RingMorphism.from_mapping(ring, ring, {"b": "b", "a": "a", "v": "b*v"})

  def test_missing_image_rejected(self, ring: RingPresentation):
    """Test that every generator needs an image."""
    with pytest.raises(MorphismError):
      RingMorphism.from_mapping(ring, ring, {"b": "b", "a": "a"})

  def test_relation_witness(self):
    """Test that a map ignoring a torsion relation reports the relation."""
    source = _ring(_gen("x", 2), relations=[Relation(coefficient=2, monomial=(1,))])
    target = _ring(_gen("y", 2))
    f = RingMorphism.from_mapping(source, target, {"x": "y"})
    assert f.relation_witnesses() == ["2*x"]
    assert not f.well_defined
    with pytest.raises(MorphismError) as exc:
      f.check_relations()
    assert exc.value.witness == "2*x"

  def test_non_multiplicative_map_detected(self):
    """Test that x -> 2y is multiplicative but a unit sent to 2 is not."""
    source = _ring(_gen("x", 2))
    target = _ring(_gen("y", 2))
    f = RingMorphism.from_mapping(source, target, {"x": "2*y"})
    report = check_morphism_multiplicative(f, (0, 4))
    assert report.success
    g = RingMorphism.from_mapping(source, target, {"x": "y"}, unit_image=target.element("2"))
    report = check_morphism_multiplicative(g, (0, 4))
    assert ("1", "1") in report.violations
    assert ("x", "x") in report.violations
