"""Catalog of the homology rings of sphere, loop, immersion and knot spaces.

All intersection and loop rings are stored in regraded form (degree shifted by the
dimension of the manifold, so products have degree 0). Pontryagin rings of based
loop spaces use central generators; everything else uses Koszul signs.
"""

from typing import Dict, Callable, Optional
from dataclasses import field, dataclass

from .errors import CatalogError
from .algebra import (
  Kind,
  Relation,
  Commutation,
  RingMorphism,
  GeneratorSpec,
  RingPresentation,
  tensor,
)
from .spectral import Justification


def _gen(name: str, degree: int, kind: Kind, central: bool = False) -> GeneratorSpec:
  return GeneratorSpec(
    name=name,
    degree=degree,
    kind=kind,
    commutation=Commutation.CENTRAL if central else Commutation.KOSZUL,
  )


def _require(n: int, minimum: int, what: str) -> None:
  if n < minimum:
    raise CatalogError(f"{what} needs n >= {minimum}, got {n}")


def loop_homology_sphere(n: int) -> RingPresentation:
  """ℍ*(LSⁿ): Λ(a)⊗ℤ[u] for odd n, (Λ(b)⊗ℤ[a,v])/(a², ab, 2av) for even n."""
  _require(n, 2, "loop_sphere")
  if n % 2:
    return RingPresentation(generators=(_gen("a", -n, Kind.EXTERIOR), _gen("u", n - 1, Kind.POLYNOMIAL)))
  return RingPresentation(
    generators=(
      _gen("b", -1, Kind.EXTERIOR),
      _gen("a", -n, Kind.POLYNOMIAL),
      _gen("v", 2 * n - 2, Kind.POLYNOMIAL),
    ),
    relations=(
      Relation(coefficient=1, monomial=(0, 2, 0)),
      Relation(coefficient=1, monomial=(1, 1, 0)),
      Relation(coefficient=2, monomial=(0, 1, 1)),
    ),
  )


def unit_tangent_ring(n: int) -> RingPresentation:
  """ℍ*(USⁿ) of the unit tangent bundle."""
  _require(n, 3, "unit_tangent")
  if n % 2:
    # Odd n: USⁿ has the homology of Sⁿ × S^{n-1}.
    return RingPresentation(generators=(_gen("a", -n + 1, Kind.EXTERIOR), _gen("b", -n, Kind.EXTERIOR)))
  return RingPresentation(
    generators=(_gen("a", -n + 1, Kind.EXTERIOR), _gen("b", -2 * n + 1, Kind.EXTERIOR)),
    relations=(
      Relation(coefficient=2, monomial=(1, 0)),
      Relation(coefficient=1, monomial=(1, 1)),
    ),
  )


def omega_unit_tangent(n: int) -> RingPresentation:
  """H*(ΩUSⁿ) = ℤ[u, v]/(2u) for even n, with the Pontryagin product."""
  _require(n, 4, "omega_unit_tangent")
  if n % 2:
    raise CatalogError(f"omega_unit_tangent is only available for even n, got {n}")
  return RingPresentation(
    generators=(
      _gen("u", n - 2, Kind.POLYNOMIAL, central=True),
      _gen("v", 2 * n - 2, Kind.POLYNOMIAL, central=True),
    ),
    relations=(Relation(coefficient=2, monomial=(1, 0)),),
  )


def omega_sphere(m: int) -> RingPresentation:
  """H*(ΩS^m) = ℤ[u] with u in degree m-1."""
  _require(m, 2, "omega_sphere")
  return RingPresentation(generators=(_gen("u", m - 1, Kind.POLYNOMIAL, central=True),))


def sphere_intersection_ring(n: int) -> RingPresentation:
  """ℍ*(Sⁿ) = Λ(c) with c the point class in degree -n."""
  _require(n, 1, "sphere")
  return RingPresentation(generators=(_gen("c", -n, Kind.EXTERIOR),))


def imm_prime_ring(n: int) -> RingPresentation:
  """ℍ*(Imm′(S¹, Sⁿ)), the immersions with a fixed basepoint condition removed."""
  _require(n, 3, "imm_prime")
  if n % 2:
    return tensor(sphere_intersection_ring(n), loop_homology_sphere(n - 1))
  return tensor(unit_tangent_ring(n), omega_sphere(n - 1))


def imm_ring(n: int) -> RingPresentation:
  """ℍ*(Imm(S¹, Sⁿ)).

  For even n this is the tensor presentation of ℍ*(USⁿ) and H*(ΩUSⁿ); only ranks
  and torsion orders of it are meaningful, the glued product is not modelled.
  """
  _require(n, 3, "imm")
  if n % 2:
    return tensor(loop_homology_sphere(n), loop_homology_sphere(n - 1))
  return tensor(unit_tangent_ring(n), omega_unit_tangent(n))


def inclusion_morphism(n: int) -> RingMorphism:
  """The map ℍ*(Imm′) -> ℍ*(Imm) induced by the inclusion."""
  _require(n, 3, "inclusion")
  source, target = imm_prime_ring(n), imm_ring(n)
  if n % 2:
    # Constant loops on the Sⁿ factor, identity on ℍ*(LS^{n-1}).
    mapping = {"c": "a", "b": "b", "a": "a_2", "v": "v"}
  else:
    # Identity on ℍ*(USⁿ), fibre inclusion ΩS^{n-1} -> ΩUSⁿ.
    mapping = {"a": "a", "b": "b", "u": "u"}
  return RingMorphism.from_mapping(source, target, mapping)


def imm_euclidean(n: int) -> RingPresentation:
  """ℍ*(Imm(S¹, ℝ^{n+1})) ≅ ℍ*(LSⁿ) through the 1-jet map."""
  return loop_homology_sphere(n)


def imm_long_euclidean(n: int) -> RingPresentation:
  """H*(Imm^l(ℝ, ℝ^{n+1})) ≅ H*(ΩSⁿ); concatenation becomes the Pontryagin product."""
  return omega_sphere(n)


def emb_window(n: int) -> RingPresentation:
  """Low-degree window of ℍ*(Emb(S¹, Sⁿ)): ℍ*(USⁿ) ⊗ Λ(k) with k in degree 2n-6.

  Valid below total degree 4n-12.
  """
  _require(n, 5, "emb_window")
  return tensor(
    unit_tangent_ring(n),
    RingPresentation(generators=(_gen("k", 2 * n - 6, Kind.EXTERIOR, central=True),)),
  )


RING_CONSTRUCTORS: Dict[str, Callable[[int], RingPresentation]] = {
  "loop_sphere": loop_homology_sphere,
  "unit_tangent": unit_tangent_ring,
  "omega_unit_tangent": omega_unit_tangent,
  "omega_sphere": omega_sphere,
  "sphere": sphere_intersection_ring,
  "imm_prime": imm_prime_ring,
  "imm": imm_ring,
  "imm_euclidean": imm_euclidean,
  "imm_long_euclidean": imm_long_euclidean,
  "emb_window": emb_window,
}


def get_ring(key: str, n: int) -> RingPresentation:
  """Look up a catalog ring by key."""
  try:
    constructor = RING_CONSTRUCTORS[key]
  except KeyError:
    raise CatalogError(f"Unknown catalog key: {key!r} (known: {', '.join(RING_CONSTRUCTORS)})") from None
  return constructor(n)


def available_rings(n: int) -> Dict[str, RingPresentation]:
  """Every catalog ring defined for n, in registry order."""
  rings = {}
  for key, constructor in RING_CONSTRUCTORS.items():
    try:
      rings[key] = constructor(n)
    except CatalogError:
      continue
  return rings


@dataclass(frozen=True)
class FibrationPreset:
  """A Serre fibration F -> E -> B with what is known about its spectral sequence."""

  key: str
  n: int
  base: RingPresentation
  fiber: RingPresentation
  fiber_shift: int = 0
  permanence: Dict[str, Justification] = field(default_factory=dict)
  claimed: Optional[RingPresentation] = None
  description: str = ""


def fibration(key: str, n: int) -> FibrationPreset:
  """Named fibrations whose spectral sequences the checker can certify."""
  if key == "imm_prime":
    _require(n, 3, "imm_prime fibration")
    if n % 2:
      return FibrationPreset(
        key,
        n,
        base=sphere_intersection_ring(n),
        fiber=loop_homology_sphere(n - 1),
        fiber_shift=n - 1,
        # A nowhere-zero vector field on odd spheres gives a section; it carries the bottom row.
        permanence={"a": Justification.SECTION},
        claimed=imm_prime_ring(n),
        description=f"Imm'_* -> Imm' -> S^{n}, fiber H_*(LS^{n - 1})",
      )
    return FibrationPreset(
      key,
      n,
      base=unit_tangent_ring(n),
      fiber=omega_sphere(n - 1),
      # d_r(u) has non-empty targets on this page; its vanishing is quoted, not derived.
      permanence={"a": Justification.SECTION, "b": Justification.SECTION, "u": Justification.ASSUMED},
      claimed=imm_prime_ring(n),
      description=f"Imm'_*,v -> Imm' -> US^{n}, fiber OmegaS^{n - 1}",
    )
  if key == "imm":
    _require(n, 4, "imm fibration")
    if n % 2:
      raise CatalogError(f"imm fibration is only available for even n, got {n}")
    return FibrationPreset(
      key,
      n,
      base=unit_tangent_ring(n),
      fiber=omega_unit_tangent(n),
      permanence={"a": Justification.SECTION, "b": Justification.SECTION, "u": Justification.ASSUMED, "v": Justification.ASSUMED},
      claimed=imm_ring(n),
      description=f"OmegaUS^{n} -> LUS^{n} -> US^{n}",
    )
  if key == "loop_sphere":
    _require(n, 2, "loop_sphere fibration")
    return FibrationPreset(
      key,
      n,
      base=sphere_intersection_ring(n),
      fiber=omega_sphere(n),
      # Odd n: d_n(u) is a multiple of the Euler class of Sⁿ, which vanishes. Even n is left to the checker.
      permanence={"c": Justification.SECTION, "u": Justification.ASSUMED} if n % 2 else {"c": Justification.SECTION},
      # Even n picks up 2-torsion the E2 page does not show.
      claimed=loop_homology_sphere(n) if n % 2 else None,
      description=f"OmegaS^{n} -> LS^{n} -> S^{n}",
    )
  raise CatalogError(f"Unknown fibration: {key!r} (known: imm_prime, imm, loop_sphere)")


FIBRATION_KEYS = ("imm_prime", "imm", "loop_sphere")
