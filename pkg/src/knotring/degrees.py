"""Degree shifts, regrading and the degree laws of the knot and immersion products."""

from enum import Enum
from typing import Dict, List, Callable
from dataclasses import dataclass


class Convention(str, Enum):
  RAW = "raw"
  REGRADED = "regraded"


class ShiftSign(str, Enum):
  """+k(n-3) is the default; the opposite sign is kept so the alternative can be checked."""

  PLUS = "plus"
  MINUS = "minus"


def product_shift(n: int) -> int:
  """Degree of the raw product on H_*(Emb) and H_*(Imm′)."""
  return -(2 * n - 1)


def regrade(deg: int, n: int) -> int:
  """Raw degree -> regraded degree (ℍ_* = H_{*+2n-1})."""
  return deg - (2 * n - 1)


def unregrade(deg: int, n: int) -> int:
  return deg + (2 * n - 1)


def product_degree(deg_x: int, deg_y: int, n: int, convention: Convention = Convention.RAW) -> int:
  if convention == Convention.REGRADED:
    return deg_x + deg_y
  return deg_x + deg_y + product_shift(n)


def gysin_shift(k: int, n: int) -> int:
  """Dimension of the (S^{n-3})^k fibre over the space of k-singular knots."""
  if k < 0:
    raise ValueError(f"k must be non-negative, got {k}")
  return k * (n - 3)


def desingularization_shift(k: int, n: int, sign: ShiftSign = ShiftSign.PLUS) -> int:
  """Shift of σ_k: H_*(Imm′_k) -> H_{*+k(n-3)}(Emb); the resolution Σ itself preserves degree."""
  shift = gysin_shift(k, n)
  return shift if sign == ShiftSign.PLUS else -shift


def check_compatibility_degrees(
  k: int, l: int, deg_x: int, deg_y: int, n: int, sign: ShiftSign = ShiftSign.PLUS
) -> bool:
  """deg μ_em(σ_k x, σ_l y) == deg σ_{k+l}(μ^{k,l}(x, y))."""
  lhs = product_degree(
    deg_x + desingularization_shift(k, n, sign),
    deg_y + desingularization_shift(l, n, sign),
    n,
  )
  rhs = product_degree(deg_x, deg_y, n) + desingularization_shift(k + l, n, sign)
  return lhs == rhs


def check_associativity_degrees(deg_x: int, deg_y: int, deg_z: int, n: int) -> bool:
  left = product_degree(product_degree(deg_x, deg_y, n), deg_z, n)
  right = product_degree(deg_x, product_degree(deg_y, deg_z, n), n)
  return left == right


@dataclass(frozen=True)
class SingularClass:
  """A homogeneous class of the singular-knot algebra ⊕_k H_*(Imm′_k)."""

  k: int
  degree: int


def singular_product(x: SingularClass, y: SingularClass, n: int) -> SingularClass:
  """μ^{k,l}: adds the number of double points, shifts degree like the knot product."""
  return SingularClass(x.k + y.k, product_degree(x.degree, y.degree, n))


@dataclass(frozen=True)
class GradedMapSpec:
  name: str
  source: str
  target: str
  shift: Callable[[int, int], int]

  def __call__(self, n: int, k: int = 0) -> int:
    return self.shift(n, k)


GRADED_MAPS: Dict[str, GradedMapSpec] = {
  spec.name: spec
  for spec in (
    GradedMapSpec("mu_em", "Emb x Emb", "Emb", lambda n, k: product_shift(n)),
    GradedMapSpec("mu_im", "Imm x Imm", "Imm", lambda n, k: product_shift(n)),
    GradedMapSpec("gysin", "Q_k", "Imm'_k", lambda n, k: gysin_shift(k, n)),
    GradedMapSpec("sigma", "Imm'_k", "Emb", lambda n, k: desingularization_shift(k, n)),
    GradedMapSpec("regrade", "H_*", "HH_*", lambda n, k: -(2 * n - 1)),
  )
}


def shift_table(ns: List[int], ks: List[int]) -> str:
  """One line per (map, n, k) with the degree shift; k only varies for maps that use it."""
  lines = []
  for name, spec in GRADED_MAPS.items():
    uses_k = name in ("gysin", "sigma")
    for n in ns:
      for k in ks if uses_k else [0]:
        label = f"{name} n={n}" + (f" k={k}" if uses_k else "")
        lines.append(f"{label} {spec(n, k):+d}")
  return "".join(line + "\n" for line in lines)
