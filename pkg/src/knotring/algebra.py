"""Exact arithmetic in finitely presented graded rings.

Rings are presented by graded generators (exterior or polynomial, with Koszul or
central commutation) and monomial-torsion relations c·m = 0. Every ring of the
catalog fits this shape, so normal forms need no Gröbner machinery: a monomial is
an exponent vector in generator order, a relation with c = 1 kills every monomial
it divides, and a relation with c >= 2 makes every monomial it divides c-torsion.
"""

import re
import itertools
from enum import Enum
from math import gcd
from typing import Dict, List, Tuple, Union, Mapping, Iterable, Optional, Sequence
from functools import cached_property
from dataclasses import field, dataclass

from pydantic import Field, BaseModel, ConfigDict, field_validator, model_validator

from .config import DEFAULT_MAX_EXPONENT
from .errors import (
  FormatError,
  MorphismError,
  NonEnumerableError,
  PresentationError,
  ExponentOverflowError,
  UnknownGeneratorError,
  PresentationMismatchError,
)

Monomial = Tuple[int, ...]
Word = Sequence[Tuple[str, int]]

_NAME_PATTERN = re.compile(r"^[A-Za-z][A-Za-z0-9_']*$")


class Kind(str, Enum):
  EXTERIOR = "ext"
  POLYNOMIAL = "poly"


class Commutation(str, Enum):
  KOSZUL = "koszul"
  CENTRAL = "central"


class GeneratorSpec(BaseModel):
  """A graded generator; exterior generators square to zero."""

  model_config = ConfigDict(frozen=True)

  name: str
  degree: int
  kind: Kind = Kind.POLYNOMIAL
  commutation: Commutation = Commutation.KOSZUL

  @field_validator("name")
  @classmethod
  def validate_name(cls, v: str) -> str:
    if not _NAME_PATTERN.match(v):
      raise ValueError(f"invalid generator name {v!r}")
    return v


class Relation(BaseModel):
  """c·m = 0; c = 1 kills m, c >= 2 makes m (and its multiples) c-torsion."""

  model_config = ConfigDict(frozen=True)

  coefficient: int = Field(ge=1)
  monomial: Monomial

  @field_validator("monomial")
  @classmethod
  def validate_monomial(cls, v: Monomial) -> Monomial:
    if any(e < 0 for e in v):
      raise ValueError("relation exponents must be non-negative")
    if not any(v):
      raise ValueError("relation monomial must not be the unit")
    return tuple(v)


def _divides(m: Monomial, n: Monomial) -> bool:
  return all(a <= b for a, b in zip(m, n))


def _monomial_key(m: Monomial) -> Tuple[int, ...]:
  # Canonical order: descending lexicographic in generator order.
  return tuple(-e for e in m)


class RingPresentation(BaseModel):
  """Generators plus monomial-torsion relations, validated for finite enumeration."""

  model_config = ConfigDict(frozen=True)

  generators: Tuple[GeneratorSpec, ...] = ()
  relations: Tuple[Relation, ...] = ()
  max_exponent: int = Field(default=DEFAULT_MAX_EXPONENT, ge=1)

  @model_validator(mode="after")
  def validate_presentation(self) -> "RingPresentation":
    names = [g.name for g in self.generators]
    if len(set(names)) != len(names):
      raise PresentationError(f"duplicate generator names in {names}")
    for rel in self.relations:
      if len(rel.monomial) != len(self.generators):
        raise PresentationError(f"relation {rel.monomial} does not match {len(self.generators)} generators")
    for i, g in enumerate(self.generators):
      if g.kind == Kind.EXTERIOR:
        continue
      if g.degree % 2 and g.commutation == Commutation.KOSZUL:
        raise PresentationError(f"polynomial generator {g.name} has odd degree; mark it central or exterior")
      if g.degree == 0:
        raise PresentationError(f"polynomial generator {g.name} of degree 0 has no finite degree enumeration")
      if g.degree < 0 and self._power_bound(i) is None:
        raise PresentationError(f"negative-degree polynomial generator {g.name} is not nilpotent")
    ordered = tuple(sorted(set(self.relations), key=lambda r: (_monomial_key(r.monomial), r.coefficient)))
    if ordered != self.relations:
      object.__setattr__(self, "relations", ordered)
    return self

  def _power_bound(self, i: int) -> Optional[int]:
    """Largest surviving exponent of generator i from a pure-power c=1 relation."""
    best = None
    for rel in self.relations:
      if rel.coefficient != 1:
        continue
      if all(e == 0 for j, e in enumerate(rel.monomial) if j != i):
        k = rel.monomial[i] - 1
        best = k if best is None else min(best, k)
    return best

  @cached_property
  def names(self) -> Tuple[str, ...]:
    return tuple(g.name for g in self.generators)

  @cached_property
  def name_index(self) -> Dict[str, int]:
    return {name: i for i, name in enumerate(self.names)}

  def index(self, name: str) -> int:
    try:
      return self.name_index[name]
    except KeyError:
      raise UnknownGeneratorError(name) from None

  @property
  def rank(self) -> int:
    return len(self.generators)

  def degree(self, m: Monomial) -> int:
    return sum(e * g.degree for e, g in zip(m, self.generators))

  def swap_sign(self, i: int, j: int) -> int:
    """Sign picked up when generator i moves past generator j."""
    gi, gj = self.generators[i], self.generators[j]
    if gi.commutation == Commutation.CENTRAL and gj.commutation == Commutation.CENTRAL:
      return 1
    return -1 if (gi.degree * gj.degree) % 2 else 1

  def is_zero_monomial(self, m: Monomial) -> bool:
    for e, g in zip(m, self.generators):
      if g.kind == Kind.EXTERIOR and e > 1:
        return True
    return any(rel.coefficient == 1 and _divides(rel.monomial, m) for rel in self.relations)

  def torsion_order(self, m: Monomial) -> int:
    """0 for a free monomial, otherwise the gcd of the applicable torsion coefficients."""
    order = 0
    for rel in self.relations:
      if rel.coefficient >= 2 and _divides(rel.monomial, m):
        order = gcd(order, rel.coefficient)
    return order

  def unit_monomial(self) -> Monomial:
    return (0,) * self.rank

  def one(self) -> "RingElement":
    return RingElement.from_terms(self, {self.unit_monomial(): 1})

  def zero(self) -> "RingElement":
    return RingElement(self, ())

  def generator(self, name: str) -> "RingElement":
    m = [0] * self.rank
    m[self.index(name)] = 1
    return RingElement.from_terms(self, {tuple(m): 1})

  def element(self, text: str) -> "RingElement":
    """Parse an element such as '2*a*v + v^2' or '-u'."""
    return parse_element(text, self)

  def monomial_text(self, m: Monomial) -> str:
    factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(self.names, m) if e]
    return "*".join(factors) if factors else "1"

  def to_text(self) -> str:
    """Canonical text form: one `gen` line per generator, one `rel` line per relation."""
    lines = [f"gen {g.name} deg={g.degree} kind={g.kind.value} comm={g.commutation.value}" for g in self.generators]
    lines += [f"rel {rel.coefficient} {self.monomial_text(rel.monomial)}" for rel in self.relations]
    return "".join(line + "\n" for line in lines)


def unit_ring() -> RingPresentation:
  """The ring Z with no generators, the unit for tensor."""
  return RingPresentation()


def parse_word(text: str) -> List[Tuple[str, int]]:
  """Parse 'a^2*u' into [('a', 2), ('u', 1)]; '1' is the empty word."""
  text = text.strip()
  if text == "1":
    return []
  word = []
  for factor in text.split("*"):
    factor = factor.strip()
    name, _, exp = factor.partition("^")
    if not _NAME_PATTERN.match(name):
      raise FormatError(f"invalid monomial factor {factor!r}")
    try:
      e = int(exp) if exp else 1
    except ValueError:
      raise FormatError(f"invalid exponent in {factor!r}") from None
    if e < 0:
      raise FormatError(f"negative exponent in {factor!r}")
    word.append((name, e))
  return word


def parse_presentation(text: str) -> RingPresentation:
  """Parse the `gen`/`rel` text format."""
  generators: List[GeneratorSpec] = []
  raw_relations: List[Tuple[int, int, List[Tuple[str, int]]]] = []
  for number, line in enumerate(text.splitlines(), start=1):
    line = line.strip()
    if not line or line.startswith("#"):
      continue
    head, *rest = line.split()
    if head == "gen":
      if len(rest) != 4:
        raise FormatError("expected: gen <name> deg=<int> kind=<ext|poly> comm=<koszul|central>", number)
      fields = dict(item.partition("=")[::2] for item in rest[1:])
      try:
        generators.append(
          GeneratorSpec(name=rest[0], degree=int(fields["deg"]), kind=Kind(fields["kind"]), commutation=Commutation(fields["comm"]))
        )
      except (KeyError, ValueError) as e:
        raise FormatError(f"bad generator line: {e}", number) from None
    elif head == "rel":
      if len(rest) != 2:
        raise FormatError("expected: rel <c> <monomial>", number)
      try:
        c = int(rest[0])
      except ValueError:
        raise FormatError(f"bad relation coefficient {rest[0]!r}", number) from None
      raw_relations.append((number, c, parse_word(rest[1])))
    else:
      raise FormatError(f"unknown line type {head!r}", number)
  index = {g.name: i for i, g in enumerate(generators)}
  relations = []
  for number, c, word in raw_relations:
    m = [0] * len(generators)
    for name, e in word:
      if name not in index:
        raise FormatError(f"relation uses unknown generator {name!r}", number)
      m[index[name]] += e
    try:
      relations.append(Relation(coefficient=c, monomial=tuple(m)))
    except ValueError as e:
      raise FormatError(f"bad relation: {e}", number) from None
  return RingPresentation(generators=tuple(generators), relations=tuple(relations))


@dataclass(frozen=True)
class RingElement:
  """Integer combination of normal-form monomials; immutable and hashable."""

  presentation: RingPresentation
  terms: Tuple[Tuple[Monomial, int], ...] = ()

  @classmethod
  def from_terms(cls, presentation: RingPresentation, terms: Mapping[Monomial, int]) -> "RingElement":
    """Build from normal-order monomials; drops zero monomials and reduces torsion."""
    reduced = []
    for m, c in terms.items():
      if c == 0 or presentation.is_zero_monomial(m):
        continue
      order = presentation.torsion_order(m)
      if order:
        c %= order
        if c == 0:
          continue
      reduced.append((tuple(m), c))
    reduced.sort(key=lambda item: _monomial_key(item[0]))
    return cls(presentation, tuple(reduced))

  @property
  def is_zero(self) -> bool:
    return not self.terms

  def degrees(self) -> List[int]:
    return sorted({self.presentation.degree(m) for m, _ in self.terms})

  def _check_same(self, other: "RingElement") -> None:
    if other.presentation is not self.presentation and other.presentation != self.presentation:
      raise PresentationMismatchError("elements belong to different presentations")

  def __add__(self, other: "RingElement") -> "RingElement":
    self._check_same(other)
    acc = dict(self.terms)
    for m, c in other.terms:
      acc[m] = acc.get(m, 0) + c
    return RingElement.from_terms(self.presentation, acc)

  def __neg__(self) -> "RingElement":
    return self.scale(-1)

  def __sub__(self, other: "RingElement") -> "RingElement":
    return self + (-other)

  def __mul__(self, other: Union["RingElement", int]) -> "RingElement":
    if isinstance(other, int):
      return self.scale(other)
    return multiply(self, other)

  def __rmul__(self, other: int) -> "RingElement":
    return self.scale(other)

  def scale(self, k: int) -> "RingElement":
    return RingElement.from_terms(self.presentation, {m: k * c for m, c in self.terms})

  def to_text(self) -> str:
    if not self.terms:
      return "0"
    parts = []
    for i, (m, c) in enumerate(self.terms):
      mono = self.presentation.monomial_text(m)
      body = mono if abs(c) == 1 and mono != "1" else (str(abs(c)) if mono == "1" else f"{abs(c)}*{mono}")
      if i == 0:
        parts.append(f"-{body}" if c < 0 else body)
      else:
        parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)

  def __str__(self) -> str:
    return self.to_text()


def _order_word(presentation: RingPresentation, letters: List[int]) -> Tuple[int, Monomial]:
  """Insertion-sort letters into generator order, tracking the commutation sign."""
  sign = 1
  letters = list(letters)
  for k in range(1, len(letters)):
    j = k
    while j > 0 and letters[j - 1] > letters[j]:
      sign *= presentation.swap_sign(letters[j - 1], letters[j])
      letters[j - 1], letters[j] = letters[j], letters[j - 1]
      j -= 1
  m = [0] * presentation.rank
  for i in letters:
    m[i] += 1
  return sign, tuple(m)


def normalize(raw_terms: Iterable[Tuple[int, Union[str, Word]]], presentation: RingPresentation) -> RingElement:
  """Normal form of a sum of raw words c·g1^e1·g2^e2·… in arbitrary order."""
  acc: Dict[Monomial, int] = {}
  for coefficient, word in raw_terms:
    if isinstance(word, str):
      word = parse_word(word)
    letters: List[int] = []
    for name, e in word:
      if e > presentation.max_exponent:
        raise ExponentOverflowError(f"exponent {e} of {name} exceeds the bound {presentation.max_exponent}")
      letters.extend([presentation.index(name)] * e)
    if any(c > presentation.max_exponent for c in _counts(letters, presentation.rank)):
      raise ExponentOverflowError(f"exponent exceeds the bound {presentation.max_exponent}")
    if presentation.is_zero_monomial(tuple(_counts(letters, presentation.rank))):
      continue
    sign, m = _order_word(presentation, letters)
    acc[m] = acc.get(m, 0) + sign * coefficient
  return RingElement.from_terms(presentation, acc)


def _counts(letters: List[int], rank: int) -> List[int]:
  counts = [0] * rank
  for i in letters:
    counts[i] += 1
  return counts


def _merge_sign(presentation: RingPresentation, x: Monomial, y: Monomial) -> int:
  """Sign of x·y -> normal order: each letter of y passes the later letters of x."""
  sign = 1
  for i, ei in enumerate(x):
    if not ei:
      continue
    for j in range(i):
      ej = y[j]
      if ej and (ei * ej) % 2 and presentation.swap_sign(i, j) < 0:
        sign = -sign
  return sign


def multiply(x: RingElement, y: RingElement, presentation: Optional[RingPresentation] = None) -> RingElement:
  """Distributed product of two normal-form elements."""
  pres = presentation or x.presentation
  for operand in (x, y):
    if operand.presentation is not pres and operand.presentation != pres:
      raise PresentationMismatchError("operands do not belong to the given presentation")
  acc: Dict[Monomial, int] = {}
  for mx, cx in x.terms:
    for my, cy in y.terms:
      m = tuple(a + b for a, b in zip(mx, my))
      if any(e > pres.max_exponent for e in m):
        raise ExponentOverflowError(f"product exponent exceeds the bound {pres.max_exponent}")
      if pres.is_zero_monomial(m):
        continue
      acc[m] = acc.get(m, 0) + _merge_sign(pres, mx, my) * cx * cy
  return RingElement.from_terms(pres, acc)


def exponent_bounds(presentation: RingPresentation, d: int) -> List[int]:
  """Per-generator exponent bounds sufficient to reach every monomial of degree d."""
  bounds: List[Optional[int]] = []
  neg_floor = 0
  for i, g in enumerate(presentation.generators):
    if g.kind == Kind.EXTERIOR:
      bounds.append(1)
    elif g.degree < 0:
      b = presentation._power_bound(i)
      if b is None:
        raise NonEnumerableError(f"generator {g.name} has unbounded negative degree")
      bounds.append(b)
    elif g.degree == 0:
      raise NonEnumerableError(f"generator {g.name} has degree 0")
    else:
      bounds.append(None)
    if g.degree < 0:
      neg_floor += bounds[-1] * g.degree
  budget = d - neg_floor
  result = []
  for g, b in zip(presentation.generators, bounds):
    if b is None:
      b = max(0, budget // g.degree) if budget >= 0 else 0
      b = min(b, presentation.max_exponent)
    result.append(b)
  return result


def basis_in_degree(presentation: RingPresentation, d: int) -> List[Tuple[Monomial, int]]:
  """Normal-form monomials of degree d with their torsion order (0 = free)."""
  bounds = exponent_bounds(presentation, d)
  degrees = [g.degree for g in presentation.generators]
  found = []
  for m in itertools.product(*(range(b + 1) for b in bounds)):
    if sum(e * deg for e, deg in zip(m, degrees)) != d:
      continue
    if presentation.is_zero_monomial(m):
      continue
    found.append((m, presentation.torsion_order(m)))
  found.sort(key=lambda item: _monomial_key(item[0]))
  return found


def rank_in_degree(presentation: RingPresentation, d: int) -> int:
  """Number of free basis monomials in degree d."""
  return sum(1 for _, order in basis_in_degree(presentation, d) if order == 0)


def tensor(a: RingPresentation, b: RingPresentation) -> RingPresentation:
  """Graded tensor product; colliding names of the second factor get a numeric suffix."""
  taken = set(a.names)
  renamed = []
  for g in b.generators:
    name = g.name
    suffix = 2
    while name in taken:
      name = f"{g.name}_{suffix}"
      suffix += 1
    taken.add(name)
    renamed.append(g.model_copy(update={"name": name}))
  pad_a, pad_b = (0,) * b.rank, (0,) * a.rank
  relations = [Relation(coefficient=r.coefficient, monomial=r.monomial + pad_a) for r in a.relations]
  relations += [Relation(coefficient=r.coefficient, monomial=pad_b + r.monomial) for r in b.relations]
  return RingPresentation(
    generators=a.generators + tuple(renamed),
    relations=tuple(relations),
    max_exponent=max(a.max_exponent, b.max_exponent),
  )


@dataclass(frozen=True)
class RingMorphism:
  """Multiplicative map given on generators; the unit goes to unit_image (default 1)."""

  source: RingPresentation
  target: RingPresentation
  images: Tuple[Tuple[str, RingElement], ...]
  unit_image: Optional[RingElement] = None

  def __post_init__(self):
    mapped = dict(self.images)
    for g in self.source.generators:
      if g.name not in mapped:
        raise MorphismError(f"no image given for generator {g.name}")
      image = mapped[g.name]
      if image.presentation != self.target:
        raise MorphismError(f"image of {g.name} is not an element of the target")
      if any(d != g.degree for d in image.degrees()):
        raise MorphismError(f"image of {g.name} does not have degree {g.degree}")
    extra = set(mapped) - set(self.source.names)
    if extra:
      raise UnknownGeneratorError(sorted(extra)[0])

  @classmethod
  def from_mapping(
    cls,
    source: RingPresentation,
    target: RingPresentation,
    mapping: Mapping[str, Union[str, RingElement]],
    unit_image: Optional[RingElement] = None,
  ) -> "RingMorphism":
    images = []
    for g in source.generators:
      value = mapping.get(g.name)
      if value is None:
        raise MorphismError(f"no image given for generator {g.name}")
      images.append((g.name, target.element(value) if isinstance(value, str) else value))
    return cls(source, target, tuple(images), unit_image)

  @classmethod
  def identity(cls, presentation: RingPresentation) -> "RingMorphism":
    return cls.from_mapping(presentation, presentation, {name: presentation.generator(name) for name in presentation.names})

  @classmethod
  def zero(cls, source: RingPresentation, target: RingPresentation) -> "RingMorphism":
    return cls.from_mapping(source, target, {name: target.zero() for name in source.names}, unit_image=target.zero())

  @cached_property
  def _image_list(self) -> List[RingElement]:
    mapped = dict(self.images)
    return [mapped[name] for name in self.source.names]

  def image_of_monomial(self, m: Monomial) -> RingElement:
    result = self.unit_image if self.unit_image is not None else self.target.one()
    for image, e in zip(self._image_list, m):
      for _ in range(e):
        result = multiply(result, image, self.target)
    return result

  def relation_witnesses(self) -> List[str]:
    """Relations (implicit exterior squares included) whose image does not vanish."""
    witnesses = []
    checks = [(r.coefficient, r.monomial) for r in self.source.relations]
    for i, g in enumerate(self.source.generators):
      if g.kind == Kind.EXTERIOR:
        m = [0] * self.source.rank
        m[i] = 2
        checks.append((1, tuple(m)))
    for c, m in checks:
      result = self.target.one() if self.unit_image is None else self.unit_image
      for image, e in zip(self._image_list, m):
        for _ in range(e):
          result = multiply(result, image, self.target)
      if not result.scale(c).is_zero:
        text = self.source.monomial_text(m)
        witnesses.append(text if c == 1 else f"{c}*{text}")
    return witnesses

  def check_relations(self) -> None:
    witnesses = self.relation_witnesses()
    if witnesses:
      raise MorphismError("morphism is not well defined", witnesses[0])

  @cached_property
  def well_defined(self) -> bool:
    return not self.relation_witnesses()


def apply_morphism(f: RingMorphism, x: RingElement) -> RingElement:
  """Multiplicative extension of f applied to x, normalized in the target."""
  if x.presentation != f.source:
    raise PresentationMismatchError("element is not in the source of the morphism")
  if not f.well_defined:
    f.check_relations()
  result = f.target.zero()
  for m, c in x.terms:
    result = result + f.image_of_monomial(m).scale(c)
  return result


@dataclass
class MultiplicativityReport:
  """Outcome of checking f(x·y) = f(x)·f(y) over a degree window."""

  window: Tuple[int, int]
  checked: int = 0
  violations: List[Tuple[str, str]] = field(default_factory=list)
  relation_witnesses: List[str] = field(default_factory=list)

  @property
  def success(self) -> bool:
    return not self.violations and not self.relation_witnesses


def check_morphism_multiplicative(f: RingMorphism, degree_window: Tuple[int, int]) -> MultiplicativityReport:
  """Check f on all basis pairs whose degrees and total degree lie in the window."""
  lo, hi = degree_window
  report = MultiplicativityReport(window=(lo, hi), relation_witnesses=f.relation_witnesses())
  source, target = f.source, f.target

  if f.image_of_monomial(source.unit_monomial()) != target.one():
    report.violations.append(("1", "1"))

  basis = {d: [m for m, _ in basis_in_degree(source, d)] for d in range(lo, hi + 1)}
  image_cache: Dict[Monomial, RingElement] = {}

  def image(m: Monomial) -> RingElement:
    if m not in image_cache:
      image_cache[m] = f.image_of_monomial(m)
    return image_cache[m]

  for dx, xs in basis.items():
    for dy, ys in basis.items():
      if not lo <= dx + dy <= hi:
        continue
      for mx in xs:
        x = RingElement.from_terms(source, {mx: 1})
        for my in ys:
          y = RingElement.from_terms(source, {my: 1})
          report.checked += 1
          product = multiply(x, y, source)
          lhs = target.zero()
          for m, c in product.terms:
            lhs = lhs + image(m).scale(c)
          rhs = multiply(image(mx), image(my), target)
          if lhs != rhs:
            report.violations.append((source.monomial_text(mx), source.monomial_text(my)))
  return report


def parse_element(text: str, presentation: RingPresentation) -> RingElement:
  """Parse '2*a*v + v^2 - u' style input into a normal-form element."""
  text = text.strip()
  if text == "0":
    return presentation.zero()
  tokens = re.split(r"\s*([+-])\s*", text)
  if tokens and tokens[0] == "":
    tokens = tokens[1:]
  else:
    tokens = ["+"] + tokens
  raw = []
  for sign_token, body in zip(tokens[::2], tokens[1::2]):
    if not body:
      raise FormatError(f"malformed element {text!r}")
    sign = -1 if sign_token == "-" else 1
    factors = body.split("*")
    coefficient = 1
    if factors[0].strip().isdigit():
      coefficient = int(factors[0])
      factors = factors[1:]
    word = parse_word("*".join(factors)) if factors else []
    raw.append((sign * coefficient, word))
  return normalize(raw, presentation)
