"""Bigraded bookkeeping for multiplicative homology Serre spectral sequences.

Differentials are never computed, only obstructed: a generator survives to E∞ when
every possible target of d_r is empty, or when a structural argument (a section of
the fibration, or an assumption recorded as such) says so. Regraded base degrees
are used for p: the fundamental class of the base is column 0 and the point class
the lowest column. A base generator sits on the row of the fibre unit, a fibre
generator in column 0, so every entry is a product of generators whose bidegrees
add up to its own.
"""

from enum import Enum
from math import gcd
from typing import Dict, List, Tuple, Mapping, Optional
from dataclasses import field, dataclass

from .config import WINDOW_P_FACTOR, WINDOW_Q_FACTOR
from .errors import FormatError, FiberGradingError, WindowTooSmallError, GeneratorPlacementError
from .algebra import RingPresentation, tensor, parse_word, basis_in_degree, exponent_bounds

Bidegree = Tuple[int, int]


class Justification(str, Enum):
  SECTION = "section"
  DEGREE = "degree"
  ASSUMED = "assumed"


class Role(str, Enum):
  BASE = "base"
  FIBER = "fiber"


@dataclass(frozen=True)
class Window:
  p_lo: int
  p_hi: int
  q_lo: int
  q_hi: int

  def __contains__(self, pq: Bidegree) -> bool:
    p, q = pq
    return self.p_lo <= p <= self.p_hi and self.q_lo <= q <= self.q_hi

  @classmethod
  def default(cls, n: int, fiber_shift: int = 0) -> "Window":
    return cls(-WINDOW_P_FACTOR * n, 0, 0, WINDOW_Q_FACTOR * n + fiber_shift)


@dataclass(frozen=True)
class TableGenerator:
  name: str
  role: Role
  p: int
  q: int


@dataclass(frozen=True)
class Entry:
  """One basis class of E²_{p,q}: a monomial text with its torsion order (0 = free)."""

  monomial: str
  order: int = 0


@dataclass
class BigradedTable:
  window: Window
  entries: Dict[Bidegree, List[Entry]] = field(default_factory=dict)
  generators: List[TableGenerator] = field(default_factory=list)
  permanence: Dict[str, Justification] = field(default_factory=dict)
  fiber_shift: int = 0

  def add_entry(self, p: int, q: int, entry: Entry) -> None:
    if (p, q) not in self.window:
      raise FormatError(f"entry ({p},{q}) outside the window")
    bucket = self.entries.setdefault((p, q), [])
    if any(e.monomial == entry.monomial for e in bucket):
      raise FormatError(f"duplicate entry {entry.monomial} at ({p},{q})")
    bucket.append(entry)

  def at(self, p: int, q: int) -> List[Entry]:
    return self.entries.get((p, q), [])

  @property
  def base_min(self) -> int:
    """Lowest occupied column; nothing lives to its left."""
    columns = [p for (p, _), bucket in self.entries.items() if bucket]
    return min(columns) if columns else self.window.p_lo

  def total_degree(self, p: int, q: int) -> int:
    return p + q - self.fiber_shift

  def to_text(self) -> str:
    w = self.window
    lines = [f"table p={w.p_lo}..{w.p_hi} q={w.q_lo}..{w.q_hi} shift={self.fiber_shift}"]
    for g in self.generators:
      lines.append(f"gen {g.name} {g.role.value} {g.p} {g.q}")
    for (p, q) in sorted(self.entries):
      for e in self.entries[(p, q)]:
        lines.append(f"entry {p} {q} {e.monomial} {e.order if e.order else 'free'}")
    for name, reason in self.permanence.items():
      lines.append(f"permanent {name} {reason.value}")
    return "".join(line + "\n" for line in lines)


def _parse_range(token: str, axis: str, number: int) -> Tuple[int, int]:
  prefix = f"{axis}="
  if not token.startswith(prefix) or ".." not in token:
    raise FormatError(f"expected {axis}=<lo>..<hi>, got {token!r}", number)
  lo, _, hi = token[len(prefix) :].partition("..")
  try:
    return int(lo), int(hi)
  except ValueError:
    raise FormatError(f"bad range {token!r}", number) from None


def parse_table(text: str) -> BigradedTable:
  """Parse the `table`/`gen`/`entry`/`permanent` text format."""
  table: Optional[BigradedTable] = None
  for number, line in enumerate(text.splitlines(), start=1):
    line = line.strip()
    if not line or line.startswith("#"):
      continue
    head, *rest = line.split()
    if head == "table":
      if table is not None:
        raise FormatError("duplicate table header", number)
      if len(rest) not in (2, 3):
        raise FormatError("expected: table p=<lo>..<hi> q=<lo>..<hi> [shift=<s>]", number)
      p_lo, p_hi = _parse_range(rest[0], "p", number)
      q_lo, q_hi = _parse_range(rest[1], "q", number)
      shift = 0
      if len(rest) == 3:
        if not rest[2].startswith("shift="):
          raise FormatError(f"expected shift=<s>, got {rest[2]!r}", number)
        shift = int(rest[2][len("shift=") :])
      table = BigradedTable(window=Window(p_lo, p_hi, q_lo, q_hi), fiber_shift=shift)
      continue
    if table is None:
      raise FormatError("table header must come first", number)
    try:
      if head == "gen" and len(rest) == 4:
        table.generators.append(TableGenerator(rest[0], Role(rest[1]), int(rest[2]), int(rest[3])))
      elif head == "entry" and len(rest) == 4:
        parse_word(rest[2])
        order = 0 if rest[3] == "free" else int(rest[3])
        if order == 1 or order < 0:
          raise FormatError(f"bad torsion order {rest[3]!r}", number)
        table.add_entry(int(rest[0]), int(rest[1]), Entry(rest[2], order))
      elif head == "permanent" and len(rest) == 2:
        table.permanence[rest[0]] = Justification(rest[1])
      else:
        raise FormatError(f"malformed {head!r} line", number)
    except ValueError as e:
      raise FormatError(str(e), number) from None
    except FormatError as e:
      if e.line_number is None:
        raise FormatError(str(e), number) from None
      raise
  if table is None:
    raise FormatError("missing table header")
  names = {g.name for g in table.generators}
  for name in table.permanence:
    if name not in names:
      raise FormatError(f"permanence tag for unknown generator {name!r}")
  return table


def _product_order(a: int, b: int) -> int:
  if a and b:
    return gcd(a, b)
  return a or b


def _fiber_floor(fiber: RingPresentation) -> int:
  floor = 0
  for g, b in zip(fiber.generators, exponent_bounds(fiber, 0)):
    if g.degree < 0:
      floor += b * g.degree
  return floor


def e2_page(
  base: RingPresentation,
  fiber: RingPresentation,
  window: Window,
  fiber_shift: int = 0,
  permanence: Optional[Mapping[str, Justification]] = None,
) -> BigradedTable:
  """E²_{p,q} = ℍ_p(B) ⊗ H_q(F) over the window, with trivial local coefficients.

  The fibre is graded by degree + fiber_shift, which must be non-negative.
  """
  for d in range(_fiber_floor(fiber), -fiber_shift):
    if basis_in_degree(fiber, d):
      raise FiberGradingError(f"fiber has classes in degree {d} below -{fiber_shift}")

  total = tensor(base, fiber)
  pad_base, pad_fiber = (0,) * fiber.rank, (0,) * base.rank
  table = BigradedTable(window=window, fiber_shift=fiber_shift, permanence=dict(permanence or {}))

  base_basis = {p: basis_in_degree(base, p) for p in range(window.p_lo, window.p_hi + 1)}
  fiber_basis = {q: basis_in_degree(fiber, q - fiber_shift) for q in range(window.q_lo, window.q_hi + 1)}
  for p, bs in base_basis.items():
    for q, fs in fiber_basis.items():
      for mb, ob in bs:
        for mf, of in fs:
          text = total.monomial_text(mb + pad_base)
          fiber_text = total.monomial_text(pad_fiber + mf)
          if text == "1":
            text = fiber_text
          elif fiber_text != "1":
            text = f"{text}*{fiber_text}"
          table.add_entry(p, q, Entry(text, _product_order(ob, of)))

  for i, g in enumerate(base.generators):
    table.generators.append(TableGenerator(total.names[i], Role.BASE, g.degree, fiber_shift))
  for i, g in enumerate(fiber.generators):
    table.generators.append(TableGenerator(total.names[base.rank + i], Role.FIBER, 0, g.degree + fiber_shift))
  unknown = set(table.permanence) - {g.name for g in table.generators}
  if unknown:
    raise FormatError(f"permanence tag for unknown generator {sorted(unknown)[0]!r}")
  return table


@dataclass
class Violation:
  generator: str
  source: Bidegree
  page: int
  target: Bidegree
  classes: List[str]

  def to_text(self) -> str:
    return (
      f"violation {self.generator} ({self.source[0]},{self.source[1]}) d{self.page} -> "
      f"({self.target[0]},{self.target[1]}) {' '.join(self.classes)}"
    )


@dataclass
class CollapseResult:
  """A collapse certificate (no violations) or the obstructions found."""

  reasons: Dict[str, Tuple[Bidegree, Justification]] = field(default_factory=dict)
  violations: List[Violation] = field(default_factory=list)

  @property
  def collapses(self) -> bool:
    return not self.violations

  def to_text(self) -> str:
    if self.violations:
      return "".join(v.to_text() + "\n" for v in self.violations)
    lines = ["collapses at E2"]
    for name, ((p, q), reason) in self.reasons.items():
      lines.append(f"{name} ({p},{q}) {reason.value}")
    return "".join(line + "\n" for line in lines)


def _obstructions(table: BigradedTable, name: str, source: Bidegree) -> List[Violation]:
  """Non-empty d_r targets of the class at source, for every r that stays right of the lowest column."""
  p, q = source
  found = []
  r = 2
  while p - r >= table.base_min:
    target = (p - r, q + r - 1)
    if target[1] > table.window.q_hi:
      raise WindowTooSmallError(f"d{r} of {name} lands at ({target[0]},{target[1]}), above q={table.window.q_hi}; enlarge the window")
    hit = table.at(*target)
    if hit:
      found.append(Violation(name, source, r, target, [e.monomial for e in hit]))
    r += 1
  return found


def _factored_bidegree(table: BigradedTable, monomial: str) -> Optional[Bidegree]:
  """Sum of the generator bidegrees of a monomial, measured from the unit at (0, shift); None if a factor is no generator."""
  placed = {g.name: g for g in table.generators}
  p, q = 0, table.fiber_shift
  for name, e in parse_word(monomial):
    g = placed.get(name)
    if g is None:
      return None
    p += e * g.p
    q += e * (g.q - table.fiber_shift)
  return p, q


def _ungenerated(table: BigradedTable) -> List[Tuple[Bidegree, str]]:
  found = []
  for (p, q) in sorted(table.entries):
    for e in table.entries[(p, q)]:
      if _factored_bidegree(table, e.monomial) != (p, q):
        found.append(((p, q), e.monomial))
  return found


def check_generation(table: BigradedTable) -> List[str]:
  """Entries that are not a product of the table's generators at consistent bidegrees."""
  return [f"({p},{q}) {monomial}" for (p, q), monomial in _ungenerated(table)]


def collapse_check(table: BigradedTable) -> CollapseResult:
  """Certify d_r = 0 for r >= 2, or list what blocks it.

  Generators are checked one by one; by the Leibniz rule their products then
  survive too. Entries that are not such products get their own d_r targets
  checked.
  """
  for g in table.generators:
    if not any(e.monomial == g.name for e in table.at(g.p, g.q)):
      raise GeneratorPlacementError(f"generator {g.name} is placed at ({g.p},{g.q}), which does not hold it")
  result = CollapseResult()
  for g in table.generators:
    tag = table.permanence.get(g.name)
    if tag in (Justification.SECTION, Justification.ASSUMED):
      result.reasons[g.name] = ((g.p, g.q), tag)
      continue
    found = _obstructions(table, g.name, (g.p, g.q))
    if found:
      result.violations.extend(found)
    else:
      result.reasons[g.name] = ((g.p, g.q), Justification.DEGREE)
  for source, monomial in _ungenerated(table):
    result.violations.extend(_obstructions(table, monomial, source))
  return result


class ExtensionStatus(str, Enum):
  MATCH = "match"
  MISMATCH = "mismatch"
  AMBIGUOUS = "ambiguous"
  OUTSIDE = "outside"


@dataclass
class DegreeComparison:
  degree: int
  status: ExtensionStatus
  table_rank: int = 0
  claimed_rank: int = 0
  table_torsion: List[int] = field(default_factory=list)
  claimed_torsion: List[int] = field(default_factory=list)

  def to_text(self) -> str:
    def torsion(orders: List[int]) -> str:
      return ",".join(str(c) for c in orders) or "-"

    return (
      f"{self.degree} {self.status.value} rank {self.table_rank}/{self.claimed_rank} "
      f"torsion {torsion(self.table_torsion)}/{torsion(self.claimed_torsion)}"
    )


@dataclass
class ExtensionReport:
  comparisons: List[DegreeComparison] = field(default_factory=list)

  @property
  def success(self) -> bool:
    return all(c.status != ExtensionStatus.MISMATCH for c in self.comparisons)

  def by_status(self, status: ExtensionStatus) -> List[int]:
    return [c.degree for c in self.comparisons if c.status == status]

  def to_text(self) -> str:
    return "".join(c.to_text() + "\n" for c in self.comparisons)


def _covered(table: BigradedTable, d: int) -> bool:
  w = table.window
  for p in range(w.p_lo, w.p_hi + 1):
    q = d + table.fiber_shift - p
    if q > w.q_hi and any(table.at(p, qq) for qq in range(w.q_lo, w.q_hi + 1)):
      return False
  return True


def extension_report(table: BigradedTable, claimed: RingPresentation, window: Tuple[int, int]) -> ExtensionReport:
  """Compare the collapsed table with a claimed ring, total degree by total degree."""
  lo, hi = window
  report = ExtensionReport()
  by_degree: Dict[int, List[Entry]] = {}
  for (p, q), bucket in table.entries.items():
    by_degree.setdefault(table.total_degree(p, q), []).extend(bucket)
  for d in range(lo, hi + 1):
    if not _covered(table, d):
      report.comparisons.append(DegreeComparison(d, ExtensionStatus.OUTSIDE))
      continue
    entries = by_degree.get(d, [])
    basis = basis_in_degree(claimed, d)
    comparison = DegreeComparison(
      d,
      ExtensionStatus.MATCH,
      table_rank=sum(1 for e in entries if not e.order),
      claimed_rank=sum(1 for _, order in basis if not order),
      table_torsion=sorted(e.order for e in entries if e.order),
      claimed_torsion=sorted(order for _, order in basis if order),
    )
    if comparison.table_rank != comparison.claimed_rank:
      comparison.status = ExtensionStatus.MISMATCH
    elif comparison.table_torsion != comparison.claimed_torsion:
      comparison.status = ExtensionStatus.AMBIGUOUS
    report.comparisons.append(comparison)
  return report
