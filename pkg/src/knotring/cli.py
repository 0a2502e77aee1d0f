"""Command-line front end.

Payloads (presentations, certificates, curve files, reports) go to stdout through
click.echo and are byte-deterministic; progress and errors go to stderr.
"""

import os
import sys
import functools
from typing import List, Tuple, Callable, Optional

import click

from .ui import Reporter
from .config import CONFIG_FILE_NAME, CATALOG_N_RANGE, Settings, load_config, save_config
from .errors import KnotringError, NumericFailure
from .models import ExitCode, CommandResult, ResolveSummary
from .checks import DegreeCheck, MorphismCheck, CompatibilityCheck
from .curves import LongCurve, DecorationRecord, compactify, parse_curve, format_curve, format_sphere_curve
from .algebra import RingPresentation, multiply, basis_in_degree, parse_presentation
from .catalog import FIBRATION_KEYS, RING_CONSTRUCTORS, get_ring, fibration, available_rings
from .degrees import ShiftSign, shift_table
from .spectral import Window, Justification, e2_page, parse_table, collapse_check, extension_report
from .diagrams import gauss_code, is_trefoil, format_gauss_code
from .immersions import (
  figure_eight,
  budney_sweep,
  budney_decorated,
  standard_vectors,
  figure_eight_decorated,
  budney_base_immersion,
)
from .desingularize import Resolver, DecoratedImmersion, decorate, resolve
from .singularities import double_points


class Context:
  def __init__(self, settings: Settings, reporter: Reporter):
    self.settings = settings
    self.reporter = reporter

  def resolver(self, budget: Optional[int] = None, tol: Optional[float] = None) -> Resolver:
    curves = self.settings.curves
    return Resolver(
      tol=tol if tol is not None else curves.tol,
      sep_min=curves.sep_min,
      budget=budget if budget is not None else curves.budget,
      ui_callback=self.reporter.callback,
    )


def emit(result: CommandResult) -> None:
  if result.stdout:
    click.echo(result.stdout, nl=False)
  if result.exit_code != ExitCode.SUCCESS:
    sys.exit(int(result.exit_code))


def handle_errors(f: Callable) -> Callable:
  """Map library exceptions to exit codes: numeric failures 3, everything else 2."""

  @functools.wraps(f)
  def wrapper(*args, **kwargs):
    ctx = click.get_current_context()
    reporter = ctx.obj.reporter if isinstance(ctx.obj, Context) else Reporter()
    try:
      return f(*args, **kwargs)
    except NumericFailure as e:
      reporter.show_error(str(e))
      for line in getattr(e, "diagnostics", []):
        reporter.show_detail(line)
      sys.exit(int(ExitCode.NUMERIC_FAILURE))
    except (KnotringError, FileNotFoundError) as e:
      reporter.show_error(str(e))
      sys.exit(int(ExitCode.USAGE))

  return wrapper


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help=f"Settings file (default: ./{CONFIG_FILE_NAME} if present)")
@click.option("--quiet", is_flag=True, help="Only print errors on stderr")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], quiet: bool):
  """
  Homology rings of knot and immersion spaces, spectral-sequence collapse
  checks and desingularization of long immersions.
  """
  reporter = Reporter(quiet=quiet)
  try:
    settings = load_config(config_path)
  except (FileNotFoundError, ValueError) as e:
    reporter.show_error(str(e))
    sys.exit(int(ExitCode.USAGE))
  ctx.obj = Context(settings, reporter)


def _ring(ctx: Context, key: str, n: Optional[int]) -> RingPresentation:
  """A catalog ring by key, or a ring read from a presentation file."""
  if key not in RING_CONSTRUCTORS and os.path.isfile(key):
    with open(key) as f:
      presentation = parse_presentation(f.read())
  elif n is None:
    raise click.UsageError(f"catalog ring {key!r} needs N")
  else:
    presentation = get_ring(key, n)
  return presentation.model_copy(update={"max_exponent": ctx.settings.rings.max_exponent})


def _basis_lines(ring: RingPresentation, d: int) -> List[str]:
  return [f"{ring.monomial_text(m)} {'free' if not order else f'torsion={order}'}" for m, order in basis_in_degree(ring, d)]


@cli.command()
@click.argument("key")
@click.argument("n", type=int, required=False)
@click.option("--degree", "degree", type=int, default=None, help="Print the basis in this degree")
@click.option("--table", "table", type=(int, int), default=None, help="Print the basis in every degree of DMIN..DMAX")
@click.pass_obj
@handle_errors
def ring(obj: Context, key: str, n: Optional[int], degree: Optional[int], table: Optional[Tuple[int, int]]):
  """Print a catalog ring, or its basis in one degree or a range of degrees.

  \b
  ring KEY N    catalog ring
  ring FILE     presentation file of gen/rel lines
  """
  if degree is not None and table is not None:
    raise click.UsageError("--degree and --table are mutually exclusive")
  presentation = _ring(obj, key, n)
  if degree is not None:
    lines = _basis_lines(presentation, degree)
  elif table is not None:
    lines = []
    for d in range(table[0], table[1] + 1):
      lines += [f"{d} {line}" for line in _basis_lines(presentation, d)]
  else:
    emit(CommandResult(stdout=presentation.to_text()))
    return
  emit(CommandResult(stdout="".join(line + "\n" for line in lines)))


@cli.command()
@click.argument("key", type=click.Choice(list(RING_CONSTRUCTORS)))
@click.argument("n", type=int)
@click.argument("x")
@click.argument("y")
@click.pass_obj
@handle_errors
def mult(obj: Context, key: str, n: int, x: str, y: str):
  """Multiply two elements of a catalog ring, e.g. `mult loop_sphere 4 a a`."""
  presentation = _ring(obj, key, n)
  product = multiply(presentation.element(x), presentation.element(y))
  emit(CommandResult(stdout=product.to_text()))


def _parse_permanence(values: Tuple[str, ...]) -> dict:
  tags = {}
  for value in values:
    name, _, tag = value.partition("=")
    try:
      tags[name] = Justification(tag)
    except ValueError:
      raise click.BadParameter(f"expected NAME=section|degree|assumed, got {value!r}", param_hint="--permanent") from None
  return tags


@cli.command()
@click.argument("args", nargs=-1)
@click.option("--table", "table_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Check a hand-built table file")
@click.option("--fiber-n", type=int, default=None, help="Parameter of the fiber ring (default: N)")
@click.option("--shift", type=int, default=0, help="Fiber degree shift")
@click.option("--permanent", multiple=True, help="NAME=section|degree|assumed")
@click.option("--window", type=(int, int, int, int), default=None, help="P_LO P_HI Q_LO Q_HI")
@click.option("--extensions", is_flag=True, help="Also compare the collapsed page with the claimed ring")
@click.pass_obj
@handle_errors
def ss(obj: Context, args, table_path, fiber_n, shift, permanent, window, extensions):
  """Collapse certificate for a Serre spectral sequence.

  \b
  ss FIBRATION N            named fibration (imm_prime, imm, loop_sphere)
  ss BASE FIBER N           E2 page of two catalog rings or presentation files
  ss --table FILE           hand-built table
  """
  claimed = None
  if table_path:
    if args:
      raise click.UsageError("--table takes no positional arguments")
    with open(table_path) as f:
      table = parse_table(f.read())
  elif len(args) == 2:
    key, n = args[0], _int_arg(args[1])
    if key not in FIBRATION_KEYS:
      raise click.UsageError(f"unknown fibration {key!r} (known: {', '.join(FIBRATION_KEYS)})")
    preset = fibration(key, n)
    obj.reporter.show_step(preset.description)
    w = Window(*window) if window else Window.default(n, preset.fiber_shift)
    table = e2_page(preset.base, preset.fiber, w, preset.fiber_shift, preset.permanence)
    claimed = preset.claimed
  elif len(args) == 3:
    n = _int_arg(args[2])
    base, fiber = _ring(obj, args[0], n), _ring(obj, args[1], fiber_n if fiber_n is not None else n)
    w = Window(*window) if window else Window.default(n, shift)
    table = e2_page(base, fiber, w, shift, _parse_permanence(permanent))
  else:
    raise click.UsageError("expected FIBRATION N, BASE FIBER N, or --table FILE")

  result = collapse_check(table)
  stdout = result.to_text()
  exit_code = ExitCode.SUCCESS if result.collapses else ExitCode.CHECK_FAILED
  if extensions:
    if claimed is None:
      obj.reporter.show_warning("no claimed ring to compare against")
    else:
      lo = table.window.p_lo + table.window.q_lo - table.fiber_shift
      hi = table.window.p_hi + table.window.q_hi - table.fiber_shift
      report = extension_report(table, claimed, (lo, hi))
      stdout += report.to_text()
      if not report.success:
        exit_code = ExitCode.CHECK_FAILED
  emit(CommandResult(exit_code=exit_code, stdout=stdout))


def _int_arg(value: str) -> int:
  try:
    return int(value)
  except ValueError:
    raise click.UsageError(f"expected an integer, got {value!r}") from None


def _parse_signs(signs: Optional[str], k: int) -> Optional[List[int]]:
  if signs is None:
    return None
  values = [s.strip() for s in signs.split(",") if s.strip()]
  if len(values) != k or any(v not in ("1", "2") for v in values):
    raise click.BadParameter(f"expected {k} comma-separated values in {{1,2}}", param_hint="--signs")
  return [int(v) for v in values]


@cli.command("resolve")
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--eps", type=float, default=None, help="Bump half-width (default: searched)")
@click.option("--delta", type=float, default=None, help="Bump height (default: searched)")
@click.option("--signs", default=None, help="Comma-separated sign choices a_i in {1,2}, one per decoration")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Write the curve here; the report then goes to stdout")
@click.option("--tol", type=float, default=None, help="Double-point tolerance")
@click.pass_obj
@handle_errors
def resolve_cmd(obj: Context, curve_file, eps, delta, signs, output, tol):
  """Resolve the decorated double points of a curve file into a long knot."""
  if (eps is None) != (delta is None):
    raise click.UsageError("--eps and --delta must be given together")
  with open(curve_file) as f:
    curve, records = parse_curve(f.read())
  resolver = obj.resolver(tol=tol)
  chosen = _parse_signs(signs, len(records))
  if chosen is not None:
    records = [DecorationRecord(r.t1, r.t2, r.v, a) for r, a in zip(records, chosen)]
  decorated = decorate(curve, records, resolver.tol)
  k_before = len(double_points(curve, resolver.tol, resolver.sep_min))
  obj.reporter.show_step(f"Resolving {decorated.k} decorated double point{'s' if decorated.k != 1 else ''}")
  if eps is None:
    result = resolver.auto_parameters(decorated)
    out, eps, delta, attempts = result.curve, result.eps, result.delta, result.attempts
  else:
    out, attempts = resolve(decorated, eps, delta), 0
  k_after = len(double_points(out, resolver.tol, resolver.sep_min))
  summary = ResolveSummary(k_before=k_before, k_after=k_after, eps=eps, delta=delta, attempts=attempts)
  curve_text = format_curve(out)
  if output:
    with open(output, "w", newline="\n") as f:
      f.write(curve_text)
    emit(CommandResult(stdout=summary.to_text()))
  else:
    for line in summary.to_text().splitlines():
      obj.reporter.show_detail(line)
    emit(CommandResult(stdout=curve_text))


@cli.command()
@click.argument("n", type=int)
@click.argument("grid_size", type=int, default=10)
@click.option("--gauss-check", is_flag=True, help="Resolve with the standard decoration and check for a trefoil diagram")
@click.pass_obj
@handle_errors
def budney(obj: Context, n: int, grid_size: int, gauss_check: bool):
  """Desingularize the two-double-point family over S^{n-3} × S^{n-3}."""
  if n < 3:
    raise click.UsageError(f"n must be at least 3, got {n}")
  resolver = obj.resolver()
  if gauss_check:
    v1, v2 = standard_vectors(n)
    result = resolver.auto_parameters(budney_decorated(v1, v2, budney_base_immersion(n)))
    code = gauss_code(result.curve)
    trefoil = is_trefoil(code)
    stdout = f"gauss: {format_gauss_code(code)}\ntrefoil: {'yes' if trefoil else 'no'}\n"
    emit(CommandResult(exit_code=ExitCode.SUCCESS if trefoil else ExitCode.CHECK_FAILED, stdout=stdout))
    return
  if grid_size < 1:
    raise click.UsageError("grid size must be positive")
  obj.reporter.show_step(f"Sweeping {grid_size * grid_size} decorations")
  report = budney_sweep(n, grid_size, resolver, obj.reporter.callback)
  emit(CommandResult(exit_code=ExitCode.SUCCESS if report.success else ExitCode.CHECK_FAILED, stdout=report.to_text()))


@cli.command()
@click.argument("suite", type=click.Choice(["compat", "morphism", "degrees"]))
@click.option("--n", "n", type=int, default=None, help="Dimension (default: 5 for compat, 4 for morphism, 3 for degrees)")
@click.option("--k", "k", type=int, default=1, help="Double points of the left factor (compat)")
@click.option("--l", "l", type=int, default=1, help="Double points of the right factor (compat)")
@click.option("--window", type=int, default=20, help="Degree window half-width (morphism)")
@click.option("--minus", is_flag=True, help="Use the -k(n-3) shift convention (degrees)")
@click.pass_obj
@handle_errors
def check(obj: Context, suite: str, n: Optional[int], k: int, l: int, window: int, minus: bool):
  """Run a property suite and report pass or fail."""
  if suite == "compat":
    result = CompatibilityCheck(obj.resolver(), obj.reporter.callback).run(n or 5, k, l)
  elif suite == "morphism":
    result = MorphismCheck(obj.reporter.callback).run(n or 4, window)
  else:
    result = DegreeCheck(obj.reporter.callback).run(n or 3, ShiftSign.MINUS if minus else ShiftSign.PLUS)
  emit(CommandResult(exit_code=ExitCode.SUCCESS if result.success else ExitCode.CHECK_FAILED, stdout=result.to_text()))


@cli.command()
@click.option("--n", "ns", type=int, multiple=True, help="Dimensions (default: 3..6)")
@click.option("--k", "ks", type=int, multiple=True, help="Numbers of double points (default: 0..3)")
@click.pass_obj
@handle_errors
def degrees(obj: Context, ns: Tuple[int, ...], ks: Tuple[int, ...]):
  """Print the degree shift of every graded map."""
  emit(CommandResult(stdout=shift_table(list(ns) or [3, 4, 5, 6], list(ks) or [0, 1, 2, 3])))


@cli.command()
@click.argument("n", type=int)
@click.pass_obj
@handle_errors
def catalog(obj: Context, n: int):
  """Dump every catalog ring defined for N."""
  lo, hi = CATALOG_N_RANGE
  if not lo <= n <= hi:
    obj.reporter.show_warning(f"catalog rings are checked for {lo} <= n <= {hi}")
  blocks = [f"# {key} n={n}\n{presentation.to_text()}" for key, presentation in available_rings(n).items()]
  emit(CommandResult(stdout="".join(blocks)))


@cli.command("compactify")
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@handle_errors
def compactify_cmd(obj: Context, curve_file: str):
  """Close a long curve through (1, 0, …, 0) on the sphere."""
  with open(curve_file) as f:
    curve, _ = parse_curve(f.read())
  emit(CommandResult(stdout=format_sphere_curve(compactify(curve))))


@cli.command("curve")
@click.argument("name", type=click.Choice(["trivial", "figure-eight", "budney"]))
@click.argument("n", type=int)
@click.option("--decorate", "decorated", is_flag=True, help="Attach the standard decorations")
@click.pass_obj
@handle_errors
def curve_cmd(obj: Context, name: str, n: int, decorated: bool):
  """Write one of the built-in long curves as a curve file."""
  samples, margin = obj.settings.curves.samples, obj.settings.curves.margin
  if name == "trivial":
    d = DecoratedImmersion(LongCurve.trivial(n, samples, margin))
  elif name == "figure-eight":
    d = figure_eight_decorated(n, samples=samples) if decorated else DecoratedImmersion(figure_eight(n, samples, margin))
  else:
    base = budney_base_immersion(n, samples, margin)
    d = budney_decorated(*standard_vectors(n), base) if decorated else DecoratedImmersion(base)
  emit(CommandResult(stdout=format_curve(d.curve, d.records())))


@cli.command("init-config")
@click.argument("path", type=click.Path(dir_okay=False), default=CONFIG_FILE_NAME)
@click.option("--force", is_flag=True, help="Overwrite an existing file")
@click.pass_obj
@handle_errors
def init_config(obj: Context, path: str, force: bool):
  """Write the default settings to a TOML file."""

  if os.path.exists(path) and not force:
    raise click.UsageError(f"{path} already exists (use --force to overwrite)")
  save_config(Settings(), path)
  obj.reporter.show_step(f"Wrote {path}", is_final=True)
